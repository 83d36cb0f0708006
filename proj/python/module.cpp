#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rowmarkov/boolean_spectral.hpp"
#include "rowmarkov/chains.hpp"
#include "rowmarkov/json_io.hpp"
#include "rowmarkov/semidistrim.hpp"
#include "rowmarkov/toggle.hpp"
#include "rowmarkov/verify.hpp"

namespace py = pybind11;
using namespace rowmarkov;

namespace {

std::vector<Rational> parse_probs(const std::vector<std::string>& fractions) {
  std::vector<Rational> probs;
  for (const auto& f : fractions) probs.push_back(parse_fraction(f));
  return probs;
}

std::vector<std::string> labels_of_mask(const Poset& p, Mask m) {
  std::vector<std::string> out;
  for (int i = 0; i < p.size(); ++i)
    if ((m >> i) & 1u) out.push_back(p.label(i));
  return out;
}

// Chain handle shared by every constructor; keeps the exact matrix.
struct PyChain {
  MarkovChain<Rational> chain;

  std::vector<std::string> states() const { return chain.states; }

  std::vector<std::vector<std::string>> transitions() const {
    std::vector<std::vector<std::string>> rows;
    for (const auto& row : chain.transition) {
      std::vector<std::string> r;
      for (const auto& v : row) r.push_back(fraction_string(v));
      rows.push_back(std::move(r));
    }
    return rows;
  }

  std::vector<std::vector<double>> transition_matrix() const {
    std::vector<std::vector<double>> rows;
    for (const auto& row : chain.transition) {
      std::vector<double> r;
      for (const auto& v : row) r.push_back(to_double(v));
      rows.push_back(std::move(r));
    }
    return rows;
  }

  bool irreducible() const { return is_irreducible(chain); }

  std::vector<std::vector<std::string>> classes() const {
    std::vector<std::vector<std::string>> out;
    for (const auto& cls : communicating_classes(chain)) {
      std::vector<std::string> names;
      for (int i : cls) names.push_back(chain.states[i]);
      out.push_back(std::move(names));
    }
    return out;
  }

  std::vector<std::string> stationary_exact() const {
    std::vector<std::string> out;
    for (const auto& v : stationary(chain)) out.push_back(fraction_string(v));
    return out;
  }

  std::vector<double> stationary_float() const {
    std::vector<double> out;
    for (const auto& v : stationary(chain)) out.push_back(to_double(v));
    return out;
  }

  long mixing(const std::string& eps) const { return mixing_time(chain, parse_fraction(eps)); }

  std::vector<std::string> walk(const std::string& start, long steps, std::uint64_t seed) const {
    auto it = std::find(chain.states.begin(), chain.states.end(), start);
    if (it == chain.states.end()) throw Error("UnknownLabel", "unknown start state: " + start);
    auto traj = simulate(to_double_chain(chain), static_cast<int>(it - chain.states.begin()),
                         steps, seed);
    std::vector<std::string> out;
    for (int s : traj) out.push_back(chain.states[s]);
    return out;
  }

  std::string to_json() const { return chain_to_json(chain).dump(2); }
};

}  // namespace

PYBIND11_MODULE(_rowmarkov, m) {
  m.doc() = "rowmotion and toggle Markov chains on posets and semidistrim lattices";

  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      PyErr_SetString(PyExc_ValueError, (e.code() + ": " + e.what()).c_str());
    }
  });

  py::class_<Poset>(m, "Poset")
      .def(py::init<std::vector<std::string>,
                    const std::vector<std::pair<std::string, std::string>>&>(),
           py::arg("elements"), py::arg("covers"))
      .def_static("chain", &Poset::chain, py::arg("n"))
      .def_static("antichain", &Poset::antichain, py::arg("n"))
      .def_static("random", &Poset::random, py::arg("n"), py::arg("seed"))
      .def("__len__", &Poset::size)
      .def("labels", &Poset::labels)
      .def("covers",
           [](const Poset& p) {
             std::vector<std::pair<std::string, std::string>> out;
             for (const auto& [a, b] : p.covers()) out.emplace_back(p.label(a), p.label(b));
             return out;
           })
      .def("leq",
           [](const Poset& p, const std::string& a, const std::string& b) {
             return p.leq(p.index_of(a), p.index_of(b));
           })
      .def("width", &Poset::width)
      .def("linear_extension",
           [](const Poset& p) {
             std::vector<std::string> out;
             for (int i : p.linear_extension()) out.push_back(p.label(i));
             return out;
           })
      .def("order_ideals",
           [](const Poset& p) {
             std::vector<std::vector<std::string>> out;
             for (Mask m : p.order_ideals()) out.push_back(labels_of_mask(p, m));
             return out;
           })
      .def("to_json", [](const Poset& p) { return poset_to_json(p).dump(2); });

  py::class_<Lattice>(m, "Lattice")
      .def("__len__", &Lattice::size)
      .def("labels", [](const Lattice& l) { return l.poset().labels(); })
      .def("bottom", [](const Lattice& l) { return l.poset().label(l.bottom()); })
      .def("top", [](const Lattice& l) { return l.poset().label(l.top()); })
      .def("meet",
           [](const Lattice& l, const std::string& a, const std::string& b) {
             return l.poset().label(l.meet(l.poset().index_of(a), l.poset().index_of(b)));
           })
      .def("join",
           [](const Lattice& l, const std::string& a, const std::string& b) {
             return l.poset().label(l.join(l.poset().index_of(a), l.poset().index_of(b)));
           })
      .def("is_semidistrim", [](const Lattice& l) {
        auto verdict = is_semidistrim(l);
        return std::make_pair(verdict.semidistrim, verdict.reason);
      });

  m.def("lattice_from_poset", &Lattice::from_poset, py::arg("poset"));
  m.def("ideal_lattice", [](const Poset& p) { return ideal_lattice(p).lattice; }, py::arg("poset"));
  m.def("hexx", &hexx, py::arg("a"), py::arg("b"));

  py::class_<PyChain>(m, "Chain")
      .def_property_readonly("states", &PyChain::states)
      .def("transitions", &PyChain::transitions)
      .def("transition_matrix", &PyChain::transition_matrix)
      .def("is_irreducible", &PyChain::irreducible)
      .def("communicating_classes", &PyChain::classes)
      .def("stationary", &PyChain::stationary_exact)
      .def("stationary_float", &PyChain::stationary_float)
      .def("mixing_time", &PyChain::mixing, py::arg("eps") = "1/4")
      .def("simulate", &PyChain::walk, py::arg("start"), py::arg("steps"), py::arg("seed"))
      .def("to_json", &PyChain::to_json);

  m.def(
      "rowmotion_chain",
      [](const Poset& p, const std::vector<std::string>& probs) {
        return PyChain{rowmotion_chain_distributive(p, parse_probs(probs)).chain};
      },
      py::arg("poset"), py::arg("probs"),
      "Rowmotion chain on the order ideals; one probability fraction per element.");

  m.def(
      "semidistrim_chain",
      [](const Lattice& l, const std::vector<std::string>& probs) {
        auto data = analyze_semidistrim(l);
        return PyChain{rowmotion_chain_semidistrim(l, data, parse_probs(probs)).chain};
      },
      py::arg("lattice"), py::arg("probs"),
      "Rowmotion chain on a semidistrim lattice; one probability per join-irreducible "
      "(ordered by element id).");

  m.def(
      "join_irreducibles",
      [](const Lattice& l) {
        std::vector<std::string> out;
        for (int j : analyze_semidistrim(l).kappa.joins) out.push_back(l.poset().label(j));
        return out;
      },
      py::arg("lattice"));

  m.def(
      "toggle_chain",
      [](const std::vector<std::string>& ground,
         const std::vector<std::vector<std::string>>& members,
         const std::vector<std::string>& order, const std::vector<std::string>& probs) {
        std::vector<Mask> masks;
        auto index = [&](const std::string& label) {
          for (std::size_t i = 0; i < ground.size(); ++i)
            if (ground[i] == label) return static_cast<int>(i);
          throw Error("UnknownLabel", "unknown element: " + label);
        };
        for (const auto& member : members) {
          Mask mset = 0;
          for (const auto& label : member) mset |= Mask(1) << index(label);
          masks.push_back(mset);
        }
        SetFamily family(ground, masks);
        std::vector<int> order_idx;
        for (const auto& label : order) order_idx.push_back(index(label));
        return PyChain{build_toggle_chain(family, order_idx, parse_probs(probs))};
      },
      py::arg("ground"), py::arg("members"), py::arg("order"), py::arg("probs"));

  m.def(
      "stationary_weights",
      [](const Poset& p, const std::vector<std::string>& probs) {
        std::vector<std::string> out;
        for (const auto& v : stationary_weights(p.order_ideals(), parse_probs(probs)))
          out.push_back(fraction_string(v));
        return out;
      },
      py::arg("poset"), py::arg("probs"),
      "Closed-form stationary distribution over the order ideals.");

  m.def(
      "hexx_stationary",
      [](int a, int b, const std::vector<std::string>& qs, const std::vector<std::string>& rs) {
        std::vector<std::string> out;
        for (const auto& v : hexx_stationary_closed_form(a, b, parse_probs(qs), parse_probs(rs)))
          out.push_back(fraction_string(v));
        return out;
      },
      py::arg("a"), py::arg("b"), py::arg("qs"), py::arg("rs"));

  m.def(
      "lumped_tv_curve",
      [](int n, const std::string& p, long t_max, int start_size) {
        BooleanChainSpec spec(n, parse_fraction(p));
        std::vector<std::pair<long, double>> out;
        for (const auto& pt : exact_tv_curve(spec, t_max, start_size))
          out.emplace_back(pt.t, to_double(pt.tv));
        return out;
      },
      py::arg("n"), py::arg("p"), py::arg("t_max"), py::arg("start_size") = 0,
      "Exact TV distance to stationarity on the size-lumped antichain chain.");

  m.def("cutoff_upper",
        [](int n, const std::string& p, double c) {
          return cutoff_upper(BooleanChainSpec(n, parse_fraction(p)), c);
        });
  m.def("cutoff_lower",
        [](int n, const std::string& p, double c) {
          return cutoff_lower(BooleanChainSpec(n, parse_fraction(p)), c);
        });
  m.def("spectrum_ok", [](int n, const std::string& p) {
    return verify_spectrum(BooleanChainSpec(n, parse_fraction(p))).ok;
  });
  m.def("moments_ok", [](int n, const std::string& p, int t_max) {
    return moment_check(BooleanChainSpec(n, parse_fraction(p)), t_max).ok;
  });

  m.def(
      "verify",
      [](const std::string& suite, std::uint64_t seed) {
        CheckSink none;
        if (suite == "all") return verify_all(seed, none);
        if (suite == "toggle") return verify_toggle(seed, none);
        if (suite == "distributive") return verify_distributive(seed, none);
        if (suite == "hexx") return verify_hexx(seed, none);
        if (suite == "semidistrim") return verify_semidistrim(seed, none);
        if (suite == "spectral") return verify_spectral(none);
        if (suite == "cutoff") return verify_cutoff(none);
        throw Error("BadArgument", "unknown suite: " + suite);
      },
      py::arg("suite"), py::arg("seed") = 1);
}
