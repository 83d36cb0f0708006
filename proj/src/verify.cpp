#include "rowmarkov/verify.hpp"

#include <algorithm>
#include <cmath>

#include "rowmarkov/boolean_spectral.hpp"
#include "rowmarkov/chains.hpp"
#include "rowmarkov/json_io.hpp"
#include "rowmarkov/toggle.hpp"

namespace rowmarkov {

namespace {

std::uint64_t next_u64(std::uint64_t& state) {
  // splitmix64
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

int next_int(std::uint64_t& state, int lo, int hi) {  // inclusive
  return lo + static_cast<int>(next_u64(state) % static_cast<std::uint64_t>(hi - lo + 1));
}

void report(const CheckSink& sink, bool& all_ok, const std::string& name, bool pass,
            const std::string& detail = "") {
  all_ok = all_ok && pass;
  if (sink) sink(CheckResult{name, pass, detail});
}

std::vector<Rational> random_prob_vector(std::uint64_t& state, int n) {
  std::vector<Rational> probs(n);
  for (auto& p : probs) p = random_probability(state);
  return probs;
}

SetFamily random_family(std::uint64_t& state, int n) {
  std::vector<std::string> ground;
  for (int i = 1; i <= n; ++i) ground.push_back("e" + std::to_string(i));
  std::vector<Mask> members;
  const Mask full = (Mask(1) << n) - 1;
  while (members.empty()) {
    members.clear();
    for (Mask s = 0;; ++s) {
      if (next_u64(state) & 1) members.push_back(s);
      if (s == full) break;
    }
  }
  return SetFamily(std::move(ground), std::move(members));
}

std::vector<int> random_order(std::uint64_t& state, int n) {
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  for (int i = n - 1; i > 0; --i) std::swap(order[i], order[next_int(state, 0, i)]);
  return order;
}

// Probabilities per Galois vertex of J(P), inherited from the poset element
// that generates the join-irreducible ideal.
std::vector<Rational> lift_probs_to_ideal_lattice(const Poset& p, const IdealLattice& jl,
                                                  const SemidistrimData& data,
                                                  const std::vector<Rational>& probs) {
  std::vector<Rational> lifted;
  for (int j : data.kappa.joins) {
    Mask ideal = jl.ideal_of_state[j];
    Mask top = p.maximal(ideal);
    if (popcount(top) != 1) throw Error("Internal", "join-irreducible ideal is not principal");
    lifted.push_back(probs[__builtin_ctz(top)]);
  }
  return lifted;
}

}  // namespace

Rational random_probability(std::uint64_t& state) {
  int den = next_int(state, 2, 16);
  int num = next_int(state, 1, den - 1);
  return Rational(num, den);
}

std::vector<std::vector<std::pair<int, int>>> natural_order_relations(int n) {
  std::vector<std::pair<int, int>> slots;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) slots.emplace_back(i, j);
  std::vector<std::vector<std::pair<int, int>>> result;
  const int bits = static_cast<int>(slots.size());
  for (int mask = 0; mask < (1 << bits); ++mask) {
    std::vector<std::vector<bool>> rel(n, std::vector<bool>(n, false));
    for (int b = 0; b < bits; ++b)
      if ((mask >> b) & 1) rel[slots[b].first][slots[b].second] = true;
    bool transitive = true;
    for (int i = 0; i < n && transitive; ++i)
      for (int j = 0; j < n && transitive; ++j)
        for (int k = 0; k < n; ++k)
          if (rel[i][j] && rel[j][k] && !rel[i][k]) {
            transitive = false;
            break;
          }
    if (!transitive) continue;
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (rel[i][j]) pairs.emplace_back(i, j);
    result.push_back(std::move(pairs));
  }
  return result;
}

namespace {

Poset poset_from_relations(int n, const std::vector<std::pair<int, int>>& rels) {
  std::vector<std::string> labels;
  for (int i = 1; i <= n; ++i) labels.push_back("e" + std::to_string(i));
  std::vector<std::pair<std::string, std::string>> pairs;
  for (const auto& [a, b] : rels) pairs.emplace_back(labels[a], labels[b]);
  return Poset(labels, pairs);
}

}  // namespace

bool verify_toggle(std::uint64_t seed, const CheckSink& sink) {
  bool all_ok = true;
  std::uint64_t state = seed * 2 + 1;

  // Product-formula stationary distribution == nullspace solve, exactly,
  // over random connected families.
  {
    int instances = 0, failures = 0;
    while (instances < 200) {
      int n = next_int(state, 1, 5);
      SetFamily family = random_family(state, n);
      if (!hypercube_connected(family).connected) continue;
      ++instances;
      auto order = random_order(state, n);
      auto probs = random_prob_vector(state, n);
      auto chain = build_toggle_chain(family, order, probs);
      auto solved = stationary(chain);
      auto closed = stationary_weights(family.members, probs);
      if (solved != closed) ++failures;
    }
    report(sink, all_ok, "toggle stationary product formula (200 random instances)",
           failures == 0, failures ? std::to_string(failures) + " mismatches" : "exact");
  }

  // Irreducibility iff restricted-hypercube connectivity.
  {
    int failures = 0;
    for (int i = 0; i < 500; ++i) {
      int n = next_int(state, 1, 5);
      SetFamily family = random_family(state, n);
      auto order = random_order(state, n);
      auto probs = random_prob_vector(state, n);
      auto chain = build_toggle_chain(family, order, probs);
      if (is_irreducible(chain) != hypercube_connected(family).connected) ++failures;
    }
    report(sink, all_ok, "toggle irreducibility iff hypercube connectivity (500 families)",
           failures == 0, failures ? std::to_string(failures) + " exceptions" : "zero exceptions");
  }
  return all_ok;
}

bool verify_distributive(std::uint64_t seed, const CheckSink& sink) {
  bool all_ok = true;
  std::uint64_t state = seed * 2 + 1;

  // Closed-form stationary distribution (weights 1/prod p) == exact solve.
  {
    int failures = 0;
    for (int i = 0; i < 500; ++i) {
      int n = next_int(state, 1, 5);
      Poset p = Poset::random(n, next_u64(state));
      std::vector<Mask> ideals = p.order_ideals();
      for (int rep = 0; rep < 10; ++rep) {
        auto probs = random_prob_vector(state, n);
        auto rc = rowmotion_chain_distributive(p, probs);
        if (stationary(rc.chain) != stationary_weights(ideals, probs)) ++failures;
      }
    }
    report(sink, all_ok, "distributive stationary closed form (500 posets x 10 vectors)",
           failures == 0, failures ? std::to_string(failures) + " mismatches" : "exact");
  }

  // Mixing-time bounds: t_mix(1/4) <= refined <= plain for all posets with
  // at most 4 elements and uniform p.
  {
    int failures = 0;
    const Rational eps(1, 4);
    for (int n = 1; n <= 4; ++n) {
      for (const auto& rels : natural_order_relations(n)) {
        Poset p = poset_from_relations(n, rels);
        for (const Rational& up : {Rational(1, 4), Rational(1, 2), Rational(3, 4)}) {
          std::vector<Rational> probs(n, up);
          auto rc = rowmotion_chain_distributive(p, probs);
          long tmix = mixing_time(rc.chain, eps);
          long plain = coupling_bound(up, p.width(), eps);
          long refined =
              coupling_bound_from_escape(min_antichain_survival(p, probs), eps);
          if (!(tmix <= refined && refined <= plain)) ++failures;
        }
      }
    }
    for (int a = 1; a <= 3; ++a) {
      for (int b = 1; b <= 3; ++b) {
        Lattice l = hexx(a, b);
        SemidistrimData data = analyze_semidistrim(l);
        for (const Rational& up : {Rational(1, 4), Rational(1, 2), Rational(3, 4)}) {
          std::vector<Rational> probs(data.kappa.joins.size(), up);
          auto rc = rowmotion_chain_semidistrim(l, data, probs);
          long tmix = mixing_time(rc.chain, eps);
          long plain = coupling_bound(up, data.galois.independence_number(), eps);
          long refined =
              coupling_bound_from_escape(min_independent_survival(data.galois, probs), eps);
          if (!(tmix <= refined && refined <= plain)) ++failures;
        }
      }
    }
    report(sink, all_ok, "coupling mixing bounds (posets |P|<=4, hexx a,b<=3)", failures == 0,
           failures ? std::to_string(failures) + " violations" : "t_mix <= refined <= plain");
  }

  // Cross-construction coherence: direct formula == toggle chain over a
  // linear extension == semidistrim chain on J(P), and the p=1 chain is the
  // rowmotion permutation.
  {
    int failures = 0;
    for (int n = 1; n <= 4; ++n) {
      for (const auto& rels : natural_order_relations(n)) {
        Poset p = poset_from_relations(n, rels);
        auto probs = random_prob_vector(state, n);
        auto direct = rowmotion_chain_distributive(p, probs);
        SetFamily ideals = order_ideal_family(p);
        auto toggled = build_toggle_chain(ideals, p.linear_extension(), probs);
        IdealLattice jl = ideal_lattice(p);
        SemidistrimData data = analyze_semidistrim(jl.lattice);
        auto lifted = lift_probs_to_ideal_lattice(p, jl, data, probs);
        auto semi = rowmotion_chain_semidistrim(jl.lattice, data, lifted);
        if (direct.chain.transition != toggled.transition) ++failures;
        if (direct.chain.transition != semi.chain.transition) ++failures;

        // Deterministic case: every row is the point mass at Row(I).
        std::vector<Rational> ones(n, Rational(1));
        auto det = rowmotion_chain_distributive(p, ones);
        std::vector<Mask> masks = p.order_ideals();
        for (std::size_t i = 0; i < masks.size(); ++i) {
          Mask row_target = p.full_mask() & ~p.closure_up(p.maximal(masks[i]));
          auto it = std::find(masks.begin(), masks.end(), row_target);
          for (std::size_t j = 0; j < masks.size(); ++j) {
            Rational expect = (it - masks.begin() == static_cast<long>(j)) ? 1 : 0;
            if (det.chain.transition[i][j] != expect) ++failures;
          }
        }
      }
    }
    report(sink, all_ok, "cross-construction coherence (posets |P|<=4)", failures == 0,
           failures ? std::to_string(failures) + " mismatches" : "matrices identical");
  }
  return all_ok;
}

bool verify_hexx(std::uint64_t seed, const CheckSink& sink) {
  bool all_ok = true;
  std::uint64_t state = seed * 2 + 1;

  // Closed form == exact solve for all a, b <= 4, 20 random vectors each.
  {
    int failures = 0;
    for (int a = 1; a <= 4; ++a) {
      for (int b = 1; b <= 4; ++b) {
        Lattice l = hexx(a, b);
        SemidistrimData data = analyze_semidistrim(l);
        for (int rep = 0; rep < 20; ++rep) {
          auto qs = random_prob_vector(state, a);
          auto rs = random_prob_vector(state, b);
          // Element order is b, x1..xa, y1..yb, t; probabilities are indexed
          // by the Galois vertices (the chain elements x_i, y_i).
          std::vector<Rational> probs(data.kappa.joins.size());
          for (std::size_t k = 0; k < data.kappa.joins.size(); ++k) {
            int element = data.kappa.joins[k];
            probs[k] = element <= a ? qs[element - 1] : rs[element - a - 1];
          }
          auto rc = rowmotion_chain_semidistrim(l, data, probs);
          auto solved = stationary(rc.chain);
          auto closed = hexx_stationary_closed_form(a, b, qs, rs, false);
          auto closed_kappa = hexx_stationary_closed_form(a, b, qs, rs, true);
          if (solved != closed || closed != closed_kappa) ++failures;
        }
      }
    }
    report(sink, all_ok, "hexx stationary closed form (a,b<=4, 20 vectors)", failures == 0,
           failures ? std::to_string(failures) + " mismatches" : "exact, both index forms");
  }

  // Transition table reproduced entry by entry for hexx(2,1) and hexx(3,2).
  {
    int failures = 0;
    for (auto [a, b] : {std::pair{2, 1}, std::pair{3, 2}}) {
      Lattice l = hexx(a, b);
      SemidistrimData data = analyze_semidistrim(l);
      auto qs = random_prob_vector(state, a);
      auto rs = random_prob_vector(state, b);
      std::vector<Rational> probs(data.kappa.joins.size());
      for (std::size_t k = 0; k < data.kappa.joins.size(); ++k) {
        int element = data.kappa.joins[k];
        probs[k] = element <= a ? qs[element - 1] : rs[element - a - 1];
      }
      auto rc = rowmotion_chain_semidistrim(l, data, probs);
      // Element ids: 0 = bottom, 1..a = x_i, a+1..a+b = y_i, a+b+1 = top.
      const int bot = 0, top = a + b + 1;
      auto x = [&](int i) { return i; };
      auto y = [&](int i) { return a + i; };
      std::vector<std::vector<Rational>> expected(l.size(),
                                                  std::vector<Rational>(l.size(), Rational(0)));
      expected[top][bot] = qs[0] * rs[0];
      expected[bot][top] = 1;
      expected[top][top] = (1 - qs[0]) * (1 - rs[0]);
      expected[top][x(a)] = (1 - qs[0]) * rs[0];
      expected[top][y(b)] = qs[0] * (1 - rs[0]);
      for (int i = 1; i < a; ++i) expected[x(i + 1)][x(i)] = qs[i];
      for (int i = 1; i < b; ++i) expected[y(i + 1)][y(i)] = rs[i];
      expected[x(1)][y(b)] = qs[0];
      expected[y(1)][x(a)] = rs[0];
      for (int i = 1; i <= a; ++i) expected[x(i)][top] = 1 - qs[i - 1];
      for (int i = 1; i <= b; ++i) expected[y(i)][top] = 1 - rs[i - 1];
      if (rc.chain.transition != expected) ++failures;
    }
    report(sink, all_ok, "hexx transition table entries (2,1) and (3,2)", failures == 0,
           failures ? std::to_string(failures) + " tables differ" : "entry-by-entry match");
  }
  return all_ok;
}

bool verify_semidistrim(std::uint64_t seed, const CheckSink& sink) {
  bool all_ok = true;
  std::uint64_t state = seed * 2 + 1;

  std::vector<Lattice> pool;
  for (int a = 1; a <= 4; ++a)
    for (int b = 1; b <= 4; ++b) pool.push_back(hexx(a, b));
  for (int i = 0; i < 10; ++i) {
    int n = next_int(state, 1, 5);
    pool.push_back(ideal_lattice(Poset::random(n, next_u64(state))).lattice);
  }

  int failures = 0, lattices_checked = 0;
  auto check_lattice = [&](const Lattice& l) {
    SemidistrimData data;
    try {
      data = analyze_semidistrim(l);
    } catch (const Error&) {
      ++failures;  // every pool lattice and interval must verify semidistrim
      return;
    }
    ++lattices_checked;
    for (int rep = 0; rep < 5; ++rep) {
      auto probs = random_prob_vector(state, static_cast<int>(data.kappa.joins.size()));
      auto rc = rowmotion_chain_semidistrim(l, data, probs);
      if (communicating_classes(rc.chain).size() != 1) ++failures;
    }
  };

  for (const Lattice& l : pool) check_lattice(l);
  for (int i = 0; i < 50; ++i) {
    const Lattice& l = pool[next_int(state, 0, static_cast<int>(pool.size()) - 1)];
    int u = next_int(state, 0, l.size() - 1);
    std::vector<int> above;
    for (int v = 0; v < l.size(); ++v)
      if (l.poset().leq(u, v)) above.push_back(v);
    int v = above[next_int(state, 0, static_cast<int>(above.size()) - 1)];
    check_lattice(interval(l, u, v).lattice);
  }
  report(sink, all_ok,
         "semidistrim irreducibility (" + std::to_string(lattices_checked) +
             " lattices x 5 probability vectors)",
         failures == 0, failures ? std::to_string(failures) + " failures" : "single class each");
  return all_ok;
}

bool verify_spectral(const CheckSink& sink) {
  bool all_ok = true;

  {
    int failures = 0;
    for (int n = 1; n <= 8; ++n) {
      for (const Rational& p : {Rational(1, 4), Rational(1, 2), Rational(3, 4)}) {
        BooleanChainSpec spec(n, p);
        SpectrumReport r = verify_spectrum(spec);
        if (!r.ok) ++failures;
        // Multiplicity of (-p)^k must be C(n, k).
        BigInt binom = 1;
        for (int k = 0; k <= n; ++k) {
          if (r.ok && r.multiplicities[k] != binom.convert_to<long>()) ++failures;
          binom = binom * (n - k) / (k + 1);
        }
      }
    }
    report(sink, all_ok, "eigen-relation + pi-orthonormality (n<=8, p in {1/4,1/2,3/4})",
           failures == 0, failures ? std::to_string(failures) + " failures" : "exact");
  }

  {
    int failures = 0;
    for (int n : {2, 4, 16, 64}) {
      for (const Rational& p : {Rational(1, 4), Rational(1, 2)}) {
        MomentReport r = moment_check(BooleanChainSpec(n, p), 20);
        if (!r.ok) ++failures;
      }
    }
    report(sink, all_ok, "moment identities on lumped chain (n in {2,4,16,64}, t<=20)",
           failures == 0, failures ? std::to_string(failures) + " failures" : "exact");
  }
  return all_ok;
}

bool verify_cutoff(const CheckSink& sink) {
  bool all_ok = true;

  // TV sandwich at t = (1/2)log2 n +/- 3 for p = 1/2, plus the full curve
  // against both bounds wherever their preconditions hold.
  {
    int failures = 0;
    const Rational upper_pin(899, 10000);   // 1/2 sqrt(e^(1/32) - 1) rounded up
    const Rational lower_pin(29, 32);       // 1 - 4 p^7 - 4 p^6 at p = 1/2, c = 3
    for (int n : {64, 256, 1024}) {
      BooleanChainSpec spec(n, Rational(1, 2));
      int half_log = static_cast<int>(std::lround(0.5 * std::log2(static_cast<double>(n))));
      auto curve_empty = exact_tv_curve(spec, half_log + 3, 0);
      auto curve_full = exact_tv_curve(spec, half_log + 3, n);
      if (!(curve_empty[half_log + 3].tv <= upper_pin)) ++failures;
      if (!(curve_full[half_log + 3].tv <= upper_pin)) ++failures;
      if (!(curve_empty[half_log - 3].tv >= lower_pin)) ++failures;
      for (long t = 0; t <= half_log + 3; ++t) {
        double c_up = static_cast<double>(t) - half_log;
        if (c_up > 0.5) {
          double bound = cutoff_upper(spec, c_up);
          if (to_double(curve_empty[t].tv) > bound + 1e-9) ++failures;
          if (to_double(curve_full[t].tv) > bound + 1e-9) ++failures;
        }
        double c_lo = half_log - static_cast<double>(t);
        if (c_lo > 0 && c_lo < 0.5 * std::log2(static_cast<double>(n))) {
          double bound = cutoff_lower(spec, c_lo);
          if (to_double(curve_empty[t].tv) < bound - 1e-9) ++failures;
        }
      }
    }
    report(sink, all_ok, "cutoff sandwich (n in {64,256,1024}, p=1/2)", failures == 0,
           failures ? std::to_string(failures) + " violations" : "both bounds respected");
  }

  // Lumping validity: lumped and full-state TV curves coincide exactly.
  {
    int failures = 0;
    for (int n = 2; n <= 10; ++n) {
      for (const Rational& p : {Rational(1, 4), Rational(1, 2)}) {
        BooleanChainSpec spec(n, p);
        auto lumped_empty = exact_tv_curve(spec, 30, 0);
        auto full_empty = full_tv_curve(spec, 30, 0);
        auto lumped_top = exact_tv_curve(spec, 30, n);
        auto full_top = full_tv_curve(spec, 30, (Mask(1) << n) - 1);
        for (long t = 0; t <= 30; ++t) {
          if (lumped_empty[t].tv != full_empty[t].tv) ++failures;
          if (lumped_top[t].tv != full_top[t].tv) ++failures;
        }
      }
    }
    report(sink, all_ok, "lumping validity (n<=10, p in {1/4,1/2}, t<=30)", failures == 0,
           failures ? std::to_string(failures) + " mismatches" : "exact agreement");
  }
  return all_ok;
}

bool verify_all(std::uint64_t seed, const CheckSink& sink) {
  bool ok = true;
  ok = verify_toggle(seed, sink) && ok;
  ok = verify_distributive(seed, sink) && ok;
  ok = verify_hexx(seed, sink) && ok;
  ok = verify_semidistrim(seed, sink) && ok;
  ok = verify_spectral(sink) && ok;
  ok = verify_cutoff(sink) && ok;
  return ok;
}

}  // namespace rowmarkov
