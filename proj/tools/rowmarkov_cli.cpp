// Command-line front end: build chains from JSON descriptions, run exact
// analyses and the verification suites, and emit CSV/JSON for plot pipelines.

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "rowmarkov/boolean_spectral.hpp"
#include "rowmarkov/chains.hpp"
#include "rowmarkov/json_io.hpp"
#include "rowmarkov/semidistrim.hpp"
#include "rowmarkov/toggle.hpp"
#include "rowmarkov/verify.hpp"

using nlohmann::json;
using namespace rowmarkov;

namespace {

struct GlobalOpts {
  std::string backend = "rational";
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::string out;
  std::string eps = "1/4";
};

void emit(const GlobalOpts& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << "\n";
    return;
  }
  std::ofstream f(g.out, std::ios::binary);
  if (!f) throw Error("IoError", "cannot open output file: " + g.out);
  f << text;
}

json read_json_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error("IoError", "cannot open input file: " + path);
  json j;
  try {
    f >> j;
  } catch (const json::exception& e) {
    throw Error("BadJson", path + ": " + e.what());
  }
  return j;
}

bool is_decimal_literal(const std::string& s) {
  return s.find('.') != std::string::npos;
}

// Probability spec: a single fraction (uniform) or "name=frac,name=frac,...".
// Returns one probability per name in `names`, in order.  Decimal literals
// flip the run to the float backend (with a stderr warning) but are still
// parsed exactly.
std::vector<Rational> parse_probs(const std::string& spec, const std::vector<std::string>& names,
                                  GlobalOpts& g) {
  if (spec.empty()) throw Error("BadArgument", "--p is required");
  bool decimal = false;
  std::vector<Rational> out;
  if (spec.find('=') == std::string::npos) {
    decimal = is_decimal_literal(spec);
    Rational p = parse_fraction(spec);
    out.assign(names.size(), p);
  } else {
    std::map<std::string, Rational> by_name;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
      auto eq = item.find('=');
      if (eq == std::string::npos) throw Error("BadArgument", "bad probability entry: " + item);
      decimal = decimal || is_decimal_literal(item.substr(eq + 1));
      by_name[item.substr(0, eq)] = parse_fraction(item.substr(eq + 1));
    }
    for (const auto& name : names) {
      auto it = by_name.find(name);
      if (it == by_name.end()) throw Error("BadArgument", "no probability given for " + name);
      out.push_back(it->second);
      by_name.erase(it);
    }
    if (!by_name.empty())
      throw Error("BadArgument", "probability given for unknown element " + by_name.begin()->first);
  }
  if (decimal && g.backend == "rational") {
    std::cerr << "warning: decimal probability input, switching to float backend\n";
    g.backend = "float";
  }
  return out;
}

json probs_meta(const std::vector<std::string>& names, const std::vector<Rational>& probs) {
  json j = json::object();
  for (std::size_t i = 0; i < names.size(); ++i) j[names[i]] = fraction_string(probs[i]);
  return j;
}

// hexx probabilities are conventionally named q1..qa (x chain) and r1..rb
// (y chain); accept those as aliases for the element labels.
std::vector<std::string> hexx_prob_names(int a, int b) {
  std::vector<std::string> names;
  for (int i = 1; i <= a; ++i) names.push_back("q" + std::to_string(i));
  for (int i = 1; i <= b; ++i) names.push_back("r" + std::to_string(i));
  return names;
}

int run_poset(GlobalOpts& g, int chain_n, int antichain_n, int random_n, const std::string& in) {
  int given = (chain_n > 0) + (antichain_n > 0) + (random_n > 0) + !in.empty();
  if (given != 1)
    throw Error("BadArgument", "give exactly one of --chain, --antichain, --random, --in");
  Poset p = [&] {
    if (chain_n > 0) return Poset::chain(chain_n);
    if (antichain_n > 0) return Poset::antichain(antichain_n);
    if (random_n > 0) {
      if (!g.seed_given) throw Error("BadArgument", "--random requires --seed");
      return Poset::random(random_n, g.seed);
    }
    return poset_from_json(read_json_file(in));
  }();
  emit(g, poset_to_json(p).dump(2) + "\n");
  return 0;
}

json masks_to_json(const std::vector<Mask>& masks) {
  json j = json::array();
  for (Mask m : masks) j.push_back(m);
  return j;
}

int run_build(GlobalOpts& g, const std::string& kind, const std::string& poset_path,
              const std::string& lattice_path, const std::string& hexx_spec,
              const std::string& family_spec, const std::string& graph_path,
              const std::string& order_spec, const std::string& prob_spec, bool certificate) {
  json meta;
  meta["kind"] = kind;
  MarkovChain<Rational> chain;

  if (kind == "ideal") {
    if (poset_path.empty()) throw Error("BadArgument", "build --kind ideal needs --poset");
    Poset p = poset_from_json(read_json_file(poset_path));
    auto probs = parse_probs(prob_spec, p.labels(), g);
    auto rc = rowmotion_chain_distributive(p, probs);
    chain = std::move(rc.chain);
    meta["poset"] = poset_to_json(p);
    meta["probabilities"] = probs_meta(p.labels(), probs);
    meta["state_masks"] = masks_to_json(rc.state_masks);
    meta["closed_form"] = "inverse-product";
    meta["width"] = p.width();
    bool positive = true;
    for (const auto& pr : probs) positive = positive && pr > 0 && pr < 1;
    if (positive) meta["refined_escape"] = fraction_string(min_antichain_survival(p, probs));
  } else if (kind == "semidistrim") {
    Lattice l = [&] {
      if (!hexx_spec.empty()) {
        int a = 0, b = 0;
        char comma = 0;
        std::stringstream ss(hexx_spec);
        if (!(ss >> a >> comma >> b) || comma != ',' || a < 1 || b < 1)
          throw Error("BadArgument", "--hexx expects a,b with a,b >= 1");
        return hexx(a, b);
      }
      if (lattice_path.empty())
        throw Error("BadArgument", "build --kind semidistrim needs --lattice or --hexx");
      return lattice_from_json(read_json_file(lattice_path));
    }();
    SemidistrimVerdict verdict = is_semidistrim(l);
    if (!verdict.semidistrim) throw Error("NotSemidistrim", verdict.reason);
    SemidistrimData data = analyze_semidistrim(l);
    std::vector<std::string> names;
    for (int j : data.kappa.joins) names.push_back(l.poset().label(j));
    std::vector<Rational> probs;
    if (!hexx_spec.empty() && prob_spec.find('q') != std::string::npos) {
      int a = 0;
      for (const auto& lab : l.poset().labels()) a += lab[0] == 'x';
      int b = l.size() - a - 2;
      std::vector<std::string> qr = hexx_prob_names(a, b);
      // qr is ordered x1..xa,y1..yb; reorder to the join-irreducible order.
      std::vector<std::string> by_join;
      for (const auto& lab : names)
        by_join.push_back((lab[0] == 'x' ? "q" : "r") + lab.substr(1));
      probs = parse_probs(prob_spec, by_join, g);
    } else {
      probs = parse_probs(prob_spec, names, g);
    }
    auto rc = rowmotion_chain_semidistrim(l, data, probs);
    chain = std::move(rc.chain);
    meta["lattice"] = lattice_to_json(l);
    meta["probabilities"] = probs_meta(names, probs);
    meta["state_masks"] = masks_to_json(rc.state_masks);
    meta["alpha"] = data.galois.independence_number();
    bool positive = true;
    for (const auto& pr : probs) positive = positive && pr > 0 && pr < 1;
    if (positive)
      meta["refined_escape"] = fraction_string(min_independent_survival(data.galois, probs));
    if (certificate) meta["certificate"] = verdict.certificate;
  } else if (kind == "toggle") {
    if (family_spec.empty()) throw Error("BadArgument", "build --kind toggle needs --family");
    SetFamily family = [&]() -> SetFamily {
      if (family_spec == "indsets") {
        if (graph_path.empty()) throw Error("BadArgument", "--family indsets needs --graph");
        return independent_set_family(graph_from_json(read_json_file(graph_path)));
      }
      if (family_spec == "ideals" || family_spec == "convex") {
        if (poset_path.empty())
          throw Error("BadArgument", "--family " + family_spec + " needs --poset");
        Poset p = poset_from_json(read_json_file(poset_path));
        return family_spec == "ideals" ? order_ideal_family(p) : interval_closed_family(p);
      }
      if (family_spec.rfind("atmost:", 0) == 0 || family_spec.rfind("atleast:", 0) == 0) {
        if (poset_path.empty())
          throw Error("BadArgument", "--family " + family_spec + " needs --poset for the ground set");
        Poset p = poset_from_json(read_json_file(poset_path));
        int k = std::stoi(family_spec.substr(family_spec.find(':') + 1));
        return family_spec[2] == 'm' ? size_at_most_family(p.labels(), k)
                                     : size_at_least_family(p.labels(), k);
      }
      return family_from_json(read_json_file(family_spec));
    }();
    std::vector<int> order;
    if (order_spec.empty()) {
      for (int i = 0; i < family.ground_size(); ++i) order.push_back(i);
    } else {
      std::stringstream ss(order_spec);
      std::string name;
      std::vector<bool> seen(family.ground_size(), false);
      while (std::getline(ss, name, ',')) {
        auto it = std::find(family.ground.begin(), family.ground.end(), name);
        if (it == family.ground.end()) throw Error("UnknownLabel", "unknown element: " + name);
        int idx = static_cast<int>(it - family.ground.begin());
        if (seen[idx]) throw Error("BadArgument", "element repeated in --order: " + name);
        seen[idx] = true;
        order.push_back(idx);
      }
      if (static_cast<int>(order.size()) != family.ground_size())
        throw Error("BadArgument", "--order must list every ground element once");
    }
    auto probs = parse_probs(prob_spec, family.ground, g);
    chain = build_toggle_chain(family, order, probs);
    meta["ground"] = family.ground;
    meta["probabilities"] = probs_meta(family.ground, probs);
    meta["state_masks"] = masks_to_json(family.members);
    meta["closed_form"] = "inverse-product";
    meta["connected"] = hypercube_connected(family).connected;
  } else {
    throw Error("BadArgument", "unknown --kind: " + kind);
  }

  meta["backend"] = g.backend;
  emit(g, chain_to_json(chain, meta).dump(2) + "\n");
  return 0;
}

// Reads chain + meta; the closed-form stationary is reconstructible when the
// builder recorded state masks and per-element probabilities.
struct LoadedChain {
  MarkovChain<Rational> chain;
  json meta;
};

LoadedChain load_chain(const std::string& path) {
  if (path.empty()) throw Error("BadArgument", "--chain is required");
  json j = read_json_file(path);
  LoadedChain lc;
  lc.chain = chain_from_json(j);
  if (j.contains("meta")) lc.meta = j["meta"];
  return lc;
}

bool closed_form_available(const json& meta) {
  return meta.value("closed_form", "") == "inverse-product" && meta.contains("state_masks") &&
         meta.contains("probabilities");
}

Distribution<Rational> closed_form_stationary(const json& meta) {
  std::vector<Mask> masks;
  for (const auto& m : meta["state_masks"]) masks.push_back(m.get<Mask>());
  std::vector<Rational> probs;
  json ground = meta.contains("ground") ? meta["ground"] : meta["poset"]["elements"];
  for (const auto& name : ground)
    probs.push_back(parse_fraction(meta["probabilities"][name.get<std::string>()]));
  return stationary_weights(masks, probs);
}

json distribution_json(const Distribution<Rational>& d) {
  json j = json::array();
  for (const auto& v : d) j.push_back(fraction_string(v));
  return j;
}

int run_analyze(GlobalOpts& g, const std::string& what, const std::string& chain_path) {
  LoadedChain lc = load_chain(chain_path);
  json report;
  report["analysis"] = what;

  if (what == "classes") {
    auto classes = communicating_classes(lc.chain);
    json out = json::array();
    for (const auto& cls : classes) {
      json names = json::array();
      for (int i : cls) names.push_back(lc.chain.states[i]);
      out.push_back(names);
    }
    report["classes"] = out;
    report["irreducible"] = classes.size() == 1;
  } else if (what == "stationary") {
    if (g.backend == "float") {
      auto pi = stationary(to_double_chain(lc.chain));
      json out = json::array();
      for (double v : pi) out.push_back(v);
      report["stationary"] = out;
    } else {
      auto pi = stationary(lc.chain);
      report["stationary"] = distribution_json(pi);
      if (closed_form_available(lc.meta)) {
        auto closed = closed_form_stationary(lc.meta);
        report["closed_form"] = distribution_json(closed);
        report["closed_form_match"] = closed == pi;
      }
    }
    report["states"] = lc.chain.states;
  } else if (what == "mixing") {
    Rational eps = parse_fraction(g.eps);
    long tmix = mixing_time(lc.chain, eps);
    report["eps"] = fraction_string(eps);
    report["t_mix"] = tmix;
    if (lc.meta.contains("probabilities")) {
      Rational pbar(0);
      for (const auto& [name, val] : lc.meta["probabilities"].items())
        pbar = std::max(pbar, parse_fraction(val.get<std::string>()));
      int width = lc.meta.contains("width") ? lc.meta["width"].get<int>()
                  : lc.meta.contains("alpha") ? lc.meta["alpha"].get<int>()
                                              : -1;
      if (width > 0 && pbar > 0 && pbar < 1) {
        long plain = coupling_bound(pbar, width, eps);
        report["coupling_bound"] = plain;
        report["t_mix_within_bound"] = tmix <= plain;
      }
      if (lc.meta.contains("refined_escape")) {
        long refined =
            coupling_bound_from_escape(parse_fraction(lc.meta["refined_escape"]), eps);
        report["refined_bound"] = refined;
        report["t_mix_within_refined"] = tmix <= refined;
      }
    }
  } else {
    throw Error("BadArgument", "unknown analysis: " + what);
  }
  emit(g, report.dump(2) + "\n");
  return 0;
}

std::string cutoff_csv(int n, const Rational& p, long t_max, int start_size) {
  BooleanChainSpec spec(n, p);
  double pd = to_double(p);
  double half_log = 0.5 * std::log(static_cast<double>(n)) / std::log(1.0 / pd);
  auto curve = exact_tv_curve(spec, t_max, start_size);
  std::ostringstream csv;
  csv << "n,p,t,tv_exact,upper_bound,lower_bound,c\n";
  csv.precision(12);
  for (const auto& pt : curve) {
    double c = static_cast<double>(pt.t) - half_log;
    csv << n << "," << pd << "," << pt.t << "," << to_double(pt.tv) << ",";
    if (c > 0.5) csv << cutoff_upper(spec, c);
    csv << ",";
    if (-c > 0 && -c < half_log) csv << cutoff_lower(spec, -c);
    csv << "," << c << "\n";
  }
  return csv.str();
}

int run_verify(GlobalOpts& g, const std::string& suite, int n, const std::string& p_spec) {
  std::uint64_t seed = g.seed_given ? g.seed : 1;
  CheckSink sink = [](const CheckResult& r) {
    json line;
    line["check"] = r.name;
    line["pass"] = r.pass;
    if (!r.detail.empty()) line["detail"] = r.detail;
    std::cout << line.dump() << "\n";
  };
  bool ok;
  if (suite == "all") ok = verify_all(seed, sink);
  else if (suite == "toggle") ok = verify_toggle(seed, sink);
  else if (suite == "distributive") ok = verify_distributive(seed, sink);
  else if (suite == "hexx") ok = verify_hexx(seed, sink);
  else if (suite == "semidistrim") ok = verify_semidistrim(seed, sink);
  else if (suite == "spectral") ok = verify_spectral(sink);
  else if (suite == "cutoff") ok = verify_cutoff(sink);
  else throw Error("BadArgument", "unknown suite: " + suite);

  // Optional sandwich CSV for a specific cutoff instance.
  if (suite == "cutoff" && n > 0) {
    Rational p = p_spec.empty() ? Rational(1, 2) : parse_fraction(p_spec);
    double pd = to_double(p);
    long half_log =
        std::lround(0.5 * std::log(static_cast<double>(n)) / std::log(1.0 / pd));
    emit(g, cutoff_csv(n, p, half_log + 4, 0));
  }

  json verdict;
  verdict["suite"] = suite;
  verdict["pass"] = ok;
  std::cout << verdict.dump() << "\n";
  return ok ? 0 : 1;
}

int run_cutoff_curve(GlobalOpts& g, int n, const std::string& p_spec, long t_max,
                     const std::string& start) {
  if (n < 1) throw Error("BadArgument", "--n is required");
  Rational p = p_spec.empty() ? Rational(1, 2) : parse_fraction(p_spec);
  if (t_max < 0) {
    double pd = to_double(p);
    t_max = std::lround(0.5 * std::log(static_cast<double>(n)) / std::log(1.0 / pd)) + 6;
  }
  int start_size;
  if (start == "empty") start_size = 0;
  else if (start == "full") start_size = n;
  else throw Error("BadArgument", "--start must be empty or full");
  emit(g, cutoff_csv(n, p, t_max, start_size));
  return 0;
}

int run_simulate(GlobalOpts& g, const std::string& chain_path, const std::string& start,
                 long steps, long replicas) {
  if (!g.seed_given) throw Error("BadArgument", "simulate requires --seed");
  LoadedChain lc = load_chain(chain_path);
  auto it = std::find(lc.chain.states.begin(), lc.chain.states.end(), start);
  if (it == lc.chain.states.end()) throw Error("UnknownLabel", "unknown start state: " + start);
  int start_idx = static_cast<int>(it - lc.chain.states.begin());
  MarkovChain<double> chain = to_double_chain(lc.chain);

  std::ostringstream csv;
  if (replicas <= 1) {
    auto traj = simulate(chain, start_idx, steps, g.seed);
    csv << "step,state\n";
    for (std::size_t t = 0; t < traj.size(); ++t)
      csv << t << "," << chain.states[traj[t]] << "\n";
  } else {
    std::vector<int> ends;
    for (long r = 0; r < replicas; ++r) {
      // Per-replica stream derived from (seed, replica index).
      std::uint64_t stream = g.seed ^ (0x9e3779b97f4a7c15ULL * (r + 1));
      ends.push_back(simulate(chain, start_idx, steps, stream).back());
    }
    auto dist = empirical_distribution(chain.size(), ends);
    csv << "state,probability\n";
    csv.precision(12);
    for (int i = 0; i < chain.size(); ++i) csv << chain.states[i] << "," << dist[i] << "\n";
  }
  emit(g, csv.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rowmotion and toggle Markov chains on posets and semidistrim lattices"};
  app.require_subcommand(1);
  GlobalOpts g;
  app.add_option("--backend", g.backend, "scalar backend: rational|float")
      ->check(CLI::IsMember({"rational", "float"}));
  auto* seed_opt = app.add_option("--seed", g.seed, "random seed");
  app.add_option("--out", g.out, "output file (default stdout)");
  app.add_option("--eps", g.eps, "mixing threshold as a fraction");

  auto* poset_cmd = app.add_subcommand("poset", "generate or normalize a poset");
  int chain_n = 0, antichain_n = 0, random_n = 0;
  std::string poset_in;
  poset_cmd->add_option("--chain", chain_n, "n-element chain");
  poset_cmd->add_option("--antichain", antichain_n, "n-element antichain");
  poset_cmd->add_option("--random", random_n, "random n-element poset (needs --seed)");
  poset_cmd->add_option("--in", poset_in, "poset JSON to normalize");

  auto* build_cmd = app.add_subcommand("build", "build a chain and write its JSON");
  std::string kind, poset_path, lattice_path, hexx_spec, family_spec, graph_path, order_spec,
      prob_spec;
  bool certificate = false;
  build_cmd->add_option("--kind", kind, "ideal|semidistrim|toggle")->required();
  build_cmd->add_option("--poset", poset_path, "poset JSON path");
  build_cmd->add_option("--lattice", lattice_path, "lattice JSON path");
  build_cmd->add_option("--hexx", hexx_spec, "a,b for the two-chain lattice");
  build_cmd->add_option("--family", family_spec,
                        "indsets|ideals|convex|atmost:k|atleast:k|family JSON path");
  build_cmd->add_option("--graph", graph_path, "graph JSON path (for indsets)");
  build_cmd->add_option("--order", order_spec, "toggle order, comma-separated labels");
  build_cmd->add_option("--p", prob_spec, "probability: fraction or name=frac list");
  build_cmd->add_flag("--certificate", certificate, "record the dismantling certificate");

  auto* analyze_cmd = app.add_subcommand("analyze", "analyze a built chain");
  std::string what, chain_path;
  analyze_cmd->add_option("what", what, "stationary|mixing|classes")->required();
  analyze_cmd->add_option("--chain", chain_path, "chain JSON path")->required();

  auto* verify_cmd = app.add_subcommand("verify", "run a verification suite");
  std::string suite = "all", verify_p;
  int verify_n = 0;
  verify_cmd->add_option("suite", suite,
                         "all|toggle|distributive|hexx|semidistrim|spectral|cutoff");
  verify_cmd->add_option("--n", verify_n, "also emit a sandwich CSV for this n (cutoff)");
  verify_cmd->add_option("--p", verify_p, "probability for the sandwich CSV");

  auto* curve_cmd = app.add_subcommand("cutoff-curve", "exact TV curve with both bounds");
  int curve_n = 0;
  std::string curve_p, curve_start = "empty";
  long curve_tmax = -1;
  curve_cmd->add_option("--n", curve_n, "antichain size")->required();
  curve_cmd->add_option("--p", curve_p, "probability (default 1/2)");
  curve_cmd->add_option("--tmax", curve_tmax, "last time step");
  curve_cmd->add_option("--start", curve_start, "empty|full");

  auto* sim_cmd = app.add_subcommand("simulate", "seeded trajectory sampling");
  std::string sim_chain, sim_start;
  long sim_steps = 0, sim_replicas = 1;
  sim_cmd->add_option("--chain", sim_chain, "chain JSON path")->required();
  sim_cmd->add_option("--start", sim_start, "start state label")->required();
  sim_cmd->add_option("--steps", sim_steps, "number of steps")->required();
  sim_cmd->add_option("--replicas", sim_replicas, "independent replicas (>1: empirical dist)");

  CLI11_PARSE(app, argc, argv);
  g.seed_given = seed_opt->count() > 0;

  try {
    if (*poset_cmd) return run_poset(g, chain_n, antichain_n, random_n, poset_in);
    if (*build_cmd)
      return run_build(g, kind, poset_path, lattice_path, hexx_spec, family_spec, graph_path,
                       order_spec, prob_spec, certificate);
    if (*analyze_cmd) return run_analyze(g, what, chain_path);
    if (*verify_cmd) return run_verify(g, suite, verify_n, verify_p);
    if (*curve_cmd) return run_cutoff_curve(g, curve_n, curve_p, curve_tmax, curve_start);
    if (*sim_cmd) return run_simulate(g, sim_chain, sim_start, sim_steps, sim_replicas);
  } catch (const Error& e) {
    json err;
    err["error"] = e.code();
    err["message"] = e.what();
    std::cerr << err.dump() << "\n";
    return 1;
  } catch (const std::exception& e) {
    json err;
    err["error"] = "Internal";
    err["message"] = e.what();
    std::cerr << err.dump() << "\n";
    return 1;
  }
  return 0;
}
