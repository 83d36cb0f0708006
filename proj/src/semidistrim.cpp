#include "rowmarkov/semidistrim.hpp"

#include <algorithm>
#include <map>
#include <optional>

namespace rowmarkov {

int Pairing::position_of(int j) const {
  for (std::size_t k = 0; k < joins.size(); ++k)
    if (joins[k] == j) return static_cast<int>(k);
  throw Error("UnknownElement", "element is not join-irreducible");
}

int Pairing::kappa(int j) const { return kappa_of[position_of(j)]; }

std::vector<Pairing> pairings(const Lattice& l) {
  IrreducibleIndex idx = irreducibles(l);
  const int k = static_cast<int>(idx.joins.size());
  std::vector<Pairing> result;
  if (k != static_cast<int>(idx.meets.size())) return result;  // no bijection possible

  // Candidate meets for each join, by the two pairing equations.
  std::vector<std::vector<int>> candidates(k);
  for (int a = 0; a < k; ++a) {
    int j = idx.joins[a];
    for (int b = 0; b < k; ++b) {
      int m = idx.meets[b];
      if (l.meet(m, j) == idx.join_star[a] && l.join(m, j) == idx.meet_star[b])
        candidates[a].push_back(b);
    }
  }

  std::vector<int> assignment(k, -1);
  std::vector<bool> used(k, false);
  auto search = [&](auto&& self, int a) -> void {
    if (a == k) {
      Pairing p;
      p.joins = idx.joins;
      p.kappa_of.resize(k);
      for (int i = 0; i < k; ++i) p.kappa_of[i] = idx.meets[assignment[i]];
      result.push_back(std::move(p));
      return;
    }
    for (int b : candidates[a]) {
      if (used[b]) continue;
      used[b] = true;
      assignment[a] = b;
      self(self, a + 1);
      used[b] = false;
    }
  };
  search(search, 0);
  return result;
}

bool GaloisGraph::independent(Mask subset) const {
  for (Mask m = subset; m;) {
    int i = __builtin_ctz(m);
    m &= m - 1;
    for (Mask m2 = subset; m2;) {
      int j = __builtin_ctz(m2);
      m2 &= m2 - 1;
      if (arrow[i][j]) return false;
    }
  }
  return true;
}

std::vector<Mask> GaloisGraph::independent_sets() const {
  const int v = vertex_count();
  if (v > 20) throw Error("LimitExceeded", "independent-set enumeration limited to 20 vertices");
  std::vector<Mask> out;
  const Mask full = v == 0 ? 0 : (Mask(1) << v) - 1;
  for (Mask s = 0;; ++s) {
    if (independent(s)) out.push_back(s);
    if (s == full) break;
  }
  return out;
}

int GaloisGraph::independence_number() const {
  int best = 0;
  for (Mask s : independent_sets()) best = std::max(best, popcount(s));
  return best;
}

int independence_number(const GaloisGraph& g) { return g.independence_number(); }

GaloisGraph galois_graph(const Lattice& l, const Pairing& kappa) {
  GaloisGraph g;
  g.vertices = kappa.joins;
  const int v = g.vertex_count();
  g.arrow.assign(v, std::vector<bool>(v, false));
  for (int i = 0; i < v; ++i)
    for (int j = 0; j < v; ++j)
      if (i != j && !l.poset().leq(g.vertices[i], kappa.kappa_of[j])) g.arrow[i][j] = true;
  return g;
}

EdgeLabeling edge_labels(const Lattice& l, const Pairing& kappa) {
  EdgeLabeling labeling;
  labeling.down_labels.assign(l.size(), 0);
  labeling.up_labels.assign(l.size(), 0);
  const int v = static_cast<int>(kappa.joins.size());
  for (const auto& [u, w] : l.poset().covers()) {
    // The unique j in J_L(w) cap M_L(u): j <= w and kappa(j) >= u.
    int found = -1;
    for (int k = 0; k < v; ++k) {
      if (l.poset().leq(kappa.joins[k], w) && l.poset().leq(u, kappa.kappa_of[k])) {
        if (found != -1)
          throw Error("LabelNotUnique", "edge '" + l.poset().label(u) + "' <. '" +
                                            l.poset().label(w) + "' has multiple labels");
        found = k;
      }
    }
    if (found == -1)
      throw Error("LabelNotUnique", "edge '" + l.poset().label(u) + "' <. '" +
                                        l.poset().label(w) + "' has no label");
    labeling.down_labels[w] |= Mask(1) << found;
    labeling.up_labels[u] |= Mask(1) << found;
  }
  return labeling;
}

int rowmotion(const Lattice& l, const GaloisGraph& g, const EdgeLabeling& labels, int w) {
  std::vector<Mask> ind = g.independent_sets();
  if (static_cast<int>(ind.size()) != l.size())
    throw Error("NotBijective", "label maps cannot biject onto Ind(G_L)");
  std::map<Mask, int> by_up;
  for (int u = 0; u < l.size(); ++u)
    if (!by_up.emplace(labels.up_labels[u], u).second)
      throw Error("NotBijective", "upward label sets are not distinct");
  auto it = by_up.find(labels.down_labels[w]);
  if (it == by_up.end()) throw Error("NotBijective", "downward label set has no upward preimage");
  return it->second;
}

std::vector<std::pair<int, int>> prime_pairs(const Lattice& l) {
  IrreducibleIndex idx = irreducibles(l);
  std::vector<std::pair<int, int>> out;
  for (int j0 : idx.joins) {
    for (int m0 : idx.meets) {
      bool partition = true;
      for (int z = 0; z < l.size() && partition; ++z) {
        bool above = l.poset().leq(j0, z);
        bool below = l.poset().leq(z, m0);
        if (above == below) partition = false;
      }
      if (partition) out.emplace_back(j0, m0);
    }
  }
  return out;
}

namespace {

std::string lattice_key(const Lattice& l) {
  std::vector<std::string> labels = l.poset().labels();
  std::sort(labels.begin(), labels.end());
  std::string key;
  for (const auto& s : labels) {
    key += s;
    key += '\x1f';
  }
  return key;
}

struct DismantleResult {
  bool ok = false;
  std::string reason;
  nlohmann::json certificate;
};

// Recursive compatibly-dismantlable check.  Memoized on the interval's
// element-label set; the memo lives for a single top-level verification.
DismantleResult compatibly_dismantlable(const Lattice& l,
                                        std::map<std::string, DismantleResult>& memo) {
  std::string key = lattice_key(l);
  auto hit = memo.find(key);
  if (hit != memo.end()) return hit->second;

  DismantleResult res;
  if (l.size() == 1) {
    res.ok = true;
    res.certificate = nlohmann::json{{"size", 1}};
    memo[key] = res;
    return res;
  }

  auto ps = pairings(l);
  if (ps.empty()) {
    res.reason = "no pairing exists";
    memo[key] = res;
    return res;
  }
  if (ps.size() > 1) {
    res.reason = "pairing not unique";
    memo[key] = res;
    return res;
  }
  const Pairing& kappa = ps[0];

  auto pairs = prime_pairs(l);
  // Deterministic certificate: try pairs in label-lexicographic order.
  std::sort(pairs.begin(), pairs.end(), [&](auto a, auto b) {
    return std::make_pair(l.poset().label(a.first), l.poset().label(a.second)) <
           std::make_pair(l.poset().label(b.first), l.poset().label(b.second));
  });
  if (pairs.empty()) {
    res.reason = "no prime pair exists";
    memo[key] = res;
    return res;
  }

  for (const auto& [j0, m0] : pairs) {
    IntervalLattice up = interval(l, j0, l.top());
    IntervalLattice down = interval(l, l.bottom(), m0);
    DismantleResult up_res = compatibly_dismantlable(up.lattice, memo);
    if (!up_res.ok) continue;
    DismantleResult down_res = compatibly_dismantlable(down.lattice, memo);
    if (!down_res.ok) continue;

    auto parent_of = [](const IntervalLattice& iv, int sub) { return iv.embedding[sub]; };
    auto sub_of = [](const IntervalLattice& iv, int parent) {
      for (std::size_t i = 0; i < iv.embedding.size(); ++i)
        if (iv.embedding[i] == parent) return static_cast<int>(i);
      return -1;
    };

    // alpha: M_L(j0) -> J_[j0,1], alpha(j) = j0 v j, commuting with kappa.
    Pairing kappa_up = pairings(up.lattice)[0];
    std::vector<int> domain_alpha;
    for (std::size_t k = 0; k < kappa.joins.size(); ++k)
      if (l.poset().leq(j0, kappa.kappa_of[k])) domain_alpha.push_back(static_cast<int>(k));
    bool ok = domain_alpha.size() == kappa_up.joins.size();
    std::vector<bool> hit_join(kappa_up.joins.size(), false);
    for (int k : domain_alpha) {
      if (!ok) break;
      int image_parent = l.join(j0, kappa.joins[k]);
      int image_sub = sub_of(up, image_parent);
      int pos = -1;
      for (std::size_t q = 0; q < kappa_up.joins.size(); ++q)
        if (kappa_up.joins[q] == image_sub) pos = static_cast<int>(q);
      if (pos == -1 || hit_join[pos]) {
        ok = false;
        break;
      }
      hit_join[pos] = true;
      if (parent_of(up, kappa_up.kappa_of[pos]) != kappa.kappa_of[k]) ok = false;
    }
    if (!ok) continue;

    // beta: kappa(J_L(m0)) -> M_[0,m0], beta(m) = m0 ^ m, commuting with kappa.
    Pairing kappa_down = pairings(down.lattice)[0];
    std::vector<int> domain_beta;  // positions k with joins[k] <= m0
    for (std::size_t k = 0; k < kappa.joins.size(); ++k)
      if (l.poset().leq(kappa.joins[k], m0)) domain_beta.push_back(static_cast<int>(k));
    ok = domain_beta.size() == kappa_down.kappa_of.size();
    std::vector<bool> hit_meet(kappa_down.kappa_of.size(), false);
    for (int k : domain_beta) {
      if (!ok) break;
      int image_parent = l.meet(m0, kappa.kappa_of[k]);
      int image_sub = sub_of(down, image_parent);
      int pos = -1;
      for (std::size_t q = 0; q < kappa_down.kappa_of.size(); ++q)
        if (kappa_down.kappa_of[q] == image_sub) pos = static_cast<int>(q);
      if (pos == -1 || hit_meet[pos]) {
        ok = false;
        break;
      }
      hit_meet[pos] = true;
      // beta(kappa_L(j)) must equal kappa_[0,m0](j).
      int j_sub = sub_of(down, kappa.joins[k]);
      if (j_sub == -1 || kappa_down.joins[pos] != j_sub) ok = false;
    }
    if (!ok) continue;

    res.ok = true;
    res.certificate = nlohmann::json{
        {"size", l.size()},
        {"dismantling_pair",
         {l.poset().label(j0), l.poset().label(m0)}},
        {"upper", up_res.certificate},
        {"lower", down_res.certificate}};
    memo[key] = res;
    return res;
  }

  res.reason = "no dismantling pair satisfies the compatibility conditions";
  memo[key] = res;
  return res;
}

}  // namespace

SemidistrimVerdict is_semidistrim(const Lattice& l, int element_limit) {
  if (l.size() > element_limit)
    throw Error("LimitExceeded", "semidistrim verification limited to " +
                                     std::to_string(element_limit) + " elements");
  SemidistrimVerdict verdict;
  std::map<std::string, DismantleResult> memo;
  DismantleResult cd = compatibly_dismantlable(l, memo);
  if (!cd.ok) {
    verdict.reason = cd.reason;
    return verdict;
  }
  if (l.size() == 1) {
    verdict.semidistrim = true;
    verdict.certificate = cd.certificate;
    return verdict;
  }
  const Pairing kappa = pairings(l)[0];
  EdgeLabeling labels;
  try {
    labels = edge_labels(l, kappa);
  } catch (const Error& e) {
    verdict.reason = e.what();
    return verdict;
  }
  GaloisGraph g = galois_graph(l, kappa);
  for (int w = 0; w < l.size(); ++w) {
    if (!g.independent(labels.down_labels[w]) || !g.independent(labels.up_labels[w])) {
      verdict.reason = "label set of '" + l.poset().label(w) + "' is not independent";
      return verdict;
    }
  }
  verdict.semidistrim = true;
  verdict.certificate = cd.certificate;
  return verdict;
}

SemidistrimData analyze_semidistrim(const Lattice& l) {
  SemidistrimVerdict verdict = is_semidistrim(l);
  if (!verdict.semidistrim)
    throw Error("NotSemidistrim", "lattice is not semidistrim: " + verdict.reason);
  SemidistrimData data;
  data.kappa = pairings(l)[0];
  data.galois = galois_graph(l, data.kappa);
  data.labels = edge_labels(l, data.kappa);
  return data;
}

}  // namespace rowmarkov
