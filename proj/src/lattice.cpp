#include "rowmarkov/lattice.hpp"

#include <algorithm>

namespace rowmarkov {

Lattice Lattice::from_poset(const Poset& p) {
  const int n = p.size();
  if (n == 0) throw Error("NotALattice", "empty poset is not a lattice");
  Lattice l(p);
  l.meet_.assign(n, std::vector<int>(n, -1));
  l.join_.assign(n, std::vector<int>(n, -1));
  for (int u = 0; u < n; ++u) {
    for (int v = u; v < n; ++v) {
      // Greatest lower bound: the unique maximal common lower bound.
      Mask lower = p.down_mask(u) & p.down_mask(v);
      Mask glb = p.maximal(lower);
      if (popcount(glb) != 1)
        throw Error("NotALattice", "elements '" + p.label(u) + "' and '" + p.label(v) +
                                       "' have no meet");
      Mask upper = p.up_mask(u) & p.up_mask(v);
      Mask lub = p.minimal(upper);
      if (popcount(lub) != 1)
        throw Error("NotALattice", "elements '" + p.label(u) + "' and '" + p.label(v) +
                                       "' have no join");
      l.meet_[u][v] = l.meet_[v][u] = __builtin_ctz(glb);
      l.join_[u][v] = l.join_[v][u] = __builtin_ctz(lub);
    }
  }
  for (int u = 0; u < n; ++u) {
    if (popcount(p.down_mask(u)) == 1) l.bottom_ = u;
    if (popcount(p.up_mask(u)) == 1) l.top_ = u;
  }
  return l;
}

int Lattice::meet_of(Mask s) const {
  int acc = top_;
  while (s) {
    int i = __builtin_ctz(s);
    s &= s - 1;
    acc = meet(acc, i);
  }
  return acc;
}

int Lattice::join_of(Mask s) const {
  int acc = bottom_;
  while (s) {
    int i = __builtin_ctz(s);
    s &= s - 1;
    acc = join(acc, i);
  }
  return acc;
}

std::vector<int> Lattice::lower_covers(int u) const {
  std::vector<int> out;
  for (const auto& [a, b] : poset_.covers())
    if (b == u) out.push_back(a);
  return out;
}

std::vector<int> Lattice::upper_covers(int u) const {
  std::vector<int> out;
  for (const auto& [a, b] : poset_.covers())
    if (a == u) out.push_back(b);
  return out;
}

IrreducibleIndex irreducibles(const Lattice& l) {
  IrreducibleIndex idx;
  for (int u = 0; u < l.size(); ++u) {
    auto lower = l.lower_covers(u);
    if (lower.size() == 1) {
      idx.joins.push_back(u);
      idx.join_star.push_back(lower[0]);
    }
    auto upper = l.upper_covers(u);
    if (upper.size() == 1) {
      idx.meets.push_back(u);
      idx.meet_star.push_back(upper[0]);
    }
  }
  return idx;
}

IdealLattice ideal_lattice(const Poset& p) {
  std::vector<Mask> ideals = p.order_ideals();
  const int m = static_cast<int>(ideals.size());
  std::vector<std::string> labels(m);
  for (int i = 0; i < m; ++i) {
    std::string s = "{";
    for (int x = 0; x < p.size(); ++x)
      if ((ideals[i] >> x) & 1u) {
        if (s.size() > 1) s += ",";
        s += p.label(x);
      }
    labels[i] = s + "}";
  }
  // Covers in J(P): add one element.
  std::vector<std::pair<std::string, std::string>> covers;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      Mask diff = ideals[j] & ~ideals[i];
      if ((ideals[i] & ~ideals[j]) == 0 && popcount(diff) == 1) covers.emplace_back(labels[i], labels[j]);
    }
  Poset jp(labels, covers);
  return IdealLattice{Lattice::from_poset(jp), std::move(ideals)};
}

Lattice hexx(int a, int b) {
  if (a < 1 || b < 1) throw Error("InvalidSize", "hexx requires a, b >= 1");
  std::vector<std::string> labels{"b"};
  for (int i = 1; i <= a; ++i) labels.push_back("x" + std::to_string(i));
  for (int i = 1; i <= b; ++i) labels.push_back("y" + std::to_string(i));
  labels.push_back("t");
  std::vector<std::pair<std::string, std::string>> covers;
  covers.emplace_back("b", "x1");
  for (int i = 1; i < a; ++i)
    covers.emplace_back("x" + std::to_string(i), "x" + std::to_string(i + 1));
  covers.emplace_back("x" + std::to_string(a), "t");
  covers.emplace_back("b", "y1");
  for (int i = 1; i < b; ++i)
    covers.emplace_back("y" + std::to_string(i), "y" + std::to_string(i + 1));
  covers.emplace_back("y" + std::to_string(b), "t");
  return Lattice::from_poset(Poset(labels, covers));
}

IntervalLattice interval(const Lattice& l, int u, int v) {
  if (!l.poset().leq(u, v))
    throw Error("NotComparable", "'" + l.poset().label(u) + "' is not below '" +
                                     l.poset().label(v) + "'");
  std::vector<int> embedding;
  for (int z = 0; z < l.size(); ++z)
    if (l.poset().leq(u, z) && l.poset().leq(z, v)) embedding.push_back(z);
  std::vector<std::string> labels;
  for (int z : embedding) labels.push_back(l.poset().label(z));
  std::vector<std::pair<std::string, std::string>> rels;
  for (std::size_t i = 0; i < embedding.size(); ++i)
    for (std::size_t j = 0; j < embedding.size(); ++j)
      if (i != j && l.poset().leq(embedding[i], embedding[j]))
        rels.emplace_back(labels[i], labels[j]);
  Poset sub(labels, rels);  // constructor reduces to true covers of the induced order
  return IntervalLattice{Lattice::from_poset(sub), std::move(embedding)};
}

}  // namespace rowmarkov
