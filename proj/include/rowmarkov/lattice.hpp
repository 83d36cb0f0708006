#pragma once

#include <optional>
#include <vector>

#include "rowmarkov/poset.hpp"

namespace rowmarkov {

// A finite lattice: a poset together with total meet/join tables and the
// bottom/top elements.  Construction fails if some pair lacks a greatest
// lower bound or least upper bound.  Immutable after construction.
class Lattice {
 public:
  static Lattice from_poset(const Poset& p);

  const Poset& poset() const { return poset_; }
  int size() const { return poset_.size(); }
  int bottom() const { return bottom_; }
  int top() const { return top_; }

  int meet(int u, int v) const { return meet_[u][v]; }
  int join(int u, int v) const { return join_[u][v]; }

  // Meet/join of an element set given as a mask; empty meet is top, empty
  // join is bottom.
  int meet_of(Mask s) const;
  int join_of(Mask s) const;

  std::vector<int> lower_covers(int u) const;
  std::vector<int> upper_covers(int u) const;
  int down_degree(int u) const { return static_cast<int>(lower_covers(u).size()); }

 private:
  explicit Lattice(Poset p) : poset_(std::move(p)) {}

  Poset poset_;
  std::vector<std::vector<int>> meet_, join_;
  int bottom_ = -1, top_ = -1;
};

// Join-irreducible elements (unique lower cover j_*) and meet-irreducible
// elements (unique upper cover m^*), with those covers.
struct IrreducibleIndex {
  std::vector<int> joins;       // join-irreducible element ids
  std::vector<int> join_star;   // join_star[k] = the element covered by joins[k]
  std::vector<int> meets;       // meet-irreducible element ids
  std::vector<int> meet_star;   // meet_star[k] = the element covering meets[k]
};

IrreducibleIndex irreducibles(const Lattice& l);

// The lattice J(P) of order ideals ordered by inclusion, with the mapping
// from lattice elements back to ideal masks.
struct IdealLattice {
  Lattice lattice;
  std::vector<Mask> ideal_of_state;  // aligned with lattice element ids
};

IdealLattice ideal_lattice(const Poset& p);

// Two disjoint chains x_1<...<x_a and y_1<...<y_b with a bottom and a top
// added.  Element labels: "b", "x1".."xa", "y1".."yb", "t".
Lattice hexx(int a, int b);

// The interval [u, v] as a lattice, plus the embedding into the parent.
struct IntervalLattice {
  Lattice lattice;
  std::vector<int> embedding;  // interval element id -> parent element id
};

IntervalLattice interval(const Lattice& l, int u, int v);

}  // namespace rowmarkov
