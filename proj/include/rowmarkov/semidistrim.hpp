#pragma once

#include <vector>

#include "rowmarkov/lattice.hpp"
#include "vendor_json_fwd.hpp"

namespace rowmarkov {

// A pairing kappa: joins -> meets with kappa(j) ^ j = j_* and
// kappa(j) v j = kappa(j)^*.  kappa_of[k] is the meet-irreducible paired
// with irreducibles(L).joins[k].
struct Pairing {
  std::vector<int> joins;     // join-irreducible element ids
  std::vector<int> kappa_of;  // paired meet-irreducible element ids

  int kappa(int j) const;  // by element id
  int position_of(int j) const;
};

// All pairings of L (empty when none exists; size 1 means uniquely paired).
std::vector<Pairing> pairings(const Lattice& l);

// Galois graph: vertices are the join-irreducibles, arrow j -> j' iff
// j is not below kappa(j').  A vertex subset (mask over vertex positions)
// is independent iff no arrow joins any ordered pair of its members.
struct GaloisGraph {
  std::vector<int> vertices;              // join-irreducible element ids
  std::vector<std::vector<bool>> arrow;   // arrow[i][j] over vertex positions

  int vertex_count() const { return static_cast<int>(vertices.size()); }
  bool independent(Mask subset) const;
  std::vector<Mask> independent_sets() const;
  int independence_number() const;
};

GaloisGraph galois_graph(const Lattice& l, const Pairing& kappa);

// Hasse edge labels j_{uv} and the derived label sets D_L / U_L, stored as
// masks over the Galois graph's vertex positions.
struct EdgeLabeling {
  std::vector<Mask> down_labels;  // per element: labels of edges u <. w
  std::vector<Mask> up_labels;    // per element: labels of edges w <. v
};

EdgeLabeling edge_labels(const Lattice& l, const Pairing& kappa);

// Row_L = U_L^{-1} o D_L.  Throws NotBijective if the label maps are not
// bijections onto Ind(G_L).
int rowmotion(const Lattice& l, const GaloisGraph& g, const EdgeLabeling& labels, int w);

// All (join-irreducible, meet-irreducible) pairs (j0, m0) with
// L = [j0, top] disjoint-union [bottom, m0].
std::vector<std::pair<int, int>> prime_pairs(const Lattice& l);

struct SemidistrimVerdict {
  bool semidistrim = false;
  std::string reason;           // empty when semidistrim
  nlohmann::json certificate;   // dismantling tree when semidistrim
};

SemidistrimVerdict is_semidistrim(const Lattice& l, int element_limit = 200);

// Everything downstream consumers need, verified: the unique pairing, the
// Galois graph, and the edge labeling of a semidistrim lattice.  Throws
// NotSemidistrim otherwise.
struct SemidistrimData {
  Pairing kappa;
  GaloisGraph galois;
  EdgeLabeling labels;
};

SemidistrimData analyze_semidistrim(const Lattice& l);

int independence_number(const GaloisGraph& g);

}  // namespace rowmarkov
