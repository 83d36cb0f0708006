#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "rowmarkov/error.hpp"

namespace rowmarkov {

// Subsets of a poset's ground set are bit masks over the element indices
// 0..n-1.  The canonical order on subsets is ascending mask value.
using Mask = std::uint32_t;

inline int popcount(Mask m) { return __builtin_popcount(m); }

// A finite poset.  Elements carry string labels but are indexed 0..n-1
// internally; user-supplied cover pairs are transitively reduced on
// construction.  Immutable after construction.
class Poset {
 public:
  // Hard ceiling for order-ideal enumeration (2^24 masks).
  static constexpr int kIdealLimit = 24;

  Poset(std::vector<std::string> labels,
        const std::vector<std::pair<std::string, std::string>>& cover_pairs);

  int size() const { return static_cast<int>(labels_.size()); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(int i) const { return labels_[i]; }
  int index_of(const std::string& label) const;

  // a <= b in the partial order.
  bool leq(int a, int b) const { return (up_[a] >> b) & 1u; }
  bool less(int a, int b) const { return a != b && leq(a, b); }

  // True cover pairs, lexicographically sorted by (a, b).
  const std::vector<std::pair<int, int>>& covers() const { return covers_; }

  Mask down_mask(int i) const { return down_[i]; }  // {j : j <= i}
  Mask up_mask(int i) const { return up_[i]; }      // {j : j >= i}
  Mask full_mask() const { return size() == 32 ? ~Mask(0) : (Mask(1) << size()) - 1; }

  Mask closure_down(Mask s) const;  // Delta(S)
  Mask closure_up(Mask s) const;    // Nabla(S)
  Mask minimal(Mask s) const;       // min(S)
  Mask maximal(Mask s) const;       // max(S)
  bool is_antichain(Mask s) const;

  // All order ideals (down-closed subsets) in ascending mask order.
  std::vector<Mask> order_ideals() const;

  // Maximum antichain size.  Enumerates antichains for n <= 20, falls back
  // to a Dilworth matching argument above.
  int width() const;

  // All antichains, ascending mask order (n <= kIdealLimit).
  std::vector<Mask> antichains() const;

  // One linear extension: indices sorted so that a < b implies a earlier.
  std::vector<int> linear_extension() const;

  static Poset chain(int n);
  static Poset antichain(int n);
  // Random poset: each relation i < j (in a random order of indices) is drawn
  // independently with probability 1/2, then the transitive closure is taken.
  static Poset random(int n, std::uint64_t seed);

 private:
  std::vector<std::string> labels_;
  std::vector<std::pair<int, int>> covers_;
  std::vector<Mask> up_;    // up_[i] = mask of j with i <= j
  std::vector<Mask> down_;  // down_[i] = mask of j with j <= i
};

}  // namespace rowmarkov
