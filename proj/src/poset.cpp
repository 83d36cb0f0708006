#include "rowmarkov/poset.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace rowmarkov {

namespace {

// Reflexive-transitive closure of a strict relation given as up-masks.
// Repeated squaring over masks; n is small.
void close_upward(std::vector<Mask>& up) {
  const int n = static_cast<int>(up.size());
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = 0; i < n; ++i) {
      Mask acc = up[i];
      Mask m = up[i];
      while (m) {
        int j = __builtin_ctz(m);
        m &= m - 1;
        acc |= up[j];
      }
      if (acc != up[i]) {
        up[i] = acc;
        changed = true;
      }
    }
  }
}

}  // namespace

Poset::Poset(std::vector<std::string> labels,
             const std::vector<std::pair<std::string, std::string>>& cover_pairs)
    : labels_(std::move(labels)) {
  const int n = size();
  if (n < 0 || n > 32) throw Error("LimitExceeded", "posets are limited to 32 elements");
  std::set<std::string> seen;
  for (const auto& l : labels_) {
    if (!seen.insert(l).second) throw Error("DuplicateLabel", "duplicate element label '" + l + "'");
  }

  up_.assign(n, 0);
  down_.assign(n, 0);
  for (int i = 0; i < n; ++i) up_[i] = Mask(1) << i;
  for (const auto& [a, b] : cover_pairs) {
    int ia = index_of(a), ib = index_of(b);
    if (ia == ib) throw Error("CycleDetected", "relation '" + a + "' < '" + a + "'");
    up_[ia] |= Mask(1) << ib;
  }
  close_upward(up_);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && leq(i, j) && leq(j, i))
        throw Error("CycleDetected",
                    "cycle through '" + labels_[i] + "' and '" + labels_[j] + "'");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if ((up_[i] >> j) & 1u) down_[j] |= Mask(1) << i;

  // Transitive reduction: keep i < j with no k strictly between.
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j || !leq(i, j)) continue;
      bool is_cover = true;
      Mask between = up_[i] & down_[j] & ~(Mask(1) << i) & ~(Mask(1) << j);
      if (between) is_cover = false;
      if (is_cover) covers_.emplace_back(i, j);
    }
  }
  std::sort(covers_.begin(), covers_.end());
}

int Poset::index_of(const std::string& label) const {
  for (int i = 0; i < size(); ++i)
    if (labels_[i] == label) return i;
  throw Error("UnknownLabel", "unknown element label '" + label + "'");
}

Mask Poset::closure_down(Mask s) const {
  Mask acc = 0;
  while (s) {
    int i = __builtin_ctz(s);
    s &= s - 1;
    acc |= down_[i];
  }
  return acc;
}

Mask Poset::closure_up(Mask s) const {
  Mask acc = 0;
  while (s) {
    int i = __builtin_ctz(s);
    s &= s - 1;
    acc |= up_[i];
  }
  return acc;
}

Mask Poset::minimal(Mask s) const {
  Mask acc = 0;
  for (Mask m = s; m;) {
    int i = __builtin_ctz(m);
    m &= m - 1;
    // i is minimal in S iff no other element of S lies below it.
    if ((down_[i] & s & ~(Mask(1) << i)) == 0) acc |= Mask(1) << i;
  }
  return acc;
}

Mask Poset::maximal(Mask s) const {
  Mask acc = 0;
  for (Mask m = s; m;) {
    int i = __builtin_ctz(m);
    m &= m - 1;
    if ((up_[i] & s & ~(Mask(1) << i)) == 0) acc |= Mask(1) << i;
  }
  return acc;
}

bool Poset::is_antichain(Mask s) const {
  for (Mask m = s; m;) {
    int i = __builtin_ctz(m);
    m &= m - 1;
    if ((up_[i] & s) != (Mask(1) << i)) return false;
  }
  return true;
}

std::vector<Mask> Poset::order_ideals() const {
  if (size() > kIdealLimit)
    throw Error("LimitExceeded", "order-ideal enumeration limited to " +
                                     std::to_string(kIdealLimit) + " elements");
  std::vector<Mask> ideals;
  const Mask full = full_mask();
  for (Mask s = 0;; ++s) {
    bool down_closed = true;
    for (Mask m = s; m;) {
      int i = __builtin_ctz(m);
      m &= m - 1;
      if ((down_[i] & ~s) != 0) {
        down_closed = false;
        break;
      }
    }
    if (down_closed) ideals.push_back(s);
    if (s == full) break;
  }
  return ideals;
}

std::vector<Mask> Poset::antichains() const {
  if (size() > kIdealLimit)
    throw Error("LimitExceeded", "antichain enumeration limited to " +
                                     std::to_string(kIdealLimit) + " elements");
  std::vector<Mask> out;
  const Mask full = full_mask();
  for (Mask s = 0;; ++s) {
    if (is_antichain(s)) out.push_back(s);
    if (s == full) break;
  }
  return out;
}

int Poset::width() const {
  const int n = size();
  if (n <= 20) {
    int best = 0;
    for (Mask a : antichains()) best = std::max(best, popcount(a));
    return best;
  }
  // Dilworth: width = n - (max matching in the split comparability digraph).
  std::vector<int> match_right(n, -1), match_left(n, -1);
  auto augment = [&](auto&& self, int u, std::vector<char>& visited) -> bool {
    for (int v = 0; v < n; ++v) {
      if (u == v || !less(u, v) || visited[v]) continue;
      visited[v] = 1;
      if (match_right[v] == -1 || self(self, match_right[v], visited)) {
        match_right[v] = u;
        match_left[u] = v;
        return true;
      }
    }
    return false;
  };
  int matching = 0;
  for (int u = 0; u < n; ++u) {
    std::vector<char> visited(n, 0);
    if (augment(augment, u, visited)) ++matching;
  }
  return n - matching;
}

std::vector<int> Poset::linear_extension() const {
  std::vector<int> order(size());
  for (int i = 0; i < size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return popcount(down_[a]) < popcount(down_[b]); });
  return order;
}

Poset Poset::chain(int n) {
  std::vector<std::string> labels;
  std::vector<std::pair<std::string, std::string>> covers;
  for (int i = 1; i <= n; ++i) labels.push_back("e" + std::to_string(i));
  for (int i = 1; i < n; ++i)
    covers.emplace_back("e" + std::to_string(i), "e" + std::to_string(i + 1));
  return Poset(labels, covers);
}

Poset Poset::antichain(int n) {
  std::vector<std::string> labels;
  for (int i = 1; i <= n; ++i) labels.push_back("e" + std::to_string(i));
  return Poset(labels, {});
}

Poset Poset::random(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::string> labels;
  for (int i = 1; i <= n; ++i) labels.push_back("e" + std::to_string(i));
  std::vector<std::pair<std::string, std::string>> rels;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rng() & 1) rels.emplace_back(labels[i], labels[j]);
  // Relations only point from lower to higher index, so no cycles arise; the
  // constructor closes and reduces them.
  return Poset(labels, rels);
}

}  // namespace rowmarkov
