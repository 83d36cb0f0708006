#include "rowmarkov/toggle.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace rowmarkov {

SetFamily::SetFamily(std::vector<std::string> ground_labels, std::vector<Mask> member_masks)
    : ground(std::move(ground_labels)), members(std::move(member_masks)) {
  if (ground.size() > 32) throw Error("LimitExceeded", "ground sets are limited to 32 elements");
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  const Mask full = full_ground_mask();
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (members[i] & ~full) throw Error("BadArgument", "family member outside ground set");
    member_index[members[i]] = static_cast<int>(i);
  }
}

int SetFamily::index_of(Mask a) const {
  auto it = member_index.find(a);
  if (it == member_index.end()) throw Error("NotInFamily", "set is not a member of the family");
  return it->second;
}

std::string SetFamily::member_label(Mask a) const {
  std::string s = "{";
  for (int i = 0; i < ground_size(); ++i)
    if ((a >> i) & 1u) {
      if (s.size() > 1) s += ",";
      s += ground[i];
    }
  return s + "}";
}

Graph Graph::path(int n) {
  Graph g;
  for (int i = 1; i <= n; ++i) g.vertices.push_back("v" + std::to_string(i));
  g.adjacency.assign(n, 0);
  for (int i = 0; i + 1 < n; ++i) {
    g.adjacency[i] |= Mask(1) << (i + 1);
    g.adjacency[i + 1] |= Mask(1) << i;
  }
  return g;
}

SetFamily independent_set_family(const Graph& g) {
  const int n = static_cast<int>(g.vertices.size());
  if (n > 24) throw Error("LimitExceeded", "independent-set enumeration limited to 24 vertices");
  const Mask full = n == 32 ? ~Mask(0) : (Mask(1) << n) - 1;
  std::vector<Mask> members;
  for (Mask s = 0;; ++s) {
    bool ok = true;
    for (Mask m = s; m;) {
      int i = __builtin_ctz(m);
      m &= m - 1;
      if (g.adjacency[i] & s) {
        ok = false;
        break;
      }
    }
    if (ok) members.push_back(s);
    if (s == full) break;
  }
  return SetFamily(g.vertices, std::move(members));
}

SetFamily order_ideal_family(const Poset& p) {
  return SetFamily(p.labels(), p.order_ideals());
}

SetFamily interval_closed_family(const Poset& p) {
  const int n = p.size();
  if (n > 24) throw Error("LimitExceeded", "convex-subset enumeration limited to 24 elements");
  std::vector<Mask> members;
  const Mask full = p.full_mask();
  for (Mask s = 0;; ++s) {
    // Convex: the down-closure of S intersected with the up-closure of S is S
    // itself (plus anything forced between two members).
    Mask between = p.closure_down(s) & p.closure_up(s);
    if (between == s) members.push_back(s);
    if (s == full) break;
  }
  return SetFamily(p.labels(), std::move(members));
}

namespace {
std::vector<Mask> masks_with_size(int n, bool at_most, int k) {
  const Mask full = n == 32 ? ~Mask(0) : (Mask(1) << n) - 1;
  std::vector<Mask> members;
  for (Mask s = 0;; ++s) {
    int c = popcount(s);
    if (at_most ? c <= k : c >= k) members.push_back(s);
    if (s == full) break;
  }
  return members;
}
}  // namespace

SetFamily size_at_most_family(std::vector<std::string> ground, int k) {
  int n = static_cast<int>(ground.size());
  if (n > 24) throw Error("LimitExceeded", "subset enumeration limited to 24 elements");
  return SetFamily(std::move(ground), masks_with_size(n, true, k));
}

SetFamily size_at_least_family(std::vector<std::string> ground, int k) {
  int n = static_cast<int>(ground.size());
  if (n > 24) throw Error("LimitExceeded", "subset enumeration limited to 24 elements");
  return SetFamily(std::move(ground), masks_with_size(n, false, k));
}

Mask toggle(const SetFamily& k, int x, Mask a) {
  if (!k.contains(a)) throw Error("NotInFamily", "toggle applied outside the family");
  Mask flipped = a ^ (Mask(1) << x);
  return k.contains(flipped) ? flipped : a;
}

Mask toggle_sequence(const SetFamily& k, const std::vector<int>& order, Mask y_set, Mask a) {
  if (!k.contains(a)) throw Error("NotInFamily", "toggle applied outside the family");
  Mask current = a;
  for (int x : order)
    if ((y_set >> x) & 1u) current = toggle(k, x, current);
  return current;
}

HypercubeComponents hypercube_connected(const SetFamily& k) {
  const int m = static_cast<int>(k.members.size());
  std::vector<int> parent(m);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (int i = 0; i < m; ++i) {
    for (int x = 0; x < k.ground_size(); ++x) {
      Mask neighbor = k.members[i] ^ (Mask(1) << x);
      auto it = k.member_index.find(neighbor);
      if (it != k.member_index.end()) parent[find(i)] = find(it->second);
    }
  }
  std::vector<std::vector<int>> components;
  std::vector<int> root_slot(m, -1);
  for (int i = 0; i < m; ++i) {
    int r = find(i);
    if (root_slot[r] == -1) {
      root_slot[r] = static_cast<int>(components.size());
      components.emplace_back();
    }
    components[root_slot[r]].push_back(i);
  }
  return HypercubeComponents{components.size() <= 1, std::move(components)};
}

}  // namespace rowmarkov
