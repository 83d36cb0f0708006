#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "rowmarkov/markov.hpp"
#include "rowmarkov/poset.hpp"

namespace rowmarkov {

// A collection K of subsets of a ground set, each subset a bit mask.
// Members are kept distinct and in ascending mask order.
struct SetFamily {
  std::vector<std::string> ground;
  std::vector<Mask> members;
  std::unordered_map<Mask, int> member_index;

  SetFamily(std::vector<std::string> ground_labels, std::vector<Mask> member_masks);

  int ground_size() const { return static_cast<int>(ground.size()); }
  Mask full_ground_mask() const {
    return ground.size() == 32 ? ~Mask(0) : (Mask(1) << ground.size()) - 1;
  }
  bool contains(Mask a) const { return member_index.count(a) > 0; }
  int index_of(Mask a) const;
  std::string member_label(Mask a) const;
};

// Undirected graph on labelled vertices, used for independent-set families.
struct Graph {
  std::vector<std::string> vertices;
  std::vector<Mask> adjacency;  // adjacency[i] excludes i itself

  static Graph path(int n);
};

SetFamily independent_set_family(const Graph& g);
SetFamily order_ideal_family(const Poset& p);
// Interval-closed (convex) subsets: S with x,z in S, x <= y <= z implies y in S.
SetFamily interval_closed_family(const Poset& p);
SetFamily size_at_most_family(std::vector<std::string> ground, int k);
SetFamily size_at_least_family(std::vector<std::string> ground, int k);

// tau_x: A -> A xor {x} if that stays in K, else A.  Involutive.
Mask toggle(const SetFamily& k, int x, Mask a);

// Applies tau_y for y in Y, in the order the elements appear in `order`.
Mask toggle_sequence(const SetFamily& k, const std::vector<int>& order, Mask y_set, Mask a);

// Connectivity of the hypercube restricted to K (members adjacent iff their
// symmetric difference is a single element).
struct HypercubeComponents {
  bool connected;
  std::vector<std::vector<int>> components;  // member indices
};

HypercubeComponents hypercube_connected(const SetFamily& k);

// The toggle Markov chain T(K, x).  From a state A, every ground element
// outside A is toggled; each element of A is toggled with probability p_x.
// Rows are accumulated by enumerating the skip sets U subseteq A.
template <class T>
MarkovChain<T> build_toggle_chain(const SetFamily& k, const std::vector<int>& order,
                                  const std::vector<T>& probs) {
  const int n = k.ground_size();
  if (static_cast<int>(order.size()) != n || static_cast<int>(probs.size()) != n)
    throw Error("BadArgument", "order and probability vectors must cover the ground set");
  MarkovChain<T> chain;
  for (Mask a : k.members) chain.states.push_back(k.member_label(a));
  const int m = static_cast<int>(k.members.size());
  chain.transition.assign(m, std::vector<T>(m, T(0)));
  for (int i = 0; i < m; ++i) {
    const Mask a = k.members[i];
    // Enumerate all subsets U of A (skipped toggles).
    Mask u = 0;
    while (true) {
      T prob(1);
      for (Mask rest = a; rest;) {
        int x = __builtin_ctz(rest);
        rest &= rest - 1;
        prob *= ((u >> x) & 1u) ? T(1) - probs[x] : probs[x];
      }
      Mask result = toggle_sequence(k, order, k.full_ground_mask() & ~u, a);
      chain.transition[i][k.index_of(result)] += prob;
      if (u == a) break;
      u = (u - a) & a;  // next subset of a
    }
  }
  return chain;
}

}  // namespace rowmarkov
