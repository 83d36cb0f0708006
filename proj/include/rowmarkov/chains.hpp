#pragma once

#include <map>
#include <string>
#include <vector>

#include "rowmarkov/lattice.hpp"
#include "rowmarkov/markov.hpp"
#include "rowmarkov/semidistrim.hpp"

namespace rowmarkov {

// Per-element probabilities, indexed by poset elements (distributive chains)
// or by join-irreducibles (semidistrim chains).
template <class T>
struct ProbabilityAssignment {
  std::vector<T> values;  // aligned with element / irreducible indices

  static ProbabilityAssignment uniform(int n, const T& p) {
    return ProbabilityAssignment{std::vector<T>(n, p)};
  }
};

template <class T>
void check_probabilities(const std::vector<T>& probs) {
  for (const T& p : probs)
    if (p < T(0) || p > T(1)) throw Error("InvalidProbability", "probability outside [0,1]");
}

// The rowmotion chain of J(P): states are the order ideals in ascending mask
// order, transitions by the min/max product formula.
template <class T>
struct RowmotionChain {
  MarkovChain<T> chain;
  std::vector<Mask> state_masks;  // ideal masks, or label-set masks (semidistrim)
  std::vector<T> probs;
};

template <class T>
RowmotionChain<T> rowmotion_chain_distributive(const Poset& p, const std::vector<T>& probs) {
  if (static_cast<int>(probs.size()) != p.size())
    throw Error("BadArgument", "one probability per poset element required");
  check_probabilities(probs);
  std::vector<Mask> ideals = p.order_ideals();
  const int m = static_cast<int>(ideals.size());
  RowmotionChain<T> rc;
  rc.state_masks = ideals;
  rc.probs = probs;
  rc.chain.transition.assign(m, std::vector<T>(m, T(0)));
  for (Mask ideal : ideals) {
    std::string s = "{";
    for (int x = 0; x < p.size(); ++x)
      if ((ideal >> x) & 1u) {
        if (s.size() > 1) s += ",";
        s += p.label(x);
      }
    rc.chain.states.push_back(s + "}");
  }
  for (int i = 0; i < m; ++i) {
    Mask maxi = p.maximal(ideals[i]);
    for (int j = 0; j < m; ++j) {
      Mask required = p.minimal(p.full_mask() & ~ideals[j]);  // min(P \ I')
      if (required & ~maxi) continue;                         // not a subset of max(I)
      T prob(1);
      for (Mask mm = required; mm;) {
        int x = __builtin_ctz(mm);
        mm &= mm - 1;
        prob *= probs[x];
      }
      for (Mask mm = maxi & ~required; mm;) {
        int x = __builtin_ctz(mm);
        mm &= mm - 1;
        prob *= T(1) - probs[x];
      }
      rc.chain.transition[i][j] = prob;
    }
  }
  return rc;
}

// The rowmotion chain of a semidistrim lattice.  probs are indexed by the
// Galois-graph vertex positions (i.e., by analyze_semidistrim(l).kappa.joins).
// Built from the U subseteq D product formula; see
// rowmotion_chain_semidistrim_by_sampling for the independent construction.
template <class T>
RowmotionChain<T> rowmotion_chain_semidistrim(const Lattice& l, const SemidistrimData& data,
                                              const std::vector<T>& probs) {
  if (probs.size() != data.kappa.joins.size())
    throw Error("BadArgument", "one probability per join-irreducible required");
  check_probabilities(probs);
  const int m = l.size();
  RowmotionChain<T> rc;
  rc.probs = probs;
  rc.state_masks = data.labels.down_labels;
  for (int u = 0; u < m; ++u) rc.chain.states.push_back(l.poset().label(u));
  rc.chain.transition.assign(m, std::vector<T>(m, T(0)));
  for (int from = 0; from < m; ++from) {
    Mask d = data.labels.down_labels[from];
    for (int to = 0; to < m; ++to) {
      Mask u = data.labels.up_labels[to];
      if (u & ~d) continue;  // U_L(to) not a subset of D_L(from)
      T prob(1);
      for (Mask mm = u; mm;) {
        int k = __builtin_ctz(mm);
        mm &= mm - 1;
        prob *= probs[k];
      }
      for (Mask mm = d & ~u; mm;) {
        int k = __builtin_ctz(mm);
        mm &= mm - 1;
        prob *= T(1) - probs[k];
      }
      rc.chain.transition[from][to] = prob;
    }
  }
  return rc;
}

// Same chain assembled the other way: enumerate S subseteq D_L(u) and land on
// meet of kappa(S).  Used as a cross-check against the formula construction.
template <class T>
RowmotionChain<T> rowmotion_chain_semidistrim_by_sampling(const Lattice& l,
                                                          const SemidistrimData& data,
                                                          const std::vector<T>& probs) {
  if (probs.size() != data.kappa.joins.size())
    throw Error("BadArgument", "one probability per join-irreducible required");
  check_probabilities(probs);
  const int m = l.size();
  RowmotionChain<T> rc;
  rc.probs = probs;
  rc.state_masks = data.labels.down_labels;
  for (int u = 0; u < m; ++u) rc.chain.states.push_back(l.poset().label(u));
  rc.chain.transition.assign(m, std::vector<T>(m, T(0)));
  for (int from = 0; from < m; ++from) {
    const Mask d = data.labels.down_labels[from];
    Mask s = 0;
    while (true) {
      T prob(1);
      for (Mask mm = d; mm;) {
        int k = __builtin_ctz(mm);
        mm &= mm - 1;
        prob *= ((s >> k) & 1u) ? probs[k] : T(1) - probs[k];
      }
      // target = meet of kappa(S) (empty meet = top).
      int target = l.top();
      for (Mask mm = s; mm;) {
        int k = __builtin_ctz(mm);
        mm &= mm - 1;
        target = l.meet(target, data.kappa.kappa_of[k]);
      }
      rc.chain.transition[from][target] += prob;
      if (s == d) break;
      s = (s - d) & d;
    }
  }
  return rc;
}

// Minimum over antichains A of prod_{x in A} (1 - p_x): the refined escape
// probability for the coupling mixing bound.
template <class T>
T min_antichain_survival(const Poset& p, const std::vector<T>& probs) {
  T best(1);
  for (Mask a : p.antichains()) {
    T prod(1);
    for (Mask m = a; m;) {
      int x = __builtin_ctz(m);
      m &= m - 1;
      prod *= T(1) - probs[x];
    }
    best = std::min(best, prod);
  }
  return best;
}

// Minimum over independent sets of the Galois graph of prod (1 - p_j).
template <class T>
T min_independent_survival(const GaloisGraph& g, const std::vector<T>& probs) {
  T best(1);
  for (Mask s : g.independent_sets()) {
    T prod(1);
    for (Mask m = s; m;) {
      int k = __builtin_ctz(m);
      m &= m - 1;
      prod *= T(1) - probs[k];
    }
    best = std::min(best, prod);
  }
  return best;
}

// Closed-form stationary distribution of a toggle chain / distributive
// rowmotion chain: weight(A) = prod_{x in A} 1/p_x, normalized.  States are
// given by their masks in canonical order.
template <class T>
Distribution<T> stationary_weights(const std::vector<Mask>& state_masks,
                                   const std::vector<T>& probs) {
  for (const T& p : probs)
    if (!(p > T(0))) throw Error("InvalidProbability", "weights need p > 0");
  Distribution<T> pi(state_masks.size(), T(0));
  T z(0);
  for (std::size_t i = 0; i < state_masks.size(); ++i) {
    T w(1);
    for (Mask m = state_masks[i]; m;) {
      int x = __builtin_ctz(m);
      m &= m - 1;
      w /= probs[x];
    }
    pi[i] = w;
    z += w;
  }
  for (T& v : pi) v /= z;
  return pi;
}

// Stationary distribution of hexx(a,b) by the closed form, normalized; states
// are ordered as in hexx(a,b)'s element order ("b", x's, y's, "t").
// kappa_indexed = false evaluates the expanded q/r products (the product of
// record); true evaluates the kappa-condition-indexed products instead.
template <class T>
Distribution<T> hexx_stationary_closed_form(int a, int b, const std::vector<T>& qs,
                                            const std::vector<T>& rs,
                                            bool kappa_indexed = false) {
  if (static_cast<int>(qs.size()) != a || static_cast<int>(rs.size()) != b)
    throw Error("BadArgument", "need a q-probabilities and b r-probabilities");
  for (const T& p : qs)
    if (!(p > T(0)) || !(p < T(1))) throw Error("InvalidProbability", "need 0 < p < 1");
  for (const T& p : rs)
    if (!(p > T(0)) || !(p < T(1))) throw Error("InvalidProbability", "need 0 < p < 1");
  T all(1);
  for (const T& q : qs) all *= q;
  for (const T& r : rs) all *= r;

  std::vector<T> mu(a + b + 2, T(0));
  mu[0] = qs[0] * rs[0] * (T(1) - all);       // bottom
  mu[a + b + 1] = T(1) - all;                 // top
  if (!kappa_indexed) {
    for (int i = 1; i <= a; ++i) {
      T qtail(1);
      for (int k = i + 1; k <= a; ++k) qtail *= qs[k - 1];
      T rall(1);
      for (const T& r : rs) rall *= r;
      mu[i] = (T(1) - qs[0]) * rs[0] * qtail + qs[0] * (T(1) - rs[0]) * qtail * rall;
    }
    for (int i = 1; i <= b; ++i) {
      T rtail(1);
      for (int k = i + 1; k <= b; ++k) rtail *= rs[k - 1];
      T qall(1);
      for (const T& q : qs) qall *= q;
      mu[a + i] = qs[0] * (T(1) - rs[0]) * rtail + (T(1) - qs[0]) * rs[0] * qall * rtail;
    }
  } else {
    // kappa(x_i) = x_{i-1} (i >= 2), kappa(x_1) = y_b, kappa(y_1) = x_a,
    // kappa(y_i) = y_{i-1} (i >= 2).  Products indexed by conditions on
    // kappa(j) relative to the target element.
    auto kappa_ge = [&](int target_is_x, int i) {
      // product of p_j over j with kappa(j) >= x_i (resp. y_i).
      T prod(1);
      for (int k = 2; k <= a; ++k) {  // kappa(x_k) = x_{k-1}
        bool ge = target_is_x ? (k - 1 >= i) : false;
        if (ge) prod *= qs[k - 1];
      }
      // kappa(x_1) = y_b
      if (!target_is_x && b >= i) prod *= qs[0];
      for (int k = 2; k <= b; ++k) {  // kappa(y_k) = y_{k-1}
        bool ge = target_is_x ? false : (k - 1 >= i);
        if (ge) prod *= rs[k - 1];
      }
      // kappa(y_1) = x_a
      if (target_is_x && a >= i) prod *= rs[0];
      return prod;
    };
    auto kappa_not_lt = [&](int target_is_x, int i) {
      T prod(1);
      for (int k = 2; k <= a; ++k) {
        bool lt = target_is_x ? (k - 1 < i) : false;
        if (!lt) prod *= qs[k - 1];
      }
      {
        bool lt = target_is_x ? false : (b < i);  // kappa(x_1) = y_b
        if (!lt) prod *= qs[0];
      }
      for (int k = 2; k <= b; ++k) {
        bool lt = target_is_x ? false : (k - 1 < i);
        if (!lt) prod *= rs[k - 1];
      }
      {
        bool lt = target_is_x ? (a < i) : false;  // kappa(y_1) = x_a
        if (!lt) prod *= rs[0];
      }
      return prod;
    };
    for (int i = 1; i <= a; ++i)
      mu[i] = (T(1) - qs[0]) * kappa_ge(1, i) + (T(1) - rs[0]) * kappa_not_lt(1, i);
    for (int i = 1; i <= b; ++i)
      mu[a + i] = (T(1) - rs[0]) * kappa_ge(0, i) + (T(1) - qs[0]) * kappa_not_lt(0, i);
  }

  T z(0);
  for (const T& v : mu) z += v;
  for (T& v : mu) v /= z;
  return mu;
}

}  // namespace rowmarkov
