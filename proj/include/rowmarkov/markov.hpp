#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "rowmarkov/error.hpp"
#include "rowmarkov/rational.hpp"

namespace rowmarkov {

// A finite Markov chain over an exact-rational or float scalar backend.
// States are opaque labels; provenance lives with the constructing module.
template <class T>
struct MarkovChain {
  std::vector<std::string> states;
  std::vector<std::vector<T>> transition;  // row-stochastic

  int size() const { return static_cast<int>(states.size()); }
};

template <class T>
using Distribution = std::vector<T>;

namespace detail {
inline bool row_sum_ok(const Rational& s) { return s == 1; }
inline bool row_sum_ok(double s) { return std::abs(s - 1.0) <= 1e-12; }
}  // namespace detail

template <class T>
void validate_chain(const MarkovChain<T>& m) {
  for (int i = 0; i < m.size(); ++i) {
    T sum(0);
    for (const T& q : m.transition[i]) {
      if (q < T(0) || q > T(1)) throw Error("BadChain", "transition probability out of [0,1]");
      sum += q;
    }
    if (!detail::row_sum_ok(sum))
      throw Error("BadChain", "row " + std::to_string(i) + " does not sum to 1");
  }
}

// Strongly connected components of the positive-probability digraph,
// returned as a partition of state indices (Tarjan, iterative).
template <class T>
std::vector<std::vector<int>> communicating_classes(const MarkovChain<T>& m) {
  const int n = m.size();
  std::vector<int> index(n, -1), low(n, 0), on_stack(n, 0);
  std::vector<int> stack, call_state, call_next;
  std::vector<std::vector<int>> classes;
  int counter = 0;
  for (int start = 0; start < n; ++start) {
    if (index[start] != -1) continue;
    call_state = {start};
    call_next = {0};
    index[start] = low[start] = counter++;
    stack.push_back(start);
    on_stack[start] = 1;
    while (!call_state.empty()) {
      int v = call_state.back();
      int& next = call_next.back();
      bool descended = false;
      while (next < n) {
        int w = next++;
        if (!(m.transition[v][w] > T(0))) continue;
        if (index[w] == -1) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = 1;
          call_state.push_back(w);
          call_next.push_back(0);
          descended = true;
          break;
        }
        if (on_stack[w]) low[v] = std::min(low[v], index[w]);
      }
      if (descended) continue;
      if (low[v] == index[v]) {
        std::vector<int> comp;
        int w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          comp.push_back(w);
        } while (w != v);
        std::sort(comp.begin(), comp.end());
        classes.push_back(std::move(comp));
      }
      call_state.pop_back();
      call_next.pop_back();
      if (!call_state.empty()) {
        int parent = call_state.back();
        low[parent] = std::min(low[parent], low[v]);
      }
    }
  }
  std::sort(classes.begin(), classes.end());
  return classes;
}

template <class T>
bool is_irreducible(const MarkovChain<T>& m) {
  return communicating_classes(m).size() == 1;
}

namespace detail {

// Solves A x = b by Gaussian elimination with pivot selection.  Exact for
// Rational; partial pivoting plus one refinement pass for double.
template <class T>
std::vector<T> solve_linear(std::vector<std::vector<T>> a, std::vector<T> b) {
  const int n = static_cast<int>(b.size());
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    if constexpr (std::is_same_v<T, double>) {
      double best = 0;
      for (int r = col; r < n; ++r)
        if (std::abs(a[r][col]) > best) {
          best = std::abs(a[r][col]);
          pivot = r;
        }
    } else {
      for (int r = col; r < n; ++r)
        if (a[r][col] != T(0)) {
          pivot = r;
          break;
        }
    }
    if (pivot == -1) throw Error("SingularSystem", "singular linear system");
    std::swap(a[col], a[pivot]);
    std::swap(b[col], b[pivot]);
    for (int r = col + 1; r < n; ++r) {
      if (a[r][col] == T(0)) continue;
      T factor = a[r][col] / a[col][col];
      for (int c = col; c < n; ++c) a[r][c] -= factor * a[col][c];
      b[r] -= factor * b[col];
    }
  }
  std::vector<T> x(n, T(0));
  for (int r = n - 1; r >= 0; --r) {
    T acc = b[r];
    for (int c = r + 1; c < n; ++c) acc -= a[r][c] * x[c];
    x[r] = acc / a[r][r];
  }
  return x;
}

}  // namespace detail

// Unique stationary distribution of an irreducible chain: solves
// pi (Q - I) = 0 with sum(pi) = 1.
template <class T>
Distribution<T> stationary(const MarkovChain<T>& m) {
  if (!is_irreducible(m)) throw Error("NotIrreducible", "chain is not irreducible");
  const int n = m.size();
  // Transposed system (Q^T - I) pi = 0; the last equation is replaced by the
  // normalization sum(pi) = 1.
  std::vector<std::vector<T>> a(n, std::vector<T>(n, T(0)));
  std::vector<T> b(n, T(0));
  for (int r = 0; r < n - 1; ++r) {
    for (int c = 0; c < n; ++c) a[r][c] = m.transition[c][r];
    a[r][r] -= T(1);
  }
  for (int c = 0; c < n; ++c) a[n - 1][c] = T(1);
  b[n - 1] = T(1);
  auto pi = detail::solve_linear(a, b);
  if constexpr (std::is_same_v<T, double>) {
    // One iterative-refinement pass against the original system.
    std::vector<T> residual(n, T(0));
    for (int r = 0; r < n - 1; ++r) {
      T acc = -b[r];
      for (int c = 0; c < n; ++c) acc += (m.transition[c][r] - (r == c ? T(1) : T(0))) * pi[c];
      residual[r] = acc;
    }
    T s(0);
    for (const T& v : pi) s += v;
    residual[n - 1] = s - T(1);
    auto corr = detail::solve_linear(a, residual);
    for (int i = 0; i < n; ++i) pi[i] -= corr[i];
  }
  return pi;
}

template <class T>
T tv_distance(const Distribution<T>& mu, const Distribution<T>& nu) {
  if (mu.size() != nu.size())
    throw Error("DimensionMismatch", "distributions have different lengths");
  T acc(0);
  for (std::size_t i = 0; i < mu.size(); ++i) {
    T d = mu[i] - nu[i];
    acc += d < T(0) ? -d : d;
  }
  return acc / T(2);
}

// Smallest t with max_x d_TV(Q^t(x,.), pi) < eps (strict).  Iterates the
// full matrix power, so limited to modest state counts.
template <class T>
long mixing_time(const MarkovChain<T>& m, const T& eps, int state_limit = 4096,
                 long step_limit = 1000000) {
  const int n = m.size();
  if (n > state_limit) throw Error("LimitExceeded", "state space too large for exact powers");
  Distribution<T> pi = stationary(m);
  std::vector<std::vector<T>> power(n, std::vector<T>(n, T(0)));
  for (int i = 0; i < n; ++i) power[i][i] = T(1);
  for (long t = 0;; ++t) {
    T worst(0);
    for (int i = 0; i < n; ++i) worst = std::max(worst, tv_distance(power[i], pi));
    if (worst < eps) return t;
    if (t >= step_limit) throw Error("LimitExceeded", "mixing time exceeds step limit");
    std::vector<std::vector<T>> next(n, std::vector<T>(n, T(0)));
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) {
        if (power[i][k] == T(0)) continue;
        for (int j = 0; j < n; ++j) next[i][j] += power[i][k] * m.transition[k][j];
      }
    power = std::move(next);
  }
}

// Coupling upper bound ceil(log eps / log(1 - escape)), where escape is the
// per-step probability of coalescing at the top state.  The plain bound uses
// escape = (1 - pbar)^width; the refined variant passes the minimum over
// antichains (or Galois independent sets) of prod (1 - p_x) directly.
long coupling_bound_from_escape(const Rational& escape, const Rational& eps);

inline long coupling_bound(const Rational& pbar, int width, const Rational& eps) {
  if (pbar <= 0 || pbar >= 1) throw Error("InvalidProbability", "need 0 < pbar < 1");
  return coupling_bound_from_escape(rational_pow(Rational(1) - pbar, width), eps);
}

// Seeded trajectory sampling on the float backend, inverse-CDF per row.
std::vector<int> simulate(const MarkovChain<double>& m, int start, long steps,
                          std::uint64_t seed);

Distribution<double> empirical_distribution(int num_states,
                                            const std::vector<int>& end_states);

MarkovChain<double> to_double_chain(const MarkovChain<Rational>& m);

}  // namespace rowmarkov
