#pragma once

#include <string>
#include <vector>

#include "rowmarkov/markov.hpp"
#include "rowmarkov/poset.hpp"

namespace rowmarkov {

// The rowmotion chain of an n-element antichain with one uniform probability
// p: P(I -> I') = p^{|P \ I'|} (1-p)^{|I cap I'|} whenever P \ I' is a
// subset of I.
struct BooleanChainSpec {
  int n;
  Rational p;

  BooleanChainSpec(int n_, Rational p_) : n(n_), p(std::move(p_)) {
    if (n < 1) throw Error("BadArgument", "need n >= 1");
    if (!(p > 0) || !(p < 1)) throw Error("InvalidProbability", "need 0 < p < 1");
  }
};

// Full 2^n-state chain (n <= 14).
MarkovChain<Rational> boolean_full_chain(const BooleanChainSpec& spec);

// Size-lumped (n+1)-state chain: from size s, the new size is
// n - s + Binomial(s, 1-p).
MarkovChain<Rational> boolean_lumped_chain(const BooleanChainSpec& spec);

// Stationary distribution over sizes: pi(k) = C(n,k) p^{-k} / (1 + 1/p)^n.
Distribution<Rational> boolean_lumped_stationary(const BooleanChainSpec& spec);

// f_I(A) with the irrational p^{-|I|/2} factor cleared: (-p)^{|I cap A|}.
Rational eigenfunction_scaled(const BooleanChainSpec& spec, Mask i_set, Mask a_set);
// f_I(A) itself, as a float.
double eigenfunction(const BooleanChainSpec& spec, Mask i_set, Mask a_set);

struct SpectrumReport {
  bool ok = false;
  std::string witness;                  // failing I (as a mask string) if any
  std::vector<long> multiplicities;     // multiplicity of (-p)^k for k = 0..n
};

// Exact check that Q f_I = (-p)^{|I|} f_I for all I and that the f_I are
// pi-orthonormal, with the p^{-|I|/2} scaling cleared.  n <= 8.
SpectrumReport verify_spectrum(const BooleanChainSpec& spec);

// Thm bounds at t = (1/2) log_{1/p} n +/- c.
double cutoff_upper(const BooleanChainSpec& spec, double c);   // needs c > 1/2
double cutoff_lower(const BooleanChainSpec& spec, double c);   // needs 0 < c < (1/2)log_{1/p} n

struct MomentReport {
  bool ok = false;
  std::string failing_identity;  // empty when ok
};

// Exact verification on the lumped chain of the one-step identities for f and
// g, the polynomial identity relating f^2, f, g, the time-t variance formula
// from start 0, and the stationary moments.
MomentReport moment_check(const BooleanChainSpec& spec, int t_max);

// Exact TV distance to stationarity after t steps, computed on the lumped
// chain from a start of the given size (0 = empty set, n = full set).
Rational lumped_tv(const BooleanChainSpec& spec, long t, int start_size);

// Same quantity on the full 2^n state space from an arbitrary start (n <= 14).
Rational full_tv(const BooleanChainSpec& spec, long t, Mask start);

struct TvPoint {
  long t;
  Rational tv;
};

std::vector<TvPoint> exact_tv_curve(const BooleanChainSpec& spec, long t_max, int start_size);

// Full-state curve (n <= 14), one incremental propagation for all t.
std::vector<TvPoint> full_tv_curve(const BooleanChainSpec& spec, long t_max, Mask start);

}  // namespace rowmarkov
