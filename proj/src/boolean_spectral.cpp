#include "rowmarkov/boolean_spectral.hpp"

#include <algorithm>
#include <cmath>

namespace rowmarkov {

namespace {

std::vector<std::vector<BigInt>> binomial_table(int n) {
  std::vector<std::vector<BigInt>> c(n + 1);
  for (int i = 0; i <= n; ++i) {
    c[i].assign(i + 1, 1);
    for (int j = 1; j < i; ++j) c[i][j] = c[i - 1][j - 1] + c[i - 1][j];
  }
  return c;
}

std::string mask_string(Mask m, int n) {
  std::string s = "{";
  for (int i = 0; i < n; ++i)
    if ((m >> i) & 1u) {
      if (s.size() > 1) s += ",";
      s += std::to_string(i + 1);
    }
  return s + "}";
}

}  // namespace

MarkovChain<Rational> boolean_full_chain(const BooleanChainSpec& spec) {
  const int n = spec.n;
  if (n > 14) throw Error("LimitExceeded", "full-state chain limited to n <= 14");
  const Mask full = (Mask(1) << n) - 1;
  const int m = 1 << n;
  MarkovChain<Rational> chain;
  chain.states.reserve(m);
  for (Mask a = 0; a < static_cast<Mask>(m); ++a) chain.states.push_back(mask_string(a, n));
  chain.transition.assign(m, std::vector<Rational>(m, Rational(0)));
  const Rational q = Rational(1) - spec.p;
  for (Mask a = 0; a < static_cast<Mask>(m); ++a) {
    // Targets are (P \ A) union K for K subseteq A, with probability
    // p^{|A \ K|} (1-p)^{|K|}.
    Mask k = 0;
    while (true) {
      Mask target = (full & ~a) | k;
      chain.transition[a][target] +=
          rational_pow(spec.p, popcount(a & ~k)) * rational_pow(q, popcount(k));
      if (k == a) break;
      k = (k - a) & a;
    }
  }
  return chain;
}

MarkovChain<Rational> boolean_lumped_chain(const BooleanChainSpec& spec) {
  const int n = spec.n;
  auto binom = binomial_table(n);
  MarkovChain<Rational> chain;
  for (int s = 0; s <= n; ++s) chain.states.push_back(std::to_string(s));
  chain.transition.assign(n + 1, std::vector<Rational>(n + 1, Rational(0)));
  const Rational q = Rational(1) - spec.p;
  for (int s = 0; s <= n; ++s)
    for (int i = 0; i <= s; ++i)
      chain.transition[s][n - s + i] =
          Rational(binom[s][i]) * rational_pow(q, i) * rational_pow(spec.p, s - i);
  return chain;
}

Distribution<Rational> boolean_lumped_stationary(const BooleanChainSpec& spec) {
  const int n = spec.n;
  auto binom = binomial_table(n);
  Distribution<Rational> pi(n + 1);
  Rational z(0);
  for (int k = 0; k <= n; ++k) {
    pi[k] = Rational(binom[n][k]) * rational_pow(spec.p, -k);
    z += pi[k];
  }
  for (auto& v : pi) v /= z;
  return pi;
}

Rational eigenfunction_scaled(const BooleanChainSpec& spec, Mask i_set, Mask a_set) {
  return rational_pow(-spec.p, popcount(i_set & a_set));
}

double eigenfunction(const BooleanChainSpec& spec, Mask i_set, Mask a_set) {
  double scale = std::pow(to_double(spec.p), -0.5 * popcount(i_set));
  return scale * to_double(eigenfunction_scaled(spec, i_set, a_set));
}

SpectrumReport verify_spectrum(const BooleanChainSpec& spec) {
  const int n = spec.n;
  if (n > 8) throw Error("LimitExceeded", "spectrum verification limited to n <= 8");
  SpectrumReport report;
  const int m = 1 << n;
  const Mask full = Mask(m - 1);
  MarkovChain<Rational> chain = boolean_full_chain(spec);

  // Eigen-relation with the p^{-|I|/2} factor cleared:
  // sum_A' Q(A, A') (-p)^{|I cap A'|} == (-p)^{|I|} (-p)^{|I cap A|}.
  std::vector<Rational> neg_p_pow(2 * n + 1);
  for (int k = 0; k <= 2 * n; ++k) neg_p_pow[k] = rational_pow(-spec.p, k);
  for (Mask i_set = 0; i_set < static_cast<Mask>(m); ++i_set) {
    Rational lambda = neg_p_pow[popcount(i_set)];
    for (Mask a = 0; a < static_cast<Mask>(m); ++a) {
      Rational lhs(0);
      Mask k = 0;
      while (true) {  // A' = (P \ A) | K over K subseteq A
        Mask target = (full & ~a) | k;
        lhs += chain.transition[a][target] * neg_p_pow[popcount(i_set & target)];
        if (k == a) break;
        k = (k - a) & a;
      }
      if (lhs != lambda * neg_p_pow[popcount(i_set & a)]) {
        report.witness = mask_string(i_set, n);
        return report;
      }
    }
  }

  // pi-orthonormality.  sum_A f_I f_J pi = p^{-(|I|+|J|)/2} S / Z with
  // S = sum_A (-1)^c p^{c - |A|}, c = |I cap A| + |J cap A|, Z = (1+1/p)^n.
  // With the scaling cleared: S == 0 for I != J and S == p^{|I|} Z for I == J.
  Rational z = rational_pow(Rational(1) + Rational(1) / spec.p, n);
  for (Mask i_set = 0; i_set < static_cast<Mask>(m); ++i_set) {
    for (Mask j_set = i_set; j_set < static_cast<Mask>(m); ++j_set) {
      // Exponent histogram of c - |A| over all A, signs folded in.
      std::vector<long long> count(3 * n + 1, 0);  // exponent offset by n
      for (Mask a = 0; a < static_cast<Mask>(m); ++a) {
        int c = popcount(i_set & a) + popcount(j_set & a);
        int e = c - popcount(a);
        count[e + n] += (c & 1) ? -1 : 1;
      }
      Rational s(0);
      for (int e = -n; e <= 2 * n; ++e)
        if (count[e + n] != 0) s += Rational(count[e + n]) * rational_pow(spec.p, e);
      Rational expected = (i_set == j_set) ? rational_pow(spec.p, popcount(i_set)) * z : Rational(0);
      if (s != expected) {
        report.witness = mask_string(i_set, n) + "," + mask_string(j_set, n);
        return report;
      }
    }
  }

  auto binom = binomial_table(n);
  report.multiplicities.resize(n + 1);
  for (int k = 0; k <= n; ++k) report.multiplicities[k] = binom[n][k].convert_to<long>();
  report.ok = true;
  return report;
}

double cutoff_upper(const BooleanChainSpec& spec, double c) {
  if (!(c > 0.5)) throw Error("InvalidC", "upper bound requires c > 1/2");
  double p = to_double(spec.p);
  return 0.5 * std::sqrt(std::exp(std::pow(p, 2 * c - 1)) - 1.0);
}

double cutoff_lower(const BooleanChainSpec& spec, double c) {
  double p = to_double(spec.p);
  double half_log = 0.5 * std::log(static_cast<double>(spec.n)) / std::log(1.0 / p);
  if (!(c > 0.0) || !(c < half_log))
    throw Error("InvalidC", "lower bound requires 0 < c < (1/2) log_{1/p} n");
  return 1.0 - 4.0 * std::pow(p, 2 * c + 1) - 4.0 * std::pow(p, 2 * c);
}

namespace {

// Quadratic polynomials over Rational, enough for the moment identities.
struct Poly2 {
  Rational c0, c1, c2;
  bool operator==(const Poly2&) const = default;
};

Rational eval(const Poly2& f, const Rational& x) { return f.c0 + f.c1 * x + f.c2 * x * x; }

}  // namespace

MomentReport moment_check(const BooleanChainSpec& spec, int t_max) {
  MomentReport report;
  const int n = spec.n;
  const Rational p = spec.p;
  Poly2 f{Rational(1), -(Rational(1) + p) / n, Rational(0)};
  Poly2 g{-Rational(n - 1) / (p + 1), (p + 2 * n - 1) / Rational(n), -(p + 1) / Rational(n)};

  MarkovChain<Rational> lumped = boolean_lumped_chain(spec);

  // (i) one-step identities E[f(X')|X=s] = -p f(s), E[g(X')|X=s] = p^2 g(s).
  for (int s = 0; s <= n; ++s) {
    Rational ef(0), eg(0);
    for (int j = 0; j <= n; ++j) {
      if (lumped.transition[s][j] == 0) continue;
      ef += lumped.transition[s][j] * eval(f, Rational(j));
      eg += lumped.transition[s][j] * eval(g, Rational(j));
    }
    if (ef != -p * eval(f, Rational(s))) {
      report.failing_identity = "E[f(X_{t+1})|X_t] = -p f(X_t) at s=" + std::to_string(s);
      return report;
    }
    if (eg != p * p * eval(g, Rational(s))) {
      report.failing_identity = "E[g(X_{t+1})|X_t] = p^2 g(X_t) at s=" + std::to_string(s);
      return report;
    }
  }

  // (ii) f^2 = -((1+p)/n) g + ((1-p)/n) f + p/n as polynomials.
  {
    Poly2 lhs{f.c0 * f.c0, 2 * f.c0 * f.c1, f.c1 * f.c1};
    Rational a = -(Rational(1) + p) / n, b = (Rational(1) - p) / n, c = p / Rational(n);
    Poly2 rhs{a * g.c0 + b * f.c0 + c, a * g.c1 + b * f.c1, a * g.c2 + b * f.c2};
    if (!(lhs == rhs)) {
      report.failing_identity = "polynomial identity f^2 = -((1+p)/n) g + ((1-p)/n) f + p/n";
      return report;
    }
  }

  // (iii) Var(f(X_t) | X_0 = 0) = p/n - p^{2t}/n + ((1-p)/n)(-p)^t.
  Distribution<Rational> dist(n + 1, Rational(0));
  dist[0] = 1;
  for (int t = 0; t <= t_max; ++t) {
    Rational ef(0), ef2(0);
    for (int s = 0; s <= n; ++s) {
      if (dist[s] == 0) continue;
      Rational fs = eval(f, Rational(s));
      ef += dist[s] * fs;
      ef2 += dist[s] * fs * fs;
    }
    Rational variance = ef2 - ef * ef;
    Rational formula = p / n - rational_pow(p, 2 * t) / n +
                       (Rational(1) - p) / n * rational_pow(-p, t);
    if (variance != formula) {
      report.failing_identity = "Var(f(X_t)|X_0=0) formula at t=" + std::to_string(t);
      return report;
    }
    // advance one step
    Distribution<Rational> next(n + 1, Rational(0));
    for (int s = 0; s <= n; ++s) {
      if (dist[s] == 0) continue;
      for (int j = 0; j <= n; ++j)
        if (lumped.transition[s][j] != 0) next[j] += dist[s] * lumped.transition[s][j];
    }
    dist = std::move(next);
  }

  // (iv) stationary moments: E f = E g = 0 and Var f = p/n.
  Distribution<Rational> pi = boolean_lumped_stationary(spec);
  Rational ef(0), eg(0), ef2(0);
  for (int s = 0; s <= n; ++s) {
    Rational fs = eval(f, Rational(s));
    ef += pi[s] * fs;
    eg += pi[s] * eval(g, Rational(s));
    ef2 += pi[s] * fs * fs;
  }
  if (ef != 0 || eg != 0) {
    report.failing_identity = "stationary E[f(X)] = E[g(X)] = 0";
    return report;
  }
  if (ef2 - ef * ef != p / n) {
    report.failing_identity = "stationary Var(f(X)) = p/n";
    return report;
  }

  report.ok = true;
  return report;
}

namespace {

// Lumped distribution propagation with a shared power-of-denominator scale:
// numerators are exact big integers over the denominator v^(n t), where
// p = u/v in lowest terms.
struct LumpedPropagator {
  int n;
  BigInt u, v, w;  // p = u/v, w = v - u
  std::vector<BigInt> numerators;
  BigInt denominator = 1;

  LumpedPropagator(const BooleanChainSpec& spec, int start_size) : n(spec.n) {
    u = boost::multiprecision::numerator(spec.p);
    v = boost::multiprecision::denominator(spec.p);
    w = v - u;
    numerators.assign(n + 1, BigInt(0));
    numerators[start_size] = 1;
  }

  void step() {
    std::vector<BigInt> next(n + 1, BigInt(0));
    BigInt vn = 1;
    for (int i = 0; i < n; ++i) vn *= v;
    for (int s = 0; s <= n; ++s) {
      if (numerators[s] == 0) continue;
      // term_i = C(s,i) w^i u^(s-i) v^(n-s); recurrence in i keeps it exact.
      BigInt term = vn;  // i = 0: u^s v^(n-s) ... start from u^s v^{n-s}
      for (int k = 0; k < s; ++k) term = term / v * u;
      for (int i = 0; i <= s; ++i) {
        next[n - s + i] += numerators[s] * term;
        if (i < s) term = term * (s - i) * w / ((i + 1) * u);
      }
    }
    numerators = std::move(next);
    denominator *= vn;
  }

  Rational tv_to(const Distribution<Rational>& pi) const {
    Rational acc(0);
    for (int k = 0; k <= n; ++k) {
      Rational d = Rational(numerators[k], denominator) - pi[k];
      acc += d < 0 ? -d : d;
    }
    return acc / 2;
  }
};

}  // namespace

Rational lumped_tv(const BooleanChainSpec& spec, long t, int start_size) {
  if (start_size < 0 || start_size > spec.n)
    throw Error("BadArgument", "start size out of range");
  if (spec.n > 4096) throw Error("LimitExceeded", "lumped mode limited to n <= 4096");
  LumpedPropagator prop(spec, start_size);
  for (long i = 0; i < t; ++i) prop.step();
  return prop.tv_to(boolean_lumped_stationary(spec));
}

std::vector<TvPoint> exact_tv_curve(const BooleanChainSpec& spec, long t_max, int start_size) {
  if (start_size < 0 || start_size > spec.n)
    throw Error("BadArgument", "start size out of range");
  if (spec.n > 4096) throw Error("LimitExceeded", "lumped mode limited to n <= 4096");
  LumpedPropagator prop(spec, start_size);
  Distribution<Rational> pi = boolean_lumped_stationary(spec);
  std::vector<TvPoint> curve;
  for (long t = 0; t <= t_max; ++t) {
    curve.push_back(TvPoint{t, prop.tv_to(pi)});
    if (t < t_max) prop.step();
  }
  return curve;
}

std::vector<TvPoint> full_tv_curve(const BooleanChainSpec& spec, long t_max, Mask start) {
  const int n = spec.n;
  if (n > 14) throw Error("LimitExceeded", "full-state mode limited to n <= 14");
  const Mask full = (Mask(1) << n) - 1;
  if (start & ~full) throw Error("BadArgument", "start set outside the ground set");
  const int m = 1 << n;
  const Rational q = Rational(1) - spec.p;
  std::vector<Rational> p_pow(n + 1), q_pow(n + 1);
  for (int k = 0; k <= n; ++k) {
    p_pow[k] = rational_pow(spec.p, k);
    q_pow[k] = rational_pow(q, k);
  }
  Rational z = rational_pow(Rational(1) + Rational(1) / spec.p, n);
  std::vector<Rational> pi(m);
  for (Mask a = 0; a < static_cast<Mask>(m); ++a) pi[a] = rational_pow(spec.p, -popcount(a)) / z;
  Distribution<Rational> dist(m, Rational(0));
  dist[start] = 1;
  std::vector<TvPoint> curve;
  for (long t = 0; t <= t_max; ++t) {
    Rational acc(0);
    for (Mask a = 0; a < static_cast<Mask>(m); ++a) {
      Rational d = dist[a] - pi[a];
      acc += d < 0 ? -d : d;
    }
    curve.push_back(TvPoint{t, acc / 2});
    if (t == t_max) break;
    Distribution<Rational> next(m, Rational(0));
    for (Mask a = 0; a < static_cast<Mask>(m); ++a) {
      if (dist[a] == 0) continue;
      Mask k = 0;
      while (true) {
        Mask target = (full & ~a) | k;
        next[target] += dist[a] * p_pow[popcount(a & ~k)] * q_pow[popcount(k)];
        if (k == a) break;
        k = (k - a) & a;
      }
    }
    dist = std::move(next);
  }
  return curve;
}

Rational full_tv(const BooleanChainSpec& spec, long t, Mask start) {
  const int n = spec.n;
  if (n > 14) throw Error("LimitExceeded", "full-state mode limited to n <= 14");
  const Mask full = (Mask(1) << n) - 1;
  if (start & ~full) throw Error("BadArgument", "start set outside the ground set");
  const int m = 1 << n;
  const Rational q = Rational(1) - spec.p;
  std::vector<Rational> p_pow(n + 1), q_pow(n + 1);
  for (int k = 0; k <= n; ++k) {
    p_pow[k] = rational_pow(spec.p, k);
    q_pow[k] = rational_pow(q, k);
  }
  Distribution<Rational> dist(m, Rational(0));
  dist[start] = 1;
  for (long step = 0; step < t; ++step) {
    Distribution<Rational> next(m, Rational(0));
    for (Mask a = 0; a < static_cast<Mask>(m); ++a) {
      if (dist[a] == 0) continue;
      Mask k = 0;
      while (true) {
        Mask target = (full & ~a) | k;
        next[target] += dist[a] * p_pow[popcount(a & ~k)] * q_pow[popcount(k)];
        if (k == a) break;
        k = (k - a) & a;
      }
    }
    dist = std::move(next);
  }
  // pi(A) = p^{-|A|} / (1 + 1/p)^n.
  Rational z = rational_pow(Rational(1) + Rational(1) / spec.p, n);
  Rational acc(0);
  for (Mask a = 0; a < static_cast<Mask>(m); ++a) {
    Rational d = dist[a] - rational_pow(spec.p, -popcount(a)) / z;
    acc += d < 0 ? -d : d;
  }
  return acc / 2;
}

}  // namespace rowmarkov
