#include "rowmarkov/markov.hpp"

namespace rowmarkov {

long coupling_bound_from_escape(const Rational& escape, const Rational& eps) {
  if (eps <= 0 || eps >= 1) throw Error("InvalidProbability", "need 0 < eps < 1");
  if (escape <= 0 || escape > 1) throw Error("InvalidProbability", "need 0 < escape <= 1");
  if (escape == 1) return 1;
  // ceil(log eps / log(1 - escape)) without floating-point boundary issues:
  // smallest k with (1 - escape)^k <= eps.
  double ratio = std::log(to_double(eps)) / std::log(1.0 - to_double(escape));
  long k = std::max<long>(0, static_cast<long>(std::floor(ratio)) - 2);
  Rational base = Rational(1) - escape;
  Rational power = rational_pow(base, k);
  while (power > eps) {
    power *= base;
    ++k;
  }
  return k;
}

std::vector<int> simulate(const MarkovChain<double>& m, int start, long steps,
                          std::uint64_t seed) {
  if (start < 0 || start >= m.size()) throw Error("UnknownState", "start state out of range");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<int> trajectory{start};
  int current = start;
  for (long t = 0; t < steps; ++t) {
    double u = unif(rng);
    double acc = 0.0;
    int next = m.size() - 1;
    for (int j = 0; j < m.size(); ++j) {
      acc += m.transition[current][j];
      if (u < acc) {
        next = j;
        break;
      }
    }
    current = next;
    trajectory.push_back(current);
  }
  return trajectory;
}

Distribution<double> empirical_distribution(int num_states,
                                            const std::vector<int>& end_states) {
  Distribution<double> d(num_states, 0.0);
  for (int s : end_states) d[s] += 1.0;
  for (double& v : d) v /= static_cast<double>(end_states.size());
  return d;
}

MarkovChain<double> to_double_chain(const MarkovChain<Rational>& m) {
  MarkovChain<double> out;
  out.states = m.states;
  out.transition.resize(m.size());
  for (int i = 0; i < m.size(); ++i) {
    out.transition[i].resize(m.size());
    for (int j = 0; j < m.size(); ++j) out.transition[i][j] = to_double(m.transition[i][j]);
  }
  return out;
}

}  // namespace rowmarkov
