#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "rowmarkov/boolean_spectral.hpp"
#include "rowmarkov/chains.hpp"

using namespace rowmarkov;

TEST_CASE("spec validation") {
  CHECK_THROWS_AS(BooleanChainSpec(0, Rational(1, 2)), Error);
  CHECK_THROWS_AS(BooleanChainSpec(3, Rational(0)), Error);
  CHECK_THROWS_AS(BooleanChainSpec(3, Rational(1)), Error);
}

TEST_CASE("full chain matches the antichain rowmotion chain") {
  for (int n = 1; n <= 5; ++n) {
    BooleanChainSpec spec(n, Rational(1, 3));
    auto full = boolean_full_chain(spec);
    auto direct =
        rowmotion_chain_distributive(Poset::antichain(n), std::vector<Rational>(n, Rational(1, 3)));
    CHECK(full.transition == direct.chain.transition);
    CHECK_NOTHROW(validate_chain(full));
  }
}

TEST_CASE("lumped chain and its stationary distribution") {
  BooleanChainSpec spec(4, Rational(1, 2));
  auto lumped = boolean_lumped_chain(spec);
  CHECK_NOTHROW(validate_chain(lumped));
  // From size s the new size is n - s + Binomial(s, 1-p): support check.
  for (int s = 0; s <= 4; ++s)
    for (int j = 0; j <= 4; ++j)
      CHECK((lumped.transition[s][j] != 0) == (j >= 4 - s));

  // Lumped stationary equals the size-aggregated product-weight distribution.
  auto pi = boolean_lumped_stationary(spec);
  auto masks = Poset::antichain(4).order_ideals();
  auto full_pi = stationary_weights(masks, std::vector<Rational>(4, Rational(1, 2)));
  Distribution<Rational> lumped_pi(5, Rational(0));
  for (std::size_t i = 0; i < masks.size(); ++i) lumped_pi[popcount(masks[i])] += full_pi[i];
  CHECK(pi == lumped_pi);
}

TEST_CASE("eigenfunctions") {
  BooleanChainSpec spec(2, Rational(1, 4));
  for (Mask a = 0; a < 4; ++a) CHECK(eigenfunction_scaled(spec, 0, a) == 1);  // f_empty = 1
  CHECK(eigenfunction(spec, 0b01, 0) == doctest::Approx(2.0));                // p^{-1/2}
  CHECK(eigenfunction(spec, 0b01, 0b01) == doctest::Approx(-0.5));
}

TEST_CASE("spectrum verification") {
  auto r1 = verify_spectrum(BooleanChainSpec(1, Rational(1, 2)));
  CHECK(r1.ok);
  CHECK(r1.multiplicities == std::vector<long>{1, 1});  // eigenvalues 1 and -p

  auto r2 = verify_spectrum(BooleanChainSpec(2, Rational(1, 2)));
  CHECK(r2.ok);
  CHECK(r2.multiplicities == std::vector<long>{1, 2, 1});  // {1, -1/2, -1/2, 1/4}

  for (int n = 1; n <= 6; ++n)
    CHECK(verify_spectrum(BooleanChainSpec(n, Rational(3, 4))).ok);
}

TEST_CASE("cutoff bound values") {
  BooleanChainSpec spec(64, Rational(1, 2));
  CHECK(cutoff_upper(spec, 1.0) == doctest::Approx(0.4027160).epsilon(1e-4));
  CHECK(cutoff_upper(spec, 3.0) == doctest::Approx(0.0890834).epsilon(1e-4));
  CHECK(cutoff_upper(spec, 9.0) < cutoff_upper(spec, 3.0));  // decreasing in c
  CHECK_THROWS_AS(cutoff_upper(spec, 0.5), Error);

  CHECK(cutoff_lower(spec, 2.0) == doctest::Approx(0.625));
  CHECK(cutoff_lower(spec, 2.9) == doctest::Approx(1 - 4 * std::pow(0.5, 6.8) - 4 * std::pow(0.5, 5.8)));
  CHECK(cutoff_lower(spec, 1.0) == doctest::Approx(-0.5));  // vacuous but reported
  CHECK_THROWS_AS(cutoff_lower(spec, 0.0), Error);
  CHECK_THROWS_AS(cutoff_lower(spec, 3.0), Error);  // needs c < (1/2) log_2 64 = 3
}

TEST_CASE("moment identities") {
  CHECK(moment_check(BooleanChainSpec(4, Rational(1, 2)), 10).ok);
  for (int n : {2, 3, 8, 16})
    CHECK(moment_check(BooleanChainSpec(n, Rational(1, 4)), 8).ok);
}

TEST_CASE("tv curves") {
  BooleanChainSpec spec(8, Rational(1, 3));
  auto pi = boolean_lumped_stationary(spec);
  auto curve = exact_tv_curve(spec, 30, 0);
  CHECK(curve[0].tv == 1 - pi[0]);  // point mass at size 0 vs pi

  // Lumped equals full-state, both start extremes.
  auto full_empty = full_tv_curve(spec, 30, 0);
  auto full_top = full_tv_curve(spec, 30, 0b11111111);
  auto lumped_top = exact_tv_curve(spec, 30, 8);
  for (int t = 0; t <= 30; ++t) {
    CHECK(curve[t].tv == full_empty[t].tv);
    CHECK(lumped_top[t].tv == full_top[t].tv);
    CHECK(lumped_tv(spec, t, 0) == curve[t].tv);
  }
}

TEST_CASE("l2 bound on tv") {
  // 4 tv(t)^2 <= sum over nonempty I of f_I(start)^2 p^{2|I|t}; the sum
  // telescopes to (1 + p^{2t -/+ 1})^n - 1 for the empty/full start.
  for (int n : {2, 5, 10}) {
    for (const Rational& p : {Rational(1, 4), Rational(1, 2)}) {
      BooleanChainSpec spec(n, p);
      auto empty_curve = exact_tv_curve(spec, 20, 0);
      auto full_curve = exact_tv_curve(spec, 20, n);
      for (long t = 0; t <= 20; ++t) {
        Rational sum_empty = rational_pow(1 + rational_pow(p, 2 * t - 1), n) - 1;
        Rational sum_full = rational_pow(1 + rational_pow(p, 2 * t + 1), n) - 1;
        CHECK(4 * empty_curve[t].tv * empty_curve[t].tv <= sum_empty);
        CHECK(4 * full_curve[t].tv * full_curve[t].tv <= sum_full);
      }
    }
  }
}

TEST_CASE("curve respects both bounds at matching times") {
  BooleanChainSpec spec(10, Rational(1, 2));
  double half_log = 0.5 * std::log2(10.0);
  auto curve = exact_tv_curve(spec, 15, 0);
  for (long t = 0; t <= 15; ++t) {
    double tv = to_double(curve[t].tv);
    double c_up = t - half_log;
    if (c_up > 0.5) CHECK(tv <= cutoff_upper(spec, c_up) + 1e-12);
    double c_lo = half_log - t;
    if (c_lo > 0 && c_lo < half_log) CHECK(tv >= cutoff_lower(spec, c_lo) - 1e-12);
  }
}
