#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rowmarkov/chains.hpp"
#include "rowmarkov/markov.hpp"

using namespace rowmarkov;

namespace {

MarkovChain<Rational> two_chain_rowmotion(const Rational& p) {
  return rowmotion_chain_distributive(Poset::chain(2), std::vector<Rational>{p, p}).chain;
}

}  // namespace

TEST_CASE("validation") {
  MarkovChain<Rational> m;
  m.states = {"a", "b"};
  m.transition = {{Rational(1, 2), Rational(1, 2)}, {Rational(0), Rational(1)}};
  CHECK_NOTHROW(validate_chain(m));
  m.transition[0][0] = Rational(1, 3);
  CHECK_THROWS_AS(validate_chain(m), Error);
}

TEST_CASE("communicating classes") {
  MarkovChain<Rational> id;
  id.states = {"a", "b", "c"};
  id.transition = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  CHECK(communicating_classes(id).size() == 3);
  CHECK_FALSE(is_irreducible(id));

  CHECK(is_irreducible(two_chain_rowmotion(Rational(1, 2))));

  // p = 0: every row is the point mass at the full ideal.
  auto absorbing = rowmotion_chain_distributive(Poset::chain(2), std::vector<Rational>{Rational(0), Rational(0)});
  auto classes = communicating_classes(absorbing.chain);
  CHECK(classes.size() > 1);
  int full_state = static_cast<int>(absorbing.state_masks.size()) - 1;
  for (const auto& row : absorbing.chain.transition) CHECK(row[full_state] == 1);
}

TEST_CASE("stationary") {
  auto pi = stationary(two_chain_rowmotion(Rational(1, 2)));
  CHECK(pi == Distribution<Rational>{Rational(1, 7), Rational(2, 7), Rational(4, 7)});

  MarkovChain<Rational> doubly;
  doubly.states = {"a", "b", "c"};
  doubly.transition = {{Rational(1, 2), Rational(1, 4), Rational(1, 4)},
                       {Rational(1, 4), Rational(1, 2), Rational(1, 4)},
                       {Rational(1, 4), Rational(1, 4), Rational(1, 2)}};
  CHECK(stationary(doubly) == Distribution<Rational>(3, Rational(1, 3)));

  MarkovChain<Rational> id;
  id.states = {"a", "b"};
  id.transition = {{1, 0}, {0, 1}};
  CHECK_THROWS_AS(stationary(id), Error);
}

TEST_CASE("stationary is a fixed point") {
  for (int i = 0; i < 10; ++i) {
    Poset p = Poset::random(1 + i % 5, 500 + i);
    std::vector<Rational> probs(p.size(), Rational(i % 3 + 1, i % 3 + 2));
    auto chain = rowmotion_chain_distributive(p, probs).chain;
    auto pi = stationary(chain);
    Distribution<Rational> next(pi.size(), Rational(0));
    for (std::size_t r = 0; r < pi.size(); ++r)
      for (std::size_t c = 0; c < pi.size(); ++c) next[c] += pi[r] * chain.transition[r][c];
    CHECK(next == pi);
  }
}

TEST_CASE("tv distance") {
  Distribution<Rational> mu{Rational(1, 2), Rational(1, 2)};
  CHECK(tv_distance(mu, mu) == 0);
  CHECK(tv_distance<Rational>({1, 0}, {0, 1}) == 1);
  CHECK(tv_distance<Rational>({Rational(1, 2), Rational(1, 2)}, {1, 0}) == Rational(1, 2));
  CHECK_THROWS_AS(tv_distance<Rational>({1}, {1, 0}), Error);
}

TEST_CASE("mixing time") {
  // All rows already equal to pi: one step from the identity start.
  MarkovChain<Rational> flat;
  flat.states = {"a", "b"};
  flat.transition = {{Rational(1, 2), Rational(1, 2)}, {Rational(1, 2), Rational(1, 2)}};
  CHECK(mixing_time(flat, Rational(1, 4)) == 1);

  auto single = rowmotion_chain_distributive(Poset::antichain(1), std::vector<Rational>{Rational(1, 2)}).chain;
  long t = mixing_time(single, Rational(1, 4));
  CHECK(t >= 1);
  CHECK(t <= 10);

  // Worst-row TV is non-increasing in t.
  auto chain = two_chain_rowmotion(Rational(1, 3));
  auto pi = stationary(chain);
  const int n = chain.size();
  std::vector<std::vector<Rational>> power(n, std::vector<Rational>(n, Rational(0)));
  for (int i = 0; i < n; ++i) power[i][i] = 1;
  Rational prev(2);
  for (int step = 0; step < 20; ++step) {
    Rational worst(0);
    for (int i = 0; i < n; ++i) worst = std::max(worst, tv_distance(power[i], pi));
    CHECK(worst <= prev);
    prev = worst;
    std::vector<std::vector<Rational>> next(n, std::vector<Rational>(n, Rational(0)));
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j) next[i][j] += power[i][k] * chain.transition[k][j];
    power = std::move(next);
  }
}

TEST_CASE("coupling bound") {
  CHECK(coupling_bound(Rational(1, 2), 2, Rational(1, 4)) == 5);
  CHECK_THROWS_AS(coupling_bound(Rational(1), 2, Rational(1, 4)), Error);

  // With uniform probabilities the refined escape equals the plain escape.
  Poset p = Poset::antichain(3);
  std::vector<Rational> probs(3, Rational(1, 3));
  CHECK(min_antichain_survival(p, probs) ==
        rational_pow(Rational(1) - Rational(1, 3), p.width()));

  // Monotone in eps; near-1 thresholds give tiny bounds.
  long loose = coupling_bound(Rational(1, 2), 2, Rational(99, 100));
  long tight = coupling_bound(Rational(1, 2), 2, Rational(1, 100));
  CHECK(loose <= tight);
  CHECK(loose <= 1);
}

TEST_CASE("mixing time within coupling bound") {
  for (int i = 0; i < 6; ++i) {
    Poset p = Poset::random(1 + i % 4, 900 + i);
    std::vector<Rational> probs(p.size(), Rational(1, 2));
    auto chain = rowmotion_chain_distributive(p, probs).chain;
    CHECK(mixing_time(chain, Rational(1, 4)) <=
          coupling_bound(Rational(1, 2), p.width(), Rational(1, 4)));
  }
}

TEST_CASE("scc agrees with reachability") {
  for (int i = 0; i < 8; ++i) {
    Poset p = Poset::random(1 + i % 5, 300 + i);
    std::vector<Rational> probs(p.size(), i % 2 ? Rational(1, 2) : Rational(1));
    auto chain = rowmotion_chain_distributive(p, probs).chain;
    const int n = chain.size();
    // Floyd-Warshall style reachability.
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    for (int a = 0; a < n; ++a) {
      reach[a][a] = true;
      for (int b = 0; b < n; ++b)
        if (chain.transition[a][b] > 0) reach[a][b] = true;
    }
    for (int k = 0; k < n; ++k)
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          if (reach[a][k] && reach[k][b]) reach[a][b] = true;
    auto classes = communicating_classes(chain);
    std::vector<int> class_of(n);
    for (std::size_t c = 0; c < classes.size(); ++c)
      for (int s : classes[c]) class_of[s] = static_cast<int>(c);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        CHECK((class_of[a] == class_of[b]) == (reach[a][b] && reach[b][a]));
  }
}

TEST_CASE("simulation") {
  auto chain = to_double_chain(two_chain_rowmotion(Rational(1, 2)));
  CHECK(simulate(chain, 1, 0, 42) == std::vector<int>{1});

  // Deterministic rowmotion (p = 1) walks the rowmotion orbit.
  Poset p = Poset::chain(2);
  auto det = to_double_chain(rowmotion_chain_distributive(p, std::vector<Rational>{Rational(1), Rational(1)}).chain);
  // States (ascending ideal masks): {} < {e1} < {x1,x2}; Row: {} -> P -> {e1} -> {}.
  auto traj = simulate(det, 0, 3, 7);
  CHECK(traj == std::vector<int>{0, 2, 1, 0});

  // Empirical distribution approaches pi.
  auto b4 = rowmotion_chain_distributive(Poset::antichain(4), std::vector<Rational>(4, Rational(1, 2)));
  auto dchain = to_double_chain(b4.chain);
  auto pi = stationary(b4.chain);
  std::vector<int> ends;
  for (int r = 0; r < 100000; ++r)
    ends.push_back(simulate(dchain, 0, 20, 123456 + r).back());
  auto emp = empirical_distribution(dchain.size(), ends);
  double tv = 0;
  for (int s = 0; s < dchain.size(); ++s) tv += std::abs(emp[s] - to_double(pi[s]));
  CHECK(tv / 2 < 0.02);

  // Determinism per seed.
  CHECK(simulate(dchain, 0, 50, 99) == simulate(dchain, 0, 50, 99));
}
