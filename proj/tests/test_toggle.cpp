#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "rowmarkov/chains.hpp"
#include "rowmarkov/toggle.hpp"

using namespace rowmarkov;

namespace {

SetFamily path3_indsets() { return independent_set_family(Graph::path(3)); }

std::vector<int> identity_order(int n) {
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  return order;
}

}  // namespace

TEST_CASE("single toggles") {
  SetFamily k({"x"}, {0, 1});
  CHECK(toggle(k, 0, 0) == 1);
  CHECK(toggle(k, 0, 1) == 0);
  CHECK_THROWS_AS(toggle(k, 0, 2), Error);

  // Path x-y-z: toggling y on {x} is blocked ({x,y} is dependent).
  SetFamily ind = path3_indsets();
  CHECK(ind.members == std::vector<Mask>{0b000, 0b001, 0b010, 0b100, 0b101});
  CHECK(toggle(ind, 1, 0b001) == 0b001);

  for (Mask a : ind.members)
    for (int x = 0; x < 3; ++x) CHECK(toggle(ind, x, toggle(ind, x, a)) == a);
}

TEST_CASE("toggle sequences") {
  SetFamily ind = path3_indsets();
  auto order = identity_order(3);
  for (Mask a : ind.members) {
    CHECK(toggle_sequence(ind, order, 0, a) == a);                       // empty Y
    CHECK(toggle_sequence(ind, order, 0b001, a) == toggle(ind, 0, a));   // single toggle
  }

  // Toggling every element of J(P) along a linear extension is rowmotion.
  for (int i = 0; i < 6; ++i) {
    Poset p = Poset::random(1 + i % 5, 70 + i);
    SetFamily ideals = order_ideal_family(p);
    auto ext = p.linear_extension();
    for (Mask ideal : ideals.members) {
      Mask row = p.full_mask() & ~p.closure_up(p.maximal(ideal));
      CHECK(toggle_sequence(ideals, ext, p.full_mask(), ideal) == row);
    }
  }
}

TEST_CASE("hypercube connectivity") {
  SetFamily star({"x", "y"}, {0b00, 0b01, 0b10});
  CHECK(hypercube_connected(star).connected);

  SetFamily split({"x", "y"}, {0b01, 0b10});
  auto hc = hypercube_connected(split);
  CHECK_FALSE(hc.connected);
  CHECK(hc.components.size() == 2);

  for (int n = 1; n <= 4; ++n) {
    Graph g = Graph::path(n);
    CHECK(hypercube_connected(independent_set_family(g)).connected);
  }
}

TEST_CASE("family generators") {
  Poset v({"x", "y", "z"}, {{"x", "y"}, {"x", "z"}});
  CHECK(order_ideal_family(v).members.size() == 5);

  // Convex subsets of the 3-chain: all intervals.
  SetFamily convex = interval_closed_family(Poset::chain(3));
  CHECK(convex.members == std::vector<Mask>{0b000, 0b001, 0b010, 0b011, 0b100, 0b110, 0b111});

  SetFamily small = size_at_most_family({"x", "y", "z"}, 1);
  CHECK(small.members == std::vector<Mask>{0b000, 0b001, 0b010, 0b100});
  SetFamily big = size_at_least_family({"x", "y", "z"}, 2);
  CHECK(big.members == std::vector<Mask>{0b011, 0b101, 0b110, 0b111});
}

TEST_CASE("toggle chain construction") {
  SetFamily k({"x"}, {0, 1});
  auto chain = build_toggle_chain(k, identity_order(1), std::vector<Rational>{Rational(1, 3)});
  CHECK(chain.transition[0][1] == 1);             // {} always gains x
  CHECK(chain.transition[1][0] == Rational(1, 3));
  CHECK(chain.transition[1][1] == Rational(2, 3));

  // p = 1 everywhere: deterministic, single skip set.
  Poset p = Poset::random(4, 21);
  SetFamily ideals = order_ideal_family(p);
  auto ext = p.linear_extension();
  auto det = build_toggle_chain(ideals, ext, std::vector<Rational>(p.size(), Rational(1)));
  for (std::size_t i = 0; i < ideals.members.size(); ++i) {
    Mask row = p.full_mask() & ~p.closure_up(p.maximal(ideals.members[i]));
    for (std::size_t j = 0; j < ideals.members.size(); ++j)
      CHECK(det.transition[i][j] == (ideals.members[j] == row ? 1 : 0));
  }

  // Rows sum to exactly 1 under the rational backend.
  for (int i = 0; i < 5; ++i) {
    Poset q = Poset::random(1 + i, 33 + i);
    SetFamily fam = order_ideal_family(q);
    std::vector<Rational> probs(q.size(), Rational(2, 5));
    CHECK_NOTHROW(validate_chain(build_toggle_chain(fam, q.linear_extension(), probs)));
  }
}

TEST_CASE("toggle chain matches the direct rowmotion formula") {
  for (int i = 0; i < 8; ++i) {
    Poset p = Poset::random(1 + i % 5, 140 + i);
    std::vector<Rational> probs;
    for (int x = 0; x < p.size(); ++x) probs.push_back(Rational(x + 1, x + 3));
    auto direct = rowmotion_chain_distributive(p, probs).chain;
    auto toggled = build_toggle_chain(order_ideal_family(p), p.linear_extension(), probs);
    CHECK(direct.transition == toggled.transition);
  }
}

TEST_CASE("stationary distribution is ordering-independent") {
  SetFamily ind = independent_set_family(Graph::path(4));
  std::vector<Rational> probs{Rational(1, 2), Rational(1, 3), Rational(2, 5), Rational(3, 7)};
  std::vector<int> order_a{0, 1, 2, 3}, order_b{3, 1, 0, 2};
  auto pi_a = stationary(build_toggle_chain(ind, order_a, probs));
  auto pi_b = stationary(build_toggle_chain(ind, order_b, probs));
  CHECK(pi_a == pi_b);
  CHECK(pi_a == stationary_weights(ind.members, probs));
}
