#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "rowmarkov/poset.hpp"

using namespace rowmarkov;

namespace {

Poset v_poset() {  // x < y, x < z
  return Poset({"x", "y", "z"}, {{"x", "y"}, {"x", "z"}});
}

Poset lambda_poset() {  // y < x, z < x
  return Poset({"x", "y", "z"}, {{"y", "x"}, {"z", "x"}});
}

Mask mask_of(const Poset& p, const std::vector<std::string>& labels) {
  Mask m = 0;
  for (const auto& l : labels) m |= Mask(1) << p.index_of(l);
  return m;
}

// Brute-force maximum antichain by subset enumeration.
int brute_width(const Poset& p) {
  int best = 0;
  for (Mask s = 0; s <= p.full_mask(); ++s)
    if (p.is_antichain(s)) best = std::max(best, popcount(s));
  return best;
}

}  // namespace

TEST_CASE("construction") {
  Poset single({"x"}, {});
  CHECK(single.size() == 1);
  CHECK(single.covers().empty());

  Poset chain({"x", "y", "z"}, {{"x", "y"}, {"y", "z"}});
  CHECK(chain.leq(chain.index_of("x"), chain.index_of("z")));  // closure inferred
  CHECK_FALSE(chain.leq(chain.index_of("z"), chain.index_of("x")));

  // Redundant pair (x,z) is reduced away.
  Poset redundant({"x", "y", "z"}, {{"x", "y"}, {"y", "z"}, {"x", "z"}});
  CHECK(redundant.covers().size() == 2);
  CHECK(redundant.covers() == chain.covers());
}

TEST_CASE("construction errors") {
  CHECK_THROWS_AS(Poset({"x", "x"}, {}), Error);
  CHECK_THROWS_AS(Poset({"x"}, {{"x", "q"}}), Error);
  CHECK_THROWS_AS(Poset({"x", "y"}, {{"x", "y"}, {"y", "x"}}), Error);
  try {
    Poset({"x", "y"}, {{"x", "y"}, {"y", "x"}});
  } catch (const Error& e) {
    CHECK(e.code() == "CycleDetected");
  }
}

TEST_CASE("closures") {
  Poset chain = Poset::chain(3);
  CHECK(chain.closure_down(0) == 0);
  CHECK(chain.closure_up(0) == 0);
  CHECK(chain.closure_down(Mask(1) << 1) == Mask(0b011));  // down of middle

  Poset v = v_poset();
  CHECK(v.closure_up(Mask(1) << v.index_of("x")) == v.full_mask());
}

TEST_CASE("extremal") {
  Poset chain = Poset::chain(3);
  CHECK(chain.maximal(0) == 0);
  CHECK(chain.maximal(0b011) == 0b010);
  CHECK(chain.minimal(0b011) == 0b001);

  Poset v = v_poset();
  CHECK(v.maximal(v.full_mask()) == mask_of(v, {"y", "z"}));
}

TEST_CASE("order ideals") {
  CHECK(Poset::antichain(2).order_ideals().size() == 4);
  auto prefixes = Poset::chain(3).order_ideals();
  CHECK(prefixes.size() == 4);
  CHECK(prefixes == std::vector<Mask>{0b000, 0b001, 0b011, 0b111});
  // Both orientations of the 3-element fork have 5 ideals.
  CHECK(v_poset().order_ideals().size() == 5);
  CHECK(lambda_poset().order_ideals().size() == 5);

  for (int n : {1, 2, 3, 4, 5}) {
    CHECK(Poset::antichain(n).order_ideals().size() == std::size_t(1) << n);
    CHECK(Poset::chain(n).order_ideals().size() == std::size_t(n) + 1);
  }
}

TEST_CASE("width") {
  CHECK(Poset::chain(5).width() == 1);
  CHECK(Poset::antichain(4).width() == 4);
  CHECK(v_poset().width() == 2);
  for (int i = 0; i < 30; ++i) {
    Poset p = Poset::random(1 + i % 8, 1000 + i);
    CHECK(p.width() == brute_width(p));
  }
}

TEST_CASE("generators") {
  CHECK(Poset::antichain(3).covers().empty());
  auto covers = Poset::chain(3).covers();
  CHECK(covers == std::vector<std::pair<int, int>>{{0, 1}, {1, 2}});

  Poset a = Poset::random(5, 7), b = Poset::random(5, 7);
  CHECK(a.covers() == b.covers());
  CHECK(a.labels() == b.labels());
}

TEST_CASE("closure properties") {
  for (int i = 0; i < 8; ++i) {
    Poset p = Poset::random(1 + i, 40 + i);
    for (Mask s = 0; s <= p.full_mask(); ++s) {
      Mask d = p.closure_down(s), u = p.closure_up(s);
      CHECK((d & s) == s);
      CHECK((u & s) == s);
      CHECK(p.closure_down(d) == d);  // idempotent
      CHECK(p.closure_up(u) == u);
      for (Mask t = s;; t = ((t | s) + 1) | s) {  // supersets of s: monotone
        if (t > p.full_mask()) break;
        CHECK((p.closure_down(t) & d) == d);
        CHECK((p.closure_up(t) & u) == u);
        if (t == p.full_mask()) break;
      }
    }
  }
}

TEST_CASE("ideal properties") {
  for (int i = 0; i < 10; ++i) {
    Poset p = Poset::random(1 + i % 6, 90 + i);
    for (Mask ideal : p.order_ideals()) {
      CHECK(p.closure_down(ideal) == ideal);
      CHECK(p.is_antichain(p.maximal(ideal)));
    }
    auto ideals = p.order_ideals();
    CHECK(std::is_sorted(ideals.begin(), ideals.end()));
    CHECK(ideals.front() == 0);
    CHECK(ideals.back() == p.full_mask());
  }
}

TEST_CASE("antichain enumeration and linear extension") {
  for (int i = 0; i < 10; ++i) {
    Poset p = Poset::random(1 + i % 6, 7 + i);
    auto antichains = p.antichains();
    std::set<Mask> enumerated(antichains.begin(), antichains.end());
    for (Mask s = 0; s <= p.full_mask(); ++s)
      CHECK(enumerated.count(s) == (p.is_antichain(s) ? 1 : 0));

    auto ext = p.linear_extension();
    std::vector<int> position(p.size());
    for (int k = 0; k < p.size(); ++k) position[ext[k]] = k;
    for (int a = 0; a < p.size(); ++a)
      for (int b = 0; b < p.size(); ++b)
        if (p.less(a, b)) CHECK(position[a] < position[b]);
  }
}
