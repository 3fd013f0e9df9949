#include "moduli/symmetry.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace moduli;

TEST_CASE("cycle parsing") {
  Perm p = parse_cycles("(1 2)(3 4 5)", 6);
  CHECK(p(1) == 2);
  CHECK(p(5) == 3);
  CHECK(p(6) == 6);
  CHECK(p.cycles() == "(1 2)(3 4 5)");
  CHECK(compose(p, p.inverse()).is_identity());
  CHECK_THROWS_AS(parse_cycles("(1 1)", 6), std::invalid_argument);
  CHECK_THROWS_AS(parse_cycles("(1 7)", 6), std::invalid_argument);
}

TEST_CASE("custom groups split generators on top-level commas only") {
  CHECK(custom_group("(1 2), (3 4)", 4).order() == 4);
  CHECK(custom_group("(1,2)", 4).order() == 2);
  CHECK(custom_group("(1 2 3 4); (1 2)", 4).order() == 24);
}

TEST_CASE("standard group orders") {
  CHECK(standard_group("M2").order() == 720);
  CHECK(standard_group("R2").order() == 48);
  CHECK(standard_group("S2plus").order() == 72);
  CHECK(standard_group("S2minus").order() == 120);
  CHECK_THROWS_AS(standard_group("R3"), std::invalid_argument);
}

TEST_CASE("invariant dimensions") {
  auto& ws = testing_support::workspace();
  CHECK(ws.invariants("R2").dims() == std::vector<std::size_t>{1, 4, 4, 1});
  CHECK(ws.invariants("S2plus").dims() == std::vector<std::size_t>{1, 3, 3, 1});
  CHECK(ws.invariants("S2minus").dims() == std::vector<std::size_t>{1, 3, 3, 1});
  CHECK(ws.invariants("M2").dims() == std::vector<std::size_t>{1, 2, 2, 1});
}

TEST_CASE("Reynolds operator is an idempotent projection onto invariants") {
  auto& ws = testing_support::workspace();
  const auto& ring = ws.ring();
  const auto& g = *ws.space("R2").group;
  auto x = ring.product({canonicalize({1, 2}, 6), canonicalize({1, 2, 3}, 6)});
  auto r = reynolds(ring, g, x);
  CHECK(is_invariant(ring, g, r));
  CHECK(reynolds(ring, g, r) == r);
  CHECK(group_sum(ring, g, x) == Rational(48) * r);
}
