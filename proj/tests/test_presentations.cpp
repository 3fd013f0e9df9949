#include "moduli/presentations.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace moduli;

TEST_CASE("trivial quotients") {
  auto p = make_presentation("x", {"x"}, {"x"}, 4);
  CHECK(hilbert_function(p) == std::vector<std::size_t>{1, 0, 0, 0, 0});
  CHECK_FALSE(independence_check(make_presentation("xx", {"x"}, {"x", "2*x"})));
  CHECK(independence_check(make_presentation("xy", {"x", "y"}, {"x^2", "y^3"})));
  CHECK(hilbert_function(make_presentation("xy", {"x", "y"}, {"x^2", "y^2"}, 3)) == std::vector<std::size_t>{1, 2, 1, 0});
}

TEST_CASE("malformed presentations") {
  CHECK_THROWS_AS(make_presentation("bad", {"x"}, {"x + x^2"}), std::invalid_argument);
  CHECK_THROWS_AS(make_presentation("bad", {"x"}, {"y"}), std::invalid_argument);
  CHECK_THROWS_AS(make_presentation("bad", {}, {}), std::invalid_argument);
  CHECK_THROWS_AS(make_presentation("bad", {"x", "x"}, {"x"}), std::invalid_argument);
}

TEST_CASE("monomial order is graded lex in the listed order") {
  auto m = monomials({"a", "b", "c"}, 2);
  REQUIRE(m.size() == 6);
  CHECK(m.front() == Polynomial::Monomial{{"a", 2}});
  CHECK(m.back() == Polynomial::Monomial{{"c", 2}});
}

TEST_CASE("the three presets define the invariant rings") {
  auto& ws = testing_support::workspace();
  const std::pair<const char*, std::vector<std::size_t>> cases[] = {
      {"R2", {1, 4, 4, 1, 0, 0, 0}}, {"S2plus", {1, 3, 3, 1, 0, 0, 0}}, {"S2minus", {1, 3, 3, 1, 0, 0, 0}}};
  for (const auto& [tag, dims] : cases) {
    CAPTURE(tag);
    auto p = load_presentation(ws.presets_dir(), default_presentation(tag));
    CHECK(hilbert_function(p) == dims);
    auto r = verify_presentation(ws, tag, p);
    CHECK(r.verdict == "isomorphic");
    CHECK(r.generators_vanish);
    CHECK(r.surjective);
    CHECK(r.kernel_matches_linear_relation);
  }
}

TEST_CASE("independence of the generator lists") {
  auto& ws = testing_support::workspace();
  CHECK(independence_check(load_presentation(ws.presets_dir(), "J")));
  CHECK(independence_check(load_presentation(ws.presets_dir(), "K")));
  // five multiples of the linear form and seven quadrics cannot be independent
  // inside an 11-dimensional degree-2 piece
  auto i = load_presentation(ws.presets_dir(), "I");
  auto red = redundant_generators(i);
  CHECK_FALSE(red.empty());
  CHECK(red.front() == 1);
}

TEST_CASE("variables must match the boundary classes") {
  auto& ws = testing_support::workspace();
  auto k = load_presentation(ws.presets_dir(), "K");
  CHECK_THROWS_AS(verify_presentation(ws, "R2", k), std::invalid_argument);
  CHECK_THROWS_AS(load_presentation(ws.presets_dir(), "missing"), std::invalid_argument);
}

TEST_CASE("individual relations") {
  auto& ws = testing_support::workspace();
  CHECK(check_relation(ws, "R2", "d0p*d0r^2").holds);
  CHECK(check_relation(ws, "R2", "d1*d11").holds);
  auto r = check_relation(ws, "R2", "d0p*d0pp");
  CHECK_FALSE(r.holds);
  CHECK_FALSE(r.residue.empty());
  CHECK(check_relation(ws, "S2plus", "a0p^2*b0p").holds);
  CHECK(check_relation(ws, "S2minus", "24*a1m^2 + a0m*a1m + 2*b0m*a1m").holds);
  for (const auto& tag : {"R2", "S2plus", "S2minus"}) {
    auto p = load_presentation(ws.presets_dir(), default_presentation(tag));
    for (const auto& g : p.generators) CHECK(check_relation(ws, tag, g).holds);
  }
}

TEST_CASE("pulled-back relations from M2 agree between ring and ideal") {
  auto& ws = testing_support::workspace();
  for (const auto& tag : {"R2", "S2plus", "S2minus"}) {
    auto p = load_presentation(ws.presets_dir(), default_presentation(tag));
    auto rels = pulled_m2_relations(ws, tag, p);
    REQUIRE(rels.size() == 3);
    for (const auto& r : rels) CHECK(r.in_ideal == r.vanishes);
    CHECK(rels[0].in_ideal);
    CHECK_FALSE(rels[1].in_ideal);
    CHECK(rels[2].in_ideal);
  }
}
