#include "moduli/strata.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace moduli;

TEST_CASE("tree grammar round trip and validation") {
  MarkedTree t = parse_tree("(A A -1)(B B B B -1)");
  CHECK(t.components.size() == 2);
  CHECK(t.mark_count(Mark::A) == 2);
  CHECK(t.edge_count() == 1);
  CHECK(canonical_tree(parse_tree(tree_str(t))) == canonical_tree(t));
  CHECK(canonical_tree(parse_tree("(B B B B -1)(A A -1)")) == canonical_tree(t));
  CHECK_THROWS_AS(parse_tree("(A -1)(B B B B B -1)"), std::invalid_argument);  // unstable
  CHECK_THROWS_AS(parse_tree("(A A -1)(B B -2)"), std::invalid_argument);
  CHECK_THROWS_AS(parse_tree("(A A B"), std::invalid_argument);
}

TEST_CASE("marked automorphisms of small trees") {
  CHECK(count_marked_automorphisms(parse_tree("(A A A A A A)"), false) == 1);
  for (const char* t : {"(A A A -1)(A A A -1)", "(A B B -1)(A B B -1)", "(A A B -1)(B B B -1)", "(A A -1)(B B -1 -2)(A A -2)"}) {
    CAPTURE(t);
    const auto plain = count_marked_automorphisms(parse_tree(t), false);
    CHECK(plain >= 1);
    CHECK(count_marked_automorphisms(parse_tree(t), true) >= plain);
  }
}

TEST_CASE("trees cut out by divisors") {
  const std::uint32_t a_mask = 0b110000;  // marks 5, 6
  MarkedTree t = tree_from_divisors(6, {canonicalize({5, 6}, 6)}, a_mask);
  CHECK(canonical_tree(t) == canonical_tree(parse_tree("(A A -1)(B B B B -1)")));
}

TEST_CASE("automorphism numbers for the irreducible and one-node loci") {
  auto sp = strata_space("R2");
  auto n = [&](const std::string& tree) {
    MarkedTree t = parse_tree(tree);
    return prym_aut_number({"x", t, default_blowups(t, sp.kind)}, sp).n;
  };
  CHECK(n("(A A B B B B)") == 2);
  CHECK(n("(A A B B -1)(B B -1)") == 2);
  CHECK(n("(B B B -1)(A A B -1)") == 4);
  CHECK(n("(A B B -1)(A B B -1)") == 4);
  CHECK_THROWS_AS(strata_space("R3"), std::invalid_argument);
}

TEST_CASE("every preset stratum reproduces its automorphism number") {
  auto& ws = testing_support::workspace();
  for (const auto& tag : ws.tags()) {
    const auto& d = ws.space(tag);
    for (const auto& p : d.stratum_presets) {
      CAPTURE(tag);
      CAPTURE(p.name);
      auto a = prym_aut_number({p.name, p.tree, p.blowups}, d.strata_space);
      CHECK(a.n == static_cast<std::size_t>(p.expected_aut));
      CHECK(a.cover_genus == 2);
    }
  }
}

TEST_CASE("pushforward coefficients of the one-node loci") {
  auto& ws = testing_support::workspace();
  auto coeff = [&](const std::string& tag, const std::string& name) {
    const auto& d = ws.space(tag);
    for (const auto& p : d.stratum_presets)
      if (p.name == name) return stratum_pushforward_coeff({p.name, p.tree, p.blowups}, d.strata_space).coeff;
    FAIL("missing stratum " << name);
    return Rational(0);
  };
  CHECK(coeff("R2", "d0p") == 6);
  CHECK(coeff("R2", "d11") == 9);
  CHECK(coeff("S2plus", "b1p") == make_rational(1, 2));
  CHECK(coeff("R2", "top") == 15);
  CHECK(coeff("S2plus", "top") == 10);
  CHECK(coeff("S2minus", "top") == 6);
}
