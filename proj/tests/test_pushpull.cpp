#include "moduli/pushpull.hpp"
#include "support.hpp"

#include <doctest.h>

#include <algorithm>

using namespace moduli;

namespace {
Polynomial P(const std::string& s) { return parse_polynomial(s); }
}

TEST_CASE("normalization to coprime integers with a positive leading term") {
  CHECK(normalize_relation(P("-1/2*x + 3/4*y"), {"x", "y"}) == P("2*x - 3*y"));
  CHECK(normalize_relation(P("-1/2*x + 3/4*y"), {"y"}) == P("-2*x + 3*y"));
  CHECK(normalize_relation(P("6*a*b - 4*c^2"), {}) == P("3*a*b - 2*c^2"));
  CHECK(normalize_relation(Polynomial(), {}).is_zero());
}

TEST_CASE("substitution") {
  CHECK(substitute(P("x*y + y"), {{"y", P("a - b")}}) == P("x*a - x*b + a - b"));
}

TEST_CASE("linear relations among boundary divisors") {
  auto& ws = testing_support::workspace();
  auto r = derive_linear_relation(ws, "R2");
  CHECK(r.span_rank == 1);
  CHECK(r.span == P("d0p + 6*d0pp - 3*d0r + 12*d1 - 8*d11"));
  CHECK(r.matches);
  CHECK(r.vanishes);
  auto s = derive_linear_relation(ws, "S2plus");
  CHECK(s.span == P("3*a0p - 4*b0p - 8*a1p + 72*b1p"));
  auto m = derive_linear_relation(ws, "S2minus");
  CHECK(m.span_rank == 0);
  CHECK(m.span.is_zero());
  CHECK_THROWS_AS(derive_linear_relation(ws, "M2"), std::invalid_argument);
}

TEST_CASE("intersection tables, ranks and kernels") {
  auto& ws = testing_support::workspace();
  const std::pair<const char*, std::size_t> cases[] = {{"R2", 4}, {"S2plus", 3}, {"S2minus", 3}};
  for (const auto& [tag, rk] : cases) {
    CAPTURE(tag);
    auto t = intersection_table(ws, tag);
    CHECK(t.entries_match);
    CHECK(t.rank == rk);
    CHECK(t.kernel_matches);
  }
  auto t = intersection_table(ws, "R2");
  CHECK(t.rows.size() == 9);
  CHECK(t.columns.size() == 5);
  CHECK_THROWS_AS(intersection_table(ws, "M2"), std::invalid_argument);
}

TEST_CASE("base numbers on M2 and its relations") {
  auto& ws = testing_support::workspace();
  for (const auto& c : mumford_base_numbers(ws)) CHECK(c.verdict == Verdict::Pass);
  auto v = m2_relation_verdicts(ws);
  REQUIRE(v.size() == 3);
  CHECK(v[0].holds);
  CHECK_FALSE(v[1].holds);
  CHECK_FALSE(v[1].residue.empty());
  CHECK(v[2].holds);
}

TEST_CASE("relations pushed from M0,5") {
  auto& ws = testing_support::workspace();
  auto rels = derive_m05_relations(ws);
  REQUIRE(rels.size() == 3);
  for (const auto& r : rels) {
    CAPTURE(r.id);
    CHECK(r.matches);
    CHECK(r.vanishes);
  }
  CHECK(rels[2].normalized == P("16*X_m + C_m - 4*a0m*a1m - a0m*b0m"));
}

TEST_CASE("extremity maps onto one-node loci") {
  auto& ws = testing_support::workspace();
  for (const char* name : {"h0p", "h0alpha"}) {
    HMap h = load_hmap(ws, name);
    CHECK(h.entries.size() == 10);
    for (const auto& c : hmap_entry_checks(ws, h)) {
      CAPTURE(c.id);
      CHECK(c.verdict == Verdict::Pass);
    }
  }
  for (const auto& c : transversality_checks(ws)) {
    CAPTURE(c.id);
    CHECK(c.verdict == Verdict::Pass);
  }
  CHECK_THROWS_AS(load_hmap(ws, "h_missing"), std::invalid_argument);
}

TEST_CASE("quotient maps and the table of degrees") {
  auto& ws = testing_support::workspace();
  auto f = push_f(ws, "R2", P("[5,6]"));
  REQUIRE(f.table);
  CHECK(f.consistent);
  CHECK(f_map_space("fplus") == "S2plus");
  CHECK_THROWS_AS(f_map_space("g"), std::invalid_argument);
  auto pi = push_pi(ws, "R2", P("1"));
  REQUIRE(pi.named);
  CHECK(*pi.named == P("15"));
}

TEST_CASE("pushforward columns: one entry is an erratum, the rest pass") {
  auto& ws = testing_support::workspace();
  std::size_t errata = 0;
  for (const auto& tag : {"R2", "S2plus", "S2minus"})
    for (const auto& c : pi_pushforward_checks(ws, tag)) {
      CAPTURE(c.id);
      CHECK(c.verdict != Verdict::Fail);
      if (c.verdict == Verdict::Erratum) {
        ++errata;
        CHECK(c.id == "R2 F1:1^r");
        CHECK(c.computed == "3 D01");
      }
    }
  CHECK(errata == 1);
}

TEST_CASE("automorphism tables, pullbacks and the projection formula") {
  auto& ws = testing_support::workspace();
  for (const auto& tag : ws.tags()) {
    for (const auto& c : automorphism_checks(ws, tag)) CHECK(c.verdict == Verdict::Pass);
    for (const auto& c : projection_formula_checks(ws, tag)) CHECK(c.verdict == Verdict::Pass);
    if (std::string(tag) != "M2")
      for (const auto& c : pullback_delta_checks(ws, tag)) CHECK(c.verdict == Verdict::Pass);
  }
}

TEST_CASE("lambda chains and vanishing products") {
  auto& ws = testing_support::workspace();
  auto rep = verify_lambda_identities(ws);
  CHECK(rep.chains.size() == 12);
  for (const auto& c : rep.chains) {
    CAPTURE(c.id);
    CHECK(c.error.empty());
    CHECK(c.replay_matches);
    CHECK(c.ring_holds);
    CHECK(c.source_vanishes);
  }
  CHECK(rep.vanishing.size() == 7);
  for (const auto& v : rep.vanishing) CHECK(v.verdict == Verdict::Pass);
  auto only = verify_lambda_identities(ws, "S2minus");
  for (const auto& c : only.chains) CHECK(c.space == "S2minus");
}
