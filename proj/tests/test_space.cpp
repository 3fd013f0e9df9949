#include "moduli/space.hpp"
#include "support.hpp"

#include <doctest.h>

#include <algorithm>
#include <filesystem>

using namespace moduli;

TEST_CASE("dictionaries load and pass the audit") {
  auto& ws = testing_support::workspace();
  for (const auto& tag : ws.tags()) {
    const auto& d = ws.space(tag);
    CHECK(d.group->order() > 0);
    for (const auto& b : d.boundary) CHECK(b.orbit_size * static_cast<std::size_t>(b.degree) * b.inertia == d.group->order());
  }
  CHECK_THROWS_AS(ws.space("R3"), std::invalid_argument);
}

TEST_CASE("calibration fixes the single normalization") {
  auto& ws = testing_support::workspace();
  CHECK(ws.kappa() == make_rational(1, 2));
  CHECK(ws.number("R2", ws.evaluate("R2", "d0pp*E_pp")) == make_rational(1, 4));
  CHECK(ws.number("M2", ws.named_class("M2", "pt")) == 1);
}

TEST_CASE("audit records the disputed column entry and ambiguous names") {
  auto& ws = testing_support::workspace();
  const auto& audit = ws.space("R2").audit;
  CHECK(std::any_of(audit.begin(), audit.end(), [](const AuditFinding& f) { return f.severity == "mismatch" && f.subject == "F11_r" != std::string::npos; }));
  const auto& plus = ws.space("S2plus").audit;
  CHECK(std::any_of(plus.begin(), plus.end(), [](const AuditFinding& f) { return f.severity == "flag"; }));
}

TEST_CASE("named classes and evaluation") {
  auto& ws = testing_support::workspace();
  CHECK(ws.named_class("R2", "1") == ws.ring().unit());
  CHECK(ws.named_class("R2", "D0'") == ws.named_class("R2", "d0p"));
  CHECK_THROWS_AS(ws.named_class("R2", "nothing"), std::invalid_argument);
  CHECK(ws.evaluate("R2", "d0p*d0p*d0p*d0p").is_zero());
  CHECK_THROWS_AS(ws.evaluate("R2", "d0p + d0p*d0pp"), std::invalid_argument);
  auto x = ws.evaluate("R2", "d0p*d0r");
  auto e = ws.express("R2", x, {"d0p", "E_pr", "E_pp"});
  CHECK(e.has_value());
}

TEST_CASE("preset path resolution") {
  auto& ws = testing_support::workspace();
  const auto a = resolve_preset_file(ws.presets_dir(), "K");
  CHECK(resolve_preset_file(ws.presets_dir(), "K.json") == a);
  CHECK(std::filesystem::equivalent(resolve_preset_file(ws.presets_dir(), "presets/K"), a));
  CHECK_THROWS_AS(resolve_preset_file(ws.presets_dir(), "no_such_file"), std::invalid_argument);
}

TEST_CASE("lambda class pulls back to the boundary formula") {
  auto& ws = testing_support::workspace();
  for (const auto& tag : {"R2", "S2plus", "S2minus"}) {
    const auto& d = ws.space(tag);
    CHECK(ws.named_class(tag, d.lambda_alias) == ws.named_class("M2", "lambda"));
  }
}
