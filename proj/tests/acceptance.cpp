#include "moduli/moduli_c.h"
#include "moduli/presentations.hpp"
#include "moduli/pushpull.hpp"
#include "moduli/report.hpp"
#include "moduli/theta.hpp"
#include "support.hpp"

#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

using namespace moduli;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void criterion(int id, const std::string& title, const std::function<Outcome()>& body) {
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  if (!o.pass) ++failures;
  std::printf("%s %2d %s%s%s\n", o.pass ? "PASS" : "FAIL", id, title.c_str(), o.detail.empty() ? "" : " -- ", o.detail.c_str());
  std::fflush(stdout);
}

std::string dims(const std::vector<std::size_t>& d) {
  std::string s;
  for (auto x : d) s += (s.empty() ? "" : " ") + std::to_string(x);
  return "[" + s + "]";
}

}  // namespace

int main() {
  Workspace& ws = testing_support::workspace();

  criterion(1, "Keel ring dimensions for n = 4, 5, 6 with a modular-rank oracle", [&] {
    const std::vector<std::vector<std::size_t>> want = {{1, 1}, {1, 5, 1}, {1, 16, 16, 1}};
    std::string detail;
    bool ok = true;
    for (int n = 4; n <= 6; ++n) {
      auto d = n == 6 ? ws.ring().dims() : KeelRing(n).dims();
      auto o = testing_support::keel_dims_oracle(n);
      ok = ok && d == want[static_cast<std::size_t>(n - 4)] && o == d;
      detail += "n=" + std::to_string(n) + " " + dims(d) + " ";
    }
    return Outcome{ok, detail};
  });

  criterion(2, "invariant dimensions of R2, S2+, S2-, M2", [&] {
    const std::pair<const char*, std::vector<std::size_t>> want[] = {
        {"R2", {1, 4, 4, 1}}, {"S2plus", {1, 3, 3, 1}}, {"S2minus", {1, 3, 3, 1}}, {"M2", {1, 2, 2, 1}}};
    bool ok = true;
    std::string detail;
    for (const auto& [tag, d] : want) {
      auto got = ws.invariants(tag).dims();
      ok = ok && got == d;
      detail += std::string(tag) + " " + dims(got) + " ";
    }
    return Outcome{ok, detail};
  });

  criterion(3, "linear relations among boundary divisors", [&] {
    auto r = derive_linear_relation(ws, "R2");
    auto p = derive_linear_relation(ws, "S2plus");
    auto m = derive_linear_relation(ws, "S2minus");
    const bool ok = r.matches && r.span == parse_polynomial("d0p + 6*d0pp - 3*d0r + 12*d1 - 8*d11") && p.matches &&
                    p.span == parse_polynomial("3*a0p - 4*b0p - 8*a1p + 72*b1p") && m.span_rank == 0 && r.vanishes && p.vanishes;
    return Outcome{ok, r.span.str() + "; " + p.span.str() + "; S2minus none"};
  });

  criterion(4, "intersection tables, ranks and kernels after one calibration", [&] {
    bool ok = ws.number("R2", ws.evaluate("R2", "d0pp*E_pp")) == make_rational(1, 4);
    std::string detail = "kappa " + to_string(ws.kappa()) + ";";
    const std::tuple<const char*, std::size_t, std::size_t, std::size_t> want[] = {
        {"R2", 9, 5, 4}, {"S2plus", 6, 4, 3}, {"S2minus", 5, 3, 3}};
    for (const auto& [tag, rows, cols, rk] : want) {
      auto t = intersection_table(ws, tag);
      ok = ok && t.entries_match && t.rows.size() == rows && t.columns.size() == cols && t.rank == rk && t.kernel_matches;
      detail += std::string(" ") + tag + " rank " + std::to_string(t.rank);
    }
    return Outcome{ok, detail};
  });

  criterion(5, "base intersection numbers on M2", [&] {
    bool ok = true;
    std::string detail;
    auto checks = mumford_base_numbers(ws);
    const char* want[] = {"-1/4", "1/8", "1/4", "-1/48"};
    ok = checks.size() == 4;
    for (std::size_t i = 0; i < checks.size() && ok; ++i) {
      ok = ok && checks[i].verdict == Verdict::Pass && checks[i].computed == want[i];
      detail += checks[i].computed + " ";
    }
    return Outcome{ok, detail};
  });

  criterion(6, "presentations I, J, K: isomorphic, independent, every relation holds", [&] {
    bool ok = true;
    std::string detail;
    for (const char* tag : {"R2", "S2plus", "S2minus"}) {
      auto p = load_presentation(ws.presets_dir(), default_presentation(tag));
      auto r = verify_presentation(ws, tag, p);
      bool each = true;
      for (const auto& g : p.generators) each = each && check_relation(ws, tag, g).holds;
      ok = ok && r.isomorphic && r.independent && each && r.kernel_matches_linear_relation;
      detail += p.name + " " + r.verdict + " hilbert " + dims(r.hilbert);
      if (!r.independent) {
        detail += " redundant:";
        for (auto i : r.redundant) detail += " " + p.generators[i].str();
      }
      detail += "; ";
    }
    return Outcome{ok, detail};
  });

  criterion(7, "lambda-squared vanishings and lambda chains", [&] {
    auto rep = verify_lambda_identities(ws);
    bool ok = rep.vanishing.size() == 7;
    for (const auto& v : rep.vanishing) ok = ok && v.verdict == Verdict::Pass;
    std::size_t chains = 0;
    for (const auto& c : rep.chains) chains += c.error.empty() && c.replay_matches && c.ring_holds && c.source_vanishes;
    ok = ok && chains == rep.chains.size();
    return Outcome{ok, std::to_string(rep.vanishing.size()) + " vanishings, " + std::to_string(chains) + "/" +
                           std::to_string(rep.chains.size()) + " chains"};
  });

  criterion(8, "relations pushed from M0,5", [&] {
    auto rels = derive_m05_relations(ws);
    bool ok = rels.size() == 3;
    std::string detail;
    for (const auto& r : rels) {
      ok = ok && r.matches && r.vanishes;
      detail += r.normalized.str() + "; ";
    }
    for (const char* h : {"h0p", "h0alpha"})
      for (const auto& c : hmap_entry_checks(ws, load_hmap(ws, h))) ok = ok && c.verdict == Verdict::Pass;
    return Outcome{ok, detail};
  });

  criterion(9, "relations on M2 reported without assumption", [&] {
    auto v = m2_relation_verdicts(ws);
    bool ok = v.size() == 3 && v[0].holds;
    std::string detail;
    for (const auto& x : v) detail += x.expr + (x.holds ? " holds; " : " fails; ");
    return Outcome{ok, detail};
  });

  criterion(10, "automorphism numbers and pushforward coefficients", [&] {
    bool ok = true;
    std::size_t n = 0;
    std::string detail;
    for (const auto& tag : ws.tags()) {
      for (const auto& c : automorphism_checks(ws, tag)) {
        ++n;
        ok = ok && c.verdict == Verdict::Pass;
      }
      if (tag == "M2") continue;
      for (const auto& c : pi_pushforward_checks(ws, tag)) {
        ++n;
        if (c.verdict != Verdict::Pass) {
          ok = false;
          detail += c.id + " tabled " + c.expected + ", computed " + c.computed + " (" + verdict_str(c.verdict) + "); ";
        }
      }
    }
    return Outcome{ok, std::to_string(n) + " entries; " + detail};
  });

  criterion(11, "theta characteristics and 2-torsion for g = 1..6", [&] {
    bool ok = true;
    std::string detail;
    for (int g = 1; g <= 6; ++g) {
      auto r = verify_bijections(g);
      ok = ok && r.all_pass;
      if (g == 2) ok = ok && r.prym_total == 15 && r.spin_even == 10 && r.spin_odd == 6;
      detail += std::to_string(r.spin_even) + "/" + std::to_string(r.spin_odd) + " ";
    }
    return Outcome{ok, detail};
  });

  criterion(12, "report-all exits 0 and is stable across runs", [&] {
    moduli_engine* a = nullptr;
    moduli_engine* b = nullptr;
    if (moduli_engine_new(MODULI_TEST_PRESETS, &a) != MODULI_OK || moduli_engine_new(MODULI_TEST_PRESETS, &b) != MODULI_OK)
      return Outcome{false, "engine"};
    char* x = nullptr;
    char* y = nullptr;
    const int ra = moduli_report_all(a, 0, &x);
    const int rb = moduli_report_all(b, 0, &y);
    const bool same = x && y && std::string(x) == std::string(y);
    std::string detail = "exit " + std::to_string(ra) + ", " + (same ? "identical" : "different") + " output";
    if (x) detail += ", " + std::to_string(std::string(x).size()) + " bytes";
    moduli_free_string(x);
    moduli_free_string(y);
    moduli_engine_free(a);
    moduli_engine_free(b);
    return Outcome{ra == MODULI_OK && rb == MODULI_OK && same, detail};
  });

  std::printf("%d of 12 criteria failed\n", failures);
  return failures ? 1 : 0;
}
