#include "moduli/moduli_c.h"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <string>

namespace {

struct Engine {
  moduli_engine* e = nullptr;
  ~Engine() { moduli_engine_free(e); }
};

int finish(moduli_engine* e, int code, char* out) {
  if (out) {
    std::fputs(out, stdout);
    moduli_free_string(out);
  }
  if (code == MODULI_INPUT_ERROR || code == MODULI_INTERNAL_ERROR) {
    std::cerr << "error: " << moduli_last_error(e) << "\n";
    return code == MODULI_INTERNAL_ERROR ? 3 : 2;
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Chow rings of genus-2 Prym and spin moduli spaces as invariant subrings of A*(M0,6)"};
  app.require_subcommand(1);
  bool json = false;
  std::string presets;
  app.add_flag("--json", json, "structured output with exact rationals as strings");
  app.add_option("--presets", presets, "preset directory (default: MODULI_PRESETS, then the built-in one)");

  int n = 6;
  bool betti = false, relations = false;
  auto* keel = app.add_subcommand("keel", "graded dimensions and relations of A*(M0,n)");
  keel->add_option("--n", n, "number of marked points")->check(CLI::Range(4, 7));
  keel->add_flag("--betti", betti, "print the graded dimensions only");
  keel->add_flag("--relations", relations, "list the four-point relations");

  std::string space;
  auto* inv = app.add_subcommand("invariants", "invariant subring dimensions and boundary classes");
  inv->add_option("--space", space, "R2, S2plus, S2minus or M2")->required();

  std::string presentation;
  auto* verify = app.add_subcommand("verify", "check a presentation against the invariant ring");
  verify->add_option("--space", space)->required();
  verify->add_option("--presentation", presentation, "presentation file or preset name")->required();

  std::string map, cls;
  auto* push = app.add_subcommand("push", "pushforward along fR fplus fminus fM2 piR piplus piminus h0p h0alpha");
  push->add_option("--map", map)->required();
  push->add_option("--class", cls, "polynomial in the source classes")->required();

  auto* inter = app.add_subcommand("intersections", "intersection table, rank, kernel and linear relation");
  inter->add_option("--space", space)->required();

  auto* lambda = app.add_subcommand("lambda-check", "lambda-class pushforward chains and vanishings");
  lambda->add_option("--space", space, "omit for all spaces");

  std::string tree;
  auto* strata = app.add_subcommand("strata", "automorphism numbers and pushforward coefficients");
  strata->add_option("--space", space)->required();
  strata->add_option("--tree", tree, "dual tree such as \"(A A -1)(B B B B -1)\"");

  int genus = 2;
  auto* theta = app.add_subcommand("theta", "2-torsion and theta characteristic census");
  theta->add_option("--genus", genus)->check(CLI::Range(1, 8));

  auto* all = app.add_subcommand("report-all", "full reproduction report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  Engine eng;
  if (moduli_engine_new(presets.empty() ? nullptr : presets.c_str(), &eng.e) != MODULI_OK) {
    std::cerr << "error: cannot initialize the engine\n";
    return 2;
  }
  moduli_engine* e = eng.e;
  const int fmt = json ? 1 : 0;
  char* out = nullptr;
  int rc = MODULI_OK;

  if (*keel) {
    if (betti && !relations && !json) {
      rc = moduli_keel_dims(e, n, &out);
      if (rc == MODULI_OK) {
        std::printf("%s\n", out);
        moduli_free_string(out);
        return 0;
      }
      return finish(e, rc, nullptr);
    }
    rc = moduli_report_keel(e, n, relations ? 1 : 0, fmt, &out);
  } else if (*inv) {
    rc = moduli_report_invariants(e, space.c_str(), fmt, &out);
  } else if (*verify) {
    rc = moduli_report_verify(e, space.c_str(), presentation.c_str(), fmt, &out);
  } else if (*push) {
    rc = moduli_report_push(e, map.c_str(), cls.c_str(), fmt, &out);
  } else if (*inter) {
    rc = moduli_report_intersections(e, space.c_str(), fmt, &out);
  } else if (*lambda) {
    rc = moduli_report_lambda(e, space.c_str(), fmt, &out);
  } else if (*strata) {
    rc = moduli_report_strata(e, space.c_str(), tree.empty() ? nullptr : tree.c_str(), fmt, &out);
  } else if (*theta) {
    rc = moduli_report_theta(e, genus, fmt, &out);
  } else if (*all) {
    rc = moduli_report_all(e, fmt, &out);
  }
  return finish(e, rc, out);
}
