#include "moduli/moduli_c.h"

#include <doctest.h>

#include <string>

namespace {
struct Engine {
  moduli_engine* e = nullptr;
  Engine() { REQUIRE(moduli_engine_new(MODULI_TEST_PRESETS, &e) == MODULI_OK); }
  ~Engine() { moduli_engine_free(e); }
};
std::string take(char* s) {
  std::string r = s ? s : "";
  moduli_free_string(s);
  return r;
}
}  // namespace

TEST_CASE("dimensions through the C interface") {
  Engine eng;
  char* out = nullptr;
  REQUIRE(moduli_keel_dims(eng.e, 6, &out) == MODULI_OK);
  CHECK(take(out) == "1 16 16 1");
  REQUIRE(moduli_keel_dims(eng.e, 5, &out) == MODULI_OK);
  CHECK(take(out) == "1 5 1");
  REQUIRE(moduli_invariant_dims(eng.e, "M2", &out) == MODULI_OK);
  CHECK(take(out) == "1 2 2 1");
}

TEST_CASE("error codes and messages") {
  Engine eng;
  char* out = nullptr;
  CHECK(moduli_invariant_dims(eng.e, "R3", &out) == MODULI_INPUT_ERROR);
  CHECK(std::string(moduli_last_error(eng.e)).find("R3") != std::string::npos);
  CHECK(moduli_keel_dims(eng.e, 2, &out) == MODULI_INPUT_ERROR);
  CHECK(moduli_invariant_dims(nullptr, "R2", &out) == MODULI_INPUT_ERROR);
  CHECK(moduli_report_theta(eng.e, 0, 0, &out) == MODULI_INPUT_ERROR);
  CHECK(moduli_report_verify(eng.e, "R2", "K", 0, &out) == MODULI_INPUT_ERROR);
  CHECK(moduli_engine_new(nullptr, nullptr) == MODULI_INPUT_ERROR);
}

TEST_CASE("relation checks") {
  Engine eng;
  int holds = -1;
  char* res = nullptr;
  REQUIRE(moduli_check_relation(eng.e, "R2", "d1*d11", &holds, &res) == MODULI_OK);
  CHECK(holds == 1);
  take(res);
  REQUIRE(moduli_check_relation(eng.e, "R2", "d0p*d0pp", &holds, &res) == MODULI_OK);
  CHECK(holds == 0);
  CHECK_FALSE(take(res).empty());
  CHECK(moduli_check_relation(eng.e, "R2", "d0p +", &holds, &res) == MODULI_INPUT_ERROR);
}

TEST_CASE("reports") {
  Engine eng;
  char* out = nullptr;
  CHECK(moduli_report_verify(eng.e, "S2minus", "K", 0, &out) == MODULI_OK);
  CHECK(take(out).find("isomorphic") != std::string::npos);
  CHECK(moduli_report_theta(eng.e, 3, 1, &out) == MODULI_OK);
  CHECK(take(out).find("\"summary\"") != std::string::npos);
  CHECK(moduli_report_push(eng.e, "fR", "[5,6]", 0, &out) == MODULI_OK);
  CHECK(take(out).find("8*d0p") != std::string::npos);
  CHECK(moduli_report_strata(eng.e, "R2", "(A A -1)(B B B B -1)", 0, &out) == MODULI_OK);
  CHECK(take(out).find("automorphisms") != std::string::npos);
}
