#include "moduli/moduli_c.h"

#include "moduli/presentations.hpp"
#include "moduli/report.hpp"

#include <cstdlib>
#include <cstring>
#include <functional>
#include <memory>
#include <new>
#include <stdexcept>

struct moduli_engine {
  std::unique_ptr<moduli::Workspace> ws;
  std::string error;
};

namespace {

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

std::string str(const char* s) { return s ? std::string(s) : std::string(); }

int guarded(moduli_engine* e, const std::function<int()>& body) {
  if (!e) return MODULI_INPUT_ERROR;
  e->error.clear();
  try {
    return body();
  } catch (const std::invalid_argument& x) {
    e->error = x.what();
    return MODULI_INPUT_ERROR;
  } catch (const std::out_of_range& x) {
    e->error = x.what();
    return MODULI_INPUT_ERROR;
  } catch (const std::runtime_error& x) {
    e->error = x.what();
    return MODULI_INPUT_ERROR;
  } catch (const std::exception& x) {
    e->error = x.what();
    return MODULI_INTERNAL_ERROR;
  } catch (...) {
    e->error = "unknown failure";
    return MODULI_INTERNAL_ERROR;
  }
}

int emit(const moduli::Report& r, int format, char** out) {
  if (!out) throw std::invalid_argument("null output pointer");
  *out = dup(format == 1 ? r.json() : r.markdown());
  return r.exit_code() ? MODULI_VERIFY_FAILED : MODULI_OK;
}

std::string dims_str(const std::vector<std::size_t>& d) {
  std::string s;
  for (std::size_t i = 0; i < d.size(); ++i) s += (i ? " " : "") + std::to_string(d[i]);
  return s;
}

void need(const char* s, const char* what) {
  if (!s || !*s) throw std::invalid_argument(std::string("missing ") + what);
}

}  // namespace

extern "C" {

int moduli_engine_new(const char* presets_dir, moduli_engine** out) {
  if (!out) return MODULI_INPUT_ERROR;
  *out = nullptr;
  try {
    auto e = std::make_unique<moduli_engine>();
    e->ws = std::make_unique<moduli::Workspace>(str(presets_dir));
    *out = e.release();
    return MODULI_OK;
  } catch (const std::invalid_argument&) {
    return MODULI_INPUT_ERROR;
  } catch (...) {
    return MODULI_INTERNAL_ERROR;
  }
}

void moduli_engine_free(moduli_engine* engine) { delete engine; }

const char* moduli_last_error(const moduli_engine* engine) { return engine ? engine->error.c_str() : "null engine"; }

void moduli_free_string(char* s) { std::free(s); }

int moduli_keel_dims(moduli_engine* engine, int n, char** out) {
  return guarded(engine, [&] {
    if (!out) throw std::invalid_argument("null output pointer");
    *out = dup(dims_str(n == 6 ? engine->ws->ring().dims() : moduli::KeelRing(n).dims()));
    return MODULI_OK;
  });
}

int moduli_invariant_dims(moduli_engine* engine, const char* space, char** out) {
  return guarded(engine, [&] {
    need(space, "space");
    if (!out) throw std::invalid_argument("null output pointer");
    *out = dup(dims_str(engine->ws->invariants(space).dims()));
    return MODULI_OK;
  });
}

int moduli_check_relation(moduli_engine* engine, const char* space, const char* expr, int* holds, char** residue) {
  return guarded(engine, [&] {
    need(space, "space");
    need(expr, "expression");
    auto r = moduli::check_relation(*engine->ws, space, std::string(expr));
    if (holds) *holds = r.holds ? 1 : 0;
    if (residue) *residue = dup(r.residue);
    return MODULI_OK;
  });
}

int moduli_report_keel(moduli_engine* engine, int n, int relations, int format, char** out) {
  return guarded(engine, [&] { return emit(moduli::keel_report(n, relations != 0), format, out); });
}

int moduli_report_invariants(moduli_engine* engine, const char* space, int format, char** out) {
  return guarded(engine, [&] {
    need(space, "space");
    return emit(moduli::invariants_report(*engine->ws, space), format, out);
  });
}

int moduli_report_verify(moduli_engine* engine, const char* space, const char* presentation, int format, char** out) {
  return guarded(engine, [&] {
    need(space, "space");
    need(presentation, "presentation");
    return emit(moduli::verify_report(*engine->ws, space, presentation), format, out);
  });
}

int moduli_report_push(moduli_engine* engine, const char* map, const char* expr, int format, char** out) {
  return guarded(engine, [&] {
    need(map, "map");
    need(expr, "class");
    return emit(moduli::push_report(*engine->ws, map, expr), format, out);
  });
}

int moduli_report_intersections(moduli_engine* engine, const char* space, int format, char** out) {
  return guarded(engine, [&] {
    need(space, "space");
    return emit(moduli::intersections_report(*engine->ws, space), format, out);
  });
}

int moduli_report_lambda(moduli_engine* engine, const char* space, int format, char** out) {
  return guarded(engine, [&] {
    const std::string tag = str(space);
    if (!tag.empty() && tag != "all") engine->ws->space(tag);
    return emit(moduli::lambda_report(*engine->ws, tag), format, out);
  });
}

int moduli_report_strata(moduli_engine* engine, const char* space, const char* tree, int format, char** out) {
  return guarded(engine, [&] {
    need(space, "space");
    std::optional<std::string> t;
    if (tree && *tree) t = tree;
    return emit(moduli::strata_report(*engine->ws, space, t), format, out);
  });
}

int moduli_report_theta(moduli_engine* engine, int genus, int format, char** out) {
  return guarded(engine, [&] { return emit(moduli::theta_report(genus), format, out); });
}

int moduli_report_all(moduli_engine* engine, int format, char** out) {
  return guarded(engine, [&] { return emit(moduli::full_report(*engine->ws), format, out); });
}

}  // extern "C"
