#ifndef MODULI_C_H
#define MODULI_C_H

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes; they double as CLI exit codes. */
#define MODULI_OK 0
#define MODULI_VERIFY_FAILED 1
#define MODULI_INPUT_ERROR 2
#define MODULI_INTERNAL_ERROR 3

typedef struct moduli_engine moduli_engine;

/* presets_dir may be NULL: MODULI_PRESETS, then the built-in location. */
int moduli_engine_new(const char* presets_dir, moduli_engine** out);
void moduli_engine_free(moduli_engine* engine);
/* Message of the last failed call on this engine; empty string when none. */
const char* moduli_last_error(const moduli_engine* engine);

/* Strings returned through char** are owned by the caller. */
void moduli_free_string(char* s);

/* Space-separated graded dimensions, e.g. "1 16 16 1". */
int moduli_keel_dims(moduli_engine* engine, int n, char** out);
int moduli_invariant_dims(moduli_engine* engine, const char* space, char** out);

/* *holds = 1 when the polynomial in class names vanishes; residue describes it otherwise. */
int moduli_check_relation(moduli_engine* engine, const char* space, const char* expr, int* holds, char** residue);

/* Reports. format: 0 markdown, 1 JSON. Return MODULI_VERIFY_FAILED when a row fails. */
int moduli_report_keel(moduli_engine* engine, int n, int relations, int format, char** out);
int moduli_report_invariants(moduli_engine* engine, const char* space, int format, char** out);
int moduli_report_verify(moduli_engine* engine, const char* space, const char* presentation, int format, char** out);
int moduli_report_push(moduli_engine* engine, const char* map, const char* expr, int format, char** out);
int moduli_report_intersections(moduli_engine* engine, const char* space, int format, char** out);
int moduli_report_lambda(moduli_engine* engine, const char* space, int format, char** out);
/* tree may be NULL */
int moduli_report_strata(moduli_engine* engine, const char* space, const char* tree, int format, char** out);
int moduli_report_theta(moduli_engine* engine, int genus, int format, char** out);
int moduli_report_all(moduli_engine* engine, int format, char** out);

#ifdef __cplusplus
}
#endif

#endif
