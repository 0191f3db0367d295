#ifndef DGLA_FFI_H
#define DGLA_FFI_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result of a call; success is zero.
typedef enum DglaStatus {
  DGLA_STATUS_OK = 0,
  DGLA_STATUS_NULL_ARGUMENT = 1,
  DGLA_STATUS_INVALID_UTF8 = 2,
  DGLA_STATUS_PARSE = 3,
  DGLA_STATUS_UNKNOWN_FIXTURE = 4,
  // Input is well formed but violates a mathematical precondition.
  DGLA_STATUS_DOMAIN = 5,
  // Degree window or budget exhausted.
  DGLA_STATUS_LIMIT = 6,
  DGLA_STATUS_INTERNAL = 7,
  DGLA_STATUS_PANIC = 8,
} DglaStatus;

// Opaque DGLA.
typedef struct DglaAlgebra DglaAlgebra;

// Opaque local Artinian ring.
typedef struct DglaRing DglaRing;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or null. Free with
// `dgla_string_free`.
char *dgla_last_error(void);

// # Safety
// `s` must come from this library and not be freed twice.
void dgla_string_free(char *s);

// Static version string; do not free.
const char *dgla_version(void);

// Builtin by name, e.g. `"QOBS"` or `"HW2_d"`.
//
// # Safety
// `name` is a NUL-terminated string; `out` is writable.
enum DglaStatus dgla_fixture(const char *name, struct DglaAlgebra **out);

// # Safety
// `json` is a NUL-terminated string; `out` is writable.
enum DglaStatus dgla_from_json(const char *json, struct DglaAlgebra **out);

// # Safety
// `l` is a live handle; `out` is writable.
enum DglaStatus dgla_to_json(const struct DglaAlgebra *l, char **out);

// # Safety
// `l` comes from this library and is not used afterwards.
void dgla_free(struct DglaAlgebra *l);

// Ring from the short syntax (`"eps"`, `"t^3"`, `"x^2,xy,y^2"`) or, when
// the text starts with `{`, from its JSON form.
//
// # Safety
// `spec` is a NUL-terminated string; `out` is writable.
enum DglaStatus dgla_ring_parse(const char *spec, struct DglaRing **out);

// # Safety
// `a` is a live handle; `out` is writable.
enum DglaStatus dgla_ring_to_json(const struct DglaRing *a, char **out);

// # Safety
// `a` comes from this library and is not used afterwards.
void dgla_ring_free(struct DglaRing *a);

// Exhaustive axiom check: `{"passed", "checked", "violations": [{"identity", "tuple"}]}`.
//
// # Safety
// `l` is a live handle; `out` is writable.
enum DglaStatus dgla_validate(const struct DglaAlgebra *l, char **out);

// Writes whether `element` (element JSON) solves the Maurer–Cartan equation over `a`.
//
// # Safety
// Handles are live, `element` is a NUL-terminated string, `out` is writable.
enum DglaStatus dgla_mc_check(const struct DglaAlgebra *l,
                              const struct DglaRing *a,
                              const char *element,
                              bool *out);

// Gauge equivalence of two Maurer–Cartan elements. The JSON carries
// `"verdict"` (`"equivalent"`, `"not_equivalent"` or `"unknown"`),
// `"complete"`, and the witness, certificate or diagnostic.
//
// # Safety
// Handles are live, `x` and `y` are NUL-terminated strings, `out` is writable.
enum DglaStatus dgla_gauge_equivalent(const struct DglaAlgebra *l,
                                      const struct DglaRing *a,
                                      const char *x,
                                      const char *y,
                                      size_t budget,
                                      char **out);

// Kuranishi polynomials truncated above `order`.
//
// # Safety
// `l` is a live handle; `out` is writable.
enum DglaStatus dgla_kuranishi_polynomials(const struct DglaAlgebra *l, size_t order, char **out);

// Runs a workbench command. `argv_json` is a JSON array of the command-line
// arguments without the program name, e.g.
// `["gauge","equiv","--dgla","builtin:D2","--x","0","--y","0"]`.
// The run report goes to `out` and the CLI exit code to `exit_code`.
//
// # Safety
// `argv_json` is a NUL-terminated string; `out` and `exit_code` are writable.
enum DglaStatus dgla_run(const char *argv_json, char **out, int32_t *exit_code);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DGLA_FFI_H */
