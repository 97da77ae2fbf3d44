#ifndef HORN_AMOEBA_H
#define HORN_AMOEBA_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Classification of a point of `R^n` with respect to the amoeba.
typedef enum HaMembership {
  HA_MEMBERSHIP_OUTSIDE = 0,
  HA_MEMBERSHIP_INSIDE = 1,
  HA_MEMBERSHIP_UNKNOWN = 2,
} HaMembership;

// Result of a call.
typedef enum HaStatus {
  HA_STATUS_OK = 0,
  HA_STATUS_NULL_POINTER = 1,
  HA_STATUS_INVALID_UTF8 = 2,
  HA_STATUS_PARSE = 3,
  HA_STATUS_INVALID = 4,
  HA_STATUS_DIMENSION_MISMATCH = 5,
  HA_STATUS_UNSUPPORTED = 6,
  HA_STATUS_SINGULAR = 7,
  HA_STATUS_NUMERICAL = 8,
  HA_STATUS_OUT_OF_RANGE = 9,
  HA_STATUS_PANIC = 10,
} HaStatus;

typedef enum HaVerdict {
  HA_VERDICT_SOLID = 0,
  HA_VERDICT_NOT_SOLID = 1,
  HA_VERDICT_INCONCLUSIVE = 2,
} HaVerdict;

// Result of a complement census.
typedef struct HaCensus HaCensus;

// Validated Ore-Sato coefficient.
typedef struct HaCoefficient HaCoefficient;

// Exact Laurent polynomial with rational coefficients.
typedef struct HaPoly HaPoly;

// Horn system of equations.
typedef struct HaSystem HaSystem;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or null after a
// successful one. Valid until the next call on the same thread.
const char *ha_last_error(void);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not have been freed.
void ha_string_free(char *s);

// Library version as a static string.
const char *ha_version(void);

// Parses a polynomial in `x1, x2, ...` with at least `min_vars` variables.
//
// # Safety
// `text` must be a valid C string and `out` writable.
enum HaStatus ha_poly_parse(const char *text, size_t min_vars, struct HaPoly **out);

// # Safety
// `p` must be a live handle or null.
void ha_poly_free(struct HaPoly *p);

// Number of variables, or 0 for a null handle.
//
// # Safety
// `p` must be a live handle or null.
size_t ha_poly_nvars(const struct HaPoly *p);

// Writes the polynomial in the parser's syntax.
//
// # Safety
// `p` must be a live handle and `out` writable.
enum HaStatus ha_poly_to_string(const struct HaPoly *p, char **out);

// Sets `*equal` to whether two polynomials coincide exactly.
//
// # Safety
// Handles must be live and `equal` writable.
enum HaStatus ha_poly_equal(const struct HaPoly *a, const struct HaPoly *b, bool *equal);

// Parses and validates an Ore-Sato coefficient from its JSON form.
//
// # Safety
// `json` must be a valid C string and `out` writable.
enum HaStatus ha_coefficient_from_json(const char *json, struct HaCoefficient **out);

// # Safety
// `c` must be a live handle or null.
void ha_coefficient_free(struct HaCoefficient *c);

// Builds the Horn system of a coefficient.
//
// # Safety
// `c` must be a live handle and `out` writable.
enum HaStatus ha_coefficient_horn_system(const struct HaCoefficient *c, struct HaSystem **out);

// Writes the support fan (cones, selections and fan verdict) as JSON.
//
// # Safety
// `c` must be a live handle and `out` writable.
enum HaStatus ha_coefficient_fan_json(const struct HaCoefficient *c, char **out);

// Parses a Horn system from its JSON form.
//
// # Safety
// `json` must be a valid C string and `out` writable.
enum HaStatus ha_system_from_json(const char *json, struct HaSystem **out);

// # Safety
// `s` must be a live handle or null.
void ha_system_free(struct HaSystem *s);

// # Safety
// `s` must be a live handle and `out` writable.
enum HaStatus ha_system_to_json(const struct HaSystem *s, char **out);

// Sets `*compatible` to whether the system's operators satisfy the
// compatibility conditions.
//
// # Safety
// `s` must be a live handle and `compatible` writable.
enum HaStatus ha_system_is_compatible(const struct HaSystem *s, bool *compatible);

// Resultant of the principal symbols, with the `x` variables renamed
// `x1..xn`.
//
// # Safety
// `s` must be a live handle and `out` writable.
enum HaStatus ha_system_symbol_resultant(const struct HaSystem *s, struct HaPoly **out);

// Admissible supports as a JSON array. `gamma` holds `n` rationals as
// strings, or is null for zero.
//
// # Safety
// `s` must be a live handle; `gamma` null or an array of `n` C strings.
enum HaStatus ha_system_supports_json(const struct HaSystem *s,
                                      const char *const *gamma,
                                      int64_t window,
                                      char **out);

// Classifies the point `t` of `R^n`. When outside, the order of the
// complement component is written to `order` if `order_cap >= n`.
//
// # Safety
// `p` must be live, `t` must hold `nvars` values, `state` writable and
// `order` null or holding `order_cap` slots.
enum HaStatus ha_membership(const struct HaPoly *p,
                            const double *t,
                            uint64_t seed,
                            enum HaMembership *state,
                            int64_t *order,
                            size_t order_cap);

// Runs a complement census on a regular grid.
//
// `lo` and `hi` hold `nvars` bounds each, or are both null for the default
// box. A `resolution` of 0 picks the default; `n_circle` of 0 keeps the
// default sampling; `max_unknown` below 0 keeps the default threshold.
//
// # Safety
// `p` must be live, `lo`/`hi` null or holding `nvars` values, `out`
// writable.
enum HaStatus ha_census_run(const struct HaPoly *p,
                            const double *lo,
                            const double *hi,
                            size_t resolution,
                            size_t n_circle,
                            double max_unknown,
                            uint64_t seed,
                            struct HaCensus **out);

// # Safety
// `c` must be a live handle or null.
void ha_census_free(struct HaCensus *c);

// Number of complement components found, or 0 for a null handle.
//
// # Safety
// `c` must be a live handle or null.
size_t ha_census_component_count(const struct HaCensus *c);

// # Safety
// `c` must be a live handle and `verdict` writable.
enum HaStatus ha_census_verdict(const struct HaCensus *c, enum HaVerdict *verdict);

// Copies the order of component `index` into `order`, which must have
// room for `nvars` entries.
//
// # Safety
// `c` must be live and `order` hold `order_cap` slots.
enum HaStatus ha_census_order(const struct HaCensus *c,
                              size_t index,
                              int64_t *order,
                              size_t order_cap);

// Full census report as JSON.
//
// # Safety
// `c` must be a live handle and `out` writable.
enum HaStatus ha_census_to_json(const struct HaCensus *c, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HORN_AMOEBA_H */
