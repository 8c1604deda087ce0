#ifndef SPREADLAB_H
#define SPREADLAB_H

#include <stdbool.h>
#include <stdint.h>
#include <stddef.h>

/**
 * Result codes shared by every fallible function.
 */
typedef enum {
  SL_STATUS_OK = 0,
  SL_STATUS_NULL_POINTER = 1,
  SL_STATUS_INVALID_UTF8 = 2,
  SL_STATUS_INVALID_PARAMETER = 3,
  SL_STATUS_BUDGET_EXCEEDED = 4,
  SL_STATUS_NOT_PLANAR = 5,
  SL_STATUS_NOT_INJECTIVE = 6,
  SL_STATUS_VERIFICATION_FAILED = 7,
  SL_STATUS_UNVERIFIED_SPREAD = 8,
  SL_STATUS_INCONSISTENT = 9,
  SL_STATUS_UNKNOWN_EXPERIMENT = 10,
  SL_STATUS_IO = 11,
  SL_STATUS_JSON = 12,
  SL_STATUS_PANIC = 13,
  SL_STATUS_OTHER = 14,
} SlStatus;

/**
 * Which subfield a polynomial or element lives in.
 */
typedef enum {
  SL_FIELD_LEVEL_PRIME = 0,
  SL_FIELD_LEVEL_BASE = 1,
  SL_FIELD_LEVEL_MID = 2,
  SL_FIELD_LEVEL_AMBIENT = 3,
} SlFieldLevel;

/**
 * Field tower handle.
 */
typedef struct SlField SlField;

/**
 * Spread handle.
 */
typedef struct SlSpread SlSpread;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. The pointer stays
 * valid until the next failing call on the same thread.
 */
const char *sl_last_error(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void sl_string_free(char *s);

/**
 * Builds the tower F_p ⊂ F_q ⊂ F_{q^n} ⊂ F_{q^2n} with q = p^e.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
SlStatus sl_field_new(uint64_t p, uint32_t e, uint32_t n, SlField **out);

/**
 * # Safety
 * `f` must be null or a live handle from [`sl_field_new`].
 */
void sl_field_free(SlField *f);

/**
 * Order of the ambient field F_{q^2n}, or 0 for a null handle.
 *
 * # Safety
 * `f` must be null or a live handle.
 */
uint64_t sl_field_order(const SlField *f);

/**
 * Size of the given subfield, or 0 for a null handle.
 *
 * # Safety
 * `f` must be null or a live handle.
 */
uint64_t sl_field_size(const SlField *f, SlFieldLevel l);

/**
 * Field tower description as a JSON string.
 *
 * # Safety
 * `f` must be a live handle and `out` a valid pointer.
 */
SlStatus sl_field_to_json(const SlField *f, char **out);

/**
 * a + b.
 *
 * # Safety
 * `f` must be a live handle and `out` a valid pointer.
 */
SlStatus sl_field_add(const SlField *f, uint32_t a, uint32_t b, uint32_t *out);

/**
 * a * b.
 *
 * # Safety
 * `f` must be a live handle and `out` a valid pointer.
 */
SlStatus sl_field_mul(const SlField *f, uint32_t a, uint32_t b, uint32_t *out);

/**
 * a^k.
 *
 * # Safety
 * `f` must be a live handle and `out` a valid pointer.
 */
SlStatus sl_field_pow(const SlField *f, uint32_t a, uint64_t k, uint32_t *out);

/**
 * a^{-1}; fails on zero.
 *
 * # Safety
 * `f` must be a live handle and `out` a valid pointer.
 */
SlStatus sl_field_inv(const SlField *f, uint32_t a, uint32_t *out);

/**
 * Type-C spread: β-orbit of {x + δx^{q^i}}. Pass `delta = u32::MAX` for the
 * first admissible δ.
 *
 * # Safety
 * `f` must be a live handle and `out` a valid pointer.
 */
SlStatus sl_spread_typec(const SlField *f, uint32_t i, uint32_t delta, SlSpread **out);

/**
 * Type-H spread from two β²-orbits. `u32::MAX` selects the first admissible
 * δ or η.
 *
 * # Safety
 * `f` must be a live handle and `out` a valid pointer.
 */
SlStatus sl_spread_typeh(const SlField *f,
                         uint32_t k,
                         uint32_t delta,
                         uint32_t eta,
                         SlSpread **out);

/**
 * Even spread of F_{q^6}, q = 2^e, from {tr(x) + δx}. `u32::MAX` selects the
 * least admissible δ.
 *
 * # Safety
 * `f` must be a live handle for p = 2, n = 3 and `out` a valid pointer.
 */
SlStatus sl_spread_even3(const SlField *f, uint32_t delta, SlSpread **out);

/**
 * Parses a spread from its JSON form. The result is unverified.
 *
 * # Safety
 * `json` must be a valid C string and `out` a valid pointer.
 */
SlStatus sl_spread_from_json(const char *json, SlSpread **out);

/**
 * # Safety
 * `s` must be null or a live spread handle.
 */
void sl_spread_free(SlSpread *s);

/**
 * Checks that the components partition the nonzero vectors.
 *
 * # Safety
 * `s` must be a live handle and `out` a valid pointer.
 */
SlStatus sl_spread_verify(SlSpread *s, bool *out);

/**
 * Number of components, or 0 for a null handle.
 *
 * # Safety
 * `s` must be null or a live handle.
 */
uintptr_t sl_spread_component_count(const SlSpread *s);

/**
 * Size of the kernel of a verified spread.
 *
 * # Safety
 * `s` must be a live handle and `out` a valid pointer.
 */
SlStatus sl_spread_kernel(const SlSpread *s, uint64_t *out);

/**
 * Spread as a JSON string.
 *
 * # Safety
 * `s` must be a live handle and `out` a valid pointer.
 */
SlStatus sl_spread_to_json(const SlSpread *s, char **out);

/**
 * Planarity and nuclei of a DO polynomial given as JSON over the chosen
 * subfield. Writes the verdict as JSON.
 *
 * # Safety
 * `f` must be a live handle, `poly` a valid C string and `out` a valid pointer.
 */
SlStatus sl_planar_verdict(const SlField *f, SlFieldLevel l, const char *poly, char **out);

/**
 * Runs an experiment described by a JSON spec (at least `name`; other fields
 * default as on the command line). Writes the report JSON and the exit code:
 * 0 confirmed, 2 counterexample.
 *
 * # Safety
 * `spec` must be a valid C string; `report` and `exit_code` valid pointers.
 */
SlStatus sl_experiment_run(const char *spec, char **report, int32_t *exit_code);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SPREADLAB_H */
