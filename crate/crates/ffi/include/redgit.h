#ifndef REDGIT_H
#define REDGIT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes. The first four match the command-line exit codes.
 */
typedef enum RgStatus {
  RgStatus_Ok = 0,
  RgStatus_InvalidInput = 1,
  RgStatus_CapExceeded = 2,
  RgStatus_Unsupported = 3,
  RgStatus_NullPointer = 4,
  RgStatus_InvalidUtf8 = 5,
  RgStatus_Internal = 6,
} RgStatus;

/**
 * A linearized action.
 */
typedef struct RgAction RgAction;

/**
 * A group presentation.
 */
typedef struct RgGroup RgGroup;

/**
 * Homomorphism data between two groups.
 */
typedef struct RgHom RgHom;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The message of the last failed call on this thread, or null. Valid until
 * the next call into this library on the same thread.
 */
const char *rg_last_error_message(void);

/**
 * Frees a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void rg_string_free(char *s);

/**
 * Parses a group file (JSON text). Relative paths resolve against the
 * working directory.
 *
 * # Safety
 * `json` must be a nul-terminated string; `out` must be writable.
 */
enum RgStatus rg_group_from_json(const char *json, struct RgGroup **out);

/**
 * A builtin group such as `"gl3"`, `"sp4"` or `"normalizer2"`.
 *
 * # Safety
 * `name` must be a nul-terminated string; `out` must be writable.
 */
enum RgStatus rg_group_builtin(const char *name, struct RgGroup **out);

/**
 * # Safety
 * `g` must come from this library and not have been freed. Null is ignored.
 */
void rg_group_free(struct RgGroup *g);

/**
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum RgStatus rg_group_rank(const struct RgGroup *g, uintptr_t *out);

/**
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum RgStatus rg_group_weyl_order(const struct RgGroup *g, uintptr_t *out);

/**
 * Rational characters, central cocharacters and root kernel as JSON.
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable. Free the result with
 * `rg_string_free`.
 */
enum RgStatus rg_group_invariants_json(const struct RgGroup *g, char **out);

/**
 * Three-way checked semistability of the split bundle with degrees
 * `delta_json` (a JSON array of rationals).
 *
 * # Safety
 * `g` must be a live handle, `delta_json` a nul-terminated string, `out` writable.
 */
enum RgStatus rg_split_semistable(const struct RgGroup *g, const char *delta_json, bool *out);

/**
 * Parses a homomorphism file (JSON text).
 *
 * # Safety
 * `json` must be a nul-terminated string; `out` must be writable.
 */
enum RgStatus rg_hom_from_json(const char *json, struct RgHom **out);

/**
 * # Safety
 * `f` must come from this library and not have been freed. Null is ignored.
 */
void rg_hom_free(struct RgHom *f);

/**
 * Is the degree (a degree file, as JSON text, on the source) adapted?
 *
 * # Safety
 * `f` must be a live handle, `degree_json` a nul-terminated string, `out` writable.
 */
enum RgStatus rg_hom_is_adapted(const struct RgHom *f, const char *degree_json, bool *out);

/**
 * The pushed degree as `{"image": [...], "degree": {"F": [...], "d": [...]}}`.
 *
 * # Safety
 * As `rg_hom_is_adapted`; free the result with `rg_string_free`.
 */
enum RgStatus rg_hom_push_degree_json(const struct RgHom *f, const char *degree_json, char **out);

/**
 * The destabilizing witness `{"lambda_prime", "parabolic", "weight"}`.
 *
 * # Safety
 * As `rg_hom_is_adapted`; free the result with `rg_string_free`.
 */
enum RgStatus rg_hom_witness_json(const struct RgHom *f, const char *degree_json, char **out);

/**
 * Parses an action file (JSON text).
 *
 * # Safety
 * `json` must be a nul-terminated string; `out` must be writable.
 */
enum RgStatus rg_action_from_json(const char *json, struct RgAction **out);

/**
 * # Safety
 * `a` must come from this library and not have been freed. Null is ignored.
 */
void rg_action_free(struct RgAction *a);

/**
 * Semistability of points with support `indices[0..len]`.
 *
 * # Safety
 * `a` must be a live handle, `indices` must point to `len` values, `out` writable.
 */
enum RgStatus rg_action_is_semistable(const struct RgAction *a,
                                      const uintptr_t *indices,
                                      uintptr_t len,
                                      bool *out);

/**
 * The stratum of points with support `indices[0..len]`, as JSON.
 *
 * # Safety
 * As `rg_action_is_semistable`; free the result with `rg_string_free`.
 */
enum RgStatus rg_action_instability_json(const struct RgAction *a,
                                         const uintptr_t *indices,
                                         uintptr_t len,
                                         char **out);

/**
 * All strata with their support patterns, as a JSON list.
 *
 * # Safety
 * `a` must be a live handle; `out` writable. Free with `rg_string_free`.
 */
enum RgStatus rg_action_strata_json(const struct RgAction *a, char **out);

/**
 * Checks the stratification and the centre recursion for every candidate.
 *
 * # Safety
 * `a` must be a live handle; `out` writable.
 */
enum RgStatus rg_action_verify(const struct RgAction *a, bool *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* REDGIT_H */
