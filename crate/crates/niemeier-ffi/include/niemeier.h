#ifndef NIEMEIER_H
#define NIEMEIER_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible call.
 */
typedef enum NmStatus {
  /**
   * Success.
   */
  NmOk = 0,
  /**
   * A pointer argument was null.
   */
  NmNullPointer = 1,
  /**
   * An argument was malformed (bad degree, bad UTF-8, bad modulus).
   */
  NmInvalidArgument = 2,
  /**
   * The lattice or form identifier is not known.
   */
  NmUnknownLattice = 3,
  /**
   * An enumeration budget or overflow guard fired.
   */
  NmResourceLimit = 4,
  /**
   * The requested verification ran and was refuted.
   */
  NmRefuted = 5,
  /**
   * Any other internal failure; see `nm_last_error`.
   */
  NmInternal = 6,
} NmStatus;

/**
 * Opaque computation context; create with `nm_context_new`, release
 * with `nm_context_free`.
 */
typedef struct NmContext NmContext;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Create a context without a disk cache.
 *
 * # Safety
 * `out` must point to a writable `NmContext*` slot.
 */
enum NmStatus nm_context_new(struct NmContext **out);

/**
 * Create a context with an on-disk coefficient cache in `dir`.
 *
 * # Safety
 * `dir` must be a NUL-terminated string; `out` a writable slot.
 */
enum NmStatus nm_context_with_cache(const char *dir, struct NmContext **out);

/**
 * Flush any attached cache and release the context.
 *
 * # Safety
 * `ctx` must come from `nm_context_new`/`nm_context_with_cache` and
 * must not be used afterwards.
 */
void nm_context_free(struct NmContext *ctx);

/**
 * Message describing the most recent failure on this handle, or an
 * empty string. The pointer is owned by the context and valid until
 * the next failing call.
 *
 * # Safety
 * `ctx` must be a valid context pointer.
 */
const char *nm_last_error(const struct NmContext *ctx);

/**
 * Release a string returned by any `*_json` or coefficient call.
 *
 * # Safety
 * `s` must come from this library and must not be used afterwards.
 */
void nm_string_free(char *s);

/**
 * JSON catalog of the 24 lattices with Gram matrices.
 *
 * # Safety
 * `ctx` must be valid; `out_json` a writable slot.
 */
enum NmStatus nm_catalog_json(struct NmContext *ctx, char **out_json);

/**
 * JSON theta expansion of `lattice` at `degree` on the Sturm box.
 *
 * # Safety
 * `ctx` and `lattice` must be valid; `out_json` a writable slot.
 */
enum NmStatus nm_theta_json(struct NmContext *ctx,
                            const char *lattice,
                            uint8_t degree,
                            char **out_json);

/**
 * Decimal string of one theta coefficient; `t` holds
 * (t11, t22, t33, 2*t12, 2*t13, 2*t23), unused slots zero.
 *
 * # Safety
 * `ctx`, `lattice` and `t` must be valid; `out_value` a writable slot.
 */
enum NmStatus nm_theta_coefficient(struct NmContext *ctx,
                                   const char *lattice,
                                   uint8_t degree,
                                   const int64_t *t,
                                   char **out_value);

/**
 * Compare the enumerated theta series against the weight-12 closed
 * form on the Sturm box. `NmOk` when they agree, `NmRefuted` when any
 * coefficient differs.
 *
 * # Safety
 * `ctx` and `lattice` must be valid pointers.
 */
enum NmStatus nm_verify_identity(struct NmContext *ctx, const char *lattice, uint8_t degree);

/**
 * Certify lhs ≡ rhs (mod modulus) for the degree-3 theta series, and
 * return the certificate JSON. `NmOk` = certified, `NmRefuted` =
 * refuted with a witness in the JSON, `NmInternal` = inconclusive.
 *
 * # Safety
 * All pointers must be valid; `out_json` a writable slot (may be null
 * when only the status matters).
 */
enum NmStatus nm_certify_congruence(struct NmContext *ctx,
                                    const char *lhs,
                                    const char *rhs,
                                    uint64_t modulus,
                                    char **out_json);

/**
 * Box-limited mod-p singular rank report as JSON. `NmOk` when the form
 * is singular of corank one on the box, `NmRefuted` otherwise.
 *
 * # Safety
 * All pointers must be valid; `out_json` may be null.
 */
enum NmStatus nm_singular_rank(struct NmContext *ctx,
                               const char *lattice,
                               uint64_t p,
                               char **out_json);

/**
 * Check Θ(theta series) ≡ 0 (mod p) on the extended degree-2 box.
 *
 * # Safety
 * `ctx` and `lattice` must be valid pointers.
 */
enum NmStatus nm_theta_kernel(struct NmContext *ctx, const char *lattice, uint64_t p);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NIEMEIER_H */
