/* C ABI for the phigcd library.
 *
 * Kept in sync with crates/phigcd-ffi/src/lib.rs; regenerate with
 * `cbindgen --config cbindgen.toml --crate phigcd-ffi --output include/phigcd.h`
 * when cbindgen is available.
 */

#ifndef PHIGCD_H
#define PHIGCD_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

/*
 * Status codes returned by every fallible entry point.
 */
typedef enum PhigcdStatus {
  PHIGCD_STATUS_OK = 0,
  /* Bad spec name, parameters or settings. */
  PHIGCD_STATUS_CONFIG = 1,
  /* A numeric routine failed to reach its tolerance. */
  PHIGCD_STATUS_NUMERIC = 2,
  /* Arguments outside the mathematical domain. */
  PHIGCD_STATUS_DOMAIN = 3,
  /* Request exceeds configured capacity limits. */
  PHIGCD_STATUS_CAPACITY = 4,
  /* An operation precondition does not hold. */
  PHIGCD_STATUS_PRECONDITION = 5,
  /* A required pointer argument was null. */
  PHIGCD_STATUS_NULL_ARGUMENT = 6,
  /* A string argument was not valid UTF-8. */
  PHIGCD_STATUS_UTF8 = 7,
  PHIGCD_STATUS_IO = 8,
  /* An internal invariant was violated. */
  PHIGCD_STATUS_INTERNAL = 9,
} PhigcdStatus;

/*
 * Opaque multiplicative weight spec.
 */
typedef struct PhigcdSpec PhigcdSpec;

/*
 * Opaque prediction engine (settings + prime table).
 */
typedef struct PhigcdPredictor PhigcdPredictor;

/*
 * Message for the most recent failure on this thread; valid until the next
 * failing call on the same thread. Null when no failure has occurred.
 */
const char *phigcd_last_error(void);

/*
 * Static name for a status code.
 */
const char *phigcd_status_name(PhigcdStatus status);

/*
 * Library version as a static string.
 */
const char *phigcd_version(void);

/*
 * Create a spec from its name (`mu`, `tau`, `rpower:R`, `rfree:R`,
 * `two-squares`, `smooth:B`, `rough:B`). The handle must be released with
 * `phigcd_spec_free`.
 */
PhigcdStatus phigcd_spec_new(const char *name, PhigcdSpec **out);

/*
 * Release a spec handle. Null is a no-op.
 */
void phigcd_spec_free(PhigcdSpec *spec);

/*
 * Create a prediction engine; sieves primes up to `prime_cutoff` once.
 * Release the handle with `phigcd_predictor_free`.
 */
PhigcdStatus phigcd_predictor_new(double tol,
                                  uint64_t prime_cutoff,
                                  uint32_t k_order,
                                  PhigcdPredictor **out);

/*
 * Release a predictor handle. Null is a no-op.
 */
void phigcd_predictor_free(PhigcdPredictor *predictor);

/*
 * S_g(x) = sum_{n<=x} f(gcd(n, phi(n))) by the streaming scan.
 */
PhigcdStatus phigcd_s_direct(const PhigcdSpec *spec,
                             uint64_t x,
                             uint32_t workers,
                             double *out_value);

/*
 * A_d(x) = #{n <= x : d | n and d | phi(n)}.
 */
PhigcdStatus phigcd_congruence_sum(uint64_t d, uint64_t x, uint64_t *out_value);

/*
 * Counts of n <= x with d | phi(n) and gcd(phi(n), d) = 1.
 */
PhigcdStatus phigcd_count_phi_divisibility(uint64_t d,
                                           uint64_t x,
                                           uint64_t *out_divisible,
                                           uint64_t *out_coprime);

/*
 * Main term for the spec at real x >= 100.
 */
PhigcdStatus phigcd_main_term(const PhigcdPredictor *predictor,
                              const PhigcdSpec *spec,
                              double x,
                              double *out_value);

/*
 * Leading form without the exp(Q_g) correction.
 */
PhigcdStatus phigcd_corollary_product(const PhigcdPredictor *predictor,
                                      const PhigcdSpec *spec,
                                      double x,
                                      double *out_value);

/*
 * Q_g(x) with its truncation tail bound.
 */
PhigcdStatus phigcd_q_g(const PhigcdPredictor *predictor,
                        const PhigcdSpec *spec,
                        double x,
                        double *out_value,
                        double *out_tail_bound);

/*
 * Euler-Mascheroni constant.
 */
double phigcd_euler_gamma(void);

/*
 * zeta(r) for integer r >= 2, with its tail certificate.
 */
PhigcdStatus phigcd_zeta(uint32_t r, double *out_value, double *out_tail_bound);

/*
 * Mertens constant at the predictor's cutoff.
 */
PhigcdStatus phigcd_mertens_constant(const PhigcdPredictor *predictor,
                                     double *out_value,
                                     double *out_tail_bound);

/*
 * Landau-Ramanujan constant at the predictor's cutoff.
 */
PhigcdStatus phigcd_landau_ramanujan(const PhigcdPredictor *predictor,
                                     double *out_value,
                                     double *out_tail_bound);

/*
 * Expansion coefficient a_k = int_1^inf (log t)^k / (t e^t) dt.
 */
PhigcdStatus phigcd_a_coeff(uint32_t k, double tol, double *out_value);

/*
 * Expansion coefficient b_k = int_1^inf (-log t)^k (1 - e^(-1/t)) dt/t.
 */
PhigcdStatus phigcd_b_coeff(uint32_t k, double tol, double *out_value);

/*
 * k-th derivative of 1/s - Gamma(s) at 0.
 */
PhigcdStatus phigcd_gamma_laurent_f(uint32_t k, double tol, double *out_value);

#ifdef __cplusplus
}  /* extern "C" */
#endif

#endif  /* PHIGCD_H */
