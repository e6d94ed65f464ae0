#ifndef PATHWAY_H
#define PATHWAY_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Success.
 */
#define PW_OK 0

/**
 * Parameters or arguments outside the mathematical domain.
 */
#define PW_ERR_DOMAIN 1

/**
 * A numerical routine could not reach the requested accuracy.
 */
#define PW_ERR_ACCURACY 2

/**
 * Invalid model specification.
 */
#define PW_ERR_SPEC 3

/**
 * Estimation failure.
 */
#define PW_ERR_FIT 4

/**
 * Invalid usage of the API (bad flag combination, malformed input).
 */
#define PW_ERR_USAGE 5

/**
 * A required pointer argument was null.
 */
#define PW_ERR_NULL 6

/**
 * An internal panic was caught at the FFI boundary.
 */
#define PW_ERR_PANIC 7

/**
 * Opaque handle to a validated pathway parameter set.
 */
typedef struct PwPathway {
  uint8_t _private[0];
} PwPathway;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Last error message for the calling thread.
 *
 * The pointer stays valid until the next failing call on the same thread.
 * Never null; the string is empty when no error has occurred.
 */
const char *pw_last_error_message(void);

/**
 * Create a pathway model handle.
 *
 * `symmetric` is 0 for a density on the positive half-line and nonzero for
 * the symmetric variant on the whole line. On success writes a handle to
 * `*out` that must be released with `pw_pathway_free`.
 */
int pw_pathway_new(double alpha,
                   double a,
                   double delta,
                   double gamma,
                   double eta,
                   int symmetric,
                   struct PwPathway **out);

/**
 * Release a handle created by `pw_pathway_new`. Passing null is a no-op.
 */
void pw_pathway_free(struct PwPathway *handle);

/**
 * Support of the density: writes the lower and upper endpoints.
 * The upper endpoint is +infinity for the gamma and type-2 regimes.
 */
int pw_pathway_support(const struct PwPathway *handle, double *lo, double *hi);

/**
 * Probability density at `x`.
 */
int pw_pathway_pdf(const struct PwPathway *handle, double x, double *out);

/**
 * Cumulative distribution function at `x`.
 */
int pw_pathway_cdf(const struct PwPathway *handle, double x, double *out);

/**
 * Quantile function: smallest `x` with `cdf(x) >= prob`.
 */
int pw_pathway_quantile(const struct PwPathway *handle, double prob, double *out);

/**
 * Raw moment of order `h` (fractional orders allowed where they exist).
 */
int pw_pathway_moment(const struct PwPathway *handle, double h, double *out);

/**
 * Mathai entropy of order `alpha_e` (`alpha_e < 2`; `alpha_e = 1` gives the
 * Shannon entropy).
 */
int pw_pathway_entropy(const struct PwPathway *handle, double alpha_e, double *out);

/**
 * Laplace transform of the density at argument `t`, by adaptive quadrature.
 */
int pw_pathway_laplace(const struct PwPathway *handle, double t, double *out);

/**
 * Draw `n` samples into the caller-provided buffer `out` (capacity `n`),
 * using a deterministic generator seeded with `seed`.
 */
int pw_pathway_sample(const struct PwPathway *handle, uint64_t seed, uintptr_t n, double *out);

/**
 * Estimate the pathway index `alpha` from `n` samples by moment matching,
 * holding the remaining parameters fixed. Requires at least 100 samples.
 */
int pw_fit_alpha_moments(const double *samples,
                         uintptr_t n,
                         double a,
                         double delta,
                         double gamma,
                         double eta,
                         double *out);

/**
 * Bessel-extended gamma density at `x`.
 */
int pw_bessel_gamma_pdf(double gamma, double rho, double a, double delta_b, double x, double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PATHWAY_H */
