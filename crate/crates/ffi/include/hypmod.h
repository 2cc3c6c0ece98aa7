#ifndef HYPMOD_H
#define HYPMOD_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum HypmodStatus {
  HYPMOD_STATUS_OK = 0,
  HYPMOD_STATUS_INVALID_POINT = 1,
  HYPMOD_STATUS_INVALID_ISOMETRY = 2,
  HYPMOD_STATUS_DUPLICATE_POINTS = 3,
  HYPMOD_STATUS_NEGATIVE_ARGUMENT = 4,
  HYPMOD_STATUS_BAD_PARAMETERS = 5,
  HYPMOD_STATUS_DEGENERATE_DOMAIN = 6,
  HYPMOD_STATUS_DEGENERATE_QUAD = 7,
  HYPMOD_STATUS_DEGENERATE_ANNULUS = 8,
  HYPMOD_STATUS_EMPTY_FAMILY = 9,
  HYPMOD_STATUS_QUADRATURE_FAILURE = 10,
  HYPMOD_STATUS_NOT_NESTED = 11,
  HYPMOD_STATUS_IO_FAILURE = 12,
  HYPMOD_STATUS_NULL_POINTER = 13,
  HYPMOD_STATUS_PANIC = 14,
} HypmodStatus;

typedef enum HypmodFamily {
  HYPMOD_FAMILY_QUAD_ARCS = 0,
  HYPMOD_FAMILY_QUAD_SEGMENTS = 1,
  HYPMOD_FAMILY_ANNULUS_JOINING = 2,
  HYPMOD_FAMILY_ANNULUS_SEPARATING = 3,
} HypmodFamily;

/**
 * Opaque extremal density.
 */
typedef struct HypmodDensity HypmodDensity;

/**
 * Opaque verification report.
 */
typedef struct HypmodReport HypmodReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread, or null if none.
 * The pointer stays valid until the next failing call on the same thread.
 */
const char *hypmod_last_error_message(void);

/**
 * Hyperbolic distance between `(l1, t1)` and `(l2, t2)`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum HypmodStatus hypmod_dist(double l1, double t1, double l2, double t2, double *out);

/**
 * Polar coordinates about `(1, 0)` to half-plane coordinates.
 *
 * # Safety
 * `out_lambda` and `out_t` must be valid for writes.
 */
enum HypmodStatus hypmod_polar_to_cartesian(double r,
                                            double theta,
                                            double *out_lambda,
                                            double *out_t);

/**
 * Half-plane coordinates to polar coordinates about `(1, 0)`.
 *
 * # Safety
 * `out_r` and `out_theta` must be valid for writes.
 */
enum HypmodStatus hypmod_polar_from_cartesian(double lambda,
                                              double t,
                                              double *out_r,
                                              double *out_theta);

/**
 * Inverse tangent integral `Ti2(x)` for `x >= 0`. `out_err` may be null.
 *
 * # Safety
 * `out_value` must be valid for writes; `out_err` must be null or valid.
 */
enum HypmodStatus hypmod_ti2(double x, double *out_value, double *out_err);

double hypmod_catalan(void);

/**
 * Closed-form modulus of `family` on the domain given by `(p1, p2)`:
 * `(a, b)` for quadrilaterals, `(r1, r2)` for annuli.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum HypmodStatus hypmod_modulus(enum HypmodFamily family, double p1, double p2, double *out);

/**
 * Euclidean area of the quadrilateral with parameters `(a, b)`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum HypmodStatus hypmod_quad_area(double a, double b, double *out);

/**
 * Creates the extremal density of `family`. Quadrilateral densities need `b = 1`.
 * Release with [`hypmod_density_free`].
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum HypmodStatus hypmod_density_new(enum HypmodFamily family,
                                     double p1,
                                     double p2,
                                     struct HypmodDensity **out);

/**
 * Density value at `(lambda, t)`; zero outside the domain.
 *
 * # Safety
 * `density` must come from [`hypmod_density_new`]; `out` must be valid for writes.
 */
enum HypmodStatus hypmod_density_eval(const struct HypmodDensity *density,
                                      double lambda,
                                      double t,
                                      double *out);

/**
 * # Safety
 * `density` must be null or come from [`hypmod_density_new`], and not be used afterwards.
 */
void hypmod_density_free(struct HypmodDensity *density);

/**
 * Runs the full verification for `family` with default settings and the
 * given seed. Release with [`hypmod_report_free`].
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum HypmodStatus hypmod_report_new(enum HypmodFamily family,
                                    double p1,
                                    double p2,
                                    uint64_t seed,
                                    struct HypmodReport **out);

/**
 * # Safety
 * `report` must come from [`hypmod_report_new`]; `out` must be valid for writes.
 */
enum HypmodStatus hypmod_report_closed_form(const struct HypmodReport *report, double *out);

/**
 * # Safety
 * `report` must come from [`hypmod_report_new`]; `out` must be valid for writes.
 */
enum HypmodStatus hypmod_report_density_energy(const struct HypmodReport *report, double *out);

/**
 * # Safety
 * `report` must come from [`hypmod_report_new`]; `out` must be valid for writes.
 */
enum HypmodStatus hypmod_report_min_integral(const struct HypmodReport *report, double *out);

/**
 * # Safety
 * `report` must come from [`hypmod_report_new`]; `out` must be valid for writes.
 */
enum HypmodStatus hypmod_report_lower_bound(const struct HypmodReport *report, double *out);

/**
 * # Safety
 * `report` must come from [`hypmod_report_new`]; `out` must be valid for writes.
 */
enum HypmodStatus hypmod_report_warning_count(const struct HypmodReport *report, uintptr_t *out);

/**
 * JSON text of the report. Release with [`hypmod_string_free`].
 *
 * # Safety
 * `report` must come from [`hypmod_report_new`]; `out` must be valid for writes.
 */
enum HypmodStatus hypmod_report_to_json(const struct HypmodReport *report, char **out);

/**
 * # Safety
 * `report` must be null or come from [`hypmod_report_new`], and not be used afterwards.
 */
void hypmod_report_free(struct HypmodReport *report);

/**
 * # Safety
 * `s` must be null or a string returned by this library, and not be used afterwards.
 */
void hypmod_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HYPMOD_H */
