/* C interface to the hypcenter library.
 *
 * Objects are opaque handles created by hc_*_create / hc_*_new style calls and
 * released with the matching hc_*_free. Every fallible call returns an
 * hc_status; on failure hc_last_error() describes the problem for the calling
 * thread. Points are passed as arrays of `dim` doubles.
 */
#ifndef HYPCENTER_H
#define HYPCENTER_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(HYPCENTER_BUILDING)
#define HC_API __declspec(dllexport)
#else
#define HC_API __declspec(dllimport)
#endif
#else
#define HC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hc_status {
  HC_OK = 0,
  HC_ERR_INVALID_ARGUMENT = 1,
  HC_ERR_DIMENSION_MISMATCH = 2,
  HC_ERR_POLE_SINGULARITY = 3,
  HC_ERR_DOMAIN = 4,
  HC_ERR_DEGENERATE_DIRECTION = 5,
  HC_ERR_UNDEFINED_AT_ONE = 6,
  HC_ERR_NOT_BOUNDARY_COMPATIBLE = 7,
  HC_ERR_EMPTY_MEASURE = 8,
  HC_ERR_ZERO_TOTAL = 9,
  HC_ERR_REGION_TOUCHES_BOUNDARY = 10,
  HC_ERR_NONPOSITIVE_MASS = 11,
  HC_ERR_BUSEMANN_SINGULARITY = 12,
  HC_ERR_DIVERGENT_ITERATES = 13,
  HC_ERR_UNKNOWN_FIXTURE = 14,
  HC_ERR_OUT_OF_RANGE = 15,
  HC_ERR_INTERNAL = 16
} hc_status;

HC_API const char* hc_status_name(hc_status status);
HC_API const char* hc_last_error(void);
HC_API const char* hc_version(void);

/* ---- geometry ---------------------------------------------------------- */

HC_API hc_status hc_mobius(size_t dim, const double* x, const double* y, double* out);
HC_API hc_status hc_mobius_inverse(size_t dim, const double* x, const double* y, double* out);
HC_API hc_status hc_arclength_s(double r, double* out);
HC_API hc_status hc_hyp_distance(size_t dim, const double* x, const double* y, double* out);
HC_API hc_status hc_inverse_exp(size_t dim, const double* x, const double* y, double* out);
HC_API hc_status hc_geodesic_point(size_t dim, const double* base, const double* dir, double t,
                                   double* out);
HC_API hc_status hc_geodesic_point_at_arclength(size_t dim, const double* base,
                                                const double* dir, double tau, double* out);
HC_API hc_status hc_halfspace_contains(size_t dim, const double* p, double t, const double* y,
                                       int* out);
HC_API hc_status hc_reflect(size_t dim, const double* p, double t, const double* y, double* out);
HC_API hc_status hc_fold(size_t dim, const double* p, double t, const double* y, double* out);

/* ---- weights ----------------------------------------------------------- */

typedef struct hc_weight hc_weight;

typedef enum hc_monotonicity {
  HC_STRICTLY_INCREASING = 0,
  HC_INCREASING = 1,
  HC_NOT_MONOTONE = 2
} hc_monotonicity;

HC_API hc_status hc_weight_identity(hc_weight** out);
HC_API hc_status hc_weight_arctanh_power(double p, hc_weight** out);
/* Pieces g = slope*s + intercept on s <= upto[i]; the last upto is ignored. */
HC_API hc_status hc_weight_clamped_arctanh(size_t pieces, const double* upto,
                                           const double* slope, const double* intercept,
                                           hc_weight** out);
HC_API hc_status hc_weight_min_s_inv_s(hc_weight** out);
HC_API hc_status hc_weight_clamped_linear(double c, hc_weight** out);
HC_API hc_status hc_weight_log_damped(hc_weight** out);
HC_API hc_status hc_weight_table(size_t count, const double* r, const double* g,
                                 hc_monotonicity declared, int divergent_G, hc_weight** out);
HC_API hc_status hc_weight_signed_ball_example(hc_weight** out);
HC_API hc_status hc_weight_scaled(const hc_weight* w, double factor, hc_weight** out);
HC_API hc_status hc_weight_normalized_for_boundary(const hc_weight* w, hc_weight** out);
HC_API void hc_weight_free(hc_weight* w);

HC_API hc_status hc_weight_monotonicity(const hc_weight* w, hc_monotonicity* out);
/* *has_g1 is 0 when g(1) is undefined. */
HC_API hc_status hc_weight_g1(const hc_weight* w, int* has_g1, double* g1);
HC_API hc_status hc_weight_divergent_G(const hc_weight* w, int* out);
HC_API const char* hc_weight_kind(const hc_weight* w);

HC_API hc_status hc_eval_g(const hc_weight* w, double r, double* out);
HC_API hc_status hc_eval_G(const hc_weight* w, double r, double* out);
HC_API hc_status hc_eval_v(const hc_weight* w, size_t dim, const double* y, double* out);

/* ---- measures ---------------------------------------------------------- */

typedef struct hc_measure hc_measure;

HC_API hc_status hc_measure_create(size_t dim, hc_measure** out);
HC_API void hc_measure_free(hc_measure* m);
/* Radii within 1e-9 of 1 snap to the sphere. */
HC_API hc_status hc_measure_add_atom(hc_measure* m, const double* x, double w);
/* Interior atom at hyperbolic distance s from the origin along dir; keeps
 * full precision in 1 - |x| for far atoms. */
HC_API hc_status hc_measure_add_atom_hyperbolic(hc_measure* m, double s, const double* dir,
                                                double w);
HC_API size_t hc_measure_dim(const hc_measure* m);
HC_API size_t hc_measure_size(const hc_measure* m);
/* *on_sphere receives 1 for boundary atoms; may be NULL. */
HC_API hc_status hc_measure_atom(const hc_measure* m, size_t i, double* x, double* w,
                                 int* on_sphere);

typedef enum hc_support {
  HC_SUPPORT_COMPACT_INTERIOR = 0,
  HC_SUPPORT_TOUCHES_BOUNDARY = 1,
  HC_SUPPORT_SPHERE_ONLY = 2
} hc_support;

typedef enum hc_geodesic_support {
  HC_NOT_IN_GEODESIC = 0,
  HC_IN_GEODESIC = 1,
  HC_IN_GEODESIC_CLOSURE = 2
} hc_geodesic_support;

typedef struct hc_validation {
  double total;
  double abs_total;
  hc_support support;
  double max_radius;
  int boundary_pointmass_ok;
  hc_geodesic_support geodesic_support;
  int is_signed;
} hc_validation;

HC_API hc_status hc_measure_validate(const hc_measure* m, hc_validation* out);
HC_API hc_status hc_measure_push_mobius(const hc_measure* m, const double* x, hc_measure** out);
HC_API hc_status hc_measure_push_fold(const hc_measure* m, const double* p, double t,
                                      hc_measure** out);

typedef double (*hc_density_fn)(const double* y, size_t dim, void* user);

HC_API hc_status hc_quantize_ball(hc_density_fn f, void* user, size_t dim, const double* center,
                                  double radius, size_t count, uint64_t seed, hc_measure** out);
HC_API hc_status hc_quantize_box(hc_density_fn f, void* user, size_t dim, const double* lo,
                                 const double* hi, size_t count, uint64_t seed,
                                 hc_measure** out);

/* ---- energy ------------------------------------------------------------ */

typedef struct hc_context hc_context;

/* Validates the measure; boundary measures get the weight rescaled to g(1)=1. */
HC_API hc_status hc_context_create(const hc_weight* w, const hc_measure* m, hc_context** out);
HC_API void hc_context_free(hc_context* ctx);
HC_API size_t hc_context_dim(const hc_context* ctx);
HC_API double hc_context_mass(const hc_context* ctx);

HC_API hc_status hc_field_V(const hc_context* ctx, const double* x, double* out);
HC_API hc_status hc_kernel_K(const hc_context* ctx, const double* x, const double* y,
                             double* out);
HC_API hc_status hc_energy(const hc_context* ctx, const double* x, double* out);
HC_API hc_status hc_energy_gradient(const hc_context* ctx, const double* x, double* out);

/* ---- solver ------------------------------------------------------------ */

typedef enum hc_strategy { HC_GEODESIC_DESCENT = 0, HC_NEWTON_ACCELERATED = 1 } hc_strategy;

typedef enum hc_hypothesis_class {
  HC_THM1_I = 0,
  HC_THM1_II = 1,
  HC_THM2_I = 2,
  HC_THM2_II = 3,
  HC_SIGNED_EXISTENCE_ONLY = 4,
  HC_NO_GUARANTEE = 5
} hc_hypothesis_class;

typedef enum hc_uniqueness {
  HC_UNIQUE_GUARANTEED = 0,
  HC_UNIQUE_MULTISTART_AGREE = 1,
  HC_UNIQUE_AMBIGUOUS = 2,
  HC_UNIQUE_UNVERIFIED = 3
} hc_uniqueness;

typedef struct hc_solve_options {
  double tol_residual;
  int max_iters;
  const double* initial; /* NULL selects the automatic start */
  hc_strategy strategy;
  int multistart;
  uint64_t seed;
} hc_solve_options;

HC_API void hc_solve_options_default(hc_solve_options* opts);
HC_API const char* hc_hypothesis_class_name(hc_hypothesis_class c);
HC_API const char* hc_uniqueness_name(hc_uniqueness u);

HC_API hc_status hc_classify(const hc_context* ctx, hc_hypothesis_class* out);

typedef struct hc_solve_result hc_solve_result;

/* Returns HC_ERR_DIVERGENT_ITERATES when the iterates run into the sphere. */
HC_API hc_status hc_solve(const hc_context* ctx, const hc_solve_options* opts,
                          hc_solve_result** out);
HC_API hc_status hc_multistart(const hc_context* ctx, const hc_solve_options* opts, int starts,
                               hc_solve_result** out);
HC_API void hc_result_free(hc_solve_result* r);

typedef struct hc_result_summary {
  double residual;
  int iterations;
  double energy;
  int converged;
  hc_uniqueness uniqueness;
  hc_hypothesis_class hypothesis_class;
  size_t clusters;
  int starts;
  int starts_converged;
  double spread;
  size_t trace_length;
} hc_result_summary;

HC_API hc_status hc_result_summary_get(const hc_solve_result* r, hc_result_summary* out);
HC_API hc_status hc_result_center(const hc_solve_result* r, double* out);
HC_API hc_status hc_result_cluster(const hc_solve_result* r, size_t i, double* point,
                                   int* members);
HC_API hc_status hc_result_trace(const hc_solve_result* r, size_t i, double* energy,
                                 double* residual, double* step);

/* Hyperbolic displacement of the center for each perturbed measure. */
HC_API hc_status hc_continuity_probe(const hc_context* ctx, size_t count,
                                     const hc_measure* const* perturbed, const double* sizes,
                                     const hc_solve_options* opts, double* displacements,
                                     int* converged);

/* ---- oracle ------------------------------------------------------------ */

typedef struct hc_scan_report hc_scan_report;

HC_API hc_status hc_oracle_gradient_check(const hc_context* ctx, int samples, uint64_t seed,
                                          hc_scan_report** out);
HC_API hc_status hc_oracle_convexity_scan(const hc_context* ctx, int geodesics, int steps,
                                          uint64_t seed, hc_scan_report** out);
HC_API hc_status hc_oracle_kernel_linearity(size_t dim, int geodesics, int steps, uint64_t seed,
                                            hc_scan_report** out);
HC_API hc_status hc_oracle_cocycle_check(size_t dim, int samples, uint64_t seed,
                                         hc_scan_report** out);
HC_API hc_status hc_oracle_boundary_continuity(const hc_weight* w, size_t dim, const double* x,
                                               const double* yhat, hc_scan_report** out);
HC_API hc_status hc_oracle_distance_convexity(size_t dim, int samples, uint64_t seed,
                                              hc_scan_report** out);
HC_API void hc_scan_report_free(hc_scan_report* r);

HC_API const char* hc_scan_kind(const hc_scan_report* r);
HC_API double hc_scan_worst_case(const hc_scan_report* r);
HC_API int hc_scan_samples(const hc_scan_report* r);
HC_API int hc_scan_pass(const hc_scan_report* r);
HC_API int hc_scan_strict(const hc_scan_report* r);
HC_API uint64_t hc_scan_seed(const hc_scan_report* r);
HC_API size_t hc_scan_detail_count(const hc_scan_report* r);
HC_API const char* hc_scan_detail(const hc_scan_report* r, size_t i);
HC_API size_t hc_scan_metric_count(const hc_scan_report* r);
HC_API hc_status hc_scan_metric(const hc_scan_report* r, size_t i, const char** name,
                                double* value);

typedef struct hc_zero_set hc_zero_set;

HC_API hc_status hc_oracle_zeros_1d(const hc_context* ctx, int resolution, hc_zero_set** out);
HC_API hc_status hc_oracle_zeros_2d(const hc_context* ctx, int resolution, hc_zero_set** out);
HC_API void hc_zero_set_free(hc_zero_set* z);
HC_API size_t hc_zero_set_size(const hc_zero_set* z);
HC_API size_t hc_zero_set_dim(const hc_zero_set* z);
/* 1-D: lo/hi bound the zero and *flat is 1 where V vanishes on a whole run.
 * 2-D: lo receives the point, hi is left untouched. */
HC_API hc_status hc_zero_set_get(const hc_zero_set* z, size_t i, double* lo, double* hi,
                                 int* flat);

/* ---- built-in examples ------------------------------------------------- */

HC_API size_t hc_fixture_count(void);
HC_API const char* hc_fixture_name(size_t i);
HC_API hc_status hc_fixture_load(const char* name, hc_weight** weight, hc_measure** measure);

typedef struct hc_reproduce_report hc_reproduce_report;

HC_API hc_status hc_reproduce(const char* name, hc_reproduce_report** out);
HC_API void hc_reproduce_report_free(hc_reproduce_report* r);
HC_API int hc_reproduce_pass(const hc_reproduce_report* r);
HC_API size_t hc_reproduce_check_count(const hc_reproduce_report* r);
HC_API hc_status hc_reproduce_check(const hc_reproduce_report* r, size_t i, const char** label,
                                    double* value, double* expected, double* tolerance,
                                    int* pass);

#ifdef __cplusplus
}
#endif

#endif /* HYPCENTER_H */
