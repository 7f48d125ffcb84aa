#ifndef STARGRAPH_STARGRAPH_H
#define STARGRAPH_STARGRAPH_H

/*
 * C interface to the star-graph spectral statistics library.
 *
 * Every fallible function returns an sg_status. On failure the message is
 * available from sg_last_error() on the same thread until the next call.
 * Objects are opaque handles released with their matching *_free function;
 * passing NULL to a *_free function is allowed.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(SG_BUILDING_LIBRARY)
#    define SG_API __declspec(dllexport)
#  else
#    define SG_API __declspec(dllimport)
#  endif
#else
#  define SG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sg_status {
  SG_OK = 0,
  SG_ERR_INVALID_ARGUMENT = 1,
  SG_ERR_NUMERICAL = 2,
  SG_ERR_IO = 3,
  SG_ERR_INTERNAL = 4,
  SG_ERR_NULL_POINTER = 5
} sg_status;

SG_API const char* sg_last_error(void);
SG_API const char* sg_status_string(sg_status status);
SG_API const char* sg_version(void);

/* Library warnings go to stderr by default; 0 silences them. */
SG_API void sg_set_warnings_enabled(int enabled);

/* ---- configuration files ---- */

typedef struct sg_config {
  int has_seed;
  uint64_t seed;
  int has_v;
  size_t v;
  int has_l_bar;
  double l_bar;
  int has_delta_l;
  double delta_l;
  int has_sample_count;
  size_t sample_count;
} sg_config;

SG_API sg_status sg_config_load(const char* path, sg_config* out);

/* ---- bond lengths ---- */

typedef struct sg_lengths sg_lengths;

/* Lengths must be positive and pairwise distinct. */
SG_API sg_status sg_lengths_create(const double* values, size_t v, sg_lengths** out);
/* v lengths drawn uniformly from [l_bar, l_bar + delta_l]. */
SG_API sg_status sg_lengths_generate(double l_bar, double delta_l, size_t v, uint64_t seed, sg_lengths** out);
SG_API void sg_lengths_free(sg_lengths* lengths);
SG_API size_t sg_lengths_size(const sg_lengths* lengths);
SG_API sg_status sg_lengths_values(const sg_lengths* lengths, double* out, size_t capacity);
SG_API double sg_mean_density(const sg_lengths* lengths);

/* ---- spectral determinant and eigenvalues ---- */

SG_API sg_status sg_eval_z(const sg_lengths* lengths, double k, double* out);
SG_API sg_status sg_eval_z_prime(const sg_lengths* lengths, double k, double* out);

typedef struct sg_spectral_point {
  size_t index;
  double k;
  double z_prime;
  double bracket_lo;
  double bracket_hi;
} sg_spectral_point;

typedef struct sg_spectrum sg_spectrum;

/* The first n_eigs eigen-wavenumbers k_0 = 0, k_1, ... threads <= 0 uses all cores. */
SG_API sg_status sg_spectrum_compute(const sg_lengths* lengths, size_t n_eigs, int threads, sg_spectrum** out);
/* count eigen-wavenumbers with indices drawn uniformly from 1..n_max. */
SG_API sg_status sg_spectrum_random(const sg_lengths* lengths, size_t count, size_t n_max, uint64_t seed,
                                    int threads, sg_spectrum** out);
SG_API void sg_spectrum_free(sg_spectrum* spectrum);
SG_API size_t sg_spectrum_size(const sg_spectrum* spectrum);
SG_API sg_status sg_spectrum_get(const sg_spectrum* spectrum, size_t i, sg_spectral_point* out);
SG_API sg_status sg_spectrum_write_csv(const sg_spectrum* spectrum, const char* path);

/* Maximum squared amplitudes A_i (v values) and (A^(n))^2 for one eigenvalue. */
SG_API sg_status sg_eigenfunction_amplitudes(const sg_lengths* lengths, const sg_spectral_point* point,
                                             double* amplitude_sq, size_t capacity, double* norm_constant_sq);

typedef struct sg_weyl_count {
  size_t zero_count;
  size_t pole_count;
  double smooth_count;
} sg_weyl_count;

SG_API sg_status sg_weyl_count_check(const sg_lengths* lengths, double k_max, int threads, sg_weyl_count* out);

/* ---- samples (empirical distributions, stored sorted) ---- */

typedef struct sg_samples sg_samples;

SG_API sg_status sg_samples_create(const double* values, size_t n, sg_samples** out);
SG_API void sg_samples_free(sg_samples* samples);
SG_API size_t sg_samples_size(const sg_samples* samples);
SG_API sg_status sg_samples_values(const sg_samples* samples, double* out, size_t capacity);
SG_API sg_status sg_samples_write_csv(const sg_samples* samples, const char* path);

/* Z'(k_n)/v^2 and v^2 A_bond(n) over a spectrum, k_0 excluded. bond is zero-based. */
SG_API sg_status sg_scaled_z_prime(const sg_spectrum* spectrum, const sg_lengths* lengths, sg_samples** out);
SG_API sg_status sg_scaled_amplitudes(const sg_spectrum* spectrum, const sg_lengths* lengths, size_t bond,
                                      sg_samples** out);

/* Z/v for k uniform on [0, k_max]; discarded (may be NULL) receives the pole-guard count. */
SG_API sg_status sg_sample_z_over_k(const sg_lengths* lengths, double k_max, size_t n_samples, uint64_t seed,
                                    int threads, sg_samples** out, size_t* discarded);
/* Z(k, L)/v with fresh lengths from [l_bar, l_bar + delta_l] per sample. */
SG_API sg_status sg_sample_z_over_lengths(double l_bar, double delta_l, size_t v, double k, size_t n_samples,
                                          uint64_t seed, int threads, sg_samples** out);

typedef enum sg_reference {
  SG_REF_CAUCHY = 0,
  SG_REF_LIMIT_P = 1,
  SG_REF_LIMIT_Q = 2
} sg_reference;

/* Kolmogorov-Smirnov distance to a reference law (l_bar is ignored for Cauchy). */
SG_API sg_status sg_ks_distance(const sg_samples* samples, sg_reference reference, double l_bar, int threads,
                                double* out);
SG_API double sg_ks_99_threshold(size_t n);
SG_API sg_status sg_write_summary_json(const char* path, size_t n, double ks);

/* Least-squares slope of log(1 - F) against log x over [x_lo, x_hi]. */
SG_API sg_status sg_ccdf_log_slope(const sg_samples* samples, double x_lo, double x_hi, double* out);

/* Fraction of values below threshold, with binomial standard error. */
SG_API sg_status sg_eigen_fraction(const double* values, size_t n, double threshold, double* estimate,
                                   double* std_error);

/* ---- density curves ---- */

typedef struct sg_curve sg_curve;

/* Density histogram over [lo, hi); its mass is the fraction of samples inside. */
SG_API sg_status sg_histogram(const sg_samples* samples, size_t bins, double lo, double hi, sg_curve** out);
/* points <= 0 keeps the default grid; x_min/x_max <= 0 likewise. */
SG_API sg_status sg_limit_p_curve(double l_bar, double x_min, double x_max, size_t points, int threads,
                                  sg_curve** out);
SG_API sg_status sg_limit_q_curve(double l_bar, double x_min, double x_max, size_t points, int threads,
                                  sg_curve** out);
/* A curve from explicit points (ascending x); no head or tail model. */
SG_API sg_status sg_curve_create(const double* x, const double* pdf, size_t n, sg_curve** out);
SG_API void sg_curve_free(sg_curve* curve);
SG_API size_t sg_curve_size(const sg_curve* curve);
SG_API sg_status sg_curve_get(const sg_curve* curve, size_t i, double* x, double* pdf);
SG_API double sg_curve_mass(const sg_curve* curve);
SG_API double sg_curve_eval(const sg_curve* curve, double x);
SG_API sg_status sg_curve_write_csv(const sg_curve* curve, const char* path);
SG_API sg_status sg_curve_write_json(const sg_curve* curve, const char* path);
SG_API sg_status sg_histogram_write_csv(const sg_curve* histogram, const char* path);

/* R(r) from a tabulated amplitude density. */
SG_API sg_status sg_abel_value_distribution(const sg_curve* q, double r, double* out);

/* ---- special functions and limit laws ---- */

SG_API double sg_erf(double x);
SG_API double sg_erfc(double x);
SG_API double sg_dawson(double x);
SG_API double sg_cauchy_pdf(double y);
SG_API double sg_cauchy_cdf(double y);
SG_API sg_status sg_limit_p(double y, double l_bar, double* out);
SG_API sg_status sg_limit_p_cdf(double y, double l_bar, double* out);
SG_API sg_status sg_limit_q(double eta, double l_bar, double* out);
SG_API sg_status sg_q_tail_coefficient(double l_bar, double* out);

/* ---- invariant surface measure ---- */

typedef struct sg_surface_estimate {
  double estimate;
  double std_error;
  size_t n_samples;
  double max_weight_fraction;
  double mean_jacobian;
  double mean_jacobian_error;
} sg_surface_estimate;

/* Finite-v CDFs of Z'/v^2 (pv) and v^2 A_bond (qv) at each threshold; out holds count entries. */
SG_API sg_status sg_surface_pv(const sg_lengths* lengths, const double* thresholds, size_t count,
                               size_t n_samples, uint64_t seed, int threads, sg_surface_estimate* out);
SG_API sg_status sg_surface_qv(const sg_lengths* lengths, size_t bond, const double* thresholds, size_t count,
                               size_t n_samples, uint64_t seed, int threads, sg_surface_estimate* out);
SG_API sg_status sg_write_surface_json(const char* path, const sg_surface_estimate* estimate);

/* ---- rectangle billiard ---- */

typedef struct sg_rect_spectrum sg_rect_spectrum;

typedef struct sg_seba_window {
  size_t n_min;
  size_t n_max;
  double e_min;
  double e_max;
  double mean_density;
  double l_bar;
  double c;
} sg_seba_window;

SG_API double sg_golden_alpha(void);
SG_API sg_status sg_rect_spectrum_create(double alpha, size_t k, sg_rect_spectrum** out);
SG_API void sg_rect_spectrum_free(sg_rect_spectrum* spectrum);
SG_API size_t sg_rect_spectrum_size(const sg_rect_spectrum* spectrum);
/* index is 1-based. */
SG_API sg_status sg_rect_level(const sg_rect_spectrum* spectrum, size_t index, int* n, int* m, double* energy);
SG_API sg_status sg_rect_spectrum_write_csv(const sg_rect_spectrum* spectrum, const char* path);
SG_API sg_status sg_seba_make_window(const sg_rect_spectrum* spectrum, size_t n_min, size_t n_max, double l_bar,
                                     sg_seba_window* out);
/* sum_levels = 0 sums over every level. */
SG_API sg_status sg_seba_determinant_samples(const sg_rect_spectrum* spectrum, const sg_seba_window* window,
                                             size_t n_samples, uint64_t seed, int threads, size_t sum_levels,
                                             sg_samples** out);
SG_API sg_status sg_seba_coefficient_samples(const sg_rect_spectrum* spectrum, const sg_seba_window* window,
                                             size_t level_index, size_t n_samples, uint64_t seed, int threads,
                                             sg_samples** out);

/* ---- presets ---- */

typedef struct sg_preset {
  const char* name;
  const char* description;
  size_t v;
  double l_bar;
  double delta_l;
  size_t samples;
  size_t index_range;
  size_t levels;
  size_t window_min;
  size_t window_max;
  size_t level_index;
  double ks_bound;
} sg_preset;

typedef struct sg_report sg_report;

SG_API size_t sg_preset_count(void);
SG_API sg_status sg_preset_get(size_t i, sg_preset* out);
/* out_dir may be NULL or empty to skip writing files. */
SG_API sg_status sg_preset_run(const char* name, uint64_t seed, int threads, const char* out_dir, sg_report** out);
SG_API void sg_report_free(sg_report* report);
SG_API int sg_report_passed(const sg_report* report);
SG_API double sg_report_seconds(const sg_report* report);
/* JSON text owned by the report. */
SG_API const char* sg_report_json(const sg_report* report);
SG_API size_t sg_report_file_count(const sg_report* report);
SG_API const char* sg_report_file(const sg_report* report, size_t i);

/* ---- acceptance suite ---- */

typedef struct sg_check_result {
  int id;
  int passed;
  double value;
  double threshold;
  double seconds;
  char name[96];
  char detail[512];
} sg_check_result;

SG_API int sg_selfcheck_count(void);
SG_API sg_status sg_selfcheck_run(int id, uint64_t seed, int threads, sg_check_result* out);

#ifdef __cplusplus
}
#endif

#endif
