#include "stargraph/stargraph.h"

#include <algorithm>
#include <cstdio>
#include <cstring>
#include <exception>
#include <filesystem>
#include <new>
#include <span>
#include <string>
#include <vector>

#include "stargraph/config.hpp"
#include "stargraph/core_model.hpp"
#include "stargraph/diagnostics.hpp"
#include "stargraph/error.hpp"
#include "stargraph/io.hpp"
#include "stargraph/limit_densities.hpp"
#include "stargraph/presets.hpp"
#include "stargraph/seba.hpp"
#include "stargraph/secular.hpp"
#include "stargraph/selfcheck.hpp"
#include "stargraph/special_functions.hpp"
#include "stargraph/statistics.hpp"
#include "stargraph/torus_measure.hpp"

struct sg_lengths {
  stargraph::BondLengths value;
};

struct sg_spectrum {
  std::vector<stargraph::SpectralPoint> points;
};

struct sg_samples {
  stargraph::EmpiricalDistribution value;
};

struct sg_curve {
  stargraph::DensityCurve value;
};

struct sg_rect_spectrum {
  stargraph::RectangleSpectrum value;
};

struct sg_report {
  stargraph::PresetReport value;
  std::string json;
};

namespace {

thread_local std::string last_error;

template <typename Fn>
sg_status guard(Fn&& fn) noexcept {
  try {
    last_error.clear();
    fn();
    return SG_OK;
  } catch (const stargraph::invalid_argument& e) {
    last_error = e.what();
    return SG_ERR_INVALID_ARGUMENT;
  } catch (const stargraph::numerical_error& e) {
    last_error = e.what();
    return SG_ERR_NUMERICAL;
  } catch (const stargraph::io_error& e) {
    last_error = e.what();
    return SG_ERR_IO;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return SG_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return SG_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown exception";
    return SG_ERR_INTERNAL;
  }
}

sg_status guarded(auto&& fn, auto... pointers) noexcept {
  if (((pointers == nullptr) || ...)) {
    last_error = "null pointer argument";
    return SG_ERR_NULL_POINTER;
  }
  return guard(fn);
}

void copy_text(char* dst, std::size_t capacity, const std::string& src) {
  const std::size_t n = std::min(capacity - 1, src.size());
  std::memcpy(dst, src.data(), n);
  dst[n] = '\0';
}

void copy_values(std::span<const double> src, double* out, std::size_t capacity) {
  if (capacity < src.size()) throw stargraph::invalid_argument("output buffer too small");
  std::copy(src.begin(), src.end(), out);
}

sg_surface_estimate to_c(const stargraph::SurfaceEstimate& e) {
  return {e.estimate, e.std_error, e.n_samples, e.max_weight_fraction, e.mean_jacobian, e.mean_jacobian_error};
}

stargraph::SebaWindow from_c(const sg_seba_window& w) {
  stargraph::SebaWindow out;
  out.n_min = w.n_min;
  out.n_max = w.n_max;
  out.e_min = w.e_min;
  out.e_max = w.e_max;
  out.mean_density = w.mean_density;
  out.l_bar = w.l_bar;
  out.c = w.c;
  return out;
}

}  // namespace

extern "C" {

const char* sg_last_error(void) { return last_error.c_str(); }

const char* sg_status_string(sg_status status) {
  switch (status) {
    case SG_OK: return "ok";
    case SG_ERR_INVALID_ARGUMENT: return "invalid argument";
    case SG_ERR_NUMERICAL: return "numerical failure";
    case SG_ERR_IO: return "i/o failure";
    case SG_ERR_INTERNAL: return "internal error";
    case SG_ERR_NULL_POINTER: return "null pointer";
  }
  return "unknown status";
}

const char* sg_version(void) { return "1.0.0"; }

void sg_set_warnings_enabled(int enabled) {
  if (enabled) {
    stargraph::set_warning_handler([](std::string_view m) {
      std::fprintf(stderr, "warning: %.*s\n", static_cast<int>(m.size()), m.data());
    });
  } else {
    stargraph::set_warning_handler({});
  }
}

sg_status sg_config_load(const char* path, sg_config* out) {
  return guarded(
      [&] {
        const stargraph::ConfigValues c = stargraph::load_config(path);
        *out = sg_config{};
        if (c.seed) out->has_seed = 1, out->seed = *c.seed;
        if (c.v) out->has_v = 1, out->v = *c.v;
        if (c.l_bar) out->has_l_bar = 1, out->l_bar = *c.l_bar;
        if (c.delta_l) out->has_delta_l = 1, out->delta_l = *c.delta_l;
        if (c.sample_count) out->has_sample_count = 1, out->sample_count = *c.sample_count;
      },
      path, out);
}

sg_status sg_lengths_create(const double* values, size_t v, sg_lengths** out) {
  return guarded(
      [&] {
        *out = new sg_lengths{stargraph::BondLengths(std::vector<double>(values, values + v))};
      },
      values, out);
}

sg_status sg_lengths_generate(double l_bar, double delta_l, size_t v, uint64_t seed, sg_lengths** out) {
  return guarded([&] { *out = new sg_lengths{stargraph::generate_lengths({l_bar, delta_l}, v, seed)}; }, out);
}

void sg_lengths_free(sg_lengths* lengths) { delete lengths; }

size_t sg_lengths_size(const sg_lengths* lengths) { return lengths ? lengths->value.size() : 0; }

sg_status sg_lengths_values(const sg_lengths* lengths, double* out, size_t capacity) {
  return guarded([&] { copy_values(lengths->value.values(), out, capacity); }, lengths, out);
}

double sg_mean_density(const sg_lengths* lengths) {
  return lengths ? stargraph::mean_density(lengths->value) : 0.0;
}

sg_status sg_eval_z(const sg_lengths* lengths, double k, double* out) {
  return guarded([&] { *out = stargraph::eval_z(k, lengths->value); }, lengths, out);
}

sg_status sg_eval_z_prime(const sg_lengths* lengths, double k, double* out) {
  return guarded([&] { *out = stargraph::eval_z_prime(k, lengths->value); }, lengths, out);
}

sg_status sg_spectrum_compute(const sg_lengths* lengths, size_t n_eigs, int threads, sg_spectrum** out) {
  return guarded([&] { *out = new sg_spectrum{stargraph::eigenvalues(lengths->value, n_eigs, threads)}; },
                 lengths, out);
}

sg_status sg_spectrum_random(const sg_lengths* lengths, size_t count, size_t n_max, uint64_t seed, int threads,
                             sg_spectrum** out) {
  return guarded(
      [&] {
        *out = new sg_spectrum{stargraph::random_eigenvalues(lengths->value, count, n_max, seed, threads)};
      },
      lengths, out);
}

void sg_spectrum_free(sg_spectrum* spectrum) { delete spectrum; }

size_t sg_spectrum_size(const sg_spectrum* spectrum) { return spectrum ? spectrum->points.size() : 0; }

sg_status sg_spectrum_get(const sg_spectrum* spectrum, size_t i, sg_spectral_point* out) {
  return guarded(
      [&] {
        if (i >= spectrum->points.size()) throw stargraph::invalid_argument("spectrum index out of range");
        const auto& p = spectrum->points[i];
        *out = {p.index, p.k, p.z_prime, p.bracket_lo, p.bracket_hi};
      },
      spectrum, out);
}

sg_status sg_spectrum_write_csv(const sg_spectrum* spectrum, const char* path) {
  return guarded([&] { stargraph::write_spectrum_csv(path, spectrum->points); }, spectrum, path);
}

sg_status sg_eigenfunction_amplitudes(const sg_lengths* lengths, const sg_spectral_point* point,
                                      double* amplitude_sq, size_t capacity, double* norm_constant_sq) {
  return guarded(
      [&] {
        const stargraph::SpectralPoint p{point->index, point->k, point->z_prime, point->bracket_lo,
                                         point->bracket_hi};
        const stargraph::Eigenfunction ef = stargraph::amplitudes(p, lengths->value);
        copy_values(ef.amplitude_sq, amplitude_sq, capacity);
        *norm_constant_sq = ef.norm_constant_sq;
      },
      lengths, point, amplitude_sq, norm_constant_sq);
}

sg_status sg_weyl_count_check(const sg_lengths* lengths, double k_max, int threads, sg_weyl_count* out) {
  return guarded(
      [&] {
        const auto w = stargraph::weyl_count_check(lengths->value, k_max, threads);
        *out = {w.zero_count, w.pole_count, w.smooth_count};
      },
      lengths, out);
}

sg_status sg_samples_create(const double* values, size_t n, sg_samples** out) {
  return guarded(
      [&] {
        *out = new sg_samples{stargraph::EmpiricalDistribution(std::vector<double>(values, values + n))};
      },
      values, out);
}

void sg_samples_free(sg_samples* samples) { delete samples; }

size_t sg_samples_size(const sg_samples* samples) { return samples ? samples->value.size() : 0; }

sg_status sg_samples_values(const sg_samples* samples, double* out, size_t capacity) {
  return guarded([&] { copy_values(samples->value.values(), out, capacity); }, samples, out);
}

sg_status sg_samples_write_csv(const sg_samples* samples, const char* path) {
  return guarded([&] { stargraph::write_values_csv(path, samples->value.values()); }, samples, path);
}

sg_status sg_scaled_z_prime(const sg_spectrum* spectrum, const sg_lengths* lengths, sg_samples** out) {
  return guarded(
      [&] {
        *out = new sg_samples{
            stargraph::EmpiricalDistribution(stargraph::scaled_z_prime(spectrum->points, lengths->value))};
      },
      spectrum, lengths, out);
}

sg_status sg_scaled_amplitudes(const sg_spectrum* spectrum, const sg_lengths* lengths, size_t bond,
                               sg_samples** out) {
  return guarded(
      [&] {
        *out = new sg_samples{stargraph::EmpiricalDistribution(
            stargraph::scaled_amplitudes(spectrum->points, lengths->value, bond))};
      },
      spectrum, lengths, out);
}

sg_status sg_sample_z_over_k(const sg_lengths* lengths, double k_max, size_t n_samples, uint64_t seed,
                             int threads, sg_samples** out, size_t* discarded) {
  return guarded(
      [&] {
        stargraph::SamplingReport report;
        *out = new sg_samples{
            stargraph::sample_z_over_k(lengths->value, k_max, n_samples, seed, threads, &report)};
        if (discarded) *discarded = report.discarded;
      },
      lengths, out);
}

sg_status sg_sample_z_over_lengths(double l_bar, double delta_l, size_t v, double k, size_t n_samples,
                                   uint64_t seed, int threads, sg_samples** out) {
  return guarded(
      [&] {
        *out = new sg_samples{
            stargraph::sample_z_over_lengths({l_bar, delta_l}, v, k, n_samples, seed, threads)};
      },
      out);
}

sg_status sg_ks_distance(const sg_samples* samples, sg_reference reference, double l_bar, int threads,
                         double* out) {
  return guarded(
      [&] {
        switch (reference) {
          case SG_REF_CAUCHY:
            *out = stargraph::ks_distance(samples->value, stargraph::cauchy_cdf);
            return;
          case SG_REF_LIMIT_P: {
            const auto cdf = stargraph::limit_p_cdf_table(l_bar, threads);
            *out = stargraph::ks_distance(samples->value, [&cdf](double x) { return cdf(x); });
            return;
          }
          case SG_REF_LIMIT_Q: {
            const auto cdf = stargraph::limit_q_cdf_table(stargraph::tabulate_limit_q(l_bar, {}, threads));
            *out = stargraph::ks_distance(samples->value, [&cdf](double x) { return cdf(x); });
            return;
          }
        }
        throw stargraph::invalid_argument("unknown reference distribution");
      },
      samples, out);
}

double sg_ks_99_threshold(size_t n) { return stargraph::ks_99_threshold(n); }

sg_status sg_write_summary_json(const char* path, size_t n, double ks) {
  return guarded([&] { stargraph::write_summary_json(path, n, ks); }, path);
}

sg_status sg_ccdf_log_slope(const sg_samples* samples, double x_lo, double x_hi, double* out) {
  return guarded([&] { *out = stargraph::ccdf_log_slope(samples->value, x_lo, x_hi); }, samples, out);
}

sg_status sg_eigen_fraction(const double* values, size_t n, double threshold, double* estimate,
                            double* std_error) {
  return guarded(
      [&] {
        const auto e = stargraph::eigen_fraction(std::span<const double>(values, n), threshold);
        *estimate = e.estimate;
        *std_error = e.std_error;
      },
      values, estimate, std_error);
}

sg_status sg_histogram(const sg_samples* samples, size_t bins, double lo, double hi, sg_curve** out) {
  return guarded([&] { *out = new sg_curve{stargraph::histogram(samples->value, bins, lo, hi)}; }, samples, out);
}

sg_status sg_limit_p_curve(double l_bar, double x_min, double x_max, size_t points, int threads,
                           sg_curve** out) {
  return guarded(
      [&] {
        stargraph::PCurveOptions o;
        if (x_min > 0.0) o.y_min = x_min;
        if (x_max > 0.0) o.y_max = x_max;
        if (points > 0) o.points = points;
        *out = new sg_curve{stargraph::tabulate_limit_p(l_bar, o, threads)};
      },
      out);
}

sg_status sg_limit_q_curve(double l_bar, double x_min, double x_max, size_t points, int threads,
                           sg_curve** out) {
  return guarded(
      [&] {
        stargraph::QCurveOptions o;
        if (x_min > 0.0) o.eta_min = x_min;
        if (x_max > 0.0) o.eta_max = x_max;
        if (points > 0) o.points = points;
        *out = new sg_curve{stargraph::tabulate_limit_q(l_bar, o, threads)};
      },
      out);
}

sg_status sg_curve_create(const double* x, const double* pdf, size_t n, sg_curve** out) {
  return guarded(
      [&] {
        if (n < 2) throw stargraph::invalid_argument("curve needs at least 2 points");
        stargraph::DensityCurve c;
        c.x.assign(x, x + n);
        c.pdf.assign(pdf, pdf + n);
        if (!std::is_sorted(c.x.begin(), c.x.end()) || std::adjacent_find(c.x.begin(), c.x.end()) != c.x.end()) {
          throw stargraph::invalid_argument("curve x values must be strictly ascending");
        }
        for (std::size_t i = 0; i + 1 < n; ++i) c.mass += 0.5 * (c.x[i + 1] - c.x[i]) * (c.pdf[i] + c.pdf[i + 1]);
        *out = new sg_curve{std::move(c)};
      },
      x, pdf, out);
}

void sg_curve_free(sg_curve* curve) { delete curve; }

size_t sg_curve_size(const sg_curve* curve) { return curve ? curve->value.x.size() : 0; }

sg_status sg_curve_get(const sg_curve* curve, size_t i, double* x, double* pdf) {
  return guarded(
      [&] {
        if (i >= curve->value.x.size()) throw stargraph::invalid_argument("curve index out of range");
        *x = curve->value.x[i];
        *pdf = curve->value.pdf[i];
      },
      curve, x, pdf);
}

double sg_curve_mass(const sg_curve* curve) { return curve ? curve->value.mass : 0.0; }

double sg_curve_eval(const sg_curve* curve, double x) { return curve ? curve->value(x) : 0.0; }

sg_status sg_curve_write_csv(const sg_curve* curve, const char* path) {
  return guarded([&] { stargraph::write_curve_csv(path, curve->value); }, curve, path);
}

sg_status sg_curve_write_json(const sg_curve* curve, const char* path) {
  return guarded([&] { stargraph::write_curve_json(path, curve->value); }, curve, path);
}

sg_status sg_histogram_write_csv(const sg_curve* histogram, const char* path) {
  return guarded([&] { stargraph::write_histogram_csv(path, histogram->value); }, histogram, path);
}

sg_status sg_abel_value_distribution(const sg_curve* q, double r, double* out) {
  return guarded([&] { *out = stargraph::abel_value_distribution(q->value, r); }, q, out);
}

double sg_erf(double x) { return stargraph::erf(x); }
double sg_erfc(double x) { return stargraph::erfc(x); }
double sg_dawson(double x) { return stargraph::dawson(x); }
double sg_cauchy_pdf(double y) { return stargraph::cauchy_pdf(y); }
double sg_cauchy_cdf(double y) { return stargraph::cauchy_cdf(y); }

sg_status sg_limit_p(double y, double l_bar, double* out) {
  return guarded([&] { *out = stargraph::limit_p(y, l_bar); }, out);
}

sg_status sg_limit_p_cdf(double y, double l_bar, double* out) {
  return guarded([&] { *out = stargraph::limit_p_cdf(y, l_bar); }, out);
}

sg_status sg_limit_q(double eta, double l_bar, double* out) {
  return guarded([&] { *out = stargraph::limit_q(eta, l_bar); }, out);
}

sg_status sg_q_tail_coefficient(double l_bar, double* out) {
  return guarded([&] { *out = stargraph::q_tail_coefficient(l_bar); }, out);
}

sg_status sg_surface_pv(const sg_lengths* lengths, const double* thresholds, size_t count, size_t n_samples,
                        uint64_t seed, int threads, sg_surface_estimate* out) {
  return guarded(
      [&] {
        const auto est = stargraph::finite_v_pv(lengths->value, std::span<const double>(thresholds, count),
                                                n_samples, seed, threads);
        for (std::size_t i = 0; i < count; ++i) out[i] = to_c(est[i]);
      },
      lengths, thresholds, out);
}

sg_status sg_surface_qv(const sg_lengths* lengths, size_t bond, const double* thresholds, size_t count,
                        size_t n_samples, uint64_t seed, int threads, sg_surface_estimate* out) {
  return guarded(
      [&] {
        const auto est = stargraph::finite_v_qv(lengths->value, bond, std::span<const double>(thresholds, count),
                                                n_samples, seed, threads);
        for (std::size_t i = 0; i < count; ++i) out[i] = to_c(est[i]);
      },
      lengths, thresholds, out);
}

sg_status sg_write_surface_json(const char* path, const sg_surface_estimate* e) {
  return guarded(
      [&] {
        stargraph::SurfaceEstimate s;
        s.estimate = e->estimate;
        s.std_error = e->std_error;
        s.n_samples = e->n_samples;
        s.max_weight_fraction = e->max_weight_fraction;
        stargraph::write_surface_json(path, s);
      },
      path, e);
}

double sg_golden_alpha(void) { return stargraph::golden_alpha(); }

sg_status sg_rect_spectrum_create(double alpha, size_t k, sg_rect_spectrum** out) {
  return guarded([&] { *out = new sg_rect_spectrum{stargraph::rectangle_levels(alpha, k)}; }, out);
}

void sg_rect_spectrum_free(sg_rect_spectrum* spectrum) { delete spectrum; }

size_t sg_rect_spectrum_size(const sg_rect_spectrum* spectrum) { return spectrum ? spectrum->value.size() : 0; }

sg_status sg_rect_level(const sg_rect_spectrum* spectrum, size_t index, int* n, int* m, double* energy) {
  return guarded(
      [&] {
        const double e = spectrum->value.energy(index);
        const auto& level = spectrum->value.levels[index - 1];
        if (n) *n = level.n;
        if (m) *m = level.m;
        if (energy) *energy = e;
      },
      spectrum);
}

sg_status sg_rect_spectrum_write_csv(const sg_rect_spectrum* spectrum, const char* path) {
  return guarded([&] { stargraph::write_rectangle_csv(path, spectrum->value); }, spectrum, path);
}

sg_status sg_seba_make_window(const sg_rect_spectrum* spectrum, size_t n_min, size_t n_max, double l_bar,
                              sg_seba_window* out) {
  return guarded(
      [&] {
        const auto w = stargraph::make_window(spectrum->value, n_min, n_max, l_bar);
        *out = {w.n_min, w.n_max, w.e_min, w.e_max, w.mean_density, w.l_bar, w.c};
      },
      spectrum, out);
}

sg_status sg_seba_determinant_samples(const sg_rect_spectrum* spectrum, const sg_seba_window* window,
                                      size_t n_samples, uint64_t seed, int threads, size_t sum_levels,
                                      sg_samples** out) {
  return guarded(
      [&] {
        *out = new sg_samples{stargraph::seba_determinant_samples(spectrum->value, from_c(*window), n_samples,
                                                                  seed, threads, sum_levels)};
      },
      spectrum, window, out);
}

sg_status sg_seba_coefficient_samples(const sg_rect_spectrum* spectrum, const sg_seba_window* window,
                                      size_t level_index, size_t n_samples, uint64_t seed, int threads,
                                      sg_samples** out) {
  return guarded(
      [&] {
        *out = new sg_samples{stargraph::seba_coefficient_samples(spectrum->value, from_c(*window), level_index,
                                                                  n_samples, seed, threads)};
      },
      spectrum, window, out);
}

size_t sg_preset_count(void) { return stargraph::experiment_presets().size(); }

sg_status sg_preset_get(size_t i, sg_preset* out) {
  return guarded(
      [&] {
        const auto& all = stargraph::experiment_presets();
        if (i >= all.size()) throw stargraph::invalid_argument("preset index out of range");
        const auto& p = all[i];
        *out = {p.name.c_str(), p.description.c_str(), p.v,          p.l_bar,       p.delta_l,
                p.samples,      p.index_range,         p.levels,     p.window_min,  p.window_max,
                p.level_index,  p.ks_bound};
      },
      out);
}

sg_status sg_preset_run(const char* name, uint64_t seed, int threads, const char* out_dir, sg_report** out) {
  return guarded(
      [&] {
        const std::filesystem::path dir = out_dir ? std::filesystem::path(out_dir) : std::filesystem::path();
        auto report = stargraph::run_preset(name, seed, threads, dir);
        std::string json = report.to_json();
        *out = new sg_report{std::move(report), std::move(json)};
      },
      name, out);
}

void sg_report_free(sg_report* report) { delete report; }

int sg_report_passed(const sg_report* report) { return report && report->value.passed() ? 1 : 0; }

double sg_report_seconds(const sg_report* report) { return report ? report->value.seconds : 0.0; }

const char* sg_report_json(const sg_report* report) { return report ? report->json.c_str() : ""; }

size_t sg_report_file_count(const sg_report* report) { return report ? report->value.files.size() : 0; }

const char* sg_report_file(const sg_report* report, size_t i) {
  if (!report || i >= report->value.files.size()) return nullptr;
  return report->value.files[i].c_str();
}

int sg_selfcheck_count(void) { return stargraph::kCheckCount; }

sg_status sg_selfcheck_run(int id, uint64_t seed, int threads, sg_check_result* out) {
  return guarded(
      [&] {
        const auto r = stargraph::run_check(id, seed, threads);
        *out = sg_check_result{};
        out->id = r.id;
        out->passed = r.passed ? 1 : 0;
        out->value = r.value;
        out->threshold = r.threshold;
        out->seconds = r.seconds;
        copy_text(out->name, sizeof out->name, r.name);
        copy_text(out->detail, sizeof out->detail, r.detail);
      },
      out);
}

}  // extern "C"
