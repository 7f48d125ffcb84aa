// Command-line front end. Talks to the library only through the C API.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "stargraph/stargraph.h"

namespace {

constexpr double kPi = 3.14159265358979323846;

// Exit codes.
constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct api_failure {
  sg_status status;
  std::string message;
};

void check(sg_status status, const char* what) {
  if (status != SG_OK) throw api_failure{status, std::string(what) + ": " + sg_last_error()};
}

template <typename T, void (*Free)(T*)>
struct deleter {
  void operator()(T* p) const noexcept { Free(p); }
};

using lengths_ptr = std::unique_ptr<sg_lengths, deleter<sg_lengths, sg_lengths_free>>;
using spectrum_ptr = std::unique_ptr<sg_spectrum, deleter<sg_spectrum, sg_spectrum_free>>;
using samples_ptr = std::unique_ptr<sg_samples, deleter<sg_samples, sg_samples_free>>;
using curve_ptr = std::unique_ptr<sg_curve, deleter<sg_curve, sg_curve_free>>;
using rect_ptr = std::unique_ptr<sg_rect_spectrum, deleter<sg_rect_spectrum, sg_rect_spectrum_free>>;
using report_ptr = std::unique_ptr<sg_report, deleter<sg_report, sg_report_free>>;

struct Common {
  std::uint64_t seed = 1;
  std::string out = ".";
  int threads = 0;
  std::optional<std::size_t> v;
  std::optional<double> l_bar;
  std::optional<double> delta_l;
  std::optional<std::size_t> samples;
  std::optional<double> k_max;
  std::vector<double> lengths;
  std::string config;
  bool seed_given = false;
};

void apply_config(Common& c) {
  if (c.config.empty()) return;
  sg_config cfg{};
  check(sg_config_load(c.config.c_str(), &cfg), "config");
  if (cfg.has_seed && !c.seed_given) c.seed = cfg.seed;
  if (cfg.has_v && !c.v) c.v = cfg.v;
  if (cfg.has_l_bar && !c.l_bar) c.l_bar = cfg.l_bar;
  if (cfg.has_delta_l && !c.delta_l) c.delta_l = cfg.delta_l;
  if (cfg.has_sample_count && !c.samples) c.samples = cfg.sample_count;
}

std::string out_path(const Common& c, const std::string& name) {
  return (std::filesystem::path(c.out) / name).string();
}

lengths_ptr make_lengths(const Common& c, std::size_t default_v, double default_delta_l) {
  sg_lengths* raw = nullptr;
  if (!c.lengths.empty()) {
    check(sg_lengths_create(c.lengths.data(), c.lengths.size(), &raw), "lengths");
  } else {
    check(sg_lengths_generate(c.l_bar.value_or(2.0), c.delta_l.value_or(default_delta_l), c.v.value_or(default_v),
                              c.seed, &raw),
          "lengths");
  }
  return lengths_ptr(raw);
}

double ks_and_write(const Common& c, const sg_samples* s, sg_reference ref, double l_bar, double lo, double hi,
                    std::size_t bins) {
  double ks = 0.0;
  check(sg_ks_distance(s, ref, l_bar, c.threads, &ks), "ks");
  sg_curve* h = nullptr;
  check(sg_histogram(s, bins, lo, hi, &h), "histogram");
  curve_ptr hist(h);
  check(sg_samples_write_csv(s, out_path(c, "values.csv").c_str()), "write");
  check(sg_histogram_write_csv(hist.get(), out_path(c, "histogram.csv").c_str()), "write");
  const std::size_t n = sg_samples_size(s);
  check(sg_write_summary_json(out_path(c, "summary.json").c_str(), n, ks), "write");
  std::printf("n=%zu ks=%.6g ks_99_threshold=%.6g\n", n, ks, sg_ks_99_threshold(n));
  return ks;
}

void add_common(CLI::App& app, Common& c) {
  app.add_option("--seed", c.seed, "random seed")->each([&c](const std::string&) { c.seed_given = true; });
  app.add_option("--out", c.out, "output directory");
  app.add_option("--threads", c.threads, "worker threads (0 = all cores)");
  app.add_option("--v", c.v, "number of bonds");
  app.add_option("--l-bar", c.l_bar, "lower edge of the bond-length box");
  app.add_option("--delta-l", c.delta_l, "width of the bond-length box");
  app.add_option("--samples", c.samples, "number of samples");
  app.add_option("--k-max", c.k_max, "upper end of the k range");
  app.add_option("--lengths", c.lengths, "explicit bond lengths (comma separated)")->delimiter(',');
  app.add_option("--config", c.config, "configuration file (key = value lines)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral statistics of quantum star graphs and the Seba billiard"};
  app.require_subcommand(1);
  app.fallthrough();
  Common c;
  add_common(app, c);

  // eigen
  std::size_t n_eigs = 1000;
  std::size_t index_range = 0;
  auto* eigen = app.add_subcommand("eigen", "eigen-wavenumbers k_n to spectrum.csv");
  eigen->add_option("--n", n_eigs, "number of eigenvalues (k_0 = 0 included)");
  eigen->add_option("--index-range", index_range, "draw --n indices uniformly from 1..N instead");

  // dist-z-k, dist-z-lengths
  std::size_t bins = 80;
  auto* zk = app.add_subcommand("dist-z-k", "Z/v over uniform k against the Cauchy law");
  zk->add_option("--bins", bins, "histogram bins on [-8, 8]");
  double k_fixed = 1e4;
  auto* zl = app.add_subcommand("dist-z-lengths", "Z(k, L)/v over random lengths against the Cauchy law");
  zl->add_option("--k", k_fixed, "fixed wavenumber");
  zl->add_option("--bins", bins, "histogram bins on [-8, 8]");

  // dist-zprime, dist-amp
  std::size_t spectral_range = 100000000;
  std::size_t bond = 1;
  auto* zp = app.add_subcommand("dist-zprime", "Z'(k_n)/v^2 against the limit density P");
  zp->add_option("--index-range", spectral_range, "eigenvalue indices drawn from 1..N (0: the first ones)");
  zp->add_option("--bins", bins, "histogram bins on [0, 10]");
  auto* amp = app.add_subcommand("dist-amp", "v^2 A_i against the limit density Q");
  amp->add_option("--index-range", spectral_range, "eigenvalue indices drawn from 1..N (0: the first ones)");
  amp->add_option("--bond", bond, "bond i (1-based)");
  amp->add_option("--bins", bins, "histogram bins on [0, 10]");

  // limit-p, limit-q, abel
  double grid_min = 0.0;
  double grid_max = 0.0;
  std::size_t points = 0;
  auto* lp = app.add_subcommand("limit-p", "tabulate P to curve.csv and curve.json");
  auto* lq = app.add_subcommand("limit-q", "tabulate Q to curve.csv and curve.json");
  for (auto* sub : {lp, lq}) {
    sub->add_option("--grid-min", grid_min, "smallest grid point");
    sub->add_option("--grid-max", grid_max, "largest grid point");
    sub->add_option("--points", points, "number of grid points");
  }
  double r_max = 3.0;
  std::size_t r_points = 300;
  auto* abel = app.add_subcommand("abel", "eigenfunction value density R(r) to abel.csv");
  abel->add_option("--r-max", r_max, "tabulate R on [-r_max, r_max]");
  abel->add_option("--points", r_points, "number of r values (cell midpoints)");

  // surface
  std::vector<double> thresholds{1.0};
  std::string quantity = "pv";
  auto* surface = app.add_subcommand("surface", "finite-v CDFs from the invariant surface measure");
  surface->add_option("--threshold", thresholds, "threshold(s) R (comma separated)")->delimiter(',');
  surface->add_option("--quantity", quantity, "pv (Z'/v^2) or qv (v^2 A_i)")
      ->check(CLI::IsMember({"pv", "qv"}));
  surface->add_option("--bond", bond, "bond i for qv (1-based)");

  // seba
  std::size_t levels = 3000, window_min = 1000, window_max = 2000, sum_levels = 0, level_index = 1500;
  auto* sd = app.add_subcommand("seba-det", "Seba spectral sum against the Cauchy law");
  auto* sc = app.add_subcommand("seba-coef", "Seba eigenfunction coefficients and the constant c");
  for (auto* sub : {sd, sc}) {
    sub->add_option("--levels", levels, "number of rectangle levels K");
    sub->add_option("--window-min", window_min, "first level index of the energy window");
    sub->add_option("--window-max", window_max, "last level index of the energy window");
    sub->add_option("--bins", bins, "histogram bins");
  }
  sd->add_option("--sum-levels", sum_levels, "sum over the lowest levels only (0: all)");
  sc->add_option("--level-index", level_index, "coefficient index i (1-based)");

  // reproduce, selfcheck
  std::string preset;
  auto* reproduce = app.add_subcommand("reproduce", "run a figure preset (fig3 .. fig7)");
  reproduce->add_option("preset", preset, "preset name")->required();
  int only = 0;
  auto* selfcheck = app.add_subcommand("selfcheck", "run the acceptance suite");
  selfcheck->add_option("--only", only, "run a single check by number");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    apply_config(c);
    const double l_bar = c.l_bar.value_or(2.0);
    const std::size_t n_samples = c.samples.value_or(100000);
    std::filesystem::create_directories(c.out);

    if (eigen->parsed()) {
      const lengths_ptr lengths = make_lengths(c, 7, 0.1);
      sg_spectrum* raw = nullptr;
      if (index_range > 0) {
        check(sg_spectrum_random(lengths.get(), n_eigs, index_range, c.seed, c.threads, &raw), "eigen");
      } else {
        check(sg_spectrum_compute(lengths.get(), n_eigs, c.threads, &raw), "eigen");
      }
      const spectrum_ptr spectrum(raw);
      check(sg_spectrum_write_csv(spectrum.get(), out_path(c, "spectrum.csv").c_str()), "write");
      std::printf("wrote %zu eigenvalues to %s\n", sg_spectrum_size(spectrum.get()),
                  out_path(c, "spectrum.csv").c_str());
    } else if (zk->parsed()) {
      const lengths_ptr lengths = make_lengths(c, 7, 0.1);
      sg_samples* raw = nullptr;
      std::size_t discarded = 0;
      check(sg_sample_z_over_k(lengths.get(), c.k_max.value_or(1e4 * kPi / l_bar), n_samples, c.seed, c.threads,
                               &raw, &discarded),
            "dist-z-k");
      const samples_ptr s(raw);
      ks_and_write(c, s.get(), SG_REF_CAUCHY, l_bar, -8.0, 8.0, bins);
      std::printf("pole-guard discards: %zu\n", discarded);
    } else if (zl->parsed()) {
      sg_samples* raw = nullptr;
      check(sg_sample_z_over_lengths(l_bar, c.delta_l.value_or(0.1), c.v.value_or(7), k_fixed, n_samples, c.seed,
                                     c.threads, &raw),
            "dist-z-lengths");
      const samples_ptr s(raw);
      ks_and_write(c, s.get(), SG_REF_CAUCHY, l_bar, -8.0, 8.0, bins);
    } else if (zp->parsed() || amp->parsed()) {
      const bool amplitudes = amp->parsed();
      const lengths_ptr lengths = make_lengths(c, amplitudes ? 50 : 70, amplitudes ? 0.002 : 0.1 / 70.0);
      sg_spectrum* raw = nullptr;
      if (spectral_range > 0) {
        check(sg_spectrum_random(lengths.get(), n_samples, spectral_range, c.seed, c.threads, &raw), "eigen");
      } else {
        check(sg_spectrum_compute(lengths.get(), n_samples + 1, c.threads, &raw), "eigen");
      }
      const spectrum_ptr spectrum(raw);
      sg_samples* values = nullptr;
      if (amplitudes) {
        if (bond < 1) throw api_failure{SG_ERR_INVALID_ARGUMENT, "--bond is 1-based"};
        check(sg_scaled_amplitudes(spectrum.get(), lengths.get(), bond - 1, &values), "dist-amp");
      } else {
        check(sg_scaled_z_prime(spectrum.get(), lengths.get(), &values), "dist-zprime");
      }
      const samples_ptr s(values);
      ks_and_write(c, s.get(), amplitudes ? SG_REF_LIMIT_Q : SG_REF_LIMIT_P, l_bar, 0.0, 10.0, bins);
    } else if (lp->parsed() || lq->parsed()) {
      sg_curve* raw = nullptr;
      if (lp->parsed()) {
        check(sg_limit_p_curve(l_bar, grid_min, grid_max, points, c.threads, &raw), "limit-p");
      } else {
        check(sg_limit_q_curve(l_bar, grid_min, grid_max, points, c.threads, &raw), "limit-q");
      }
      const curve_ptr curve(raw);
      check(sg_curve_write_csv(curve.get(), out_path(c, "curve.csv").c_str()), "write");
      check(sg_curve_write_json(curve.get(), out_path(c, "curve.json").c_str()), "write");
      std::printf("points=%zu mass=%.10g\n", sg_curve_size(curve.get()), sg_curve_mass(curve.get()));
    } else if (abel->parsed()) {
      if (r_points < 2 || !(r_max > 0.0)) throw api_failure{SG_ERR_INVALID_ARGUMENT, "abel: need --points >= 2 and --r-max > 0"};
      sg_curve* raw = nullptr;
      check(sg_limit_q_curve(l_bar, 0.0, 0.0, 0, c.threads, &raw), "abel");
      const curve_ptr q(raw);
      std::vector<double> r(r_points), value(r_points);
      for (std::size_t i = 0; i < r_points; ++i) {
        // Cell midpoints: R diverges logarithmically at r = 0, which is never a node.
        r[i] = -r_max + 2.0 * r_max * (static_cast<double>(i) + 0.5) / static_cast<double>(r_points);
        check(sg_abel_value_distribution(q.get(), r[i], &value[i]), "abel");
      }
      sg_curve* out = nullptr;
      check(sg_curve_create(r.data(), value.data(), r_points, &out), "abel");
      const curve_ptr curve(out);
      check(sg_curve_write_csv(curve.get(), out_path(c, "abel.csv").c_str()), "write");
      std::printf("wrote R(r) on [-%g, %g] to %s\n", r_max, r_max, out_path(c, "abel.csv").c_str());
    } else if (surface->parsed()) {
      const lengths_ptr lengths = make_lengths(c, 4, 1.0);
      std::vector<sg_surface_estimate> est(thresholds.size());
      const std::size_t mc = c.samples.value_or(1000000);
      if (quantity == "pv") {
        check(sg_surface_pv(lengths.get(), thresholds.data(), thresholds.size(), mc, c.seed, c.threads, est.data()),
              "surface");
      } else {
        if (bond < 1) throw api_failure{SG_ERR_INVALID_ARGUMENT, "--bond is 1-based"};
        check(sg_surface_qv(lengths.get(), bond - 1, thresholds.data(), thresholds.size(), mc, c.seed, c.threads,
                            est.data()),
              "surface");
      }
      for (std::size_t i = 0; i < est.size(); ++i) {
        const std::string name = est.size() == 1 ? "surface.json" : "surface_" + std::to_string(i + 1) + ".json";
        check(sg_write_surface_json(out_path(c, name).c_str(), &est[i]), "write");
        std::printf("R=%.6g estimate=%.6g std_error=%.3g max_weight_fraction=%.3g\n", thresholds[i],
                    est[i].estimate, est[i].std_error, est[i].max_weight_fraction);
        if (est[i].max_weight_fraction > 0.01) {
          std::fprintf(stderr, "warning: largest importance weight is %.3g of the total\n",
                       est[i].max_weight_fraction);
        }
      }
    } else if (sd->parsed() || sc->parsed()) {
      sg_rect_spectrum* raw = nullptr;
      check(sg_rect_spectrum_create(sg_golden_alpha(), levels, &raw), "rectangle");
      const rect_ptr rect(raw);
      sg_seba_window window{};
      check(sg_seba_make_window(rect.get(), window_min, window_max, l_bar, &window), "window");
      check(sg_rect_spectrum_write_csv(rect.get(), out_path(c, "rectangle.csv").c_str()), "write");
      sg_samples* values = nullptr;
      if (sd->parsed()) {
        check(sg_seba_determinant_samples(rect.get(), &window, n_samples, c.seed, c.threads, sum_levels, &values),
              "seba-det");
        const samples_ptr s(values);
        ks_and_write(c, s.get(), SG_REF_CAUCHY, l_bar, -8.0, 8.0, bins);
      } else {
        check(sg_seba_coefficient_samples(rect.get(), &window, level_index, n_samples, c.seed, c.threads, &values),
              "seba-coef");
        const samples_ptr s(values);
        ks_and_write(c, s.get(), SG_REF_LIMIT_Q, l_bar, 0.0, 10.0, bins);
        double slope = 0.0;
        check(sg_ccdf_log_slope(s.get(), 10.0, 100.0, &slope), "slope");
        std::printf("c=%.6g mean_density=%.6g ccdf_slope_10_100=%.4f\n", window.c, window.mean_density, slope);
      }
    } else if (reproduce->parsed()) {
      sg_report* raw = nullptr;
      check(sg_preset_run(preset.c_str(), c.seed, c.threads, (std::filesystem::path(c.out) / preset).string().c_str(),
                          &raw),
            "reproduce");
      const report_ptr report(raw);
      std::fputs(sg_report_json(report.get()), stdout);
      std::printf("%s in %.2f s\n", sg_report_passed(report.get()) ? "passed" : "FAILED",
                  sg_report_seconds(report.get()));
      return sg_report_passed(report.get()) ? kExitOk : kExitFailure;
    } else if (selfcheck->parsed()) {
      bool all = true;
      for (int id = 1; id <= sg_selfcheck_count(); ++id) {
        if (only != 0 && id != only) continue;
        sg_check_result r{};
        check(sg_selfcheck_run(id, c.seed, c.threads, &r), "selfcheck");
        std::printf("%s %2d %-44s value=%-12.6g threshold=%-10.6g (%.2f s) %s\n", r.passed ? "PASS" : "FAIL", r.id,
                    r.name, r.value, r.threshold, r.seconds, r.detail);
        std::fflush(stdout);
        all = all && r.passed;
      }
      return all ? kExitOk : kExitFailure;
    }
  } catch (const api_failure& f) {
    std::fprintf(stderr, "error: %s\n", f.message.c_str());
    return f.status == SG_ERR_INVALID_ARGUMENT ? kExitUsage : kExitFailure;
  } catch (const std::filesystem::filesystem_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitFailure;
  }
  return kExitOk;
}
