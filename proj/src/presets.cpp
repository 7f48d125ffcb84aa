#include "stargraph/presets.hpp"

#include <chrono>
#include <cmath>
#include <numbers>

#include "json.hpp"

#include "stargraph/core_model.hpp"
#include "stargraph/error.hpp"
#include "stargraph/io.hpp"
#include "stargraph/limit_densities.hpp"
#include "stargraph/seba.hpp"
#include "stargraph/secular.hpp"
#include "stargraph/statistics.hpp"

namespace stargraph {

namespace {

using std::numbers::pi;

PresetCheck upper_check(std::string name, double value, double bound) {
  return {std::move(name), value, 0.0, bound, value < bound};
}

PresetCheck range_check(std::string name, double value, double lo, double hi) {
  return {std::move(name), value, lo, hi, value >= lo && value <= hi};
}

DensityCurve sampled_curve(const std::vector<double>& x, double (*pdf)(double)) {
  DensityCurve c;
  c.x = x;
  for (double xi : x) c.pdf.push_back(pdf(xi));
  c.mass = 1.0;
  return c;
}

class Writer {
 public:
  Writer(const std::filesystem::path& dir, PresetReport& report) : dir_(dir), report_(report) {}

  bool enabled() const noexcept { return !dir_.empty(); }

  template <typename Fn>
  void file(const std::string& name, Fn&& write) {
    if (!enabled()) return;
    write(dir_ / name);
    report_.files.push_back((dir_ / name).string());
  }

 private:
  std::filesystem::path dir_;
  PresetReport& report_;
};

void write_common(Writer& w, const EmpiricalDistribution& emp, const DensityCurve& hist, double ks) {
  w.file("values.csv", [&](const auto& p) { write_values_csv(p, emp.values()); });
  w.file("histogram.csv", [&](const auto& p) { write_histogram_csv(p, hist); });
  w.file("summary.json", [&](const auto& p) { write_summary_json(p, emp.size(), ks); });
}

void run_z_over_k(const ExperimentPreset& ps, std::uint64_t seed, int threads, Writer& w, PresetReport& r) {
  const BondLengths lengths = generate_lengths({ps.l_bar, ps.delta_l}, ps.v, seed);
  const double k_max = 1e4 * pi / ps.l_bar;
  const EmpiricalDistribution emp = sample_z_over_k(lengths, k_max, ps.samples, seed, threads);
  const double ks = ks_distance(emp, cauchy_cdf);
  r.checks.push_back(upper_check("ks_vs_cauchy", ks, ps.ks_bound));
  const DensityCurve hist = histogram(emp, kPresetHistogramBins, -8.0, 8.0);
  write_common(w, emp, hist, ks);
  w.file("analytic.csv", [&](const auto& p) { write_curve_csv(p, sampled_curve(hist.x, cauchy_pdf)); });
}

void run_spectral(const ExperimentPreset& ps, bool amplitudes, std::uint64_t seed, int threads, Writer& w,
                  PresetReport& r) {
  const BondLengths lengths = generate_lengths({ps.l_bar, ps.delta_l}, ps.v, seed);
  const auto spectrum = random_eigenvalues(lengths, ps.samples, ps.index_range, seed, threads);
  const EmpiricalDistribution emp(amplitudes ? scaled_amplitudes(spectrum, lengths, 0)
                                             : scaled_z_prime(spectrum, lengths));
  DensityCurve analytic;
  double ks = 0.0;
  if (amplitudes) {
    analytic = tabulate_limit_q(ps.l_bar, {}, threads);
    const TabulatedCdf cdf = limit_q_cdf_table(analytic);
    ks = ks_distance(emp, [&cdf](double x) { return cdf(x); });
    r.checks.push_back(upper_check("ks_vs_q", ks, ps.ks_bound));
  } else {
    analytic = tabulate_limit_p(ps.l_bar, {}, threads);
    const TabulatedCdf cdf = limit_p_cdf_table(ps.l_bar, threads);
    ks = ks_distance(emp, [&cdf](double x) { return cdf(x); });
    r.checks.push_back(upper_check("ks_vs_p", ks, ps.ks_bound));
  }
  const DensityCurve hist = histogram(emp, kPresetHistogramBins, 0.0, 10.0);
  write_common(w, emp, hist, ks);
  w.file("spectrum.csv", [&](const auto& p) { write_spectrum_csv(p, spectrum); });
  w.file("analytic.csv", [&](const auto& p) { write_curve_csv(p, analytic); });
  w.file("analytic.json", [&](const auto& p) { write_curve_json(p, analytic); });
}

void run_seba(const ExperimentPreset& ps, bool coefficients, std::uint64_t seed, int threads, Writer& w,
              PresetReport& r) {
  const RectangleSpectrum spectrum = rectangle_levels(golden_alpha(), ps.levels);
  const SebaWindow window = make_window(spectrum, ps.window_min, ps.window_max, ps.l_bar);
  w.file("rectangle.csv", [&](const auto& p) { write_rectangle_csv(p, spectrum); });
  if (!coefficients) {
    const EmpiricalDistribution emp = seba_determinant_samples(spectrum, window, ps.samples, seed, threads);
    const double ks = ks_distance(emp, cauchy_cdf);
    r.checks.push_back(upper_check("ks_vs_cauchy", ks, ps.ks_bound));
    const DensityCurve hist = histogram(emp, kPresetHistogramBins, -8.0, 8.0);
    write_common(w, emp, hist, ks);
    w.file("analytic.csv", [&](const auto& p) { write_curve_csv(p, sampled_curve(hist.x, cauchy_pdf)); });
    return;
  }
  const double rel = std::abs(window.c - kSebaReferenceConstant) / kSebaReferenceConstant;
  r.checks.push_back(upper_check("c_relative_error", rel, 0.05));
  const EmpiricalDistribution emp =
      seba_coefficient_samples(spectrum, window, ps.level_index, ps.samples, seed, threads);
  r.checks.push_back(range_check("ccdf_slope_10_100", ccdf_log_slope(emp, 10.0, 100.0), -0.7, -0.3));
  const DensityCurve analytic = tabulate_limit_q(ps.l_bar, {}, threads);
  const TabulatedCdf cdf = limit_q_cdf_table(analytic);
  const double ks = ks_distance(emp, [&cdf](double x) { return cdf(x); });
  const DensityCurve hist = histogram(emp, kPresetHistogramBins, 0.0, 10.0);
  write_common(w, emp, hist, ks);
  w.file("analytic.csv", [&](const auto& p) { write_curve_csv(p, analytic); });
  w.file("analytic.json", [&](const auto& p) { write_curve_json(p, analytic); });
  w.file("window.json", [&](const auto& p) {
    nlohmann::json j;
    j["n_min"] = window.n_min;
    j["n_max"] = window.n_max;
    j["e_min"] = window.e_min;
    j["e_max"] = window.e_max;
    j["mean_density"] = window.mean_density;
    j["c"] = window.c;
    write_text(p, j.dump(2) + "\n");
  });
}

}  // namespace

const std::vector<ExperimentPreset>& experiment_presets() {
  static const std::vector<ExperimentPreset> presets = {
      {"fig3", "Z/v over uniform k against the Cauchy law", 7, 2.0, 0.1, 100000, 0, 0, 0, 0, 0, 0.02},
      {"fig4", "Z'(k_n)/v^2 for a 70-bond graph against P", 70, 2.0, 0.1 / 70.0, 100000, kDefaultIndexRange, 0,
       0, 0, 0, 0.03},
      {"fig5", "v^2 A_1 for a 50-bond graph against Q", 50, 2.0, 0.002, 100000, kDefaultIndexRange, 0, 0, 0, 0,
       0.05},
      {"fig6", "Seba spectral sum against the Cauchy law", 0, 2.0, 0.0, 100000, 0, 3000, 1000, 2000, 0, 0.05},
      {"fig7", "Seba eigenfunction coefficients and the constant c", 0, 2.0, 0.0, 100000, 0, 3000, 1000, 2000,
       1500, 0.0},
  };
  return presets;
}

const ExperimentPreset& find_preset(const std::string& name) {
  for (const auto& p : experiment_presets()) {
    if (p.name == name) return p;
  }
  throw invalid_argument("unknown preset '" + name + "' (expected fig3, fig4, fig5, fig6 or fig7)");
}

bool PresetReport::passed() const noexcept {
  for (const auto& c : checks) {
    if (!c.passed) return false;
  }
  return true;
}

std::string PresetReport::to_json() const {
  nlohmann::json j;
  j["preset"] = name;
  j["passed"] = passed();
  j["checks"] = nlohmann::json::array();
  for (const auto& c : checks) {
    j["checks"].push_back({{"name", c.name},
                           {"value", c.value},
                           {"bound_lo", c.bound_lo},
                           {"bound_hi", c.bound_hi},
                           {"passed", c.passed}});
    if (c.name.rfind("ks_vs_", 0) == 0) {
      j["ks"] = c.value;
      j["ks_bound"] = c.bound_hi;
      j["ks_below_bound"] = c.passed;
    }
  }
  return j.dump(2) + "\n";
}

PresetReport run_preset(const std::string& name, std::uint64_t seed, int threads,
                        const std::filesystem::path& out_dir) {
  const ExperimentPreset& ps = find_preset(name);
  const auto start = std::chrono::steady_clock::now();
  PresetReport report;
  report.name = name;
  Writer w(out_dir, report);
  if (name == "fig3") run_z_over_k(ps, seed, threads, w, report);
  if (name == "fig4") run_spectral(ps, false, seed, threads, w, report);
  if (name == "fig5") run_spectral(ps, true, seed, threads, w, report);
  if (name == "fig6") run_seba(ps, false, seed, threads, w, report);
  if (name == "fig7") run_seba(ps, true, seed, threads, w, report);
  w.file("report.json", [&](const auto& p) { write_text(p, report.to_json()); });
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace stargraph
