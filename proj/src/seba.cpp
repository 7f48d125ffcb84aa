#include "stargraph/seba.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "stargraph/error.hpp"
#include "stargraph/parallel.hpp"
#include "stargraph/rng.hpp"

namespace stargraph {

namespace {

using std::numbers::pi;

constexpr int kMaxRedraws = 1000;

double draw_energy(const std::vector<double>& energies, const SebaWindow& window, std::uint64_t seed,
                   std::size_t index) {
  RandomSequence rng(seed, RngStream::seba_energy, index);
  for (int attempt = 0; attempt < kMaxRedraws; ++attempt) {
    const double e = rng.uniform(window.e_min, window.e_max);
    const auto it = std::lower_bound(energies.begin(), energies.end(), e);
    bool clear = true;
    if (it != energies.end() && std::abs(*it - e) < kSebaLevelGuard) clear = false;
    if (it != energies.begin() && std::abs(*(it - 1) - e) < kSebaLevelGuard) clear = false;
    if (clear) return e;
  }
  throw numerical_error("seba: could not draw an energy away from the levels");
}

void check_window(const RectangleSpectrum& spectrum, const SebaWindow& window) {
  if (window.n_min < 1 || window.n_max > spectrum.size() || window.n_min >= window.n_max) {
    throw invalid_argument("seba: window must satisfy 1 <= n_min < n_max <= K");
  }
  if (!(window.mean_density > 0.0)) throw invalid_argument("seba: mean density must be positive");
}

}  // namespace

double golden_alpha() noexcept { return (std::sqrt(5.0) - 1.0) / 2.0; }

double RectangleSpectrum::energy(std::size_t index) const {
  if (index < 1 || index > levels.size()) throw invalid_argument("rectangle spectrum: level index out of range");
  return levels[index - 1].energy;
}

std::vector<double> RectangleSpectrum::energies() const {
  std::vector<double> e(levels.size());
  for (std::size_t i = 0; i < levels.size(); ++i) e[i] = levels[i].energy;
  return e;
}

double rectangle_energy(double alpha, int n, int m) noexcept {
  const double nn = static_cast<double>(n);
  const double mm = static_cast<double>(m);
  return pi * pi * (nn * nn / std::sqrt(alpha) + mm * mm * std::sqrt(alpha));
}

RectangleSpectrum rectangle_levels(double alpha, std::size_t k) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw invalid_argument("rectangle_levels: alpha must be positive");
  if (k < 1) throw invalid_argument("rectangle_levels: K must be at least 1");

  const double a = pi * pi / std::sqrt(alpha);
  const double b = pi * pi * std::sqrt(alpha);
  double cut = 4.0 * pi * static_cast<double>(k) + 100.0;
  std::vector<RectangleLevel> levels;
  for (;;) {
    levels.clear();
    const int n_top = static_cast<int>(std::ceil(std::sqrt(cut / a)));
    for (int n = 0; n <= n_top; ++n) {
      const double en = a * n * n;
      if (en > cut) break;
      const int m_top = static_cast<int>(std::ceil(std::sqrt((cut - en) / b)));
      for (int m = 0; m <= m_top; ++m) {
        const double e = rectangle_energy(alpha, n, m);
        if (e <= cut) levels.push_back({n, m, e});
      }
    }
    if (levels.size() >= k) break;
    cut *= 2.0;
  }
  std::sort(levels.begin(), levels.end(), [](const RectangleLevel& x, const RectangleLevel& y) {
    if (x.energy != y.energy) return x.energy < y.energy;
    if (x.n != y.n) return x.n < y.n;
    return x.m < y.m;
  });
  levels.resize(k);
  return RectangleSpectrum{alpha, std::move(levels)};
}

double rectangle_weyl_count(double alpha, double energy) noexcept {
  const double perimeter = 2.0 * (std::pow(alpha, 0.25) + std::pow(alpha, -0.25));
  return energy / (4.0 * pi) + perimeter * std::sqrt(energy) / (4.0 * pi);
}

double seba_constant(double e_min, double e_max, double mean_density, double l_bar) noexcept {
  const double span = (e_max - e_min) * mean_density;
  return (2.0 / l_bar) * span * span;
}

SebaWindow make_window(const RectangleSpectrum& spectrum, std::size_t n_min, std::size_t n_max, double l_bar) {
  if (n_min < 1 || n_max > spectrum.size() || n_min >= n_max) {
    throw invalid_argument("make_window: window must satisfy 1 <= n_min < n_max <= K");
  }
  if (!(l_bar > 0.0)) throw invalid_argument("make_window: l_bar must be positive");
  double mean_e = 0.0;
  double mean_n = 0.0;
  const double count = static_cast<double>(n_max - n_min + 1);
  for (std::size_t i = n_min; i <= n_max; ++i) {
    mean_e += spectrum.levels[i - 1].energy;
    mean_n += static_cast<double>(i);
  }
  mean_e /= count;
  mean_n /= count;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = n_min; i <= n_max; ++i) {
    const double de = spectrum.levels[i - 1].energy - mean_e;
    sxy += de * (static_cast<double>(i) - mean_n);
    sxx += de * de;
  }
  if (!(sxx > 0.0)) throw numerical_error("make_window: window levels are all degenerate");

  SebaWindow w;
  w.n_min = n_min;
  w.n_max = n_max;
  w.e_min = spectrum.levels[n_min - 1].energy;
  w.e_max = spectrum.levels[n_max - 1].energy;
  w.mean_density = sxy / sxx;
  w.l_bar = l_bar;
  w.c = seba_constant(w.e_min, w.e_max, w.mean_density, l_bar);
  return w;
}

EmpiricalDistribution seba_determinant_samples(const RectangleSpectrum& spectrum, const SebaWindow& window,
                                               std::size_t n_samples, std::uint64_t seed, int threads,
                                               std::size_t sum_levels) {
  check_window(spectrum, window);
  if (n_samples == 0) throw invalid_argument("seba_determinant_samples: n_samples must be positive");
  if (sum_levels > spectrum.size()) throw invalid_argument("seba_determinant_samples: sum_levels exceeds K");
  const std::size_t terms = sum_levels == 0 ? spectrum.size() : sum_levels;
  const std::vector<double> energies = spectrum.energies();
  const double scale = 1.0 / (pi * window.mean_density);
  std::vector<double> out(n_samples);
  parallel_for(n_samples, threads, [&](std::size_t i) {
    const double e = draw_energy(energies, window, seed, i);
    double sum = 0.0;
    for (std::size_t k = 0; k < terms; ++k) sum += 1.0 / (energies[k] - e);
    out[i] = scale * sum;
  });
  return EmpiricalDistribution(std::move(out));
}

EmpiricalDistribution seba_coefficient_samples(const RectangleSpectrum& spectrum, const SebaWindow& window,
                                               std::size_t level_index, std::size_t n_samples,
                                               std::uint64_t seed, int threads) {
  check_window(spectrum, window);
  if (level_index < 1 || level_index > spectrum.size()) {
    throw invalid_argument("seba_coefficient_samples: level index must lie in [1, K]");
  }
  if (n_samples == 0) throw invalid_argument("seba_coefficient_samples: n_samples must be positive");
  const std::vector<double> energies = spectrum.energies();
  const double e_i = energies[level_index - 1];
  std::vector<double> out(n_samples);
  parallel_for(n_samples, threads, [&](std::size_t s) {
    const double e = draw_energy(energies, window, seed, s);
    double sum = 0.0;
    for (double ek : energies) {
      const double d = ek - e;
      sum += 1.0 / (d * d);
    }
    const double di = e_i - e;
    out[s] = window.c / (di * di * sum);
  });
  return EmpiricalDistribution(std::move(out));
}

double ccdf_log_slope(const EmpiricalDistribution& emp, double x_lo, double x_hi) {
  if (!(x_lo > 0.0) || !(x_hi > x_lo)) throw invalid_argument("ccdf_log_slope: need 0 < x_lo < x_hi");
  constexpr int kPoints = 21;
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int used = 0;
  for (int p = 0; p < kPoints; ++p) {
    const double x = x_lo * std::pow(x_hi / x_lo, static_cast<double>(p) / (kPoints - 1));
    const double tail = 1.0 - emp.cdf(x);
    if (!(tail > 0.0)) continue;
    const double lx = std::log(x);
    const double ly = std::log(tail);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++used;
  }
  if (used < 2) throw numerical_error("ccdf_log_slope: no samples in the fit range");
  const double n = used;
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace stargraph
