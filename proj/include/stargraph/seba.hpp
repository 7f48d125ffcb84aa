#pragma once

// Rectangle-billiard levels and the spectral-sum statistics of a point
// scatterer placed at the origin (the Seba billiard). The rectangle has sides
// alpha^{1/4} and alpha^{-1/4}, unit area, and levels
//   E_{n,m} = pi^2 (n^2 alpha^{-1/2} + m^2 alpha^{1/2}),  n, m >= 0.
// Every retained mode enters with |psi(x0)| = 2, including the edge modes
// with n = 0 or m = 0 whose true value at the origin is smaller.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "stargraph/statistics.hpp"

namespace stargraph {

/// The golden-mean aspect parameter (sqrt(5) - 1)/2.
double golden_alpha() noexcept;

struct RectangleLevel {
  int n = 0;
  int m = 0;
  double energy = 0.0;
};

/// The K lowest levels sorted by (energy, n, m). Level index i (1-based)
/// refers to levels[i - 1]; level 1 is E = 0 at (0, 0).
struct RectangleSpectrum {
  double alpha = 0.0;
  std::vector<RectangleLevel> levels;

  std::size_t size() const noexcept { return levels.size(); }
  double energy(std::size_t index) const;  // 1-based
  std::vector<double> energies() const;
};

double rectangle_energy(double alpha, int n, int m) noexcept;

/// Enumerates every (n, m) below an energy cut, doubling the cut until at
/// least K levels are found, then sorts and truncates to K.
RectangleSpectrum rectangle_levels(double alpha, std::size_t k);

/// Smooth counting function with area and perimeter terms:
/// E/(4 pi) + P sqrt(E)/(4 pi), P = 2(alpha^{1/4} + alpha^{-1/4}).
double rectangle_weyl_count(double alpha, double energy) noexcept;

struct SebaWindow {
  std::size_t n_min = 0;  // 1-based level indices
  std::size_t n_max = 0;
  double e_min = 0.0;
  double e_max = 0.0;
  double mean_density = 0.0;  // least-squares slope of N(E) over the window
  double l_bar = 2.0;
  double c = 0.0;             // (2/l_bar) (e_max - e_min)^2 mean_density^2
};

double seba_constant(double e_min, double e_max, double mean_density, double l_bar) noexcept;

SebaWindow make_window(const RectangleSpectrum& spectrum, std::size_t n_min, std::size_t n_max,
                       double l_bar = 2.0);

inline constexpr double kSebaLevelGuard = 1e-9;

/// (1/(pi <d>)) sum_k 1/(E_k - E) for E uniform on [E_min, E_max]. Draws within
/// kSebaLevelGuard of a level are redrawn. sum_levels limits the sum to the
/// lowest levels (0 means all of them).
EmpiricalDistribution seba_determinant_samples(const RectangleSpectrum& spectrum, const SebaWindow& window,
                                               std::size_t n_samples, std::uint64_t seed, int threads = 0,
                                               std::size_t sum_levels = 0);

/// c (E_i - E)^{-2} / sum_k (E_k - E)^{-2} for E uniform on [E_min, E_max];
/// i is a 1-based level index.
EmpiricalDistribution seba_coefficient_samples(const RectangleSpectrum& spectrum, const SebaWindow& window,
                                               std::size_t level_index, std::size_t n_samples,
                                               std::uint64_t seed, int threads = 0);

/// Least-squares slope of log CCDF against log x over [x_lo, x_hi].
double ccdf_log_slope(const EmpiricalDistribution& emp, double x_lo, double x_hi);

}  // namespace stargraph
