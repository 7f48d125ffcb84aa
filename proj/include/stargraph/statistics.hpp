#pragma once

// Empirical distributions, the Kolmogorov-Smirnov distance and histograms,
// plus the two Cauchy experiments for Z/v.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "stargraph/core_model.hpp"
#include "stargraph/limit_densities.hpp"

namespace stargraph {

/// Sorted sample values, n >= 1.
class EmpiricalDistribution {
 public:
  explicit EmpiricalDistribution(std::vector<double> values);

  std::size_t size() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t i) const noexcept { return values_[i]; }
  double median() const noexcept;

  /// Fraction of samples <= x.
  double cdf(double x) const noexcept;

 private:
  std::vector<double> values_;
};

using CdfFunction = std::function<double(double)>;

/// sup_i max(|i/n - F(x_i)|, |(i-1)/n - F(x_i)|). The cdf is probed at 1000
/// points across the sample range first; a decreasing or out-of-range probe
/// throws invalid_argument.
double ks_distance(const EmpiricalDistribution& emp, const CdfFunction& cdf);

/// The asymptotic 99% quantile of the KS statistic: 1.6276 / sqrt(n).
double ks_99_threshold(std::size_t n) noexcept;

inline constexpr double kMaxDiscardFraction = 1e-6;

struct SamplingReport {
  std::size_t requested = 0;
  std::size_t discarded = 0;  // draws that hit the pole guard
};

/// Z(k, L)/v for k uniform on [0, k_max]. Draws that land on the pole guard
/// are discarded and counted; a warning is issued when the discard fraction
/// exceeds kMaxDiscardFraction or k_max is too small for the sample count.
EmpiricalDistribution sample_z_over_k(const BondLengths& lengths, double k_max, std::size_t n_samples,
                                      std::uint64_t seed, int threads = 0,
                                      SamplingReport* report = nullptr);

/// Z(k_fixed, L)/v with a fresh length vector drawn from the box for every
/// sample. Warns when k_fixed * delta_l < 100.
EmpiricalDistribution sample_z_over_lengths(const LengthBox& box, std::size_t v, double k_fixed,
                                            std::size_t n_samples, std::uint64_t seed, int threads = 0,
                                            SamplingReport* report = nullptr);

/// Density histogram over [lo, hi) with `bins` equal bins (bins >= 2). Bars are
/// counts / (n * width), so the area equals the fraction of samples inside
/// the range; that fraction is stored as the curve's mass.
DensityCurve histogram(const EmpiricalDistribution& emp, std::size_t bins, double lo, double hi);

/// Standard Cauchy draws tan(pi (u - 1/2)).
std::vector<double> cauchy_samples(std::size_t n, std::uint64_t seed);

}  // namespace stargraph
