#include "stargraph/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "stargraph/diagnostics.hpp"
#include "stargraph/error.hpp"
#include "stargraph/parallel.hpp"
#include "stargraph/rng.hpp"
#include "stargraph/secular.hpp"

namespace stargraph {

namespace {

constexpr std::size_t kCdfProbes = 1000;
constexpr double kCdfProbeTolerance = 1e-12;

std::vector<double> collect_finite(std::vector<double>& raw, std::size_t requested, SamplingReport* report) {
  std::vector<double> kept;
  kept.reserve(raw.size());
  for (double x : raw) {
    if (std::isfinite(x)) kept.push_back(x);
  }
  const std::size_t discarded = raw.size() - kept.size();
  if (report) {
    report->requested = requested;
    report->discarded = discarded;
  }
  if (static_cast<double>(discarded) > kMaxDiscardFraction * static_cast<double>(requested)) {
    std::ostringstream os;
    os << discarded << " of " << requested << " draws hit the pole guard and were discarded";
    warn(os.str());
  }
  if (kept.empty()) throw numerical_error("sampling: every draw hit the pole guard");
  return kept;
}

}  // namespace

EmpiricalDistribution::EmpiricalDistribution(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw invalid_argument("EmpiricalDistribution: needs at least one sample");
  for (double x : values_) {
    if (std::isnan(x)) throw invalid_argument("EmpiricalDistribution: NaN sample");
  }
  std::sort(values_.begin(), values_.end());
}

double EmpiricalDistribution::median() const noexcept {
  const std::size_t n = values_.size();
  return n % 2 == 1 ? values_[n / 2] : 0.5 * (values_[n / 2 - 1] + values_[n / 2]);
}

double EmpiricalDistribution::cdf(double x) const noexcept {
  const auto it = std::upper_bound(values_.begin(), values_.end(), x);
  return static_cast<double>(it - values_.begin()) / static_cast<double>(values_.size());
}

double ks_distance(const EmpiricalDistribution& emp, const CdfFunction& cdf) {
  const double lo = emp[0];
  const double hi = emp[emp.size() - 1];
  double previous = -std::numeric_limits<double>::infinity();
  for (std::size_t p = 0; p < kCdfProbes; ++p) {
    const double t = static_cast<double>(p) / static_cast<double>(kCdfProbes - 1);
    const double x = lo + (hi - lo) * t;
    const double f = cdf(x);
    if (!(f >= -kCdfProbeTolerance && f <= 1.0 + kCdfProbeTolerance)) {
      std::ostringstream os;
      os.precision(17);
      os << "ks_distance: cdf(" << x << ") = " << f << " is outside [0, 1]";
      throw invalid_argument(os.str());
    }
    if (f < previous - kCdfProbeTolerance) {
      std::ostringstream os;
      os.precision(17);
      os << "ks_distance: cdf decreases near " << x;
      throw invalid_argument(os.str());
    }
    previous = f;
  }

  const double n = static_cast<double>(emp.size());
  double d = 0.0;
  for (std::size_t i = 0; i < emp.size(); ++i) {
    const double f = cdf(emp[i]);
    const double above = static_cast<double>(i + 1) / n - f;
    const double below = f - static_cast<double>(i) / n;
    d = std::max({d, std::abs(above), std::abs(below)});
  }
  return std::min(d, 1.0);
}

double ks_99_threshold(std::size_t n) noexcept { return 1.6276 / std::sqrt(static_cast<double>(n)); }

EmpiricalDistribution sample_z_over_k(const BondLengths& lengths, double k_max, std::size_t n_samples,
                                      std::uint64_t seed, int threads, SamplingReport* report) {
  if (!(k_max > 0.0) || !std::isfinite(k_max)) throw invalid_argument("sample_z_over_k: k_max must be positive");
  if (n_samples == 0) throw invalid_argument("sample_z_over_k: n_samples must be positive");
  if (mean_density(lengths) * k_max < 1000.0) {
    warn("sample_z_over_k: k_max spans fewer than 1000 mean level spacings");
  }
  const double v = static_cast<double>(lengths.size());
  std::vector<double> raw(n_samples);
  parallel_for(n_samples, threads, [&](std::size_t i) {
    RandomSequence rng(seed, RngStream::wavenumber, i);
    const double k = k_max * rng.uniform();
    raw[i] = eval_z(k, lengths) / v;
  });
  return EmpiricalDistribution(collect_finite(raw, n_samples, report));
}

EmpiricalDistribution sample_z_over_lengths(const LengthBox& box, std::size_t v, double k_fixed,
                                            std::size_t n_samples, std::uint64_t seed, int threads,
                                            SamplingReport* report) {
  box.validate();
  if (v == 0) throw invalid_argument("sample_z_over_lengths: v must be positive");
  if (!(k_fixed > 0.0) || !std::isfinite(k_fixed)) throw invalid_argument("sample_z_over_lengths: k must be positive");
  if (n_samples == 0) throw invalid_argument("sample_z_over_lengths: n_samples must be positive");
  if (k_fixed * box.delta_l < 100.0) {
    warn("sample_z_over_lengths: k * delta_l < 100, outside the regime where Z/v is Cauchy");
  }
  std::vector<double> raw(n_samples);
  parallel_for(n_samples, threads, [&](std::size_t i) {
    RandomSequence rng(seed, RngStream::length_vectors, i);
    std::vector<double> l(v);
    for (auto& x : l) x = rng.uniform(box.l_bar, box.l_bar + box.delta_l);
    const BondLengths lengths(std::move(l), BondLengths::Distinctness::allow_equal);
    raw[i] = eval_z(k_fixed, lengths) / static_cast<double>(v);
  });
  return EmpiricalDistribution(collect_finite(raw, n_samples, report));
}

DensityCurve histogram(const EmpiricalDistribution& emp, std::size_t bins, double lo, double hi) {
  if (bins < 2) throw invalid_argument("histogram: needs at least 2 bins");
  if (!(hi > lo)) throw invalid_argument("histogram: empty range");
  const double width = (hi - lo) / static_cast<double>(bins);
  std::vector<std::size_t> counts(bins, 0);
  std::size_t inside = 0;
  for (double x : emp.values()) {
    if (x < lo || x >= hi) continue;
    auto b = static_cast<std::size_t>((x - lo) / width);
    if (b >= bins) b = bins - 1;
    ++counts[b];
    ++inside;
  }
  const double n = static_cast<double>(emp.size());
  DensityCurve curve;
  curve.x.resize(bins);
  curve.pdf.resize(bins);
  for (std::size_t b = 0; b < bins; ++b) {
    curve.x[b] = lo + (static_cast<double>(b) + 0.5) * width;
    curve.pdf[b] = static_cast<double>(counts[b]) / (n * width);
  }
  curve.mass = static_cast<double>(inside) / n;
  return curve;
}

std::vector<double> cauchy_samples(std::size_t n, std::uint64_t seed) {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    RandomSequence rng(seed, RngStream::cauchy_test, i);
    out[i] = std::tan(std::numbers::pi * (rng.uniform() - 0.5));
  }
  return out;
}

}  // namespace stargraph
