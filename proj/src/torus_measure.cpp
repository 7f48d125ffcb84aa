#include "stargraph/torus_measure.hpp"

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

void fill_sample(SurfaceSample& s, const BondLengths& lengths) {
  const std::size_t v = lengths.size();
  double tan_sum = 0.0;
  double numerator = 0.0;
  for (std::size_t j = 0; j + 1 < v; ++j) {
    const double t = std::tan(s.xi[j]);
    if (!std::isfinite(t) || std::abs(t) > 1e300) {
      std::ostringstream os;
      os.precision(17);
      os << "jacobian: coordinate " << j + 1 << " = " << s.xi[j] << " is on a pole of tan";
      throw numerical_error(os.str());
    }
    const double sec2 = 1.0 + t * t;
    s.x[j] = s.xi[j];
    s.sec2[j] = sec2;
    tan_sum += t;
    numerator += lengths[j] * sec2;
  }
  const double denom = 1.0 + tan_sum * tan_sum;
  double last = -std::atan(tan_sum);
  if (last < 0.0) last += pi;
  s.x[v - 1] = last;
  s.sec2[v - 1] = denom;
  s.tan_sum = tan_sum;
  s.jacobian = numerator / denom + lengths[v - 1];
}

struct BlockSums {
  double weight = 0.0;
  double max_weight = 0.0;
  std::vector<double> weighted;  // per function: sum f * J
};

}  // namespace

double jacobian(std::span<const double> xi, const BondLengths& lengths) {
  return surface_point(xi, lengths).jacobian;
}

SurfaceSample surface_point(std::span<const double> xi, const BondLengths& lengths) {
  const std::size_t v = lengths.size();
  if (v < 2) throw invalid_argument("surface: needs v >= 2 bonds");
  if (xi.size() != v - 1) throw invalid_argument("surface: xi must have v-1 coordinates");
  SurfaceSample s;
  s.xi.assign(xi.begin(), xi.end());
  s.x.resize(v);
  s.sec2.resize(v);
  fill_sample(s, lengths);
  return s;
}

double surface_residual(std::span<const double> x) noexcept {
  double g = 0.0;
  for (double xj : x) g += std::tan(xj);
  return g;
}

std::vector<SurfaceEstimate> surface_average(std::span<const SurfaceFunction> functions,
                                             const BondLengths& lengths, std::size_t n_samples,
                                             std::uint64_t seed, int threads) {
  const std::size_t v = lengths.size();
  if (v < 2) throw invalid_argument("surface_average: needs v >= 2 bonds");
  if (n_samples < kMinSurfaceSamples) throw invalid_argument("surface_average: need at least 1000 samples");

  const std::size_t nf = functions.size();
  const std::size_t blocks = kJackknifeBlocks;
  std::vector<BlockSums> sums(blocks, BlockSums{0.0, 0.0, std::vector<double>(nf, 0.0)});

  parallel_for(blocks, threads, [&](std::size_t b) {
    const std::size_t begin = b * n_samples / blocks;
    const std::size_t end = (b + 1) * n_samples / blocks;
    SurfaceSample s;
    s.xi.resize(v - 1);
    s.x.resize(v);
    s.sec2.resize(v);
    BlockSums& acc = sums[b];
    for (std::size_t i = begin; i < end; ++i) {
      RandomSequence rng(seed, RngStream::surface, i);
      for (auto& c : s.xi) c = pi * rng.uniform();
      fill_sample(s, lengths);
      acc.weight += s.jacobian;
      acc.max_weight = std::max(acc.max_weight, s.jacobian);
      for (std::size_t f = 0; f < nf; ++f) acc.weighted[f] += functions[f](s) * s.jacobian;
    }
  });

  double total_weight = 0.0;
  double max_weight = 0.0;
  std::vector<double> total(nf, 0.0);
  for (const auto& acc : sums) {
    total_weight += acc.weight;
    max_weight = std::max(max_weight, acc.weight > 0.0 ? acc.max_weight : 0.0);
    for (std::size_t f = 0; f < nf; ++f) total[f] += acc.weighted[f];
  }

  // Jackknife: leave one block out.
  const double nb = static_cast<double>(blocks);
  const double n = static_cast<double>(n_samples);
  std::vector<double> mean_loo(nf, 0.0);
  double mean_j_loo = 0.0;
  std::vector<std::vector<double>> loo(nf, std::vector<double>(blocks));
  std::vector<double> j_loo(blocks);
  for (std::size_t b = 0; b < blocks; ++b) {
    const std::size_t count = (b + 1) * n_samples / blocks - b * n_samples / blocks;
    const double w = total_weight - sums[b].weight;
    j_loo[b] = w / (n - static_cast<double>(count));
    mean_j_loo += j_loo[b] / nb;
    for (std::size_t f = 0; f < nf; ++f) {
      loo[f][b] = (total[f] - sums[b].weighted[f]) / w;
      mean_loo[f] += loo[f][b] / nb;
    }
  }
  double j_var = 0.0;
  for (std::size_t b = 0; b < blocks; ++b) j_var += (j_loo[b] - mean_j_loo) * (j_loo[b] - mean_j_loo);
  j_var *= (nb - 1.0) / nb;

  std::vector<SurfaceEstimate> out(nf);
  for (std::size_t f = 0; f < nf; ++f) {
    double var = 0.0;
    for (std::size_t b = 0; b < blocks; ++b) var += (loo[f][b] - mean_loo[f]) * (loo[f][b] - mean_loo[f]);
    var *= (nb - 1.0) / nb;
    out[f].estimate = total[f] / total_weight;
    out[f].std_error = std::sqrt(var);
    out[f].n_samples = n_samples;
    out[f].max_weight_fraction = max_weight / total_weight;
    out[f].mean_jacobian = total_weight / n;
    out[f].mean_jacobian_error = std::sqrt(j_var);
  }
  return out;
}

SurfaceEstimate surface_average(const SurfaceFunction& f, const BondLengths& lengths, std::size_t n_samples,
                                std::uint64_t seed, int threads) {
  return surface_average(std::span<const SurfaceFunction>(&f, 1), lengths, n_samples, seed, threads).front();
}

namespace {

double z_prime_scaled(const SurfaceSample& s, const BondLengths& lengths) {
  double zp = 0.0;
  for (std::size_t j = 0; j < lengths.size(); ++j) zp += lengths[j] * s.sec2[j];
  const double v = static_cast<double>(lengths.size());
  return zp / (v * v);
}

}  // namespace

std::vector<SurfaceEstimate> finite_v_pv(const BondLengths& lengths, std::span<const double> thresholds,
                                         std::size_t n_samples, std::uint64_t seed, int threads) {
  std::vector<SurfaceFunction> fs;
  for (double r : thresholds) {
    fs.emplace_back([&lengths, r](const SurfaceSample& s) { return z_prime_scaled(s, lengths) < r ? 1.0 : 0.0; });
  }
  auto out = surface_average(fs, lengths, n_samples, seed, threads);
  for (std::size_t i = 0; i < thresholds.size(); ++i) {
    if (!(thresholds[i] > 0.0)) out[i].estimate = out[i].std_error = 0.0;
  }
  return out;
}

SurfaceEstimate finite_v_pv(const BondLengths& lengths, double r, std::size_t n_samples, std::uint64_t seed,
                            int threads) {
  return finite_v_pv(lengths, std::span<const double>(&r, 1), n_samples, seed, threads).front();
}

std::vector<SurfaceEstimate> finite_v_qv(const BondLengths& lengths, std::size_t bond,
                                         std::span<const double> thresholds, std::size_t n_samples,
                                         std::uint64_t seed, int threads) {
  if (bond >= lengths.size()) throw invalid_argument("finite_v_qv: bond index out of range");
  std::vector<SurfaceFunction> fs;
  for (double r : thresholds) {
    fs.emplace_back([&lengths, bond, r](const SurfaceSample& s) {
      const double v2 = static_cast<double>(lengths.size() * lengths.size());
      const double amp = 2.0 * s.sec2[bond] / (v2 * z_prime_scaled(s, lengths));
      return v2 * amp < r ? 1.0 : 0.0;
    });
  }
  return surface_average(fs, lengths, n_samples, seed, threads);
}

SurfaceEstimate finite_v_qv(const BondLengths& lengths, std::size_t bond, double r, std::size_t n_samples,
                            std::uint64_t seed, int threads) {
  return finite_v_qv(lengths, bond, std::span<const double>(&r, 1), n_samples, seed, threads).front();
}

EigenAverage eigen_fraction(std::span<const double> values, double threshold) {
  if (values.empty()) throw invalid_argument("eigen_fraction: no values");
  const auto below = std::count_if(values.begin(), values.end(), [threshold](double x) { return x < threshold; });
  EigenAverage out;
  out.count = values.size();
  out.estimate = static_cast<double>(below) / static_cast<double>(values.size());
  out.std_error = std::sqrt(out.estimate * (1.0 - out.estimate) / static_cast<double>(values.size()));
  return out;
}

}  // namespace stargraph
