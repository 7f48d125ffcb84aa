#pragma once

// The invariant measure on the surface Sigma = {x in T^v : sum_j tan x_j = 0}
// of the torus with sides pi. Eigenvalue averages of f(k_n L mod pi) converge
// to integrals of f against nu = J(xi) dxi / int J, where Sigma is
// parameterised by its first v-1 coordinates xi and
//
//   x_v = -atan(tan xi_1 + ... + tan xi_{v-1}),
//   J(xi) = (sum_{j<v} L_j sec^2 xi_j) / (1 + (sum_{j<v} tan xi_j)^2) + L_v.
//
// Averages are estimated by self-normalised importance sampling with a
// uniform proposal on [0, pi)^{v-1}; J is the importance weight.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "stargraph/core_model.hpp"
#include "stargraph/secular.hpp"

namespace stargraph {

struct SurfaceSample {
  std::vector<double> xi;  // v-1 free coordinates in [0, pi)
  std::vector<double> x;   // the full torus point, x_v reconstructed, in [0, pi)
  std::vector<double> sec2;  // sec^2 x_j for all v coordinates
  double jacobian = 0.0;
  double tan_sum = 0.0;    // tan xi_1 + ... + tan xi_{v-1}
};

/// J(xi). Throws numerical_error when a coordinate sits on a pole of tan.
double jacobian(std::span<const double> xi, const BondLengths& lengths);

/// Builds the full sample (reconstructed x_v and weight) for a point xi.
SurfaceSample surface_point(std::span<const double> xi, const BondLengths& lengths);

/// G(x) = sum_j tan x_j; vanishes on Sigma.
double surface_residual(std::span<const double> x) noexcept;

struct SurfaceEstimate {
  double estimate = 0.0;
  double std_error = 0.0;  // jackknife over sample blocks
  std::size_t n_samples = 0;
  double max_weight_fraction = 0.0;  // largest single J over sum of J
  double mean_jacobian = 0.0;        // sample mean of J; estimates pi * mean_density
  double mean_jacobian_error = 0.0;
};

using SurfaceFunction = std::function<double(const SurfaceSample&)>;

inline constexpr std::size_t kMinSurfaceSamples = 1000;
inline constexpr std::size_t kJackknifeBlocks = 100;
inline constexpr double kWeightWarningFraction = 0.01;

/// Estimates int_Sigma f dnu for several functions from one set of samples.
/// Sample i is drawn from (seed, surface stream, i), so the result does not
/// depend on the thread count.
std::vector<SurfaceEstimate> surface_average(std::span<const SurfaceFunction> functions,
                                             const BondLengths& lengths, std::size_t n_samples,
                                             std::uint64_t seed, int threads = 0);

SurfaceEstimate surface_average(const SurfaceFunction& f, const BondLengths& lengths,
                                std::size_t n_samples, std::uint64_t seed, int threads = 0);

/// Finite-v CDF of Z'(k_n)/v^2 at R: nu{ (1/v^2) sum_j L_j sec^2 x_j < R }.
SurfaceEstimate finite_v_pv(const BondLengths& lengths, double r, std::size_t n_samples,
                            std::uint64_t seed, int threads = 0);

/// Finite-v CDF of v^2 A_i at R: nu{ 2 v^2 sec^2 x_i / sum_j L_j sec^2 x_j < R }.
/// `bond` is zero-based.
SurfaceEstimate finite_v_qv(const BondLengths& lengths, std::size_t bond, double r,
                            std::size_t n_samples, std::uint64_t seed, int threads = 0);

/// The same CDFs over several thresholds at once.
std::vector<SurfaceEstimate> finite_v_pv(const BondLengths& lengths, std::span<const double> thresholds,
                                         std::size_t n_samples, std::uint64_t seed, int threads = 0);
std::vector<SurfaceEstimate> finite_v_qv(const BondLengths& lengths, std::size_t bond,
                                         std::span<const double> thresholds, std::size_t n_samples,
                                         std::uint64_t seed, int threads = 0);

/// Eigenvalue-route counterpart: fraction of k_n (n >= 1) with f(k_n L mod pi)
/// true, with binomial standard error.
struct EigenAverage {
  double estimate = 0.0;
  double std_error = 0.0;
  std::size_t count = 0;
};

EigenAverage eigen_fraction(std::span<const double> values, double threshold);

}  // namespace stargraph
