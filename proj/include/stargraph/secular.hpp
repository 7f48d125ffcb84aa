#pragma once

// The spectral determinant Z(k, L) = sum_j tan(k L_j) of a Neumann star graph
// and its zeros, the eigen-wavenumbers k_n.
//
// Z has poles at k = (2n+1) pi / (2 L_j) and is strictly increasing between
// consecutive poles, so every open inter-pole interval holds exactly one
// zero. Eigenvalues are found by bracketing each zero with its pole pair.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "stargraph/core_model.hpp"

namespace stargraph {

inline constexpr double kPoleGuard = 1e-12;          // relative to k
inline constexpr double kPoleMergeThreshold = 1e-9;  // absolute in k
inline constexpr double kBisectionWidth = 1e-10;     // relative to the bracket width
inline constexpr int kSecantSteps = 3;

/// k*L reduced modulo pi/2: k*L = quadrant * pi/2 + remainder with
/// |remainder| <= pi/4. The product and the reduction are carried in
/// double-word arithmetic so the remainder keeps full relative accuracy
/// close to the poles of tan even for large k*L.
struct ReducedAngle {
  double remainder = 0.0;
  int quadrant = 0;  // modulo 4

  bool odd() const noexcept { return (quadrant & 1) != 0; }
};

ReducedAngle reduce_angle(double k, double length) noexcept;

/// tan(k L) and sec^2(k L) from the reduced angle (no pole guard).
double tan_kl(double k, double length) noexcept;
double sec2_kl(double k, double length) noexcept;

/// Z(k, L). Returns +/- infinity when k lies within kPoleGuard * k of a pole.
double eval_z(double k, const BondLengths& lengths) noexcept;

/// Z'(k, L) = sum_j L_j sec^2(k L_j) >= sum_j L_j. Infinity near a pole.
double eval_z_prime(double k, const BondLengths& lengths) noexcept;

/// True when eval_z(k) would return the pole marker.
bool near_pole(double k, const BondLengths& lengths) noexcept;

struct Pole {
  double k = 0.0;
  std::size_t bond = 0;
};

struct PoleGrid {
  std::vector<Pole> poles;  // strictly ascending
  double k_max = 0.0;
};

/// Number of poles of bond length L in (0, k_max]: floor(k_max L / pi + 1/2).
std::size_t pole_count(double length, double k_max) noexcept;

/// All poles in (0, k_max], merged across bonds. Throws numerical_error when two
/// poles from different bonds are closer than kPoleMergeThreshold.
PoleGrid build_pole_grid(const BondLengths& lengths, double k_max);

/// The first `count` poles (count >= 1), merged across bonds.
PoleGrid first_poles(const BondLengths& lengths, std::size_t count);

struct SpectralPoint {
  std::size_t index = 0;
  double k = 0.0;
  double z_prime = 0.0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
};

struct Eigenfunction {
  SpectralPoint point;
  std::vector<double> amplitude_sq;  // A_i = max |psi_i|^2 on bond i
  double norm_constant_sq = 0.0;     // (A^(n))^2
};

/// Solves one zero inside the open interval (lo, hi) of consecutive poles.
/// Throws numerical_error if Z does not change sign from - to + across it.
double solve_bracket(const BondLengths& lengths, double lo, double hi);

/// The first n_eigs eigen-wavenumbers: k_0 = 0, then one zero per consecutive
/// pole pair. threads <= 0 uses all available hardware threads.
std::vector<SpectralPoint> eigenvalues(const BondLengths& lengths, std::size_t n_eigs,
                                       int threads = 0);

/// Number of poles of Z in (0, k], merged across bonds.
std::size_t poles_below(const BondLengths& lengths, double k) noexcept;

/// The single eigen-wavenumber k_n, located by counting poles instead of
/// building the grid up to it. Brackets coincide with those of eigenvalues().
SpectralPoint eigenvalue_at(const BondLengths& lengths, std::size_t n);

/// `count` eigen-wavenumbers with indices drawn uniformly from {1, ..., n_max}
/// (with replacement), in draw order. An unbiased sample of the first n_max
/// levels, used where the statistics of interest need kΔL >> 1.
std::vector<SpectralPoint> random_eigenvalues(const BondLengths& lengths, std::size_t count,
                                              std::size_t n_max, std::uint64_t seed, int threads = 0);

/// Maximum squared amplitudes A_i = 2 sec^2(k_n L_i) / Z'(k_n) and (A^(n))^2 = 2 / Z'(k_n).
Eigenfunction amplitudes(const SpectralPoint& point, const BondLengths& lengths);

/// psi_i^(n)(x) for x in [0, L_i] (x = 0 at the central vertex).
double eigenfunction_value(const Eigenfunction& ef, const BondLengths& lengths,
                           std::size_t bond, double x);

struct WeylCount {
  std::size_t zero_count = 0;
  std::size_t pole_count = 0;
  double smooth_count = 0.0;  // mean_density * k_max
};

WeylCount weyl_count_check(const BondLengths& lengths, double k_max, int threads = 0);

/// Z'(k_n)/v^2 for n >= 1 (k_0 excluded).
std::vector<double> scaled_z_prime(const std::vector<SpectralPoint>& spectrum,
                                   const BondLengths& lengths);

/// v^2 A_i(n) for the given bond, n >= 1 (k_0 excluded).
std::vector<double> scaled_amplitudes(const std::vector<SpectralPoint>& spectrum,
                                      const BondLengths& lengths, std::size_t bond);

}  // namespace stargraph
