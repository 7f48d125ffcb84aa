#pragma once

// Domain types shared by every module: bond-length vectors, the sampling box
// for lengths, and run configuration.
//
// Rational independence of the lengths cannot be checked in floating point.
// Lengths drawn uniformly at random are treated as incommensurate: exact
// rational relations among random 64-bit draws have probability zero at any
// practical experiment size.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace stargraph {

/// Star-graph bond lengths L_1..L_v. All positive; pairwise distinct unless
/// constructed with Distinctness::allow_equal (evaluation-only use).
class BondLengths {
 public:
  enum class Distinctness { require, allow_equal };

  explicit BondLengths(std::vector<double> lengths,
                       Distinctness distinctness = Distinctness::require);

  std::size_t size() const noexcept { return lengths_.size(); }
  double operator[](std::size_t j) const noexcept { return lengths_[j]; }
  std::span<const double> values() const noexcept { return lengths_; }
  double total() const noexcept { return total_; }
  double min() const noexcept;
  double max() const noexcept;
  bool pairwise_distinct() const noexcept { return distinct_; }

  /// Throws invalid_argument when two lengths coincide.
  void require_distinct() const;

 private:
  std::vector<double> lengths_;
  double total_ = 0.0;
  bool distinct_ = true;
};

/// The box [l_bar, l_bar + delta_l] that random lengths are drawn from.
struct LengthBox {
  double l_bar = 2.0;
  double delta_l = 0.0;

  void validate() const;
};

/// Settings common to a run. The central-vertex boundary parameter enters
/// the spectral determinant as -1/(k*lambda); only 1/lambda = 0 is supported.
struct RunConfig {
  std::uint64_t seed = 1;
  std::size_t sample_count = 100000;
  double inverse_lambda = 0.0;
};

inline constexpr int kMaxCollisionRetries = 100;

/// Draws v lengths uniformly from the box. Deterministic in (box, v, seed,
/// index); colliding draws are resampled up to kMaxCollisionRetries times.
BondLengths generate_lengths(const LengthBox& box, std::size_t v, std::uint64_t seed,
                             std::uint64_t index = 0);

/// Mean density of eigenvalues in k: (1/pi) * sum L_j.
double mean_density(const BondLengths& lengths) noexcept;

}  // namespace stargraph
