#pragma once

// Counter-based random numbers (Philox4x32-10).
//
// Every random quantity in the library is addressed by (seed, stream, index):
// the seed is the key, and the counter holds the sample index, a stream tag and
// a block number. Parallel workers therefore never share state, and results do
// not depend on how samples are partitioned between threads.

#include <array>
#include <cstdint>

namespace stargraph {

using Philox4x32Counter = std::array<std::uint32_t, 4>;
using Philox4x32Key = std::array<std::uint32_t, 2>;

Philox4x32Counter philox4x32_10(Philox4x32Counter counter, Philox4x32Key key) noexcept;

/// Stream tags keep experiments that share a seed statistically independent.
enum class RngStream : std::uint32_t {
  bond_lengths = 1,
  wavenumber = 2,
  length_vectors = 3,
  surface = 4,
  seba_energy = 5,
  cauchy_test = 6,
  eigen_subset = 7,
};

/// Sequential uniform draws belonging to one (seed, stream, index) address.
class RandomSequence {
 public:
  RandomSequence(std::uint64_t seed, RngStream stream, std::uint64_t index) noexcept;

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept;
  /// Uniform on [lo, hi).
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }
  std::uint64_t next_u64() noexcept;

 private:
  void refill() noexcept;

  Philox4x32Key key_;
  Philox4x32Counter counter_;
  std::array<std::uint64_t, 2> buffer_{};
  int available_ = 0;
};

}  // namespace stargraph
