#include "stargraph/core_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "stargraph/error.hpp"
#include "stargraph/rng.hpp"

namespace stargraph {

namespace {

bool all_distinct(std::vector<double> sorted) {
  std::sort(sorted.begin(), sorted.end());
  return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
}

}  // namespace

BondLengths::BondLengths(std::vector<double> lengths, Distinctness distinctness)
    : lengths_(std::move(lengths)) {
  if (lengths_.empty()) throw invalid_argument("bond lengths: need at least one bond");
  for (std::size_t j = 0; j < lengths_.size(); ++j) {
    const double l = lengths_[j];
    if (!std::isfinite(l) || !(l > 0.0)) {
      throw invalid_argument("bond lengths: length " + std::to_string(j + 1) +
                             " must be finite and > 0");
    }
    total_ += l;
  }
  distinct_ = all_distinct(lengths_);
  if (distinctness == Distinctness::require) require_distinct();
}

double BondLengths::min() const noexcept { return *std::min_element(lengths_.begin(), lengths_.end()); }
double BondLengths::max() const noexcept { return *std::max_element(lengths_.begin(), lengths_.end()); }

void BondLengths::require_distinct() const {
  if (!distinct_) throw invalid_argument("bond lengths: lengths must be pairwise distinct");
}

void LengthBox::validate() const {
  if (!std::isfinite(l_bar) || !(l_bar > 0.0)) throw invalid_argument("length box: l_bar must be > 0");
  if (!std::isfinite(delta_l) || delta_l < 0.0) throw invalid_argument("length box: delta_l must be >= 0");
}

BondLengths generate_lengths(const LengthBox& box, std::size_t v, std::uint64_t seed,
                             std::uint64_t index) {
  box.validate();
  if (v == 0) throw invalid_argument("generate_lengths: v must be >= 1");
  if (box.delta_l == 0.0 && v > 1) {
    throw invalid_argument("generate_lengths: delta_l = 0 cannot give distinct lengths for v > 1");
  }

  RandomSequence rng(seed, RngStream::bond_lengths, index);
  std::vector<double> lengths;
  lengths.reserve(v);
  for (std::size_t j = 0; j < v; ++j) {
    double l = rng.uniform(box.l_bar, box.l_bar + box.delta_l);
    int retries = 0;
    while (std::find(lengths.begin(), lengths.end(), l) != lengths.end()) {
      if (++retries > kMaxCollisionRetries) {
        throw numerical_error("generate_lengths: could not draw distinct lengths after " +
                              std::to_string(kMaxCollisionRetries) + " retries");
      }
      l = rng.uniform(box.l_bar, box.l_bar + box.delta_l);
    }
    lengths.push_back(l);
  }
  return BondLengths(std::move(lengths));
}

double mean_density(const BondLengths& lengths) noexcept {
  return lengths.total() / std::numbers::pi;
}

}  // namespace stargraph
