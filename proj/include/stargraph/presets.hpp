#pragma once

// Figure-reproduction presets. Each preset bundles the parameters of one
// experiment with the checks its output must pass, and writes CSV data plus
// a JSON report comparing the empirical distribution with the analytic one.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace stargraph {

struct ExperimentPreset {
  std::string name;
  std::string description;
  std::size_t v = 0;          // 0 for the billiard presets
  double l_bar = 2.0;
  double delta_l = 0.0;
  std::size_t samples = 0;
  std::size_t index_range = 0;  // eigenvalue indices drawn from {1..index_range}
  std::size_t levels = 0;       // K for the billiard presets
  std::size_t window_min = 0;
  std::size_t window_max = 0;
  std::size_t level_index = 0;
  double ks_bound = 0.0;        // 0 when the preset has no KS check
};

const std::vector<ExperimentPreset>& experiment_presets();
const ExperimentPreset& find_preset(const std::string& name);

struct PresetCheck {
  std::string name;
  double value = 0.0;
  double bound_lo = 0.0;
  double bound_hi = 0.0;
  bool passed = false;
};

struct PresetReport {
  std::string name;
  std::vector<PresetCheck> checks;
  std::vector<std::string> files;
  double seconds = 0.0;

  bool passed() const noexcept;
  std::string to_json() const;
};

inline constexpr double kSebaReferenceConstant = 9.75e5;
inline constexpr std::size_t kPresetHistogramBins = 80;
inline constexpr std::size_t kDefaultIndexRange = 100000000;

/// Runs a preset. Files go to out_dir when it is non-empty.
PresetReport run_preset(const std::string& name, std::uint64_t seed, int threads,
                        const std::filesystem::path& out_dir = {});

}  // namespace stargraph
