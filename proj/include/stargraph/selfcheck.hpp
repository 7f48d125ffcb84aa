#pragma once

// The acceptance suite: thirteen numbered checks, each with its own
// tolerance and, where stated, a runtime budget.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace stargraph {

struct CheckResult {
  int id = 0;
  std::string name;
  bool passed = false;
  double value = 0.0;      // the headline measured quantity
  double threshold = 0.0;  // its bound
  double seconds = 0.0;
  std::string detail;
};

inline constexpr int kCheckCount = 13;

std::string check_name(int id);

/// Runs check `id` (1..kCheckCount). Failures of the underlying computation
/// are reported as a failed check with the error message as detail.
CheckResult run_check(int id, std::uint64_t seed = 1, int threads = 0);

std::vector<CheckResult> run_all_checks(std::uint64_t seed = 1, int threads = 0);

/// "PASS  3 normalization identity  value=... threshold=... (0.12 s) detail"
std::string format_check(const CheckResult& result);

}  // namespace stargraph
