#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace stargraph {

/// Values read from a run configuration file. Absent keys stay empty so
/// command-line flags and built-in defaults can fill them in.
///
/// File format: one `key = value` pair per line; `#` starts a comment;
/// blank lines are ignored. Recognised keys: seed, v, l_bar, delta_l,
/// sample_count. Unknown keys and malformed values are errors.
struct ConfigValues {
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> v;
  std::optional<double> l_bar;
  std::optional<double> delta_l;
  std::optional<std::size_t> sample_count;
};

ConfigValues parse_config(std::string_view text);
ConfigValues load_config(const std::string& path);

}  // namespace stargraph
