#include "stargraph/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "stargraph/error.hpp"

namespace stargraph {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(std::string_view key, std::string_view text, int line) {
  T value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw invalid_argument("config line " + std::to_string(line) + ": bad value for '" +
                           std::string(key) + "': '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

ConfigValues parse_config(std::string_view text) {
  ConfigValues cfg;
  int line_no = 0;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw invalid_argument("config line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));

    if (key == "seed") {
      cfg.seed = parse_number<std::uint64_t>(key, value, line_no);
    } else if (key == "v") {
      cfg.v = parse_number<std::size_t>(key, value, line_no);
    } else if (key == "l_bar") {
      cfg.l_bar = parse_number<double>(key, value, line_no);
    } else if (key == "delta_l") {
      cfg.delta_l = parse_number<double>(key, value, line_no);
    } else if (key == "sample_count") {
      cfg.sample_count = parse_number<std::size_t>(key, value, line_no);
    } else {
      throw invalid_argument("config line " + std::to_string(line_no) + ": unknown key '" +
                             std::string(key) + "'");
    }
  }
  return cfg;
}

ConfigValues load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open config file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

}  // namespace stargraph
