#include "stargraph/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "stargraph/error.hpp"

namespace stargraph {

namespace {

std::ofstream open_output(const std::filesystem::path& path) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw io_error("cannot create directory " + path.parent_path().string() + ": " + ec.message());
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw io_error("cannot open " + path.string() + " for writing");
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw io_error("write failed: " + path.string());
}

nlohmann::json real_or_null(double x) {
  if (std::isfinite(x)) return x;
  return nullptr;
}

}  // namespace

std::string format_real(double x) {
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, result.ptr);
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  auto out = open_output(path);
  out << text;
  finish(out, path);
}

void write_spectrum_csv(const std::filesystem::path& path, const std::vector<SpectralPoint>& spectrum) {
  std::ostringstream os;
  os << "n,k,z_prime,bracket_lo,bracket_hi\n";
  for (const auto& p : spectrum) {
    os << p.index << ',' << format_real(p.k) << ',' << format_real(p.z_prime) << ','
       << format_real(p.bracket_lo) << ',' << format_real(p.bracket_hi) << '\n';
  }
  write_text(path, os.str());
}

void write_values_csv(const std::filesystem::path& path, std::span<const double> values) {
  std::ostringstream os;
  os << "value\n";
  for (double v : values) os << format_real(v) << '\n';
  write_text(path, os.str());
}

void write_histogram_csv(const std::filesystem::path& path, const DensityCurve& histogram) {
  std::ostringstream os;
  os << "bin_center,density\n";
  for (std::size_t i = 0; i < histogram.x.size(); ++i) {
    os << format_real(histogram.x[i]) << ',' << format_real(histogram.pdf[i]) << '\n';
  }
  write_text(path, os.str());
}

void write_curve_csv(const std::filesystem::path& path, const DensityCurve& curve) {
  std::ostringstream os;
  os << "x,pdf\n";
  for (std::size_t i = 0; i < curve.x.size(); ++i) {
    os << format_real(curve.x[i]) << ',' << format_real(curve.pdf[i]) << '\n';
  }
  write_text(path, os.str());
}

void write_curve_json(const std::filesystem::path& path, const DensityCurve& curve) {
  nlohmann::json j;
  j["mass"] = real_or_null(curve.mass);
  j["tail_coefficient"] = curve.tail ? real_or_null(curve.tail->coefficient) : nlohmann::json(nullptr);
  j["tail_exponent"] = curve.tail ? real_or_null(curve.tail->exponent) : nlohmann::json(nullptr);
  j["l_bar"] = curve.l_bar;
  write_text(path, j.dump(2) + "\n");
}

void write_rectangle_csv(const std::filesystem::path& path, const RectangleSpectrum& spectrum) {
  std::ostringstream os;
  os << "idx,n,m,energy\n";
  for (std::size_t i = 0; i < spectrum.levels.size(); ++i) {
    const auto& l = spectrum.levels[i];
    os << i + 1 << ',' << l.n << ',' << l.m << ',' << format_real(l.energy) << '\n';
  }
  write_text(path, os.str());
}

void write_summary_json(const std::filesystem::path& path, std::size_t n, double ks) {
  nlohmann::json j;
  j["n"] = n;
  j["ks"] = ks;
  j["ks_99_threshold"] = ks_99_threshold(n);
  write_text(path, j.dump(2) + "\n");
}

void write_surface_json(const std::filesystem::path& path, const SurfaceEstimate& estimate) {
  nlohmann::json j;
  j["estimate"] = estimate.estimate;
  j["std_error"] = estimate.std_error;
  j["n_samples"] = estimate.n_samples;
  j["max_weight_fraction"] = estimate.max_weight_fraction;
  write_text(path, j.dump(2) + "\n");
}

}  // namespace stargraph
