#pragma once

// CSV and JSON writers. Reals are written with 17 significant digits so that
// files round-trip exactly.

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "stargraph/limit_densities.hpp"
#include "stargraph/seba.hpp"
#include "stargraph/secular.hpp"
#include "stargraph/statistics.hpp"
#include "stargraph/torus_measure.hpp"

namespace stargraph {

std::string format_real(double x);

/// `n,k,z_prime,bracket_lo,bracket_hi`
void write_spectrum_csv(const std::filesystem::path& path, const std::vector<SpectralPoint>& spectrum);

/// `value`, one per line.
void write_values_csv(const std::filesystem::path& path, std::span<const double> values);

/// `bin_center,density`
void write_histogram_csv(const std::filesystem::path& path, const DensityCurve& histogram);

/// `x,pdf`, plus a JSON sidecar {mass, tail_coefficient, tail_exponent, l_bar}.
void write_curve_csv(const std::filesystem::path& path, const DensityCurve& curve);
void write_curve_json(const std::filesystem::path& path, const DensityCurve& curve);

/// `idx,n,m,energy`
void write_rectangle_csv(const std::filesystem::path& path, const RectangleSpectrum& spectrum);

/// {n, ks, ks_99_threshold}
void write_summary_json(const std::filesystem::path& path, std::size_t n, double ks);

/// {estimate, std_error, n_samples, max_weight_fraction}
void write_surface_json(const std::filesystem::path& path, const SurfaceEstimate& estimate);

/// Writes text to a file, creating parent directories.
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace stargraph
