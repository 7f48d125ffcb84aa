#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace stargraph {

/// Error function. Maclaurin series for |x| < 0.5, continued fraction for
/// erfc beyond; odd symmetry is exact.
double erf(double x) noexcept;

/// Complementary error function, computed directly (not as 1 - erf) for x > 0.5.
double erfc(double x) noexcept;

/// Dawson's integral D(x) = exp(-x^2) * int_0^x exp(t^2) dt.
double dawson(double x) noexcept;

/// Nodes and weights of a composite rule on [-half_width, half_width].
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  double half_width = 0.0;

  /// Composite trapezoid with `count` (>= 2) equally spaced nodes.
  static QuadratureRule trapezoid(double half_width, std::size_t count);

  /// Gauss-Legendre with `count` (>= 1) nodes on [-1, 1].
  static QuadratureRule gauss_legendre(std::size_t count);
};

inline constexpr double kGaussHalfWidth = 12.0;
inline constexpr std::size_t kGaussNodes = 4001;

/// The default rule for integrands damped by exp(-xi^2/4): trapezoid with
/// 4001 nodes on [-12, 12]. Truncation error is below C * exp(-36) * sqrt(4 pi).
const QuadratureRule& gauss_weighted_rule();

/// Integrates f over the real line with the given rule (default rule when
/// omitted). Throws numerical_error naming the node if f is not finite there.
double gauss_weighted_integral(const std::function<double(double)>& f);
double gauss_weighted_integral(const std::function<double(double)>& f, const QuadratureRule& rule);

}  // namespace stargraph
