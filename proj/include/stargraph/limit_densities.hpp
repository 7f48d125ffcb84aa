#pragma once

// Limiting value distributions of star-graph quantities as v -> infinity:
//   * Cauchy law for Z/v,
//   * P(y) for Z'(k_n)/v^2,
//   * Q(eta) for v^2 A_i(n) with its eta^{-3/2} tail,
//   * R(r), the pointwise eigenfunction-value density obtained from Q.

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace stargraph {

/// Power-law tail pdf(x) ~ coefficient * x^(-exponent) beyond the grid.
struct TailModel {
  double coefficient = 0.0;
  double exponent = 0.0;
};

/// A density tabulated on an ascending grid.
struct DensityCurve {
  std::vector<double> x;
  std::vector<double> pdf;
  double mass = 0.0;  // integral over the grid plus any analytic head/tail
  std::optional<TailModel> tail;
  std::optional<TailModel> head;  // pdf ~ coefficient * x^(-exponent) below the grid
  double l_bar = 0.0;  // 0 when the curve is not tied to a bond-length scale

  /// Linear interpolation inside the grid, tail model above it, head model
  /// (or 0) below it.
  double operator()(double at) const noexcept;
};

/// m(xi) = 2/sqrt(pi) exp(-xi^2/4) + xi erf(xi/2). Even, >= 2/sqrt(pi).
double m_profile(double xi) noexcept;

double cauchy_pdf(double y) noexcept;
double cauchy_cdf(double y) noexcept;

/// P(y) for y > 0, 0 otherwise.
double limit_p(double y, double l_bar);

/// int_0^R P(y) dy in closed form:
/// (1/(2 sqrt(pi))) int exp(-xi^2/4) erfc(sqrt(l_bar) m(xi) / (2 sqrt(R))) dxi.
double limit_p_cdf(double r, double l_bar);

/// Q(eta) for eta > 0, 0 otherwise; evaluated as
/// (1/(pi^2 eta)) int exp(-xi^2/4) D(sqrt(l_bar eta / 8) m(xi)) dxi.
double limit_q(double eta, double l_bar);

/// b in Q(eta) ~ b eta^{-3/2}: (sqrt(2)/(sqrt(l_bar) pi^2)) int exp(-xi^2/4)/m(xi) dxi.
double q_tail_coefficient(double l_bar);

/// Q(eta) ~ 2 sqrt(l_bar) / (pi^2 sqrt(eta)) as eta -> 0.
double q_head_coefficient(double l_bar);

/// P(y) ~ c1 y^{-3/2} - c2 y^{-5/2} as y -> infinity; returns {c1, c2}.
std::pair<double, double> p_tail_coefficients(double l_bar);

struct PCurveOptions {
  double y_min = 1e-3;
  double y_max = 1e3;
  std::size_t points = 2001;  // logarithmic grid
};

struct QCurveOptions {
  double eta_min = 1e-8;
  double eta_max = 200.0;
  std::size_t points = 2001;  // logarithmic grid
};

DensityCurve tabulate_limit_p(double l_bar, const PCurveOptions& options = {}, int threads = 0);
DensityCurve tabulate_limit_q(double l_bar, const QCurveOptions& options = {}, int threads = 0);

/// R(r) = (1/pi) int_{r^2}^inf Q(s) ds / sqrt(s - r^2), with Q given by a
/// tabulated curve (piecewise linear, plus its tail model). The substitution
/// s = r^2 + u^2 removes the singularity; segments are integrated exactly.
double abel_value_distribution(const DensityCurve& q, double r);

/// CDF backed by a monotone table, for fast repeated evaluation.
/// Interpolation is linear in log(x) on logarithmic tables. Outside the
/// table, F ~ x^lower_power below and 1 - F ~ x^(-upper_power) above when
/// those powers are given; otherwise the end values are held.
class TabulatedCdf {
 public:
  TabulatedCdf(std::vector<double> x, std::vector<double> cdf, bool log_x = false,
               std::optional<double> lower_power = std::nullopt,
               std::optional<double> upper_power = std::nullopt);

  double operator()(double at) const noexcept;
  const std::vector<double>& x() const noexcept { return x_; }
  const std::vector<double>& values() const noexcept { return cdf_; }

 private:
  std::vector<double> x_;
  std::vector<double> cdf_;
  bool log_x_ = false;
  std::optional<double> lower_power_;
  std::optional<double> upper_power_;
};

/// CDF of P on a logarithmic grid, exact at every node (closed form).
TabulatedCdf limit_p_cdf_table(double l_bar, int threads = 0);

/// CDF of Q from a tabulated curve: cumulative integral on the grid, analytic
/// head below and tail above.
TabulatedCdf limit_q_cdf_table(const DensityCurve& q);

}  // namespace stargraph
