#include "stargraph/special_functions.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "stargraph/error.hpp"

namespace stargraph {

namespace {

constexpr double kTwoOverSqrtPi = 2.0 * std::numbers::inv_sqrtpi;

// 2/sqrt(pi) * sum (-1)^n x^(2n+1) / (n! (2n+1)), used for |x| < 0.5.
double erf_series(double x) noexcept {
  const double x2 = x * x;
  double term = x;  // (-1)^n x^(2n+1) / n!
  double sum = x;
  for (int n = 1; n < 40; ++n) {
    term *= -x2 / n;
    const double add = term / (2 * n + 1);
    sum += add;
    if (std::abs(add) < 1e-17 * std::abs(sum)) break;
  }
  return kTwoOverSqrtPi * sum;
}

// Laplace continued fraction for erfc, even contraction, evaluated backward:
// erfc(x) = 2x e^{-x^2}/sqrt(pi) / (2x^2+1 - 1*2/(2x^2+5 - 3*4/(2x^2+9 - ...))).
// Depth grows as x -> 0.5 where convergence is slowest.
double erfc_continued_fraction(double x) noexcept {
  const double x2 = x * x;
  const int depth = 40 + static_cast<int>(std::ceil(120.0 / x2));
  double t = 0.0;
  for (int k = depth; k > 0; --k) {
    t = (2.0 * k - 1.0) * (2.0 * k) / (2.0 * x2 + 4.0 * k + 1.0 - t);
  }
  return kTwoOverSqrtPi * x * std::exp(-x2) / (2.0 * x2 + 1.0 - t);
}

// Rybicki's method: D(x) ~ (1/sqrt(pi)) sum_{n odd} exp(-(x - n h)^2) / n.
// Spacing h = 0.2 keeps the aliasing error near exp(-(pi/2h)^2) ~ 1e-27.
constexpr double kDawsonStep = 0.2;
constexpr int kDawsonTerms = 24;

const std::array<double, kDawsonTerms>& dawson_coefficients() {
  static const auto table = [] {
    std::array<double, kDawsonTerms> c{};
    for (int i = 0; i < kDawsonTerms; ++i) {
      const double t = (2 * i + 1) * kDawsonStep;
      c[i] = std::exp(-t * t);
    }
    return c;
  }();
  return table;
}

double dawson_rybicki(double x) noexcept {
  const auto& c = dawson_coefficients();
  const double ax = std::abs(x);
  const double n0 = 2.0 * std::nearbyint(0.5 * ax / kDawsonStep);
  const double xp = ax - n0 * kDawsonStep;
  double e1 = std::exp(2.0 * xp * kDawsonStep);
  const double e2 = e1 * e1;
  double d1 = n0 + 1.0;
  double d2 = d1 - 2.0;
  double sum = 0.0;
  for (int i = 0; i < kDawsonTerms; ++i) {
    sum += c[i] * (e1 / d1 + 1.0 / (d2 * e1));
    d1 += 2.0;
    d2 -= 2.0;
    e1 *= e2;
  }
  return std::copysign(std::numbers::inv_sqrtpi * std::exp(-xp * xp) * sum, x);
}

// D(x) = sum_n (-2)^n x^(2n+1) / (2n+1)!!, for small |x|.
double dawson_series(double x) noexcept {
  const double x2 = x * x;
  double term = x;
  double sum = x;
  for (int n = 1; n < 30; ++n) {
    term *= -2.0 * x2 / (2 * n + 1);
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

// D(x) ~ 1/(2x) * sum_n (2n-1)!! / (2x^2)^n for large |x|.
double dawson_asymptotic(double x) noexcept {
  const double inv = 1.0 / (2.0 * x * x);
  double term = 1.0;
  double sum = 1.0;
  for (int n = 1; n < 12; ++n) {
    term *= (2 * n - 1) * inv;
    sum += term;
  }
  return sum / (2.0 * x);
}

}  // namespace

double erf(double x) noexcept {
  if (std::isnan(x)) return x;
  const double ax = std::abs(x);
  if (ax < 0.5) return erf_series(x);
  return std::copysign(1.0 - erfc_continued_fraction(ax), x);
}

double erfc(double x) noexcept {
  if (std::isnan(x)) return x;
  if (std::abs(x) < 0.5) return 1.0 - erf_series(x);
  if (x > 0.0) return erfc_continued_fraction(x);
  return 2.0 - erfc_continued_fraction(-x);
}

double dawson(double x) noexcept {
  const double ax = std::abs(x);
  if (ax < 0.2) return dawson_series(x);
  if (ax > 40.0) return dawson_asymptotic(x);
  return dawson_rybicki(x);
}

QuadratureRule QuadratureRule::trapezoid(double half_width, std::size_t count) {
  if (count < 2 || !(half_width > 0.0)) {
    throw invalid_argument("quadrature: need >= 2 nodes and a positive half width");
  }
  QuadratureRule rule;
  rule.half_width = half_width;
  rule.nodes.resize(count);
  rule.weights.assign(count, 2.0 * half_width / static_cast<double>(count - 1));
  const double h = rule.weights[0];
  for (std::size_t i = 0; i < count; ++i) rule.nodes[i] = -half_width + h * static_cast<double>(i);
  rule.nodes.back() = half_width;
  rule.weights.front() *= 0.5;
  rule.weights.back() *= 0.5;
  return rule;
}

QuadratureRule QuadratureRule::gauss_legendre(std::size_t count) {
  if (count < 1) throw invalid_argument("quadrature: need >= 1 node");
  QuadratureRule rule;
  rule.half_width = 1.0;
  rule.nodes.resize(count);
  rule.weights.resize(count);
  const double n = static_cast<double>(count);
  for (std::size_t i = 0; i < (count + 1) / 2; ++i) {
    // Newton on P_n from the Chebyshev-like initial guess.
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (n + 0.5));
    double dp = 1.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (std::size_t k = 2; k <= count; ++k) {
        const double kk = static_cast<double>(k);
        const double p2 = ((2.0 * kk - 1.0) * x * p1 - (kk - 1.0) * p0) / kk;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[count - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[count - 1 - i] = w;
  }
  if (count % 2 == 1) rule.nodes[count / 2] = 0.0;
  return rule;
}

const QuadratureRule& gauss_weighted_rule() {
  static const QuadratureRule rule = QuadratureRule::trapezoid(kGaussHalfWidth, kGaussNodes);
  return rule;
}

double gauss_weighted_integral(const std::function<double(double)>& f) {
  return gauss_weighted_integral(f, gauss_weighted_rule());
}

double gauss_weighted_integral(const std::function<double(double)>& f, const QuadratureRule& rule) {
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double value = f(rule.nodes[i]);
    if (!std::isfinite(value)) {
      std::ostringstream os;
      os.precision(17);
      os << "gauss_weighted_integral: integrand not finite at node xi=" << rule.nodes[i];
      throw numerical_error(os.str());
    }
    sum += rule.weights[i] * value;
  }
  return sum;
}

}  // namespace stargraph
