#include "stargraph/limit_densities.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "stargraph/error.hpp"
#include "stargraph/parallel.hpp"
#include "stargraph/special_functions.hpp"

namespace stargraph {

namespace {

using std::numbers::pi;

// The default rule folded onto xi >= 0: every integrand here is even in xi.
struct ProfileTable {
  std::vector<double> xi;
  std::vector<double> weight;
  std::vector<double> gauss;  // exp(-xi^2/4)
  std::vector<double> m;
};

const ProfileTable& profile_table() {
  static const ProfileTable table = [] {
    const QuadratureRule& rule = gauss_weighted_rule();
    ProfileTable t;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double xi = rule.nodes[i];
      if (xi < 0.0) continue;
      t.xi.push_back(xi);
      t.weight.push_back(xi == 0.0 ? rule.weights[i] : 2.0 * rule.weights[i]);
      t.gauss.push_back(std::exp(-0.25 * xi * xi));
      t.m.push_back(m_profile(xi));
    }
    return t;
  }();
  return table;
}

void require_l_bar(double l_bar) {
  if (!(l_bar > 0.0) || !std::isfinite(l_bar)) throw invalid_argument("limit densities: l_bar must be > 0");
}

std::vector<double> log_grid(double lo, double hi, std::size_t n) {
  if (!(lo > 0.0) || !(hi > lo) || n < 3) throw invalid_argument("density grid: need 0 < lo < hi and >= 3 points");
  std::vector<double> g(n);
  const double step = std::log(hi / lo) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) g[i] = lo * std::exp(step * static_cast<double>(i));
  g.back() = hi;
  return g;
}

// Integral of pdf over a logarithmic grid, in t = log x: composite Simpson
// on f(t) = pdf * x (trapezoid closes an even number of intervals).
double log_grid_integral(const std::vector<double>& x, const std::vector<double>& pdf) {
  const std::size_t n = x.size();
  const double h = std::log(x.back() / x.front()) / static_cast<double>(n - 1);
  auto f = [&](std::size_t i) { return pdf[i] * x[i]; };
  double sum = 0.0;
  std::size_t last = n - 1;
  if (last % 2 == 1) {
    sum += 0.5 * h * (f(last - 1) + f(last));
    --last;
  }
  for (std::size_t i = 0; i + 2 <= last; i += 2) sum += h / 3.0 * (f(i) + 4.0 * f(i + 1) + f(i + 2));
  return sum;
}

}  // namespace

double DensityCurve::operator()(double at) const noexcept {
  if (x.empty() || !(at > 0.0 || x.front() <= at)) return 0.0;
  if (at < x.front()) return head ? head->coefficient * std::pow(at, -head->exponent) : 0.0;
  if (at > x.back()) return tail ? tail->coefficient * std::pow(at, -tail->exponent) : 0.0;
  const auto it = std::upper_bound(x.begin(), x.end(), at);
  if (it == x.end()) return pdf.back();
  const std::size_t i = static_cast<std::size_t>(it - x.begin()) - 1;
  const double t = (at - x[i]) / (x[i + 1] - x[i]);
  return pdf[i] + t * (pdf[i + 1] - pdf[i]);
}

double m_profile(double xi) noexcept {
  return 2.0 * std::numbers::inv_sqrtpi * std::exp(-0.25 * xi * xi) + xi * erf(0.5 * xi);
}

double cauchy_pdf(double y) noexcept { return 1.0 / (pi * (1.0 + y * y)); }

double cauchy_cdf(double y) noexcept { return 0.5 + std::atan(y) / pi; }

double limit_p(double y, double l_bar) {
  require_l_bar(l_bar);
  if (!(y > 0.0)) return 0.0;
  const auto& t = profile_table();
  double sum = 0.0;
  for (std::size_t i = 0; i < t.xi.size(); ++i) {
    const double m = t.m[i];
    sum += t.weight[i] * m * std::exp(-0.25 * t.xi[i] * t.xi[i] - l_bar * m * m / (4.0 * y));
  }
  return std::sqrt(l_bar) / (4.0 * pi * y * std::sqrt(y)) * sum;
}

double limit_p_cdf(double r, double l_bar) {
  require_l_bar(l_bar);
  if (!(r > 0.0)) return 0.0;
  const auto& t = profile_table();
  const double scale = std::sqrt(l_bar) / (2.0 * std::sqrt(r));
  double sum = 0.0;
  for (std::size_t i = 0; i < t.xi.size(); ++i) {
    if (t.gauss[i] == 0.0) continue;
    sum += t.weight[i] * t.gauss[i] * erfc(scale * t.m[i]);
  }
  return 0.5 * std::numbers::inv_sqrtpi * sum;
}

double limit_q(double eta, double l_bar) {
  require_l_bar(l_bar);
  if (!(eta > 0.0)) return 0.0;
  const auto& t = profile_table();
  const double scale = std::sqrt(l_bar * eta / 8.0);
  double sum = 0.0;
  for (std::size_t i = 0; i < t.xi.size(); ++i) {
    if (t.gauss[i] == 0.0) continue;
    sum += t.weight[i] * t.gauss[i] * dawson(scale * t.m[i]);
  }
  return sum / (pi * pi * eta);
}

double q_tail_coefficient(double l_bar) {
  require_l_bar(l_bar);
  const auto& t = profile_table();
  double sum = 0.0;
  for (std::size_t i = 0; i < t.xi.size(); ++i) sum += t.weight[i] * t.gauss[i] / t.m[i];
  return std::numbers::sqrt2 / (std::sqrt(l_bar) * pi * pi) * sum;
}

double q_head_coefficient(double l_bar) {
  require_l_bar(l_bar);
  return 2.0 * std::sqrt(l_bar) / (pi * pi);
}

std::pair<double, double> p_tail_coefficients(double l_bar) {
  require_l_bar(l_bar);
  const auto& t = profile_table();
  double first = 0.0;
  double third = 0.0;
  for (std::size_t i = 0; i < t.xi.size(); ++i) {
    const double m = t.m[i];
    first += t.weight[i] * t.gauss[i] * m;
    third += t.weight[i] * t.gauss[i] * m * m * m;
  }
  const double scale = std::sqrt(l_bar) / (4.0 * pi);
  return {scale * first, scale * 0.25 * l_bar * third};
}

DensityCurve tabulate_limit_p(double l_bar, const PCurveOptions& options, int threads) {
  require_l_bar(l_bar);
  DensityCurve curve;
  curve.l_bar = l_bar;
  curve.x = log_grid(options.y_min, options.y_max, options.points);
  curve.pdf.resize(curve.x.size());
  parallel_for(curve.x.size(), threads, [&](std::size_t i) { curve.pdf[i] = limit_p(curve.x[i], l_bar); });

  const auto [c1, c2] = p_tail_coefficients(l_bar);
  const double y = options.y_max;
  curve.tail = TailModel{c1, 1.5};
  curve.mass = log_grid_integral(curve.x, curve.pdf) + 2.0 * c1 / std::sqrt(y) - 2.0 / 3.0 * c2 / (y * std::sqrt(y));
  return curve;
}

DensityCurve tabulate_limit_q(double l_bar, const QCurveOptions& options, int threads) {
  require_l_bar(l_bar);
  DensityCurve curve;
  curve.l_bar = l_bar;
  curve.x = log_grid(options.eta_min, options.eta_max, options.points);
  curve.pdf.resize(curve.x.size());
  parallel_for(curve.x.size(), threads, [&](std::size_t i) { curve.pdf[i] = limit_q(curve.x[i], l_bar); });

  const double b = q_tail_coefficient(l_bar);
  const double q0 = q_head_coefficient(l_bar);
  const double eta_max = options.eta_max;
  // Next-order tail term, c2 eta^{-5/2}, read off the last grid point.
  const double c2 = (curve.pdf.back() * eta_max * std::sqrt(eta_max) - b) * eta_max;
  const double head_mass = 2.0 * q0 * std::sqrt(options.eta_min);
  const double tail_mass = 2.0 * b / std::sqrt(eta_max) + 2.0 / 3.0 * c2 / (eta_max * std::sqrt(eta_max));
  curve.tail = TailModel{b, 1.5};
  curve.head = TailModel{q0, 0.5};
  curve.mass = head_mass + log_grid_integral(curve.x, curve.pdf) + tail_mass;
  return curve;
}

double abel_value_distribution(const DensityCurve& q, double r) {
  if (q.x.size() < 2 || q.x.size() != q.pdf.size()) throw invalid_argument("abel: curve needs >= 2 grid points");
  const double r2 = r * r;
  double total = 0.0;  // int Q(r^2 + u^2) du

  // Head below the grid, Q ~ c s^{-1/2}: int (r^2+u^2)^{-1/2} du = asinh(u/|r|).
  if (q.head && r2 < q.x.front()) {
    if (q.head->exponent != 0.5) throw invalid_argument("abel: head model must have exponent 1/2");
    if (r2 == 0.0) return std::numeric_limits<double>::infinity();
    const double u_first = std::sqrt(q.x.front() - r2);
    total += q.head->coefficient * std::asinh(u_first / std::abs(r));
  }

  for (std::size_t k = 0; k + 1 < q.x.size(); ++k) {
    const double s0 = q.x[k];
    const double s1 = q.x[k + 1];
    if (s1 <= r2) continue;
    const double slope = (q.pdf[k + 1] - q.pdf[k]) / (s1 - s0);
    const double u0 = std::sqrt(std::max(s0, r2) - r2);
    const double u1 = std::sqrt(s1 - r2);
    const double constant = q.pdf[k] + slope * (r2 - s0);
    total += constant * (u1 - u0) + slope * (u1 * u1 * u1 - u0 * u0 * u0) / 3.0;
  }

  if (q.tail) {
    const double u_last = std::sqrt(std::max(q.x.back(), r2) - r2);
    const double b = q.tail->coefficient;
    const double p = q.tail->exponent;
    if (p == 1.5) {
      // int_{u}^inf (r^2+u^2)^{-3/2} du = 1 / (sqrt(S) (sqrt(S) + u)), S = r^2 + u^2.
      const double s = r2 + u_last * u_last;
      total += b / (std::sqrt(s) * (std::sqrt(s) + u_last));
    } else {
      if (!(p > 0.5)) throw invalid_argument("abel: tail exponent must exceed 1/2");
      // u = u_last / t maps (u_last, inf) onto (0, 1]; composite Simpson in t.
      const double u_start = u_last > 0.0 ? u_last : std::sqrt(r2);
      const std::size_t n = 2000;
      const double h = 1.0 / static_cast<double>(n);
      auto f = [&](double t) {
        if (t == 0.0) return 0.0;
        const double u = u_start / t;
        return b * std::pow(r2 + u * u, -p) * u_start / (t * t);
      };
      double sum = f(0.0) + f(1.0);
      for (std::size_t i = 1; i < n; ++i) sum += (i % 2 ? 4.0 : 2.0) * f(h * static_cast<double>(i));
      total += sum * h / 3.0;
    }
  }
  return 2.0 / pi * total;
}

TabulatedCdf::TabulatedCdf(std::vector<double> x, std::vector<double> cdf, bool log_x,
                           std::optional<double> lower_power, std::optional<double> upper_power)
    : x_(std::move(x)), cdf_(std::move(cdf)), log_x_(log_x), lower_power_(lower_power), upper_power_(upper_power) {
  if (x_.size() < 2 || x_.size() != cdf_.size()) throw invalid_argument("TabulatedCdf: need >= 2 matching points");
  for (std::size_t i = 1; i < x_.size(); ++i) {
    if (!(x_[i] > x_[i - 1])) throw invalid_argument("TabulatedCdf: grid must be strictly increasing");
    if (cdf_[i] < cdf_[i - 1]) throw invalid_argument("TabulatedCdf: values must be nondecreasing");
  }
  if (log_x_ && !(x_.front() > 0.0)) throw invalid_argument("TabulatedCdf: log grid must be positive");
}

double TabulatedCdf::operator()(double at) const noexcept {
  if (std::isnan(at)) return at;
  if (at <= x_.front()) {
    if (lower_power_ && at > 0.0) return cdf_.front() * std::pow(at / x_.front(), *lower_power_);
    if (lower_power_) return 0.0;
    return cdf_.front();
  }
  if (at >= x_.back()) {
    if (upper_power_) return 1.0 - (1.0 - cdf_.back()) * std::pow(x_.back() / at, *upper_power_);
    return cdf_.back();
  }
  const auto it = std::upper_bound(x_.begin(), x_.end(), at);
  const std::size_t i = static_cast<std::size_t>(it - x_.begin()) - 1;
  const double t = log_x_ ? std::log(at / x_[i]) / std::log(x_[i + 1] / x_[i]) : (at - x_[i]) / (x_[i + 1] - x_[i]);
  return cdf_[i] + t * (cdf_[i + 1] - cdf_[i]);
}

TabulatedCdf limit_p_cdf_table(double l_bar, int threads) {
  require_l_bar(l_bar);
  auto grid = log_grid(1e-3, 1e5, 1601);
  std::vector<double> cdf(grid.size());
  parallel_for(grid.size(), threads, [&](std::size_t i) { cdf[i] = limit_p_cdf(grid[i], l_bar); });
  for (std::size_t i = 1; i < cdf.size(); ++i) cdf[i] = std::max(cdf[i], cdf[i - 1]);
  return TabulatedCdf(std::move(grid), std::move(cdf), true, std::nullopt, 0.5);
}

TabulatedCdf limit_q_cdf_table(const DensityCurve& q) {
  if (q.x.size() < 3 || !q.head || !(q.x.front() > 0.0)) {
    throw invalid_argument("limit_q_cdf_table: needs a logarithmic Q curve with head model");
  }
  std::vector<double> cdf(q.x.size());
  cdf[0] = q.head->coefficient / (1.0 - q.head->exponent) * std::pow(q.x.front(), 1.0 - q.head->exponent);
  for (std::size_t i = 1; i < q.x.size(); ++i) {
    // Trapezoid in log x on pdf * x.
    const double h = std::log(q.x[i] / q.x[i - 1]);
    cdf[i] = cdf[i - 1] + 0.5 * h * (q.pdf[i] * q.x[i] + q.pdf[i - 1] * q.x[i - 1]);
  }
  const double head_power = 1.0 - q.head->exponent;
  const double tail_power = q.tail ? q.tail->exponent - 1.0 : 0.5;
  return TabulatedCdf(q.x, std::move(cdf), true, head_power, tail_power);
}

}  // namespace stargraph
