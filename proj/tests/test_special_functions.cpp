#include "doctest.h"

#include <cmath>
#include <numbers>

#include "stargraph/error.hpp"
#include "stargraph/special_functions.hpp"

using namespace stargraph;

namespace {

// Dawson's function by composite Simpson on D(x) = int_0^x exp(t^2 - x^2) dt.
double dawson_simpson(double x) {
  const int n = 20000;
  const double h = x / n;
  double s = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double t = i * h;
    const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    s += w * std::exp((t - x) * (t + x));
  }
  return s * h / 3.0;
}

}  // namespace

TEST_CASE("error function reference values") {
  CHECK(stargraph::erf(1.0) == doctest::Approx(0.8427007929497149).epsilon(1e-15));
  CHECK(stargraph::erfc(2.0) == doctest::Approx(0.004677734981047266).epsilon(1e-14));
  CHECK(stargraph::erfc(0.3) == doctest::Approx(0.6713732405408726).epsilon(1e-15));
  CHECK(stargraph::erfc(5.0) == doctest::Approx(1.5374597944280349e-12).epsilon(1e-13));
  CHECK(stargraph::erf(0.0) == 0.0);
}

TEST_CASE("error function identities and agreement with the C library") {
  for (double x = -6.0; x <= 6.0; x += 0.037) {
    CHECK(stargraph::erf(-x) == -stargraph::erf(x));
    CHECK(stargraph::erf(x) + stargraph::erfc(x) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(stargraph::erfc(x) == doctest::Approx(std::erfc(x)).epsilon(1e-13));
  }
  CHECK(stargraph::erfc(30.0) == doctest::Approx(std::erfc(30.0)).epsilon(1e-12));
}

TEST_CASE("Dawson function reference values") {
  CHECK(dawson(1.0) == doctest::Approx(0.5380795069127684).epsilon(1e-14));
  CHECK(dawson(0.001) == doctest::Approx(0.0009999993333336).epsilon(1e-14));
  CHECK(dawson(3.0) == doctest::Approx(0.17827103061055829).epsilon(1e-14));
  CHECK(dawson(10.0) == doctest::Approx(0.050253847187598528).epsilon(1e-14));
  CHECK(dawson(0.2) == doctest::Approx(0.19475103336802805).epsilon(1e-14));
  CHECK(dawson(0.0) == 0.0);
}

TEST_CASE("Dawson function against direct quadrature and its asymptote") {
  for (double x = 0.05; x < 8.0; x += 0.173) {
    CHECK(dawson(x) == doctest::Approx(dawson_simpson(x)).epsilon(1e-10));
    CHECK(dawson(-x) == -dawson(x));
  }
  for (double x : {50.0, 1e3, 1e6}) {
    const double u = 1.0 / (x * x);
    const double series = 1.0 / (2 * x) * (1.0 + u / 2 + 3 * u * u / 4 + 15 * u * u * u / 8);
    CHECK(dawson(x) == doctest::Approx(series).epsilon(1e-12));
  }
}

TEST_CASE("Dawson function is continuous across its branch points") {
  for (double x = 0.01; x < 60.0; x *= 1.01) {
    const double h = 1e-7 * x;
    const double a = dawson(x - h), b = dawson(x + h);
    CHECK(std::abs(b - a) < 1e-6 * std::abs(a));
  }
}

TEST_CASE("Gauss-Legendre rules integrate polynomials exactly") {
  for (std::size_t n : {1u, 2u, 5u, 16u, 40u}) {
    const QuadratureRule rule = QuadratureRule::gauss_legendre(n);
    REQUIRE(rule.nodes.size() == n);
    for (std::size_t p = 0; p < 2 * n; ++p) {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) s += rule.weights[i] * std::pow(rule.nodes[i], p);
      const double exact = (p % 2) ? 0.0 : 2.0 / (p + 1);
      CHECK(s == doctest::Approx(exact).epsilon(1e-13));
    }
  }
  CHECK_THROWS_AS(QuadratureRule::gauss_legendre(0), invalid_argument);
}

TEST_CASE("Gaussian-weighted integral") {
  const auto g = [](double xi) { return std::exp(-xi * xi / 4); };
  CHECK(gauss_weighted_integral(g) == doctest::Approx(2.0 * std::sqrt(std::numbers::pi)).epsilon(1e-13));
  CHECK(gauss_weighted_integral([&](double xi) { return xi * xi * g(xi); }) ==
        doctest::Approx(4.0 * std::sqrt(std::numbers::pi)).epsilon(1e-12));
}
