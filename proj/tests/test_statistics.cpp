#include "doctest.h"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "stargraph/core_model.hpp"
#include "stargraph/diagnostics.hpp"
#include "stargraph/error.hpp"
#include "stargraph/limit_densities.hpp"
#include "stargraph/statistics.hpp"

using namespace stargraph;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST_CASE("empirical distributions") {
  const EmpiricalDistribution e({3.0, 1.0, 2.0});
  CHECK(e.size() == 3);
  CHECK(e[0] == 1.0);
  CHECK(e.median() == 2.0);
  CHECK(e.cdf(0.5) == 0.0);
  CHECK(e.cdf(2.0) == doctest::Approx(2.0 / 3.0));
  CHECK(e.cdf(9.0) == 1.0);
  CHECK(EmpiricalDistribution({1.0, 2.0, 3.0, 4.0}).median() == 2.5);
  CHECK_THROWS_AS(EmpiricalDistribution({}), invalid_argument);
  CHECK_THROWS_AS(EmpiricalDistribution({1.0, std::nan("")}), invalid_argument);
}

TEST_CASE("KS distance of exact quantiles is 1/(2n)") {
  const std::size_t n = 1000;
  std::vector<double> q;
  for (std::size_t i = 1; i <= n; ++i) q.push_back(std::tan(pi * ((i - 0.5) / n - 0.5)));
  CHECK(ks_distance(EmpiricalDistribution(q), cauchy_cdf) == doctest::Approx(0.5 / n).epsilon(1e-9));
  CHECK(ks_distance(EmpiricalDistribution({0.0}), cauchy_cdf) == doctest::Approx(0.5));
}

TEST_CASE("KS distance is invariant under monotone reparameterisation") {
  const auto c = cauchy_samples(5000, 4);
  std::vector<double> angles;
  for (double x : c) angles.push_back(std::atan(x));
  const double a = ks_distance(EmpiricalDistribution(c), cauchy_cdf);
  const double b = ks_distance(EmpiricalDistribution(angles), [](double t) { return t / pi + 0.5; });
  CHECK(a == doctest::Approx(b).epsilon(1e-10));
}

TEST_CASE("KS distance validates the reference cdf") {
  const EmpiricalDistribution e({-1.0, 0.0, 1.0});
  CHECK_THROWS_AS(ks_distance(e, [](double x) { return std::sin(5 * x) * 0.5 + 0.5; }), invalid_argument);
  CHECK_THROWS_AS(ks_distance(e, [](double x) { return x + 0.5; }), invalid_argument);
}

TEST_CASE("Cauchy samples pass their own KS test") {
  const auto c = cauchy_samples(100000, 1);
  REQUIRE(c.size() == 100000);
  CHECK(ks_distance(EmpiricalDistribution(c), cauchy_cdf) < ks_99_threshold(c.size()));
  CHECK(ks_99_threshold(10000) == doctest::Approx(0.016276));
}

TEST_CASE("histograms") {
  const auto c = cauchy_samples(100000, 2);
  const EmpiricalDistribution e(c);
  const DensityCurve h = histogram(e, 80, -8.0, 8.0);
  REQUIRE(h.x.size() == 80);
  double area = 0.0;
  for (double p : h.pdf) area += p * 0.2;
  const double inside = e.cdf(8.0) - e.cdf(-8.0);
  CHECK(area == doctest::Approx(inside).epsilon(1e-3));
  CHECK(h.mass == doctest::Approx(area));
  CHECK(inside == doctest::Approx(2 * std::atan(8.0) / pi).epsilon(0.01));
  CHECK(h(0.0) == doctest::Approx(1.0 / pi).epsilon(0.05));
  CHECK_THROWS_AS(histogram(e, 1, -1.0, 1.0), invalid_argument);
  CHECK_THROWS_AS(histogram(e, 10, 1.0, -1.0), invalid_argument);
}

TEST_CASE("Z over k is Cauchy, reproducibly") {
  const BondLengths l = generate_lengths({2.0, 0.1}, 7, 1);
  const double k_max = 1e4 * pi / 2.0;
  SamplingReport report;
  const auto a = sample_z_over_k(l, k_max, 100000, 3, 1, &report);
  const auto b = sample_z_over_k(l, k_max, 100000, 3, 4);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); i += 101) CHECK(a[i] == b[i]);
  CHECK(report.requested == 100000);
  CHECK(report.discarded <= 1);
  CHECK(a.size() + report.discarded == 100000);
  CHECK(ks_distance(a, cauchy_cdf) < 0.02);
}

TEST_CASE("a single bond already gives Cauchy values") {
  const BondLengths l({2.0});
  const auto a = sample_z_over_k(l, 1e4, 50000, 8, 2);
  CHECK(ks_distance(a, cauchy_cdf) < ks_99_threshold(a.size()));
}

TEST_CASE("Z over lengths is Cauchy and narrow boxes are not") {
  const auto a = sample_z_over_lengths({2.0, 0.1}, 7, 1e4, 100000, 5, 2);
  CHECK(ks_distance(a, cauchy_cdf) < 0.02);

  std::vector<std::string> warnings;
  {
    ScopedWarningHandler capture([&](std::string_view m) { warnings.emplace_back(m); });
    const auto narrow = sample_z_over_lengths({2.0, 1e-5}, 7, 1e4, 20000, 5, 2);
    CHECK(ks_distance(narrow, cauchy_cdf) > 0.2);
  }
  CHECK(warnings.size() == 1);
}

TEST_CASE("short wavenumber ranges warn") {
  std::vector<std::string> warnings;
  ScopedWarningHandler capture([&](std::string_view m) { warnings.emplace_back(m); });
  const BondLengths l({2.0, 2.1});
  sample_z_over_k(l, 10.0, 5000, 1, 1);
  CHECK_FALSE(warnings.empty());
}
