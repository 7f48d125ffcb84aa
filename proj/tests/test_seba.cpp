#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "json.hpp"
#include "stargraph/error.hpp"
#include "stargraph/limit_densities.hpp"
#include "stargraph/presets.hpp"
#include "stargraph/seba.hpp"

using namespace stargraph;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST_CASE("rectangle levels") {
  const double alpha = golden_alpha();
  CHECK(alpha == doctest::Approx((std::sqrt(5.0) - 1) / 2).epsilon(1e-15));
  const RectangleSpectrum s = rectangle_levels(alpha, 3000);
  REQUIRE(s.size() == 3000);
  CHECK(s.levels[0].n == 0);
  CHECK(s.levels[0].m == 0);
  CHECK(s.energy(1) == 0.0);
  CHECK(s.levels[1].n == 0);
  CHECK(s.levels[1].m == 1);
  CHECK(s.energy(2) == doctest::Approx(pi * pi * std::sqrt(alpha)).epsilon(1e-15));
  const auto one_zero = std::find_if(s.levels.begin(), s.levels.end(),
                                     [](const RectangleLevel& l) { return l.n == 1 && l.m == 0; });
  REQUIRE(one_zero != s.levels.end());
  CHECK(one_zero->energy == doctest::Approx(pi * pi / std::sqrt(alpha)).epsilon(1e-15));
  CHECK(one_zero->energy == doctest::Approx(12.554330731116197).epsilon(1e-14));
  CHECK(rectangle_energy(alpha, 2, 3) == doctest::Approx(pi * pi * (4 / std::sqrt(alpha) + 9 * std::sqrt(alpha))));
  CHECK(std::is_sorted(s.levels.begin(), s.levels.end(),
                       [](const auto& a, const auto& b) { return a.energy < b.energy; }));
  CHECK_THROWS_AS(s.energy(0), invalid_argument);
  CHECK_THROWS_AS(s.energy(3001), invalid_argument);

  // Brute-force count of all modes below the 3000th energy.
  const double e_top = s.energy(3000);
  std::size_t below = 0;
  for (int n = 0; n < 400; ++n)
    for (int m = 0; m < 400; ++m)
      if (rectangle_energy(alpha, n, m) < e_top) ++below;
  CHECK(below < 3000);
  CHECK(s.energy(below + 1) == e_top);
}

TEST_CASE("level lists are stable under extension") {
  const double alpha = golden_alpha();
  const RectangleSpectrum a = rectangle_levels(alpha, 100);
  const RectangleSpectrum b = rectangle_levels(alpha, 3000);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a.levels[i].n == b.levels[i].n);
    CHECK(a.levels[i].m == b.levels[i].m);
  }
}

TEST_CASE("Weyl law for the rectangle") {
  const double alpha = golden_alpha();
  const RectangleSpectrum s = rectangle_levels(alpha, 3000);
  for (std::size_t n : {500u, 1500u, 3000u}) {
    const double smooth = rectangle_weyl_count(alpha, s.energy(n));
    CHECK(std::abs(static_cast<double>(n) - smooth) <= 3.0 * std::sqrt(static_cast<double>(n)));
  }
}

TEST_CASE("window and Seba constant") {
  const RectangleSpectrum s = rectangle_levels(golden_alpha(), 3000);
  const SebaWindow w = make_window(s, 1000, 2000);
  CHECK(w.e_min == s.energy(1000));
  CHECK(w.e_max == s.energy(2000));
  CHECK(w.mean_density == doctest::Approx(1000.0 / (w.e_max - w.e_min)).epsilon(0.05));
  CHECK(w.c == seba_constant(w.e_min, w.e_max, w.mean_density, w.l_bar));
  CHECK(w.c == doctest::Approx(2.0 / w.l_bar * std::pow((w.e_max - w.e_min) * w.mean_density, 2)));
  CHECK(std::abs(w.c - kSebaReferenceConstant) / kSebaReferenceConstant < 0.05);
  CHECK_THROWS_AS(make_window(s, 2000, 1000), invalid_argument);
  CHECK_THROWS_AS(make_window(s, 1000, 3001), invalid_argument);
}

TEST_CASE("determinant samples") {
  const RectangleSpectrum s = rectangle_levels(golden_alpha(), 3000);
  const SebaWindow w = make_window(s, 1000, 2000);
  const auto a = seba_determinant_samples(s, w, 20000, 3, 1);
  const auto b = seba_determinant_samples(s, w, 20000, 3, 4);
  REQUIRE(a.size() == 20000);
  for (std::size_t i = 0; i < a.size(); i += 37) CHECK(a[i] == b[i]);

  SebaWindow doubled = w;
  doubled.mean_density *= 2;
  const auto half = seba_determinant_samples(s, doubled, 20000, 3, 1);
  for (std::size_t i = 0; i < a.size(); i += 37) CHECK(half[i] == doctest::Approx(a[i] / 2).epsilon(1e-13));

  const double med = a.median();
  const double ks_reflect =
      ks_distance(a, [&](double x) { return std::clamp(1.0 - a.cdf(2 * med - x), 0.0, 1.0); });
  CHECK(ks_reflect < 3.0 / std::sqrt(20000.0));

  CHECK(ks_distance(a, cauchy_cdf) < 0.05);
  const auto one_level = seba_determinant_samples(s, w, 20000, 3, 1, 1);
  CHECK(ks_distance(one_level, cauchy_cdf) > 0.2);
}

TEST_CASE("coefficient samples") {
  const RectangleSpectrum s = rectangle_levels(golden_alpha(), 3000);
  const SebaWindow w = make_window(s, 1000, 2000);
  const auto a = seba_coefficient_samples(s, w, 1500, 50000, 2, 2);
  REQUIRE(a.size() == 50000);
  CHECK(a[0] > 0.0);
  CHECK(a[a.size() - 1] <= w.c * (1 + 1e-12));
  const double slope = ccdf_log_slope(a, 10.0, 100.0);
  CHECK(slope > -0.7);
  CHECK(slope < -0.3);
  CHECK_THROWS_AS(seba_coefficient_samples(s, w, 0, 100, 1, 1), invalid_argument);
  CHECK_THROWS_AS(seba_coefficient_samples(s, w, 3001, 100, 1, 1), invalid_argument);
}

TEST_CASE("CCDF slope of an exact power law") {
  std::vector<double> v;
  const std::size_t n = 100000;
  for (std::size_t i = 1; i <= n; ++i) v.push_back(std::pow((i - 0.5) / n, -2.0));
  CHECK(ccdf_log_slope(EmpiricalDistribution(v), 2.0, 50.0) == doctest::Approx(-0.5).epsilon(0.01));
}

TEST_CASE("billiard presets") {
  const auto dir = std::filesystem::temp_directory_path() / "stargraph_test_fig6";
  std::filesystem::remove_all(dir);
  const PresetReport r = run_preset("fig6", 1, 2, dir);
  CHECK(r.passed());
  CHECK_FALSE(r.files.empty());
  for (const auto& f : r.files) CHECK(std::filesystem::exists(dir / f));
  std::ifstream in(dir / "report.json");
  const auto j = nlohmann::json::parse(in);
  CHECK(j["preset"] == "fig6");
  CHECK(j["passed"] == true);
  CHECK(j["ks"].get<double>() < 0.05);
  CHECK_THROWS_AS(find_preset("fig99"), invalid_argument);
  CHECK(experiment_presets().size() == 5);
  std::filesystem::remove_all(dir);
}
