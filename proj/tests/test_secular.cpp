#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "stargraph/core_model.hpp"
#include "stargraph/error.hpp"
#include "stargraph/secular.hpp"

using namespace stargraph;

namespace {

long double naive_z(long double k, const std::vector<long double>& lengths) {
  long double z = 0.0L;
  for (long double l : lengths) z += std::tan(k * l);
  return z;
}

// Roots of Z located by a dense scan for sign changes from - to +, refined by
// bisection in long double. Sign changes across poles go from + to -.
std::vector<long double> scan_roots(const std::vector<long double>& lengths, long double k_max,
                                    std::size_t steps) {
  std::vector<long double> roots;
  long double prev_k = 1e-9L;
  long double prev = naive_z(prev_k, lengths);
  for (std::size_t i = 1; i <= steps; ++i) {
    const long double k = k_max * static_cast<long double>(i) / steps;
    const long double z = naive_z(k, lengths);
    if (prev < 0 && z > 0) {
      long double lo = prev_k, hi = k;
      for (int it = 0; it < 200; ++it) {
        const long double mid = 0.5L * (lo + hi);
        (naive_z(mid, lengths) < 0 ? lo : hi) = mid;
      }
      roots.push_back(0.5L * (lo + hi));
    }
    prev = z;
    prev_k = k;
  }
  return roots;
}

}  // namespace

TEST_CASE("secular function reference values") {
  const BondLengths l({1.0, 2.0});
  CHECK(eval_z(0.7, l) == doctest::Approx(6.640172095945969).epsilon(1e-14));
  CHECK(eval_z_prime(0.7, l) == doctest::Approx(70.94036087238647).epsilon(1e-14));
}

TEST_CASE("Z' matches a central difference of Z") {
  const BondLengths l = generate_lengths({2.0, 0.1}, 7, 3);
  for (double k : {0.3, 1.9, 17.25, 123.4, 2048.75}) {
    if (near_pole(k, l)) continue;
    const double h = 1e-6;
    const double fd = (eval_z(k + h, l) - eval_z(k - h, l)) / (2 * h);
    CHECK(eval_z_prime(k, l) == doctest::Approx(fd).epsilon(1e-5));
    CHECK(eval_z_prime(k, l) >= l.total());
  }
}

TEST_CASE("argument reduction stays accurate for large k") {
  const double length = 2.0345678901234;
  for (double k : {1e3, 1.2345e5, 9.87654321e6, 3.1e8}) {
    const long double x = static_cast<long double>(k) * static_cast<long double>(length);
    const double expected = static_cast<double>(std::tan(x));
    CHECK(tan_kl(k, length) == doctest::Approx(expected).epsilon(1e-7));
    CHECK(sec2_kl(k, length) == doctest::Approx(1.0 + expected * expected).epsilon(1e-7));
  }
}

TEST_CASE("a single bond has k_n = n pi / L") {
  const BondLengths l({1.0});
  const auto spec = eigenvalues(l, 500, 1);
  REQUIRE(spec.size() == 500);
  for (std::size_t n = 0; n < spec.size(); ++n)
    CHECK(std::abs(spec[n].k - n * std::numbers::pi) < 1e-12 * std::max<double>(1.0, n));
}

TEST_CASE("eigenvalues agree with an independent dense scan") {
  const std::vector<double> values = {1.0, 1.37, 2.11};
  const BondLengths l(values);
  const std::vector<long double> lv(values.begin(), values.end());
  const auto roots = scan_roots(lv, 40.0L, 400000);
  const auto spec = eigenvalues(l, roots.size() + 1, 1);
  REQUIRE(spec.size() == roots.size() + 1);
  CHECK(spec[0].k == 0.0);
  for (std::size_t i = 0; i < roots.size(); ++i)
    CHECK(std::abs(spec[i + 1].k - static_cast<double>(roots[i])) < 1e-10);
}

TEST_CASE("spectrum invariants") {
  const BondLengths l = generate_lengths({2.0, 0.1}, 7, 1);
  const auto spec = eigenvalues(l, 20000, 2);
  REQUIRE(spec.size() == 20000);
  for (std::size_t n = 1; n < spec.size(); ++n) {
    const auto& p = spec[n];
    CHECK(p.index == n);
    CHECK(p.bracket_lo < p.k);
    CHECK(p.k < p.bracket_hi);
    CHECK(p.bracket_lo == spec[n - 1].bracket_hi);
    CHECK(p.k > spec[n - 1].k);
    CHECK(p.z_prime >= l.total());
    const double ulp = std::nextafter(p.k, 2 * p.k) - p.k;
    CHECK(std::abs(eval_z(p.k, l)) <= 16.0 * ulp * p.z_prime + 1e-12);
  }
  const double k_max = spec.back().k;
  CHECK(std::abs(static_cast<double>(spec.size()) - mean_density(l) * k_max) <= 8.0);
}

TEST_CASE("eigenvalue_at reproduces the enumerated spectrum") {
  const BondLengths l = generate_lengths({2.0, 0.1}, 5, 9);
  const auto spec = eigenvalues(l, 3000, 1);
  for (std::size_t n : {0u, 1u, 2u, 17u, 999u, 2999u}) {
    const SpectralPoint p = eigenvalue_at(l, n);
    CHECK(p.index == n);
    CHECK(p.k == spec[n].k);
    CHECK(p.bracket_lo == spec[n].bracket_lo);
    CHECK(p.bracket_hi == spec[n].bracket_hi);
  }
  for (std::size_t n = 1; n < spec.size(); n += 97)
    CHECK(poles_below(l, spec[n].k) == n);
}

TEST_CASE("random eigenvalue subsets are reproducible and thread independent") {
  const BondLengths l = generate_lengths({2.0, 0.1}, 7, 4);
  const auto a = random_eigenvalues(l, 500, 100000000, 21, 1);
  const auto b = random_eigenvalues(l, 500, 100000000, 21, 4);
  REQUIRE(a.size() == 500);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].index == b[i].index);
    CHECK(a[i].k == b[i].k);
    CHECK(a[i].index >= 1);
    CHECK(a[i].index <= 100000000);
  }
  CHECK_THROWS_AS(random_eigenvalues(l, 10, 0, 1), invalid_argument);
}

TEST_CASE("merged poles are reported") {
  const BondLengths l({1.0, 1.0 + 1e-15});
  CHECK_THROWS_AS(build_pole_grid(l, 10.0), numerical_error);
}

TEST_CASE("Weyl count") {
  const BondLengths l = generate_lengths({2.0, 0.1}, 7, 2);
  const WeylCount w = weyl_count_check(l, 500.0, 1);
  CHECK(w.smooth_count == doctest::Approx(mean_density(l) * 500.0));
  CHECK(std::abs(static_cast<double>(w.zero_count) - w.smooth_count) <= 8.0);
  CHECK(w.zero_count >= w.pole_count);
  CHECK(w.zero_count <= w.pole_count + 1);
}

TEST_CASE("eigenfunctions satisfy the vertex conditions") {
  const BondLengths l = generate_lengths({2.0, 0.1}, 4, 6);
  const auto spec = eigenvalues(l, 50, 1);
  for (std::size_t n = 1; n < spec.size(); n += 7) {
    const Eigenfunction ef = amplitudes(spec[n], l);
    double weighted = 0.0;
    for (std::size_t i = 0; i < l.size(); ++i) weighted += l[i] * ef.amplitude_sq[i];
    CHECK(weighted == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(ef.norm_constant_sq == doctest::Approx(2.0 / spec[n].z_prime));

    const double center = eigenfunction_value(ef, l, 0, 0.0);
    double flux = 0.0;
    const double h = 1e-6;
    for (std::size_t i = 0; i < l.size(); ++i) {
      CHECK(eigenfunction_value(ef, l, i, 0.0) == doctest::Approx(center).epsilon(1e-10));
      flux += (eigenfunction_value(ef, l, i, h) - eigenfunction_value(ef, l, i, 0.0)) / h;
      const double end_slope =
          (eigenfunction_value(ef, l, i, l[i]) - eigenfunction_value(ef, l, i, l[i] - h)) / h;
      const double scale = spec[n].k * std::sqrt(ef.amplitude_sq[i]);
      CHECK(std::abs(end_slope) < 1e-4 * scale);
      const double peak = std::pow(eigenfunction_value(ef, l, i, l[i]), 2);
      CHECK(peak == doctest::Approx(ef.amplitude_sq[i]).epsilon(1e-10));
    }
    CHECK(std::abs(flux) < 1e-4 * spec[n].k * std::sqrt(ef.norm_constant_sq) * l.size());
  }
}

TEST_CASE("scaled statistics are consistent") {
  const BondLengths l = generate_lengths({2.0, 0.1}, 7, 8);
  const auto spec = eigenvalues(l, 200, 1);
  const auto zp = scaled_z_prime(spec, l);
  const auto amp = scaled_amplitudes(spec, l, 2);
  REQUIRE(zp.size() == 199);
  REQUIRE(amp.size() == 199);
  const double v2 = 49.0;
  for (std::size_t i = 0; i < zp.size(); ++i) {
    CHECK(zp[i] == doctest::Approx(spec[i + 1].z_prime / v2));
    CHECK(amp[i] * zp[i] == doctest::Approx(2.0 * sec2_kl(spec[i + 1].k, l[2])).epsilon(1e-12));
  }
  CHECK_THROWS_AS(scaled_amplitudes(spec, l, 7), invalid_argument);
}
