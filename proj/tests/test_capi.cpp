#include "doctest.h"

#include <cmath>
#include <cstring>
#include <string>
#include <thread>
#include <vector>

#include "stargraph/stargraph.h"

TEST_CASE("status strings and version") {
  CHECK(std::string(sg_status_string(SG_OK)) == "ok");
  CHECK(std::strlen(sg_status_string(SG_ERR_NUMERICAL)) > 0);
  CHECK(std::strlen(sg_version()) > 0);
}

TEST_CASE("null pointers are rejected") {
  sg_lengths* l = nullptr;
  CHECK(sg_lengths_create(nullptr, 3, &l) == SG_ERR_NULL_POINTER);
  const double values[] = {1.0, 2.0};
  CHECK(sg_lengths_create(values, 2, nullptr) == SG_ERR_NULL_POINTER);
  double out = 0.0;
  CHECK(sg_eval_z(nullptr, 1.0, &out) == SG_ERR_NULL_POINTER);
  CHECK(sg_spectrum_get(nullptr, 0, nullptr) == SG_ERR_NULL_POINTER);
  CHECK(sg_selfcheck_run(1, 1, 1, nullptr) == SG_ERR_NULL_POINTER);
  sg_lengths_free(nullptr);
  sg_spectrum_free(nullptr);
  sg_samples_free(nullptr);
  sg_curve_free(nullptr);
  sg_rect_spectrum_free(nullptr);
  sg_report_free(nullptr);
}

TEST_CASE("invalid arguments carry a message") {
  sg_lengths* l = nullptr;
  const double bad[] = {1.0, -2.0};
  CHECK(sg_lengths_create(bad, 2, &l) == SG_ERR_INVALID_ARGUMENT);
  CHECK(l == nullptr);
  CHECK(std::strlen(sg_last_error()) > 0);
  CHECK(sg_lengths_generate(2.0, 0.1, 0, 1, &l) == SG_ERR_INVALID_ARGUMENT);
  sg_config cfg{};
  CHECK(sg_config_load("/nonexistent/stargraph.cfg", &cfg) == SG_ERR_IO);
}

TEST_CASE("errors are per thread") {
  const double bad[] = {1.0, 1.0};
  sg_lengths* l = nullptr;
  CHECK(sg_lengths_create(bad, 2, &l) == SG_ERR_INVALID_ARGUMENT);
  const std::string here = sg_last_error();
  std::string there = "unset";
  std::thread t([&] { there = sg_last_error(); });
  t.join();
  CHECK_FALSE(here.empty());
  CHECK(there.empty());
}

TEST_CASE("lengths and spectra through handles") {
  const double values[] = {1.0, 2.0};
  sg_lengths* l = nullptr;
  REQUIRE(sg_lengths_create(values, 2, &l) == SG_OK);
  CHECK(sg_lengths_size(l) == 2);
  double back[2] = {};
  CHECK(sg_lengths_values(l, back, 2) == SG_OK);
  CHECK(back[1] == 2.0);
  CHECK(sg_lengths_values(l, back, 1) == SG_ERR_INVALID_ARGUMENT);
  double z = 0.0, zp = 0.0;
  CHECK(sg_eval_z(l, 0.7, &z) == SG_OK);
  CHECK(sg_eval_z_prime(l, 0.7, &zp) == SG_OK);
  CHECK(z == doctest::Approx(6.640172095945969).epsilon(1e-14));
  CHECK(zp == doctest::Approx(70.94036087238647).epsilon(1e-14));

  sg_spectrum* s = nullptr;
  REQUIRE(sg_spectrum_compute(l, 100, 1, &s) == SG_OK);
  CHECK(sg_spectrum_size(s) == 100);
  sg_spectral_point p{};
  CHECK(sg_spectrum_get(s, 5, &p) == SG_OK);
  CHECK(p.index == 5);
  double zk = 1.0;
  CHECK(sg_eval_z(l, p.k, &zk) == SG_OK);
  CHECK(std::abs(zk) < 1e-8 * p.z_prime);
  CHECK(sg_spectrum_get(s, 100, &p) == SG_ERR_INVALID_ARGUMENT);

  double amp[2] = {}, norm = 0.0;
  CHECK(sg_spectrum_get(s, 7, &p) == SG_OK);
  CHECK(sg_eigenfunction_amplitudes(l, &p, amp, 2, &norm) == SG_OK);
  CHECK(values[0] * amp[0] + values[1] * amp[1] == doctest::Approx(2.0).epsilon(1e-12));

  sg_samples* zps = nullptr;
  CHECK(sg_scaled_z_prime(s, l, &zps) == SG_OK);
  CHECK(sg_samples_size(zps) == 99);
  sg_samples* amps = nullptr;
  CHECK(sg_scaled_amplitudes(s, l, 2, &amps) == SG_ERR_INVALID_ARGUMENT);
  sg_samples_free(zps);
  sg_spectrum_free(s);
  sg_lengths_free(l);
}

TEST_CASE("sampling and KS through handles") {
  sg_lengths* l = nullptr;
  REQUIRE(sg_lengths_generate(2.0, 0.1, 7, 1, &l) == SG_OK);
  sg_samples* s = nullptr;
  size_t discarded = 99;
  REQUIRE(sg_sample_z_over_k(l, 1e4 * M_PI / 2, 50000, 2, 2, &s, &discarded) == SG_OK);
  CHECK(discarded <= 1);
  double ks = 1.0;
  CHECK(sg_ks_distance(s, SG_REF_CAUCHY, 0.0, 1, &ks) == SG_OK);
  CHECK(ks < sg_ks_99_threshold(sg_samples_size(s)) * 1.5);
  sg_curve* h = nullptr;
  CHECK(sg_histogram(s, 80, -8.0, 8.0, &h) == SG_OK);
  CHECK(sg_curve_size(h) == 80);
  CHECK(sg_curve_mass(h) > 0.9);
  sg_curve_free(h);
  sg_samples_free(s);
  sg_lengths_free(l);
}

TEST_CASE("limit laws and Abel transform through handles") {
  double q = 0.0;
  CHECK(sg_limit_q(2.0, 2.0, &q) == SG_OK);
  CHECK(q == doctest::Approx(0.088907418984874132).epsilon(1e-12));
  CHECK(sg_limit_q(2.0, -1.0, &q) == SG_ERR_INVALID_ARGUMENT);
  CHECK(sg_dawson(1.0) == doctest::Approx(0.5380795069127684));

  std::vector<double> x, pdf;
  for (int i = 0; i <= 100; ++i) {
    x.push_back(1.0 + i / 100.0);
    pdf.push_back(1.0);
  }
  sg_curve* c = nullptr;
  REQUIRE(sg_curve_create(x.data(), pdf.data(), x.size(), &c) == SG_OK);
  double r0 = 0.0;
  CHECK(sg_abel_value_distribution(c, 0.0, &r0) == SG_OK);
  CHECK(r0 == doctest::Approx(0.26369654378952473).epsilon(1e-12));
  sg_curve_free(c);

  const double descending[] = {2.0, 1.0};
  const double ones[] = {1.0, 1.0};
  CHECK(sg_curve_create(descending, ones, 2, &c) == SG_ERR_INVALID_ARGUMENT);
}

TEST_CASE("surface measure through handles") {
  const double values[] = {2.0, 2.1};
  sg_lengths* l = nullptr;
  REQUIRE(sg_lengths_create(values, 2, &l) == SG_OK);
  const double thresholds[] = {2.0};
  sg_surface_estimate e{};
  CHECK(sg_surface_pv(l, thresholds, 1, 50000, 1, 1, &e) == SG_OK);
  const double exact = 2.0 / M_PI * std::acos(std::sqrt(4.1 / 8.0));
  CHECK(std::abs(e.estimate - exact) < 4 * e.std_error);
  CHECK(sg_surface_qv(l, 5, thresholds, 1, 50000, 1, 1, &e) == SG_ERR_INVALID_ARGUMENT);
  sg_lengths_free(l);
}

TEST_CASE("rectangle billiard through handles") {
  sg_rect_spectrum* r = nullptr;
  REQUIRE(sg_rect_spectrum_create(sg_golden_alpha(), 3000, &r) == SG_OK);
  int n = -1, m = -1;
  double e = -1.0;
  CHECK(sg_rect_level(r, 1, &n, &m, &e) == SG_OK);
  CHECK(n == 0);
  CHECK(m == 0);
  CHECK(e == 0.0);
  CHECK(sg_rect_level(r, 0, &n, &m, &e) == SG_ERR_INVALID_ARGUMENT);
  sg_seba_window w{};
  CHECK(sg_seba_make_window(r, 1000, 2000, 2.0, &w) == SG_OK);
  CHECK(w.c > 9e5);
  sg_samples* s = nullptr;
  CHECK(sg_seba_coefficient_samples(r, &w, 1500, 1000, 1, 1, &s) == SG_OK);
  CHECK(sg_samples_size(s) == 1000);
  sg_samples_free(s);
  sg_rect_spectrum_free(r);
}

TEST_CASE("presets and acceptance checks are listed") {
  CHECK(sg_preset_count() == 5);
  sg_preset p{};
  CHECK(sg_preset_get(0, &p) == SG_OK);
  CHECK(std::string(p.name) == "fig3");
  CHECK(sg_preset_get(5, &p) == SG_ERR_INVALID_ARGUMENT);
  sg_report* rep = nullptr;
  CHECK(sg_preset_run("nope", 1, 1, nullptr, &rep) == SG_ERR_INVALID_ARGUMENT);
  CHECK(sg_selfcheck_count() == 13);
  sg_check_result res{};
  CHECK(sg_selfcheck_run(14, 1, 1, &res) == SG_ERR_INVALID_ARGUMENT);
  CHECK(sg_selfcheck_run(1, 1, 1, &res) == SG_OK);
  CHECK(res.id == 1);
  CHECK(res.passed == 1);
  CHECK(std::strlen(res.name) > 0);
}
