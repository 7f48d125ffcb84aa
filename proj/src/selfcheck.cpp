#include "stargraph/selfcheck.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <exception>
#include <numbers>
#include <sstream>

#include "stargraph/core_model.hpp"
#include "stargraph/diagnostics.hpp"
#include "stargraph/error.hpp"
#include "stargraph/limit_densities.hpp"
#include "stargraph/parallel.hpp"
#include "stargraph/presets.hpp"
#include "stargraph/secular.hpp"
#include "stargraph/special_functions.hpp"
#include "stargraph/statistics.hpp"
#include "stargraph/torus_measure.hpp"

namespace stargraph {

namespace {

using std::numbers::pi;

struct Outcome {
  bool passed = false;
  double value = 0.0;
  double threshold = 0.0;
  std::string detail;
};

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

BondLengths preset_lengths(const std::string& name, std::uint64_t seed) {
  const ExperimentPreset& p = find_preset(name);
  return generate_lengths({p.l_bar, p.delta_l}, p.v, seed);
}

Outcome exact_spectrum(std::uint64_t, int threads) {
  const BondLengths lengths({1.0});
  const auto spectrum = eigenvalues(lengths, 1001, threads);
  double worst = 0.0;
  for (const auto& p : spectrum) worst = std::max(worst, std::abs(p.k - static_cast<double>(p.index) * pi));
  return {worst < 1e-12, worst, 1e-12, "max |k_n - n pi| over n <= 1000"};
}

Outcome interlacing_weyl(std::uint64_t seed, int threads) {
  const BondLengths lengths = preset_lengths("fig3", seed);
  const auto spectrum = eigenvalues(lengths, 100000, threads);
  std::size_t bad = 0;
  for (std::size_t n = 1; n < spectrum.size(); ++n) {
    const auto& p = spectrum[n];
    if (!(p.k > p.bracket_lo && p.k < p.bracket_hi)) ++bad;
    if (p.bracket_lo != spectrum[n - 1].bracket_hi) ++bad;
    if (!(p.k > spectrum[n - 1].k)) ++bad;
  }
  const double k_last = spectrum.back().k;
  const auto count = static_cast<double>(std::count_if(
      spectrum.begin(), spectrum.end(), [k_last](const SpectralPoint& p) { return p.k <= k_last; }));
  const double deviation = std::abs(count - mean_density(lengths) * k_last);
  return {bad == 0 && deviation <= 8.0, deviation, 8.0,
          "|N(K) - d K| at K = k_99999; interlacing violations: " + std::to_string(bad)};
}

// Sum_j int_0^{L_j} psi_j^2 by composite Gauss-Legendre, each panel at most
// half a wavelength wide.
double quadrature_norm(const Eigenfunction& ef, const BondLengths& lengths, const QuadratureRule& gl) {
  double total = 0.0;
  for (std::size_t j = 0; j < lengths.size(); ++j) {
    const double l = lengths[j];
    const auto panels = static_cast<std::size_t>(std::ceil(ef.point.k * l / pi)) + 1;
    const double h = l / static_cast<double>(panels);
    for (std::size_t p = 0; p < panels; ++p) {
      const double mid = (static_cast<double>(p) + 0.5) * h;
      for (std::size_t q = 0; q < gl.nodes.size(); ++q) {
        const double psi = eigenfunction_value(ef, lengths, j, mid + 0.5 * h * gl.nodes[q]);
        total += 0.5 * h * gl.weights[q] * psi * psi;
      }
    }
  }
  return total;
}

Outcome normalization_identity(std::uint64_t seed, int threads) {
  const BondLengths lengths = preset_lengths("fig3", seed);
  const auto points = random_eigenvalues(lengths, 100, 100000, seed, threads);
  const QuadratureRule gl = QuadratureRule::gauss_legendre(16);
  std::vector<double> identity(points.size()), norm(points.size());
  parallel_for(points.size(), threads, [&](std::size_t i) {
    const Eigenfunction ef = amplitudes(points[i], lengths);
    double s = 0.0;
    for (std::size_t j = 0; j < lengths.size(); ++j) s += lengths[j] * ef.amplitude_sq[j];
    identity[i] = std::abs(s - 2.0);
    norm[i] = std::abs(quadrature_norm(ef, lengths, gl) - 1.0);
  });
  const double worst_identity = *std::max_element(identity.begin(), identity.end());
  const double worst_norm = *std::max_element(norm.begin(), norm.end());
  return {worst_identity < 1e-12 && worst_norm < 1e-8, worst_identity, 1e-12,
          "max |sum L A - 2|; max |int psi^2 - 1| = " + fmt(worst_norm) + " (bound 1e-8)"};
}

Outcome preset_ks(const std::string& name, std::uint64_t seed, int threads) {
  const PresetReport r = run_preset(name, seed, threads);
  const PresetCheck& c = r.checks.front();
  return {c.passed, c.value, c.bound_hi, "preset " + name + ", " + c.name};
}

Outcome fixed_k_lengths(std::uint64_t seed, int threads) {
  const double ks = ks_distance(sample_z_over_lengths({2.0, 0.1}, 7, 1e4, 100000, seed, threads), cauchy_cdf);
  double control = 0.0;
  {
    const ScopedWarningHandler quiet({});
    control = ks_distance(sample_z_over_lengths({2.0, 1e-5}, 7, 1e4, 100000, seed, threads), cauchy_cdf);
  }
  return {ks < 0.02 && control > 0.2, ks, 0.02,
          "k delta_l = 1e3; control with k delta_l = 0.1 gives " + fmt(control) + " (must exceed 0.2)"};
}

Outcome two_route(std::uint64_t seed, int threads) {
  const BondLengths lengths = generate_lengths({2.0, 1.0}, 4, seed);
  const auto spectrum = eigenvalues(lengths, 10001, threads);
  const std::vector<double> values = scaled_z_prime(spectrum, lengths);
  const EmpiricalDistribution emp(values);
  std::vector<double> thresholds;
  for (double q : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    thresholds.push_back(emp[static_cast<std::size_t>(q * static_cast<double>(emp.size()))]);
  }
  const auto surface = finite_v_pv(lengths, thresholds, 1000000, seed, threads);
  int agree = 0;
  double worst = 0.0;
  for (std::size_t i = 0; i < thresholds.size(); ++i) {
    const EigenAverage e = eigen_fraction(values, thresholds[i]);
    const double z = std::abs(e.estimate - surface[i].estimate) / std::hypot(e.std_error, surface[i].std_error);
    worst = std::max(worst, z);
    if (z <= 3.0) ++agree;
  }
  return {agree >= 4, static_cast<double>(agree), 4.0,
          "thresholds within 3 combined standard errors (of 5); largest z = " + fmt(worst)};
}

Outcome tail_constant(std::uint64_t, int) {
  const double b = q_tail_coefficient(1.0);
  const double scaled = std::pow(200.0, 1.5) * limit_q(200.0, 2.0);
  const double rel = std::abs(scaled / (0.348 / std::sqrt(2.0)) - 1.0);
  return {std::abs(b - 0.348) <= 0.004 && rel <= 0.1, b, 0.348,
          "b(1) within 0.004 of 0.348; eta^1.5 Q(200) = " + fmt(scaled) + ", off by " + fmt(rel) +
              " relative (bound 0.1)"};
}

// Q from the complex-erfc form, with erfc(z) summed from its Maclaurin series.
double limit_q_complex_form(double eta, double l_bar) {
  const auto erfc_series = [](std::complex<double> z) {
    std::complex<double> term = z;
    std::complex<double> sum = z;
    const std::complex<double> z2 = z * z;
    for (int n = 1; n < 5000; ++n) {
      term *= -z2 / static_cast<double>(n);
      const std::complex<double> add = term / static_cast<double>(2 * n + 1);
      sum += add;
      if (std::abs(add) < 1e-17 * std::abs(sum)) break;
    }
    return 1.0 - 2.0 * std::numbers::inv_sqrtpi * sum;
  };
  const double s = std::sqrt(l_bar * eta);
  const std::complex<double> i(0.0, 1.0);
  const double integral = gauss_weighted_integral([&](double xi) {
    const double m = m_profile(xi);
    const double a2 = l_bar * eta * m * m / 8.0;
    const std::complex<double> z = s * m / (2.0 * i * std::sqrt(2.0));
    return (std::exp(-xi * xi / 4.0 - a2) * erfc_series(z)).imag();
  });
  return integral / (2.0 * std::pow(pi, 1.5) * eta);
}

Outcome density_sanity(std::uint64_t, int threads) {
  const double p_mass = tabulate_limit_p(2.0, {}, threads).mass;
  const double q_mass = tabulate_limit_q(2.0, {}, threads).mass;
  double worst_form = 0.0;
  for (double eta : {0.5, 2.0, 8.0}) {
    worst_form = std::max(worst_form, std::abs(limit_q(eta, 2.0) - limit_q_complex_form(eta, 2.0)));
  }
  const double worst_mass = std::max(std::abs(p_mass - 1.0), std::abs(q_mass - 1.0));
  return {worst_mass < 1e-4 && worst_form < 1e-8, worst_mass, 1e-4,
          "mass P = " + fmt(p_mass) + ", mass Q = " + fmt(q_mass) + "; Dawson vs complex form max diff " +
              fmt(worst_form) + " (bound 1e-8)"};
}

Outcome seba_constant_check(std::uint64_t seed, int threads) {
  const PresetReport r = run_preset("fig7", seed, threads);
  const PresetCheck& c = r.checks.front();
  return {c.passed, c.value, c.bound_hi,
          "relative error of c against 9.75e5; tail slope " + fmt(r.checks.back().value)};
}

Outcome abel_oracle(std::uint64_t, int) {
  DensityCurve uniform;
  for (int i = 0; i <= 100; ++i) {
    uniform.x.push_back(1.0 + i / 100.0);
    uniform.pdf.push_back(1.0);
  }
  uniform.mass = 1.0;
  const double expected = 2.0 / pi * (std::sqrt(2.0) - 1.0);
  const double err = std::abs(abel_value_distribution(uniform, 0.0) - expected);
  double asym = 0.0;
  for (double r : {0.1, 0.5, 0.9, 1.2, 1.4}) {
    asym = std::max(asym, std::abs(abel_value_distribution(uniform, r) - abel_value_distribution(uniform, -r)));
  }
  return {err < 1e-8 && asym == 0.0, err, 1e-8, "|R(0) - (2/pi)(sqrt 2 - 1)|; max |R(r) - R(-r)| = " + fmt(asym)};
}

using CheckFn = Outcome (*)(std::uint64_t, int);

struct CheckSpec {
  const char* name;
  double budget_seconds;  // 0 for no budget
  CheckFn fn;
};

const CheckSpec kChecks[kCheckCount] = {
    {"exact spectrum v=1", 1.0, exact_spectrum},
    {"interlacing and Weyl count v=7", 30.0, interlacing_weyl},
    {"normalization identity", 0.0, normalization_identity},
    {"Z/v over k is Cauchy (fig3)", 10.0,
     [](std::uint64_t s, int t) { return preset_ks("fig3", s, t); }},
    {"Z/v over lengths is Cauchy", 0.0, fixed_k_lengths},
    {"surface measure vs eigenvalue average v=4", 0.0, two_route},
    {"Z'/v^2 against P (fig4)", 300.0, [](std::uint64_t s, int t) { return preset_ks("fig4", s, t); }},
    {"v^2 A against Q (fig5)", 0.0, [](std::uint64_t s, int t) { return preset_ks("fig5", s, t); }},
    {"Q tail constant", 0.0, tail_constant},
    {"density normalization and Q forms", 0.0, density_sanity},
    {"Seba spectral sum is Cauchy (fig6)", 0.0,
     [](std::uint64_t s, int t) { return preset_ks("fig6", s, t); }},
    {"Seba constant c", 0.0, seba_constant_check},
    {"Abel transform oracle", 0.0, abel_oracle},
};

}  // namespace

std::string check_name(int id) {
  if (id < 1 || id > kCheckCount) throw invalid_argument("check id must be in 1.." + std::to_string(kCheckCount));
  return kChecks[id - 1].name;
}

CheckResult run_check(int id, std::uint64_t seed, int threads) {
  CheckResult result;
  result.id = id;
  result.name = check_name(id);
  const CheckSpec& spec = kChecks[id - 1];
  const auto start = std::chrono::steady_clock::now();
  try {
    const Outcome o = spec.fn(seed, threads);
    result.passed = o.passed;
    result.value = o.value;
    result.threshold = o.threshold;
    result.detail = o.detail;
  } catch (const std::exception& e) {
    result.passed = false;
    result.detail = std::string("error: ") + e.what();
  }
  result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (spec.budget_seconds > 0.0 && result.seconds > spec.budget_seconds) {
    result.passed = false;
    result.detail += "; exceeded time budget of " + fmt(spec.budget_seconds) + " s";
  }
  return result;
}

std::vector<CheckResult> run_all_checks(std::uint64_t seed, int threads) {
  std::vector<CheckResult> out;
  for (int id = 1; id <= kCheckCount; ++id) out.push_back(run_check(id, seed, threads));
  return out;
}

std::string format_check(const CheckResult& r) {
  char head[160];
  std::snprintf(head, sizeof head, "%s %2d %-44s value=%-12.6g threshold=%-10.6g (%.2f s)", r.passed ? "PASS" : "FAIL",
                r.id, r.name.c_str(), r.value, r.threshold, r.seconds);
  return std::string(head) + " " + r.detail;
}

}  // namespace stargraph
