#include "stargraph/secular.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <sstream>
#include <string>

#include "stargraph/error.hpp"
#include "stargraph/parallel.hpp"
#include "stargraph/rng.hpp"

namespace stargraph {

namespace {

// pi/2 as an unevaluated sum of two doubles.
constexpr double kHalfPiHi = 1.5707963267948966;
constexpr double kHalfPiLo = 6.123233995736766e-17;
constexpr double kTwoOverPi = 0.6366197723675814;

double sum_tan(double k, const BondLengths& lengths) noexcept {
  double z = 0.0;
  for (double l : lengths.values()) z += tan_kl(k, l);
  return z;
}

double sum_sec2(double k, const BondLengths& lengths) noexcept {
  double zp = 0.0;
  for (double l : lengths.values()) zp += l * sec2_kl(k, l);
  return zp;
}

// Signed pole marker for bond length l when k sits inside the guard band, else 0.
double pole_marker(double k, double l) noexcept {
  const ReducedAngle a = reduce_angle(k, l);
  if (!a.odd()) return 0.0;
  if (std::abs(a.remainder) >= kPoleGuard * std::abs(k) * l) return 0.0;
  // tan -> +inf from below the pole (remainder < 0), -inf from above.
  return a.remainder > 0.0 ? -std::numeric_limits<double>::infinity()
                           : std::numeric_limits<double>::infinity();
}

std::string describe_interval(double lo, double hi) {
  std::ostringstream os;
  os.precision(17);
  os << "(" << lo << ", " << hi << ")";
  return os.str();
}

}  // namespace

ReducedAngle reduce_angle(double k, double length) noexcept {
  const double p_hi = k * length;
  const double p_lo = std::fma(k, length, -p_hi);
  const double q = std::nearbyint(p_hi * kTwoOverPi);
  const double t_hi = q * kHalfPiHi;
  const double t_lo = std::fma(q, kHalfPiHi, -t_hi);
  const double r = (((p_hi - t_hi) - t_lo) + p_lo) - q * kHalfPiLo;
  const auto qi = static_cast<long long>(q);
  return {r, static_cast<int>(((qi % 4) + 4) % 4)};
}

double tan_kl(double k, double length) noexcept {
  const ReducedAngle a = reduce_angle(k, length);
  const double t = std::tan(a.remainder);
  return a.odd() ? -1.0 / t : t;
}

double sec2_kl(double k, double length) noexcept {
  const ReducedAngle a = reduce_angle(k, length);
  const double c = a.odd() ? std::sin(a.remainder) : std::cos(a.remainder);
  return 1.0 / (c * c);
}

bool near_pole(double k, const BondLengths& lengths) noexcept {
  for (double l : lengths.values()) {
    if (pole_marker(k, l) != 0.0) return true;
  }
  return false;
}

double eval_z(double k, const BondLengths& lengths) noexcept {
  for (double l : lengths.values()) {
    if (const double marker = pole_marker(k, l); marker != 0.0) return marker;
  }
  return sum_tan(k, lengths);
}

double eval_z_prime(double k, const BondLengths& lengths) noexcept {
  if (near_pole(k, lengths)) return std::numeric_limits<double>::infinity();
  return sum_sec2(k, lengths);
}

std::size_t pole_count(double length, double k_max) noexcept {
  if (!(k_max > 0.0)) return 0;
  return static_cast<std::size_t>(std::floor(k_max * length / std::numbers::pi + 0.5));
}

namespace {

double pole_position(std::size_t n, double length) noexcept {
  return (static_cast<double>(2 * n + 1) * std::numbers::pi) / (2.0 * length);
}

// k-way merge of the per-bond arithmetic pole sequences. Stops when `stop`
// says so for the next pole to be emitted.
template <typename Stop>
std::vector<Pole> merge_poles(const BondLengths& lengths, Stop stop) {
  struct Head {
    double k;
    std::size_t bond;
    std::size_t n;
  };
  const auto later = [](const Head& a, const Head& b) {
    return a.k > b.k || (a.k == b.k && a.bond > b.bond);
  };
  std::priority_queue<Head, std::vector<Head>, decltype(later)> heads(later);
  for (std::size_t j = 0; j < lengths.size(); ++j) heads.push({pole_position(0, lengths[j]), j, 0});

  std::vector<Pole> poles;
  while (!heads.empty()) {
    const Head h = heads.top();
    if (stop(h.k, poles.size())) break;
    heads.pop();
    if (!poles.empty() && h.k - poles.back().k < kPoleMergeThreshold) {
      std::ostringstream os;
      os.precision(17);
      os << "pole grid: poles of bonds " << poles.back().bond + 1 << " and " << h.bond + 1
         << " at k=" << poles.back().k << " and k=" << h.k << " are closer than "
         << kPoleMergeThreshold << " (near-commensurate lengths)";
      throw numerical_error(os.str());
    }
    poles.push_back({h.k, h.bond});
    heads.push({pole_position(h.n + 1, lengths[h.bond]), h.bond, h.n + 1});
  }
  return poles;
}

}  // namespace

PoleGrid build_pole_grid(const BondLengths& lengths, double k_max) {
  if (!(k_max > 0.0) || !std::isfinite(k_max)) throw invalid_argument("build_pole_grid: k_max must be > 0");
  PoleGrid grid;
  grid.k_max = k_max;
  grid.poles = merge_poles(lengths, [k_max](double k, std::size_t) { return k > k_max; });
  return grid;
}

PoleGrid first_poles(const BondLengths& lengths, std::size_t count) {
  if (count == 0) throw invalid_argument("first_poles: count must be >= 1");
  PoleGrid grid;
  grid.poles = merge_poles(lengths, [count](double, std::size_t have) { return have >= count; });
  grid.k_max = grid.poles.back().k;
  return grid;
}

double solve_bracket(const BondLengths& lengths, double lo, double hi) {
  const double width = hi - lo;
  if (!(width > 0.0)) throw numerical_error("solve_bracket: empty interval " + describe_interval(lo, hi));

  // Probe just inside the poles, where Z must be large negative / positive.
  const double ulp = std::nextafter(hi, std::numeric_limits<double>::infinity()) - hi;
  const double offset = std::max(width * 1e-9, 4.0 * ulp);
  if (2.0 * offset >= width) {
    throw numerical_error("solve_bracket: interval " + describe_interval(lo, hi) +
                          " too narrow to resolve in double precision");
  }
  double a = lo + offset;
  double b = hi - offset;
  double fa = sum_tan(a, lengths);
  double fb = sum_tan(b, lengths);
  if (!(fa < 0.0) || !(fb > 0.0)) {
    throw numerical_error("solve_bracket: sign condition violated on " + describe_interval(lo, hi) +
                          " (pole grid corrupted or repeated root)");
  }

  const double target = kBisectionWidth * width;
  while (b - a > target) {
    const double m = a + 0.5 * (b - a);
    if (m <= a || m >= b) break;
    const double fm = sum_tan(m, lengths);
    if (fm < 0.0) {
      a = m;
      fa = fm;
    } else if (fm > 0.0) {
      b = m;
      fb = fm;
    } else {
      return m;
    }
  }

  double best = std::abs(fa) < std::abs(fb) ? a : b;
  double best_f = std::min(std::abs(fa), std::abs(fb));
  for (int step = 0; step < kSecantSteps; ++step) {
    double x = b - fb * (b - a) / (fb - fa);
    if (!(x > a && x < b)) x = a + 0.5 * (b - a);
    if (x <= a || x >= b) break;
    const double fx = sum_tan(x, lengths);
    if (std::abs(fx) < best_f) {
      best = x;
      best_f = std::abs(fx);
    }
    if (fx < 0.0) {
      a = x;
      fa = fx;
    } else if (fx > 0.0) {
      b = x;
      fb = fx;
    } else {
      return x;
    }
  }
  return best;
}

std::vector<SpectralPoint> eigenvalues(const BondLengths& lengths, std::size_t n_eigs, int threads) {
  if (n_eigs == 0) throw invalid_argument("eigenvalues: n_eigs must be >= 1");
  lengths.require_distinct();

  const PoleGrid grid = first_poles(lengths, n_eigs);
  std::vector<SpectralPoint> spectrum(n_eigs);
  spectrum[0] = {0, 0.0, lengths.total(), -grid.poles[0].k, grid.poles[0].k};

  parallel_for(n_eigs - 1, threads, [&](std::size_t m) {
    const double lo = grid.poles[m].k;
    const double hi = grid.poles[m + 1].k;
    const double k = solve_bracket(lengths, lo, hi);
    spectrum[m + 1] = {m + 1, k, sum_sec2(k, lengths), lo, hi};
  });
  return spectrum;
}

namespace {

// Poles of one bond in (0, k], exact against pole_position.
std::size_t bond_poles_below(double length, double k) noexcept {
  std::size_t m = pole_count(length, k);
  while (m > 0 && pole_position(m - 1, length) > k) --m;
  while (pole_position(m, length) <= k) ++m;
  return m;
}

// The smallest pole strictly above k, with its bond.
Pole next_pole(const BondLengths& lengths, double k) noexcept {
  Pole best{std::numeric_limits<double>::infinity(), 0};
  for (std::size_t j = 0; j < lengths.size(); ++j) {
    const double p = pole_position(bond_poles_below(lengths[j], k), lengths[j]);
    if (p < best.k) best = {p, j};
  }
  return best;
}

}  // namespace

std::size_t poles_below(const BondLengths& lengths, double k) noexcept {
  if (!(k > 0.0)) return 0;
  std::size_t count = 0;
  for (double l : lengths.values()) count += bond_poles_below(l, k);
  return count;
}

SpectralPoint eigenvalue_at(const BondLengths& lengths, std::size_t n) {
  lengths.require_distinct();
  const Pole first = next_pole(lengths, 0.0);
  if (n == 0) return {0, 0.0, lengths.total(), -first.k, first.k};

  // Find a with exactly n-1 poles in (0, a]; the n-th pole is then the next one.
  double a = 0.0;
  double b = static_cast<double>(n + lengths.size()) * std::numbers::pi / lengths.total();
  while (poles_below(lengths, b) < n) b *= 2.0;
  while (poles_below(lengths, a) != n - 1) {
    const double m = a + 0.5 * (b - a);
    if (m <= a || m >= b) throw numerical_error("eigenvalue_at: cannot isolate pole " + std::to_string(n));
    if (poles_below(lengths, m) <= n - 1) {
      a = m;
    } else {
      b = m;
    }
  }
  const Pole lo = next_pole(lengths, a);
  const Pole hi = next_pole(lengths, lo.k);
  if (hi.k - lo.k < kPoleMergeThreshold) {
    std::ostringstream os;
    os.precision(17);
    os << "eigenvalue_at: poles of bonds " << lo.bond + 1 << " and " << hi.bond + 1 << " at k=" << lo.k
       << " and k=" << hi.k << " are closer than " << kPoleMergeThreshold << " (near-commensurate lengths)";
    throw numerical_error(os.str());
  }
  const double k = solve_bracket(lengths, lo.k, hi.k);
  return {n, k, sum_sec2(k, lengths), lo.k, hi.k};
}

std::vector<SpectralPoint> random_eigenvalues(const BondLengths& lengths, std::size_t count,
                                              std::size_t n_max, std::uint64_t seed, int threads) {
  if (count == 0) throw invalid_argument("random_eigenvalues: count must be >= 1");
  if (n_max == 0) throw invalid_argument("random_eigenvalues: n_max must be >= 1");
  lengths.require_distinct();
  std::vector<SpectralPoint> out(count);
  parallel_for(count, threads, [&](std::size_t i) {
    RandomSequence rng(seed, RngStream::eigen_subset, i);
    const auto n = 1 + static_cast<std::size_t>(rng.uniform() * static_cast<double>(n_max));
    out[i] = eigenvalue_at(lengths, std::min(n, n_max));
  });
  return out;
}

Eigenfunction amplitudes(const SpectralPoint& point, const BondLengths& lengths) {
  Eigenfunction ef;
  ef.point = point;
  ef.amplitude_sq.resize(lengths.size());
  double z_prime = 0.0;
  for (std::size_t j = 0; j < lengths.size(); ++j) {
    ef.amplitude_sq[j] = sec2_kl(point.k, lengths[j]);
    z_prime += lengths[j] * ef.amplitude_sq[j];
  }
  for (double& a : ef.amplitude_sq) a = 2.0 * a / z_prime;
  ef.norm_constant_sq = 2.0 / z_prime;
  return ef;
}

double eigenfunction_value(const Eigenfunction& ef, const BondLengths& lengths, std::size_t bond,
                           double x) {
  const double l = lengths[bond];
  const ReducedAngle a = reduce_angle(ef.point.k, l);
  // cos(k L) from the reduced angle, by quadrant.
  double cos_kl = 0.0;
  switch (a.quadrant) {
    case 0: cos_kl = std::cos(a.remainder); break;
    case 1: cos_kl = -std::sin(a.remainder); break;
    case 2: cos_kl = -std::cos(a.remainder); break;
    default: cos_kl = std::sin(a.remainder); break;
  }
  return std::sqrt(ef.norm_constant_sq) * std::cos(ef.point.k * (x - l)) / cos_kl;
}

WeylCount weyl_count_check(const BondLengths& lengths, double k_max, int threads) {
  const PoleGrid grid = build_pole_grid(lengths, k_max);
  const std::size_t poles = grid.poles.size();
  const auto spectrum = eigenvalues(lengths, poles + 1, threads);
  WeylCount out;
  out.pole_count = poles;
  out.zero_count = static_cast<std::size_t>(
      std::count_if(spectrum.begin(), spectrum.end(), [k_max](const SpectralPoint& p) { return p.k <= k_max; }));
  out.smooth_count = mean_density(lengths) * k_max;
  return out;
}

std::vector<double> scaled_z_prime(const std::vector<SpectralPoint>& spectrum, const BondLengths& lengths) {
  const double v2 = static_cast<double>(lengths.size() * lengths.size());
  std::vector<double> out;
  out.reserve(spectrum.size());
  for (const auto& p : spectrum) {
    if (p.index == 0) continue;
    out.push_back(p.z_prime / v2);
  }
  return out;
}

std::vector<double> scaled_amplitudes(const std::vector<SpectralPoint>& spectrum,
                                      const BondLengths& lengths, std::size_t bond) {
  if (bond >= lengths.size()) throw invalid_argument("scaled_amplitudes: bond index out of range");
  const double v2 = static_cast<double>(lengths.size() * lengths.size());
  std::vector<double> out;
  out.reserve(spectrum.size());
  for (const auto& p : spectrum) {
    if (p.index == 0) continue;
    out.push_back(v2 * 2.0 * sec2_kl(p.k, lengths[bond]) / p.z_prime);
  }
  return out;
}

}  // namespace stargraph
