#include "limitlaw/mellin.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "limitlaw/errors.hpp"
#include "limitlaw/gammakit.hpp"
#include "limitlaw/parallel.hpp"

namespace limitlaw::mellin {
namespace {

using gammakit::log_gamma;

constexpr double kMaxHeight = 1e4;
constexpr double kHeightScanStep = 0.5;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

// Left edge of the strip where every factor has Re(argument) > 0.
double domain_floor(const MellinSpec& spec) {
  double floor = -std::numeric_limits<double>::infinity();
  for (const auto& g : spec.factors) floor = std::max(floor, -g.shift / g.scale);
  return floor;
}

double lowest_abscissa(const MellinSpec& spec) {
  return std::max({0.5, domain_floor(spec) + 0.5, spec.rightmost_pole() + 0.5});
}

double saddle_abscissa(const MellinSpec& spec, double log_x) {
  // ln M(c) is convex in c, so the golden-section search is unimodal.
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = lowest_abscissa(spec);
  double hi = std::max(lo, spec.quadrature.max_abscissa);
  auto objective = [&](double c) { return spec.log_value(c) - c * log_x; };
  double a = hi - phi * (hi - lo);
  double b = lo + phi * (hi - lo);
  double fa = objective(a);
  double fb = objective(b);
  for (int it = 0; it < 80 && hi - lo > 1e-6; ++it) {
    if (fa < fb) {
      hi = b;
      b = a;
      fb = fa;
      a = hi - phi * (hi - lo);
      fa = objective(a);
    } else {
      lo = a;
      a = b;
      fa = fb;
      b = lo + phi * (hi - lo);
      fb = objective(b);
    }
  }
  return 0.5 * (lo + hi);
}

// ln(|M(c+iu)| / M(c)).
double log_decay(const MellinSpec& spec, double c, double u, double log_peak) {
  return spec.log_value(std::complex<double>(c, u)).real() - log_peak;
}

// Smallest scanned U where |M(c+iu)| is below the target both relative to
// M(c) and in absolute terms after the x^{-c} factor.
double adaptive_height(const MellinSpec& spec, double c, double log_peak, double log_x) {
  const double target = std::log(spec.quadrature.truncation_target);
  const double log_scale = std::max(log_peak - c * log_x, 0.0);
  int below = 0;
  for (double u = kHeightScanStep; u <= kMaxHeight; u += kHeightScanStep) {
    if (log_decay(spec, c, u, log_peak) + log_scale <= target) {
      if (++below == 2) return u;
    } else {
      below = 0;
    }
  }
  throw NumericalError("inverse Mellin: |M(c+iu)| does not decay below the truncation target by u = " +
                       fmt(kMaxHeight) + " on Re(s) = " + fmt(c));
}

double trapezoid_log_x(std::span<const double> x, std::span<const double> g) {
  double acc = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) {
    const double dy = std::log(x[i] / x[i - 1]);
    acc += 0.5 * dy * (x[i] * g[i] + x[i - 1] * g[i - 1]);
  }
  return acc;
}

struct PointResult {
  std::complex<double> value;
  double abscissa;
  double height;
  double step;
  double truncation;
};

PointResult invert_at(const MellinSpec& spec, double x) {
  const auto& q = spec.quadrature;
  const double log_x = std::log(x);
  const double c = q.policy == AbscissaPolicy::Fixed ? q.abscissa : saddle_abscissa(spec, log_x);
  const double log_peak = spec.log_value(c);
  const double h = q.step > 0.0 ? q.step : std::min(0.2, std::numbers::pi * c / 20.0);
  double big_u = 0.0;
  if (q.height > 0.0) {
    big_u = q.height;
    const double ratio = std::exp(log_decay(spec, c, big_u, log_peak));
    if (ratio > q.truncation_refuse) {
      throw NumericalError("inverse Mellin: integrand at |u| = U = " + fmt(big_u) +
                           " is " + fmt(ratio) + " of its peak on Re(s) = " + fmt(c) +
                           "; increase U");
    }
  } else {
    big_u = adaptive_height(spec, c, log_peak, log_x);
  }
  const double r_end = log_decay(spec, c, big_u, log_peak);
  const double r_prev = log_decay(spec, c, big_u - kHeightScanStep, log_peak);
  const double rate = std::max((r_prev - r_end) / kHeightScanStep, 1e-6);
  const double truncation = std::exp(log_peak - c * log_x + r_end) / (std::numbers::pi * rate);

  const auto n_max = static_cast<long>(std::ceil(big_u / h));
  std::complex<double> acc = 0.0;
  for (long n = -n_max; n <= n_max; ++n) {
    const std::complex<double> s(c, static_cast<double>(n) * h);
    acc += std::exp(spec.log_value(s) - s * log_x);
  }
  return {acc * (h / (2.0 * std::numbers::pi)), c, big_u, h, truncation};
}

}  // namespace

std::complex<double> MellinSpec::log_value(std::complex<double> s) const {
  std::complex<double> acc = log_constant + s * log_base;
  for (const auto& g : factors) {
    acc += static_cast<double>(g.power) * gammakit::log_gamma_complex(g.scale * s + g.shift);
  }
  return acc;
}

double MellinSpec::log_value(double s) const {
  double acc = log_constant + s * log_base;
  for (const auto& g : factors) acc += g.power * log_gamma(g.scale * s + g.shift);
  return acc;
}

double MellinSpec::value(double s) const { return std::exp(log_value(s)); }

double MellinSpec::rightmost_pole() const {
  double pole = -std::numeric_limits<double>::infinity();
  for (const auto& g : factors) {
    if (g.power > 0) pole = std::max(pole, -g.shift / g.scale);
  }
  return pole;
}

void MellinSpec::validate() const {
  for (const auto& g : factors) {
    if (!(g.scale > 0.0) || (g.power != 1 && g.power != -1)) {
      throw DomainError("MellinSpec '" + label + "': factors need scale > 0 and power ±1");
    }
  }
  if (quadrature.policy == AbscissaPolicy::Fixed &&
      !(quadrature.abscissa > std::max({0.0, rightmost_pole(), domain_floor(*this)}))) {
    throw DomainError("MellinSpec '" + label + "': abscissa c = " + fmt(quadrature.abscissa) +
                      " is not right of every pole");
  }
  const double mass = value(1.0);
  if (!(std::abs(mass - 1.0) <= 1e-10)) {
    throw DomainError("MellinSpec '" + label + "': M(1) = " + fmt(mass) + ", expected 1");
  }
}

double MellinSpec::upper_tail_bound(double x, double s) const {
  const double log_x = std::log(x);
  double best = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= 200; ++k) {
    best = std::min(best, log_value(s + k + 1.0) - k * log_x);
  }
  return std::exp(best);
}

double MellinSpec::lower_tail_bound(double x) const {
  const double floor = std::max(domain_floor(*this), rightmost_pole());
  const double q = 0.9 * (1.0 - floor);
  return std::exp(q * std::log(x) + log_value(1.0 - q));
}

MellinSpec spec_from_fkp_quarter() {
  MellinSpec spec;
  spec.label = "fkp_quarter";
  spec.params = {{"a_prime", 0.25}};
  spec.log_constant = 0.5 * std::numbers::ln2 + log_gamma(0.25) + log_gamma(0.5);
  spec.log_base = -0.5 * std::numbers::ln2;
  spec.factors = {{1.0, 0.0, 1}, {0.25, 0.0, -1}, {0.25, 0.25, -1}};
  return spec;
}

MellinSpec spec_from_mittag_leffler(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0, 1)");
  MellinSpec spec;
  spec.label = "mittag_leffler";
  spec.params = {{"alpha", alpha}};
  spec.factors = {{1.0, 0.0, 1}, {alpha, 1.0 - alpha, -1}};
  return spec;
}

MellinSpec spec_from_exponential() {
  MellinSpec spec;
  spec.label = "exponential";
  spec.factors = {{1.0, 0.0, 1}};
  return spec;
}

MellinSpec spec_from_beta_fraction(double alpha, unsigned m) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0, 1)");
  if (m < 1) throw DomainError("m must be a positive integer");
  MellinSpec spec;
  spec.label = "beta_fraction";
  spec.params = {{"alpha", alpha}, {"m", static_cast<double>(m)}};
  const double step = alpha / m;
  spec.factors = {{1.0, 0.0, 1}};
  for (unsigned j = 1; j <= m; ++j) {
    spec.log_constant += log_gamma(j * step);
    spec.factors.push_back({step, (j - 1.0) * step, -1});
  }
  return spec;
}

MellinSpec scaled(MellinSpec spec, double c) {
  if (!(c > 0.0)) throw DomainError("scale factor must be > 0");
  spec.log_base += std::log(c);
  spec.log_constant -= std::log(c);
  spec.params["scale"] = c;
  return spec;
}

std::vector<double> geometric_grid(double x_min, double x_max, std::size_t points) {
  if (!(x_min > 0.0) || !(x_max > x_min) || points < 2) {
    throw DomainError("grid needs 0 < x_min < x_max and at least 2 points");
  }
  std::vector<double> grid(points);
  const double lo = std::log(x_min);
  const double step = (std::log(x_max) - lo) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) grid[i] = std::exp(lo + step * static_cast<double>(i));
  grid.front() = x_min;
  grid.back() = x_max;
  return grid;
}

std::vector<double> default_grid(const MellinSpec& spec, std::size_t points, double mass,
                                 std::size_t cover_order) {
  const double log_mass = std::log(mass);
  double x_max = std::exp((spec.log_value(11.0) - log_mass) / 10.0);
  for (std::size_t s = 1; s <= cover_order; ++s) {
    const double sd = static_cast<double>(s);
    while (spec.upper_tail_bound(x_max, sd) > mass * spec.value(sd + 1.0)) x_max *= 1.1;
  }
  const double floor = std::max(domain_floor(spec), spec.rightmost_pole());
  const double q = 0.9 * (1.0 - floor);
  const double x_min = std::exp((log_mass - spec.log_value(1.0 - q)) / q);
  return geometric_grid(x_min, x_max, points);
}

std::complex<double> invert_point(const MellinSpec& spec, double x, double abscissa,
                                  double height, double step) {
  MellinSpec fixed = spec;
  fixed.quadrature.policy = AbscissaPolicy::Fixed;
  fixed.quadrature.abscissa = abscissa;
  fixed.quadrature.height = height;
  fixed.quadrature.step = step;
  fixed.validate();
  return invert_at(fixed, x).value;
}

DensityTable invert(const MellinSpec& spec, std::span<const double> grid, unsigned threads) {
  spec.validate();
  if (grid.empty()) throw DomainError("inverse Mellin: empty grid");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0) || (i > 0 && !(grid[i] > grid[i - 1]))) {
      throw DomainError("inverse Mellin: grid must be positive and strictly increasing");
    }
  }
  const std::size_t n = grid.size();
  DensityTable table;
  table.spec = spec;
  table.x.assign(grid.begin(), grid.end());
  table.f_raw.resize(n);
  table.imag_raw.resize(n);
  table.truncation_estimate.resize(n);
  table.abscissa.resize(n);
  table.height.resize(n);
  table.step.resize(n);

  parallel_for(n, threads, [&](std::size_t i) {
    const auto r = invert_at(spec, grid[i]);
    table.f_raw[i] = r.value.real();
    table.imag_raw[i] = r.value.imag();
    table.truncation_estimate[i] = r.truncation;
    table.abscissa[i] = r.abscissa;
    table.height[i] = r.height;
    table.step[i] = r.step;
  });

  std::vector<double> clamped(n);
  for (std::size_t i = 0; i < n; ++i) clamped[i] = std::max(table.f_raw[i], -kNegativityFloor);

  table.integral_raw = trapezoid_log_x(table.x, table.f_raw);
  table.mass_below_estimate = table.x.front() * std::max(table.f_raw.front(), 0.0);
  table.mass_above_bound = std::min(1.0, spec.upper_tail_bound(table.x.back()));
  // Tail estimates are only good enough to fold in when they are small.
  const double outside = table.mass_below_estimate + table.mass_above_bound;
  table.normalization =
      outside <= kRenormalizeTailMass
          ? trapezoid_log_x(table.x, clamped) + outside
          : 1.0;
  table.f.resize(n);
  for (std::size_t i = 0; i < n; ++i) table.f[i] = clamped[i] / table.normalization;
  table.cumulative.resize(n);
  table.cumulative[0] = table.mass_below_estimate / table.normalization;
  for (std::size_t i = 1; i < n; ++i) {
    table.cumulative[i] = table.cumulative[i - 1] + 0.5 * std::log(table.x[i] / table.x[i - 1]) *
                                                        (table.x[i] * table.f[i] +
                                                         table.x[i - 1] * table.f[i - 1]);
  }
  return table;
}

double DensityTable::at(double x0) const {
  if (x.empty() || x0 < x.front() || x0 > x.back()) return 0.0;
  const auto it = std::lower_bound(x.begin(), x.end(), x0);
  const auto i = static_cast<std::size_t>(it - x.begin());
  if (x[i] == x0 || i == 0) return f[i];
  const double w = std::log(x0 / x[i - 1]) / std::log(x[i] / x[i - 1]);
  return (1.0 - w) * f[i - 1] + w * f[i];
}

double DensityTable::cdf(double x0) const {
  if (x.empty()) return 0.0;
  if (x0 <= x.front()) return cumulative.front() * std::max(x0, 0.0) / x.front();
  if (x0 >= x.back()) return cumulative.back();
  const auto i = static_cast<std::size_t>(std::lower_bound(x.begin(), x.end(), x0) - x.begin());
  return cumulative[i - 1] + 0.5 * std::log(x0 / x[i - 1]) * (x0 * at(x0) + x[i - 1] * f[i - 1]);
}

moments::MomentSequence roundtrip_moments(const DensityTable& table, std::size_t max_order) {
  if (table.x.size() < 2) throw LengthError("roundtrip_moments: table needs at least 2 points");
  std::vector<double> values(max_order + 1, 1.0);
  std::vector<double> g(table.x.size());
  for (std::size_t s = 1; s <= max_order; ++s) {
    for (std::size_t i = 0; i < g.size(); ++i) {
      g[i] = std::pow(table.x[i], static_cast<double>(s)) * table.f[i];
    }
    values[s] = trapezoid_log_x(table.x, g);
    const double tail = table.spec.upper_tail_bound(table.x.back(), static_cast<double>(s));
    if (!(tail <= 1e-8 * values[s])) {
      throw NumericalError("roundtrip_moments: moment s=" + std::to_string(s) +
                           " may have up to " + fmt(tail) + " beyond x_max = " +
                           fmt(table.x.back()) + " (grid captures " + fmt(values[s]) + ")");
    }
  }
  return moments::MomentSequence(std::move(values), "roundtrip(" + table.spec.label + ")",
                                 table.spec.params);
}

}  // namespace limitlaw::mellin
