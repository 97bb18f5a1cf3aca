#include "limitlaw/gammakit.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "limitlaw/errors.hpp"

namespace limitlaw::gammakit {
namespace {

// Stirling series coefficients B_{2k} / (2k (2k-1)), k = 1..11.
constexpr std::array<double, 11> kStirling{
    1.0 / 12.0,         -1.0 / 360.0,       1.0 / 1260.0,
    -1.0 / 1680.0,      1.0 / 1188.0,       -691.0 / 360360.0,
    1.0 / 156.0,        -3617.0 / 122400.0, 43867.0 / 244188.0,
    -174611.0 / 125400.0, 77683.0 / 5796.0};

// Split of ln 2 with trailing zero bits in the high part, so k * hi is exact.
constexpr double kLn2Hi = 6.93147180369123816490e-01;
constexpr double kLn2Lo = 1.90821492927058770002e-10;

constexpr double kHalfLogTwoPiHi = 0.9189385332046728;
constexpr double kHalfLogTwoPiLo = -3.8782941580672414e-17;

// Below this the real path recurses upward before applying Stirling.
constexpr double kStirlingThreshold = 10.0;

struct DoubleDouble {
  double hi;
  double lo;
};

DoubleDouble two_sum(double a, double b) {
  const double s = a + b;
  const double bb = s - a;
  const double err = (a - (s - bb)) + (b - bb);
  return {s, err};
}

DoubleDouble add(DoubleDouble a, DoubleDouble b) {
  DoubleDouble s = two_sum(a.hi, b.hi);
  s.lo += a.lo + b.lo;
  return two_sum(s.hi, s.lo);
}

DoubleDouble mul(double a, DoubleDouble b) {
  const double p = a * b.hi;
  const double err = std::fma(a, b.hi, -p);
  return two_sum(p, err + a * b.lo);
}

// ln x as an unevaluated sum, with the exponent contribution carried exactly.
DoubleDouble log_dd(double x) {
  int e = 0;
  double m = std::frexp(x, &e);
  if (m < std::numbers::sqrt2 / 2.0) {
    m *= 2.0;
    --e;
  }
  const double k = static_cast<double>(e);
  DoubleDouble r = two_sum(k * kLn2Hi, std::log(m));
  r.lo += k * kLn2Lo;
  return two_sum(r.hi, r.lo);
}

double stirling_tail(double x) {
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  double acc = kStirling.back();
  for (std::size_t k = kStirling.size() - 1; k-- > 0;) {
    acc = acc * inv2 + kStirling[k];
  }
  return acc * inv;
}

// (x - 1/2) ln x - x + ln(2π)/2 + series, x >= kStirlingThreshold.
double log_gamma_stirling(double x) {
  DoubleDouble acc = mul(x - 0.5, log_dd(x));
  acc = add(acc, {-x, 0.0});
  acc = add(acc, {kHalfLogTwoPiHi, kHalfLogTwoPiLo});
  acc = add(acc, {stirling_tail(x), 0.0});
  return acc.hi + acc.lo;
}

std::complex<double> stirling_complex(std::complex<double> z) {
  const std::complex<double> inv = 1.0 / z;
  const std::complex<double> inv2 = inv * inv;
  std::complex<double> acc = kStirling.back();
  for (std::size_t k = kStirling.size() - 1; k-- > 0;) {
    acc = acc * inv2 + kStirling[k];
  }
  return (z - 0.5) * std::log(z) - z + kHalfLogTwoPiHi + acc * inv;
}

}  // namespace

double log_gamma(double x) {
  if (!std::isfinite(x) || x <= 0.0) {
    throw DomainError("log_gamma: argument must be finite and > 0, got " +
                      std::to_string(x));
  }
  // Γ(n) = (n-1)! is exact in double for small n.
  if (x <= 20.0 && x == std::floor(x)) {
    double fact = 1.0;
    for (double k = 2.0; k < x; k += 1.0) fact *= k;
    return std::log(fact);
  }
  if (x >= kStirlingThreshold) return log_gamma_stirling(x);

  double shifted = x;
  double product = 1.0;
  while (shifted < kStirlingThreshold) {
    product *= shifted;
    shifted += 1.0;
  }
  return log_gamma_stirling(shifted) - std::log(product);
}

std::complex<double> log_gamma_complex(std::complex<double> s) {
  if (!std::isfinite(s.real()) || !std::isfinite(s.imag()) || s.real() <= 0.0) {
    throw DomainError("log_gamma_complex: requires finite s with Re(s) > 0");
  }
  if (s.imag() == 0.0) return {log_gamma(s.real()), 0.0};
  if (s.imag() < 0.0) return std::conj(log_gamma_complex(std::conj(s)));

  // Recurse upward until Stirling is accurate. Each log(s + k) has
  // Re > 0, so the sum of principal logs is the analytic branch.
  std::complex<double> z = s;
  std::complex<double> correction = 0.0;
  while (std::abs(z) < kStirlingThreshold) {
    correction += std::log(z);
    z += 1.0;
  }
  return stirling_complex(z) - correction;
}

double log_beta(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw DomainError("log_beta: both arguments must be > 0");
  }
  return log_gamma(a) + log_gamma(b) - log_gamma(a + b);
}

double log_gamma_ratio(double a, double b) { return log_gamma(a) - log_gamma(b); }

}  // namespace limitlaw::gammakit
