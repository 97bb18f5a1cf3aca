#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "limitlaw/moments.hpp"

namespace limitlaw::mellin {

/// Γ(scale·s + shift)^{power}, scale > 0, power ±1.
struct GammaFactor {
  double scale = 1.0;
  double shift = 0.0;
  int power = 1;
};

enum class AbscissaPolicy {
  /// Every grid point integrates along Re(s) = abscissa.
  Fixed,
  /// Each grid point x uses the real minimiser of ln M(c) − c ln x on
  /// [rightmost pole + 0.5, max_abscissa], which minimises the peak of
  /// |x^{-s} M(s)| on the contour and with it the rounding in the sum.
  Saddle,
};

struct QuadratureSettings {
  AbscissaPolicy policy = AbscissaPolicy::Saddle;
  double abscissa = 2.0;
  double max_abscissa = 30.0;
  /// Truncation height U; 0 selects it from the decay of |M(c+iu)|.
  double height = 0.0;
  /// Trapezoid step h; 0 selects min(0.2, πc/20).
  double step = 0.0;
  /// Adaptive U stops once |M(c+iU)| <= target·M(c).
  double truncation_target = 1e-14;
  /// Refuse when |M(c+iU)| > refuse·M(c).
  double truncation_refuse = 1e-12;
};

/// M(s) = C · A^s · Π Γ(a_i s + b_i)^{±1}, the Mellin transform E(X^{s−1})
/// of a density on (0, ∞). Invariants: M(1) = 1 within 1e-10 and every
/// numerator pole strictly left of the contour.
struct MellinSpec {
  std::string label;
  moments::ParamRecord params;
  double log_constant = 0.0;
  double log_base = 0.0;
  std::vector<GammaFactor> factors;
  QuadratureSettings quadrature;

  std::complex<double> log_value(std::complex<double> s) const;
  double log_value(double s) const;
  double value(double s) const;
  /// Rightmost pole over numerator factors, −shift/scale.
  double rightmost_pole() const;
  /// Throws DomainError if an invariant fails.
  void validate() const;
  /// min over k = 1..200 of E(X^{s+k})/x^k, a bound on E(X^s; X > x).
  double upper_tail_bound(double x, double s = 0.0) const;
  /// x^q E(X^{-q}) at the largest safe q, a bound on P(X < x).
  double lower_tail_bound(double x) const;
};

MellinSpec spec_from_fkp_quarter();
/// Γ(s)/Γ(α(s−1)+1), 0 < α < 1.
MellinSpec spec_from_mittag_leffler(double alpha);
/// Γ(s): the Exp(1) law.
MellinSpec spec_from_exponential();
/// E(T^{s−1}) at β = α/m: Γ(s) Π_j Γ(jα/m)/Γ((s−1+j)α/m).
MellinSpec spec_from_beta_fraction(double alpha, unsigned m);
/// Transform of cX: multiplies A by c.
MellinSpec scaled(MellinSpec spec, double c);

struct DensityTable {
  std::vector<double> x;
  /// Clamped at −kNegativityFloor, then divided by `normalization`.
  std::vector<double> f;
  std::vector<double> f_raw;
  std::vector<double> imag_raw;
  std::vector<double> truncation_estimate;
  std::vector<double> abscissa;
  std::vector<double> height;
  std::vector<double> step;
  /// P(X <= x[i]) from the normalised density.
  std::vector<double> cumulative;
  /// Trapezoid in ln x for integrals, linear in ln x for interpolation.
  std::string interpolation = "log-trapezoid";
  double integral_raw = 0.0;
  double mass_below_estimate = 0.0;
  double mass_above_bound = 0.0;
  /// Grid integral of the clamped values plus both tail terms, or 1 when
  /// the grid leaves more than kRenormalizeTailMass outside.
  double normalization = 1.0;
  MellinSpec spec;

  /// Raw grid integral plus both tail corrections.
  double integral_with_tails() const {
    return integral_raw + mass_below_estimate + mass_above_bound;
  }
  /// Interpolated f; 0 outside the grid.
  double at(double x0) const;
  /// P(X <= x0) from the lower tail estimate plus the cumulative integral.
  double cdf(double x0) const;
};

inline constexpr double kNegativityFloor = 1e-8;
inline constexpr double kRenormalizeTailMass = 1e-6;

/// Geometric grid whose ends leave at most `mass` outside on each side by
/// the tail bounds of `spec` (Markov with s = 10 above). With
/// cover_order > 0 the upper end is pushed out until the tail bound of
/// every moment s <= cover_order is below mass·E(X^s), which is what
/// roundtrip_moments certifies.
std::vector<double> default_grid(const MellinSpec& spec, std::size_t points = 600,
                                 double mass = 1e-8, std::size_t cover_order = 0);

std::vector<double> geometric_grid(double x_min, double x_max, std::size_t points);

/// f(x) = (1/2π) ∫_{−U}^{U} x^{−(c+iu)} M(c+iu) du by the trapezoid rule.
/// Throws NumericalError when |M(c+iU)| exceeds the refuse threshold.
DensityTable invert(const MellinSpec& spec, std::span<const double> grid, unsigned threads = 1);

/// Single-point inversion with explicit contour settings; returns (Re, Im).
std::complex<double> invert_point(const MellinSpec& spec, double x, double abscissa,
                                  double height, double step);

/// ∫ x^s f(x) dx over the table for s = 0..S, with m_0 fixed to 1. Throws
/// NumericalError if the upper tail bound of any moment exceeds 1e-8 of it.
moments::MomentSequence roundtrip_moments(const DensityTable& table, std::size_t max_order);

}  // namespace limitlaw::mellin
