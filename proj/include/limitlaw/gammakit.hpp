#pragma once

#include <complex>

namespace limitlaw::gammakit {

/// ln Γ(x) for finite x > 0. Absolute error below 1e-13 on [0.01, 170],
/// which bounds the relative error of exp(log_gamma(x)) against Γ(x).
/// Throws DomainError otherwise.
double log_gamma(double x);

/// Analytic log-gamma on Re(s) > 0: agrees with log Γ on the real axis and
/// is continuous along every vertical line, so the imaginary part is the
/// accumulated phase rather than a value reduced into (-π, π].
/// Exactly conjugate symmetric. Throws DomainError for Re(s) <= 0.
std::complex<double> log_gamma_complex(std::complex<double> s);

/// ln B(a, b) = ln Γ(a) + ln Γ(b) − ln Γ(a+b), a, b > 0.
double log_beta(double a, double b);

/// ln(Γ(a)/Γ(b)) for a, b > 0.
double log_gamma_ratio(double a, double b);

}  // namespace limitlaw::gammakit
