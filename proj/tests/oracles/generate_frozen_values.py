#!/usr/bin/env python3
"""Regenerates frozen_values.hpp with 30-digit mpmath reference values.

Everything here is computed independently of the C++ code paths under test:
mpmath's own loggamma, and direct quadrature of the inverse Mellin integral.
"""
from mpmath import mp, mpf, mpc, loggamma, quad, exp, log, gamma, pi, inf, sqrt

mp.dps = 40

REAL_POINTS = ["0.01", "0.05", "0.1", "0.25", "0.5", "0.75", "0.999", "1.001",
               "1.5", "1.999", "2.001", "2.5", "3.7", "7.3", "9.999", "10",
               "10.001", "12.5", "20.2", "33.3", "50", "77.7", "100", "123.4",
               "150", "169.9", "170"]

COMPLEX_POINTS = [("2", "3"), ("0.5", "10"), ("2", "50"), ("0.1", "0.1"),
                  ("1.5", "-7"), ("3", "200"), ("0.25", "40"), ("25", "1")]


def fmt(v):
    return mp.nstr(v, 30, min_fixed=-5, max_fixed=5) if v != 0 else "0.0"


def fkp_quarter_mellin(s):
    return (2 ** (-(s - 1) / 2) * gamma(mpf(1) / 4) * gamma(mpf(1) / 2) * gamma(s)
            / (gamma(s / 4) * gamma((s + 1) / 4)))


def density_fkp_quarter(x):
    c = mpf(2)
    f = lambda u: (x ** (-(c + 1j * u)) * fkp_quarter_mellin(c + 1j * u)).real
    return quad(f, [-inf, -20, 0, 20, inf]) / (2 * pi)


def main():
    out = []
    out.append("// Generated by generate_frozen_values.py (mpmath, 40 digits). Do not edit.")
    out.append("#pragma once\n")
    out.append("#include <array>\n")
    out.append("namespace limitlaw::oracle {\n")
    out.append("struct RealLogGamma { double x; double value; };")
    out.append("struct ComplexLogGamma { double re; double im; double value_re; double value_im; };")
    out.append("struct DensityPoint { double x; double value; };\n")
    out.append(f"inline constexpr std::array<RealLogGamma, {len(REAL_POINTS)}> kRealLogGamma{{{{")
    for p in REAL_POINTS:
        out.append(f"    {{{p}, {fmt(loggamma(mpf(p)))}}},")
    out.append("}};\n")
    out.append(f"inline constexpr std::array<ComplexLogGamma, {len(COMPLEX_POINTS)}> kComplexLogGamma{{{{")
    for re, im in COMPLEX_POINTS:
        v = loggamma(mpc(mpf(re), mpf(im)))
        out.append(f"    {{{re}, {im}, {fmt(v.real)}, {fmt(v.imag)}}},")
    out.append("}};\n")
    xs = ["0.25", "0.5", "1", "1.5", "2", "3"]
    out.append("// Density of the a'=1/4 law by direct quadrature of its inverse Mellin integral.")
    out.append(f"inline constexpr std::array<DensityPoint, {len(xs)}> kFkpQuarterDensity{{{{")
    for x in xs:
        out.append(f"    {{{x}, {fmt(density_fkp_quarter(mpf(x)))}}},")
    out.append("}};\n")
    half_log_two_pi = log(2 * pi) / 2
    hi = float(half_log_two_pi)
    lo = float(half_log_two_pi - mpf(hi))
    out.append(f"inline constexpr double kHalfLogTwoPiHi = {hi!r};")
    out.append(f"inline constexpr double kHalfLogTwoPiLo = {lo!r};\n")
    out.append("}  // namespace limitlaw::oracle")
    print("\n".join(out))


if __name__ == "__main__":
    main()
