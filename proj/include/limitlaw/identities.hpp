#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "limitlaw/moments.hpp"

namespace limitlaw::identities {

struct Deviation {
  std::size_t s = 0;
  double a = 0.0;
  double b = 0.0;
  double deviation = 0.0;
};

/// Entrywise comparison of two sequences. For `metric == "relative"` the
/// deviation is |a−b|/max(|a|,|b|,1e-300); other producers (z-score
/// checks) reuse the same shape with their own metric name.
struct ComparisonReport {
  std::string label_a;
  std::string label_b;
  moments::ParamRecord params;
  double tolerance = 0.0;
  std::string metric = "relative";
  std::vector<Deviation> per_s;
  double max_deviation = 0.0;
  std::size_t argmax = 0;
  bool pass = false;
  /// Free-form numeric diagnostics (fit slopes and the like).
  std::map<std::string, double> diagnostics;
};

/// Recomputes max_deviation, argmax and pass from per_s and tolerance.
void finalize(ComparisonReport& report);

double relative_deviation(double a, double b);

/// Throws LengthError if the sequences differ in length.
ComparisonReport compare(const moments::MomentSequence& a, const moments::MomentSequence& b,
                         double tolerance);

/// Least-squares fit of ln(a_s/b_s) against s over s = 1..S. A wrong
/// constant factor c shows up as slope ln c with zero residual.
struct LogRatioFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual_rms = 0.0;
};
LogRatioFit fit_log_ratio(const moments::MomentSequence& a, const moments::MomentSequence& b);

struct PhiAdjudication {
  double a_prime = 0.0;
  std::size_t max_order = 0;
  ComparisonReport quadruple_scale;
  ComparisonReport double_scale;
};

/// Compares s!/Π Φ̂(k/2) under both Laplace exponent conventions against
/// exp_functional_moments at α = 1/2, β = a', t = 1. Diagnostic only; the
/// verdicts live in each report's `pass` at tolerance 1e-8.
PhiAdjudication adjudicate_phi_convention(double a_prime, std::size_t max_order);

inline constexpr double kPhiAdjudicationTolerance = 1e-8;

struct HankelOrder {
  std::size_t order = 0;
  double smallest_pivot = 0.0;
  double pivot_threshold = 0.0;
  bool positive_definite = false;
};

struct HankelDiagnostics {
  std::vector<HankelOrder> orders;
  /// Carleman partial sums over whatever even moments the sequence holds.
  std::vector<double> carleman;
  bool all_positive_definite() const;
};

/// Factors H_j = [m_{u+v}]_{0<=u,v<=j} for j = 0..max_order. A pivot at or
/// below 1e-10 times the largest diagonal entry marks H_j as not positive
/// definite; this is recorded, not thrown. Needs S >= 2 max_order.
HankelDiagnostics hankel_positive_definite(const moments::MomentSequence& seq,
                                           std::size_t max_order);

inline constexpr double kHankelPivotRelativeThreshold = 1e-10;

/// Σ_{s=1}^{n} m_{2s}^{-1/(2s)} for n = 1..count. Needs m_{2 count}.
std::vector<double> carleman_partial_sums(const moments::MomentSequence& seq, std::size_t count);

}  // namespace limitlaw::identities
