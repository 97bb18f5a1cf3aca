#include "limitlaw/identities.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "limitlaw/errors.hpp"

namespace limitlaw::identities {

using moments::MomentSequence;

void finalize(ComparisonReport& report) {
  report.max_deviation = 0.0;
  report.argmax = 0;
  bool any_nan = false;
  for (const auto& d : report.per_s) {
    if (std::isnan(d.deviation)) any_nan = true;
    if (d.deviation > report.max_deviation) {
      report.max_deviation = d.deviation;
      report.argmax = d.s;
    }
  }
  report.pass = !any_nan && report.max_deviation <= report.tolerance;
}

double relative_deviation(double a, double b) {
  const double denom = std::max({std::abs(a), std::abs(b), 1e-300});
  return std::abs(a - b) / denom;
}

ComparisonReport compare(const MomentSequence& a, const MomentSequence& b, double tolerance) {
  if (a.size() != b.size()) {
    throw LengthError("compare: '" + a.label() + "' has " + std::to_string(a.size()) +
                      " entries but '" + b.label() + "' has " + std::to_string(b.size()));
  }
  ComparisonReport report;
  report.label_a = a.label();
  report.label_b = b.label();
  report.params = a.params();
  for (const auto& [k, v] : b.params()) report.params.emplace(k, v);
  report.tolerance = tolerance;
  report.per_s.reserve(a.size());
  for (std::size_t s = 0; s < a.size(); ++s) {
    report.per_s.push_back({s, a[s], b[s], relative_deviation(a[s], b[s])});
  }
  finalize(report);
  return report;
}

LogRatioFit fit_log_ratio(const MomentSequence& a, const MomentSequence& b) {
  if (a.size() != b.size()) throw LengthError("fit_log_ratio: length mismatch");
  const std::size_t n = a.max_order();
  LogRatioFit fit;
  if (n == 0) return fit;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t s = 1; s <= n; ++s) {
    const double x = static_cast<double>(s);
    const double y = std::log(a[s] / b[s]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double nn = static_cast<double>(n);
  const double denom = nn * sxx - sx * sx;
  fit.slope = denom != 0.0 ? (nn * sxy - sx * sy) / denom : 0.0;
  fit.intercept = (sy - fit.slope * sx) / nn;
  double ss = 0;
  for (std::size_t s = 1; s <= n; ++s) {
    const double r = std::log(a[s] / b[s]) - (fit.slope * static_cast<double>(s) + fit.intercept);
    ss += r * r;
  }
  fit.residual_rms = std::sqrt(ss / nn);
  return fit;
}

PhiAdjudication adjudicate_phi_convention(double a_prime, std::size_t max_order) {
  const auto params = moments::BesselParams::from_alpha_beta(0.5, a_prime, 1.0);
  const auto oracle = moments::exp_functional_moments(params, max_order);

  auto run = [&](moments::PhiConvention convention) {
    const auto recursion =
        moments::subordinator_recursion_moments(a_prime, max_order, convention);
    auto report = compare(recursion, oracle, kPhiAdjudicationTolerance);
    const auto fit = fit_log_ratio(recursion, oracle);
    report.diagnostics["log_ratio_slope"] = fit.slope;
    report.diagnostics["log_ratio_intercept"] = fit.intercept;
    report.diagnostics["log_ratio_residual_rms"] = fit.residual_rms;
    return report;
  };

  PhiAdjudication out;
  out.a_prime = a_prime;
  out.max_order = max_order;
  out.quadruple_scale = run(moments::PhiConvention::QuadrupleScale);
  out.double_scale = run(moments::PhiConvention::DoubleScale);
  return out;
}

bool HankelDiagnostics::all_positive_definite() const {
  return std::all_of(orders.begin(), orders.end(),
                     [](const HankelOrder& o) { return o.positive_definite; });
}

HankelDiagnostics hankel_positive_definite(const MomentSequence& seq, std::size_t max_order) {
  if (seq.size() < 2 * max_order + 1) {
    throw LengthError("hankel_positive_definite: order " + std::to_string(max_order) +
                      " needs moments up to m_" + std::to_string(2 * max_order));
  }
  HankelDiagnostics diag;
  for (std::size_t j = 0; j <= max_order; ++j) {
    const std::size_t n = j + 1;
    // Row-major lower-triangular Cholesky factor, computed in place.
    std::vector<double> a(n * n);
    double largest_diagonal = 0.0;
    for (std::size_t u = 0; u < n; ++u) {
      for (std::size_t v = 0; v < n; ++v) a[u * n + v] = seq[u + v];
      largest_diagonal = std::max(largest_diagonal, seq[2 * u]);
    }
    HankelOrder rec;
    rec.order = j;
    rec.pivot_threshold = kHankelPivotRelativeThreshold * largest_diagonal;
    rec.smallest_pivot = std::numeric_limits<double>::infinity();
    rec.positive_definite = true;
    for (std::size_t k = 0; k < n; ++k) {
      double pivot = a[k * n + k];
      for (std::size_t m = 0; m < k; ++m) pivot -= a[k * n + m] * a[k * n + m];
      rec.smallest_pivot = std::min(rec.smallest_pivot, pivot);
      if (!(pivot > rec.pivot_threshold)) {
        rec.positive_definite = false;
        break;
      }
      const double root = std::sqrt(pivot);
      a[k * n + k] = root;
      for (std::size_t i = k + 1; i < n; ++i) {
        double v = a[i * n + k];
        for (std::size_t m = 0; m < k; ++m) v -= a[i * n + m] * a[k * n + m];
        a[i * n + k] = v / root;
      }
    }
    diag.orders.push_back(rec);
  }
  diag.carleman = carleman_partial_sums(seq, seq.max_order() / 2);
  return diag;
}

std::vector<double> carleman_partial_sums(const MomentSequence& seq, std::size_t count) {
  if (seq.size() < 2 * count + 1) {
    throw LengthError("carleman_partial_sums: needs moments up to m_" +
                      std::to_string(2 * count));
  }
  std::vector<double> out;
  out.reserve(count);
  double acc = 0.0;
  for (std::size_t s = 1; s <= count; ++s) {
    const double two_s = 2.0 * static_cast<double>(s);
    acc += std::exp(-std::log(seq[2 * s]) / two_s);
    out.push_back(acc);
  }
  return out;
}

}  // namespace limitlaw::identities
