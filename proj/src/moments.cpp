#include "limitlaw/moments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <utility>

#include "limitlaw/errors.hpp"
#include "limitlaw/gammakit.hpp"

namespace limitlaw::moments {
namespace {

using gammakit::log_gamma;

const double kLogMax = std::log(std::numeric_limits<double>::max());
const double kLogMin = std::log(std::numeric_limits<double>::min());

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

void require_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw DomainError("alpha must lie in (0, 1), got " + fmt(alpha));
  }
}

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw DomainError(std::string(name) + " must be finite and > 0, got " + fmt(v));
  }
}

void require_order(std::size_t max_order) {
  if (max_order < 1) throw DomainError("max order S must be >= 1");
}

// Σ_{j=1}^{n} [ln Γ(jβ) − ln Γ(α + jβ)], accumulated for n = 0..count-1.
std::vector<double> partial_log_products(double alpha, double beta, std::size_t count) {
  std::vector<double> out(count, 0.0);
  for (std::size_t n = 1; n < count; ++n) {
    const double jb = static_cast<double>(n) * beta;
    out[n] = out[n - 1] + log_gamma(jb) - log_gamma(alpha + jb);
  }
  return out;
}

double log_phi_hat(double r, double a_prime, PhiConvention convention) {
  require_positive(r, "r");
  require_positive(a_prime, "a'");
  const double q = (convention == PhiConvention::QuadrupleScale ? 4.0 : 2.0) * a_prime;
  return -0.5 * std::numbers::ln2 - 0.5 * std::log(q) + log_gamma(0.5) + std::numbers::ln2 -
         gammakit::log_beta(0.5, q * r);
}

const char* convention_name(PhiConvention c) {
  return c == PhiConvention::QuadrupleScale ? "4a'" : "2a'";
}

}  // namespace

MomentSequence::MomentSequence(std::vector<double> values, std::string label, ParamRecord params)
    : values_(std::move(values)), label_(std::move(label)), params_(std::move(params)) {
  if (values_.empty()) throw LengthError("moment sequence must contain m_0");
  if (values_[0] != 1.0) throw DomainError("moment sequence must satisfy m_0 = 1");
  for (std::size_t s = 0; s < values_.size(); ++s) {
    if (!std::isfinite(values_[s]) || !(values_[s] > 0.0)) {
      throw DomainError("moment m_" + std::to_string(s) + " of '" + label_ +
                        "' is not finite and positive");
    }
  }
}

MomentSequence MomentSequence::from_logs(std::span<const double> log_values, std::string label,
                                         ParamRecord params) {
  std::vector<double> values(log_values.size());
  for (std::size_t s = 0; s < log_values.size(); ++s) {
    const double lv = log_values[s];
    if (!std::isfinite(lv) || lv > kLogMax || lv < kLogMin) {
      throw OverflowError("moment of order s=" + std::to_string(s) + " of '" + label +
                              "' leaves the double range (ln m_s = " + fmt(lv) + ")",
                          s);
    }
    values[s] = s == 0 ? 1.0 : std::exp(lv);
  }
  return MomentSequence(std::move(values), std::move(label), std::move(params));
}

bool MomentSequence::is_log_convex(double slack) const {
  for (std::size_t s = 1; s + 1 < values_.size(); ++s) {
    const double lhs = std::log(values_[s - 1]) + std::log(values_[s + 1]);
    const double rhs = 2.0 * std::log(values_[s]);
    if (lhs < rhs - slack * std::max(1.0, std::abs(rhs))) return false;
  }
  return true;
}

BesselParams BesselParams::from_dimension(double d, double p, double t) {
  if (!(d > 0.0 && d < 2.0)) throw DomainError("dimension d must lie in (0, 2), got " + fmt(d));
  if (!(p < 0.5) || !std::isfinite(p)) throw DomainError("p must be < 1/2, got " + fmt(p));
  require_positive(t, "t");
  const double alpha = 1.0 - d / 2.0;
  return BesselParams(d, p, alpha, alpha / (1.0 - 2.0 * p), t);
}

BesselParams BesselParams::from_alpha_beta(double alpha, double beta, double t) {
  require_alpha(alpha);
  require_positive(beta, "beta");
  require_positive(t, "t");
  return BesselParams(2.0 * (1.0 - alpha), 0.5 - alpha / (2.0 * beta), alpha, beta, t);
}

BesselParams BesselParams::with_time(double t) const {
  require_positive(t, "t");
  BesselParams copy = *this;
  copy.t_ = t;
  return copy;
}

ParamRecord BesselParams::record() const {
  return {{"alpha", alpha_}, {"beta", beta_}, {"d", d_}, {"p", p_}, {"t", t_}};
}

FkpParams FkpParams::from_toll(double a) {
  if (!(a >= 0.0) || !std::isfinite(a)) throw DomainError("toll exponent a must be >= 0");
  return {a, a + 0.5};
}

MomentSequence fkp_moments(double a_prime, std::size_t max_order) {
  require_positive(a_prime, "a'");
  require_order(max_order);
  std::vector<double> logs(max_order + 1, 0.0);
  double product = 0.0;
  for (std::size_t s = 1; s <= max_order; ++s) {
    const double ka = static_cast<double>(s) * a_prime;
    product += log_gamma(ka) - log_gamma(ka + 0.5);
    const double sd = static_cast<double>(s);
    logs[s] = log_gamma(sd + 1.0) - 0.5 * sd * std::numbers::ln2 + product;
  }
  return MomentSequence::from_logs(logs, "fkp", {{"a_prime", a_prime}});
}

double kappa(const BesselParams& params) {
  const double a = params.alpha();
  return std::exp(a * std::log(2.0 * params.t()) + log_gamma(1.0 + a) -
                  a * std::log(params.one_minus_two_p()) - log_gamma(1.0 - a));
}

double time_for_unit_kappa(double alpha, double p) {
  require_alpha(alpha);
  if (!(p < 0.5)) throw DomainError("p must be < 1/2");
  return 0.5 * (1.0 - 2.0 * p) * std::exp((log_gamma(1.0 - alpha) - log_gamma(1.0 + alpha)) / alpha);
}

MomentSequence local_time_moments(const BesselParams& params, std::size_t max_order) {
  require_order(max_order);
  const double a = params.alpha();
  const double log_kappa = std::log(kappa(params));
  const double base = std::log(params.one_minus_two_p()) - log_gamma(1.0 + a);
  const auto prod = partial_log_products(a, params.beta(), max_order);
  std::vector<double> logs(max_order + 1, 0.0);
  for (std::size_t s = 1; s <= max_order; ++s) {
    const double sd = static_cast<double>(s);
    logs[s] = sd * log_kappa + base + log_gamma(sd) + prod[s - 1];
  }
  return MomentSequence::from_logs(logs, "local_time", params.record());
}

MomentSequence scaled_local_time_moments(const BesselParams& params, std::size_t max_order) {
  require_order(max_order);
  const double a = params.alpha();
  const double base = std::log(params.one_minus_two_p()) - log_gamma(1.0 + a);
  const auto prod = partial_log_products(a, params.beta(), max_order);
  std::vector<double> logs(max_order + 1, 0.0);
  for (std::size_t s = 1; s <= max_order; ++s) {
    logs[s] = base + log_gamma(static_cast<double>(s)) + prod[s - 1];
  }
  auto rec = params.record();
  rec.erase("t");
  return MomentSequence::from_logs(logs, "scaled_local_time", std::move(rec));
}

MomentSequence tilt(const MomentSequence& seq) {
  if (seq.size() < 2) throw LengthError("tilt needs at least m_0 and m_1");
  const double first = seq[1];
  std::vector<double> out(seq.size() - 1);
  for (std::size_t s = 0; s < out.size(); ++s) out[s] = seq[s + 1] / first;
  out[0] = 1.0;
  return MomentSequence(std::move(out), "tilt(" + seq.label() + ")", seq.params());
}

MomentSequence tilted_T_moments(double alpha, double beta, std::size_t max_order) {
  require_alpha(alpha);
  require_positive(beta, "beta");
  require_order(max_order);
  const auto prod = partial_log_products(alpha, beta, max_order + 1);
  std::vector<double> logs(max_order + 1, 0.0);
  for (std::size_t s = 1; s <= max_order; ++s) {
    logs[s] = log_gamma(static_cast<double>(s) + 1.0) + prod[s];
  }
  return MomentSequence::from_logs(logs, "tilted_T", {{"alpha", alpha}, {"beta", beta}});
}

MomentSequence scale(const MomentSequence& seq, double c) {
  require_positive(c, "scale factor c");
  std::vector<double> out(seq.size());
  out[0] = 1.0;
  for (std::size_t s = 1; s < out.size(); ++s) {
    out[s] = std::pow(c, static_cast<double>(s)) * seq[s];
    if (!std::isfinite(out[s]) || out[s] <= 0.0) {
      throw OverflowError("scaled moment of order s=" + std::to_string(s) +
                              " leaves the double range",
                          s);
    }
  }
  auto params = seq.params();
  params["scale"] = c;
  return MomentSequence(std::move(out), "scale(" + seq.label() + ")", std::move(params));
}

double laplace_exponent_phi_hat(double r, double a_prime, PhiConvention convention) {
  return std::exp(log_phi_hat(r, a_prime, convention));
}

MomentSequence exp_functional_moments(const BesselParams& params, std::size_t max_order) {
  if (params.t() != 1.0) throw DomainError("exp_functional_moments requires t = 1");
  auto out = tilt(local_time_moments(params, max_order + 1));
  return MomentSequence(std::vector<double>(out.values().begin(), out.values().end()),
                        "exp_functional", params.record());
}

double mean_local_time_at_1(const BesselParams& params) {
  const double a = params.alpha();
  return std::exp(a * std::numbers::ln2 + (1.0 - a) * std::log(params.one_minus_two_p()) -
                  log_gamma(1.0 - a));
}

MomentSequence gamma_type_moments_a_quarter(std::size_t max_order) {
  require_order(max_order);
  const double head = log_gamma(0.25) + log_gamma(0.5);
  std::vector<double> logs(max_order + 1, 0.0);
  for (std::size_t s = 1; s <= max_order; ++s) {
    const double sd = static_cast<double>(s);
    logs[s] = -0.5 * sd * std::numbers::ln2 + head + log_gamma(sd + 1.0) -
              log_gamma((sd + 1.0) / 4.0) - log_gamma((sd + 2.0) / 4.0);
  }
  return MomentSequence::from_logs(logs, "gamma_type_a_quarter", {{"a_prime", 0.25}});
}

MomentSequence gamma_type_moments_beta_fraction(double alpha, unsigned m, std::size_t max_order) {
  require_alpha(alpha);
  if (m < 1) throw DomainError("m must be a positive integer");
  require_order(max_order);
  const double step = alpha / static_cast<double>(m);
  std::vector<double> logs(max_order + 1, 0.0);
  for (std::size_t s = 1; s <= max_order; ++s) {
    const double sd = static_cast<double>(s);
    double acc = log_gamma(sd + 1.0);
    for (unsigned j = 1; j <= m; ++j) {
      acc += log_gamma(j * step) - log_gamma((sd + j) * step);
    }
    logs[s] = acc;
  }
  return MomentSequence::from_logs(logs, "gamma_type_beta_fraction",
                                   {{"alpha", alpha}, {"m", static_cast<double>(m)}});
}

MomentSequence mittag_leffler_moments(double alpha, std::size_t max_order) {
  require_alpha(alpha);
  require_order(max_order);
  std::vector<double> logs(max_order + 1, 0.0);
  for (std::size_t s = 1; s <= max_order; ++s) {
    const double sd = static_cast<double>(s);
    logs[s] = log_gamma(sd + 1.0) - log_gamma(sd * alpha + 1.0);
  }
  return MomentSequence::from_logs(logs, "mittag_leffler", {{"alpha", alpha}});
}

MomentSequence rayleigh_moments(double sigma, std::size_t max_order) {
  require_positive(sigma, "sigma");
  require_order(max_order);
  std::vector<double> logs(max_order + 1, 0.0);
  for (std::size_t s = 1; s <= max_order; ++s) {
    const double sd = static_cast<double>(s);
    logs[s] = 0.5 * sd * std::numbers::ln2 + sd * std::log(sigma) + log_gamma(1.0 + 0.5 * sd);
  }
  return MomentSequence::from_logs(logs, "rayleigh", {{"sigma", sigma}});
}

MomentSequence subordinator_recursion_moments(double a_prime, std::size_t max_order,
                                              PhiConvention convention) {
  require_positive(a_prime, "a'");
  require_order(max_order);
  std::vector<double> logs(max_order + 1, 0.0);
  double denom = 0.0;
  for (std::size_t s = 1; s <= max_order; ++s) {
    const double sd = static_cast<double>(s);
    denom += log_phi_hat(0.5 * sd, a_prime, convention);
    logs[s] = log_gamma(sd + 1.0) - denom;
  }
  return MomentSequence::from_logs(
      logs, std::string("subordinator_recursion[") + convention_name(convention) + "]",
      {{"a_prime", a_prime}});
}

}  // namespace limitlaw::moments
