#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace limitlaw::moments {

/// Parameter record attached to generated sequences, ordered for
/// deterministic serialization.
using ParamRecord = std::map<std::string, double>;

/// Finite prefix m_0..m_S of the moment sequence of a nonnegative law.
/// m_0 = 1 exactly; every entry finite and strictly positive.
class MomentSequence {
 public:
  /// Validates the invariants above; throws DomainError on violation.
  MomentSequence(std::vector<double> values, std::string label, ParamRecord params = {});

  /// Builds from ln m_s, exponentiating once. Throws OverflowError carrying
  /// the first order whose value leaves the double range.
  static MomentSequence from_logs(std::span<const double> log_values, std::string label,
                                  ParamRecord params = {});

  std::size_t max_order() const noexcept { return values_.size() - 1; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t s) const { return values_.at(s); }
  std::span<const double> values() const noexcept { return values_; }
  const std::string& label() const noexcept { return label_; }
  const ParamRecord& params() const noexcept { return params_; }

  /// m_{s-1} m_{s+1} >= m_s^2 for 1 <= s <= S-1, checked in log space with
  /// relative slack `slack`.
  bool is_log_convex(double slack = 1e-12) const;

 private:
  std::vector<double> values_;
  std::string label_;
  ParamRecord params_;
};

/// Noise-reinforced Bessel parameters: dimension d, reinforcement p and time
/// t, with α = 1 − d/2 and β = α/(1−2p). Either pair may be supplied; the
/// other pair is derived by the exact conversion formulas.
class BesselParams {
 public:
  /// Requires 0 < d < 2, p < 1/2, t > 0.
  static BesselParams from_dimension(double d, double p, double t = 1.0);
  /// Requires 0 < α < 1, β > 0, t > 0.
  static BesselParams from_alpha_beta(double alpha, double beta, double t = 1.0);

  BesselParams with_time(double t) const;

  double d() const noexcept { return d_; }
  double p() const noexcept { return p_; }
  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }
  double t() const noexcept { return t_; }
  /// 1 − 2p, always > 0.
  double one_minus_two_p() const noexcept { return 1.0 - 2.0 * p_; }

  ParamRecord record() const;

 private:
  BesselParams(double d, double p, double alpha, double beta, double t)
      : d_(d), p_(p), alpha_(alpha), beta_(beta), t_(t) {}
  double d_, p_, alpha_, beta_, t_;
};

/// Toll exponent a >= 0 and the shifted exponent a' = a + 1/2.
struct FkpParams {
  double a = 0.0;
  double a_prime = 0.5;

  static FkpParams from_toll(double a);
};

/// Which argument scale the subordinator Laplace exponent uses:
/// QuadrupleScale evaluates Γ(1/2 + 4a'r)/Γ(4a'r) with prefactor (4a')^{-1/2};
/// DoubleScale substitutes 2a' for 4a' in both places.
enum class PhiConvention { QuadrupleScale, DoubleScale };

/// m_s = s!/2^{s/2} Π_{k=1}^{s} Γ(k a')/Γ(k a' + 1/2), a' > 0.
MomentSequence fkp_moments(double a_prime, std::size_t max_order);

/// κ(p,t) = (2t)^α Γ(1+α) / ((1−2p)^α Γ(1−α)).
double kappa(const BesselParams& params);

/// The time t at which κ(p,t) = 1 for the given α and p.
double time_for_unit_kappa(double alpha, double p);

/// E(L̂_t^s) = κ^s (1−2p)/Γ(1+α) Γ(s) Π_{j=1}^{s−1} Γ(jβ)/Γ(α+jβ).
MomentSequence local_time_moments(const BesselParams& params, std::size_t max_order);

/// μ_s = E((L̂_t/κ)^s); independent of t.
MomentSequence scaled_local_time_moments(const BesselParams& params, std::size_t max_order);

/// Size-biased law: out[s] = seq[s+1]/seq[1]. Output is one order shorter.
MomentSequence tilt(const MomentSequence& seq);

/// E(T^s) = Γ(s+1) Π_{j=1}^{s} Γ(jβ)/Γ(α+jβ), evaluated directly.
MomentSequence tilted_T_moments(double alpha, double beta, std::size_t max_order);

/// Moments of cX: out[s] = c^s seq[s].
MomentSequence scale(const MomentSequence& seq, double c);

/// Φ̂(r) = 2^{-1/2} (1/(4a'))^{1/2} Γ(1/2) / (B(1/2, 4a'r)/2), via log_beta.
double laplace_exponent_phi_hat(double r, double a_prime,
                                PhiConvention convention = PhiConvention::QuadrupleScale);

/// E(Î^s) = E(L̂_1^{s+1})/E(L̂_1). Requires params.t() == 1.
MomentSequence exp_functional_moments(const BesselParams& params, std::size_t max_order);

/// E(L̂_1) = 2^α (1−2p)^{1−α} / Γ(1−α) (ignores params.t()).
double mean_local_time_at_1(const BesselParams& params);

/// The a' = 1/4 sequence after cancellation:
/// 2^{-s/2} Γ(1/4)Γ(1/2)Γ(s+1) / (Γ((s+1)/4) Γ((s+2)/4)).
MomentSequence gamma_type_moments_a_quarter(std::size_t max_order);

/// E(T^s) at β = α/m after telescoping:
/// Γ(s+1) Π_{j=1}^{m} Γ(jα/m)/Γ((s+j)α/m).
MomentSequence gamma_type_moments_beta_fraction(double alpha, unsigned m, std::size_t max_order);

/// Γ(s+1)/Γ(sα+1).
MomentSequence mittag_leffler_moments(double alpha, std::size_t max_order);

/// Rayleigh(σ): 2^{s/2} σ^s Γ(1 + s/2).
MomentSequence rayleigh_moments(double sigma, std::size_t max_order);

/// s! / Π_{k=1}^{s} Φ̂(k/2): the moment recursion of ∫ exp(−ξ̂_t/2) dt
/// driven by the given Laplace exponent convention.
MomentSequence subordinator_recursion_moments(double a_prime, std::size_t max_order,
                                              PhiConvention convention);

}  // namespace limitlaw::moments
