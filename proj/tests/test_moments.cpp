#include <doctest.h>

#include <cfloat>
#include <cmath>
#include <numbers>
#include <random>

#include "limitlaw/errors.hpp"
#include "limitlaw/moments.hpp"

using namespace limitlaw;
using namespace limitlaw::moments;

namespace {

constexpr double kPi = std::numbers::pi;

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

// Independent oracles: libm Gamma functions and direct products.
double oracle_rayleigh(std::size_t s) {
  const double sd = static_cast<double>(s);
  return std::pow(2.0, sd / 2.0) * std::tgamma(1.0 + sd / 2.0);
}

double oracle_tilted(double alpha, double beta, std::size_t s) {
  double v = std::tgamma(static_cast<double>(s) + 1.0);
  for (std::size_t j = 1; j <= s; ++j) {
    const double jb = static_cast<double>(j) * beta;
    v *= std::exp(std::lgamma(jb) - std::lgamma(alpha + jb));
  }
  return v;
}

// Composite Simpson on [0, upper] with 2n panels.
template <class F>
double simpson(F f, double upper, int n) {
  const double h = upper / (2 * n);
  double acc = f(0.0) + f(upper);
  for (int i = 1; i < 2 * n; ++i) acc += (i % 2 ? 4.0 : 2.0) * f(i * h);
  return acc * h / 3.0;
}

std::vector<BesselParams> grid_params() {
  std::vector<BesselParams> out;
  for (double a : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    for (double b : {0.25, 0.5, 1.0, 2.0}) out.push_back(BesselParams::from_alpha_beta(a, b));
  }
  return out;
}

}  // namespace

TEST_CASE("MomentSequence invariants") {
  CHECK_THROWS_AS(MomentSequence({2.0, 1.0}, "bad"), DomainError);
  CHECK_THROWS_AS(MomentSequence({1.0, -1.0}, "bad"), DomainError);
  CHECK_THROWS_AS(MomentSequence({1.0, NAN}, "bad"), DomainError);
  CHECK_THROWS_AS(MomentSequence({}, "bad"), LengthError);
  CHECK(MomentSequence({1.0, 1.0, 1.0}, "point").is_log_convex());
  CHECK_FALSE(MomentSequence({1.0, 2.0, 1.0}, "not a law").is_log_convex());
}

TEST_CASE("BesselParams conversions") {
  const auto p = BesselParams::from_dimension(1.0, 0.0, 0.5);
  CHECK(p.alpha() == 0.5);
  CHECK(p.beta() == 0.5);
  const auto q = BesselParams::from_alpha_beta(0.5, 0.5);
  CHECK(q.d() == 1.0);
  CHECK(q.p() == 0.0);

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> d(0.01, 1.99), pp(-5.0, 0.49);
  for (int i = 0; i < 10000; ++i) {
    const auto b = BesselParams::from_dimension(d(rng), pp(rng));
    CHECK(b.alpha() > 0.0);
    CHECK(b.alpha() < 1.0);
    CHECK(b.beta() > 0.0);
    CHECK(std::abs(0.5 - b.alpha() / (2.0 * b.beta()) - b.p()) <= 1e-14);
  }

  CHECK_THROWS_AS(BesselParams::from_dimension(2.0, 0.0), DomainError);
  CHECK_THROWS_AS(BesselParams::from_dimension(0.0, 0.0), DomainError);
  CHECK_THROWS_AS(BesselParams::from_dimension(1.0, 0.5), DomainError);
  CHECK_THROWS_AS(BesselParams::from_alpha_beta(1.0, 1.0), DomainError);
  CHECK_THROWS_AS(BesselParams::from_alpha_beta(0.5, 0.0), DomainError);
  CHECK_THROWS_AS(BesselParams::from_alpha_beta(0.5, 1.0, -1.0), DomainError);
}

TEST_CASE("FkpParams") {
  const auto f = FkpParams::from_toll(0.75);
  CHECK(f.a_prime == 1.25);
  CHECK_THROWS_AS(FkpParams::from_toll(-0.1), DomainError);
}

TEST_CASE("fkp_moments examples") {
  const auto m = fkp_moments(0.5, 2);
  CHECK(m[0] == 1.0);
  CHECK(rel(m[1], std::sqrt(kPi / 2.0)) <= 1e-14);
  CHECK(rel(m[2], 2.0) <= 1e-14);
  CHECK(fkp_moments(3.7, 1)[0] == 1.0);
}

TEST_CASE("fkp_moments at a'=1/2 are Rayleigh(1) moments") {
  const auto m = fkp_moments(0.5, 20);
  for (std::size_t s = 0; s <= 20; ++s) CHECK(rel(m[s], oracle_rayleigh(s)) <= 1e-11);
}

TEST_CASE("fkp_moments errors") {
  CHECK_THROWS_AS(fkp_moments(0.0, 5), DomainError);
  CHECK_THROWS_AS(fkp_moments(-1.0, 5), DomainError);
  CHECK_THROWS_AS(fkp_moments(0.5, 0), DomainError);
  // First order whose Rayleigh moment exceeds DBL_MAX, by the libm oracle.
  std::size_t first_bad = 0;
  for (std::size_t s = 1;; ++s) {
    const double sd = static_cast<double>(s);
    if (sd / 2.0 * std::numbers::ln2 + std::lgamma(1.0 + sd / 2.0) > std::log(DBL_MAX)) {
      first_bad = s;
      break;
    }
  }
  try {
    fkp_moments(0.5, first_bad + 10);
    FAIL("expected overflow");
  } catch (const OverflowError& e) {
    CHECK(e.order() == first_bad);
  }
}

TEST_CASE("kappa examples") {
  CHECK(rel(kappa(BesselParams::from_dimension(1.0, 0.0, 0.5)), 0.5) <= 1e-15);
  CHECK(rel(kappa(BesselParams::from_dimension(1.0, 0.0, 1.0)), std::sqrt(2.0) / 2.0) <= 1e-15);
  for (auto p : grid_params()) {
    const double t = time_for_unit_kappa(p.alpha(), p.p());
    CHECK(std::abs(kappa(p.with_time(t)) - 1.0) <= 1e-14);
  }
}

TEST_CASE("local_time_moments examples") {
  const auto half = BesselParams::from_dimension(1.0, 0.0, 0.5);
  const auto m = local_time_moments(half, 3);
  CHECK(m[0] == 1.0);
  CHECK(rel(m[1], 1.0 / std::sqrt(kPi)) <= 1e-14);
  const auto unit = half.with_time(time_for_unit_kappa(0.5, 0.0));
  CHECK(rel(local_time_moments(unit, 2)[2], 2.0) <= 1e-13);
}

TEST_CASE("Mittag-Leffler reduction at p = 0") {
  for (double a : {0.25, 0.5, 0.75}) {
    const auto params = BesselParams::from_alpha_beta(a, a);
    CHECK(params.p() == 0.0);
    const auto m = local_time_moments(params.with_time(time_for_unit_kappa(a, 0.0)), 20);
    for (std::size_t s = 0; s <= 20; ++s) {
      const double sd = static_cast<double>(s);
      const double oracle = std::exp(std::lgamma(sd + 1.0) - std::lgamma(sd * a + 1.0));
      INFO("alpha=" << a << " s=" << s);
      CHECK(rel(m[s], oracle) <= 1e-12);
    }
  }
}

TEST_CASE("scaled_local_time_moments examples and t-independence") {
  const auto p = BesselParams::from_alpha_beta(0.5, 0.5);
  const auto mu = scaled_local_time_moments(p, 2);
  CHECK(mu[0] == 1.0);
  CHECK(rel(mu[1], 2.0 / std::sqrt(kPi)) <= 1e-14);
  CHECK(rel(mu[2], 2.0) <= 1e-14);

  for (auto params : grid_params()) {
    const auto at = [&](double t) {
      const auto p_t = params.with_time(t);
      const auto raw = local_time_moments(p_t, 20);
      const double k = kappa(p_t);
      std::vector<double> v(21);
      for (std::size_t s = 0; s <= 20; ++s) v[s] = raw[s] / std::pow(k, static_cast<double>(s));
      return v;
    };
    const auto a = at(0.3);
    const auto b = at(7.0);
    const auto direct = scaled_local_time_moments(params, 20);
    for (std::size_t s = 0; s <= 20; ++s) {
      CHECK(rel(a[s], b[s]) <= 1e-12);
      CHECK(rel(a[s], direct[s]) <= 1e-12);
    }
  }
}

TEST_CASE("tilt examples") {
  // Exp(1): the size-biased law is Gamma(2); oracle by quadrature of x·x^s e^{-x}.
  std::vector<double> fact(12, 1.0);
  for (std::size_t s = 1; s < fact.size(); ++s) fact[s] = fact[s - 1] * static_cast<double>(s);
  const auto t = tilt(MomentSequence(fact, "exp1"));
  REQUIRE(t.size() == fact.size() - 1);
  for (std::size_t s = 0; s < t.size(); ++s) {
    const double quad =
        simpson([s](double x) { return x * std::pow(x, static_cast<double>(s)) * std::exp(-x); },
                80.0, 4000);
    INFO("s=" << s);
    CHECK(rel(t[s], quad) <= 1e-9);
    CHECK(rel(t[s], fact[s + 1]) <= 1e-15);
  }

  std::vector<double> point(8);
  for (std::size_t s = 0; s < point.size(); ++s) point[s] = std::pow(1.7, static_cast<double>(s));
  const auto tp = tilt(MomentSequence(point, "point"));
  for (std::size_t s = 0; s < tp.size(); ++s) CHECK(rel(tp[s], point[s]) <= 1e-15);

  const auto ones = tilt(MomentSequence(std::vector<double>(6, 1.0), "one"));
  for (double v : ones.values()) CHECK(v == 1.0);

  CHECK_THROWS_AS(tilt(MomentSequence({1.0}, "short")), LengthError);
}

TEST_CASE("tilted_T_moments examples") {
  const auto t = tilted_T_moments(0.5, 0.5, 2);
  CHECK(t[0] == 1.0);
  CHECK(rel(t[1], std::sqrt(kPi)) <= 1e-14);
  CHECK(rel(t[2], 4.0) <= 1e-14);
  CHECK_THROWS_AS(tilted_T_moments(0.0, 1.0, 3), DomainError);
  CHECK_THROWS_AS(tilted_T_moments(0.5, -1.0, 3), DomainError);
  for (double a : {0.1, 0.5, 0.9}) {
    for (double b : {0.25, 2.0}) {
      const auto v = tilted_T_moments(a, b, 20);
      for (std::size_t s = 0; s <= 20; ++s) CHECK(rel(v[s], oracle_tilted(a, b, s)) <= 1e-12);
    }
  }
}

TEST_CASE("tilt identity on the parameter grid") {
  for (auto params : grid_params()) {
    const auto lhs = tilt(scaled_local_time_moments(params, 21));
    const auto rhs = tilted_T_moments(params.alpha(), params.beta(), 20);
    REQUIRE(lhs.size() == rhs.size());
    for (std::size_t s = 0; s <= 20; ++s) CHECK(rel(lhs[s], rhs[s]) <= 1e-12);
  }
}

TEST_CASE("scale examples") {
  const auto m = fkp_moments(0.5, 6);
  const auto same = scale(m, 1.0);
  for (std::size_t s = 0; s < m.size(); ++s) CHECK(same[s] == m[s]);
  CHECK(rel(scale(m, std::sqrt(2.0))[2], 4.0) <= 1e-14);
  const auto three = scale(MomentSequence(std::vector<double>(5, 1.0), "one"), 3.0);
  for (std::size_t s = 0; s < three.size(); ++s) CHECK(three[s] == std::pow(3.0, double(s)));
  CHECK_THROWS_AS(scale(m, 0.0), DomainError);
}

TEST_CASE("fkp equals T(1/2, a') scaled by 1/sqrt 2") {
  for (double ap : {0.5, 0.75, 1.0, 1.5, 2.5}) {
    const auto lhs = fkp_moments(ap, 20);
    const auto rhs = scale(tilted_T_moments(0.5, ap, 20), 1.0 / std::sqrt(2.0));
    for (std::size_t s = 0; s <= 20; ++s) CHECK(rel(lhs[s], rhs[s]) <= 1e-11);
  }
}

TEST_CASE("laplace_exponent_phi_hat examples") {
  CHECK(rel(laplace_exponent_phi_hat(0.5, 0.25), std::sqrt(2.0 / kPi)) <= 1e-14);
  CHECK(rel(laplace_exponent_phi_hat(0.25, 0.5), 1.0 / std::sqrt(kPi)) <= 1e-14);
  CHECK(laplace_exponent_phi_hat(1e-12, 0.25) < 1e-11);
  CHECK(laplace_exponent_phi_hat(1e-200, 0.25) < 1e-199);
  // Equivalent Gamma-ratio form 2^{1/2}(4a')^{-1/2} Γ(1/2+4a'r)/Γ(4a'r).
  for (double ap : {0.25, 0.6, 2.0}) {
    for (double r : {0.1, 0.5, 3.0}) {
      const double q = 4.0 * ap * r;
      const double ratio = std::sqrt(2.0 / (4.0 * ap)) * std::tgamma(0.5 + q) / std::tgamma(q);
      CHECK(rel(laplace_exponent_phi_hat(r, ap), ratio) <= 1e-13);
      const double q2 = 2.0 * ap * r;
      const double ratio2 = std::sqrt(2.0 / (2.0 * ap)) * std::tgamma(0.5 + q2) / std::tgamma(q2);
      CHECK(rel(laplace_exponent_phi_hat(r, ap, PhiConvention::DoubleScale), ratio2) <= 1e-13);
    }
  }
  CHECK_THROWS_AS(laplace_exponent_phi_hat(0.0, 0.25), DomainError);
  CHECK_THROWS_AS(laplace_exponent_phi_hat(-1.0, 0.25), DomainError);
}

TEST_CASE("exp_functional_moments") {
  const auto p = BesselParams::from_alpha_beta(0.5, 0.5);
  const auto e = exp_functional_moments(p, 4);
  CHECK(e[0] == 1.0);
  CHECK(rel(e[1], std::sqrt(kPi / 2.0)) <= 1e-14);
  CHECK_THROWS_AS(exp_functional_moments(p.with_time(2.0), 4), DomainError);

  for (auto params : grid_params()) {
    const auto lhs = exp_functional_moments(params, 20);
    const auto rhs = scale(tilted_T_moments(params.alpha(), params.beta(), 20), kappa(params));
    for (std::size_t s = 0; s <= 20; ++s) CHECK(rel(lhs[s], rhs[s]) <= 1e-11);
  }
  // Second statement: Î/(κ(p,1)√2) has the fkp law at β = a'.
  for (double ap : {0.5, 0.75, 1.0, 1.5, 2.5}) {
    const auto params = BesselParams::from_alpha_beta(0.5, ap);
    const auto lhs = scale(exp_functional_moments(params, 20), 1.0 / (kappa(params) * std::sqrt(2.0)));
    const auto rhs = fkp_moments(ap, 20);
    for (std::size_t s = 0; s <= 20; ++s) CHECK(rel(lhs[s], rhs[s]) <= 1e-11);
  }
}

TEST_CASE("mean_local_time_at_1") {
  CHECK(rel(mean_local_time_at_1(BesselParams::from_dimension(1.0, 0.0)), std::sqrt(2.0 / kPi)) <= 1e-15);
  CHECK(rel(mean_local_time_at_1(BesselParams::from_dimension(1.0, 0.25)), 1.0 / std::sqrt(kPi)) <= 1e-15);
  for (auto params : grid_params()) {
    CHECK(rel(mean_local_time_at_1(params), local_time_moments(params, 1)[1]) <= 1e-12);
    CHECK(rel(mean_local_time_at_1(params),
              scaled_local_time_moments(params, 1)[1] * kappa(params)) <= 1e-12);
  }
}

TEST_CASE("Gamma-type moments at a'=1/4") {
  const auto g = gamma_type_moments_a_quarter(20);
  const auto f = fkp_moments(0.25, 20);
  CHECK(g[0] == 1.0);
  for (std::size_t s = 0; s <= 20; ++s) CHECK(rel(g[s], f[s]) <= 1e-11);
}

TEST_CASE("Gamma-type moments at beta = alpha/m") {
  const auto ex = gamma_type_moments_beta_fraction(0.5, 2, 1);
  CHECK(ex[0] == 1.0);
  CHECK(rel(ex[1], std::tgamma(0.25) / std::tgamma(0.75)) <= 1e-14);
  for (double a : {0.1, 0.5, 0.9}) {
    for (unsigned m : {1u, 2u, 3u, 5u}) {
      const auto lhs = gamma_type_moments_beta_fraction(a, m, 20);
      const auto rhs = tilted_T_moments(a, a / m, 20);
      for (std::size_t s = 0; s <= 20; ++s) CHECK(rel(lhs[s], rhs[s]) <= 1e-11);
    }
  }
  CHECK_THROWS_AS(gamma_type_moments_beta_fraction(0.5, 0, 3), DomainError);
}

TEST_CASE("subordinator recursion under the 2a' convention matches the exponential functional") {
  for (double ap : {0.25, 0.5, 1.0, 2.0}) {
    const auto rec = subordinator_recursion_moments(ap, 20, PhiConvention::DoubleScale);
    const auto ef = exp_functional_moments(BesselParams::from_alpha_beta(0.5, ap), 20);
    for (std::size_t s = 0; s <= 20; ++s) CHECK(rel(rec[s], ef[s]) <= 1e-11);
  }
}

TEST_CASE("every generated sequence is log-convex") {
  for (auto params : grid_params()) {
    CHECK(local_time_moments(params, 20).is_log_convex());
    CHECK(scaled_local_time_moments(params, 20).is_log_convex());
    CHECK(tilted_T_moments(params.alpha(), params.beta(), 20).is_log_convex());
    CHECK(exp_functional_moments(params, 20).is_log_convex());
  }
  for (double ap : {0.25, 0.5, 0.75, 1.0, 1.5, 2.5}) CHECK(fkp_moments(ap, 20).is_log_convex());
  for (double a : {0.25, 0.5, 0.75}) CHECK(mittag_leffler_moments(a, 20).is_log_convex());
  CHECK(gamma_type_moments_a_quarter(20).is_log_convex());
  CHECK(rayleigh_moments(2.0, 20).is_log_convex());
}
