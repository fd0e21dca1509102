#include <doctest.h>

#include <cmath>

#include "htk/asymptotics.hpp"
#include "htk/core.hpp"
#include "htk/reference.hpp"
#include "htk/special.hpp"

using namespace htk;

namespace {

double rel_error(const LogReal& approx, const LogReal& exact) {
  return std::abs(approx.sign * exact.sign * std::exp(approx.log_abs - exact.log_abs) - 1.0);
}

LogReal oracle(const GroupShape& shape, const RadialPoint& p, const DerivOrder& order) {
  return reference_value(shape, p, order).as_log();
}

}  // namespace

TEST_SUITE("asymptotics") {
  TEST_CASE("expansion coefficients") {
    CHECK(coeff_c(0, 0, 0) == 1.0);
    CHECK(coeff_c(1, 2, 0) == doctest::Approx(-9.0 / 4.0).epsilon(1e-15));
    // (-1)^j carried by i^{-2j}: c_{0,2,1} = -6
    CHECK(coeff_c(0, 2, 1) == doctest::Approx(-6.0).epsilon(1e-15));

    const GroupShape shape(1, 1);
    CHECK(coeff_b(shape, 0, 0, 0) == doctest::Approx(kPi / 2).epsilon(1e-15));
    CHECK(coeff_b(GroupShape(2, 3), 0, 0, 0) == doctest::Approx(kPi * kPi / 4).epsilon(1e-15));
    CHECK(coeff_b(shape, 1, 0, 0) == doctest::Approx(0.5 * kPi * kPi / 4).epsilon(1e-15));
    // b_{1,0,1}: -(2)(pi/2)(2 - pi^2/8)
    CHECK(coeff_b_half(shape, 1, 0) == doctest::Approx(-kPi * (2.0 - kPi * kPi / 8.0)).epsilon(1e-14));
  }

  TEST_CASE("coefficients do not share one sign") {
    CHECK(coeff_c(0, 2, 0) > 0.0);
    CHECK(coeff_c(0, 2, 1) < 0.0);
    CHECK(coeff_b(GroupShape(1, 1), 2, 0, 0) > 0.0);
    CHECK(coeff_b(GroupShape(1, 1), 2, 0, 1) < 0.0);
  }

  TEST_CASE("leading normalisation") {
    const GroupShape shape(1, 1);
    CHECK(regime_I_psi(shape, 0.0) == doctest::Approx(std::sqrt(3 * kPi) / (4 * kPi * kPi)).epsilon(1e-14));
    CHECK(regime_I_psi(shape, 1e-5) / regime_I_psi(shape, 0.0) == doctest::Approx(1.0).epsilon(1e-3));
    for (double omega : {0.1, 1.0, 3.0}) CHECK(regime_I_psi(shape, omega) > 0.0);
  }

  TEST_CASE("regime I generic form") {
    const GroupShape shape(1, 1);
    const RadialPoint p(100.0, 100.0);  // |x| = 20, omega = 1
    const Approximation a = asym_regime_I(shape, p, DerivOrder(0, 0));
    const double y = theta_inv(1.0);
    CHECK(a.correction == doctest::Approx(y / std::sin(y)).epsilon(1e-14));
    CHECK(a.log_leading == doctest::Approx(-quarter_d_sq(p)).epsilon(1e-14));
    CHECK(rel_error(a.value, oracle(shape, p, DerivOrder(0, 0))) <= a.claimed_error);
  }

  TEST_CASE("regime I omega -> 0 with k2 = 2") {
    const GroupShape shape(1, 1);
    const double omega = 0.05;
    const RadialPoint p(225.0, omega * 225.0);  // |x| = 30
    const Approximation a = asym_regime_I(shape, p, DerivOrder(0, 2), {}, Subcase::omega_to_0_k2_even);
    CHECK(a.correction == doctest::Approx(2.25 * omega * omega - 6.0 / 900.0).epsilon(1e-12));
    CHECK(rel_error(a.value, oracle(shape, p, DerivOrder(0, 2))) <= 3.0 * a.claimed_error);
  }

  TEST_CASE("regime I omega -> pi/2 with odd k1") {
    for (int m : {1, 2}) {
      CAPTURE(m);
      const GroupShape shape(1, m);
      const RadialPoint p(225.0, kPi / 2 * 225.0);
      const Approximation a = asym_regime_I(shape, p, DerivOrder(1, 0), {}, Subcase::omega_to_half_pi_k1_odd);
      CHECK(rel_error(a.value, oracle(shape, p, DerivOrder(1, 0))) <= a.claimed_error);
    }
  }

  TEST_CASE("regime II power-law form") {
    const GroupShape shape(1, 1);
    const RadialPoint p = RadialPoint::from_delta_kappa(0.05, 100.0);
    const Approximation a = asym_regime_II(shape, p, DerivOrder(0, 0));
    CHECK(rel_error(a.value, oracle(shape, p, DerivOrder(0, 0))) <= 0.1);
    const double expected = -quarter_d_sq(p) - std::log(4.0 * std::sqrt(2 * kPi * p.kappa()));
    CHECK(a.value.log_abs == doctest::Approx(expected).epsilon(1e-13));

    const RadialPoint q = RadialPoint::from_delta_kappa(0.02, 200.0);
    CHECK(rel_error(asym_regime_II(shape, q, DerivOrder(0, 0)).value,
                    asym_unified(shape, q, DerivOrder(0, 0)).value) < 0.05);
  }

  TEST_CASE("regime III against the rho = 1 display") {
    const GroupShape shape(1, 2);
    const double delta = 0.01, kappa = 1.0;
    const RadialPoint p = RadialPoint::from_delta_kappa(delta, kappa);
    const Approximation a = asym_unified(shape, p, DerivOrder(0, 0));
    // 1/(4 (pi delta)^{-1/2} kappa^{1/2}) e^{-d^2/4} e^{-kappa} I_0(kappa)
    const double display = -quarter_d_sq(p) - std::log(4.0) + 0.5 * std::log(kPi * delta) -
                           0.5 * std::log(kappa) - kappa + std::log(bessel_I(0, kappa));
    CHECK(std::abs(std::exp(a.value.log_abs - display) - 1.0) < 0.01);
    CHECK(rel_error(a.value, oracle(shape, p, DerivOrder(0, 0))) <= a.claimed_error);
  }

  TEST_CASE("regime IV limit and sign") {
    const GroupShape shape(1, 1);
    const double kappa = 1e-3, t = 100.0;
    const RadialPoint p(kappa * kappa / (4 * kPi * t), t);
    for (int k2 : {0, 1, 2}) {
      const Approximation a = asym_unified(shape, p, DerivOrder(0, k2));
      CHECK(a.value.sign == (k2 % 2 ? -1 : 1));
    }
    // pi^{k1+k2} / (2^{2n} (n+k1-1)!) |t|^{n+k1-1} e^{-d^2/4} at n = m = 1, k = 0
    const Approximation a = asym_unified(shape, p, DerivOrder(0, 0));
    const double limit = -std::log(4.0) - quarter_d_sq(p);
    CHECK(std::abs(std::exp(a.value.log_abs - limit) - 1.0) < 0.01);
  }

  TEST_CASE("dispatcher follows the classifier") {
    const GroupShape shape(1, 1);
    CHECK(asymptotic(shape, RadialPoint(100.0, 100.0), DerivOrder(0, 0)).regime.tag == RegimeTag::I);
    CHECK(asymptotic(shape, RadialPoint::from_delta_kappa(0.05, 100.0), DerivOrder(0, 0)).regime.tag ==
          RegimeTag::II);
    const Approximation iii = asymptotic(shape, RadialPoint::from_delta_kappa(0.01, 1.0), DerivOrder(0, 0));
    CHECK(iii.regime.tag == RegimeTag::III);
    CHECK(iii.claimed_order == "O(delta + 1/|t|)");
  }

  TEST_CASE("small-|t| expansion") {
    const GroupShape shape(1, 1);
    const RadialPoint p(25.0, 0.01);  // |x| = 10
    const RadialPoint axis(25.0, 0.0);
    const DerivOrder order(0, 1);
    const TaylorResult r = taylor_small_t(shape, p, order, 1, [&](const DerivOrder& o) {
      return reference_value(shape, axis, o).as_log();
    });
    const double exact = reference_value(shape, p, order).plain();
    CHECK(std::abs(r.value.value_saturating() - exact) <= std::abs(r.remainder_proxy.value_saturating()));

    // N = 0: p ~ |t| p_{k1,k2+1}(x,0) for odd k2, exact for even k2 at t = 0
    const TaylorResult zero = taylor_small_t(shape, p, order, 0, [&](const DerivOrder& o) {
      return reference_value(shape, axis, o).as_log();
    });
    const double first = 0.01 * reference_value(shape, axis, DerivOrder(0, 2)).plain();
    CHECK(zero.value.value_saturating() == doctest::Approx(first).epsilon(1e-14));
  }

  TEST_CASE("log-space sums") {
    const LogReal s = log_sum({LogReal::from_value(3.0), LogReal::from_value(-1.0), LogReal::from_scaled(1.0, -800.0)});
    CHECK(s.value() == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(log_sum({}).sign == 0);
  }
}
