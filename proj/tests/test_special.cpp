#include <doctest.h>

#include <cmath>
#include <complex>

#include "htk/core.hpp"
#include "htk/error.hpp"
#include "htk/quadrature.hpp"
#include "htk/special.hpp"

using namespace htk;

TEST_SUITE("special") {
  TEST_CASE("theta values") {
    CHECK(theta(0.0) == 0.0);
    CHECK(theta(kPi / 2) == doctest::Approx(kPi / 2).epsilon(1e-15));
    CHECK(theta(-0.7) == -theta(0.7));
    // series branch against the closed form just outside it
    const double y = 0.1;
    const double closed = (2 * y - std::sin(2 * y)) / (2 * std::sin(y) * std::sin(y));
    CHECK(theta(y) == doctest::Approx(closed).epsilon(1e-13));
    CHECK(theta_prime(0.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    // theta(y) ~ (2/3) y + (4/45) y^3
    CHECK(theta(1e-3) == doctest::Approx(2e-3 / 3 + 4e-9 / 45).epsilon(1e-14));
  }

  TEST_CASE("theta inverse") {
    CHECK(theta_inv(0.0) == 0.0);
    CHECK(theta_inv(kPi / 2) == doctest::Approx(kPi / 2).epsilon(1e-14));
    CHECK(std::abs(theta(theta_inv(3.7)) - 3.7) <= 1e-12);
    CHECK(theta_inv(-3.7) == -theta_inv(3.7));
    for (double omega : {1e-6, 0.3, 10.0, 1e3, 1e6}) {
      const ThetaRoot root = theta_root(omega);
      CHECK(root.y + root.complement == doctest::Approx(kPi).epsilon(1e-15));
      CHECK(theta(root.y) == doctest::Approx(omega).epsilon(1e-11));
    }
  }

  TEST_CASE("distance") {
    CHECK(cc_distance(3.0, 0.0) == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(cc_distance(0.0, 1.0) == doctest::Approx(std::sqrt(4 * kPi)).epsilon(1e-15));
    const double y = theta_inv(1.0);
    CHECK(cc_distance(2.0, 1.0) == doctest::Approx(2.0 * y / std::sin(y)).epsilon(1e-14));
    CHECK(4.0 * quarter_d_sq(RadialPoint(1.0, 1.0)) == doctest::Approx(std::pow(cc_distance(2.0, 1.0), 2)).epsilon(1e-14));
  }

  TEST_CASE("modified Bessel functions") {
    CHECK(bessel_I(0, 0.0) == 1.0);
    CHECK(bessel_I(1, 1.0) == doctest::Approx(0.565159103992485027).epsilon(1e-15));
    const double h = 1e-5;
    const double fd = (bessel_I(1, 1.0 + h) - bessel_I(1, 1.0 - h)) / (2 * h);
    const double identity = 0.5 * (bessel_I(0, 1.0) + bessel_I(2, 1.0));
    CHECK(fd == doctest::Approx(identity).epsilon(1e-9));

    const auto rep = quad::integrate([](double xi) { return std::exp(3.0 * std::cos(xi)) * std::cos(2.0 * xi); },
                                     -kPi, kPi);
    CHECK(std::abs(rep.value / (2 * kPi) - bessel_I(2, 3.0)) <= 1e-10);

    CHECK(bessel_I_tilde(3, 0.0) == 1.0 / 48.0);
    CHECK(bessel_I_tilde(2, 5.0) * 25.0 == doctest::Approx(bessel_I(2, 5.0)).epsilon(1e-14));
    const double s = 200.0;
    CHECK(bessel_I_tilde(1, s) * s * std::sqrt(2 * kPi * s) * std::exp(-s) == doctest::Approx(1.0).epsilon(0.01));
    CHECK(bessel_I_scaled(0, 800.0) == doctest::Approx(std::exp(log_bessel_I(0, 800.0) - 800.0)).epsilon(1e-13));
    CHECK(bessel_I(-2, 1.5) == bessel_I(2, 1.5));
  }

  TEST_CASE("the function r") {
    CHECK(r_func(0.0) == std::complex<double>(0.0, 0.0));
    CHECK(r_func(0.5).real() == doctest::Approx(3.0).epsilon(1e-15));
    const double a = r_func(1e-3).real() / 1e-3, b = r_func(1e-4).real() / 1e-4;
    CHECK(a == doctest::Approx(b).epsilon(1e-3));
    CHECK(b == doctest::Approx(kPi * kPi / 3).epsilon(1e-3));
    const RDerivs d = r_func_derivs(0.2);
    const double h = 1e-5;
    CHECK(d.dr == doctest::Approx((r_func(0.2 + h).real() - r_func(0.2 - h).real()) / (2 * h)).epsilon(1e-8));
  }

  TEST_CASE("saddle") {
    const Saddle s0 = saddle(0.0);
    CHECK(s0.sigma == 0.0);
    CHECK(s0.rho == 1.0);
    CHECK(std::abs(saddle(0.1).residual) <= 1e-12);
    const double limit_02 = saddle(0.02).rho_minus_one / (0.02 * 0.02);
    const double limit_01 = saddle(0.01).rho_minus_one / (0.01 * 0.01);
    CHECK(limit_02 == doctest::Approx(limit_01).epsilon(0.1));
    // rho is not even in delta, but it is flat at 0
    const double h = 1e-4;
    CHECK(std::abs((saddle(h).rho - saddle(-h).rho) / (2 * h)) <= 1e-6);
    CHECK_THROWS_AS(saddle(-0.3), ConvergenceError);
  }
}
