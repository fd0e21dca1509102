#include <doctest.h>

#include <cmath>

#include "htk/core.hpp"
#include "htk/error.hpp"
#include "htk/quadrature.hpp"

using namespace htk;

TEST_SUITE("core") {
  TEST_CASE("radial coordinates from cartesian data") {
    const auto p = RadialPoint::from_cartesian(2.0, 3.0);
    CHECK(p.R() == 1.0);
    CHECK(p.t() == 3.0);
    CHECK(p.omega() == 3.0);
    CHECK(p.delta() == doctest::Approx(std::sqrt(1.0 / (3.0 * kPi))).epsilon(1e-15));
    CHECK(p.kappa() == doctest::Approx(2.0 * std::sqrt(3.0 * kPi)).epsilon(1e-15));

    const auto on_center = RadialPoint::from_cartesian(0.0, 5.0);
    CHECK(on_center.R() == 0.0);
    CHECK(on_center.kappa() == 0.0);
    CHECK(on_center.on_center());

    const auto horizontal = RadialPoint::from_cartesian(2.0, 0.0);
    CHECK(horizontal.R() == 1.0);
    CHECK(horizontal.omega() == 0.0);
    CHECK(horizontal.on_horizontal());
  }

  TEST_CASE("delta and kappa determine the point") {
    const auto p = RadialPoint::from_delta_kappa(0.05, 100.0);
    CHECK(p.delta() == doctest::Approx(0.05).epsilon(1e-14));
    CHECK(p.kappa() == doctest::Approx(100.0).epsilon(1e-14));
    CHECK(p.kappa() * p.delta() == doctest::Approx(2.0 * p.R()).epsilon(1e-14));
    CHECK(p.kappa() / p.delta() == doctest::Approx(2.0 * kPi * p.t()).epsilon(1e-14));
  }

  TEST_CASE("invalid arguments are rejected") {
    CHECK_THROWS_AS(GroupShape(0, 1), DomainError);
    CHECK_THROWS_AS(GroupShape(1, 0), DomainError);
    CHECK_THROWS_AS(DerivOrder(-1, 0), DomainError);
    CHECK_THROWS_AS(RadialPoint(-1.0, 0.0), DomainError);
    CHECK_THROWS_AS(RadialPoint(1.0, NAN), DomainError);
    CHECK_THROWS_AS(RadialPoint(0.0, 1.0).omega(), DomainError);
    RegimeThresholds bad;
    bad.kappa_low = 20.0;
    CHECK_THROWS_AS(bad.validate(), DomainError);
  }

  TEST_CASE("classification examples") {
    const Regime generic = classify(RadialPoint(1.0, 1.0), DerivOrder(0, 0));
    CHECK(generic.tag == RegimeTag::I);
    REQUIRE(generic.subcase.has_value());
    CHECK(*generic.subcase == Subcase::generic);

    CHECK(classify(RadialPoint::from_delta_kappa(0.01, 50.0), DerivOrder(0, 0)).tag == RegimeTag::II);

    // kappa = 0.01 at |t| = 100
    const double kappa = 0.01, t = 100.0;
    const RadialPoint iv(kappa * kappa / (4.0 * kPi * t), t);
    CHECK(iv.kappa() == doctest::Approx(kappa).epsilon(1e-13));
    const Regime r = classify(iv, DerivOrder(0, 0));
    CHECK(r.tag == RegimeTag::IV);
    CHECK_FALSE(r.subcase.has_value());

    CHECK(classify(RadialPoint::from_delta_kappa(0.01, 1.0), DerivOrder(0, 0)).tag == RegimeTag::III);
  }

  TEST_CASE("axis points and the omega gap are unclassifiable") {
    CHECK_THROWS_AS(classify(RadialPoint(0.0, 1.0), DerivOrder(0, 0)), UnclassifiableError);
    CHECK_THROWS_AS(classify(RadialPoint(1.0, 0.0), DerivOrder(0, 0)), UnclassifiableError);
    CHECK_THROWS_AS(classify(RadialPoint(1.0, 10.0), DerivOrder(0, 0)), UnclassifiableError);
  }

  TEST_CASE("regime I subcases near the band edges") {
    const RadialPoint small(225.0, 0.04 * 225.0);
    CHECK(classify(small, DerivOrder(0, 2)).subcase == Subcase::omega_to_0_k2_even);
    const RadialPoint half(225.0, kPi / 2 * 225.0);
    CHECK(classify(half, DerivOrder(2, 0)).subcase == Subcase::omega_to_half_pi_k1_even);
    CHECK(classify(half, DerivOrder(1, 0)).subcase == Subcase::omega_to_half_pi_k1_odd);
    CHECK(classify(half, DerivOrder(0, 0)).subcase == Subcase::omega_to_half_pi_k1_even);
    CHECK(classify(RadialPoint(225.0, 225.0), DerivOrder(2, 0)).subcase == Subcase::generic);
  }

  TEST_CASE("time rescaling") {
    const GroupShape shape(1, 1);
    CHECK(rescale_time(0.3, 1.0, shape, DerivOrder(0, 0)) == 0.3);
    CHECK(rescale_time(0.3, 4.0, shape, DerivOrder(0, 0)) == doctest::Approx(0.3 / 16.0).epsilon(1e-15));
    CHECK(rescale_time(0.3, 2.0, GroupShape(2, 3), DerivOrder(1, 1)) ==
          doctest::Approx(0.3 / 128.0).epsilon(1e-15));
    const RadialPoint p = RadialPoint(2.0, 3.0).scaled(4.0);
    CHECK(p.R() == 0.5);
    CHECK(p.t() == 0.75);
  }

  TEST_CASE("log-space reals") {
    const LogReal a = LogReal::from_value(-3.0);
    CHECK(a.sign == -1);
    CHECK(a.value() == doctest::Approx(-3.0).epsilon(1e-15));
    CHECK(LogReal::from_value(0.0).sign == 0);
    const LogReal huge = LogReal::from_scaled(2.0, 1000.0);
    CHECK_THROWS_AS(huge.value(), OverflowError);
    CHECK(std::isinf(huge.value_saturating()));
    CHECK(LogReal::from_scaled(2.0, -1000.0).value_saturating() == 0.0);
    const LogReal prod = a * LogReal::from_value(-2.0);
    CHECK(prod.value() == doctest::Approx(6.0).epsilon(1e-15));
  }

  TEST_CASE("Gauss-Kronrod constants") {
    using quad::detail::kWg;
    using quad::detail::kWgk;
    using quad::detail::kXgk;
    double kronrod = kWgk[7], gauss = kWg[3];
    for (int j = 0; j < 7; ++j) kronrod += 2.0 * kWgk[j];
    for (int j = 0; j < 3; ++j) gauss += 2.0 * kWg[j];
    CHECK(kronrod == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(gauss == doctest::Approx(2.0).epsilon(1e-15));

    // Kronrod rule is exact through degree 22, the embedded Gauss rule through 13.
    auto moment = [](int degree) { return degree % 2 ? 0.0 : 2.0 / (degree + 1); };
    for (int degree = 0; degree <= 22; degree += 2) {
      double k = kWgk[7] * std::pow(kXgk[7], degree);
      for (int j = 0; j < 7; ++j) k += 2.0 * kWgk[j] * std::pow(kXgk[j], degree);
      CHECK(k == doctest::Approx(moment(degree)).epsilon(1e-14));
    }
    for (int degree = 0; degree <= 12; degree += 2) {
      double g = kWg[3] * std::pow(kXgk[7], degree);
      for (int j = 0; j < 3; ++j) g += 2.0 * kWg[j] * std::pow(kXgk[2 * j + 1], degree);
      CHECK(g == doctest::Approx(moment(degree)).epsilon(1e-14));
    }
  }

  TEST_CASE("adaptive quadrature") {
    // integral of x / sinh x over the half line is pi^2 / 4
    const auto r = quad::integrate([](double x) { return x == 0.0 ? 1.0 : x / std::sinh(x); }, 0.0, 60.0);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(kPi * kPi / 4.0).epsilon(1e-13));
    const auto osc = quad::integrate([](double x) { return std::cos(50.0 * x); }, 0.0, 1.0);
    CHECK(osc.value == doctest::Approx(std::sin(50.0) / 50.0).epsilon(1e-12));
    const auto reversed = quad::integrate([](double x) { return x * x; }, 1.0, 0.0);
    CHECK(reversed.value == doctest::Approx(-1.0 / 3.0).epsilon(1e-15));
  }
}
