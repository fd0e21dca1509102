#include <doctest.h>

#include <cmath>
#include <random>

#include "htk/calculus.hpp"
#include "htk/checks.hpp"
#include "htk/core.hpp"
#include "htk/error.hpp"
#include "htk/special.hpp"

using namespace htk;

namespace {

double ratio(const LogReal& a, const LogReal& b) { return a.sign * b.sign * std::exp(a.log_abs - b.log_abs); }

}  // namespace

TEST_SUITE("calculus") {
  TEST_CASE("horizontal gradient") {
    const GroupShape shape(1, 1);
    const auto eval = oracle_evaluator(shape);
    CHECK(grad_h_sq(shape, RadialPoint(0.0, 1.0), eval).sign == 0);

    const CheckItem fd = check_gradient_fd();
    CHECK_MESSAGE(fd.passed, fd.detail);

    std::mt19937 rng(20240611);
    std::uniform_real_distribution<double> R(0.05, 4.0), t(0.0, 6.0);
    for (int i = 0; i < 20; ++i) CHECK(grad_h_sq(shape, RadialPoint(R(rng), t(rng)), eval).sign >= 0);
  }

  TEST_CASE("sub-Laplacian for m = 1") {
    const GroupShape shape(1, 1);
    const auto eval = oracle_evaluator(shape);
    const RadialPoint p(1.0, 1.0);
    const double expected = -p.R() * eval(p, DerivOrder(2, 0)).value() - eval(p, DerivOrder(1, 0)).value() -
                            p.R() * eval(p, DerivOrder(0, 2)).value();
    CHECK(sublaplacian(shape, p, eval).value() == doctest::Approx(expected).epsilon(1e-12));
    CHECK_THROWS_AS(sublaplacian(GroupShape(1, 2), RadialPoint(1.0, 0.0), oracle_evaluator(GroupShape(1, 2))),
                    DomainError);
  }

  TEST_CASE("heat equation") {
    const CheckItem heat = check_heat_equation();
    CHECK_MESSAGE(heat.passed, heat.detail);
    const GroupShape shape(1, 2);
    const auto eval = oracle_evaluator(shape);
    const RadialPoint p(0.7, 1.3);
    const double lhs = sublaplacian(shape, p, eval).value();
    const double rhs = -time_derivative_fd(shape, p, eval).value();
    CHECK(std::abs(lhs / rhs - 1.0) <= 1e-4);
  }

  TEST_CASE("potential at a regime IV point") {
    // The second term of V_1 is -L p / (2 p); a positive potential here needs L p / p < 0.
    const GroupShape shape(1, 1);
    const auto eval = oracle_evaluator(shape);
    const RadialPoint p(0.01, 50.0);
    CHECK(ratio(sublaplacian(shape, p, eval), eval(p, DerivOrder(0, 0))) < 0.0);
    CHECK(potential(shape, 1.0, p, eval).v > 0.0);
  }

  TEST_CASE("potential in regime I matches the closed form") {
    const GroupShape shape(1, 1);
    const RadialPoint p(225.0, 225.0);  // |x| = 30, omega = 1
    const double y = theta_inv(1.0);
    const double closed = p.R() / 4.0 * std::pow(y / std::sin(y), 2);
    CHECK(potential(shape, 1.0, p, oracle_evaluator(shape)).v == doctest::Approx(closed).epsilon(0.1));
  }

  TEST_CASE("potential in regime II stays in its band") {
    const GroupShape shape(1, 1);
    const RadialPoint p = RadialPoint::from_delta_kappa(0.05, 100.0);
    const PotentialSample sample = potential(shape, 1.0, p, default_evaluator(shape));
    CHECK(sample.ratio >= 0.05);
    CHECK(sample.ratio <= 5.0);
    CHECK(sample.d2 == doctest::Approx(4.0 * quarter_d_sq(p)).epsilon(1e-15));
  }

  TEST_CASE("potential scales with s") {
    const GroupShape shape(1, 1);
    const auto eval = oracle_evaluator(shape);
    const RadialPoint p(2.0, 3.0);
    const double scaled = potential(shape, 4.0, p, eval).v;
    const double base = potential(shape, 1.0, p.scaled(4.0), eval).v;
    CHECK(scaled == doctest::Approx(base / 4.0).epsilon(1e-15));
  }

  TEST_CASE("asymptotic evaluator falls back to the oracle off the regimes") {
    const GroupShape shape(1, 1);
    const RadialPoint gap(1.0, 10.0);
    const LogReal a = asymptotic_evaluator(shape)(gap, DerivOrder(0, 0));
    const LogReal o = oracle_evaluator(shape)(gap, DerivOrder(0, 0));
    CHECK(ratio(a, o) == doctest::Approx(1.0).epsilon(1e-14));
  }
}
