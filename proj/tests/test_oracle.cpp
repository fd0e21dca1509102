#include <doctest.h>

#include <cmath>
#include <complex>

#include "htk/asymptotics.hpp"
#include "htk/core.hpp"
#include "htk/oracle.hpp"
#include "htk/quadrature.hpp"
#include "htk/reference.hpp"

using namespace htk;

namespace {

double rel_diff(double a, double b) { return std::abs(a - b) / std::abs(b); }

struct Frozen {
  int n, m, k1, k2;
  double R, t;
  double value;
};

// Values from tools/independent_oracle.py (mpmath, 30 digits, Bessel-J angular factor).
constexpr Frozen kFrozen[] = {
    {1, 1, 0, 0, 1.0, 1.0, 0.0066532049437714281465},
    {1, 1, 1, 0, 0.5, 2.0, 0.00095926946393889706881},
    {1, 1, 0, 1, 2.0, 3.0, -0.00034950568247998409519},
    {2, 1, 0, 0, 1.0, 0.5, 0.00075706214488955356598},
    {1, 1, 2, 0, 0.3, 1.5, -0.010449200272101589549},
    {1, 1, 0, 2, 1.0, 1.0, 0.0036494105936708284183},
    {1, 2, 0, 0, 1.0, 1.0, 0.0028340629776175282697},
    {1, 2, 1, 0, 0.5, 2.0, 0.00026963403083229996353},
    {2, 2, 0, 0, 0.5, 0.5, 0.00060904658087373863141},
    {1, 3, 0, 0, 0.5, 0.5, 0.0066679581172351592676},
    {1, 3, 0, 1, 1.0, 2.0, -0.00042559846441090650709},
    {1, 2, 0, 1, 1.0, 1.5, -0.0022472992515564438616},
};

}  // namespace

TEST_SUITE("oracle") {
  TEST_CASE("center value") {
    const OracleResult r = oracle_m1(GroupShape(1, 1), RadialPoint(0.0, 0.0), DerivOrder(0, 0));
    CHECK(rel_diff(r.plain(), 1.0 / 16.0) <= 1e-10);
  }

  TEST_CASE("frozen independent values") {
    for (const Frozen& f : kFrozen) {
      CAPTURE(f.n);
      CAPTURE(f.m);
      CAPTURE(f.k1);
      CAPTURE(f.k2);
      CAPTURE(f.R);
      CAPTURE(f.t);
      const OracleResult r = reference_value(GroupShape(f.n, f.m), RadialPoint(f.R, f.t), DerivOrder(f.k1, f.k2));
      CHECK(r.converged);
      CHECK(rel_diff(r.plain(), f.value) <= 1e-9);
    }
  }

  TEST_CASE("odd derivative in |t| keeps only the sine part") {
    // The cosine part of the k2 = 1 integrand is odd in lambda and integrates to zero.
    const GroupShape shape(1, 1);
    const RadialPoint p(1.0, 1.0);
    const DerivOrder order(0, 1);
    const auto discarded = quad::integrate(
        [&](double lam) { return m1_integrand(1, p, order, {lam, 0.0}).real(); }, -40.0, 40.0);
    CHECK(std::abs(discarded.value) <= 1e-12);
  }

  TEST_CASE("positivity and method agreement") {
    const GroupShape shape(1, 1);
    CHECK(oracle_m1(shape, RadialPoint(1.0, 1.0), DerivOrder(0, 0)).plain() > 0.0);
    const RadialPoint p(1.0, 2.0);
    const DerivOrder order(1, 0);
    CHECK(rel_diff(oracle_polar(shape, p, order).plain(), oracle_m1(shape, p, order).plain()) <= 1e-10);
    const RadialPoint q(0.5, 5.0);
    CHECK(rel_diff(oracle_contour_m1(shape, q, DerivOrder(0, 0)).plain(),
                   oracle_m1(shape, q, DerivOrder(0, 0)).plain()) <= 1e-8);
    // the line height does not change the value
    const double low = oracle_m1(shape, q, DerivOrder(0, 0), {}, 0.0).plain();
    const double high = oracle_m1(shape, q, DerivOrder(0, 0), {}, 2.5).plain();
    CHECK(rel_diff(low, high) <= 1e-8);
  }

  TEST_CASE("sphere factor") {
    CHECK(sphere_factor(2, 0, 0.0) == doctest::Approx(2 * kPi).epsilon(1e-14));
    CHECK(sphere_factor(3, 0, 0.0) == doctest::Approx(4 * kPi).epsilon(1e-14));
    CHECK(sphere_factor(1, 0, 0.7) == doctest::Approx(2 * std::cos(0.7)).epsilon(1e-14));
    CHECK(sphere_factor(3, 0, 2.0) == doctest::Approx(4 * kPi * std::sin(2.0) / 2.0).epsilon(1e-12));
  }

  TEST_CASE("even-m descent") {
    const DescentCheck a = descent_check(GroupShape(1, 2), RadialPoint(1.0, 2.0), DerivOrder(0, 0));
    CHECK(a.discrepancy < 1e-5);
    const DescentCheck b = descent_check(GroupShape(2, 2), RadialPoint(2.0, 1.0), DerivOrder(1, 0));
    CHECK(b.discrepancy < 1e-5);
    const DescentCheck c = descent_check(GroupShape(1, 2), RadialPoint(1.0, 0.0), DerivOrder(0, 0));
    CHECK(c.discrepancy < 1e-5);
  }

  TEST_CASE("odd-m reduction") {
    const auto weights = odd_m_weights(3, 0, 2.0);
    REQUIRE(weights.size() == 1);
    CHECK(weights[0].first == 1);
    CHECK(weights[0].second == doctest::Approx(-1.0 / (2 * kPi * 2.0)).epsilon(1e-15));

    const GroupShape shape(1, 3);
    const RadialPoint p(1.0, 3.0);
    const DerivOrder order(0, 0);
    const LogReal reduced = odd_m_reduce(shape, p, order, [&](const DerivOrder& o) {
      return oracle_m1(GroupShape(1, 1), p, o).as_log();
    });
    CHECK(rel_diff(reduced.value(), oracle_polar(shape, p, order).plain()) < 1e-6);
  }

  TEST_CASE("reference policy picks a well-conditioned method") {
    CHECK(reference_value(GroupShape(1, 1), RadialPoint(1.0, 1.0), DerivOrder(0, 0)).method ==
          OracleMethod::direct_1d);
    CHECK(reference_value(GroupShape(1, 1), RadialPoint(1.0, 20.0), DerivOrder(0, 0)).method ==
          OracleMethod::contour_m1);
    CHECK(reference_value(GroupShape(1, 3), RadialPoint(0.5, 0.5), DerivOrder(0, 0)).method ==
          OracleMethod::direct_polar);
  }
}
