#include "htk/checks.hpp"

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>

#include "htk/asymptotics.hpp"
#include "htk/calculus.hpp"
#include "htk/error.hpp"
#include "htk/oracle.hpp"
#include "htk/quadrature.hpp"
#include "htk/reference.hpp"
#include "htk/special.hpp"

namespace htk {

namespace {

std::string printf_string(const char* fmt, ...) {
  char buf[512];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(buf, sizeof buf, fmt, args);
  va_end(args);
  return buf;
}

CheckItem bounded(std::string name, double worst, double tolerance, std::string detail = {}) {
  return {std::move(name), worst <= tolerance, worst, tolerance, std::move(detail)};
}

// |a / b - 1| for values in log form.
double log_rel_diff(const LogReal& a, const LogReal& b) {
  if (a.sign == 0 && b.sign == 0) return 0.0;
  if (a.sign == 0 || b.sign == 0) return INFINITY;
  return std::abs(a.sign * b.sign * std::exp(a.log_abs - b.log_abs) - 1.0);
}

double least_squares_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  const double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// Relative discrepancy between an expansion and the reference value at a point.
double asym_error(const GroupShape& shape, const RadialPoint& p, const DerivOrder& order,
                  const Approximation& a) {
  return log_rel_diff(a.value, reference_value(shape, p, order).as_log());
}

}  // namespace

bool CheckReport::passed() const {
  return std::all_of(items.begin(), items.end(), [](const CheckItem& c) { return c.passed; });
}

CheckItem check_center_value() {
  const auto r = oracle_m1(GroupShape(1, 1), RadialPoint(0.0, 0.0), DerivOrder(0, 0));
  const double rel = std::abs(r.plain() / 0.0625 - 1.0);
  return bounded("center value 1/16", rel, 1e-10, printf_string("value %.15g", r.plain()));
}

CheckItem check_normalization() {
  // Integral over R^2 x R in polar coordinates: 8 pi int_0^inf dR int_0^inf d|t| p(R, |t|).
  // The kernel is below exp(-40) beyond R = 45 or |t| = 14.
  const GroupShape shape(1, 1);
  QuadratureSpec spec;
  spec.rel_tol = 1e-9;
  quad::Options opt;
  opt.rel_tol = 1e-8;
  opt.abs_tol = 1e-14;
  auto inner = [&](double R) {
    auto f = [&](double t) {
      return oracle_m1(shape, RadialPoint(R, t), DerivOrder(0, 0), spec).plain();
    };
    return quad::integrate(f, 0.0, 14.0, opt).value;
  };
  const auto res = quad::integrate(inner, 0.0, 45.0, opt);
  const double total = 8.0 * kPi * res.value;
  return bounded("normalization", std::abs(total - 1.0), 1e-5, printf_string("integral %.12f", total));
}

CheckItem check_odd_reduction() {
  const double Rs[] = {0.5, 1, 2, 4, 0.5, 3, 1.5, 4, 2.5, 0.8};
  const double ts[] = {0.5, 2, 8, 8, 8, 1, 4, 0.5, 6, 3};
  double worst = 0.0;
  for (int n = 1; n <= 2; ++n)
    for (int k1 = 0; k1 <= 1; ++k1)
      for (int k2 = 0; k2 <= 1; ++k2)
        for (int i = 0; i < 10; ++i) {
          const GroupShape shape(n, 3);
          const RadialPoint p(Rs[i], ts[i]);
          const DerivOrder order(k1, k2);
          worst = std::max(worst, log_rel_diff(oracle_polar(shape, p, order).as_log(),
                                               odd_reduction_value(shape, p, order).as_log()));
        }
  return bounded("odd-m reduction (m = 3)", worst, 1e-6, "80 comparisons");
}

CheckItem check_even_descent() {
  const double Rs[] = {0.5, 1, 2, 1, 3};
  const double ts[] = {0.5, 1, 1, 2.5, 0.2};
  double worst = 0.0;
  for (int i = 0; i < 5; ++i) {
    const auto c = descent_check(GroupShape(1, 2), RadialPoint(Rs[i], ts[i]), DerivOrder(i % 2, 0));
    worst = std::max(worst, c.discrepancy);
  }
  return bounded("even-m descent (m = 2)", worst, 1e-5, "5 points");
}

CheckItem check_regime_I_order() {
  const double xs[] = {8, 12, 16, 24, 32};
  std::string detail;
  bool ok = true;
  double worst_dev = 0.0;
  for (int m = 1; m <= 2; ++m) {
    const GroupShape shape(1, m);
    std::vector<double> lx, le;
    for (double x : xs) {
      const RadialPoint p = RadialPoint::from_cartesian(x, x * x / 4.0);
      const auto a = asym_regime_I(shape, p, DerivOrder(0, 0));
      lx.push_back(std::log(x));
      le.push_back(std::log(asym_error(shape, p, DerivOrder(0, 0), a)));
    }
    const double slope = least_squares_slope(lx, le);
    ok = ok && slope >= -2.5 && slope <= -1.5;
    worst_dev = std::max(worst_dev, std::abs(slope + 2.0));
    detail += printf_string("%sslope(m=%d) %.3f", m == 1 ? "" : ", ", m, slope);
  }
  return {"regime I error order", ok, worst_dev, 0.5, detail};
}

CheckItem check_regime_I_subcases() {
  // Ratio of the observed relative error to the claimed relative proxy.
  const double x = 30.0;
  const double omegas_zero[] = {0.01, 0.02, 0.03, 0.04, 0.045};
  const double offsets_half_pi[] = {-0.04, -0.02, 0.0, 0.02, 0.04};
  double worst_zero = 0.0, worst_half = 0.0;
  for (int m = 1; m <= 2; ++m) {
    const GroupShape shape(1, m);
    for (double w : omegas_zero) {
      const RadialPoint p = RadialPoint::from_cartesian(x, w * x * x / 4.0);
      const DerivOrder order(0, 2);
      const auto a = asym_regime_I(shape, p, order, {}, Subcase::omega_to_0_k2_even);
      worst_zero = std::max(worst_zero, asym_error(shape, p, order, a) / a.claimed_error);
    }
    for (double w : offsets_half_pi) {
      const RadialPoint p = RadialPoint::from_cartesian(x, (kPi / 2 + w) * x * x / 4.0);
      const DerivOrder order(2, 0);
      const auto a = asym_regime_I(shape, p, order, {}, Subcase::omega_to_half_pi_k1_even);
      worst_half = std::max(worst_half, asym_error(shape, p, order, a) / a.claimed_error);
    }
  }
  const double worst = std::max(worst_zero, worst_half);
  return bounded("regime I subcases", worst, 3.0,
                 printf_string("error/proxy: (0,2) omega->0 %.2f, (2,0) omega->pi/2 %.2f",
                               worst_zero, worst_half));
}

CheckItem check_regime_II() {
  const GroupShape shape(1, 1);
  double worst = 0.0;
  for (double delta : {0.02, 0.05})
    for (double kappa : {50.0, 100.0, 200.0})
      for (int k1 = 0; k1 <= 1; ++k1)
        for (int k2 = 0; k2 <= 1; ++k2) {
          const RadialPoint p = RadialPoint::from_delta_kappa(delta, kappa);
          const DerivOrder order(k1, k2);
          const auto a = asym_regime_II(shape, p, order);
          const auto r = oracle_contour_m1(shape, p, order);
          worst = std::max(worst, log_rel_diff(a.value, r.as_log()) / (delta + 1.0 / kappa));
        }
  return bounded("regime II", worst, 10.0, "error / (delta + 1/kappa)");
}

CheckItem check_regimes_III_IV() {
  double worst = 0.0;
  for (int m = 1; m <= 2; ++m)
    for (int k1 = 0; k1 <= 1; ++k1)
      for (int k2 = 0; k2 <= 1; ++k2) {
        const GroupShape shape(1, m);
        const DerivOrder order(k1, k2);
        std::vector<RadialPoint> pts;
        for (double kappa : {0.5, 1.0, 2.0}) pts.push_back(RadialPoint::from_delta_kappa(0.01, kappa));
        for (double t : {50.0, 100.0}) pts.push_back(RadialPoint::from_delta_kappa(0.05 / (2 * kPi * t), 0.05));
        for (const auto& p : pts) {
          const auto a = asym_unified(shape, p, order);
          worst = std::max(worst, asym_error(shape, p, order, a) / a.claimed_error);
        }
      }
  return bounded("regimes III and IV", worst, 10.0, "error / claimed proxy");
}

CheckItem check_oracle_consistency() {
  const double Rs[] = {0.5, 1, 2, 3, 0.3, 1.5, 2.5, 0.8, 4, 1};
  const double ts[] = {2, 3, 6, 5, 0.6, 1.5, 8, 4, 10, 0.5};
  const GroupShape shape(1, 1);
  double worst = 0.0, max_delta = 0.0;
  for (int i = 0; i < 10; ++i) {
    const RadialPoint p(Rs[i], ts[i]);
    const DerivOrder order(i % 2, (i / 2) % 3);
    const auto a = oracle_m1(shape, p, order);
    const auto b = oracle_contour_m1(shape, p, order);
    const double combined = a.relative_error() + b.relative_error();
    worst = std::max(worst, log_rel_diff(a.as_log(), b.as_log()) / combined);
    max_delta = std::max(max_delta, p.delta());
  }
  return bounded("shifted line vs contour", worst, 1.0,
                 printf_string("difference / combined error estimate; max delta %.3f", max_delta));
}

CheckItem check_theta_round_trip() {
  double worst = 0.0;
  for (double omega : {1e-8, 1e-4, 0.01, 0.3, 1.0, kPi / 2, 3.0, 10.0, 100.0, 1e4, 1e7}) {
    const double y = theta_inv(omega);
    worst = std::max(worst, std::abs(theta(y) - omega) / omega);
  }
  for (double y : {1e-6, 0.1, 0.24, 0.26, 1.0, 1.5, 2.0, 3.0, 3.1}) {
    worst = std::max(worst, std::abs(theta_inv(theta(y)) - y) / y);
  }
  return bounded("theta round trip", worst, 1e-12);
}

CheckItem check_theta_prime_at_zero() {
  return bounded("theta'(0) = 2/3", std::abs(theta_prime(0.0) - 2.0 / 3.0), 1e-8);
}

CheckItem check_bessel_derivative() {
  // I_nu(b) - I_nu(a) = int_a^b (I_{nu-1} + I_{nu+1}) / 2.
  quad::Options opt;
  opt.rel_tol = 1e-14;
  opt.abs_tol = 0.0;
  double worst = 0.0;
  for (int nu = 0; nu <= 5; ++nu)
    for (auto [a, b] : {std::pair{0.0, 0.5}, std::pair{0.5, 3.0}, std::pair{3.0, 20.0},
                        std::pair{20.0, 45.0}, std::pair{100.0, 210.0}}) {
      auto f = [&](double s) { return std::exp(-b) * 0.5 * (bessel_I(nu - 1, s) + bessel_I(nu + 1, s)); };
      const double lhs = std::exp(-b) * bessel_I(nu, b) - std::exp(-b) * bessel_I(nu, a);
      const double rhs = quad::integrate(f, a, b, opt).value;
      worst = std::max(worst, std::abs(lhs - rhs) / std::abs(lhs));
    }
  return bounded("Bessel derivative identity", worst, 1e-10);
}

CheckItem check_bessel_integral_form() {
  // I_n(s) = (1/pi) int_0^pi exp(s cos u) cos(n u) du.
  double worst = 0.0;
  for (int nu = 0; nu <= 5; ++nu)
    for (double s : {1.0, 5.0, 20.0, 60.0, 150.0}) {
      auto f = [&](double u) { return std::exp(s * (std::cos(u) - 1.0)) * std::cos(nu * u); };
      const int panels = 8 + 2 * static_cast<int>(std::sqrt(s));
      const double rep = quad::composite_gauss(f, 0.0, kPi, panels) / kPi;
      worst = std::max(worst, std::abs(bessel_I_scaled(nu, s) / rep - 1.0));
    }
  return bounded("Bessel integral representation", worst, 1e-10);
}

CheckItem check_bessel_tilde_at_zero() {
  // 2^nu nu! is an exact double for nu <= 10, so the quotient is correctly rounded.
  double worst = 0.0;
  double factorial = 1.0;
  for (int nu = 0; nu <= 10; ++nu) {
    if (nu > 0) factorial *= nu;
    const double expected = 1.0 / std::ldexp(factorial, nu);
    worst = std::max(worst, std::abs(bessel_I_tilde(nu, 0.0) - expected) / expected);
  }
  return bounded("I~_nu(0) = 1/(2^nu nu!)", worst, std::numeric_limits<double>::epsilon());
}

CheckItem check_bessel_combination() {
  double least = INFINITY;
  for (int n = 1; n <= 3; ++n)
    for (double kappa : {0.5, 1.0, 2.0, 5.0}) {
      const double v = 2.0 * bessel_I(n - 1, kappa) * bessel_I(n + 1, kappa) -
                       std::pow(bessel_I(n, kappa), 2);
      least = std::min(least, v / std::pow(bessel_I(n, kappa), 2));
    }
  return {"2 I_{n-1} I_{n+1} - I_n^2 > 0", least > 0.0, least, 0.0,
          "smallest value relative to I_n^2"};
}

CheckItem check_saddle_residual() {
  double worst = 0.0;
  for (double delta : {-0.1, -0.05, 1e-4, 1e-3, 0.01, 0.05, 0.1, 0.2, 0.3, 0.45})
    worst = std::max(worst, std::abs(saddle(delta).residual));
  return bounded("saddle residual", worst, 1e-12);
}

CheckItem check_saddle_slope() {
  std::vector<double> lx, ly;
  for (int i = 0; i <= 8; ++i) {
    const double delta = std::pow(10.0, -3.0 + 0.25 * i);
    lx.push_back(std::log(delta));
    ly.push_back(std::log(std::abs(saddle(delta).rho_minus_one)));
  }
  const double slope = least_squares_slope(lx, ly);
  return bounded("rho - 1 slope", std::abs(slope - 2.0), 0.1, printf_string("slope %.4f", slope));
}

CheckItem check_potential_band() {
  const GroupShape shape(1, 1);
  const auto eval = default_evaluator(shape);
  std::vector<std::pair<const char*, std::vector<RadialPoint>>> rays(4);
  rays[0].first = "I";
  for (double x : {8.0, 12.0, 16.0, 24.0, 32.0})
    rays[0].second.push_back(RadialPoint::from_cartesian(x, x * x / 4.0));
  rays[1].first = "II";
  for (double kappa : {50.0, 100.0, 200.0, 400.0, 800.0})
    rays[1].second.push_back(RadialPoint::from_delta_kappa(0.05, kappa));
  rays[2].first = "III";
  for (double kappa : {1.0, 2.0, 4.0, 6.0, 8.0})
    rays[2].second.push_back(RadialPoint::from_delta_kappa(0.01, kappa));
  rays[3].first = "IV";
  for (double t : {10.0, 20.0, 50.0, 100.0, 200.0})
    rays[3].second.push_back(RadialPoint::from_delta_kappa(0.05 / (2 * kPi * t), 0.05));

  double lo = INFINITY, hi = -INFINITY, min_d = INFINITY;
  std::string detail;
  for (const auto& [name, pts] : rays) {
    double ray_lo = INFINITY, ray_hi = -INFINITY;
    for (const auto& p : pts) {
      const auto sample = potential(shape, 1.0, p, eval);
      ray_lo = std::min(ray_lo, sample.ratio);
      ray_hi = std::max(ray_hi, sample.ratio);
      min_d = std::min(min_d, std::sqrt(sample.d2));
    }
    lo = std::min(lo, ray_lo);
    hi = std::max(hi, ray_hi);
    detail += printf_string("%s [%.4f, %.4f] ", name, ray_lo, ray_hi);
  }
  detail += printf_string("min d %.2f", min_d);
  const double spread = lo > 0.0 ? hi / lo : INFINITY;
  return {"potential band V_1/d^2", lo > 0.0 && spread <= 50.0 && min_d >= 10.0, spread, 50.0,
          detail};
}

CheckItem check_heat_equation() {
  const GroupShape shape(1, 1);
  const RadialPoint p(1.0, 1.0);
  const auto eval = oracle_evaluator(shape);
  const LogReal lap = sublaplacian(shape, p, eval);
  const LogReal ds = time_derivative_fd(shape, p, eval);
  const double rel = log_rel_diff(lap, LogReal{-ds.sign, ds.log_abs});
  return bounded("heat equation L p = -dp/ds", rel, 1e-4);
}

CheckItem check_gradient_fd() {
  // x = (2, 0), t = 1, n = m = 1; X_1 = d/dx1 - (x2/2) d/dt, X_2 = d/dx2 + (x1/2) d/dt.
  const GroupShape shape(1, 1);
  const auto eval = oracle_evaluator(shape);
  auto p = [&](double x1, double x2, double t) {
    return eval(RadialPoint((x1 * x1 + x2 * x2) / 4.0, std::abs(t)), DerivOrder(0, 0)).value();
  };
  const double x1 = 2.0, x2 = 0.0, t = 1.0;
  const double h = std::cbrt(std::numeric_limits<double>::epsilon()) * 2.0;
  const double d1 = (p(x1 + h, x2, t) - p(x1 - h, x2, t)) / (2 * h);
  const double d2 = (p(x1, x2 + h, t) - p(x1, x2 - h, t)) / (2 * h);
  const double dt = (p(x1, x2, t + h) - p(x1, x2, t - h)) / (2 * h);
  const double X1 = d1 - 0.5 * x2 * dt, X2 = d2 + 0.5 * x1 * dt;
  const double fd = X1 * X1 + X2 * X2;
  const double exact = grad_h_sq(shape, RadialPoint(1.0, 1.0), eval).value();
  return bounded("horizontal gradient vs finite differences", std::abs(exact / fd - 1.0), 1e-4);
}

const std::vector<std::string_view>& check_suites() {
  static const std::vector<std::string_view> names = {"identities", "bessel", "saddle",
                                                      "descent",    "oddm",   "potential"};
  return names;
}

CheckReport run_check(std::string_view suite) {
  using Fn = CheckItem (*)();
  static const std::map<std::string_view, std::vector<Fn>> suites = {
      {"identities",
       {check_center_value, check_normalization, check_theta_round_trip, check_theta_prime_at_zero,
        check_oracle_consistency}},
      {"bessel",
       {check_bessel_derivative, check_bessel_integral_form, check_bessel_tilde_at_zero,
        check_bessel_combination}},
      {"saddle", {check_saddle_residual, check_saddle_slope}},
      {"descent", {check_even_descent}},
      {"oddm", {check_odd_reduction}},
      {"potential", {check_potential_band, check_heat_equation, check_gradient_fd}},
  };
  const auto it = suites.find(suite);
  if (it == suites.end()) throw DomainError("unknown check suite: " + std::string(suite));
  CheckReport report{std::string(suite), {}};
  for (Fn fn : it->second) report.items.push_back(fn());
  return report;
}

}  // namespace htk
