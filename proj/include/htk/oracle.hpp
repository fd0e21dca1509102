#pragma once

#include <complex>
#include <optional>
#include <string_view>

#include "htk/core.hpp"

namespace htk {

enum class OracleMethod { direct_1d, direct_polar, contour_m1, odd_reduction, descent };
std::string_view to_string(OracleMethod m);

// Quadrature controls. Tolerances refer to the mantissa, i.e. the integral
// after the factor exp(log_scale) has been taken out.
struct QuadratureSpec {
  double abs_tol = 1e-300;
  double rel_tol = 1e-10;
  int max_panels = 20000;
  // Initial panels are at most this fraction of the period 2 pi / |t|.
  double panel_fraction = 0.5;
  // Radial truncation; when unset, max(50, tail-bound solution).
  std::optional<double> rho_max;
  // Keep the line Im(lambda) = 3 pi/2 in the contour representation.
  bool contour_far_line = true;

  void validate() const;
};

// Heat kernel value (or radial derivative) as value * exp(log_scale).
struct OracleResult {
  double value = 0.0;
  double est_error = 0.0;
  OracleMethod method = OracleMethod::direct_1d;
  double log_scale = 0.0;
  bool converged = true;

  LogReal as_log() const { return LogReal::from_scaled(value, log_scale); }
  double plain() const { return as_log().value_saturating(); }
  double relative_error() const {
    return value == 0.0 ? est_error : est_error / std::abs(value);
  }
};

// Truncation radius used when QuadratureSpec::rho_max is unset.
double default_rho_max(const GroupShape& shape, const RadialPoint& p,
                       const DerivOrder& order, double abs_tol);

// m = 1: quadrature of the one-dimensional Fourier integral. The line of
// integration is moved to Im(lambda) = height (0 <= height < pi); the strip
// in between holds no poles, so the value does not depend on it. Without a
// height the critical height theta^{-1}(omega) is used, capped away from pi.
OracleResult oracle_m1(const GroupShape& shape, const RadialPoint& p,
                       const DerivOrder& order, const QuadratureSpec& spec = {},
                       std::optional<double> height = std::nullopt);

// Any m: radial quadrature of the R^m Fourier integral in polar coordinates
// with the spherical factor computed by quadrature in the polar angle.
OracleResult oracle_polar(const GroupShape& shape, const RadialPoint& p,
                          const DerivOrder& order, const QuadratureSpec& spec = {});

// m = 1, 0 < delta < 1: residue at i pi as a circle integral plus the line
// Im(lambda) = 3 pi/2 (or a bound for it when contour_far_line is off).
OracleResult oracle_contour_m1(const GroupShape& shape, const RadialPoint& p,
                               const DerivOrder& order, const QuadratureSpec& spec = {});

// i^k2 times the integral of exp(i z s_1) s_1^k2 over the unit sphere S^{m-1}.
double sphere_factor(int m, int k2, double z);

// The m = 1 integrand exp(i|t|z - R z coth z) z^{n+k1+k2} cosh^k1 z / sinh^{n+k1} z
// at z, without the constant prefactor.
std::complex<double> m1_integrand(int n, const RadialPoint& p, const DerivOrder& order,
                                  std::complex<double> z);

struct DescentCheck {
  double lhs;
  double rhs;
  double discrepancy;  // relative
  double est_error;
};

// m even, k2 = 0: p^{(m)}(x,t) against the integral of p^{(m+1)}(x,(t,s)) over s.
DescentCheck descent_check(const GroupShape& shape, const RadialPoint& p,
                           const DerivOrder& order, const QuadratureSpec& spec = {});

}  // namespace htk
