#pragma once

#include <complex>

#include "htk/core.hpp"

namespace htk {

// theta(y) = (2y - sin 2y) / (2 sin^2 y), odd and increasing on (-pi, pi).
double theta(double y);
double theta_prime(double y);

// Root y of theta(y) = omega for omega >= 0. The complement pi - y is
// carried separately so large omega keeps full relative precision.
struct ThetaRoot {
  double y;
  double complement;
};
ThetaRoot theta_root(double omega);

// Inverse of theta on the whole real line.
double theta_inv(double omega);

// y / sin(y) at the root for omega, stable near both ends.
double y_over_sin_at(double omega);

// Carnot-Caratheodory distance from the origin for n-independent radial data.
double cc_distance(double x_norm, double t_norm);
// d^2/4 in radial coordinates.
double quarter_d_sq(const RadialPoint& p);

// Modified Bessel function of the first kind, nu >= 0 (or a negative integer).
double bessel_I(double nu, double s);
double log_bessel_I(double nu, double s);
// exp(-s) I_nu(s)
double bessel_I_scaled(double nu, double s);
// I_nu(s) / s^nu, continuous at s = 0
double bessel_I_tilde(double nu, double s);
double log_bessel_I_tilde(double nu, double s);

// r(lambda) = 1 + 1/lambda - pi (1 + lambda) cot(pi lambda), holomorphic on |lambda| < 1.
std::complex<double> r_func(std::complex<double> lam);

struct RDerivs {
  double r;
  double dr;
  double d2r;
};
RDerivs r_func_derivs(double lam);

// Critical point of q_delta(z) = cosh z + (delta/2) r(-delta e^{-z}) on the
// real line, and rho(delta) = q_delta(sigma). Negative delta has a real
// critical point only for small |delta| (about delta > -0.25); beyond that
// ConvergenceError is thrown.
struct Saddle {
  double sigma;
  double rho;
  double rho_minus_one;
  double residual;
};
inline constexpr double kSaddleDeltaMax = 0.5;
Saddle saddle(double delta);

}  // namespace htk
