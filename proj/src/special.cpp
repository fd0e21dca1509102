#include "htk/special.hpp"

#include <array>
#include <cmath>
#include <limits>

#include "htk/error.hpp"

namespace htk {

namespace {

constexpr double kSeriesSwitch = 0.25;
constexpr int kThetaTerms = 12;

// theta(y) = sum_j c_j y^{2j+1}, obtained by dividing the sine-series
// numerator (2y - sin 2y)/y^3 by the denominator (1 - cos 2y)/y^2.
const std::array<double, kThetaTerms>& theta_coefficients() {
  static const std::array<double, kThetaTerms> c = [] {
    std::array<double, kThetaTerms> num{}, den{}, out{};
    double fact = 2.0;  // (2j+2)!
    for (int j = 0; j < kThetaTerms; ++j) {
      const double sign = (j % 2 == 0) ? 1.0 : -1.0;
      const double den_fact = fact;          // (2j+2)!
      const double num_fact = fact * (2 * j + 3);  // (2j+3)!
      num[j] = sign * std::ldexp(1.0, 2 * j + 3) / num_fact;
      den[j] = sign * std::ldexp(1.0, 2 * j + 2) / den_fact;
      fact = num_fact * (2 * j + 4);
    }
    for (int j = 0; j < kThetaTerms; ++j) {
      double acc = num[j];
      for (int i = 0; i < j; ++i) acc -= out[i] * den[j - i];
      out[j] = acc / den[0];
    }
    return out;
  }();
  return c;
}

double theta_series(double y) {
  const auto& c = theta_coefficients();
  const double y2 = y * y;
  double acc = 0.0;
  for (int j = kThetaTerms - 1; j >= 0; --j) acc = acc * y2 + c[j];
  return acc * y;
}

double theta_prime_series(double y) {
  const auto& c = theta_coefficients();
  const double y2 = y * y;
  double acc = 0.0;
  for (int j = kThetaTerms - 1; j >= 0; --j) acc = acc * y2 + (2 * j + 1) * c[j];
  return acc;
}

// theta(pi - e) and theta'(pi - e) for 0 < e <= pi/2.
double theta_from_complement(double e) {
  const double s = std::sin(e);
  return (2.0 * (kPi - e) + std::sin(2.0 * e)) / (2.0 * s * s);
}

double theta_prime_from_complement(double e) {
  const double s = std::sin(e);
  return 2.0 * (s + (kPi - e) * std::cos(e)) / (s * s * s);
}

}  // namespace

double theta(double y) {
  if (!(std::abs(y) < kPi)) throw DomainError("theta needs |y| < pi");
  if (std::abs(y) < kSeriesSwitch) return theta_series(y);
  if (std::abs(y) > kPi / 2) {
    const double e = kPi - std::abs(y);
    return std::copysign(theta_from_complement(e), y);
  }
  const double s = std::sin(y);
  return (2.0 * y - std::sin(2.0 * y)) / (2.0 * s * s);
}

double theta_prime(double y) {
  if (!(std::abs(y) < kPi)) throw DomainError("theta' needs |y| < pi");
  if (std::abs(y) < kSeriesSwitch) return theta_prime_series(y);
  const double s = std::sin(y);
  return 2.0 * (s - y * std::cos(y)) / (s * s * s);
}

ThetaRoot theta_root(double omega) {
  if (!(omega >= 0.0) || !std::isfinite(omega))
    throw DomainError("theta_root needs finite omega >= 0");
  if (omega == 0.0) return {0.0, kPi};

  if (omega > 10.0) {
    // Newton on u = log(pi - y); log theta is close to linear in u there.
    const double log_omega = std::log(omega);
    double u = 0.5 * std::log(kPi / omega);
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::log(kPi / 2);
    for (int it = 0; it < 100; ++it) {
      const double e = std::exp(u);
      const double th = theta_from_complement(e);
      const double f = std::log(th) - log_omega;
      if (f > 0) lo = u; else hi = u;
      const double df = -e * theta_prime_from_complement(e) / th;
      double next = u - f / df;
      if (!(next > lo && next < hi))
        next = std::isfinite(lo) ? 0.5 * (lo + hi) : hi - 1.0;
      const bool done = std::abs(next - u) <= 1e-15 * std::max(1.0, std::abs(u));
      u = next;
      if (done) break;
    }
    const double e = std::exp(u);
    return {kPi - e, e};
  }

  double lo = 0.0;
  double hi = kPi;
  double y = std::min(1.5 * omega, kPi - std::sqrt(kPi / omega));
  if (!(y > 0.0)) y = 0.5 * kPi;
  for (int it = 0; it < 200; ++it) {
    const double f = theta(y) - omega;
    if (f > 0) hi = y; else lo = y;
    double next = y - f / theta_prime(y);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const bool done = std::abs(next - y) <= 2e-16 * y;
    y = next;
    if (done || hi - lo <= 4e-16 * y) break;
  }
  return {y, kPi - y};
}

double theta_inv(double omega) {
  const ThetaRoot root = theta_root(std::abs(omega));
  return std::copysign(root.y, omega);
}

double y_over_sin_at(double omega) {
  const ThetaRoot root = theta_root(std::abs(omega));
  if (root.y < 1e-4) {
    const double y2 = root.y * root.y;
    return 1.0 + y2 / 6.0 + 7.0 * y2 * y2 / 360.0;
  }
  if (root.y > kPi / 2) return root.y / std::sin(root.complement);
  return root.y / std::sin(root.y);
}

double cc_distance(double x_norm, double t_norm) {
  if (!(x_norm >= 0.0) || !(t_norm >= 0.0))
    throw DomainError("cc_distance needs |x|, |t| >= 0");
  if (t_norm == 0.0) return x_norm;
  if (x_norm == 0.0) return std::sqrt(4.0 * kPi * t_norm);
  return x_norm * y_over_sin_at(4.0 * t_norm / (x_norm * x_norm));
}

double quarter_d_sq(const RadialPoint& p) {
  if (p.on_center()) return kPi * p.t();
  const double q = y_over_sin_at(p.omega());
  return p.R() * q * q;
}

// ---------------------------------------------------------------- Bessel I

namespace {

bool is_integer(double nu) { return nu == std::floor(nu); }

double log_factorial_like(double nu) {
  if (is_integer(nu) && nu <= 170) {
    double f = 1.0;
    for (int k = 2; k <= static_cast<int>(nu); ++k) f *= k;
    return std::log(f);
  }
  return std::lgamma(nu + 1.0);
}

double bessel_switch(double nu) { return 30.0 * (nu + 1.0); }

// log of sum_k (s^2/4)^k / (k! (nu+1)_k), the series with its first term factored out.
double log_series_tail(double nu, double s) {
  const double q = 0.25 * s * s;
  double term = 1.0;
  double sum = 1.0;
  double offset = 0.0;
  for (int k = 0; k < 100000; ++k) {
    term *= q / ((k + 1.0) * (k + 1.0 + nu));
    sum += term;
    if (sum > 1e280) {
      sum *= 1e-280;
      term *= 1e-280;
      offset += 280.0 * std::log(10.0);
    }
    if (term < 1e-17 * sum && k + 1 > q / (nu + 1.0)) break;
  }
  return std::log(sum) + offset;
}

// log of the bracket in I_nu(s) ~ e^s / sqrt(2 pi s) * sum_k (-1)^k a_k(nu) / s^k.
double log_asymptotic_bracket(double nu, double s) {
  const double mu = 4.0 * nu * nu;
  double term = 1.0;
  double sum = 1.0;
  double prev = 1.0;
  for (int k = 1; k < 200; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= -(mu - odd * odd) / (k * 8.0 * s);
    if (std::abs(term) > std::abs(prev)) break;
    sum += term;
    prev = term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return std::log(sum);
}

double normalize_order(double nu) {
  if (nu < 0) {
    if (!is_integer(nu)) throw DomainError("Bessel order must be >= 0 or an integer");
    return -nu;
  }
  return nu;
}

}  // namespace

double log_bessel_I(double nu, double s) {
  nu = normalize_order(nu);
  if (!(s >= 0.0) || !std::isfinite(s)) throw DomainError("Bessel argument must be finite and >= 0");
  if (s == 0.0) return nu == 0.0 ? 0.0 : -std::numeric_limits<double>::infinity();
  if (s < bessel_switch(nu))
    return nu * std::log(0.5 * s) - log_factorial_like(nu) + log_series_tail(nu, s);
  return s - 0.5 * std::log(2.0 * kPi * s) + log_asymptotic_bracket(nu, s);
}

double bessel_I(double nu, double s) {
  const double l = log_bessel_I(nu, s);
  if (l > std::log(std::numeric_limits<double>::max()))
    throw OverflowError("I_nu(s) overflows; use the scaled form");
  return std::exp(l);
}

double bessel_I_scaled(double nu, double s) { return std::exp(log_bessel_I(nu, s) - s); }

double log_bessel_I_tilde(double nu, double s) {
  nu = normalize_order(nu);
  if (!(s >= 0.0) || !std::isfinite(s)) throw DomainError("Bessel argument must be finite and >= 0");
  if (s < bessel_switch(nu))
    return -nu * std::log(2.0) - log_factorial_like(nu) + log_series_tail(nu, s);
  return log_bessel_I(nu, s) - nu * std::log(s);
}

double bessel_I_tilde(double nu, double s) {
  nu = normalize_order(nu);
  if (s == 0.0 && is_integer(nu) && nu <= 170) {
    double f = 1.0;
    for (int k = 2; k <= static_cast<int>(nu); ++k) f *= k;
    return 1.0 / std::ldexp(f, static_cast<int>(nu));
  }
  const double l = log_bessel_I_tilde(nu, s);
  if (l > std::log(std::numeric_limits<double>::max()))
    throw OverflowError("I_nu(s)/s^nu overflows");
  return std::exp(l);
}

// ------------------------------------------------------------------ r(lambda)

namespace {

constexpr int kZetaTerms = 16;

// 2 zeta(2k) for k = 1..kZetaTerms.
const std::array<double, kZetaTerms>& two_zeta_even() {
  static const std::array<double, kZetaTerms> z = [] {
    std::array<double, kZetaTerms> out{};
    const double p2 = kPi * kPi;
    out[0] = p2 / 6.0;
    out[1] = p2 * p2 / 90.0;
    out[2] = p2 * p2 * p2 / 945.0;
    out[3] = p2 * p2 * p2 * p2 / 9450.0;
    out[4] = p2 * p2 * p2 * p2 * p2 / 93555.0;
    for (int k = 6; k <= kZetaTerms; ++k) {
      double acc = 0.0;
      for (int j = 40; j >= 1; --j) acc += std::pow(static_cast<double>(j), -2.0 * k);
      out[k - 1] = acc;
    }
    for (double& v : out) v *= 2.0;
    return out;
  }();
  return z;
}

}  // namespace

std::complex<double> r_func(std::complex<double> lam) {
  if (!(std::abs(lam) < 1.0)) throw DomainError("r(lambda) needs |lambda| < 1");
  if (std::abs(lam) < kSeriesSwitch) {
    // r = (1 + lam) sum_k 2 zeta(2k) lam^{2k-1}
    const auto& z = two_zeta_even();
    const std::complex<double> l2 = lam * lam;
    std::complex<double> acc = 0.0;
    for (int k = kZetaTerms; k >= 1; --k) acc = acc * l2 + z[k - 1];
    return (1.0 + lam) * lam * acc;
  }
  const std::complex<double> arg = kPi * lam;
  return 1.0 + 1.0 / lam - kPi * (1.0 + lam) * std::cos(arg) / std::sin(arg);
}

RDerivs r_func_derivs(double lam) {
  if (!(std::abs(lam) < 1.0)) throw DomainError("r(lambda) needs |lambda| < 1");
  if (std::abs(lam) < kSeriesSwitch) {
    // r = sum_k a_k (lam^{2k-1} + lam^{2k}), a_k = 2 zeta(2k)
    const auto& z = two_zeta_even();
    double r = 0, dr = 0, d2r = 0;
    for (int k = kZetaTerms; k >= 1; --k) {
      const double a = z[k - 1];
      const int p = 2 * k - 1;
      const double lp1 = std::pow(lam, p - 1);  // lam^{2k-2}
      r += a * (lp1 * lam + lp1 * lam * lam);
      dr += a * (p * lp1 + (p + 1) * lp1 * lam);
      const double lp2 = (p >= 2) ? std::pow(lam, p - 2) : 0.0;
      d2r += a * (p * (p - 1) * lp2 + (p + 1) * p * lp1);
    }
    return {r, dr, d2r};
  }
  const double a = kPi * lam;
  const double cot = std::cos(a) / std::sin(a);
  const double csc2 = 1.0 / (std::sin(a) * std::sin(a));
  const double r = 1.0 + 1.0 / lam - kPi * (1.0 + lam) * cot;
  const double dr = -1.0 / (lam * lam) - kPi * cot + kPi * kPi * (1.0 + lam) * csc2;
  const double d2r = 2.0 / (lam * lam * lam) + 2.0 * kPi * kPi * csc2 -
                     2.0 * kPi * kPi * kPi * (1.0 + lam) * csc2 * cot;
  return {r, dr, d2r};
}

Saddle saddle(double delta) {
  if (!(std::abs(delta) < kSaddleDeltaMax))
    throw DomainError("saddle needs |delta| < 0.5");
  if (delta == 0.0) return {0.0, 1.0, 0.0, 0.0};
  const double d2 = delta * delta;
  auto dq = [&](double z) {
    const double ez = std::exp(-z);
    const RDerivs rd = r_func_derivs(-delta * ez);
    const double first = std::sinh(z) + 0.5 * d2 * ez * rd.dr;
    const double second = std::cosh(z) - 0.5 * d2 * ez * rd.dr +
                          0.5 * d2 * delta * ez * ez * rd.d2r;
    return std::pair{first, second};
  };
  double z = -kPi * kPi * d2 / 6.0;
  double residual = 0.0;
  for (int it = 0; it < 100; ++it) {
    const auto [f, fp] = dq(z);
    residual = std::abs(f);
    double step = f / fp;
    // Keep |delta e^{-z}| inside the disc where r is holomorphic.
    while (std::abs(delta) * std::exp(-(z - step)) > 0.9) step *= 0.5;
    z -= step;
    if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(z))) break;
  }
  residual = std::abs(dq(z).first);
  if (!(residual <= 1e-12)) throw ConvergenceError("saddle Newton iteration stalled");
  const double sh = std::sinh(0.5 * z);
  const double rho_minus_one = 2.0 * sh * sh + 0.5 * delta * r_func_derivs(-delta * std::exp(-z)).r;
  return {z, 1.0 + rho_minus_one, rho_minus_one, residual};
}

}  // namespace htk
