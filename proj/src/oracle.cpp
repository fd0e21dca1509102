#include "htk/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "htk/error.hpp"
#include "htk/quadrature.hpp"
#include "htk/special.hpp"

namespace htk {

using cd = std::complex<double>;

namespace {

constexpr double kLn2 = 0.693147180559945309417232121458176568;
// Relative magnitude below which the integrand is treated as negligible
// when choosing the effective truncation point (e^-46 ~ 1e-20).
constexpr double kNegligibleLog = -46.0;

int parity_sign(int k) { return (k % 2 == 0) ? 1 : -1; }

// i^k2 combined with the half-line symmetrization: (-1)^{k2/2} for even k2
// (real part) and (-1)^{(k2+1)/2} for odd k2 (imaginary part).
int fourier_sign(int k2) { return k2 % 2 == 0 ? parity_sign(k2 / 2) : parity_sign((k2 + 1) / 2); }

cd ipow(cd z, int k) {
  cd out = 1.0;
  for (int i = 0; i < k; ++i) out *= z;
  return out;
}

// log of the m = 1 integrand at z != 0.
cd log_m1_integrand(int n, double R, double t, int k1, int k2, cd z) {
  cd log_sinh, log_cosh, coth;
  if (z.real() > 20.0) {
    const cd e2 = std::exp(-2.0 * z);
    log_sinh = z - kLn2 + std::log(1.0 - e2);
    log_cosh = z - kLn2 + std::log(1.0 + e2);
    coth = (1.0 + e2) / (1.0 - e2);
  } else {
    const cd sh = std::sinh(z);
    const cd ch = std::cosh(z);
    log_sinh = std::log(sh);
    log_cosh = std::log(ch);
    coth = ch / sh;
  }
  const cd log_z = std::log(z);
  cd out = cd(0.0, t) * z - R * z * coth + static_cast<double>(n + k1) * (log_z - log_sinh);
  if (k1 > 0) out += static_cast<double>(k1) * log_cosh;
  if (k2 > 0) out += static_cast<double>(k2) * log_z;
  return out;
}

struct LineIntegral {
  cd value;
  double error;
  double log_ref;
  bool converged;
};

struct Cutoff {
  double point;
  // Upper bound for |integrand| beyond point, relative to the peak scale.
  double tail_log_max;
};

Cutoff envelope_cutoff(const std::function<double(double)>& env, double upper) {
  constexpr int kScan = 512;
  std::vector<double> xs(kScan + 1), vals(kScan + 1);
  double peak = -INFINITY;
  for (int j = 1; j <= kScan; ++j) {
    const double u = static_cast<double>(j) / kScan;
    xs[j] = upper * u * u;
    vals[j] = env(xs[j]);
    peak = std::max(peak, vals[j]);
  }
  int last = 1;
  for (int j = 1; j <= kScan; ++j)
    if (vals[j] > peak + kNegligibleLog) last = j;
  const int cut = std::min(last + 1, kScan);
  double tail = -INFINITY;
  for (int j = cut; j <= kScan; ++j) tail = std::max(tail, vals[j]);
  return {xs[cut], tail};
}

quad::Options quad_options(const QuadratureSpec& spec, double t) {
  quad::Options opt;
  opt.abs_tol = spec.abs_tol;
  opt.rel_tol = spec.rel_tol;
  opt.max_panels = spec.max_panels;
  if (t > 0) opt.max_panel_width = spec.panel_fraction * 2.0 * kPi / t;
  return opt;
}

// Integral over [0, rho_max] of the m = 1 integrand on Im(z) = y, scaled by exp(-log_ref).
LineIntegral line_integral(int n, int k1, int k2, double R, double t, double y,
                           double rho_max, const QuadratureSpec& spec) {
  double log_ref = -t * y;
  if (y == 0.0) log_ref -= R;
  else log_ref -= R * y * std::cos(y) / std::sin(y);

  auto f = [&](double lam) -> cd {
    if (lam == 0.0 && y == 0.0) return k2 > 0 ? cd(0.0) : cd(std::exp(-R - log_ref));
    return std::exp(log_m1_integrand(n, R, t, k1, k2, cd(lam, y)) - log_ref);
  };
  auto env = [&](double lam) {
    if (lam == 0.0 && y == 0.0) return 0.0;
    return (log_m1_integrand(n, R, t, k1, k2, cd(lam, y)) - log_ref).real();
  };
  const Cutoff cut = envelope_cutoff(env, rho_max);
  auto main = quad::integrate(f, 0.0, cut.point, quad_options(spec, t));
  // The envelope decays monotonically past the cut; bound the rest instead of integrating it.
  const double tail = std::exp(cut.tail_log_max) * (rho_max - cut.point);
  return {main.value, main.abs_error + tail, log_ref, main.converged};
}

double default_height(int n, int k1, const RadialPoint& p) {
  if (p.on_horizontal()) return 0.0;
  if (p.on_center()) return std::clamp(kPi - (n + k1 + 1.0) / p.t(), 0.0, kPi - 1e-3);
  return std::min(theta_root(p.omega()).y, kPi - 0.8);
}

// (pi xi / sin(pi xi))^{n+k1} cos^{k1}(pi xi) (1 - xi)^{n+k1+k2}
cd phi_tilde(int n, int k1, int k2, cd xi) {
  const cd w = kPi * xi;
  cd ratio;
  if (std::abs(w) < 1e-3) {
    const cd w2 = w * w;
    ratio = 1.0 + w2 / 6.0 + 7.0 * w2 * w2 / 360.0;
  } else {
    ratio = w / std::sin(w);
  }
  return ipow(ratio, n + k1) * ipow(std::cos(w), k1) * ipow(1.0 - xi, n + k1 + k2);
}

}  // namespace

std::string_view to_string(OracleMethod m) {
  switch (m) {
    case OracleMethod::direct_1d: return "direct_1d";
    case OracleMethod::direct_polar: return "direct_polar";
    case OracleMethod::contour_m1: return "contour_m1";
    case OracleMethod::odd_reduction: return "odd_reduction";
    case OracleMethod::descent: return "descent";
  }
  return "?";
}

void QuadratureSpec::validate() const {
  if (!(abs_tol > 0) || !(rel_tol > 0)) throw DomainError("tolerances must be positive");
  if (max_panels < 1) throw DomainError("max_panels must be >= 1");
  if (!(panel_fraction > 0)) throw DomainError("panel_fraction must be positive");
  if (rho_max && !(*rho_max > 0)) throw DomainError("rho_max must be positive");
}

double default_rho_max(const GroupShape& shape, const RadialPoint& p,
                       const DerivOrder& order, double abs_tol) {
  const double log_inv_tol = -std::log(std::max(abs_tol, 1e-30));
  const double power = shape.n() + order.total() + shape.m();
  const double rate = shape.n() + p.R();
  double rho = 50.0;
  for (int it = 0; it < 50; ++it) {
    const double next = std::max(50.0, (log_inv_tol + power * std::log(rho)) / rate);
    if (std::abs(next - rho) < 1e-9 * rho) break;
    rho = next;
  }
  return rho;
}

cd m1_integrand(int n, const RadialPoint& p, const DerivOrder& order, cd z) {
  if (z == cd(0.0)) return order.k2() > 0 ? cd(0.0) : cd(std::exp(-p.R()));
  return std::exp(log_m1_integrand(n, p.R(), p.t(), order.k1(), order.k2(), z));
}

OracleResult oracle_m1(const GroupShape& shape, const RadialPoint& p, const DerivOrder& order,
                       const QuadratureSpec& spec, std::optional<double> height) {
  if (shape.m() != 1) throw DomainError("oracle_m1 needs m = 1");
  spec.validate();
  const int n = shape.n(), k1 = order.k1(), k2 = order.k2();
  const double y = height ? *height : default_height(n, k1, p);
  if (!(y >= 0.0 && y < kPi)) throw DomainError("contour height must lie in [0, pi)");
  const double rho_max = spec.rho_max.value_or(default_rho_max(shape, p, order, spec.abs_tol));

  const LineIntegral line = line_integral(n, k1, k2, p.R(), p.t(), y, rho_max, spec);
  const double part = (k2 % 2 == 0) ? line.value.real() : line.value.imag();
  const double pref = 4.0 / std::pow(4.0 * kPi, n + 1);
  OracleResult out;
  out.value = parity_sign(k1) * fourier_sign(k2) * pref * part;
  out.est_error = pref * line.error;
  out.method = OracleMethod::direct_1d;
  out.log_scale = line.log_ref;
  out.converged = line.converged;
  return out;
}

double sphere_factor(int m, int k2, double z) {
  if (m < 1 || k2 < 0) throw DomainError("sphere_factor needs m >= 1, k2 >= 0");
  const int sign = fourier_sign(k2);
  const bool even = k2 % 2 == 0;
  if (m == 1) return sign * 2.0 * (even ? std::cos(z) : std::sin(z));
  const double area = 2.0 * std::pow(kPi, 0.5 * (m - 1)) / std::tgamma(0.5 * (m - 1));
  auto ipow_real = [](double v, int k) {
    double out = 1.0;
    for (int i = 0; i < k; ++i) out *= v;
    return out;
  };
  // The integrand over the polar angle is symmetric about pi/2, so twice the half range.
  if (m % 2 == 1) {
    // u = cos(phi): weight (1 - u^2)^{(m-3)/2} is a polynomial for odd m.
    auto f = [&](double u) {
      const double trig = even ? std::cos(z * u) : std::sin(z * u);
      return trig * ipow_real(u, k2) * ipow_real(1.0 - u * u, (m - 3) / 2);
    };
    const int panels = 1 + static_cast<int>(std::abs(z) / 4.0);
    return sign * area * 2.0 * quad::composite_gauss(f, 0.0, 1.0, panels);
  }
  auto f = [&](double phi) {
    const double c = std::cos(phi);
    const double trig = even ? std::cos(z * c) : std::sin(z * c);
    return trig * ipow_real(c, k2) * ipow_real(std::sin(phi), m - 2);
  };
  const int panels = 1 + static_cast<int>(std::abs(z) / 6.0);
  return sign * area * 2.0 * quad::composite_gauss(f, 0.0, kPi / 2, panels);
}

OracleResult oracle_polar(const GroupShape& shape, const RadialPoint& p, const DerivOrder& order,
                          const QuadratureSpec& spec) {
  spec.validate();
  const int n = shape.n(), m = shape.m(), k1 = order.k1(), k2 = order.k2();
  const double R = p.R(), t = p.t();
  const double rho_max = spec.rho_max.value_or(default_rho_max(shape, p, order, spec.abs_tol));
  const int power = m - 1 + k2;

  // log of rho^{m-1+k2} e^{-R(rho coth rho - 1)} (rho/sinh rho)^{n+k1} cosh^{k1} rho
  auto env = [&](double rho) {
    if (rho == 0.0) return power == 0 ? 0.0 : -INFINITY;
    double log_ratio, log_cosh, coth;
    if (rho > 20.0) {
      const double e2 = std::exp(-2.0 * rho);
      log_ratio = std::log(rho) - (rho - kLn2 + std::log1p(-e2));
      log_cosh = rho - kLn2 + std::log1p(e2);
      coth = (1.0 + e2) / (1.0 - e2);
    } else {
      log_ratio = std::log(rho / std::sinh(rho));
      log_cosh = std::log(std::cosh(rho));
      coth = 1.0 / std::tanh(rho);
    }
    double out = -R * (rho * coth - 1.0) + (n + k1) * log_ratio + k1 * log_cosh;
    if (power > 0) out += power * std::log(rho);
    return out;
  };
  auto f = [&](double rho) {
    const double e = env(rho);
    if (e == -INFINITY) return 0.0;
    return std::exp(e) * sphere_factor(m, k2, rho * t);
  };

  const Cutoff cut = envelope_cutoff(env, rho_max);
  auto main = quad::integrate(f, 0.0, cut.point, quad_options(spec, t));
  const double sphere_max = std::abs(sphere_factor(m, 0, 0.0));
  const double tail = std::exp(cut.tail_log_max) * (rho_max - cut.point) * sphere_max;

  const double pref = parity_sign(k1) / (std::pow(4.0 * kPi, n) * std::pow(2.0 * kPi, m));
  OracleResult out;
  out.value = pref * main.value;
  out.est_error = std::abs(pref) * (main.abs_error + tail);
  out.method = OracleMethod::direct_polar;
  out.log_scale = -R;
  out.converged = main.converged;
  return out;
}

OracleResult oracle_contour_m1(const GroupShape& shape, const RadialPoint& p,
                               const DerivOrder& order, const QuadratureSpec& spec) {
  if (shape.m() != 1) throw DomainError("oracle_contour_m1 needs m = 1");
  if (p.on_center() || p.on_horizontal())
    throw DomainError("oracle_contour_m1 needs R > 0 and |t| > 0");
  spec.validate();
  const double delta = p.delta();
  if (!(delta < 1.0)) throw DomainError("oracle_contour_m1 needs delta < 1");
  const int n = shape.n(), k1 = order.k1(), k2 = order.k2();
  const int nu = n + k1 - 1;
  const double R = p.R(), t = p.t(), kappa = p.kappa();

  // Integrate over the circle |xi| = radius through the saddle; the
  // integrand is holomorphic on 0 < |xi| < 1 so the radius is free.
  double radius = delta;
  if (delta < kSaddleDeltaMax) {
    const double r = delta * std::exp(-saddle(delta).sigma);
    if (r < 0.95) radius = r;
  }
  const double log_ratio = std::log(radius / delta);
  const double log_h =
      0.5 * kappa * (radius / delta + delta / radius) + R * r_func(cd(-radius)).real() - nu * log_ratio;

  auto f = [&](double s) -> cd {
    const cd xi = std::polar(radius, s);
    const cd expo = 0.5 * kappa * (xi / delta + delta / xi) + R * r_func(-xi) -
                    static_cast<double>(nu) * cd(log_ratio, s) - log_h;
    return std::exp(expo) * phi_tilde(n, k1, k2, xi);
  };
  quad::Options opt;
  opt.abs_tol = spec.abs_tol;
  opt.rel_tol = spec.rel_tol;
  opt.max_panels = spec.max_panels;
  auto h = quad::integrate(f, 0.0, kPi, opt);
  const double h_value = 2.0 * h.value.real();
  const double h_error = 2.0 * h.abs_error;

  const double log_res = -R - kPi * t + log_h + std::log(2.0) + (k2 - n) * std::log(kPi) -
                         (n + 1) * std::log(4.0) - nu * std::log(delta);
  OracleResult out;
  out.method = OracleMethod::contour_m1;
  out.log_scale = log_res;
  out.value = parity_sign(k2) * h_value;
  out.est_error = h_error;
  out.converged = h.converged;

  const double pref = 4.0 / std::pow(4.0 * kPi, n + 1);
  const double far_y = 1.5 * kPi;
  if (spec.contour_far_line) {
    const double rho_max =
        spec.rho_max.value_or(default_rho_max(shape, p, order, spec.abs_tol));
    QuadratureSpec far_spec = spec;
    const LineIntegral line = line_integral(n, k1, k2, R, t, far_y, rho_max, far_spec);
    const double part = (k2 % 2 == 0) ? line.value.real() : line.value.imag();
    const double rel = std::exp(line.log_ref - log_res);
    out.value += parity_sign(k1) * fourier_sign(k2) * pref * part * rel;
    out.est_error += pref * line.error * rel;
    out.converged = out.converged && line.converged;
  } else {
    constexpr double kDroppedConstant = 10.0;
    out.est_error += kDroppedConstant * pref * std::exp(-far_y * t - log_res);
  }
  return out;
}

DescentCheck descent_check(const GroupShape& shape, const RadialPoint& p, const DerivOrder& order,
                           const QuadratureSpec& spec) {
  if (shape.m() % 2 != 0) throw DomainError("descent_check needs even m");
  if (order.k2() != 0) throw DomainError("descent_check needs k2 = 0");
  const GroupShape up(shape.n(), shape.m() + 1);
  const OracleResult lhs = oracle_polar(shape, p, order, spec);
  const double lhs_value = lhs.plain();

  const double q0 = quarter_d_sq(p);
  double upper = 1.0;
  while (quarter_d_sq(RadialPoint(p.R(), std::hypot(p.t(), upper))) - q0 < 40.0) upper *= 2.0;

  double err_acc = 0.0;
  auto f = [&](double s) {
    const OracleResult r = oracle_polar(up, RadialPoint(p.R(), std::hypot(p.t(), s)), order, spec);
    err_acc = std::max(err_acc, r.est_error * std::exp(r.log_scale));
    return r.plain();
  };
  quad::Options opt;
  opt.rel_tol = 1e-9;
  opt.abs_tol = 1e-14 * std::abs(lhs_value);
  auto rhs = quad::integrate(f, 0.0, upper, opt);
  const double rhs_value = 2.0 * rhs.value;
  const double est = lhs.est_error * std::exp(lhs.log_scale) + 2.0 * (rhs.abs_error + err_acc * upper);
  return {lhs_value, rhs_value, std::abs(rhs_value / lhs_value - 1.0), est};
}

}  // namespace htk
