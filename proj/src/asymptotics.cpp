#include "htk/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "htk/error.hpp"
#include "htk/special.hpp"

namespace htk {

namespace {

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

int parity_sign(int k) { return (k % 2 == 0) ? 1 : -1; }

double binomial(int n, int k) { return factorial(n) / (factorial(k) * factorial(n - k)); }

// (a)_r, rising factorial
double pochhammer(double a, int r) {
  double out = 1.0;
  for (int i = 0; i < r; ++i) out *= a + i;
  return out;
}

std::string power_term(const char* base, int power) {
  std::ostringstream s;
  s << base;
  if (power != 1) s << '^' << power;
  return s.str();
}

struct Upsilon {
  double value;
  double abs_error;
  std::string order;
};

Upsilon upsilon_for(const GroupShape& shape, const RadialPoint& p, const DerivOrder& ord,
                    Subcase sc, const ThetaRoot& root) {
  const int n = shape.n(), k1 = ord.k1(), k2 = ord.k2();
  const double omega = p.omega();
  const double x = p.x_norm();
  const double x2 = x * x;
  switch (sc) {
    case Subcase::generic: {
      const double y = root.y;
      const double sin_y = y > kPi / 2 ? std::sin(root.complement) : std::sin(y);
      double v = parity_sign(k1 + k2) * std::pow(y, n + k1 + k2) *
                 std::pow(std::cos(y), k1) / std::pow(sin_y, n + k1);
      if (root.y == 0.0) v = (k2 == 0) ? parity_sign(k1) : 0.0;
      return {v, 1.0 / x2, "O(1/|x|^2)"};
    }
    case Subcase::omega_to_0_k2_even: {
      if (k2 % 2 != 0) throw DomainError("subcase needs even k2");
      double v = 0.0, err = 0.0;
      for (int j = 0; j <= k2 / 2; ++j) {
        v += coeff_c(k1, k2, j) * std::pow(omega, k2 - 2 * j) / std::pow(x, 2 * j);
        err += std::pow(omega, k2 - 2 * j + 1) / std::pow(x, 2 * j);
      }
      err += 1.0 / std::pow(x, k2 + 2);
      return {v, err, "O(sum_j omega^{k2-2j+1}/|x|^{2j} + 1/|x|^" + std::to_string(k2 + 2) + ")"};
    }
    case Subcase::omega_to_0_k2_odd_t_large: {
      if (k2 % 2 != 1) throw DomainError("subcase needs odd k2");
      double v = 0.0, err = 0.0;
      for (int j = 0; j <= (k2 - 1) / 2; ++j)
        v += coeff_c(k1, k2, j) * std::pow(omega, k2 - 2 * j) / std::pow(x, 2 * j);
      for (int j = 0; j <= (k2 + 1) / 2; ++j)
        err += std::pow(omega, k2 - 2 * j + 1) / std::pow(x, 2 * j);
      return {v, err, "O(sum_j omega^{k2-2j+1}/|x|^{2j})"};
    }
    case Subcase::omega_to_0_k2_odd_t_bounded: {
      if (k2 % 2 != 1) throw DomainError("subcase needs odd k2");
      const double v = coeff_c(k1, k2 + 1, (k2 + 1) / 2) * p.t() / std::pow(x, k2 + 1);
      return {v, p.t() / std::pow(x, k2 + 3), "O(|t|/" + power_term("|x|", k2 + 3) + ")"};
    }
    case Subcase::omega_to_half_pi_k1_even: {
      if (k1 % 2 != 0) throw DomainError("subcase needs even k1");
      const double w = omega - kPi / 2;
      double v = 0.0, err = 0.0;
      for (int j = 0; j <= k1 / 2; ++j) {
        v += coeff_b(shape, k1, k2, j) * std::pow(w, k1 - 2 * j) / std::pow(x, 2 * j);
        err += std::pow(std::abs(w), k1 - 2 * j + 1) / std::pow(x, 2 * j);
      }
      err += 1.0 / std::pow(x, k1 + 2);
      return {v, err,
              "O(sum_j (omega-pi/2)^{k1-2j+1}/|x|^{2j} + 1/" + power_term("|x|", k1 + 2) + ")"};
    }
    case Subcase::omega_to_half_pi_k1_odd: {
      if (k1 % 2 != 1) throw DomainError("subcase needs odd k1");
      const double w = omega - kPi / 2;
      double v = 0.0, err = 0.0;
      for (int j = 0; j <= (k1 - 1) / 2; ++j) {
        v += coeff_b(shape, k1, k2, j) * std::pow(w, k1 - 2 * j) / std::pow(x, 2 * j);
        err += std::pow(std::abs(w), k1 - 2 * j + 1) / std::pow(x, 2 * j);
      }
      v += coeff_b_half(shape, k1, k2) / std::pow(x, k1 + 1);
      err += std::abs(w) / std::pow(x, k1 + 1) + 1.0 / std::pow(x, k1 + 3);
      return {v, err,
              "O(sum_j (omega-pi/2)^{k1-2j+1}/|x|^{2j} + (omega-pi/2)/" +
                  power_term("|x|", k1 + 1) + " + 1/" + power_term("|x|", k1 + 3) + ")"};
    }
  }
  throw DomainError("unknown subcase");
}

}  // namespace

double coeff_c(int k1, int k2, int j) {
  if (j < 0 || 2 * j > k2) throw DomainError("coeff_c needs 0 <= 2j <= k2");
  return parity_sign(k1 + k2 + j) * std::pow(3.0, k2 - j) * factorial(k2) /
         (std::ldexp(1.0, k2 - 2 * j) * factorial(k2 - 2 * j) * factorial(j));
}

double coeff_b(const GroupShape& shape, int k1, int k2, int j) {
  if (j < 0 || 2 * j > k1) throw DomainError("coeff_b needs 0 <= 2j <= k1");
  return parity_sign(k2 + j) * factorial(k1) /
         (std::ldexp(1.0, k1 - 2 * j) * factorial(k1 - 2 * j) * factorial(j)) *
         std::pow(kPi / 2, shape.n() + k1 + k2);
}

double coeff_b_half(const GroupShape& shape, int k1, int k2) {
  if (k1 % 2 != 1) throw DomainError("coeff_b_half needs odd k1");
  const int n = shape.n(), m = shape.m();
  return parity_sign(k2 + (k1 + 1) / 2) * factorial(k1 + 1) / factorial((k1 + 1) / 2) *
         std::pow(kPi / 2, n + k1 + k2 - 1) *
         (n + k1 + k2 - kPi * kPi / 24.0 * (k1 + 2) + 0.5 * (m - 1));
}

double regime_I_psi(const GroupShape& shape, double omega) {
  const int n = shape.n(), m = shape.m();
  const double norm = 1.0 / (std::pow(4.0, n) * std::pow(kPi, n + m));
  if (omega < 1e-4) return norm * std::pow(3.0 * kPi, 0.5 * m);
  const double y = theta_root(omega).y;
  return norm * std::sqrt(std::pow(2.0 * kPi, m) * std::pow(y / omega, m - 1) / theta_prime(y));
}

Approximation asym_regime_I(const GroupShape& shape, const RadialPoint& p, const DerivOrder& order,
                            const RegimeThresholds& th, std::optional<Subcase> subcase) {
  if (p.on_center()) throw DomainError("regime I expansion needs R > 0");
  th.validate();
  const Subcase sc = subcase.value_or(classify_subcase(p, order, th));
  const double omega = p.omega();
  const ThetaRoot root = theta_root(omega);
  const Upsilon ups = upsilon_for(shape, p, order, sc, root);

  Approximation out;
  out.regime = {RegimeTag::I, sc};
  out.log_leading = -quarter_d_sq(p);
  out.log_prefactor = -shape.m() * std::log(p.x_norm()) + std::log(regime_I_psi(shape, omega));
  out.prefactor_sign = 1;
  out.correction = ups.value;
  out.claimed_order = ups.order;
  out.claimed_error = ups.value == 0.0 ? INFINITY : ups.abs_error / std::abs(ups.value);
  out.value = LogReal::from_scaled(ups.value, out.log_prefactor + out.log_leading);
  return out;
}

Approximation asym_regime_II(const GroupShape& shape, const RadialPoint& p, const DerivOrder& order) {
  if (p.on_center() || p.on_horizontal()) throw DomainError("regime II expansion needs R, |t| > 0");
  const int n = shape.n(), m = shape.m(), k1 = order.k1(), k2 = order.k2();
  const double delta = p.delta(), kappa = p.kappa();
  Approximation out;
  out.regime = {RegimeTag::II, std::nullopt};
  out.log_leading = -quarter_d_sq(p);
  out.log_prefactor = (k1 + k2) * std::log(kPi) - n * std::log(4.0) -
                      (n + k1 - 0.5 * (m + 1)) * std::log(kPi * delta) -
                      0.5 * std::log(2.0 * kPi) - 0.5 * m * std::log(kappa);
  out.prefactor_sign = parity_sign(k2);
  out.correction = 1.0;
  out.claimed_order = "O(delta + 1/kappa)";
  out.claimed_error = delta + 1.0 / kappa;
  out.value = LogReal::from_scaled(out.prefactor_sign, out.log_prefactor + out.log_leading);
  return out;
}

Approximation asym_unified(const GroupShape& shape, const RadialPoint& p, const DerivOrder& order,
                           const RegimeThresholds& th) {
  if (p.on_center() || p.on_horizontal()) throw DomainError("unified expansion needs R, |t| > 0");
  th.validate();
  const int n = shape.n(), m = shape.m(), k1 = order.k1(), k2 = order.k2();
  const double delta = p.delta(), kappa = p.kappa(), t = p.t();
  const Saddle sd = saddle(delta);
  const double s = kappa * sd.rho;
  const int nu = n + k1 - 1;

  Approximation out;
  out.log_leading = -quarter_d_sq(p);
  out.log_prefactor = (k1 + k2) * std::log(kPi) - (n - k1 + 1 + 0.5 * (m - 1)) * std::log(2.0) +
                      (n + k1 - 0.5 * (m + 1)) * std::log(t);
  out.prefactor_sign = parity_sign(k2);
  out.correction = std::exp(log_bessel_I_tilde(nu, s) - s);
  if (kappa >= th.kappa_high) {
    out.regime = {RegimeTag::II, std::nullopt};
    out.claimed_order = "O(delta + 1/kappa)";
    out.claimed_error = delta + 1.0 / kappa;
  } else if (kappa >= th.kappa_low) {
    out.regime = {RegimeTag::III, std::nullopt};
    // 1/|t| = 2 pi delta / kappa is O(delta) here; it is the Laplace remainder.
    out.claimed_order = "O(delta + 1/|t|)";
    out.claimed_error = delta + 1.0 / t;
  } else {
    out.regime = {RegimeTag::IV, std::nullopt};
    out.claimed_order = "O(1/|t| + kappa)";
    out.claimed_error = 1.0 / t + kappa;
  }
  out.value = LogReal::from_scaled(out.prefactor_sign * out.correction,
                                   out.log_prefactor + out.log_leading);
  return out;
}

Approximation asymptotic(const GroupShape& shape, const RadialPoint& p, const DerivOrder& order,
                         const RegimeThresholds& th) {
  const Regime r = classify(p, order, th);
  switch (r.tag) {
    case RegimeTag::I: return asym_regime_I(shape, p, order, th, r.subcase);
    case RegimeTag::II: return asym_regime_II(shape, p, order);
    case RegimeTag::III:
    case RegimeTag::IV: return asym_unified(shape, p, order, th);
  }
  throw DomainError("unknown regime");
}

std::vector<std::pair<int, double>> odd_m_weights(int m, int k2, double t) {
  if (m < 3 || m % 2 == 0) throw DomainError("odd_m_weights needs odd m >= 3");
  if (!(t > 0)) throw DomainError("odd_m_weights needs |t| > 0");
  const int half = (m - 1) / 2;
  std::map<int, double> acc;
  for (int k = 1; k <= half; ++k) {
    const double c = factorial(m - k - 2) /
                     (std::ldexp(1.0, half - k) * factorial(half - k) * factorial(k - 1));
    const double factor = c * parity_sign(k) / std::pow(2.0 * kPi, half);
    const int a = m - 1 - k;
    for (int r = 0; r <= k2; ++r) {
      const double w = factor * binomial(k2, r) * parity_sign(r) * pochhammer(a, r) *
                       std::pow(t, -(a + r));
      acc[k2 + k - r] += w;
    }
  }
  return {acc.begin(), acc.end()};
}

LogReal log_sum(const std::vector<LogReal>& terms) {
  double peak = -INFINITY;
  for (const auto& t : terms)
    if (t.sign != 0) peak = std::max(peak, t.log_abs);
  if (peak == -INFINITY) return {};
  double acc = 0.0;
  for (const auto& t : terms)
    if (t.sign != 0) acc += t.sign * std::exp(t.log_abs - peak);
  return LogReal::from_scaled(acc, peak);
}

LogReal odd_m_reduce(const GroupShape& shape, const RadialPoint& p, const DerivOrder& order,
                     const RadialEvaluator& eval1) {
  std::vector<LogReal> terms;
  for (const auto& [j, w] : odd_m_weights(shape.m(), order.k2(), p.t()))
    terms.push_back(LogReal::from_value(w) * eval1(DerivOrder(order.k1(), j)));
  return log_sum(terms);
}

TaylorResult taylor_small_t(const GroupShape&, const RadialPoint& p, const DerivOrder& order,
                            int terms, const RadialEvaluator& eval_at_t0) {
  if (terms < 0) throw DomainError("taylor_small_t needs terms >= 0");
  const double t = p.t();
  const int k1 = order.k1(), k2 = order.k2();
  // Odd k2 keeps the odd powers |t|^{2h+1}, even k2 the even ones.
  const int shift = k2 % 2;
  auto term = [&](int h) {
    const int power = 2 * h + shift;
    const LogReal d = eval_at_t0(DerivOrder(k1, k2 + power));
    if (d.sign == 0) return LogReal{};
    const double log_coeff = power * std::log(t) - std::lgamma(power + 1.0);
    if (power > 0 && t == 0.0) return LogReal{};
    return LogReal{d.sign, d.log_abs + (power == 0 ? 0.0 : log_coeff)};
  };
  std::vector<LogReal> parts;
  for (int h = 0; h <= terms; ++h) parts.push_back(term(h));
  const LogReal next = term(terms + 1);
  return {log_sum(parts), {next.sign == 0 ? 0 : 1, next.log_abs}};
}

}  // namespace htk
