#include "htk/core.hpp"

#include <limits>
#include <sstream>

#include "htk/error.hpp"

namespace htk {

GroupShape::GroupShape(int n, int m) : n_(n), m_(m) {
  if (n < 1 || m < 1)
    throw DomainError("group shape needs n >= 1 and m >= 1");
}

DerivOrder::DerivOrder(int k1, int k2) : k1_(k1), k2_(k2) {
  if (k1 < 0 || k2 < 0) throw DomainError("derivative orders must be >= 0");
}

RadialPoint::RadialPoint(double R, double t_norm) : R_(R), t_(t_norm) {
  if (!std::isfinite(R) || !std::isfinite(t_norm) || R < 0.0 || t_norm < 0.0)
    throw DomainError("radial point needs finite R >= 0 and |t| >= 0");
}

RadialPoint RadialPoint::from_cartesian(double x_norm, double t_norm) {
  if (!(x_norm >= 0.0)) throw DomainError("|x| must be >= 0");
  return RadialPoint(0.25 * x_norm * x_norm, t_norm);
}

RadialPoint RadialPoint::from_delta_kappa(double delta, double kappa) {
  if (!(delta > 0.0) || !(kappa > 0.0))
    throw DomainError("delta and kappa must be positive");
  // kappa*delta = 2R, kappa/delta = 2 pi |t|
  return RadialPoint(0.5 * kappa * delta, kappa / (2.0 * kPi * delta));
}

double RadialPoint::omega() const {
  if (R_ == 0.0) throw DomainError("omega undefined at R = 0");
  return t_ / R_;
}

double RadialPoint::delta() const {
  if (t_ == 0.0) throw DomainError("delta undefined at |t| = 0");
  return std::sqrt(R_ / (kPi * t_));
}

RadialPoint RadialPoint::scaled(double s) const {
  if (!(s > 0.0)) throw DomainError("time scale must be positive");
  return RadialPoint(R_ / s, t_ / s);
}

LogReal LogReal::from_value(double v) {
  if (v == 0.0) return {};
  return {v > 0 ? 1 : -1, std::log(std::abs(v))};
}

LogReal LogReal::from_scaled(double mantissa, double log_scale) {
  if (mantissa == 0.0) return {};
  return {mantissa > 0 ? 1 : -1, std::log(std::abs(mantissa)) + log_scale};
}

double LogReal::value() const {
  if (sign == 0) return 0.0;
  if (log_abs > std::log(std::numeric_limits<double>::max()))
    throw OverflowError("magnitude exceeds double range");
  if (log_abs < std::log(std::numeric_limits<double>::denorm_min()))
    throw OverflowError("magnitude below double range");
  return sign * std::exp(log_abs);
}

double LogReal::value_saturating() const {
  if (sign == 0) return 0.0;
  return sign * std::exp(log_abs);
}

LogReal operator*(const LogReal& a, const LogReal& b) {
  if (a.sign == 0 || b.sign == 0) return {};
  return {a.sign * b.sign, a.log_abs + b.log_abs};
}

std::string_view to_string(RegimeTag tag) {
  switch (tag) {
    case RegimeTag::I: return "I";
    case RegimeTag::II: return "II";
    case RegimeTag::III: return "III";
    case RegimeTag::IV: return "IV";
  }
  return "?";
}

std::string_view to_string(Subcase sc) {
  switch (sc) {
    case Subcase::generic: return "generic";
    case Subcase::omega_to_0_k2_even: return "omega_to_0_k2_even";
    case Subcase::omega_to_0_k2_odd_t_large: return "omega_to_0_k2_odd_t_large";
    case Subcase::omega_to_0_k2_odd_t_bounded: return "omega_to_0_k2_odd_t_bounded";
    case Subcase::omega_to_half_pi_k1_even: return "omega_to_half_pi_k1_even";
    case Subcase::omega_to_half_pi_k1_odd: return "omega_to_half_pi_k1_odd";
  }
  return "?";
}

std::string to_string(const Regime& r) {
  std::string s(to_string(r.tag));
  if (r.subcase) {
    s += ':';
    s += to_string(*r.subcase);
  }
  return s;
}

void RegimeThresholds::validate() const {
  if (!(omega_max > 0) || !(eps_omega > 0) || !(kappa_low > 0))
    throw DomainError("thresholds must be positive");
  if (!(delta_max > 0 && delta_max < 1))
    throw DomainError("delta_max must lie in (0, 1)");
  if (!(kappa_low < kappa_high))
    throw DomainError("kappa_low must be below kappa_high");
}

Subcase classify_subcase(const RadialPoint& p, const DerivOrder& order,
                         const RegimeThresholds& th) {
  const double omega = p.omega();
  if (omega < th.eps_omega) {
    if (order.k2() % 2 == 0) return Subcase::omega_to_0_k2_even;
    return p.t() >= 1.0 / th.eps_omega ? Subcase::omega_to_0_k2_odd_t_large
                                       : Subcase::omega_to_0_k2_odd_t_bounded;
  }
  if (std::abs(omega - kPi / 2) < th.eps_omega)
    return order.k1() % 2 == 0 ? Subcase::omega_to_half_pi_k1_even
                               : Subcase::omega_to_half_pi_k1_odd;
  return Subcase::generic;
}

Regime classify(const RadialPoint& p, const DerivOrder& order,
                const RegimeThresholds& th) {
  th.validate();
  if (p.on_center() || p.on_horizontal())
    throw UnclassifiableError("axis point: evaluate with the oracle");
  if (p.omega() <= th.omega_max)
    return {RegimeTag::I, classify_subcase(p, order, th)};
  const double delta = p.delta();
  const double kappa = p.kappa();
  if (delta <= th.delta_max && kappa >= th.kappa_high)
    return {RegimeTag::II, std::nullopt};
  if (delta <= th.delta_max && kappa >= th.kappa_low)
    return {RegimeTag::III, std::nullopt};
  if (kappa <= th.kappa_low && p.t() >= 1.0 / th.delta_max)
    return {RegimeTag::IV, std::nullopt};
  std::ostringstream msg;
  msg << "no regime for R=" << p.R() << " |t|=" << p.t() << " (omega="
      << p.omega() << ", delta=" << delta << ", kappa=" << kappa << ")";
  throw UnclassifiableError(msg.str());
}

double rescale_time_log(double s, const GroupShape& shape,
                        const DerivOrder& order) {
  if (!(s > 0.0)) throw DomainError("time scale must be positive");
  return -(shape.n() + shape.m() + order.total()) * std::log(s);
}

double rescale_time(double value_at_1, double s, const GroupShape& shape,
                    const DerivOrder& order) {
  return value_at_1 * std::exp(rescale_time_log(s, shape, order));
}

}  // namespace htk
