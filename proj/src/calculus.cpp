#include "htk/calculus.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "htk/asymptotics.hpp"
#include "htk/error.hpp"
#include "htk/reference.hpp"
#include "htk/special.hpp"

namespace htk {

namespace {

LogReal scaled_by(const LogReal& v, double factor) {
  return v * LogReal::from_value(factor);
}

// p_{1,k1,k2} / p_{1,0,0} for the five orders the potential needs.
struct Ratios {
  double r10, r01, r20, r02;
};

Ratios ratios(const RadialPoint& p, const KernelEvaluator& eval) {
  const LogReal base = eval(p, DerivOrder(0, 0));
  if (base.sign <= 0) throw ConvergenceError("kernel value is not positive");
  auto ratio = [&](int k1, int k2) {
    const LogReal v = eval(p, DerivOrder(k1, k2));
    return v.sign == 0 ? 0.0 : v.sign * std::exp(v.log_abs - base.log_abs);
  };
  return {ratio(1, 0), ratio(0, 1), ratio(2, 0), ratio(0, 2)};
}

double v1_from_ratios(const GroupShape& shape, const RadialPoint& p, const Ratios& r) {
  const double R = p.R();
  const double grad = R * (r.r10 * r.r10 + r.r01 * r.r01);
  double lap = -R * r.r20 - shape.n() * r.r10 - R * r.r02;
  if (shape.m() > 1) lap -= (shape.m() - 1) * (R / p.t()) * r.r01;
  return -0.25 * grad - 0.5 * lap;
}

}  // namespace

KernelEvaluator oracle_evaluator(const GroupShape& shape, const QuadratureSpec& spec) {
  return [shape, spec](const RadialPoint& p, const DerivOrder& order) {
    return reference_value(shape, p, order, spec).as_log();
  };
}

KernelEvaluator asymptotic_evaluator(const GroupShape& shape, const RegimeThresholds& th,
                                     const QuadratureSpec& spec) {
  return [shape, th, spec](const RadialPoint& p, const DerivOrder& order) {
    try {
      return asymptotic(shape, p, order, th).value;
    } catch (const UnclassifiableError&) {
      return reference_value(shape, p, order, spec).as_log();
    }
  };
}

KernelEvaluator default_evaluator(const GroupShape& shape, double crossover_d,
                                  const RegimeThresholds& th, const QuadratureSpec& spec) {
  auto near = oracle_evaluator(shape, spec);
  auto far = asymptotic_evaluator(shape, th, spec);
  const double crossover_quarter_sq = 0.25 * crossover_d * crossover_d;
  return [=](const RadialPoint& p, const DerivOrder& order) {
    return quarter_d_sq(p) < crossover_quarter_sq ? near(p, order) : far(p, order);
  };
}

LogReal grad_h_sq(const GroupShape&, const RadialPoint& p, const KernelEvaluator& eval) {
  if (p.on_center()) return {};
  const LogReal a = eval(p, DerivOrder(1, 0));
  const LogReal b = eval(p, DerivOrder(0, 1));
  return scaled_by(log_sum({a * a, b * b}), p.R());
}

LogReal sublaplacian(const GroupShape& shape, const RadialPoint& p, const KernelEvaluator& eval) {
  const int n = shape.n(), m = shape.m();
  if (m > 1 && p.on_horizontal()) throw DomainError("sublaplacian needs |t| > 0 when m > 1");
  const double R = p.R();
  std::vector<LogReal> terms;
  terms.push_back(scaled_by(eval(p, DerivOrder(2, 0)), -R));
  terms.push_back(scaled_by(eval(p, DerivOrder(1, 0)), -n));
  terms.push_back(scaled_by(eval(p, DerivOrder(0, 2)), -R));
  if (m > 1) terms.push_back(scaled_by(eval(p, DerivOrder(0, 1)), -(m - 1) * R / p.t()));
  return log_sum(terms);
}

PotentialSample potential(const GroupShape& shape, double s, const RadialPoint& p,
                          const KernelEvaluator& eval) {
  if (!(s > 0.0) || !std::isfinite(s)) throw DomainError("potential needs s > 0");
  if (shape.m() > 1 && p.on_horizontal()) throw DomainError("potential needs |t| > 0 when m > 1");
  const RadialPoint q = p.scaled(s);
  const double v = v1_from_ratios(shape, q, ratios(q, eval)) / s;
  const double d2 = 4.0 * quarter_d_sq(p);
  return {p, d2, v, d2 > 0.0 ? v / d2 : INFINITY};
}

LogReal time_derivative_fd(const GroupShape& shape, const RadialPoint& p,
                           const KernelEvaluator& eval) {
  const double h = std::cbrt(std::numeric_limits<double>::epsilon());
  const DerivOrder order(0, 0);
  const LogReal base = eval(p, order);
  auto at = [&](double s) {
    const LogReal v = eval(p.scaled(s), order);
    return v.sign * std::exp(v.log_abs - base.log_abs + rescale_time_log(s, shape, order));
  };
  const double slope = (at(1.0 + h) - at(1.0 - h)) / (2.0 * h);
  return LogReal::from_scaled(base.sign * slope, base.log_abs);
}

}  // namespace htk
