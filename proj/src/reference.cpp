#include "htk/reference.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "htk/asymptotics.hpp"
#include "htk/error.hpp"
#include "htk/quadrature.hpp"
#include "htk/special.hpp"

namespace htk {

namespace {

// Polar quadrature integrates values of size exp(-R) to a result of size
// exp(-d^2/4); beyond this many e-folds of cancellation it is not used.
constexpr double kPolarMaxLoss = 10.0;
constexpr double kDirectOmegaMax = 4.0;

struct Weighted {
  double weight;
  OracleResult term;
};

OracleResult combine(const std::vector<Weighted>& parts, OracleMethod method) {
  double peak = -INFINITY;
  for (const auto& w : parts)
    if (w.weight != 0.0 && w.term.value != 0.0)
      peak = std::max(peak, w.term.log_scale + std::log(std::abs(w.weight)));
  OracleResult out;
  out.method = method;
  if (peak == -INFINITY) return out;
  out.log_scale = peak;
  for (const auto& w : parts) {
    const double scale = std::abs(w.weight) * std::exp(w.term.log_scale - peak);
    out.value += (w.weight < 0 ? -1.0 : 1.0) * w.term.value * scale;
    out.est_error += w.term.est_error * scale;
    out.converged = out.converged && w.term.converged;
  }
  return out;
}

bool polar_is_stable(const RadialPoint& p) { return quarter_d_sq(p) - p.R() < kPolarMaxLoss; }

}  // namespace

OracleResult odd_reduction_value(const GroupShape& shape, const RadialPoint& p,
                                 const DerivOrder& order, const QuadratureSpec& spec) {
  const GroupShape base(shape.n(), 1);
  std::vector<Weighted> parts;
  for (const auto& [j, w] : odd_m_weights(shape.m(), order.k2(), p.t()))
    parts.push_back({w, reference_value(base, p, DerivOrder(order.k1(), j), spec)});
  return combine(parts, OracleMethod::odd_reduction);
}

OracleResult descent_value(const GroupShape& shape, const RadialPoint& p, const DerivOrder& order,
                           const QuadratureSpec& spec) {
  if (shape.m() % 2 != 0) throw DomainError("descent needs even m");
  if (p.on_horizontal()) throw DomainError("descent needs |t| > 0");
  const GroupShape up(shape.n(), shape.m() + 1);
  const int k1 = order.k1(), k2 = order.k2();
  const double t = p.t(), R = p.R();
  const double q0 = quarter_d_sq(p);

  // Substituting s = |t| u: p = 2 int_0^inf [|t| sigma^k2 P_k2(|t| sigma) + k2 sigma^{k2-1} P_{k2-1}(|t| sigma)] du
  // with sigma = sqrt(1 + u^2) and P_j the m + 1 kernel differentiated j times in |t|.
  double upper = 1.0;
  while (quarter_d_sq(RadialPoint(R, t * std::hypot(1.0, upper))) - q0 < 50.0) upper *= 2.0;

  double worst_rel = 0.0;
  bool all_converged = true;
  auto f = [&](double u) {
    const double sigma = std::hypot(1.0, u);
    const RadialPoint q(R, t * sigma);
    std::vector<Weighted> parts;
    parts.push_back({t * std::pow(sigma, k2), reference_value(up, q, order, spec)});
    if (k2 > 0)
      parts.push_back({k2 * std::pow(sigma, k2 - 1), reference_value(up, q, DerivOrder(k1, k2 - 1), spec)});
    const OracleResult r = combine(parts, OracleMethod::descent);
    worst_rel = std::max(worst_rel, r.est_error / std::max(std::abs(r.value), 1e-300));
    all_converged = all_converged && r.converged;
    return r.value * std::exp(r.log_scale + q0);
  };
  quad::Options opt;
  opt.rel_tol = spec.rel_tol;
  opt.abs_tol = 1e-300;
  opt.max_panels = spec.max_panels;
  auto res = quad::integrate(f, 0.0, upper, opt);

  OracleResult out;
  out.method = OracleMethod::descent;
  out.log_scale = -q0;
  out.value = 2.0 * res.value;
  out.est_error = 2.0 * (res.abs_error + worst_rel * res.abs_integral);
  out.converged = res.converged && all_converged;
  return out;
}

OracleResult reference_value(const GroupShape& shape, const RadialPoint& p, const DerivOrder& order,
                             const QuadratureSpec& spec) {
  const int m = shape.m();
  if (m == 1) {
    if (p.on_horizontal() || p.on_center() || p.omega() <= kDirectOmegaMax)
      return oracle_m1(shape, p, order, spec);
    return oracle_contour_m1(shape, p, order, spec);
  }
  if (p.on_horizontal() || polar_is_stable(p)) return oracle_polar(shape, p, order, spec);
  if (m % 2 == 1) return odd_reduction_value(shape, p, order, spec);
  return descent_value(shape, p, order, spec);
}

}  // namespace htk
