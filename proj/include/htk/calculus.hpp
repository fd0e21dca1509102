#pragma once

#include <functional>

#include "htk/core.hpp"
#include "htk/oracle.hpp"

namespace htk {

// p_{1,k1,k2} at a point, in log form so that ratios survive underflow.
using KernelEvaluator = std::function<LogReal(const RadialPoint&, const DerivOrder&)>;

KernelEvaluator oracle_evaluator(const GroupShape& shape, const QuadratureSpec& spec = {});
// Falls back to the oracle at points the classifier rejects.
KernelEvaluator asymptotic_evaluator(const GroupShape& shape, const RegimeThresholds& th = {},
                                     const QuadratureSpec& spec = {});
// Oracle below d = crossover_d, asymptotic formulas above.
KernelEvaluator default_evaluator(const GroupShape& shape, double crossover_d = 40.0,
                                  const RegimeThresholds& th = {}, const QuadratureSpec& spec = {});

// |grad_H p_1|^2 = R (p_{1,1,0}^2 + p_{1,0,1}^2).
LogReal grad_h_sq(const GroupShape& shape, const RadialPoint& p, const KernelEvaluator& eval);

// L p_1 = -R p_{1,2,0} - n p_{1,1,0} - R p_{1,0,2} - (m-1)(R/|t|) p_{1,0,1}.
// Needs |t| > 0 when m > 1.
LogReal sublaplacian(const GroupShape& shape, const RadialPoint& p, const KernelEvaluator& eval);

struct PotentialSample {
  RadialPoint point;
  double d2;     // d(x,t)^2
  double v;      // V_s at the point
  double ratio;  // v / d2
};

// V_s(x,t) = V_1(x/sqrt(s), t/s) / s with
// V_1 = -|grad_H p_1|^2 / (4 p_1^2) - L p_1 / (2 p_1).
PotentialSample potential(const GroupShape& shape, double s, const RadialPoint& p,
                          const KernelEvaluator& eval);

// d/ds p_s at s = 1 from the scaling relation, by central differences of eval.
LogReal time_derivative_fd(const GroupShape& shape, const RadialPoint& p,
                           const KernelEvaluator& eval);

}  // namespace htk
