#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "htk/core.hpp"

namespace htk {

// Asymptotic value sign * exp(log_prefactor + log_leading) * correction,
// with log_leading = -d^2/4. The correction is Upsilon in regime I and the
// Bessel bracket exp(-kappa rho) I~(kappa rho) in the unified form.
struct Approximation {
  LogReal value;
  Regime regime;
  double log_leading = 0.0;
  double log_prefactor = 0.0;
  int prefactor_sign = 1;
  double correction = 1.0;
  std::string claimed_order;
  // Relative error proxy: the claimed O-term with implied constant 1,
  // divided by the size of the retained term.
  double claimed_error = 0.0;

  // Throws OverflowError when the value does not fit in a double.
  double plain() const { return value.value(); }
};

// Leading-order normalisation Psi(omega) of the regime-I expansion.
double regime_I_psi(const GroupShape& shape, double omega);

// Expansion coefficients of the omega -> 0 and omega -> pi/2 subcases.
double coeff_c(int k1, int k2, int j);
double coeff_b(const GroupShape& shape, int k1, int k2, int j);
// b_{k1,k2,(k1+1)/2} for odd k1.
double coeff_b_half(const GroupShape& shape, int k1, int k2);

// Regime I (omega bounded). Without an explicit subcase the one chosen by
// classify_subcase under `th` is used. Needs R > 0.
Approximation asym_regime_I(const GroupShape& shape, const RadialPoint& p, const DerivOrder& order,
                            const RegimeThresholds& th = {},
                            std::optional<Subcase> subcase = std::nullopt);

// Regime II (delta -> 0, kappa -> infinity), explicit power-law form.
Approximation asym_regime_II(const GroupShape& shape, const RadialPoint& p, const DerivOrder& order);

// Bessel form valid across regimes II, III and IV; needs delta < 0.5.
Approximation asym_unified(const GroupShape& shape, const RadialPoint& p, const DerivOrder& order,
                           const RegimeThresholds& th = {});

// classify, then regime I / II formulas, unified form for III and IV.
Approximation asymptotic(const GroupShape& shape, const RadialPoint& p, const DerivOrder& order,
                         const RegimeThresholds& th = {});

// Odd m >= 3: p^{(m)}_{k1,k2}(x,t) = sum_j w_j p^{(1)}_{k1,j}(x,|t|). Returns (j, w_j).
std::vector<std::pair<int, double>> odd_m_weights(int m, int k2, double t);

using RadialEvaluator = std::function<LogReal(const DerivOrder&)>;

// Exact reduction of odd m to m = 1; eval1 gives p^{(1)}_{k1,j} at (x, |t|).
LogReal odd_m_reduce(const GroupShape& shape, const RadialPoint& p, const DerivOrder& order,
                     const RadialEvaluator& eval1);

struct TaylorResult {
  LogReal value;
  LogReal remainder_proxy;  // next omitted term
};

// Small-|t| expansion from the derivatives at t = 0 supplied by eval_at_t0.
TaylorResult taylor_small_t(const GroupShape& shape, const RadialPoint& p, const DerivOrder& order,
                            int terms, const RadialEvaluator& eval_at_t0);

// Sum of sign * exp(log) terms, stable for widely varying magnitudes.
LogReal log_sum(const std::vector<LogReal>& terms);

}  // namespace htk
