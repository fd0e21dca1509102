#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace htk {

struct CheckItem {
  std::string name;
  bool passed = false;
  double worst = 0.0;      // largest observed discrepancy (or the measured quantity)
  double tolerance = 0.0;  // bound the discrepancy is held to
  std::string detail;
};

struct CheckReport {
  std::string suite;
  std::vector<CheckItem> items;
  bool passed() const;
};

// Suite names accepted by run_check.
const std::vector<std::string_view>& check_suites();
// Throws DomainError for an unknown suite.
CheckReport run_check(std::string_view suite);

// Individual property checks.
CheckItem check_center_value();          // p(0,0) = 1/16 for n = m = 1
CheckItem check_normalization();         // integral of p_1 over the group is 1 (n = m = 1)
CheckItem check_odd_reduction();         // m = 3 polar quadrature against the reduction to m = 1
CheckItem check_even_descent();          // m = 2 against the integral of the m = 3 kernel
CheckItem check_regime_I_order();        // error slope along omega = 1
CheckItem check_regime_I_subcases();     // omega -> 0 and omega -> pi/2 multi-term expansions
CheckItem check_regime_II();             // power-law form against the contour oracle
CheckItem check_regimes_III_IV();        // Bessel form against the oracle
CheckItem check_oracle_consistency();    // shifted line against contour representation
CheckItem check_theta_round_trip();
CheckItem check_theta_prime_at_zero();
CheckItem check_bessel_derivative();
CheckItem check_bessel_integral_form();
CheckItem check_bessel_tilde_at_zero();
CheckItem check_bessel_combination();    // 2 I_{n-1} I_{n+1} - I_n^2 > 0
CheckItem check_saddle_residual();
CheckItem check_saddle_slope();          // log-log slope of |rho - 1| against delta
CheckItem check_potential_band();        // V_1 / d^2 along four regime rays
CheckItem check_heat_equation();         // L p_1 = -d/ds p_s at s = 1
CheckItem check_gradient_fd();           // grad_h_sq against finite differences

}  // namespace htk
