#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <string_view>

namespace htk {

inline constexpr double kPi = 3.141592653589793238462643383279502884;

// Dimensions of an H-type group R^{2n} x R^m.
class GroupShape {
 public:
  GroupShape(int n, int m);
  int n() const { return n_; }
  int m() const { return m_; }
  friend bool operator==(const GroupShape&, const GroupShape&) = default;

 private:
  int n_;
  int m_;
};

// Order of the radial derivative d^k1/dR^k1 d^k2/d|t|^k2.
class DerivOrder {
 public:
  DerivOrder(int k1, int k2);
  int k1() const { return k1_; }
  int k2() const { return k2_; }
  int total() const { return k1_ + k2_; }
  friend bool operator==(const DerivOrder&, const DerivOrder&) = default;

 private:
  int k1_;
  int k2_;
};

// A point of the group reduced to its two radial coordinates R = |x|^2/4 and |t|.
class RadialPoint {
 public:
  RadialPoint(double R, double t_norm);
  static RadialPoint from_cartesian(double x_norm, double t_norm);
  // Point with prescribed delta and kappa (both positive).
  static RadialPoint from_delta_kappa(double delta, double kappa);

  double R() const { return R_; }
  double t() const { return t_; }
  double x_norm() const { return 2.0 * std::sqrt(R_); }
  bool on_center() const { return R_ == 0.0; }
  bool on_horizontal() const { return t_ == 0.0; }

  // |t|/R; requires R > 0.
  double omega() const;
  // sqrt(R/(pi|t|)); requires |t| > 0.
  double delta() const;
  double kappa() const { return 2.0 * std::sqrt(kPi * t_ * R_); }

  // Point (x/sqrt(s), t/s) used by the time rescaling.
  RadialPoint scaled(double s) const;

 private:
  double R_;
  double t_;
};

// sign * exp(log_abs); sign is 0 for an exact zero.
struct LogReal {
  int sign = 0;
  double log_abs = -INFINITY;

  static LogReal from_value(double v);
  static LogReal from_scaled(double mantissa, double log_scale);
  // Throws OverflowError when the magnitude is outside the double range.
  double value() const;
  // Value with underflow to zero and overflow to +-inf allowed.
  double value_saturating() const;
  double log10_abs() const { return log_abs / std::log(10.0); }
};

LogReal operator*(const LogReal& a, const LogReal& b);

enum class RegimeTag { I, II, III, IV };

enum class Subcase {
  generic,
  omega_to_0_k2_even,
  omega_to_0_k2_odd_t_large,
  omega_to_0_k2_odd_t_bounded,
  omega_to_half_pi_k1_even,
  omega_to_half_pi_k1_odd,
};

struct Regime {
  RegimeTag tag;
  std::optional<Subcase> subcase;  // set only for regime I
  friend bool operator==(const Regime&, const Regime&) = default;
};

std::string_view to_string(RegimeTag tag);
std::string_view to_string(Subcase sc);
std::string to_string(const Regime& r);

struct RegimeThresholds {
  double omega_max = 4.0;
  double delta_max = 0.1;
  double kappa_low = 0.5;
  double kappa_high = 10.0;
  double eps_omega = 0.05;

  // Throws DomainError unless kappa_low < kappa_high, 0 < delta_max < 1 and
  // all values are positive.
  void validate() const;
};

// Region selection with priority I > II > III > IV. Points on the center
// or on the horizontal layer are reserved for the oracle and throw
// UnclassifiableError, as do points in the gap 4 < omega < 1/(pi delta_max^2)
// and small-kappa points with |t| < 1/delta_max.
Regime classify(const RadialPoint& p, const DerivOrder& order,
                const RegimeThresholds& th = {});

// Regime-I subcase only (assumes omega <= omega_max).
Subcase classify_subcase(const RadialPoint& p, const DerivOrder& order,
                         const RegimeThresholds& th);

// p_s(x,t) = s^{-(n+m+k1+k2)} p_1(x/sqrt(s), t/s). The caller supplies p_1
// evaluated at point.scaled(s).
double rescale_time(double value_at_1, double s, const GroupShape& shape,
                    const DerivOrder& order);
double rescale_time_log(double s, const GroupShape& shape,
                        const DerivOrder& order);

}  // namespace htk
