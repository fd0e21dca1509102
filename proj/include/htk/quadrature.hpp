#pragma once

// Adaptive Gauss-Kronrod (7/15) integration for real or complex integrands.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <queue>
#include <type_traits>
#include <vector>

namespace htk::quad {

struct Options {
  double abs_tol = 1e-14;
  double rel_tol = 1e-12;
  int max_panels = 20000;
  // Upper bound on the width of the initial panels (oscillatory integrands).
  double max_panel_width = std::numeric_limits<double>::infinity();
};

template <class T>
struct Result {
  T value{};
  double abs_error = 0.0;
  double abs_integral = 0.0;  // integral of |f|, a roundoff scale
  long evaluations = 0;
  bool converged = true;
};

namespace detail {

inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for the 7-point rule on nodes kXgk[1], kXgk[3], kXgk[5], kXgk[7].
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class T>
struct Panel {
  double a, b;
  T value;
  double error;
  double abs_value;
  bool operator<(const Panel& o) const { return error < o.error; }
};

template <class T, class F>
Panel<T> gk15(F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  std::array<T, 15> fv;
  fv[7] = f(center);
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    fv[j] = f(center - dx);
    fv[14 - j] = f(center + dx);
  }
  T resk = fv[7] * kWgk[7];
  T resg = fv[7] * kWg[3];
  double resabs = std::abs(fv[7]) * kWgk[7];
  for (int j = 0; j < 7; ++j) {
    const T pair = fv[j] + fv[14 - j];
    resk += pair * kWgk[j];
    resabs += (std::abs(fv[j]) + std::abs(fv[14 - j])) * kWgk[j];
    if (j % 2 == 1) resg += pair * kWg[j / 2];
  }
  const T mean = resk * 0.5;
  double resasc = std::abs(fv[7] - mean) * kWgk[7];
  for (int j = 0; j < 7; ++j)
    resasc += (std::abs(fv[j] - mean) + std::abs(fv[14 - j] - mean)) * kWgk[j];
  resasc *= std::abs(half);
  resabs *= std::abs(half);
  double err = std::abs((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0)
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  constexpr double eps = std::numeric_limits<double>::epsilon();
  if (resabs > std::numeric_limits<double>::min() / (50.0 * eps))
    err = std::max(50.0 * eps * resabs, err);
  return {a, b, resk * half, err, resabs};
}

// Neumaier-compensated accumulator.
template <class T>
struct Sum {
  T sum{};
  T comp{};
  void add(const T& x) {
    if constexpr (std::is_same_v<T, double>) {
      const double t = sum + x;
      if (std::abs(sum) >= std::abs(x)) comp += (sum - t) + x;
      else comp += (x - t) + sum;
      sum = t;
    } else {
      Sum<double> re{sum.real(), comp.real()}, im{sum.imag(), comp.imag()};
      re.add(x.real());
      im.add(x.imag());
      sum = {re.sum, im.sum};
      comp = {re.comp, im.comp};
    }
  }
  T total() const { return sum + comp; }
};

}  // namespace detail

// Integral of f over [a, b]; f returns double or std::complex<double>.
template <class F>
auto integrate(F&& f, double a, double b, const Options& opt = {})
    -> Result<std::decay_t<decltype(f(a))>> {
  using T = std::decay_t<decltype(f(a))>;
  Result<T> out;
  if (a == b) return out;
  const double sign = b > a ? 1.0 : -1.0;
  const double lo = std::min(a, b);
  const double hi = std::max(a, b);

  int initial = 1;
  if (std::isfinite(opt.max_panel_width) && opt.max_panel_width > 0)
    initial = std::max(1, static_cast<int>(std::ceil((hi - lo) / opt.max_panel_width)));
  initial = std::min(initial, std::max(1, opt.max_panels));

  std::priority_queue<detail::Panel<T>> heap;
  std::vector<detail::Panel<T>> done;
  double total_err = 0.0;
  double total_abs = 0.0;
  T total{};
  for (int i = 0; i < initial; ++i) {
    const double pa = lo + (hi - lo) * i / initial;
    const double pb = (i + 1 == initial) ? hi : lo + (hi - lo) * (i + 1) / initial;
    auto p = detail::gk15<T>(f, pa, pb);
    out.evaluations += 15;
    total_err += p.error;
    total_abs += p.abs_value;
    total += p.value;
    heap.push(p);
  }

  auto target = [&] { return std::max(opt.abs_tol, opt.rel_tol * std::abs(total)); };
  // Below this the per-panel roundoff floor dominates and splitting cannot help.
  constexpr double eps = std::numeric_limits<double>::epsilon();
  auto floor = [&] { return 200.0 * eps * total_abs; };
  int panels = initial;
  while (total_err > std::max(target(), floor()) && !heap.empty()) {
    if (panels >= opt.max_panels) {
      out.converged = false;
      break;
    }
    auto worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      // Cannot split further; keep it and stop refining this panel.
      heap.pop();
      done.push_back(worst);
      if (heap.empty()) break;
      continue;
    }
    heap.pop();
    auto left = detail::gk15<T>(f, worst.a, mid);
    auto right = detail::gk15<T>(f, mid, worst.b);
    out.evaluations += 30;
    total_err += left.error + right.error - worst.error;
    total_abs += left.abs_value + right.abs_value - worst.abs_value;
    total += left.value + right.value - worst.value;
    heap.push(left);
    heap.push(right);
    ++panels;
  }

  detail::Sum<T> acc;
  double err = 0.0;
  double absint = 0.0;
  auto absorb = [&](const detail::Panel<T>& p) {
    acc.add(p.value);
    err += p.error;
    absint += p.abs_value;
  };
  for (const auto& p : done) absorb(p);
  while (!heap.empty()) {
    absorb(heap.top());
    heap.pop();
  }
  out.value = acc.total() * sign;
  out.abs_error = err;
  out.abs_integral = absint;
  if (err > std::max(opt.abs_tol, opt.rel_tol * std::abs(out.value))) out.converged = false;
  return out;
}

// Fixed n-point Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

inline GaussRule make_gauss_legendre(int n) {
  GaussRule rule{std::vector<double>(n), std::vector<double>(n)};
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

inline const GaussRule& gauss_legendre_20() {
  static const GaussRule rule = make_gauss_legendre(20);
  return rule;
}

// Composite 20-point Gauss-Legendre over `panels` equal panels of [a, b].
template <class F>
auto composite_gauss(F&& f, double a, double b, int panels) -> std::decay_t<decltype(f(a))> {
  using T = std::decay_t<decltype(f(a))>;
  const GaussRule& g = gauss_legendre_20();
  const double h = (b - a) / panels;
  detail::Sum<T> acc;
  for (int p = 0; p < panels; ++p) {
    const double c = a + (p + 0.5) * h;
    T part{};
    for (std::size_t i = 0; i < g.nodes.size(); ++i) part += g.weights[i] * f(c + 0.5 * h * g.nodes[i]);
    acc.add(part * (0.5 * h));
  }
  return acc.total();
}

}  // namespace htk::quad
