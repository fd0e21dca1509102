#include "htk/htk.h"

#include <cmath>
#include <new>
#include <string>

#include "htk/asymptotics.hpp"
#include "htk/calculus.hpp"
#include "htk/checks.hpp"
#include "htk/core.hpp"
#include "htk/error.hpp"
#include "htk/oracle.hpp"
#include "htk/reference.hpp"
#include "htk/special.hpp"

struct htk_context {
  htk::GroupShape shape{1, 1};
  htk::QuadratureSpec spec;
  htk::RegimeThresholds thresholds;
  std::string last_error;
};

struct htk_check_report {
  htk::CheckReport report;
};

namespace {

template <class F>
htk_status guarded(htk_context* ctx, F&& body) {
  if (ctx == nullptr) return HTK_ERR_INVALID_ARGUMENT;
  ctx->last_error.clear();
  try {
    return body();
  } catch (const htk::UnclassifiableError& e) {
    ctx->last_error = e.what();
    return HTK_ERR_UNCLASSIFIABLE;
  } catch (const htk::DomainError& e) {
    ctx->last_error = e.what();
    return HTK_ERR_DOMAIN;
  } catch (const htk::ConvergenceError& e) {
    ctx->last_error = e.what();
    return HTK_ERR_CONVERGENCE;
  } catch (const htk::OverflowError& e) {
    ctx->last_error = e.what();
    return HTK_ERR_OVERFLOW;
  } catch (const std::bad_alloc&) {
    ctx->last_error = "out of memory";
    return HTK_ERR_INTERNAL;
  } catch (const std::exception& e) {
    ctx->last_error = e.what();
    return HTK_ERR_INTERNAL;
  }
}

htk_logreal to_c(const htk::LogReal& v) { return {v.sign, v.log_abs}; }

htk_subcase to_c(const std::optional<htk::Subcase>& sc) {
  return sc ? static_cast<htk_subcase>(*sc) : HTK_SUBCASE_NONE;
}

bool finite_nonnegative(double v) { return std::isfinite(v) && v >= 0.0; }

htk_status check_point(htk_context* ctx, double R, double t, double s) {
  if (!finite_nonnegative(R) || !finite_nonnegative(t)) {
    ctx->last_error = "R and |t| must be finite and >= 0";
    return HTK_ERR_INVALID_ARGUMENT;
  }
  if (!(s > 0.0) || !std::isfinite(s)) {
    ctx->last_error = "s must be finite and > 0";
    return HTK_ERR_INVALID_ARGUMENT;
  }
  return HTK_OK;
}

}  // namespace

extern "C" {

const char* htk_version(void) { return "1.0.0"; }

const char* htk_status_string(htk_status status) {
  switch (status) {
    case HTK_OK: return "ok";
    case HTK_ERR_INVALID_ARGUMENT: return "invalid argument";
    case HTK_ERR_DOMAIN: return "domain error";
    case HTK_ERR_CONVERGENCE: return "convergence failure";
    case HTK_ERR_OVERFLOW: return "overflow";
    case HTK_ERR_UNCLASSIFIABLE: return "unclassifiable point";
    case HTK_ERR_TOLERANCE: return "tolerance not met";
    case HTK_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* htk_regime_name(htk_regime regime) {
  if (regime < HTK_REGIME_I || regime > HTK_REGIME_IV) return "";
  return htk::to_string(static_cast<htk::RegimeTag>(regime)).data();
}

const char* htk_subcase_name(htk_subcase subcase) {
  if (subcase < HTK_SUBCASE_GENERIC || subcase > HTK_SUBCASE_OMEGA_TO_HALF_PI_K1_ODD) return "";
  return htk::to_string(static_cast<htk::Subcase>(subcase)).data();
}

const char* htk_method_name(htk_method method) {
  if (method < HTK_METHOD_DIRECT_1D || method > HTK_METHOD_DESCENT) return "";
  return htk::to_string(static_cast<htk::OracleMethod>(method)).data();
}

htk_context* htk_context_new(void) { return new (std::nothrow) htk_context(); }

htk_context* htk_context_clone(const htk_context* ctx) {
  if (ctx == nullptr) return nullptr;
  return new (std::nothrow) htk_context(*ctx);
}

void htk_context_free(htk_context* ctx) { delete ctx; }

const char* htk_last_error(const htk_context* ctx) {
  return ctx == nullptr ? "null context" : ctx->last_error.c_str();
}

htk_status htk_set_shape(htk_context* ctx, int n, int m) {
  return guarded(ctx, [&] {
    ctx->shape = htk::GroupShape(n, m);
    return HTK_OK;
  });
}

htk_status htk_set_tolerances(htk_context* ctx, double rel_tol, double abs_tol) {
  return guarded(ctx, [&] {
    htk::QuadratureSpec spec = ctx->spec;
    spec.rel_tol = rel_tol;
    spec.abs_tol = abs_tol;
    spec.validate();
    ctx->spec = spec;
    return HTK_OK;
  });
}

htk_status htk_set_thresholds(htk_context* ctx, double omega_max, double delta_max,
                              double kappa_low, double kappa_high, double eps_omega) {
  return guarded(ctx, [&] {
    const htk::RegimeThresholds th{omega_max, delta_max, kappa_low, kappa_high, eps_omega};
    th.validate();
    ctx->thresholds = th;
    return HTK_OK;
  });
}

htk_status htk_distance_sq(htk_context* ctx, double R, double t, double* out) {
  return guarded(ctx, [&] {
    if (out == nullptr) return HTK_ERR_INVALID_ARGUMENT;
    if (const htk_status st = check_point(ctx, R, t, 1.0); st != HTK_OK) return st;
    *out = 4.0 * htk::quarter_d_sq(htk::RadialPoint(R, t));
    return HTK_OK;
  });
}

htk_status htk_oracle(htk_context* ctx, double R, double t, int k1, int k2, double s,
                      htk_oracle_result* out) {
  return guarded(ctx, [&] {
    if (out == nullptr) return HTK_ERR_INVALID_ARGUMENT;
    if (const htk_status st = check_point(ctx, R, t, s); st != HTK_OK) return st;
    const htk::DerivOrder order(k1, k2);
    const htk::RadialPoint p = htk::RadialPoint(R, t).scaled(s);
    const htk::OracleResult r = htk::reference_value(ctx->shape, p, order, ctx->spec);
    htk::LogReal v = r.as_log();
    v.log_abs += htk::rescale_time_log(s, ctx->shape, order);
    out->value = to_c(v);
    out->rel_error = r.relative_error();
    out->method = static_cast<htk_method>(r.method);
    out->converged = r.converged ? 1 : 0;
    if (!r.converged || out->rel_error > ctx->spec.rel_tol) {
      ctx->last_error = "estimated error exceeds the requested tolerance";
      return HTK_ERR_TOLERANCE;
    }
    return HTK_OK;
  });
}

htk_status htk_asymptotic(htk_context* ctx, double R, double t, int k1, int k2, double s,
                          htk_asym_result* out) {
  return guarded(ctx, [&] {
    if (out == nullptr) return HTK_ERR_INVALID_ARGUMENT;
    if (const htk_status st = check_point(ctx, R, t, s); st != HTK_OK) return st;
    const htk::DerivOrder order(k1, k2);
    const htk::RadialPoint p = htk::RadialPoint(R, t).scaled(s);
    const htk::Approximation a = htk::asymptotic(ctx->shape, p, order, ctx->thresholds);
    htk::LogReal v = a.value;
    v.log_abs += htk::rescale_time_log(s, ctx->shape, order);
    out->value = to_c(v);
    out->regime = static_cast<htk_regime>(a.regime.tag);
    out->subcase = to_c(a.regime.subcase);
    out->claimed_error = a.claimed_error;
    return HTK_OK;
  });
}

htk_status htk_classify(htk_context* ctx, double R, double t, int k1, int k2, htk_regime* regime,
                        htk_subcase* subcase) {
  return guarded(ctx, [&] {
    if (regime == nullptr || subcase == nullptr) return HTK_ERR_INVALID_ARGUMENT;
    if (const htk_status st = check_point(ctx, R, t, 1.0); st != HTK_OK) return st;
    const htk::Regime r = htk::classify(htk::RadialPoint(R, t), htk::DerivOrder(k1, k2), ctx->thresholds);
    *regime = static_cast<htk_regime>(r.tag);
    *subcase = to_c(r.subcase);
    return HTK_OK;
  });
}

htk_status htk_potential(htk_context* ctx, double s, double R, double t, htk_potential_sample* out) {
  return guarded(ctx, [&] {
    if (out == nullptr) return HTK_ERR_INVALID_ARGUMENT;
    if (const htk_status st = check_point(ctx, R, t, s); st != HTK_OK) return st;
    const auto eval = htk::default_evaluator(ctx->shape, 40.0, ctx->thresholds, ctx->spec);
    const htk::PotentialSample sample = htk::potential(ctx->shape, s, htk::RadialPoint(R, t), eval);
    *out = {R, t, sample.d2, sample.v, sample.ratio};
    return HTK_OK;
  });
}

size_t htk_check_suite_count(void) { return htk::check_suites().size(); }

const char* htk_check_suite_name(size_t index) {
  const auto& names = htk::check_suites();
  return index < names.size() ? names[index].data() : nullptr;
}

htk_status htk_check_run(htk_context* ctx, const char* suite, htk_check_report** out) {
  return guarded(ctx, [&] {
    if (suite == nullptr || out == nullptr) return HTK_ERR_INVALID_ARGUMENT;
    *out = new htk_check_report{htk::run_check(suite)};
    return HTK_OK;
  });
}

size_t htk_check_report_size(const htk_check_report* report) {
  return report == nullptr ? 0 : report->report.items.size();
}

htk_status htk_check_report_item(const htk_check_report* report, size_t index, htk_check_item* out) {
  if (report == nullptr || out == nullptr || index >= report->report.items.size())
    return HTK_ERR_INVALID_ARGUMENT;
  const htk::CheckItem& item = report->report.items[index];
  *out = {item.name.c_str(), item.passed ? 1 : 0, item.worst, item.tolerance, item.detail.c_str()};
  return HTK_OK;
}

int htk_check_report_passed(const htk_check_report* report) {
  return report != nullptr && report->report.passed() ? 1 : 0;
}

void htk_check_report_free(htk_check_report* report) { delete report; }

}  // extern "C"
