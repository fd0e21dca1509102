// Command-line harness over the C interface: eval, sweep, check, potential.
#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "htk/htk.h"

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitTolerance = 3;

using json = nlohmann::ordered_json;

struct Options {
  int n = 1;
  int m = 1;
  int k1 = 0;
  int k2 = 0;
  std::optional<double> x;
  std::optional<double> R;
  double t = 0.0;
  double s = 1.0;
  std::string method = "both";
  std::string ray;
  double ray_param = 0.0;
  std::vector<double> points;
  std::optional<double> rel_tol;
  std::optional<double> abs_tol;
  std::string format;
  bool strict = false;
  int threads = 1;
  std::string suite;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ContextDeleter {
  void operator()(htk_context* c) const { htk_context_free(c); }
};
using Context = std::unique_ptr<htk_context, ContextDeleter>;

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

double log10_of(const htk_logreal& v) { return v.log_abs / std::log(10.0); }

// Plain value, or empty when the magnitude does not fit in a double.
std::string plain_text(const htk_logreal& v) {
  if (v.sign == 0) return "0";
  if (v.log_abs > std::log(1.7976931348623157e308) || v.log_abs < std::log(2.2250738585072014e-308))
    return "";
  return fmt("%.12e", v.sign * std::exp(v.log_abs));
}

json plain_json(const htk_logreal& v) {
  const std::string s = plain_text(v);
  if (s.empty()) return nullptr;
  return v.sign == 0 ? 0.0 : v.sign * std::exp(v.log_abs);
}

Context make_context(const Options& o) {
  Context ctx(htk_context_new());
  if (!ctx) throw std::runtime_error("cannot allocate context");
  if (htk_set_shape(ctx.get(), o.n, o.m) != HTK_OK) throw UsageError(htk_last_error(ctx.get()));
  if (o.rel_tol || o.abs_tol) {
    if (htk_set_tolerances(ctx.get(), o.rel_tol.value_or(1e-10), o.abs_tol.value_or(1e-300)) != HTK_OK)
      throw UsageError(htk_last_error(ctx.get()));
  }
  return ctx;
}

double resolve_R(const Options& o) {
  if (o.x && o.R) throw UsageError("give either --x or --R, not both");
  if (o.R) return *o.R;
  if (o.x) return *o.x * *o.x / 4.0;
  throw UsageError("a point needs --x or --R");
}

struct RadialPair {
  double R;
  double t;
};

RadialPair ray_point(const std::string& ray, double param, double scale) {
  if (ray == "fixed_omega") {
    const double R = scale * scale / 4.0;
    return {R, param * R};
  }
  if (ray == "fixed_delta_vary_kappa") return {scale * param / 2.0, scale / (2.0 * kPi * param)};
  if (ray == "fixed_kappa_vary_delta") return {param * scale / 2.0, param / (2.0 * kPi * scale)};
  if (ray == "regime_iv_ray") {
    const double delta = param / (2.0 * kPi * scale);
    return {param * delta / 2.0, scale};
  }
  throw UsageError("unknown ray: " + ray);
}

void validate_points(const std::vector<double>& points) {
  if (points.empty()) throw UsageError("--points must not be empty");
  for (size_t i = 1; i < points.size(); ++i)
    if (!(points[i] > points[i - 1])) throw UsageError("--points must be strictly increasing");
}

// Runs work(i, ctx) for i in [0, count) on up to `threads` workers, each with its own context.
template <class Work>
void parallel_rows(const Context& base, size_t count, int threads, Work work) {
  const size_t workers = std::max<size_t>(1, std::min<size_t>(threads, count));
  std::atomic<size_t> next{0};
  auto loop = [&] {
    Context ctx(htk_context_clone(base.get()));
    for (size_t i = next++; i < count; i = next++) work(i, ctx.get());
  };
  if (workers == 1) {
    loop();
    return;
  }
  std::vector<std::thread> pool;
  for (size_t w = 0; w < workers; ++w) pool.emplace_back(loop);
  for (auto& th : pool) th.join();
}

// ---------------------------------------------------------------- eval / sweep

struct Row {
  double scale = 0.0;
  double R = 0.0;
  double t = 0.0;
  bool has_oracle = false;
  htk_oracle_result oracle{};
  bool has_asym = false;
  htk_asym_result asym{};
  std::string regime;
  double rel_error = NAN;
  std::string error;
  htk_status status = HTK_OK;
};

void note_error(Row& row, htk_status st, htk_context* ctx) {
  if (row.status == HTK_OK || row.status == HTK_ERR_TOLERANCE) row.status = st;
  if (!row.error.empty()) row.error += "; ";
  row.error += std::string(htk_status_string(st)) + ": " + htk_last_error(ctx);
}

Row compute_row(htk_context* ctx, const Options& o, double scale, double R, double t) {
  Row row;
  row.scale = scale;
  row.R = R;
  row.t = t;
  if (o.method == "oracle" || o.method == "both") {
    const htk_status st = htk_oracle(ctx, R, t, o.k1, o.k2, o.s, &row.oracle);
    row.has_oracle = st == HTK_OK || st == HTK_ERR_TOLERANCE;
    if (st != HTK_OK) note_error(row, st, ctx);
  }
  if (o.method == "asym" || o.method == "both") {
    const htk_status st = htk_asymptotic(ctx, R, t, o.k1, o.k2, o.s, &row.asym);
    row.has_asym = st == HTK_OK;
    if (st == HTK_OK) {
      row.regime = htk_regime_name(row.asym.regime);
      if (row.asym.subcase != HTK_SUBCASE_NONE)
        row.regime += std::string(":") + htk_subcase_name(row.asym.subcase);
    } else if (st == HTK_ERR_UNCLASSIFIABLE) {
      row.regime = "unclassifiable";
    } else {
      note_error(row, st, ctx);
    }
  }
  if (row.has_oracle && row.has_asym) {
    const htk_logreal a = row.asym.value, b = row.oracle.value;
    if (a.sign != 0 && b.sign != 0)
      row.rel_error = std::abs(a.sign * b.sign * std::exp(a.log_abs - b.log_abs) - 1.0);
  }
  return row;
}

const char* kRowColumns[] = {"scale",       "R",          "t",           "oracle_sign",
                             "oracle_log10", "oracle_value", "oracle_rel_error", "oracle_method",
                             "asym_sign",   "asym_log10", "asym_value",  "regime",
                             "rel_error",   "claimed_proxy", "error"};

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += (c == '"') ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

std::vector<std::string> row_fields(const Row& r) {
  auto num = [](double v) { return std::isfinite(v) ? fmt("%.12e", v) : std::string(); };
  std::vector<std::string> f;
  f.push_back(num(r.scale));
  f.push_back(num(r.R));
  f.push_back(num(r.t));
  if (r.has_oracle) {
    f.push_back(std::to_string(r.oracle.value.sign));
    f.push_back(r.oracle.value.sign ? fmt("%.12f", log10_of(r.oracle.value)) : "");
    f.push_back(plain_text(r.oracle.value));
    f.push_back(num(r.oracle.rel_error));
    f.push_back(htk_method_name(r.oracle.method));
  } else {
    f.insert(f.end(), 5, "");
  }
  if (r.has_asym) {
    f.push_back(std::to_string(r.asym.value.sign));
    f.push_back(r.asym.value.sign ? fmt("%.12f", log10_of(r.asym.value)) : "");
    f.push_back(plain_text(r.asym.value));
  } else {
    f.insert(f.end(), 3, "");
  }
  f.push_back(r.regime);
  f.push_back(num(r.rel_error));
  f.push_back(r.has_asym ? num(r.asym.claimed_error) : "");
  f.push_back(r.error);
  return f;
}

json row_json(const Row& r) {
  auto num = [](double v) { return std::isfinite(v) ? json(v) : json(nullptr); };
  json j;
  j["scale"] = num(r.scale);
  j["R"] = r.R;
  j["t"] = r.t;
  if (r.has_oracle) {
    j["oracle_sign"] = r.oracle.value.sign;
    j["oracle_log10"] = r.oracle.value.sign ? json(log10_of(r.oracle.value)) : json(nullptr);
    j["oracle_value"] = plain_json(r.oracle.value);
    j["oracle_rel_error"] = num(r.oracle.rel_error);
    j["oracle_method"] = htk_method_name(r.oracle.method);
  } else {
    for (const char* k : {"oracle_sign", "oracle_log10", "oracle_value", "oracle_rel_error", "oracle_method"})
      j[k] = nullptr;
  }
  if (r.has_asym) {
    j["asym_sign"] = r.asym.value.sign;
    j["asym_log10"] = r.asym.value.sign ? json(log10_of(r.asym.value)) : json(nullptr);
    j["asym_value"] = plain_json(r.asym.value);
  } else {
    for (const char* k : {"asym_sign", "asym_log10", "asym_value"}) j[k] = nullptr;
  }
  j["regime"] = r.regime.empty() ? json(nullptr) : json(r.regime);
  j["rel_error"] = num(r.rel_error);
  j["claimed_proxy"] = r.has_asym ? num(r.asym.claimed_error) : json(nullptr);
  j["error"] = r.error.empty() ? json(nullptr) : json(r.error);
  return j;
}

void emit_rows(const std::vector<Row>& rows, const std::string& format) {
  if (format == "json") {
    json arr = json::array();
    for (const auto& r : rows) arr.push_back(row_json(r));
    std::cout << arr.dump(2) << "\n";
    return;
  }
  std::string header;
  for (const char* c : kRowColumns) header += (header.empty() ? "" : ",") + std::string(c);
  std::cout << header << "\n";
  for (const auto& r : rows) {
    std::string line;
    bool first = true;
    for (const auto& field : row_fields(r)) {
      line += (first ? "" : ",") + csv_escape(field);
      first = false;
    }
    std::cout << line << "\n";
  }
}

void emit_eval_text(const Row& r, const Options& o) {
  std::printf("shape     n=%d m=%d\n", o.n, o.m);
  std::printf("point     R=%.12g |t|=%.12g s=%.12g\n", r.R, r.t, o.s);
  std::printf("order     k1=%d k2=%d\n", o.k1, o.k2);
  if (r.has_oracle)
    std::printf("oracle    %s (log10 %.12f, est. rel. error %.3e, %s)\n",
                plain_text(r.oracle.value).empty() ? "unrepresentable" : plain_text(r.oracle.value).c_str(),
                log10_of(r.oracle.value), r.oracle.rel_error, htk_method_name(r.oracle.method));
  if (r.has_asym)
    std::printf("asym      %s (log10 %.12f, claimed rel. error %.3e)\n",
                plain_text(r.asym.value).empty() ? "unrepresentable" : plain_text(r.asym.value).c_str(),
                log10_of(r.asym.value), r.asym.claimed_error);
  if (!r.regime.empty()) std::printf("regime    %s\n", r.regime.c_str());
  if (std::isfinite(r.rel_error)) std::printf("rel_error %.6e\n", r.rel_error);
  if (!r.error.empty()) std::printf("error     %s\n", r.error.c_str());
}

int row_exit_code(const std::vector<Row>& rows, bool strict) {
  if (!strict) return kExitOk;
  for (const auto& r : rows)
    if (r.status != HTK_OK) return r.status == HTK_ERR_TOLERANCE ? kExitTolerance : kExitUsage;
  return kExitOk;
}

void validate_method(const Options& o) {
  if (o.method != "oracle" && o.method != "asym" && o.method != "both")
    throw UsageError("--method must be oracle, asym or both");
}

int cmd_eval(const Options& o) {
  validate_method(o);
  const Context ctx = make_context(o);
  const double R = resolve_R(o);
  const Row row = compute_row(ctx.get(), o, NAN, R, o.t);
  const std::string format = o.format.empty() ? "text" : o.format;
  if (format == "text") {
    emit_eval_text(row, o);
  } else if (format == "json") {
    std::cout << row_json(row).dump(2) << "\n";
  } else {
    emit_rows({row}, "csv");
  }
  if (row.status != HTK_OK && row.status != HTK_ERR_TOLERANCE && row.status != HTK_ERR_UNCLASSIFIABLE)
    return o.strict ? kExitUsage : kExitOk;
  return row_exit_code({row}, o.strict);
}

int cmd_sweep(const Options& o) {
  validate_method(o);
  if (o.ray.empty()) throw UsageError("sweep needs --ray");
  validate_points(o.points);
  const Context ctx = make_context(o);
  std::vector<RadialPair> pts;
  for (double scale : o.points) pts.push_back(ray_point(o.ray, o.ray_param, scale));
  std::vector<Row> rows(pts.size());
  parallel_rows(ctx, pts.size(), o.threads, [&](size_t i, htk_context* c) {
    rows[i] = compute_row(c, o, o.points[i], pts[i].R, pts[i].t);
  });
  emit_rows(rows, o.format.empty() ? "csv" : o.format);
  return row_exit_code(rows, o.strict);
}

// ---------------------------------------------------------------- potential

int cmd_potential(const Options& o) {
  const Context ctx = make_context(o);
  std::vector<double> scales;
  std::vector<RadialPair> pts;
  if (!o.ray.empty()) {
    validate_points(o.points);
    for (double scale : o.points) {
      scales.push_back(scale);
      pts.push_back(ray_point(o.ray, o.ray_param, scale));
    }
  } else {
    scales.push_back(NAN);
    pts.push_back({resolve_R(o), o.t});
  }
  struct Out {
    htk_potential_sample sample{};
    std::string error;
  };
  std::vector<Out> out(pts.size());
  parallel_rows(ctx, pts.size(), o.threads, [&](size_t i, htk_context* c) {
    const htk_status st = htk_potential(c, o.s, pts[i].R, pts[i].t, &out[i].sample);
    if (st != HTK_OK) {
      out[i].sample = {pts[i].R, pts[i].t, NAN, NAN, NAN};
      out[i].error = std::string(htk_status_string(st)) + ": " + htk_last_error(c);
    }
  });
  const std::string format = o.format.empty() ? "csv" : o.format;
  auto num = [](double v) { return std::isfinite(v) ? fmt("%.12e", v) : std::string(); };
  if (format == "json") {
    json arr = json::array();
    for (size_t i = 0; i < out.size(); ++i) {
      const auto& p = out[i].sample;
      auto jn = [](double v) { return std::isfinite(v) ? json(v) : json(nullptr); };
      arr.push_back({{"scale", jn(scales[i])}, {"R", p.R}, {"t", p.t}, {"s", o.s}, {"d2", jn(p.d2)},
                     {"v", jn(p.v)}, {"ratio", jn(p.ratio)},
                     {"error", out[i].error.empty() ? json(nullptr) : json(out[i].error)}});
    }
    std::cout << arr.dump(2) << "\n";
  } else {
    std::cout << "scale,R,t,s,d2,v,ratio,error\n";
    for (size_t i = 0; i < out.size(); ++i) {
      const auto& p = out[i].sample;
      std::cout << num(scales[i]) << "," << num(p.R) << "," << num(p.t) << "," << num(o.s) << ","
                << num(p.d2) << "," << num(p.v) << "," << num(p.ratio) << ","
                << csv_escape(out[i].error) << "\n";
    }
  }
  if (o.strict)
    for (const auto& e : out)
      if (!e.error.empty()) return kExitUsage;
  return kExitOk;
}

// ---------------------------------------------------------------- check

int cmd_check(const Options& o) {
  const Context ctx = make_context(o);
  htk_check_report* report = nullptr;
  const htk_status st = htk_check_run(ctx.get(), o.suite.c_str(), &report);
  if (st == HTK_ERR_DOMAIN) throw UsageError(htk_last_error(ctx.get()));
  if (st != HTK_OK) throw std::runtime_error(htk_last_error(ctx.get()));
  std::unique_ptr<htk_check_report, void (*)(htk_check_report*)> guard(report, htk_check_report_free);
  const bool json_out = o.format == "json";
  json arr = json::array();
  for (size_t i = 0; i < htk_check_report_size(report); ++i) {
    htk_check_item item{};
    htk_check_report_item(report, i, &item);
    if (json_out) {
      arr.push_back({{"name", item.name}, {"passed", item.passed != 0}, {"worst", item.worst},
                     {"tolerance", item.tolerance}, {"detail", item.detail}});
    } else {
      std::printf("%-4s %-44s worst %.3e (bound %.3e)%s%s\n", item.passed ? "PASS" : "FAIL", item.name,
                  item.worst, item.tolerance, item.detail[0] ? "  " : "", item.detail);
    }
  }
  const bool passed = htk_check_report_passed(report) != 0;
  if (json_out)
    std::cout << json{{"suite", o.suite}, {"passed", passed}, {"checks", arr}}.dump(2) << "\n";
  else
    std::printf("%s: %s\n", o.suite.c_str(), passed ? "all checks passed" : "some checks failed");
  return passed ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Heat kernel evaluation on H-type groups"};
  app.require_subcommand(1);
  Options o;

  app.add_option("--n", o.n, "half the horizontal dimension")->capture_default_str();
  app.add_option("--m", o.m, "dimension of the center")->capture_default_str();
  app.add_option("--k1", o.k1, "derivative order in R")->capture_default_str();
  app.add_option("--k2", o.k2, "derivative order in |t|")->capture_default_str();
  app.add_option("--x", o.x, "|x|");
  app.add_option("--R", o.R, "R = |x|^2/4 (alternative to --x)");
  app.add_option("--t", o.t, "|t|")->capture_default_str();
  app.add_option("--s", o.s, "time scale")->capture_default_str();
  app.add_option("--method", o.method, "oracle, asym or both")->capture_default_str();
  app.add_option("--ray", o.ray,
                 "fixed_omega, fixed_delta_vary_kappa, fixed_kappa_vary_delta or regime_iv_ray");
  app.add_option("--ray-param", o.ray_param, "omega, delta or kappa held fixed along the ray");
  app.add_option("--points", o.points, "comma-separated scale values")->delimiter(',');
  app.add_option("--rel-tol", o.rel_tol, "relative quadrature tolerance");
  app.add_option("--abs-tol", o.abs_tol, "absolute quadrature tolerance");
  app.add_option("--format", o.format, "csv, json (eval also accepts text)")
      ->check(CLI::IsMember({"csv", "json", "text"}));
  app.add_flag("--strict", o.strict, "exit 3 when a tolerance is not met");
  app.add_option("--threads", o.threads, "worker threads for sweeps")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.set_config("--config", "", "key=value file; flags take precedence")->envname("HTK_CONFIG");

  auto* eval = app.add_subcommand("eval", "evaluate one point");
  auto* sweep = app.add_subcommand("sweep", "oracle against expansions along a ray");
  auto* check = app.add_subcommand("check", "run a property suite");
  auto* potential = app.add_subcommand("potential", "Ornstein-Uhlenbeck potential V_s");
  std::vector<std::string> suites;
  for (size_t i = 0; i < htk_check_suite_count(); ++i) suites.emplace_back(htk_check_suite_name(i));
  check->add_option("suite", o.suite, "suite name")->required()->check(CLI::IsMember(suites));
  for (auto* sub : {eval, sweep, check, potential}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*eval) return cmd_eval(o);
    if (*sweep) return cmd_sweep(o);
    if (*check) return cmd_check(o);
    if (*potential) return cmd_potential(o);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
