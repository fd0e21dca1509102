/* C interface to the heat-kernel library. All functions are reentrant; a
 * context may be used from one thread at a time (clone it for workers). */
#ifndef HTK_H
#define HTK_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(HTK_BUILDING_LIBRARY)
#    define HTK_API __declspec(dllexport)
#  else
#    define HTK_API __declspec(dllimport)
#  endif
#else
#  define HTK_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct htk_context htk_context;
typedef struct htk_check_report htk_check_report;

typedef enum htk_status {
  HTK_OK = 0,
  HTK_ERR_INVALID_ARGUMENT = 1,
  HTK_ERR_DOMAIN = 2,
  HTK_ERR_CONVERGENCE = 3,
  HTK_ERR_OVERFLOW = 4,
  HTK_ERR_UNCLASSIFIABLE = 5,
  /* Output is filled with the best value, but its error estimate exceeds
   * rel_tol times its magnitude. */
  HTK_ERR_TOLERANCE = 6,
  HTK_ERR_INTERNAL = 7
} htk_status;

typedef enum htk_regime { HTK_REGIME_I = 0, HTK_REGIME_II, HTK_REGIME_III, HTK_REGIME_IV } htk_regime;

typedef enum htk_subcase {
  HTK_SUBCASE_NONE = -1,
  HTK_SUBCASE_GENERIC = 0,
  HTK_SUBCASE_OMEGA_TO_0_K2_EVEN,
  HTK_SUBCASE_OMEGA_TO_0_K2_ODD_T_LARGE,
  HTK_SUBCASE_OMEGA_TO_0_K2_ODD_T_BOUNDED,
  HTK_SUBCASE_OMEGA_TO_HALF_PI_K1_EVEN,
  HTK_SUBCASE_OMEGA_TO_HALF_PI_K1_ODD
} htk_subcase;

typedef enum htk_method {
  HTK_METHOD_DIRECT_1D = 0,
  HTK_METHOD_DIRECT_POLAR,
  HTK_METHOD_CONTOUR_M1,
  HTK_METHOD_ODD_REDUCTION,
  HTK_METHOD_DESCENT
} htk_method;

/* sign * exp(log_abs); sign is 0 for an exact zero. */
typedef struct htk_logreal {
  int sign;
  double log_abs;
} htk_logreal;

typedef struct htk_oracle_result {
  htk_logreal value;
  double rel_error; /* estimated relative error */
  htk_method method;
  int converged;
} htk_oracle_result;

typedef struct htk_asym_result {
  htk_logreal value;
  htk_regime regime;
  htk_subcase subcase;
  double claimed_error; /* relative proxy of the stated O-term */
} htk_asym_result;

typedef struct htk_potential_sample {
  double R;
  double t;
  double d2;
  double v;
  double ratio;
} htk_potential_sample;

typedef struct htk_check_item {
  const char* name;
  int passed;
  double worst;
  double tolerance;
  const char* detail;
} htk_check_item;

HTK_API const char* htk_version(void);
HTK_API const char* htk_status_string(htk_status status);
HTK_API const char* htk_regime_name(htk_regime regime);
HTK_API const char* htk_subcase_name(htk_subcase subcase);
HTK_API const char* htk_method_name(htk_method method);

/* New context with n = m = 1 and default tolerances and thresholds. */
HTK_API htk_context* htk_context_new(void);
HTK_API htk_context* htk_context_clone(const htk_context* ctx);
HTK_API void htk_context_free(htk_context* ctx);
/* Message of the last failed call on this context; never NULL. */
HTK_API const char* htk_last_error(const htk_context* ctx);

HTK_API htk_status htk_set_shape(htk_context* ctx, int n, int m);
HTK_API htk_status htk_set_tolerances(htk_context* ctx, double rel_tol, double abs_tol);
HTK_API htk_status htk_set_thresholds(htk_context* ctx, double omega_max, double delta_max,
                                      double kappa_low, double kappa_high, double eps_omega);

/* d(x,t)^2 at R = |x|^2/4 and |t|. */
HTK_API htk_status htk_distance_sq(htk_context* ctx, double R, double t, double* out);

/* p_{s,k1,k2} at (R, |t|): the time scale s > 0 is applied by the scaling relation. */
HTK_API htk_status htk_oracle(htk_context* ctx, double R, double t, int k1, int k2, double s,
                              htk_oracle_result* out);
HTK_API htk_status htk_asymptotic(htk_context* ctx, double R, double t, int k1, int k2, double s,
                                  htk_asym_result* out);
HTK_API htk_status htk_classify(htk_context* ctx, double R, double t, int k1, int k2,
                                htk_regime* regime, htk_subcase* subcase);

/* V_s at (R, |t|), using the oracle below d = 40 and the expansions above. */
HTK_API htk_status htk_potential(htk_context* ctx, double s, double R, double t,
                                 htk_potential_sample* out);

/* Runs a named property suite; the report owns the strings it hands out. */
HTK_API size_t htk_check_suite_count(void);
HTK_API const char* htk_check_suite_name(size_t index);
HTK_API htk_status htk_check_run(htk_context* ctx, const char* suite, htk_check_report** out);
HTK_API size_t htk_check_report_size(const htk_check_report* report);
HTK_API htk_status htk_check_report_item(const htk_check_report* report, size_t index,
                                         htk_check_item* out);
HTK_API int htk_check_report_passed(const htk_check_report* report);
HTK_API void htk_check_report_free(htk_check_report* report);

#ifdef __cplusplus
}
#endif

#endif /* HTK_H */
