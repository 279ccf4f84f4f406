/* C interface to milnor-atlas: mixed polynomials, singular points of the
 * product map (f/|f|, g/|g|) on a sphere, and fold classification.
 *
 * Handles are opaque. Every call returns an ma_status; on failure the
 * message is available from ma_last_error() on the same thread. Command
 * functions always write a JSON report (also on failure) that the caller
 * releases with ma_string_free(). */
#ifndef MILNOR_ATLAS_H
#define MILNOR_ATLAS_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(MILNOR_ATLAS_BUILDING)
#define MA_API __attribute__((visibility("default")))
#else
#define MA_API
#endif

typedef enum ma_status {
  MA_OK = 0,
  MA_ERR_PARSE = 1,
  MA_ERR_INVALID_ARGUMENT = 2,
  MA_ERR_DIMENSION_MISMATCH = 3,
  MA_ERR_ZERO_POLYNOMIAL = 4,
  MA_ERR_POINT_ON_ZERO_SET = 5,
  MA_ERR_HYPOTHESIS_VIOLATION = 6,
  MA_ERR_NOT_PROPORTIONAL = 7,
  MA_ERR_NUMERIC = 8,
  MA_ERR_UNKNOWN_SUITE = 9,
  MA_ERR_VERIFICATION_FAILED = 10,
  MA_ERR_INTERNAL = 11
} ma_status;

typedef struct ma_polynomial ma_polynomial;
typedef struct ma_options ma_options;

MA_API const char* ma_version(void);
MA_API const char* ma_status_name(ma_status status);
/* Message of the last failing call on this thread; "" if none. */
MA_API const char* ma_last_error(void);
MA_API void ma_string_free(char* s);

/* ---- polynomials ---- */

/* Expression in z1..zn and ~z1..~zn (conjugates). */
MA_API ma_status ma_polynomial_parse(const char* text, int n, ma_polynomial** out);
/* File contents with a "# n = <count>" header line. */
MA_API ma_status ma_polynomial_parse_file(const char* content, ma_polynomial** out);
MA_API void ma_polynomial_free(ma_polynomial* f);
MA_API int ma_polynomial_nvars(const ma_polynomial* f);
MA_API size_t ma_polynomial_term_count(const ma_polynomial* f);
/* point holds n complex numbers as interleaved (re, im) pairs. */
MA_API ma_status ma_polynomial_evaluate(const ma_polynomial* f, const double* point, size_t n, double* re,
                                        double* im);
MA_API ma_status ma_polynomial_to_string(const ma_polynomial* f, char** out);

/* ---- options ---- */

MA_API ma_options* ma_options_new(void);
MA_API void ma_options_free(ma_options* o);
/* Keys: radius, tol_dependence, tol_fold, tol_singular, dedup_distance. */
MA_API ma_status ma_options_set_double(ma_options* o, const char* key, double value);
/* Keys: starts, max_iters, seed, threads, witness_budget, classify,
 * check_goodness. */
MA_API ma_status ma_options_set_int(ma_options* o, const char* key, int64_t value);
/* Face weight for ma_newton. */
MA_API ma_status ma_options_set_weight(ma_options* o, const int64_t* w, size_t n);
/* Point for ma_classify, interleaved (re, im). */
MA_API ma_status ma_options_set_point(ma_options* o, const double* point, size_t n);

/* ---- commands (JSON reports) ---- */

MA_API ma_status ma_analyze(const ma_polynomial* f, const ma_options* o, char** json);
MA_API ma_status ma_newton(const ma_polynomial* f, const ma_options* o, char** json);
MA_API ma_status ma_singular(const ma_polynomial* f, const ma_polynomial* g, const ma_options* o, char** json);
MA_API ma_status ma_classify(const ma_polynomial* f, const ma_polynomial* g, const ma_options* o, char** json);
/* Runs one acceptance suite, or every suite for "all". Returns
 * MA_ERR_VERIFICATION_FAILED when a suite fails. */
MA_API ma_status ma_verify(const char* suite, const ma_options* o, char** json);
/* JSON array of {criterion, name, description}. */
MA_API ma_status ma_suite_list(char** json);

#ifdef __cplusplus
}
#endif

#endif
