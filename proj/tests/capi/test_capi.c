/* Exercises the C interface from C: handle lifetimes, status codes and the
 * JSON reports. */
#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "milnor_atlas/milnor_atlas.h"

static int failures = 0;

#define EXPECT(cond)                                                  \
  do {                                                                \
    if (!(cond)) {                                                    \
      fprintf(stderr, "%s:%d: check failed: %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                     \
    }                                                                 \
  } while (0)

static int contains(const char* haystack, const char* needle) {
  return haystack && strstr(haystack, needle) != NULL;
}

static void test_polynomials(void) {
  ma_polynomial* f = NULL;
  EXPECT(ma_polynomial_parse("z1^2 + ~z2", 2, &f) == MA_OK);
  EXPECT(ma_polynomial_nvars(f) == 2);
  EXPECT(ma_polynomial_term_count(f) == 2);

  const double p[4] = {1.0, 0.0, 0.0, 1.0}; /* (1, i) */
  double re = 0.0, im = 0.0;
  EXPECT(ma_polynomial_evaluate(f, p, 2, &re, &im) == MA_OK);
  EXPECT(fabs(re - 1.0) < 1e-15 && fabs(im + 1.0) < 1e-15);
  EXPECT(ma_polynomial_evaluate(f, p, 1, &re, &im) == MA_ERR_DIMENSION_MISMATCH);
  EXPECT(strlen(ma_last_error()) > 0);

  char* text = NULL;
  EXPECT(ma_polynomial_to_string(f, &text) == MA_OK);
  ma_polynomial* g = NULL;
  EXPECT(ma_polynomial_parse(text, 2, &g) == MA_OK);
  EXPECT(ma_polynomial_term_count(g) == 2);
  ma_string_free(text);
  ma_polynomial_free(g);
  ma_polynomial_free(f);

  ma_polynomial* bad = NULL;
  EXPECT(ma_polynomial_parse("z1 +", 1, &bad) == MA_ERR_PARSE);
  EXPECT(bad == NULL);
  EXPECT(contains(ma_last_error(), "position"));
  EXPECT(ma_polynomial_parse_file("", &bad) == MA_ERR_PARSE);
  EXPECT(ma_polynomial_parse_file("# n = 2\nz1*z2\n", &bad) == MA_OK);
  EXPECT(ma_polynomial_nvars(bad) == 2);
  ma_polynomial_free(bad);
  ma_polynomial_free(NULL);
}

static void test_options(void) {
  ma_options* o = ma_options_new();
  EXPECT(o != NULL);
  EXPECT(ma_options_set_double(o, "radius", 0.5) == MA_OK);
  EXPECT(ma_options_set_double(o, "nonsense", 1.0) == MA_ERR_INVALID_ARGUMENT);
  EXPECT(ma_options_set_int(o, "starts", 8) == MA_OK);
  EXPECT(ma_options_set_int(o, "starts", -1) == MA_ERR_INVALID_ARGUMENT);
  EXPECT(ma_options_set_int(NULL, "starts", 8) == MA_ERR_INVALID_ARGUMENT);
  ma_options_free(o);
  ma_options_free(NULL);
}

static void test_commands(void) {
  ma_polynomial *f = NULL, *g = NULL, *h = NULL;
  ma_polynomial_parse("z1^2 + z2^2", 2, &f);
  ma_polynomial_parse("z1^2 - z2^2", 2, &g);
  ma_polynomial_parse("z1", 3, &h);
  ma_options* o = ma_options_new();
  char* json = NULL;

  EXPECT(ma_analyze(f, NULL, &json) == MA_OK);
  EXPECT(contains(json, "\"schema\": \"milnor-atlas/1\""));
  ma_string_free(json);

  const int64_t w[2] = {0, 1};
  ma_options_set_weight(o, w, 2);
  EXPECT(ma_newton(f, o, &json) == MA_ERR_INVALID_ARGUMENT);
  EXPECT(contains(json, "\"ok\": false"));
  ma_string_free(json);

  ma_options_set_int(o, "starts", 8);
  ma_options_set_int(o, "seed", 3);
  EXPECT(ma_singular(f, g, o, &json) == MA_OK);
  EXPECT(contains(json, "\"points\""));
  char* again = NULL;
  EXPECT(ma_singular(f, g, o, &again) == MA_OK);
  EXPECT(json && again && strcmp(json, again) == 0);
  ma_string_free(json);
  ma_string_free(again);

  EXPECT(ma_singular(f, h, o, &json) == MA_ERR_DIMENSION_MISMATCH);
  EXPECT(contains(json, "dimension_mismatch"));
  ma_string_free(json);

  const double p[4] = {0.0, 0.0, 1.0, 0.0};
  ma_options_set_point(o, p, 2);
  ma_options_set_int(o, "check_goodness", 0);
  EXPECT(ma_classify(f, g, o, &json) == MA_OK);
  EXPECT(contains(json, "\"verdict\": \"singular_fold\""));
  ma_string_free(json);

  const double k[4] = {0.70710678118654752, 0.0, 0.0, 0.70710678118654752};
  ma_options_set_point(o, k, 2);
  EXPECT(ma_classify(f, g, o, &json) == MA_ERR_POINT_ON_ZERO_SET);
  EXPECT(contains(json, "point_on_K_f"));
  ma_string_free(json);

  EXPECT(ma_verify("nosuch", NULL, &json) == MA_ERR_UNKNOWN_SUITE);
  ma_string_free(json);
  EXPECT(ma_verify("euler", NULL, &json) == MA_OK);
  EXPECT(contains(json, "\"passed\": true"));
  ma_string_free(json);

  EXPECT(ma_suite_list(&json) == MA_OK);
  EXPECT(contains(json, "prop2-equivalence"));
  ma_string_free(json);

  EXPECT(ma_analyze(NULL, NULL, &json) == MA_ERR_INVALID_ARGUMENT);
  ma_string_free(json);
  EXPECT(strcmp(ma_status_name(MA_ERR_VERIFICATION_FAILED), "verification_failed") == 0);

  ma_options_free(o);
  ma_polynomial_free(f);
  ma_polynomial_free(g);
  ma_polynomial_free(h);
}

int main(void) {
  EXPECT(strlen(ma_version()) > 0);
  test_polynomials();
  test_options();
  test_commands();
  if (failures) {
    fprintf(stderr, "%d check(s) failed\n", failures);
    return 1;
  }
  printf("C interface: all checks passed\n");
  return 0;
}
