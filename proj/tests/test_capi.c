/* Exercises the C interface from plain C. */
#include "wetting/wetting.h"

#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

static int failures = 0;

#define EXPECT(cond)                                                    \
  do {                                                                  \
    if (!(cond)) {                                                      \
      fprintf(stderr, "%s:%d: expected %s (%s)\n", __FILE__, __LINE__, \
              #cond, wetting_last_error());                             \
      ++failures;                                                       \
    }                                                                   \
  } while (0)

int main(void) {
  double x = 0.0, err = 0.0;
  size_t n = 0, i;

  EXPECT(strlen(wetting_version()) > 0);

  EXPECT(wetting_lambda("gaussian", 0.5, &x) == WETTING_OK);
  EXPECT(fabs(x - 0.125) < 1e-12);
  EXPECT(wetting_lambda("cauchy", 0.5, &x) == WETTING_ERR_DOMAIN);
  EXPECT(strlen(wetting_last_error()) > 0);
  EXPECT(wetting_lambda(NULL, 0.5, &x) == WETTING_ERR_NULL);

  EXPECT(wetting_k_gap("gaussian", 0.0, 0.0, 2.0, &x) == WETTING_OK);
  EXPECT(fabs(x - log1p(exp(-2.0))) < 1e-12);

  EXPECT(wetting_sigma_sq(3, &x, &err) == WETTING_OK);
  EXPECT(x > 0.25 && x < 0.26);

  {
    wetting_model* m = NULL;
    wetting_chain* c = NULL;
    double* buf;
    EXPECT(wetting_model_create(3, 2, 0.0, 1.0, INFINITY, "gaussian", 1, &m) == WETTING_OK);
    EXPECT(wetting_model_set_boundary(m, 0.0) == WETTING_OK);
    EXPECT(wetting_exact_log_z(m, &x) == WETTING_OK);
    {
      /* one free site N(0, 1/6), hard wall: log(e^h P(0<=phi<=1) + P(phi>1)) */
      const double s = 1.0 / sqrt(6.0);
      const double p1 = 0.5 * erfc(1.0 / s / sqrt(2.0));
      const double pd = 0.5 - p1;
      /* plus h for each of the seven boundary sites of the window at height 0 */
      EXPECT(fabs(x - (7.0 + log(exp(1.0) * pd + p1))) < 1e-10);
    }
    EXPECT(wetting_chain_create(m, 5, &c) == WETTING_OK);
    EXPECT(wetting_chain_sweep(c, 100) == WETTING_OK);
    EXPECT(wetting_chain_site_count(c, &n) == WETTING_OK);
    EXPECT(n == 27);
    buf = malloc(n * sizeof(double));
    EXPECT(wetting_chain_field(c, buf, n - 1) == WETTING_ERR_RANGE);
    EXPECT(wetting_chain_field(c, buf, n) == WETTING_OK);
    for (i = 0; i < n; ++i)
      EXPECT(buf[i] >= 0.0);
    EXPECT(wetting_chain_contact_fraction(c, &x) == WETTING_OK);
    EXPECT(x >= 7.0 / 8.0); /* seven boundary sites at 0 sit in the window */
    free(buf);
    wetting_chain_destroy(c);
    wetting_model_destroy(m);

    m = NULL;
    EXPECT(wetting_model_create(3, 6, 0.0, 0.0, 1.0, "gaussian", 1, &m) == WETTING_OK);
    EXPECT(wetting_exact_log_z(m, &x) == WETTING_ERR_DOMAIN);
    wetting_model_destroy(m);
    EXPECT(wetting_model_create(3, 2, 0.0, 0.0, -1.0, "gaussian", 1, &m) == WETTING_ERR_DOMAIN);
    EXPECT(m == NULL);
  }

  {
    wetting_config* cfg = NULL;
    EXPECT(wetting_config_parse("experiment = kgap\n", NULL, 0, 0, NULL, &cfg) == WETTING_ERR_CONFIG);
    EXPECT(strstr(wetting_last_error(), "seed") != NULL);
    EXPECT(wetting_config_parse("experiment = kgap\n", NULL, 1, 3, "wetting_capi_out", &cfg) == WETTING_OK);
    EXPECT(wetting_run(cfg) == WETTING_OK);
    wetting_config_destroy(cfg);
    EXPECT(wetting_config_load("/nonexistent.ini", NULL, 1, 3, NULL, &cfg) == WETTING_ERR_CONFIG);
  }

  EXPECT(wetting_suite_count() == 8);
  EXPECT(strcmp(wetting_suite_name(0), "oracle") == 0);
  EXPECT(wetting_suite_name(8) == NULL);
  EXPECT(wetting_suite_description(1) != NULL);

  if (failures)
    fprintf(stderr, "%d failure(s)\n", failures);
  else
    printf("all C interface checks passed\n");
  return failures ? 1 : 0;
}
