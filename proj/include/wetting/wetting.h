/* C interface to the wetting library. All functions return a wetting_status;
 * on failure wetting_last_error() holds a message for the calling thread. */
#ifndef WETTING_WETTING_H
#define WETTING_WETTING_H

#include <stddef.h>
#include <stdint.h>

#if defined(WETTING_BUILDING_LIBRARY)
#define WETTING_API __attribute__((visibility("default")))
#else
#define WETTING_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum wetting_status {
  WETTING_OK = 0,
  WETTING_ERR_DOMAIN = 1,      /* parameter outside its domain */
  WETTING_ERR_CONFIG = 2,      /* unreadable or invalid configuration */
  WETTING_ERR_IO = 3,          /* file system failure */
  WETTING_ERR_NUMERICAL = 4,   /* quadrature or solver did not converge */
  WETTING_ERR_COUPLING = 5,    /* monotone coupling broke */
  WETTING_ERR_NULL = 6,        /* null handle or output pointer */
  WETTING_ERR_RANGE = 7,       /* index or buffer size out of range */
  WETTING_ERR_INVARIANT = 8,   /* a suite finished with a failed invariant */
  WETTING_ERR_INTERNAL = 99
} wetting_status;

typedef struct wetting_model wetting_model;   /* parameters of one model */
typedef struct wetting_chain wetting_chain;   /* Gibbs chain on a box */
typedef struct wetting_config wetting_config; /* parsed run configuration */

WETTING_API const char* wetting_version(void);
/* Message of the last failed call on this thread ("" if none). */
WETTING_API const char* wetting_last_error(void);

/* Disorder laws: "gaussian", "bernoulli", "exponential". */
WETTING_API wetting_status wetting_lambda(const char* law, double beta, double* out);
/* sigma_d^2, the variance of the infinite-volume free field at a site. */
WETTING_API wetting_status wetting_sigma_sq(int dim, double* value, double* error);
WETTING_API wetting_status wetting_k_gap(const char* law, double beta, double h, double k, double* out);

/* Model. k = INFINITY gives the hard wall. Boundary is constant at height u. */
WETTING_API wetting_status wetting_model_create(int dim, int side, double beta, double h, double k,
                                                const char* law, uint64_t disorder_seed,
                                                wetting_model** out);
WETTING_API wetting_status wetting_model_set_boundary(wetting_model* model, double u);
WETTING_API wetting_status wetting_model_set_centered(wetting_model* model, int centered);
WETTING_API void wetting_model_destroy(wetting_model* model);

/* log Z by quadrature; at most three interior sites. */
WETTING_API wetting_status wetting_exact_log_z(const wetting_model* model, double* out);

/* Chain started at max(boundary, 0) + 1 on the interior. */
WETTING_API wetting_status wetting_chain_create(const wetting_model* model, uint64_t seed,
                                                wetting_chain** out);
WETTING_API wetting_status wetting_chain_sweep(wetting_chain* chain, uint64_t sweeps);
WETTING_API wetting_status wetting_chain_site_count(const wetting_chain* chain, size_t* out);
/* Copies every site value (row-major over coordinates) into buf. */
WETTING_API wetting_status wetting_chain_field(const wetting_chain* chain, double* buf, size_t len);
WETTING_API wetting_status wetting_chain_contact_fraction(const wetting_chain* chain, double* out);
WETTING_API void wetting_chain_destroy(wetting_chain* chain);

/* Configuration. Overrides may be NULL; seed is used when has_seed != 0. */
WETTING_API wetting_status wetting_config_load(const char* path, const char* suite, int has_seed,
                                               uint64_t seed, const char* output_dir,
                                               wetting_config** out);
WETTING_API wetting_status wetting_config_parse(const char* text, const char* suite, int has_seed,
                                                uint64_t seed, const char* output_dir,
                                                wetting_config** out);
WETTING_API void wetting_config_destroy(wetting_config* config);

/* Runs the configured suite and writes results.csv and manifest.json.
 * Notes and failures are printed to stderr. WETTING_ERR_INVARIANT when an
 * invariant failed (outputs are still written). */
WETTING_API wetting_status wetting_run(const wetting_config* config);

WETTING_API size_t wetting_suite_count(void);
WETTING_API const char* wetting_suite_name(size_t index);
WETTING_API const char* wetting_suite_description(size_t index);

#ifdef __cplusplus
}
#endif

#endif
