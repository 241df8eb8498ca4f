/* C interface to the Dirac bag solver.
 *
 * All objects are opaque handles owned by the caller and released with the
 * matching *_destroy function. Every call returns a dbag_status; on failure
 * dbag_last_error() describes the problem for the calling thread.
 */
#ifndef DIRACBAG_DIRACBAG_H
#define DIRACBAG_DIRACBAG_H

#include <stddef.h>

#if defined(_WIN32) && defined(DBAG_BUILDING_LIBRARY)
#define DBAG_API __declspec(dllexport)
#elif defined(_WIN32)
#define DBAG_API __declspec(dllimport)
#else
#define DBAG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dbag_status {
  DBAG_OK = 0,
  DBAG_ERR_NULL = 1,     /* required pointer argument was NULL */
  DBAG_ERR_DOMAIN = 2,   /* parameter outside its domain */
  DBAG_ERR_USAGE = 3,    /* invalid combination of arguments */
  DBAG_ERR_NUMERIC = 4,  /* integrator or eigensolver failure */
  DBAG_ERR_INTERNAL = 5, /* self-consistency check failed */
  DBAG_ERR_RANGE = 6     /* index out of range / buffer too small */
} dbag_status;

typedef struct dbag_config {
  double a;      /* half-width, > 0 */
  double mass;   /* >= 0 */
  double lambda; /* slope of V(x) = lambda x */
} dbag_config;

typedef enum dbag_prescription {
  DBAG_PAULI = 0,  /* exclude occupied (negative-energy) intermediate states */
  DBAG_FEYNMAN = 1 /* include every intermediate state */
} dbag_prescription;

typedef struct dbag_spectrum_s *dbag_spectrum;
typedef struct dbag_report_s *dbag_report;
typedef struct dbag_output_s *dbag_output;

DBAG_API const char *dbag_version(void);
DBAG_API const char *dbag_last_error(void);
DBAG_API const char *dbag_status_string(dbag_status status);

/* eps_n = (2n+1) pi/(4a) for n = n_lo..n_hi into out[0..capacity). */
DBAG_API dbag_status dbag_massless_levels(double a, int n_lo, int n_hi,
                                          double *out, size_t capacity);

/* Shooting eigensolver. */
DBAG_API dbag_status dbag_find_levels(const dbag_config *cfg, double e_min,
                                      double e_max, double tol,
                                      dbag_spectrum *out);
DBAG_API size_t dbag_spectrum_size(dbag_spectrum spectrum);
/* index and energy may be NULL when not wanted. */
DBAG_API dbag_status dbag_spectrum_level(dbag_spectrum spectrum, size_t i,
                                         int *index, double *energy);
/* Real spinor (u, v) of mode i at x, |x| <= a. */
DBAG_API dbag_status dbag_spectrum_eval(dbag_spectrum spectrum, size_t i,
                                        double x, double *u, double *v);
DBAG_API void dbag_spectrum_destroy(dbag_spectrum spectrum);

DBAG_API dbag_status dbag_exact_shift(const dbag_config *cfg, int level,
                                      double *out);
DBAG_API dbag_status dbag_first_order(const dbag_config *cfg, int level,
                                      double *out);

/* Second-order shifts of the ground state under both prescriptions plus the
 * exact shift. tol <= 0 selects the default Cauchy tolerance. */
DBAG_API dbag_status dbag_compare(const dbag_config *cfg, int cutoff,
                                  double tol, dbag_report *out);
/* value and converged may be NULL. */
DBAG_API dbag_status dbag_report_second_order(dbag_report report,
                                              dbag_prescription p,
                                              double *value, int *converged);
DBAG_API dbag_status dbag_report_exact(dbag_report report, double *value);
DBAG_API dbag_status dbag_report_first_order(dbag_report report, double *value);
/* Number of partial sums; copies min(count, capacity) into out. */
DBAG_API dbag_status dbag_report_partial_sums(dbag_report report,
                                              dbag_prescription p, double *out,
                                              size_t capacity, size_t *count);
DBAG_API void dbag_report_destroy(dbag_report report);

/* Command-line style runs producing a serialized OutputRecord. */
typedef struct dbag_run_config {
  const char *command;      /* spectrum | shift | compare | convergence */
  dbag_config model;
  int has_window;
  double window_lo, window_hi;
  int levels;               /* <= 0: unset */
  int cutoff;
  int has_tol;
  double tol;
  const char *prescription; /* feynman | pauli, NULL = feynman */
  const char *format;       /* json | csv, NULL = json */
} dbag_run_config;

DBAG_API void dbag_run_config_init(dbag_run_config *cfg);

/* Validates, runs and renders. On DBAG_ERR_NUMERIC / DBAG_ERR_INTERNAL an
 * output carrying the diagnostic payload is still returned through *out.
 * Validation failures return DBAG_ERR_USAGE with *out = NULL. */
DBAG_API dbag_status dbag_run(const dbag_run_config *cfg, dbag_output *out);
/* "" for a NULL handle. */
DBAG_API const char *dbag_output_text(dbag_output output);
DBAG_API size_t dbag_output_length(dbag_output output);
DBAG_API void dbag_output_destroy(dbag_output output);

#ifdef __cplusplus
}
#endif

#endif /* DIRACBAG_DIRACBAG_H */
