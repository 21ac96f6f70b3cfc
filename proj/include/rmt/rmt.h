/*
 * librmt - eigenangle sampling for the classical compact groups and
 * moments of the log-derivative of their characteristic polynomials at
 * z = 1 - a/N.
 *
 * C API: opaque handles, integer status codes, UTF-8 strings. Every
 * string returned through a char** is heap-allocated and must be released
 * with rmt_string_free. On any non-zero status, rmt_last_error() returns
 * a thread-local message describing the failure.
 */
#ifndef RMT_H
#define RMT_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rmt_status {
    RMT_OK = 0,
    RMT_ERR_USAGE = 1,       /* bad flags, keys, or parameter combinations */
    RMT_ERR_DOMAIN = 2,      /* argument outside mathematical domain */
    RMT_ERR_VALIDITY = 3,    /* K outside the family's theorem range */
    RMT_ERR_SOLVER = 4,      /* eigensolver did not converge */
    RMT_ERR_QUADRATURE = 5,  /* quadrature did not reach tolerance */
    RMT_ERR_SAMPLER = 6,     /* sampler integrity (pairing/failure budget) */
    RMT_ERR_PARSE = 7,       /* malformed config file or value */
    RMT_ERR_INTERNAL = 8
} rmt_status;

/* Experiment configuration, built from key=value settings. */
typedef struct rmt_config rmt_config;

/* Finished run: rows plus formatted CSV/JSON/text renderings. */
typedef struct rmt_report rmt_report;

const char* rmt_version(void);

/* Thread-local message for the most recent failing call. */
const char* rmt_last_error(void);

void rmt_string_free(char* s);

/* ---- configuration -------------------------------------------------- */

rmt_config* rmt_config_new(void);
void rmt_config_free(rmt_config* cfg);

/* Keys: ensemble (u|so-even|so-odd|usp), n, a (repeatable or
 * comma-separated), k, samples, seed, workers, backend (dense|tridiag),
 * cutoff, count, format (csv|json), out. Unknown keys are errors. */
rmt_status rmt_config_set(rmt_config* cfg, const char* key, const char* value);

/* key=value lines; '#' starts a comment. Values already set by
 * rmt_config_set stay as they are only if set again afterwards - load the
 * file first, then apply flag overrides. */
rmt_status rmt_config_load_file(rmt_config* cfg, const char* path);

/* Command line echoed into run records. */
rmt_status rmt_config_set_command(rmt_config* cfg, const char* command);

/* Validates for a subcommand: "sample", "moments", "scan", "decompose". */
rmt_status rmt_config_validate(const rmt_config* cfg, const char* subcommand);

/* ---- runs ------------------------------------------------------------ */

/* CSV dump of sorted eigenangle draws, one row per draw. */
rmt_status rmt_sample_csv(const rmt_config* cfg, char** out_csv);

rmt_status rmt_run_moments(const rmt_config* cfg, rmt_report** out);
rmt_status rmt_run_scan(const rmt_config* cfg, rmt_report** out);
rmt_status rmt_run_decompose(const rmt_config* cfg, rmt_report** out);

/* Verification suites (gamma/integral consistency, integer moments,
 * oracle agreement, density validation, decomposition identity).
 * quick != 0 runs the reduced fast subset. */
rmt_status rmt_verify(int quick, const char* command_echo, rmt_report** out);

/* ---- reports --------------------------------------------------------- */

/* Borrowed pointers, valid until rmt_report_free. */
const char* rmt_report_csv(const rmt_report* report);
const char* rmt_report_json(const rmt_report* report);
const char* rmt_report_text(const rmt_report* report);
/* 1 when every embedded check passed (verify) or the run completed
 * without failed checks; 0 otherwise. */
int rmt_report_passed(const rmt_report* report);
void rmt_report_free(rmt_report* report);

/* ---- scalar queries --------------------------------------------------- */

/* Leading-order predicted moment E|P'/P(1-a/N)|^K. */
rmt_status rmt_predict(const char* ensemble, int n, double a, double k,
                       double* out_value);

/* Integer-moment formula value (unitary k is the half-order: the formula
 * gives the 2k-th moment). */
rmt_status rmt_integer_moment(const char* ensemble, int k_int, int n, double a,
                              double* out_value);

/* Numerical evaluation of the theorem limit integral. */
rmt_status rmt_limit_integral(const char* ensemble, int n, double a, double k,
                              double* out_value);

#ifdef __cplusplus
}
#endif

#endif /* RMT_H */
