/*
 * dgmc: one-dimensional discontinuous Galerkin solver for the compressible
 * multicomponent Euler equations, comparing total-energy-based and
 * pressure-based schemes with energy-conservation corrections.
 *
 * C API: opaque handles and integer status codes. All functions are
 * thread-compatible (no shared mutable state between handles); the error
 * string is thread-local.
 */

#ifndef DGMC_H
#define DGMC_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  DGMC_OK = 0,
  DGMC_ERROR = 1,    /* configuration, I/O, or internal failure */
  DGMC_DIVERGED = 2  /* solver divergence (reports still carry data) */
} dgmc_status;

typedef struct dgmc_config dgmc_config;
typedef struct dgmc_report dgmc_report;

/* --- configuration ------------------------------------------------------ */

dgmc_config* dgmc_config_create(void);
void dgmc_config_destroy(dgmc_config* cfg);

/* Applies "key = value" lines from a config file. Returns DGMC_OK or
 * DGMC_ERROR (see dgmc_last_error). */
int dgmc_config_load_file(dgmc_config* cfg, const char* path);

/* Sets one field by key: case, scheme, p, N, cfl, dt, periods, t_end,
 * sample_every_periods, out, label, thermo, integrator, alpha_tol, beta_tol,
 * uniform_tol, T_ref, max_steps, seed. */
int dgmc_config_set(dgmc_config* cfg, const char* key, const char* value);

/* --- execution ----------------------------------------------------------- */

/* Runs one configured case; on DGMC_OK or DGMC_DIVERGED, *out receives a
 * report owned by the caller. Output files are written when the config has
 * an out directory. */
int dgmc_run_case(const dgmc_config* cfg, dgmc_report** out);

/* Runs a sweep over one axis ("grid", "timestep", or "scheme") across the
 * comma-separated values. DGMC_DIVERGED marks a sweep with diverged points
 * (recorded per point; rates use completed points only). */
int dgmc_run_sweep(const dgmc_config* cfg, const char* axis, const char* values,
                   dgmc_report** out);

/* --- reports ------------------------------------------------------------- */

void dgmc_report_destroy(dgmc_report* rep);

/* 0 for a completed run, 2 for a diverged one. */
int dgmc_report_status(const dgmc_report* rep);

/* Fetches a numeric field of the JSON summary by key (for example
 * "max_pressure_error_pct", "conservation_error_pct", "steps",
 * "divergence_time", "l2_combined", "mean_rate"). Returns DGMC_OK when the
 * key exists and is numeric. */
int dgmc_report_metric(const dgmc_report* rep, const char* name, double* value);

/* Borrowed pointer to the JSON summary; valid until the report is destroyed. */
const char* dgmc_report_json(const dgmc_report* rep);

/* --- diagnostics ---------------------------------------------------------- */

/* Thread-local message describing the most recent failure ("" when none). */
const char* dgmc_last_error(void);

const char* dgmc_version(void);

#ifdef __cplusplus
}
#endif

#endif /* DGMC_H */
