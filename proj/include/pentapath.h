/* pentapath: variational path optimization for linear pentapods with simple
 * singularity varieties.
 *
 * C interface of the shared library. All objects are opaque handles created
 * and destroyed through this API; every fallible call returns a pp_status
 * and leaves a human-readable message in pp_last_error() on failure.
 */
#ifndef PENTAPATH_H
#define PENTAPATH_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pp_status {
  PP_OK = 0,
  PP_ERROR_INVALID_ARGUMENT = 1,
  PP_ERROR_SCHEMA = 2,          /* configuration rejected by the schema */
  PP_ERROR_INFEASIBLE_PATH = 3, /* initial path singular or outside limits */
  PP_ERROR_DEGENERATE = 4,
  PP_ERROR_IO = 5,
  PP_ERROR_INTERNAL = 6
} pp_status;

typedef struct pp_config pp_config; /* validated run configuration */
typedef struct pp_result pp_result; /* finished optimization run */

unsigned pp_abi_version(void);

/* Message describing the most recent failure on this thread. Never NULL. */
const char* pp_last_error(void);

/* --- configuration ------------------------------------------------------ */

pp_status pp_config_load(const char* filename, pp_config** out);
pp_status pp_config_parse(const char* json_text, pp_config** out);
void pp_config_free(pp_config* cfg);

/* Command-line style overrides applied after loading. */
pp_status pp_config_set_max_iterations(pp_config* cfg, int max_iterations);
pp_status pp_config_set_cover_enabled(pp_config* cfg, int enabled);
pp_status pp_config_set_joints_enabled(pp_config* cfg, int enabled);
pp_status pp_config_set_log_every(pp_config* cfg, int log_every);

/* Deep feasibility check of the configured initial path (builds the design,
 * verifies clearance and joint limits) without running the optimization. */
pp_status pp_validate(const pp_config* cfg);

/* --- optimization ------------------------------------------------------- */

pp_status pp_run(const pp_config* cfg, pp_result** out);
void pp_result_free(pp_result* result);

int pp_result_iteration_count(const pp_result* result); /* accepted iterations */
int pp_result_breakpoint_count(const pp_result* result);
pp_status pp_result_breakpoint(const pp_result* result, int index,
                               double out_pose[6]);
pp_status pp_result_summary(const pp_result* result, double* length,
                            double* total_curvature, double* elapsed_seconds,
                            int* final_breakpoints);

/* Per-iteration record i in [0, pp_result_record_count). Record 0 describes
 * the initial path. Any output pointer may be NULL. */
int pp_result_record_count(const pp_result* result);
pp_status pp_result_record(const pp_result* result, int i, int* iteration,
                           double* objective, double* step, int* breakpoints,
                           double* min_clearance);

/* 1 when the run stopped at a local minimum before the iteration limit. */
int pp_result_converged(const pp_result* result);
const char* pp_result_stop_reason(const pp_result* result);

/* Writes breakpoints.csv, objective.csv, pedals.csv, summary.json and
 * config.json into out_dir (created if missing). */
pp_status pp_result_export(const pp_result* result, const char* out_dir);

/* --- singularity distance queries --------------------------------------- */

typedef struct pp_pedal {
  double point[6];
  int component; /* 1 = hyperplane, 2 = quadric, 3 = singular plane */
  double distance;
} pp_pedal;

/* Pedal points of `pose` on the design's singularity variety, sorted by
 * distance. Writes at most `capacity` entries; *count receives the total. */
pp_status pp_pedals(const pp_config* cfg, const double pose[6], pp_pedal* out,
                    int capacity, int* count);

/* Values of the two component polynomials at a pose (either may be NULL). */
pp_status pp_sigma_values(const pp_config* cfg, const double pose[6],
                          double* f1, double* f2);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* PENTAPATH_H */
