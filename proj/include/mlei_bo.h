/* C interface to the MLEI Bayesian-optimization engine.
 *
 * All functions return MLEI_OK (0) on success, MLEI_ERR_RUNTIME (1) on a
 * runtime failure, or MLEI_ERR_USAGE (2) on caller misuse; on failure
 * mlei_last_error() describes the problem (thread-local).  Objects are
 * created and destroyed through opaque handles; every *_free is safe on
 * NULL.
 */
#ifndef MLEI_BO_H
#define MLEI_BO_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mlei_status {
    MLEI_OK = 0,
    MLEI_ERR_RUNTIME = 1,
    MLEI_ERR_USAGE = 2
} mlei_status;

const char* mlei_version(void);
const char* mlei_last_error(void);

/* ---- prior mean functions ------------------------------------------- */

typedef struct mlei_prior mlei_prior;

mlei_status mlei_prior_zero(mlei_prior** out);
mlei_status mlei_prior_constant(double value, mlei_prior** out);
mlei_status mlei_prior_arm_target(double target_x, double target_y, int link_count, double link_length,
                                  mlei_prior** out);
void mlei_prior_free(mlei_prior* prior);
mlei_status mlei_prior_eval(const mlei_prior* prior, const double* x, size_t dim, double* out);

/* ---- behavior maps (MAP v1 files) ------------------------------------ */

typedef struct mlei_map mlei_map;

mlei_status mlei_map_load(const char* path, mlei_map** out);
mlei_status mlei_map_save(const mlei_map* map, const char* path);
void mlei_map_free(mlei_map* map);
int mlei_map_dim(const mlei_map* map);
int mlei_map_param_dim(const mlei_map* map);
size_t mlei_map_occupied(const mlei_map* map);
size_t mlei_map_total_cells(const mlei_map* map);

/* Tabular prior backed by a copy of the map; empty cells evaluate to
 * fill_value. */
mlei_status mlei_prior_tabular(const mlei_map* map, double fill_value, mlei_prior** out);

/* MAP-Elites over the planar-arm repertoire task: descriptor is the
 * end-effector position, reward favors economical postures.  condition is
 * "intact" or "lock:<joint>[:<angle>]". */
mlei_status mlei_arm_repertoire(const char* condition, int resolution, uint64_t seed, size_t init_count,
                                size_t budget, double mutation_sigma, mlei_map** out);

/* Condition prior for the adaptation benchmark: the repertoire re-scored
 * cell by cell with the reward the condition's kinematics predict for the
 * stored parameters against the target. */
mlei_status mlei_build_adaptation_map(const mlei_map* repertoire, const char* condition, double target_x,
                                      double target_y, mlei_map** out);

/* ---- Gaussian process with a prior mean ------------------------------- */

typedef struct mlei_gp mlei_gp;

mlei_status mlei_gp_new(size_t dim, double signal_sigma, const double* length_scales, double noise_sigma,
                        const mlei_prior* prior, mlei_gp** out);
void mlei_gp_free(mlei_gp* gp);
mlei_status mlei_gp_update(mlei_gp* gp, const double* x, size_t dim, double y);
mlei_status mlei_gp_predict(const mlei_gp* gp, const double* x, size_t dim, double* mean, double* variance);
mlei_status mlei_gp_log_marginal_likelihood(const mlei_gp* gp, double* out);
mlei_status mlei_gp_optimize_hyperparams(mlei_gp* gp, int iterations);
int mlei_gp_size(const mlei_gp* gp);
mlei_status mlei_gp_kernel(const mlei_gp* gp, double* signal_sigma, double* length_scales, double* noise_sigma);
mlei_status mlei_gp_expected_improvement(const mlei_gp* gp, const double* x, size_t dim, double best_observed,
                                         double* out);

/* ---- result tables ---------------------------------------------------- */

typedef struct mlei_table mlei_table;

typedef struct mlei_table_row {
    const char* variant;
    int replicate;
    int episode;
    const char* selected_prior; /* "init" or a prior index */
    double reward;
    double best_so_far;
    double distance;
} mlei_table_row;

size_t mlei_table_rows(const mlei_table* table);
mlei_status mlei_table_get_row(const mlei_table* table, size_t index, mlei_table_row* out);
mlei_status mlei_table_save_csv(const mlei_table* table, const char* path);
mlei_status mlei_table_load_csv(const char* path, mlei_table** out);
void mlei_table_free(mlei_table* table);

size_t mlei_table_variant_count(const mlei_table* table);
const char* mlei_table_variant(const mlei_table* table, size_t index);
int mlei_table_max_episode(const mlei_table* table, const char* variant);

/* Metric is "reward", "best_so_far", or "distance"; episode -1 means the
 * final episode.  Values come back ordered by replicate; *count is set to
 * the number written (capacity permitting) and the required count. */
mlei_status mlei_table_metric_values(const mlei_table* table, const char* variant, const char* metric,
                                     int episode, double* out, size_t capacity, size_t* count);

/* Per-variant, per-episode median / quartiles / extrema of the metric. */
mlei_status mlei_table_write_summary_csv(const mlei_table* table, const char* metric, const char* path);

/* ---- experiments ------------------------------------------------------ */

/* Reaching benchmark.  variants is comma-separated from: mlei, ei_null,
 * ei_const_-7, ei_random_prior. */
mlei_status mlei_arm_experiment(const char* variants, int replicates, int episodes, int init_trials,
                                int hyperopt_iters, uint64_t seed, int jobs, mlei_table** out);

/* Damage-adaptation benchmark over condition repertoires.  selector is
 * "mlei", "random", or "fixed:<index>"; true_condition as for
 * mlei_arm_repertoire. */
mlei_status mlei_adaptation_experiment(const mlei_map* const* maps, size_t n_maps, const char* true_condition,
                                       double target_x, double target_y, const char* selector, int episodes,
                                       int init_trials, int replicates, int hyperopt_iters, uint64_t seed,
                                       int jobs, mlei_table** out);

/* Generic run described by a config file; *out_path receives the config's
 * output path ("" when none), to free with mlei_string_free. */
mlei_status mlei_run_config_file(const char* path, mlei_table** out, char** out_path);
void mlei_string_free(char* s);

/* Custom objective for mlei_bo_run: value of x (dim entries); source is the
 * index of the prior whose proposal is executing. */
typedef double (*mlei_objective_fn)(const double* x, size_t dim, int source, void* user);

mlei_status mlei_bo_run(const double* lo, const double* hi, size_t dim, const mlei_prior* const* priors,
                        size_t n_priors, const char* selector, int episodes, int init_trials,
                        int hyperopt_iters, uint64_t seed, mlei_objective_fn objective, void* user,
                        mlei_table** out);

/* ---- statistics -------------------------------------------------------- */

typedef struct mlei_rank_test {
    double u_statistic;
    double p_value;
    int exact; /* 1 when the p-value came from exact enumeration */
    int n1, n2;
} mlei_rank_test;

/* alternative: "two-sided", "greater", or "less". */
mlei_status mlei_mann_whitney(const double* a, size_t n1, const double* b, size_t n2, const char* alternative,
                              mlei_rank_test* out);

/* 4/3/2/1 stars below 0.0001 / 0.001 / 0.01 / 0.05, else 0. */
int mlei_significance_stars(double p_value);

#ifdef __cplusplus
}
#endif

#endif /* MLEI_BO_H */
