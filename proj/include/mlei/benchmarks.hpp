#ifndef MLEI_BENCHMARKS_HPP
#define MLEI_BENCHMARKS_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "mlei/arm.hpp"
#include "mlei/behavior_map.hpp"
#include "mlei/bo.hpp"
#include "mlei/prior.hpp"

namespace mlei {

// One CSV row of an experiment log.
struct result_row {
    std::string variant;
    int replicate = 0;
    int episode = 0;
    std::string selected_prior; // "init" or the prior index
    double reward = 0.0;
    double best_so_far = 0.0;
    double distance = 0.0; // -reward for the reaching tasks
    std::vector<double> per_prior_log_likelihood; // not serialized to CSV
};

// The ten reaching priors: the null prior, four fixed targets, and five
// targets drawn once from [-3,3]^2 with the given seed.
std::vector<prior_mean> build_arm_priors(std::uint64_t seed);

struct arm_experiment_config {
    int replicates = 30;
    int episodes = 20;
    int init_trials = 3;
    int hyperopt_iters = 300;
    std::uint64_t seed = 1;
    int jobs = 1;
};

// The reaching benchmark: 5-DOF arm, target (3,3), four selector variants.
// Valid variant names: mlei, ei_null, ei_const_-7, ei_random_prior.  All
// variants share the per-replicate initial-design stream so differences
// isolate the selector.
std::vector<result_row> run_arm_experiment(const std::string& variant, const arm_experiment_config& config);

// Damage-adaptation benchmark over a shared repertoire: the search space is
// the set of occupied grid cells, every cell stores one canonical parameter
// vector (the same across condition maps), and each condition map scores
// that cell with the reward its kinematics predict for replaying those
// parameters against the task target.  Executing a cell replays its stored
// parameters on the true (possibly damaged) arm.
struct map_adaptation_task {
    std::vector<behavior_map> condition_maps;
    std::vector<std::string> condition_names;
    arm_config true_condition;
    Eigen::Vector2d target{3.0, 3.0};
};

// Condition prior for the adaptation task: the repertoire re-scored cell by
// cell with the reward condition's kinematics predict for the stored
// parameters, -|FWD_condition(params) - target|.
behavior_map build_adaptation_map(const behavior_map& repertoire, const arm_config& condition,
                                  const Eigen::Vector2d& target);

struct adaptation_experiment_config {
    int replicates = 30;
    int episodes = 15;
    int init_trials = 3;
    int hyperopt_iters = 300;
    std::uint64_t seed = 1;
    int jobs = 1;
    selector_policy selector = selector_policy::mlei_policy();
};

std::vector<result_row> run_map_adaptation_experiment(const map_adaptation_task& task,
                                                      const adaptation_experiment_config& config);

// Repertoire generation for one arm condition: descriptor = end-effector
// position on a [-5,5]^2 grid, reward = -sum |angle| (cheap postures win).
behavior_map build_arm_repertoire(const arm_config& condition, int resolution, std::size_t init_count,
                                  std::size_t budget, double mutation_sigma, std::uint64_t seed);

// "intact" or "lock:<joint>" / "lock:<joint>:<angle>" -> arm damage model.
arm_config parse_arm_condition(const std::string& text);

} // namespace mlei

#endif
