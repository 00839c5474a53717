#ifndef MLEI_MAP_ELITES_HPP
#define MLEI_MAP_ELITES_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "mlei/behavior_map.hpp"
#include "mlei/rng.hpp"

namespace mlei {

struct map_elites_config {
    Eigen::VectorXd grid_lo, grid_hi;
    std::vector<int> grid_resolution;
    std::size_t init_count = 500;      // random seeds before the select/vary loop
    std::size_t budget = 100000;       // total evaluations, init included
    double mutation_sigma = 0.1;       // Gaussian sigma as a fraction of each parameter range
    Eigen::VectorXd param_lo, param_hi;
    std::uint64_t seed = 0;
};

// params -> (descriptor, reward)
using map_elites_eval_fn = std::function<std::pair<Eigen::VectorXd, double>(const Eigen::VectorXd&)>;

// Illumination loop: seed with random parameter vectors, then repeatedly
// pick a random occupied cell, mutate its elite, evaluate, and insert.
// Exactly config.budget evaluations; candidates with non-finite output are
// discarded but still count.  Deterministic given the seed.
behavior_map map_elites_run(const map_elites_config& config, const map_elites_eval_fn& eval_fn);

// Same loop, reporting the map at each requested evaluation count (sorted
// ascending; each checkpoint <= budget).
std::vector<behavior_map> map_elites_run_checkpointed(const map_elites_config& config,
                                                      const map_elites_eval_fn& eval_fn,
                                                      const std::vector<std::size_t>& checkpoints);

} // namespace mlei

#endif
