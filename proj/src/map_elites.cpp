#include "mlei/map_elites.hpp"

#include <cmath>

#include "mlei/errors.hpp"

namespace mlei {

namespace {

void check(const map_elites_config& c)
{
    if (c.budget < c.init_count)
        throw usage_error("map_elites: budget must cover the initial random evaluations");
    if (c.init_count < 1)
        throw usage_error("map_elites: need at least one initial evaluation");
    if (!(c.mutation_sigma > 0.0))
        throw usage_error("map_elites: mutation sigma must be positive");
    if (c.param_lo.size() != c.param_hi.size() || c.param_lo.size() == 0)
        throw usage_error("map_elites: bad parameter bounds");
    if (((c.param_hi - c.param_lo).array() <= 0.0).any())
        throw usage_error("map_elites: parameter bounds must have positive width");
}

} // namespace

std::vector<behavior_map> map_elites_run_checkpointed(const map_elites_config& config,
                                                      const map_elites_eval_fn& eval_fn,
                                                      const std::vector<std::size_t>& checkpoints)
{
    check(config);
    const int p = static_cast<int>(config.param_lo.size());
    behavior_map map(config.grid_lo, config.grid_hi, config.grid_resolution, p);

    rng gen = rng(config.seed).stream("map-elites");
    const Eigen::VectorXd range = config.param_hi - config.param_lo;

    std::vector<behavior_map> snapshots;
    auto maybe_snapshot = [&](std::size_t evals) {
        for (std::size_t c : checkpoints)
            if (c == evals)
                snapshots.push_back(map);
    };

    auto try_insert = [&](const Eigen::VectorXd& params) {
        auto [descriptor, reward] = eval_fn(params);
        if (!descriptor.allFinite() || !std::isfinite(reward))
            return; // discarded, evaluation still counted by the caller
        map.insert(descriptor, params, reward);
    };

    std::size_t evals = 0;
    maybe_snapshot(evals);
    for (; evals < config.init_count; ) {
        Eigen::VectorXd params(p);
        for (int j = 0; j < p; ++j)
            params(j) = gen.uniform(config.param_lo(j), config.param_hi(j));
        try_insert(params);
        ++evals;
        maybe_snapshot(evals);
    }

    while (evals < config.budget) {
        // The initialization phase leaves the map empty only if every
        // evaluation was non-finite; bail out rather than spin forever.
        if (map.occupied_count() == 0)
            throw runtime_error("map_elites: no cell could be filled during initialization");
        const auto cells = map.occupied();
        const behavior_map::cell* parent = cells[gen.uniform_index(cells.size())];
        Eigen::VectorXd params = parent->params;
        for (int j = 0; j < p; ++j) {
            params(j) += gen.normal(0.0, config.mutation_sigma * range(j));
            params(j) = std::min(std::max(params(j), config.param_lo(j)), config.param_hi(j));
        }
        try_insert(params);
        ++evals;
        maybe_snapshot(evals);
    }
    snapshots.push_back(std::move(map));
    return snapshots;
}

behavior_map map_elites_run(const map_elites_config& config, const map_elites_eval_fn& eval_fn)
{
    return std::move(map_elites_run_checkpointed(config, eval_fn, {}).back());
}

} // namespace mlei
