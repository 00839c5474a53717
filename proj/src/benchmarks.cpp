#include "mlei/benchmarks.hpp"

#include <atomic>
#include <cmath>
#include <thread>

#include "mlei/errors.hpp"
#include "mlei/log.hpp"
#include "mlei/map_elites.hpp"

namespace mlei {

namespace {

constexpr double pi = 3.14159265358979323846;

std::vector<result_row> records_to_rows(const std::string& variant, int replicate,
                                        const std::vector<episode_record>& records)
{
    std::vector<result_row> rows;
    rows.reserve(records.size());
    for (const episode_record& r : records) {
        result_row row;
        row.variant = variant;
        row.replicate = replicate;
        row.episode = r.iteration;
        row.selected_prior =
            r.selected_prior == episode_record::init_marker ? "init" : std::to_string(r.selected_prior);
        row.reward = r.reward;
        row.best_so_far = r.best_so_far;
        row.distance = -r.reward;
        row.per_prior_log_likelihood = r.per_prior_log_likelihood;
        rows.push_back(std::move(row));
    }
    return rows;
}

// Replicates are independent; run them on a small pool and stitch the rows
// back together in replicate order so the output does not depend on the
// job count.
std::vector<result_row> run_replicates(int replicates, int jobs,
                                       const std::function<std::vector<result_row>(int)>& one)
{
    if (jobs <= 0)
        jobs = static_cast<int>(std::thread::hardware_concurrency());
    jobs = std::max(1, std::min(jobs, replicates));

    std::vector<std::vector<result_row>> per_rep(replicates);
    if (jobs == 1) {
        for (int r = 0; r < replicates; ++r) {
            per_rep[r] = one(r);
            log::debug("replicate " + std::to_string(r) + " done");
        }
    } else {
        std::atomic<int> next{0};
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errors(jobs);
        for (int w = 0; w < jobs; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (int r = next.fetch_add(1); r < replicates; r = next.fetch_add(1)) {
                        per_rep[r] = one(r);
                        log::debug("replicate " + std::to_string(r) + " done");
                    }
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
        for (auto& t : pool)
            t.join();
        for (auto& e : errors)
            if (e)
                std::rethrow_exception(e);
    }

    std::vector<result_row> all;
    for (auto& rows : per_rep)
        for (auto& row : rows)
            all.push_back(std::move(row));
    return all;
}

} // namespace

std::vector<prior_mean> build_arm_priors(std::uint64_t seed)
{
    std::vector<prior_mean> priors;
    priors.push_back(prior_mean::zero());
    priors.push_back(prior_mean::arm_target({3.6, 3.3}));
    priors.push_back(prior_mean::arm_target({2.0, 2.0}));
    priors.push_back(prior_mean::arm_target({0.0, 0.0}));
    priors.push_back(prior_mean::arm_target({-3.0, -3.0}));
    rng gen = rng(seed).stream("arm-priors");
    for (int i = 0; i < 5; ++i) {
        const double x = gen.uniform(-3.0, 3.0);
        const double y = gen.uniform(-3.0, 3.0);
        priors.push_back(prior_mean::arm_target({x, y}));
    }
    return priors;
}

std::vector<result_row> run_arm_experiment(const std::string& variant, const arm_experiment_config& config)
{
    std::vector<prior_mean> priors;
    selector_policy selector;
    if (variant == "mlei") {
        priors = build_arm_priors(config.seed);
        selector = selector_policy::mlei_policy();
    } else if (variant == "ei_null") {
        priors.push_back(prior_mean::zero());
        selector = selector_policy::fixed(0);
    } else if (variant == "ei_const_-7") {
        priors.push_back(prior_mean::constant(-7.0));
        selector = selector_policy::fixed(0);
    } else if (variant == "ei_random_prior") {
        priors = build_arm_priors(config.seed);
        selector = selector_policy::random();
    } else {
        throw usage_error("unknown arm variant '" + variant +
                          "' (expected mlei, ei_null, ei_const_-7, or ei_random_prior)");
    }
    if (config.replicates < 1)
        throw usage_error("run_arm_experiment: need at least one replicate");

    log::info("arm experiment: variant " + variant + ", " + std::to_string(config.replicates) +
              " replicates, " + std::to_string(config.episodes) + " episodes");

    const arm_config arm; // intact, target (3,3)
    const objective_fn objective = [&arm](const Eigen::VectorXd& x, int) { return arm_reward(arm, x); };

    const std::uint64_t replicate_root = rng::derive(config.seed, "replicate");
    auto run_one = [&](int r) {
        bo_run_config bo;
        bo.search_space =
            domain::box(Eigen::VectorXd::Constant(5, -pi), Eigen::VectorXd::Constant(5, pi));
        bo.priors = priors;
        bo.selector = selector;
        bo.init_trials = config.init_trials;
        bo.max_iterations = config.episodes;
        // Derived from the root seed and the replicate only, never the
        // variant, so every variant shares the initial-design stream.
        bo.seed = rng::derive(replicate_root, static_cast<std::uint64_t>(r));
        bo.kernel_init = kernel_params::unit(5, 1e-5);
        bo.hyperopt_iters = config.hyperopt_iters;
        return records_to_rows(variant, r, run_bo(bo, objective));
    };
    return run_replicates(config.replicates, config.jobs, run_one);
}

behavior_map build_arm_repertoire(const arm_config& condition, int resolution, std::size_t init_count,
                                  std::size_t budget, double mutation_sigma, std::uint64_t seed)
{
    const double reach = condition.link_count * condition.link_length;
    map_elites_config me;
    me.grid_lo = Eigen::Vector2d(-reach, -reach);
    me.grid_hi = Eigen::Vector2d(reach, reach);
    me.grid_resolution = {resolution, resolution};
    me.init_count = init_count;
    me.budget = budget;
    me.mutation_sigma = mutation_sigma;
    me.param_lo = Eigen::VectorXd::Constant(condition.link_count, condition.joint_lo);
    me.param_hi = Eigen::VectorXd::Constant(condition.link_count, condition.joint_hi);
    me.seed = seed;

    const auto eval = [&condition](const Eigen::VectorXd& params) {
        Eigen::VectorXd descriptor = forward_kinematics(condition, params);
        // Prefer economical postures so each cell keeps a canonical elite.
        const double reward = -params.lpNorm<1>();
        return std::make_pair(std::move(descriptor), reward);
    };
    return map_elites_run(me, eval);
}

arm_config parse_arm_condition(const std::string& text)
{
    arm_config config;
    if (text == "intact")
        return config;
    if (text.rfind("lock:", 0) == 0) {
        const std::string rest = text.substr(5);
        const auto colon = rest.find(':');
        try {
            const int joint = std::stoi(rest.substr(0, colon));
            const double angle = colon == std::string::npos ? 0.0 : std::stod(rest.substr(colon + 1));
            if (joint < 0 || joint >= config.link_count)
                throw usage_error("arm condition: joint index out of range in '" + text + "'");
            config.locked_joints.emplace_back(joint, angle);
            return config;
        } catch (const std::invalid_argument&) {
        } catch (const std::out_of_range&) {
        }
    }
    throw usage_error("arm condition: expected 'intact' or 'lock:<joint>[:<angle>]', got '" + text + "'");
}

behavior_map build_adaptation_map(const behavior_map& repertoire, const arm_config& condition,
                                  const Eigen::Vector2d& target)
{
    arm_config scored_arm = condition;
    scored_arm.target = target;
    behavior_map scored(repertoire.lo(), repertoire.hi(), repertoire.resolution(), repertoire.param_dim());
    for (const behavior_map::cell* c : repertoire.occupied())
        scored.insert(c->descriptor, c->params, arm_reward(scored_arm, c->params));
    return scored;
}

std::vector<result_row> run_map_adaptation_experiment(const map_adaptation_task& task,
                                                      const adaptation_experiment_config& config)
{
    const std::size_t m = task.condition_maps.size();
    if (m < 2)
        throw usage_error("map adaptation: need at least two condition maps");
    if (config.replicates < 1)
        throw usage_error("map adaptation: need at least one replicate");
    const behavior_map& ref = task.condition_maps.front();
    if (ref.occupied_count() == 0)
        throw usage_error("map adaptation: empty condition map");
    for (const behavior_map& map : task.condition_maps) {
        if (map.dim() != ref.dim() || map.resolution() != ref.resolution() || map.lo() != ref.lo() ||
            map.hi() != ref.hi())
            throw usage_error("map adaptation: condition maps must share grid geometry");
        if (map.occupied_count() != ref.occupied_count())
            throw usage_error("map adaptation: condition maps must score the same repertoire cells");
        for (const behavior_map::cell* c : ref.occupied()) {
            const behavior_map::cell* other = map.at(c->index);
            if (!other || other->params != c->params)
                throw usage_error("map adaptation: condition maps must store the same parameters per "
                                  "cell (a shared repertoire)");
        }
    }

    // Search space: the occupied cells, by their centers.
    std::vector<Eigen::VectorXd> cells;
    for (const behavior_map::cell* c : ref.occupied())
        cells.push_back(ref.cell_center(c->index));

    const double reach = task.true_condition.link_count * task.true_condition.link_length;
    std::vector<prior_mean> priors;
    for (const behavior_map& map : task.condition_maps)
        priors.push_back(prior_mean::tabular(map, -2.0 * reach));

    const objective_fn objective = [&task, &ref](const Eigen::VectorXd& x, int) {
        const behavior_map::cell* c = ref.at(ref.cell_of(x));
        if (!c)
            throw runtime_error("map adaptation: selected cell has no stored parameters");
        arm_config true_arm = task.true_condition;
        true_arm.target = task.target;
        return arm_reward(true_arm, c->params);
    };

    const std::string variant = "adapt_" + config.selector.name();
    const std::uint64_t replicate_root = rng::derive(config.seed, "replicate");
    auto run_one = [&](int r) {
        bo_run_config bo;
        bo.search_space = domain::candidates(cells);
        bo.priors = priors;
        bo.selector = config.selector;
        bo.init_trials = config.init_trials;
        bo.max_iterations = config.episodes;
        bo.seed = rng::derive(replicate_root, static_cast<std::uint64_t>(r));
        bo.kernel_init = kernel_params::unit(ref.dim(), 1e-5);
        bo.hyperopt_iters = config.hyperopt_iters;
        return records_to_rows(variant, r, run_bo(bo, objective));
    };
    return run_replicates(config.replicates, config.jobs, run_one);
}

} // namespace mlei
