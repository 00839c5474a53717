#ifndef MLEI_BO_HPP
#define MLEI_BO_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "mlei/acquisition.hpp"
#include "mlei/domain.hpp"
#include "mlei/gp.hpp"
#include "mlei/prior.hpp"
#include "mlei/rng.hpp"

namespace mlei {

// How the prior (model) used for the next evaluation is chosen.
struct selector_policy {
    enum class kind { mlei, fixed_prior, random_prior };
    kind which = kind::mlei;
    int fixed_index = 0;

    static selector_policy mlei_policy() { return {kind::mlei, 0}; }
    static selector_policy fixed(int index) { return {kind::fixed_prior, index}; }
    static selector_policy random() { return {kind::random_prior, 0}; }

    std::string name() const;
    static selector_policy parse(const std::string& text);
};

struct bo_run_config {
    domain search_space = domain::box(Eigen::VectorXd::Zero(1), Eigen::VectorXd::Ones(1));
    std::vector<prior_mean> priors;
    selector_policy selector;
    int init_trials = 3;
    int max_iterations = 20; // total episodes, initial trials included
    std::uint64_t seed = 0;
    kernel_params kernel_init = kernel_params::unit(1, 1e-5);
    int hyperopt_iters = 300;
};

// One line of the experiment log.  selected_prior is -1 for the initial
// random trials.  The per-prior log-likelihoods are the values used at
// selection time (for the initial trials: the likelihood right after the
// observation was added, under the current hyperparameters).
struct episode_record {
    int iteration = 0; // 1-based episode number
    int selected_prior = -1;
    Eigen::VectorXd point;
    double reward = 0.0;
    double best_so_far = 0.0;
    std::vector<double> per_prior_log_likelihood;
    std::vector<double> per_prior_log_eip; // empty for initial trials
    bool degenerate_selection = false;

    static constexpr int init_marker = -1;
};

// Objective under optimization.  The second argument is the index of the
// model whose proposal is being executed (an initial trial passes the
// index drawn for it); objectives that do not care simply ignore it.
using objective_fn = std::function<double(const Eigen::VectorXd&, int)>;

// n points sampled uniformly: per-coordinate uniform on a box, without
// replacement on a finite set (n must not exceed the set size).
std::vector<Eigen::VectorXd> initial_design(const domain& dom, int n, rng& gen);

// Bayesian optimization with one GP per candidate prior.  Every model is
// updated with every observation; each iteration re-optimizes each model's
// hyperparameters, computes its likelihood once, maximizes EI, and lets the
// selector pick which model's proposal to execute.  Deterministic given the
// seed and a deterministic objective.
std::vector<episode_record> run_bo(const bo_run_config& config, const objective_fn& objective);

} // namespace mlei

#endif
