#ifndef MLEI_CONFIG_HPP
#define MLEI_CONFIG_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "mlei/benchmarks.hpp"

namespace mlei {

// Experiment description parsed from the flat key=value config format.
// '#' starts a comment; "[variant NAME]" opens a per-variant section.
// Unknown keys are rejected.
struct experiment_config {
    enum class kind { arm, map_adaptation, custom };

    struct variant_spec {
        std::string name;
        std::string selector = "mlei";
        std::vector<std::string> priors; // custom kind only
    };

    kind experiment = kind::arm;
    int replicates = 30;
    int episodes = 20;
    int init_trials = 3;
    int hyperopt_iters = 300;
    std::uint64_t seed = 1;
    int jobs = 1;
    std::string out;

    double kernel_sigma = 1.0;
    double kernel_length_scale = 1.0;
    double kernel_noise = 1e-5;

    // arm kind
    std::vector<std::string> arm_variants{"mlei", "ei_null", "ei_const_-7", "ei_random_prior"};

    // map-adaptation kind
    std::string repertoire_path;
    std::vector<std::string> conditions;
    std::vector<std::string> map_paths;
    std::string true_condition = "intact";
    double target_x = 3.0, target_y = 3.0;

    // custom kind
    std::string objective = "arm-reach"; // arm-reach | sphere
    std::string objective_condition = "intact";
    std::vector<double> domain_lo, domain_hi;
    std::vector<variant_spec> variants; // custom / map-adaptation sections
};

experiment_config parse_experiment_config(std::istream& in);
experiment_config parse_experiment_config_file(const std::string& path);

// Executes the experiment the config describes and returns the rows.
std::vector<result_row> run_experiment(const experiment_config& config);

// "zero" | "constant:<c>" | "arm-target:<x>,<y>" | "map:<path>[:<fill>]"
prior_mean parse_prior_spec(const std::string& text);

} // namespace mlei

#endif
