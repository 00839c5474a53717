// Command-line front end; all functionality comes through the C API.
#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mlei_bo.h"

namespace {

int as_exit_code(mlei_status status)
{
    if (status != MLEI_OK)
        std::fprintf(stderr, "error: %s\n", mlei_last_error());
    return static_cast<int>(status);
}

std::vector<std::string> split_commas(const std::string& s)
{
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        auto comma = s.find(',', start);
        std::string tok = s.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        if (!tok.empty())
            out.push_back(tok);
        if (comma == std::string::npos)
            break;
        start = comma + 1;
    }
    return out;
}

bool parse_target(const std::string& s, double& x, double& y)
{
    const auto parts = split_commas(s);
    if (parts.size() != 2)
        return false;
    try {
        std::size_t p1 = 0, p2 = 0;
        x = std::stod(parts[0], &p1);
        y = std::stod(parts[1], &p2);
        return p1 == parts[0].size() && p2 == parts[1].size();
    } catch (const std::exception&) {
        return false;
    }
}

void print_table_csv(const mlei_table* table)
{
    std::printf("variant,replicate,episode,selected_prior,reward,best_so_far,distance\n");
    const size_t n = mlei_table_rows(table);
    for (size_t i = 0; i < n; ++i) {
        mlei_table_row row;
        if (mlei_table_get_row(table, i, &row) != MLEI_OK)
            return;
        std::printf("%s,%d,%d,%s,%.17g,%.17g,%.17g\n", row.variant, row.replicate, row.episode,
                    row.selected_prior, row.reward, row.best_so_far, row.distance);
    }
}

struct bench_arm_options {
    std::string variants = "mlei,ei_null,ei_const_-7,ei_random_prior";
    int replicates = 30;
    int episodes = 20;
    int init_trials = 3;
    int hyperopt_iters = 300;
    std::uint64_t seed = 1;
    int jobs = 1;
    std::string out;
};

int run_bench_arm(const bench_arm_options& opt)
{
    mlei_table* table = nullptr;
    mlei_status status = mlei_arm_experiment(opt.variants.c_str(), opt.replicates, opt.episodes,
                                             opt.init_trials, opt.hyperopt_iters, opt.seed, opt.jobs, &table);
    if (status != MLEI_OK)
        return as_exit_code(status);
    status = mlei_table_save_csv(table, opt.out.c_str());
    mlei_table_free(table);
    return as_exit_code(status);
}

struct gen_map_options {
    std::string condition = "intact";
    int resolution = 20;
    std::uint64_t init_count = 500;
    std::uint64_t budget = 100000;
    double sigma = 0.1;
    std::uint64_t seed = 1;
    std::string out;
};

int run_gen_map(const gen_map_options& opt)
{
    mlei_map* map = nullptr;
    mlei_status status = mlei_arm_repertoire(opt.condition.c_str(), opt.resolution, opt.seed, opt.init_count,
                                             opt.budget, opt.sigma, &map);
    if (status != MLEI_OK)
        return as_exit_code(status);
    std::fprintf(stderr, "map: %zu / %zu cells occupied\n", mlei_map_occupied(map), mlei_map_total_cells(map));
    status = mlei_map_save(map, opt.out.c_str());
    mlei_map_free(map);
    return as_exit_code(status);
}

struct adapt_options {
    std::string repertoire;
    std::string conditions;
    std::string priors;
    std::string true_condition = "intact";
    std::string target = "3,3";
    std::string selector = "mlei";
    int episodes = 15;
    int init_trials = 3;
    int replicates = 30;
    int hyperopt_iters = 300;
    std::uint64_t seed = 1;
    int jobs = 1;
    std::string out;
};

int run_adapt(const adapt_options& opt)
{
    double tx = 0, ty = 0;
    if (!parse_target(opt.target, tx, ty)) {
        std::fprintf(stderr, "error: --target expects 'x,y', got '%s'\n", opt.target.c_str());
        return 2;
    }

    std::vector<mlei_map*> maps;
    auto cleanup = [&maps] {
        for (mlei_map* m : maps)
            mlei_map_free(m);
    };

    if (!opt.repertoire.empty()) {
        // Build one prediction map per condition from a shared repertoire.
        const auto conds = split_commas(opt.conditions);
        if (conds.size() < 2) {
            std::fprintf(stderr, "error: --conditions expects at least two of intact|lock:<joint>[:<angle>]\n");
            return 2;
        }
        mlei_map* repertoire = nullptr;
        mlei_status status = mlei_map_load(opt.repertoire.c_str(), &repertoire);
        if (status != MLEI_OK)
            return as_exit_code(status);
        for (const auto& cond : conds) {
            mlei_map* scored = nullptr;
            status = mlei_build_adaptation_map(repertoire, cond.c_str(), tx, ty, &scored);
            if (status != MLEI_OK) {
                mlei_map_free(repertoire);
                cleanup();
                return as_exit_code(status);
            }
            maps.push_back(scored);
        }
        mlei_map_free(repertoire);
    } else {
        const auto paths = split_commas(opt.priors);
        if (paths.empty()) {
            std::fprintf(stderr,
                         "error: give either --repertoire with --conditions, or --priors with prediction maps\n");
            return 2;
        }
        for (const auto& path : paths) {
            mlei_map* map = nullptr;
            const mlei_status status = mlei_map_load(path.c_str(), &map);
            if (status != MLEI_OK) {
                cleanup();
                return as_exit_code(status);
            }
            maps.push_back(map);
        }
    }

    mlei_table* table = nullptr;
    mlei_status status = mlei_adaptation_experiment(
        const_cast<const mlei_map* const*>(maps.data()), maps.size(), opt.true_condition.c_str(), tx, ty,
        opt.selector.c_str(), opt.episodes, opt.init_trials, opt.replicates, opt.hyperopt_iters, opt.seed,
        opt.jobs, &table);
    cleanup();
    if (status != MLEI_OK)
        return as_exit_code(status);
    status = mlei_table_save_csv(table, opt.out.c_str());
    mlei_table_free(table);
    return as_exit_code(status);
}

struct stats_options {
    std::string in;
    std::string metric = "best_so_far";
    int at_episode = -1;
    std::string alternative = "two-sided";
    std::vector<std::string> pairs; // flattened (a, b) pairs
    std::string out;
};

int run_stats(const stats_options& opt)
{
    mlei_table* table = nullptr;
    mlei_status status = mlei_table_load_csv(opt.in.c_str(), &table);
    if (status != MLEI_OK)
        return as_exit_code(status);

    if (!opt.out.empty()) {
        status = mlei_table_write_summary_csv(table, opt.metric.c_str(), opt.out.c_str());
        if (status != MLEI_OK) {
            mlei_table_free(table);
            return as_exit_code(status);
        }
    }

    std::vector<std::string> pairs = opt.pairs;
    if (pairs.empty()) {
        const size_t n = mlei_table_variant_count(table);
        for (size_t i = 0; i < n; ++i)
            for (size_t j = i + 1; j < n; ++j) {
                pairs.emplace_back(mlei_table_variant(table, i));
                pairs.emplace_back(mlei_table_variant(table, j));
            }
    }

    auto fetch = [&](const std::string& variant, std::vector<double>& values) -> mlei_status {
        size_t count = 0;
        mlei_status s =
            mlei_table_metric_values(table, variant.c_str(), opt.metric.c_str(), opt.at_episode, nullptr, 0, &count);
        if (s != MLEI_OK)
            return s;
        values.resize(count);
        return mlei_table_metric_values(table, variant.c_str(), opt.metric.c_str(), opt.at_episode,
                                        values.data(), values.size(), &count);
    };

    for (std::size_t k = 0; k + 1 < pairs.size(); k += 2) {
        std::vector<double> a, b;
        status = fetch(pairs[k], a);
        if (status == MLEI_OK)
            status = fetch(pairs[k + 1], b);
        if (status != MLEI_OK) {
            mlei_table_free(table);
            return as_exit_code(status);
        }
        mlei_rank_test test;
        status = mlei_mann_whitney(a.data(), a.size(), b.data(), b.size(), opt.alternative.c_str(), &test);
        if (status != MLEI_OK) {
            mlei_table_free(table);
            return as_exit_code(status);
        }
        const int stars = mlei_significance_stars(test.p_value);
        std::printf("%s vs %s [%s%s]: U=%g n1=%d n2=%d p=%.6g (%s) %s\n", pairs[k].c_str(),
                    pairs[k + 1].c_str(), opt.metric.c_str(),
                    opt.at_episode < 0 ? ", final episode" : (" @ episode " + std::to_string(opt.at_episode)).c_str(),
                    test.u_statistic, test.n1, test.n2, test.p_value, test.exact ? "exact" : "approx",
                    stars ? std::string(static_cast<std::size_t>(stars), '*').c_str() : "ns");
    }
    mlei_table_free(table);
    return 0;
}

struct bo_options {
    std::string config;
    std::string out;
};

int run_bo_cmd(const bo_options& opt)
{
    mlei_table* table = nullptr;
    char* config_out = nullptr;
    mlei_status status = mlei_run_config_file(opt.config.c_str(), &table, &config_out);
    if (status != MLEI_OK)
        return as_exit_code(status);
    std::string out = !opt.out.empty() ? opt.out : (config_out ? config_out : "");
    mlei_string_free(config_out);
    if (out.empty()) {
        print_table_csv(table);
    } else {
        status = mlei_table_save_csv(table, out.c_str());
    }
    mlei_table_free(table);
    return as_exit_code(status);
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Bayesian optimization with automatic prior selection (MLEI)"};
    app.require_subcommand(1);
    app.footer("Diagnostics: set MLEI_BO_LOG=info or debug (results are unaffected).");

    bench_arm_options bench;
    auto* cmd_bench = app.add_subcommand("bench-arm", "Run the planar-arm reaching benchmark");
    cmd_bench->add_option("--variants", bench.variants,
                          "Comma-separated: mlei, ei_null, ei_const_-7, ei_random_prior");
    cmd_bench->add_option("--replicates", bench.replicates, "Independent replicates");
    cmd_bench->add_option("--episodes", bench.episodes, "Total episodes per replicate");
    cmd_bench->add_option("--init-trials", bench.init_trials, "Random trials before BO starts");
    cmd_bench->add_option("--hyperopt-iters", bench.hyperopt_iters, "RPROP iterations per model update");
    cmd_bench->add_option("--seed", bench.seed, "Root seed");
    cmd_bench->add_option("--jobs", bench.jobs, "Concurrent replicates (0 = hardware)");
    cmd_bench->add_option("--out", bench.out, "Output CSV path")->required();

    gen_map_options genmap;
    auto* cmd_gen = app.add_subcommand("gen-map", "Generate an arm repertoire map with MAP-Elites");
    cmd_gen->add_option("--condition", genmap.condition, "intact or lock:<joint>[:<angle>]");
    cmd_gen->add_option("--resolution", genmap.resolution, "Cells per descriptor dimension");
    cmd_gen->add_option("--init-count", genmap.init_count, "Random evaluations before the variation loop");
    cmd_gen->add_option("--budget", genmap.budget, "Total evaluations");
    cmd_gen->add_option("--sigma", genmap.sigma, "Mutation sigma as a fraction of each parameter range");
    cmd_gen->add_option("--seed", genmap.seed, "Root seed");
    cmd_gen->add_option("--out", genmap.out, "Output MAP v1 path")->required();

    adapt_options adapt;
    auto* cmd_adapt = app.add_subcommand("adapt", "Damage-adaptation benchmark over repertoire maps");
    cmd_adapt->add_option("--repertoire", adapt.repertoire, "Shared repertoire (MAP v1, from gen-map)");
    cmd_adapt->add_option("--conditions", adapt.conditions,
                          "Comma-separated conditions to score the repertoire under");
    cmd_adapt->add_option("--priors", adapt.priors,
                          "Comma-separated pre-scored prediction maps (alternative to --repertoire)");
    cmd_adapt->add_option("--true-condition", adapt.true_condition, "intact or lock:<joint>[:<angle>]");
    cmd_adapt->add_option("--target", adapt.target, "Task target as 'x,y'");
    cmd_adapt->add_option("--selector", adapt.selector, "mlei, random, or fixed:<index>");
    cmd_adapt->add_option("--episodes", adapt.episodes, "Total episodes per replicate");
    cmd_adapt->add_option("--init-trials", adapt.init_trials, "Random trials before BO starts");
    cmd_adapt->add_option("--replicates", adapt.replicates, "Independent replicates");
    cmd_adapt->add_option("--hyperopt-iters", adapt.hyperopt_iters, "RPROP iterations per model update");
    cmd_adapt->add_option("--seed", adapt.seed, "Root seed");
    cmd_adapt->add_option("--jobs", adapt.jobs, "Concurrent replicates (0 = hardware)");
    cmd_adapt->add_option("--out", adapt.out, "Output CSV path")->required();

    stats_options stats;
    auto* cmd_stats = app.add_subcommand("stats", "Summaries and Mann-Whitney tests over a result CSV");
    cmd_stats->add_option("--in", stats.in, "Input CSV (bench-arm/adapt format)")->required();
    cmd_stats->add_option("--metric", stats.metric, "reward, best_so_far, or distance");
    cmd_stats->add_option("--at-episode", stats.at_episode, "Episode to compare (-1 = final)");
    cmd_stats->add_option("--alternative", stats.alternative, "two-sided, greater, or less");
    cmd_stats->add_option("--pair", stats.pairs, "Variant pair to test (repeatable)")->type_size(2);
    cmd_stats->add_option("--out", stats.out, "Write per-episode summary CSV here");

    bo_options bo;
    auto* cmd_bo = app.add_subcommand("bo", "Run an experiment described by a config file");
    cmd_bo->add_option("--config", bo.config, "Config file (flat key=value with [variant] sections)")
        ->required();
    cmd_bo->add_option("--out", bo.out, "Output CSV (overrides the config's 'out')");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::fprintf(stderr, "%s\n\n%s", e.what(), app.help().c_str());
        return 2;
    }

    if (cmd_bench->parsed())
        return run_bench_arm(bench);
    if (cmd_gen->parsed())
        return run_gen_map(genmap);
    if (cmd_adapt->parsed())
        return run_adapt(adapt);
    if (cmd_stats->parsed())
        return run_stats(stats);
    if (cmd_bo->parsed())
        return run_bo_cmd(bo);
    return 2;
}
