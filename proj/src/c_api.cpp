#include "mlei_bo.h"

#include <cstring>
#include <string>

#include "mlei/acquisition.hpp"
#include "mlei/behavior_map.hpp"
#include "mlei/benchmarks.hpp"
#include "mlei/bo.hpp"
#include "mlei/config.hpp"
#include "mlei/csv.hpp"
#include "mlei/errors.hpp"
#include "mlei/gp.hpp"
#include "mlei/prior.hpp"
#include "mlei/stats.hpp"

using namespace mlei;

struct mlei_prior {
    prior_mean value;
};

struct mlei_map {
    behavior_map value;
};

struct mlei_gp {
    gp_model value;
};

struct mlei_table {
    std::vector<result_row> rows;
};

namespace {

thread_local std::string g_last_error;

mlei_status fail(mlei_status code, const char* what)
{
    g_last_error = what;
    return code;
}

template <typename Fn>
mlei_status guarded(Fn&& fn)
{
    try {
        fn();
        return MLEI_OK;
    } catch (const usage_error& e) {
        return fail(MLEI_ERR_USAGE, e.what());
    } catch (const std::invalid_argument& e) {
        return fail(MLEI_ERR_USAGE, e.what());
    } catch (const std::exception& e) {
        return fail(MLEI_ERR_RUNTIME, e.what());
    } catch (...) {
        return fail(MLEI_ERR_RUNTIME, "unknown error");
    }
}

mlei_status require(bool ok, const char* what)
{
    return ok ? MLEI_OK : fail(MLEI_ERR_USAGE, what);
}

Eigen::VectorXd to_vec(const double* x, size_t dim)
{
    return Eigen::Map<const Eigen::VectorXd>(x, static_cast<Eigen::Index>(dim));
}

} // namespace

extern "C" {

const char* mlei_version(void)
{
    return "0.1.0";
}

const char* mlei_last_error(void)
{
    return g_last_error.c_str();
}

/* ---- priors ----------------------------------------------------------- */

mlei_status mlei_prior_zero(mlei_prior** out)
{
    if (require(out != nullptr, "mlei_prior_zero: out is NULL"))
        return MLEI_ERR_USAGE;
    return guarded([&] { *out = new mlei_prior{prior_mean::zero()}; });
}

mlei_status mlei_prior_constant(double value, mlei_prior** out)
{
    if (require(out != nullptr, "mlei_prior_constant: out is NULL"))
        return MLEI_ERR_USAGE;
    return guarded([&] { *out = new mlei_prior{prior_mean::constant(value)}; });
}

mlei_status mlei_prior_arm_target(double target_x, double target_y, int link_count, double link_length,
                                  mlei_prior** out)
{
    if (require(out != nullptr, "mlei_prior_arm_target: out is NULL"))
        return MLEI_ERR_USAGE;
    return guarded([&] {
        if (link_count < 1 || !(link_length > 0.0))
            throw usage_error("mlei_prior_arm_target: bad arm geometry");
        *out = new mlei_prior{prior_mean::arm_target({target_x, target_y}, link_count, link_length)};
    });
}

mlei_status mlei_prior_tabular(const mlei_map* map, double fill_value, mlei_prior** out)
{
    if (require(map != nullptr && out != nullptr, "mlei_prior_tabular: NULL argument"))
        return MLEI_ERR_USAGE;
    return guarded([&] { *out = new mlei_prior{prior_mean::tabular(map->value, fill_value)}; });
}

void mlei_prior_free(mlei_prior* prior)
{
    delete prior;
}

mlei_status mlei_prior_eval(const mlei_prior* prior, const double* x, size_t dim, double* out)
{
    if (require(prior != nullptr && x != nullptr && out != nullptr && dim > 0, "mlei_prior_eval: NULL argument"))
        return MLEI_ERR_USAGE;
    return guarded([&] { *out = prior->value(to_vec(x, dim)); });
}

/* ---- maps -------------------------------------------------------------- */

mlei_status mlei_map_load(const char* path, mlei_map** out)
{
    if (require(path != nullptr && out != nullptr, "mlei_map_load: NULL argument"))
        return MLEI_ERR_USAGE;
    return guarded([&] { *out = new mlei_map{behavior_map::load_file(path)}; });
}

mlei_status mlei_map_save(const mlei_map* map, const char* path)
{
    if (require(map != nullptr && path != nullptr, "mlei_map_save: NULL argument"))
        return MLEI_ERR_USAGE;
    return guarded([&] { map->value.save_file(path); });
}

void mlei_map_free(mlei_map* map)
{
    delete map;
}

int mlei_map_dim(const mlei_map* map)
{
    return map ? map->value.dim() : 0;
}

int mlei_map_param_dim(const mlei_map* map)
{
    return map ? map->value.param_dim() : 0;
}

size_t mlei_map_occupied(const mlei_map* map)
{
    return map ? map->value.occupied_count() : 0;
}

size_t mlei_map_total_cells(const mlei_map* map)
{
    return map ? map->value.total_cells() : 0;
}

mlei_status mlei_arm_repertoire(const char* condition, int resolution, uint64_t seed, size_t init_count,
                                size_t budget, double mutation_sigma, mlei_map** out)
{
    if (require(condition != nullptr && out != nullptr, "mlei_arm_repertoire: NULL argument"))
        return MLEI_ERR_USAGE;
    return guarded([&] {
        if (resolution < 1)
            throw usage_error("mlei_arm_repertoire: resolution must be at least 1");
        *out = new mlei_map{build_arm_repertoire(parse_arm_condition(condition), resolution, init_count,
                                                 budget, mutation_sigma, seed)};
    });
}

mlei_status mlei_build_adaptation_map(const mlei_map* repertoire, const char* condition, double target_x,
                                      double target_y, mlei_map** out)
{
    if (require(repertoire != nullptr && condition != nullptr && out != nullptr,
                "mlei_build_adaptation_map: NULL argument"))
        return MLEI_ERR_USAGE;
    return guarded([&] {
        *out = new mlei_map{build_adaptation_map(repertoire->value, parse_arm_condition(condition),
                                                 {target_x, target_y})};
    });
}

/* ---- GP ----------------------------------------------------------------- */

mlei_status mlei_gp_new(size_t dim, double signal_sigma, const double* length_scales, double noise_sigma,
                        const mlei_prior* prior, mlei_gp** out)
{
    if (require(length_scales != nullptr && prior != nullptr && out != nullptr && dim > 0,
                "mlei_gp_new: NULL argument"))
        return MLEI_ERR_USAGE;
    return guarded([&] {
        kernel_params kp(signal_sigma, to_vec(length_scales, dim), noise_sigma);
        *out = new mlei_gp{gp_model(std::move(kp), prior->value)};
    });
}

void mlei_gp_free(mlei_gp* gp)
{
    delete gp;
}

mlei_status mlei_gp_update(mlei_gp* gp, const double* x, size_t dim, double y)
{
    if (require(gp != nullptr && x != nullptr, "mlei_gp_update: NULL argument"))
        return MLEI_ERR_USAGE;
    return guarded([&] { gp->value.update(to_vec(x, dim), y); });
}

mlei_status mlei_gp_predict(const mlei_gp* gp, const double* x, size_t dim, double* mean, double* variance)
{
    if (require(gp != nullptr && x != nullptr && mean != nullptr && variance != nullptr,
                "mlei_gp_predict: NULL argument"))
        return MLEI_ERR_USAGE;
    return guarded([&] {
        const auto [m, v] = gp->value.predict(to_vec(x, dim));
        *mean = m;
        *variance = v;
    });
}

mlei_status mlei_gp_log_marginal_likelihood(const mlei_gp* gp, double* out)
{
    if (require(gp != nullptr && out != nullptr, "mlei_gp_log_marginal_likelihood: NULL argument"))
        return MLEI_ERR_USAGE;
    return guarded([&] { *out = gp->value.log_marginal_likelihood(); });
}

mlei_status mlei_gp_optimize_hyperparams(mlei_gp* gp, int iterations)
{
    if (require(gp != nullptr, "mlei_gp_optimize_hyperparams: NULL argument"))
        return MLEI_ERR_USAGE;
    return guarded([&] { gp->value.optimize_hyperparams(iterations); });
}

int mlei_gp_size(const mlei_gp* gp)
{
    return gp ? gp->value.size() : 0;
}

mlei_status mlei_gp_kernel(const mlei_gp* gp, double* signal_sigma, double* length_scales, double* noise_sigma)
{
    if (require(gp != nullptr, "mlei_gp_kernel: NULL argument"))
        return MLEI_ERR_USAGE;
    return guarded([&] {
        const kernel_params& kp = gp->value.kernel();
        if (signal_sigma)
            *signal_sigma = kp.signal_sigma();
        if (noise_sigma)
            *noise_sigma = kp.noise_sigma();
        if (length_scales) {
            const Eigen::VectorXd ls = kp.length_scales();
            std::memcpy(length_scales, ls.data(), sizeof(double) * ls.size());
        }
    });
}

mlei_status mlei_gp_expected_improvement(const mlei_gp* gp, const double* x, size_t dim, double best_observed,
                                         double* out)
{
    if (require(gp != nullptr && x != nullptr && out != nullptr,
                "mlei_gp_expected_improvement: NULL argument"))
        return MLEI_ERR_USAGE;
    return guarded([&] { *out = expected_improvement(gp->value, to_vec(x, dim), best_observed); });
}

/* ---- tables -------------------------------------------------------------- */

size_t mlei_table_rows(const mlei_table* table)
{
    return table ? table->rows.size() : 0;
}

mlei_status mlei_table_get_row(const mlei_table* table, size_t index, mlei_table_row* out)
{
    if (require(table != nullptr && out != nullptr, "mlei_table_get_row: NULL argument"))
        return MLEI_ERR_USAGE;
    if (require(index < table->rows.size(), "mlei_table_get_row: index out of range"))
        return MLEI_ERR_USAGE;
    const result_row& r = table->rows[index];
    out->variant = r.variant.c_str();
    out->replicate = r.replicate;
    out->episode = r.episode;
    out->selected_prior = r.selected_prior.c_str();
    out->reward = r.reward;
    out->best_so_far = r.best_so_far;
    out->distance = r.distance;
    return MLEI_OK;
}

mlei_status mlei_table_save_csv(const mlei_table* table, const char* path)
{
    if (require(table != nullptr && path != nullptr, "mlei_table_save_csv: NULL argument"))
        return MLEI_ERR_USAGE;
    return guarded([&] { write_rows_file(path, table->rows); });
}

mlei_status mlei_table_load_csv(const char* path, mlei_table** out)
{
    if (require(path != nullptr && out != nullptr, "mlei_table_load_csv: NULL argument"))
        return MLEI_ERR_USAGE;
    return guarded([&] { *out = new mlei_table{read_rows_file(path)}; });
}

void mlei_table_free(mlei_table* table)
{
    delete table;
}

size_t mlei_table_variant_count(const mlei_table* table)
{
    return table ? variants_in(table->rows).size() : 0;
}

const char* mlei_table_variant(const mlei_table* table, size_t index)
{
    if (!table)
        return nullptr;
    // Variant names live in the rows; return a pointer into the first row
    // carrying the requested name.
    const auto names = variants_in(table->rows);
    if (index >= names.size())
        return nullptr;
    for (const result_row& r : table->rows)
        if (r.variant == names[index])
            return r.variant.c_str();
    return nullptr;
}

int mlei_table_max_episode(const mlei_table* table, const char* variant)
{
    if (!table)
        return 0;
    int best = 0;
    for (const result_row& r : table->rows)
        if (!variant || r.variant == variant)
            best = std::max(best, r.episode);
    return best;
}

mlei_status mlei_table_metric_values(const mlei_table* table, const char* variant, const char* metric,
                                     int episode, double* out, size_t capacity, size_t* count)
{
    if (require(table != nullptr && variant != nullptr && metric != nullptr && count != nullptr,
                "mlei_table_metric_values: NULL argument"))
        return MLEI_ERR_USAGE;
    return guarded([&] {
        const auto values = metric_values(table->rows, variant, parse_metric(metric), episode);
        *count = values.size();
        if (out) {
            const size_t n = std::min(capacity, values.size());
            std::memcpy(out, values.data(), sizeof(double) * n);
        }
    });
}

mlei_status mlei_table_write_summary_csv(const mlei_table* table, const char* metric, const char* path)
{
    if (require(table != nullptr && metric != nullptr && path != nullptr,
                "mlei_table_write_summary_csv: NULL argument"))
        return MLEI_ERR_USAGE;
    return guarded([&] { write_summary_file(path, summarize(table->rows, parse_metric(metric))); });
}

/* ---- experiments ---------------------------------------------------------- */

mlei_status mlei_arm_experiment(const char* variants, int replicates, int episodes, int init_trials,
                                int hyperopt_iters, uint64_t seed, int jobs, mlei_table** out)
{
    if (require(variants != nullptr && out != nullptr, "mlei_arm_experiment: NULL argument"))
        return MLEI_ERR_USAGE;
    return guarded([&] {
        std::vector<result_row> all;
        std::string list(variants);
        std::size_t start = 0;
        bool any = false;
        while (start <= list.size()) {
            auto comma = list.find(',', start);
            std::string name = list.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
            if (!name.empty()) {
                any = true;
                arm_experiment_config cfg;
                cfg.replicates = replicates;
                cfg.episodes = episodes;
                cfg.init_trials = init_trials;
                cfg.hyperopt_iters = hyperopt_iters;
                cfg.seed = seed;
                cfg.jobs = jobs;
                auto rows = run_arm_experiment(name, cfg);
                all.insert(all.end(), std::make_move_iterator(rows.begin()),
                           std::make_move_iterator(rows.end()));
            }
            if (comma == std::string::npos)
                break;
            start = comma + 1;
        }
        if (!any)
            throw usage_error("mlei_arm_experiment: no variants given");
        *out = new mlei_table{std::move(all)};
    });
}

mlei_status mlei_adaptation_experiment(const mlei_map* const* maps, size_t n_maps, const char* true_condition,
                                       double target_x, double target_y, const char* selector, int episodes,
                                       int init_trials, int replicates, int hyperopt_iters, uint64_t seed,
                                       int jobs, mlei_table** out)
{
    if (require(maps != nullptr && true_condition != nullptr && selector != nullptr && out != nullptr,
                "mlei_adaptation_experiment: NULL argument"))
        return MLEI_ERR_USAGE;
    return guarded([&] {
        map_adaptation_task task;
        for (size_t i = 0; i < n_maps; ++i) {
            if (!maps[i])
                throw usage_error("mlei_adaptation_experiment: NULL map handle");
            task.condition_maps.push_back(maps[i]->value);
            task.condition_names.push_back("map" + std::to_string(i));
        }
        task.true_condition = parse_arm_condition(true_condition);
        task.target = {target_x, target_y};

        adaptation_experiment_config cfg;
        cfg.replicates = replicates;
        cfg.episodes = episodes;
        cfg.init_trials = init_trials;
        cfg.hyperopt_iters = hyperopt_iters;
        cfg.seed = seed;
        cfg.jobs = jobs;
        cfg.selector = selector_policy::parse(selector);
        *out = new mlei_table{run_map_adaptation_experiment(task, cfg)};
    });
}

mlei_status mlei_run_config_file(const char* path, mlei_table** out, char** out_path)
{
    if (require(path != nullptr && out != nullptr, "mlei_run_config_file: NULL argument"))
        return MLEI_ERR_USAGE;
    return guarded([&] {
        const experiment_config cfg = parse_experiment_config_file(path);
        auto rows = run_experiment(cfg);
        if (out_path) {
            *out_path = new char[cfg.out.size() + 1];
            std::memcpy(*out_path, cfg.out.c_str(), cfg.out.size() + 1);
        }
        *out = new mlei_table{std::move(rows)};
    });
}

void mlei_string_free(char* s)
{
    delete[] s;
}

mlei_status mlei_bo_run(const double* lo, const double* hi, size_t dim, const mlei_prior* const* priors,
                        size_t n_priors, const char* selector, int episodes, int init_trials,
                        int hyperopt_iters, uint64_t seed, mlei_objective_fn objective, void* user,
                        mlei_table** out)
{
    if (require(lo != nullptr && hi != nullptr && priors != nullptr && selector != nullptr &&
                    objective != nullptr && out != nullptr && dim > 0 && n_priors > 0,
                "mlei_bo_run: NULL or empty argument"))
        return MLEI_ERR_USAGE;
    return guarded([&] {
        bo_run_config cfg;
        cfg.search_space = domain::box(to_vec(lo, dim), to_vec(hi, dim));
        for (size_t i = 0; i < n_priors; ++i) {
            if (!priors[i])
                throw usage_error("mlei_bo_run: NULL prior handle");
            cfg.priors.push_back(priors[i]->value);
        }
        cfg.selector = selector_policy::parse(selector);
        cfg.init_trials = init_trials;
        cfg.max_iterations = episodes;
        cfg.seed = seed;
        cfg.kernel_init = kernel_params::unit(static_cast<int>(dim), 1e-5);
        cfg.hyperopt_iters = hyperopt_iters;

        const objective_fn fn = [&](const Eigen::VectorXd& x, int source) {
            return objective(x.data(), dim, source, user);
        };
        const auto records = run_bo(cfg, fn);

        std::vector<result_row> rows;
        rows.reserve(records.size());
        for (const episode_record& rec : records) {
            result_row row;
            row.variant = cfg.selector.name();
            row.replicate = 0;
            row.episode = rec.iteration;
            row.selected_prior = rec.selected_prior == episode_record::init_marker
                                     ? "init"
                                     : std::to_string(rec.selected_prior);
            row.reward = rec.reward;
            row.best_so_far = rec.best_so_far;
            row.distance = -rec.reward;
            rows.push_back(std::move(row));
        }
        *out = new mlei_table{std::move(rows)};
    });
}

/* ---- statistics ------------------------------------------------------------ */

mlei_status mlei_mann_whitney(const double* a, size_t n1, const double* b, size_t n2, const char* alternative,
                              mlei_rank_test* out)
{
    if (require(a != nullptr && b != nullptr && alternative != nullptr && out != nullptr,
                "mlei_mann_whitney: NULL argument"))
        return MLEI_ERR_USAGE;
    return guarded([&] {
        const std::vector<double> va(a, a + n1), vb(b, b + n2);
        const rank_test_result r = mann_whitney_u(va, vb, parse_tail(alternative));
        out->u_statistic = r.u_statistic;
        out->p_value = r.p_value;
        out->exact = r.exact ? 1 : 0;
        out->n1 = r.n1;
        out->n2 = r.n2;
    });
}

int mlei_significance_stars(double p_value)
{
    return significance_stars(p_value);
}

} // extern "C"
