#include "mlei/bo.hpp"

#include <algorithm>
#include <cmath>

#include "mlei/errors.hpp"

namespace mlei {

std::string selector_policy::name() const
{
    switch (which) {
    case kind::mlei:
        return "mlei";
    case kind::random_prior:
        return "random";
    case kind::fixed_prior:
        return "fixed:" + std::to_string(fixed_index);
    }
    return "?";
}

selector_policy selector_policy::parse(const std::string& text)
{
    if (text == "mlei")
        return mlei_policy();
    if (text == "random")
        return random();
    if (text.rfind("fixed:", 0) == 0) {
        try {
            return fixed(std::stoi(text.substr(6)));
        } catch (const std::exception&) {
            throw usage_error("selector: bad fixed-prior index in '" + text + "'");
        }
    }
    throw usage_error("selector: expected mlei, random, or fixed:<index>, got '" + text + "'");
}

std::vector<Eigen::VectorXd> initial_design(const domain& dom, int n, rng& gen)
{
    if (n < 1)
        throw usage_error("initial_design: need at least one point");
    std::vector<Eigen::VectorXd> out;
    out.reserve(n);
    if (dom.is_box()) {
        const int d = dom.dim();
        for (int i = 0; i < n; ++i) {
            Eigen::VectorXd x(d);
            for (int j = 0; j < d; ++j)
                x(j) = gen.uniform(dom.lo()(j), dom.hi()(j));
            out.push_back(std::move(x));
        }
        return out;
    }
    const auto& pts = dom.points();
    if (static_cast<std::size_t>(n) > pts.size())
        throw usage_error("initial_design: more points requested than the candidate set holds");
    // Partial Fisher-Yates: uniform without replacement.
    std::vector<std::size_t> idx(pts.size());
    for (std::size_t i = 0; i < idx.size(); ++i)
        idx[i] = i;
    for (int i = 0; i < n; ++i) {
        const std::size_t j = i + gen.uniform_index(idx.size() - i);
        std::swap(idx[i], idx[j]);
        out.push_back(pts[idx[i]]);
    }
    return out;
}

std::vector<episode_record> run_bo(const bo_run_config& config, const objective_fn& objective)
{
    const int m = static_cast<int>(config.priors.size());
    if (m < 1)
        throw usage_error("run_bo: need at least one prior");
    if (config.init_trials < 1)
        throw usage_error("run_bo: need at least one initial trial");
    if (config.max_iterations < config.init_trials)
        throw usage_error("run_bo: max_iterations must cover the initial trials");
    if (config.selector.which == selector_policy::kind::fixed_prior &&
        (config.selector.fixed_index < 0 || config.selector.fixed_index >= m))
        throw usage_error("run_bo: fixed prior index out of range");
    if (config.kernel_init.dim() != config.search_space.dim())
        throw usage_error("run_bo: kernel dimension does not match the domain");

    rng init_rng = rng(config.seed).stream("init");
    rng inner_rng = rng(config.seed).stream("inner");
    rng select_rng = rng(config.seed).stream("selector");

    std::vector<gp_model> models;
    models.reserve(m);
    for (const prior_mean& p : config.priors)
        models.emplace_back(config.kernel_init, p);

    std::vector<episode_record> records;
    records.reserve(config.max_iterations);
    double best = -std::numeric_limits<double>::infinity();

    auto evaluate = [&](const Eigen::VectorXd& x, int source, int episode) {
        const double y = objective(x, source);
        if (!std::isfinite(y))
            throw runtime_error("run_bo: objective returned a non-finite value at episode " +
                                std::to_string(episode));
        return y;
    };

    const auto init_points = initial_design(config.search_space, config.init_trials, init_rng);
    for (int e = 0; e < config.init_trials; ++e) {
        int source = config.selector.which == selector_policy::kind::fixed_prior
                         ? config.selector.fixed_index
                         : static_cast<int>(select_rng.uniform_index(m));
        const double y = evaluate(init_points[e], source, e + 1);
        best = std::max(best, y);

        episode_record rec;
        rec.iteration = e + 1;
        rec.selected_prior = episode_record::init_marker;
        rec.point = init_points[e];
        rec.reward = y;
        rec.best_so_far = best;
        for (auto& model : models) {
            model.update(init_points[e], y);
            rec.per_prior_log_likelihood.push_back(model.log_marginal_likelihood());
        }
        records.push_back(std::move(rec));
    }

    for (int e = config.init_trials; e < config.max_iterations; ++e) {
        acquisition_context ctx{best, &models.front().data()};

        std::vector<model_score> scores;
        scores.reserve(m);
        for (int i = 0; i < m; ++i) {
            models[i].optimize_hyperparams(config.hyperopt_iters);
            scores.push_back(eip_score(models[i], config.search_space, ctx, inner_rng, i));
        }

        int chosen = 0;
        bool degenerate = false;
        switch (config.selector.which) {
        case selector_policy::kind::mlei:
            chosen = select_best_score(scores, &degenerate);
            break;
        case selector_policy::kind::fixed_prior:
            chosen = config.selector.fixed_index;
            break;
        case selector_policy::kind::random_prior:
            chosen = static_cast<int>(select_rng.uniform_index(m));
            break;
        }

        const Eigen::VectorXd x = scores[chosen].argmax_point;
        const double y = evaluate(x, chosen, e + 1);
        best = std::max(best, y);

        episode_record rec;
        rec.iteration = e + 1;
        rec.selected_prior = chosen;
        rec.point = x;
        rec.reward = y;
        rec.best_so_far = best;
        rec.degenerate_selection = degenerate;
        for (const model_score& s : scores) {
            rec.per_prior_log_likelihood.push_back(s.log_likelihood);
            rec.per_prior_log_eip.push_back(s.log_eip);
        }
        for (auto& model : models)
            model.update(x, y);
        records.push_back(std::move(rec));
    }
    return records;
}

} // namespace mlei
