#include "mlei/acquisition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace mlei {

namespace {

constexpr double inv_sqrt_2pi = 0.39894228040143267793994605993438;

double normal_pdf(double z)
{
    return inv_sqrt_2pi * std::exp(-0.5 * z * z);
}

double normal_cdf(double z)
{
    return 0.5 * std::erfc(-z * 0.70710678118654752440084436210485);
}

} // namespace

double expected_improvement_value(double mean, double variance, double best_observed)
{
    const double sigma = variance > 0.0 ? std::sqrt(variance) : 0.0;
    if (sigma == 0.0)
        return 0.0;
    const double z = (mean - best_observed) / sigma;
    const double ei = (mean - best_observed) * normal_cdf(z) + sigma * normal_pdf(z);
    return ei > 0.0 ? ei : 0.0;
}

double expected_improvement(const gp_model& model, const Eigen::VectorXd& x, double best_observed)
{
    const auto [mean, variance] = model.predict(x);
    return expected_improvement_value(mean, variance, best_observed);
}

namespace {

// Coordinate-wise pattern search inside the box: probe +-step along every
// axis, move to the best improving probe, halve the steps when nothing
// improves.
std::pair<Eigen::VectorXd, double> pattern_search(const gp_model& model, const domain& dom, double best_observed,
                                                  Eigen::VectorXd x, double fx, int steps)
{
    const Eigen::VectorXd& lo = dom.lo();
    const Eigen::VectorXd& hi = dom.hi();
    const int d = static_cast<int>(lo.size());
    Eigen::VectorXd step = 0.05 * (hi - lo);

    for (int s = 0; s < steps; ++s) {
        double best_f = fx;
        Eigen::VectorXd best_x = x;
        for (int j = 0; j < d; ++j) {
            for (double dir : {1.0, -1.0}) {
                Eigen::VectorXd probe = x;
                probe(j) = std::min(std::max(x(j) + dir * step(j), lo(j)), hi(j));
                if (probe(j) == x(j))
                    continue;
                const double f = expected_improvement(model, probe, best_observed);
                if (f > best_f) {
                    best_f = f;
                    best_x = probe;
                }
            }
        }
        if (best_f > fx) {
            fx = best_f;
            x = best_x;
        } else {
            step *= 0.5;
        }
    }
    return {x, fx};
}

} // namespace

std::pair<Eigen::VectorXd, double> maximize_ei(const gp_model& model, const domain& dom, double best_observed,
                                               rng& gen, const Eigen::VectorXd* incumbent)
{
    if (dom.is_finite()) {
        const auto& pts = dom.points();
        Eigen::VectorXd best_x = pts.front();
        double best_f = expected_improvement(model, pts.front(), best_observed);
        for (std::size_t i = 1; i < pts.size(); ++i) {
            const double f = expected_improvement(model, pts[i], best_observed);
            if (f > best_f) {
                best_f = f;
                best_x = pts[i];
            }
        }
        return {best_x, best_f};
    }

    constexpr int n_samples = 1000;
    constexpr int n_local = 250; // drawn around the incumbent, when known
    constexpr int n_refine = 10;
    constexpr int refine_steps = 50;

    const Eigen::VectorXd& lo = dom.lo();
    const Eigen::VectorXd& hi = dom.hi();
    const int d = static_cast<int>(lo.size());

    const int total = n_samples + (incumbent ? n_local : 0);
    std::vector<Eigen::VectorXd> cand(total);
    std::vector<double> ei(total);
    for (int i = 0; i < n_samples; ++i) {
        Eigen::VectorXd x(d);
        for (int j = 0; j < d; ++j)
            x(j) = gen.uniform(lo(j), hi(j));
        ei[i] = expected_improvement(model, x, best_observed);
        cand[i] = std::move(x);
    }
    for (int i = n_samples; i < total; ++i) {
        // The EI argmax often sits close to the incumbent once a model has
        // locked onto a region; local candidates resolve it precisely.
        Eigen::VectorXd x(d);
        for (int j = 0; j < d; ++j) {
            const double width = hi(j) - lo(j);
            x(j) = std::min(std::max((*incumbent)(j) + gen.normal(0.0, 0.1 * width), lo(j)), hi(j));
        }
        ei[i] = expected_improvement(model, x, best_observed);
        cand[i] = std::move(x);
    }

    std::vector<int> order(total);
    std::iota(order.begin(), order.end(), 0);
    std::partial_sort(order.begin(), order.begin() + n_refine, order.end(),
                      [&](int a, int b) { return ei[a] != ei[b] ? ei[a] > ei[b] : a < b; });

    Eigen::VectorXd best_x = cand[order[0]];
    double best_f = ei[order[0]];
    for (int r = 0; r < n_refine; ++r) {
        const int i = order[r];
        auto [x, f] = pattern_search(model, dom, best_observed, cand[i], ei[i], refine_steps);
        if (f > best_f) {
            best_f = f;
            best_x = x;
        }
    }
    return {best_x, best_f};
}

model_score eip_score(const gp_model& model, const domain& dom, const acquisition_context& ctx, rng& gen,
                      int prior_index)
{
    model_score score;
    score.prior_index = prior_index;
    score.log_likelihood = model.size() == 0 ? 0.0 : model.log_marginal_likelihood();

    // Incumbent location, when the shared history is available.
    Eigen::VectorXd incumbent;
    const Eigen::VectorXd* incumbent_ptr = nullptr;
    if (ctx.observations && ctx.observations->size() > 0) {
        Eigen::Index at = 0;
        ctx.observations->values().maxCoeff(&at);
        incumbent = ctx.observations->points().row(at).transpose();
        incumbent_ptr = &incumbent;
    }

    auto [x, ei] = maximize_ei(model, dom, ctx.best_observed, gen, incumbent_ptr);
    score.argmax_point = std::move(x);
    score.ei_value = ei;
    score.log_eip =
        ei > 0.0 ? std::log(ei) + score.log_likelihood : -std::numeric_limits<double>::infinity();
    return score;
}

int select_best_score(const std::vector<model_score>& scores, bool* degenerate)
{
    if (scores.empty())
        throw usage_error("select_best_score: empty score list");
    bool any_ei = false;
    for (const model_score& s : scores)
        if (s.ei_value > 0.0)
            any_ei = true;

    int best = 0;
    if (any_ei) {
        for (std::size_t i = 1; i < scores.size(); ++i)
            if (scores[i].log_eip > scores[best].log_eip)
                best = static_cast<int>(i);
    } else {
        // Every model claims zero improvement; fall back to the most likely
        // model so the loop can still act.
        for (std::size_t i = 1; i < scores.size(); ++i)
            if (scores[i].log_likelihood > scores[best].log_likelihood)
                best = static_cast<int>(i);
    }
    if (degenerate)
        *degenerate = !any_ei;
    return best;
}

mlei_selection mlei_select(const std::vector<gp_model>& models, const domain& dom,
                           const acquisition_context& ctx, rng& gen)
{
    if (models.empty())
        throw usage_error("mlei_select: needs at least one model");

    mlei_selection sel;
    sel.scores.reserve(models.size());
    for (std::size_t i = 0; i < models.size(); ++i)
        sel.scores.push_back(eip_score(models[i], dom, ctx, gen, static_cast<int>(i)));

    sel.prior_index = select_best_score(sel.scores, &sel.degenerate);
    sel.point = sel.scores[sel.prior_index].argmax_point;
    return sel;
}

} // namespace mlei
