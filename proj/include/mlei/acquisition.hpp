#ifndef MLEI_ACQUISITION_HPP
#define MLEI_ACQUISITION_HPP

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "mlei/domain.hpp"
#include "mlei/gp.hpp"
#include "mlei/rng.hpp"

namespace mlei {

// Shared state the acquisition functions need beyond the models: the
// incumbent and the (common) observation history.
struct acquisition_context {
    double best_observed; // M_t
    const observation_set* observations = nullptr;
};

// Per-model acquisition result.  log_eip = log(ei_value) + log_likelihood,
// -inf when the expected improvement is exactly zero; the product itself is
// never materialized.
struct model_score {
    int prior_index = 0;
    Eigen::VectorXd argmax_point;
    double ei_value = 0.0;
    double log_likelihood = 0.0;
    double log_eip = 0.0;
};

struct mlei_selection {
    Eigen::VectorXd point;
    int prior_index = 0;
    bool degenerate = false; // every model had EI == 0; fell back to likelihood
    std::vector<model_score> scores;
};

// Closed-form expected improvement of the model's posterior at x over the
// incumbent; exactly zero when the posterior is deterministic.
double expected_improvement(const gp_model& model, const Eigen::VectorXd& x, double best_observed);

// From the posterior moments directly.
double expected_improvement_value(double mean, double variance, double best_observed);

// Argmax of EI over the domain.  Finite sets are scanned exhaustively (ties
// break to the lowest index); boxes use uniform candidates, plus local
// candidates around the incumbent when one is given, refined by a
// coordinate pattern search.  Returns the point and its EI.
std::pair<Eigen::VectorXd, double> maximize_ei(const gp_model& model, const domain& dom, double best_observed,
                                               rng& gen, const Eigen::VectorXd* incumbent = nullptr);

// EI argmax plus the model's log marginal likelihood, combined in log
// space.  With no observations the log-likelihood is defined as 0.
model_score eip_score(const gp_model& model, const domain& dom, const acquisition_context& ctx, rng& gen,
                      int prior_index = 0);

// The MLEI argmax over a score list: largest log_eip, ties to the lowest
// index.  When every score has zero EI, falls back to the largest
// log-likelihood and sets *degenerate.
int select_best_score(const std::vector<model_score>& scores, bool* degenerate = nullptr);

// Most Likely Expected Improvement: the model whose (EI argmax, likelihood)
// product is largest, compared in log space.  Ties break to the lowest
// prior index.  If every model has zero EI everywhere the most likely model
// wins and the selection is flagged degenerate.
mlei_selection mlei_select(const std::vector<gp_model>& models, const domain& dom,
                           const acquisition_context& ctx, rng& gen);

} // namespace mlei

#endif
