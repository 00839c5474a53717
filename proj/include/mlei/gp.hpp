#ifndef MLEI_GP_HPP
#define MLEI_GP_HPP

#include <Eigen/Dense>
#include <memory>
#include <utility>

#include "mlei/kernel.hpp"
#include "mlei/prior.hpp"

namespace mlei {

// Observed inputs (row-wise, t x D) and their objective values.
class observation_set {
public:
    explicit observation_set(int dim);
    observation_set(Eigen::MatrixXd points, Eigen::VectorXd values);

    int dim() const { return static_cast<int>(points_.cols()); }
    int size() const { return static_cast<int>(points_.rows()); }
    const Eigen::MatrixXd& points() const { return points_; }
    const Eigen::VectorXd& values() const { return values_; }
    double best() const; // max observed value, requires size >= 1

    void append(const Eigen::VectorXd& x, double y);

private:
    Eigen::MatrixXd points_;
    Eigen::VectorXd values_;
};

// Gaussian-process regressor with an arbitrary prior mean: the GP models the
// residual between observations and the prior.  The Cholesky factor of the
// gram matrix and the solved residual vector are cached; any mutation
// rebuilds them.  Immutable between mutations, so concurrent read-only
// prediction is safe.
class gp_model {
public:
    gp_model(kernel_params kernel, prior_mean prior);
    gp_model(kernel_params kernel, prior_mean prior, observation_set data);

    int dim() const { return kernel_.dim(); }
    int size() const { return data_.size(); }
    const kernel_params& kernel() const { return kernel_; }
    const prior_mean& prior() const { return prior_; }
    const observation_set& data() const { return data_; }

    void update(const Eigen::VectorXd& x, double y);
    void set_kernel(const kernel_params& kernel);

    // Posterior mean and variance at x.  With no data this is the prior
    // mean and the kernel variance.  Variance is clamped at zero.
    std::pair<double, double> predict(const Eigen::VectorXd& x) const;

    // Log of the marginal likelihood of the observed values under this
    // prior + kernel; requires at least one observation.
    double log_marginal_likelihood() const;

    // Partial derivatives of the log marginal likelihood with respect to
    // [log sigma, log l_1 .. log l_D, log sigma_n].
    Eigen::VectorXd lml_gradient() const;

    // iRprop- ascent on [log sigma, log l_1..l_D]; noise stays fixed.
    // Keeps the best-seen iterate, so the result never has a lower
    // likelihood than the starting point.  No-op for fewer than two
    // observations or zero iterations.
    void optimize_hyperparams(int iterations = 300);

    // Diagonal jitter added to make the factorization succeed (0 normally).
    double jitter() const { return jitter_; }

private:
    void rebuild();

    kernel_params kernel_;
    prior_mean prior_;
    observation_set data_;

    Eigen::MatrixXd chol_; // lower-triangular factor of K (+ jitter)
    Eigen::VectorXd alpha_; // K^{-1} (F - P)
    Eigen::VectorXd residual_;
    double lml_ = 0.0;
    double jitter_ = 0.0;
};

} // namespace mlei

#endif
