#include "mlei/gp.hpp"

#include <algorithm>
#include <vector>
#include <cmath>
#include <limits>
#include <optional>

#include "mlei/errors.hpp"

namespace mlei {

namespace {

constexpr double two_pi = 6.283185307179586476925286766559;

// Median over points of the distance to their nearest neighbor.
double median_nn_distance(const Eigen::MatrixXd& points)
{
    const Eigen::Index t = points.rows();
    if (t < 2)
        return 1.0;
    std::vector<double> nn(t, std::numeric_limits<double>::infinity());
    for (Eigen::Index i = 0; i < t; ++i)
        for (Eigen::Index j = 0; j < i; ++j) {
            const double dist = (points.row(i) - points.row(j)).norm();
            nn[i] = std::min(nn[i], dist);
            nn[j] = std::min(nn[j], dist);
        }
    std::nth_element(nn.begin(), nn.begin() + t / 2, nn.end());
    const double med = nn[t / 2];
    return med > 1e-12 ? med : 1e-12;
}

struct factorization {
    Eigen::MatrixXd chol;
    double jitter = 0.0;
};

// Cholesky with escalating diagonal jitter: start at 1e-10 * sigma^2, grow
// by 10x up to 1e-4 * sigma^2, then give up.
std::optional<factorization> factorize(const Eigen::MatrixXd& K, double sigma2)
{
    Eigen::LLT<Eigen::MatrixXd> llt(K);
    if (llt.info() == Eigen::Success)
        return factorization{llt.matrixL(), 0.0};
    for (double j = 1e-10 * sigma2; j <= 1e-4 * sigma2 * (1.0 + 1e-12); j *= 10.0) {
        Eigen::MatrixXd Kj = K;
        Kj.diagonal().array() += j;
        llt.compute(Kj);
        if (llt.info() == Eigen::Success)
            return factorization{llt.matrixL(), j};
    }
    return std::nullopt;
}

double log_likelihood_from(const Eigen::MatrixXd& chol, const Eigen::VectorXd& residual,
                           const Eigen::VectorXd& alpha)
{
    const double t = static_cast<double>(residual.size());
    const double logdet_half = chol.diagonal().array().log().sum();
    return -0.5 * residual.dot(alpha) - logdet_half - 0.5 * t * std::log(two_pi);
}

// d LML / d [log sigma, log l_1..l_D, log sigma_n] via the trace identity
// 1/2 tr((alpha alpha^T - K^{-1}) dK/dtheta).
Eigen::VectorXd gradient_from(const kernel_params& kp, const Eigen::MatrixXd& points,
                              const Eigen::MatrixXd& chol, const Eigen::VectorXd& alpha)
{
    const Eigen::Index t = points.rows();
    const int d = kp.dim();
    const Eigen::VectorXd ls = kp.length_scales();
    const double s2 = kp.signal_sigma() * kp.signal_sigma();
    const double n2 = kp.noise_sigma() * kp.noise_sigma();

    Eigen::MatrixXd kinv = Eigen::MatrixXd::Identity(t, t);
    chol.triangularView<Eigen::Lower>().solveInPlace(kinv);
    chol.transpose().triangularView<Eigen::Upper>().solveInPlace(kinv);
    const Eigen::MatrixXd a = alpha * alpha.transpose() - kinv;

    // Noise-free kernel block, rebuilt from the distances.
    Eigen::MatrixXd kk(t, t);
    for (Eigen::Index i = 0; i < t; ++i) {
        kk(i, i) = s2;
        for (Eigen::Index j = 0; j < i; ++j) {
            const Eigen::ArrayXd sd = (points.row(i) - points.row(j)).transpose().array() / ls.array();
            kk(i, j) = kk(j, i) = s2 * std::exp(-0.5 * sd.square().sum());
        }
    }

    Eigen::VectorXd grad(d + 2);
    grad(0) = (a.array() * kk.array()).sum(); // 1/2 tr(A * 2 kk)
    for (int q = 0; q < d; ++q) {
        double acc = 0.0;
        const double inv_lq2 = 1.0 / (ls(q) * ls(q));
        for (Eigen::Index i = 0; i < t; ++i) {
            for (Eigen::Index j = 0; j < i; ++j) {
                const double diff = points(i, q) - points(j, q);
                acc += 2.0 * a(i, j) * kk(i, j) * diff * diff * inv_lq2;
            }
        }
        grad(1 + q) = 0.5 * acc;
    }
    grad(d + 1) = n2 * a.trace();
    return grad;
}

} // namespace

observation_set::observation_set(int dim) : points_(0, dim), values_(0)
{
    if (dim < 1)
        throw usage_error("observation_set: dimension must be at least 1");
}

observation_set::observation_set(Eigen::MatrixXd points, Eigen::VectorXd values)
    : points_(std::move(points)), values_(std::move(values))
{
    if (points_.rows() != values_.size())
        throw usage_error("observation_set: points and values have different lengths");
    if (!points_.allFinite() || !values_.allFinite())
        throw usage_error("observation_set: all coordinates and values must be finite");
}

double observation_set::best() const
{
    if (size() == 0)
        throw usage_error("observation_set: no observations yet");
    return values_.maxCoeff();
}

void observation_set::append(const Eigen::VectorXd& x, double y)
{
    if (x.size() != points_.cols())
        throw usage_error("observation_set: point dimension mismatch");
    if (!x.allFinite() || !std::isfinite(y))
        throw usage_error("observation_set: non-finite observation");
    points_.conservativeResize(points_.rows() + 1, Eigen::NoChange);
    points_.row(points_.rows() - 1) = x.transpose();
    values_.conservativeResize(values_.size() + 1);
    values_(values_.size() - 1) = y;
}

gp_model::gp_model(kernel_params kernel, prior_mean prior)
    : kernel_(std::move(kernel)), prior_(std::move(prior)), data_(kernel_.dim())
{
}

gp_model::gp_model(kernel_params kernel, prior_mean prior, observation_set data)
    : kernel_(std::move(kernel)), prior_(std::move(prior)), data_(std::move(data))
{
    if (data_.dim() != kernel_.dim())
        throw usage_error("gp_model: observation dimension does not match kernel");
    rebuild();
}

void gp_model::update(const Eigen::VectorXd& x, double y)
{
    data_.append(x, y);
    rebuild();
}

void gp_model::set_kernel(const kernel_params& kernel)
{
    if (kernel.dim() != kernel_.dim())
        throw usage_error("gp_model: kernel dimension cannot change");
    kernel_ = kernel;
    rebuild();
}

void gp_model::rebuild()
{
    const int t = data_.size();
    if (t == 0) {
        chol_.resize(0, 0);
        alpha_.resize(0);
        residual_.resize(0);
        lml_ = 0.0;
        jitter_ = 0.0;
        return;
    }
    residual_ = data_.values() - prior_.at(data_.points());
    const Eigen::MatrixXd K = gram_matrix(kernel_, data_.points());
    const double s2 = kernel_.signal_sigma() * kernel_.signal_sigma();
    auto f = factorize(K, s2);
    if (!f)
        throw runtime_error("gp_model: gram matrix is not positive definite even after jitter "
                            "escalation (t=" + std::to_string(t) + ")");
    chol_ = std::move(f->chol);
    jitter_ = f->jitter;
    alpha_ = chol_.triangularView<Eigen::Lower>().solve(residual_);
    chol_.transpose().triangularView<Eigen::Upper>().solveInPlace(alpha_);
    lml_ = log_likelihood_from(chol_, residual_, alpha_);
}

std::pair<double, double> gp_model::predict(const Eigen::VectorXd& x) const
{
    const int t = data_.size();
    const double prior_value = prior_(x);
    const double kxx = kernel_eval(kernel_, x, x);
    if (t == 0)
        return {prior_value, kxx};

    Eigen::VectorXd k(t);
    for (int i = 0; i < t; ++i)
        k(i) = kernel_eval(kernel_, x, data_.points().row(i).transpose());

    const double mean = prior_value + k.dot(alpha_);
    const Eigen::VectorXd v = chol_.triangularView<Eigen::Lower>().solve(k);
    const double variance = kxx - v.squaredNorm();
    // Round-off may push the exact-math variance slightly negative; anything
    // materially below zero means the factorization went bad.
    const double s2 = kernel_.signal_sigma() * kernel_.signal_sigma();
    if (variance < -1e-8 * s2)
        throw runtime_error("gp_model: posterior variance " + std::to_string(variance) +
                            " is negative beyond round-off");
    return {mean, variance > 0.0 ? variance : 0.0};
}

double gp_model::log_marginal_likelihood() const
{
    if (data_.size() < 1)
        throw usage_error("log_marginal_likelihood: needs at least one observation");
    return lml_;
}

Eigen::VectorXd gp_model::lml_gradient() const
{
    if (data_.size() < 1)
        throw usage_error("lml_gradient: needs at least one observation");
    return gradient_from(kernel_, data_.points(), chol_, alpha_);
}

void gp_model::optimize_hyperparams(int iterations)
{
    if (data_.size() < 2 || iterations <= 0)
        return;

    const int d = kernel_.dim();
    const Eigen::MatrixXd& points = data_.points();
    const Eigen::VectorXd& residual = residual_;

    // Likelihood and its gradient over [log sigma, log l] at theta; NaN
    // signals a failed factorization or overflow.
    auto eval = [&](const Eigen::VectorXd& theta, Eigen::VectorXd& grad_out) -> double {
        kernel_params kp = kernel_;
        kp.set_log_params(theta);
        const Eigen::MatrixXd K = gram_matrix(kp, points);
        if (!K.allFinite())
            return std::numeric_limits<double>::quiet_NaN();
        const double s2 = kp.signal_sigma() * kp.signal_sigma();
        auto f = factorize(K, s2);
        if (!f)
            return std::numeric_limits<double>::quiet_NaN();
        Eigen::VectorXd alpha = f->chol.triangularView<Eigen::Lower>().solve(residual);
        f->chol.transpose().triangularView<Eigen::Upper>().solveInPlace(alpha);
        const double lml = log_likelihood_from(f->chol, residual, alpha);
        grad_out = gradient_from(kp, points, f->chol, alpha).head(d + 1);
        return lml;
    };

    constexpr double eta_plus = 1.2;
    constexpr double eta_minus = 0.5;
    constexpr double step_min = 1e-6;
    constexpr double step_max = 1.0;
    // Sanity box in log space.  Length scales may grow essentially without
    // bound (a huge scale just flattens that dimension) but are floored:
    // near-zero scales turn the model into a lookup table that never
    // generalizes.  The amplitude stays within a broad band around the
    // reward scale.
    constexpr double log_sigma_lo = -3.0;             // sigma >= 0.05
    constexpr double log_sigma_hi = 2.302585092994046; // sigma <= 10
    // Length scales may grow essentially without bound (a huge scale just
    // flattens that dimension) but are floored at half the median
    // nearest-neighbor spacing of the data: scales below the sample
    // spacing are unidentifiable and only memorize the observations.
    const double log_ls_lo = std::log(0.5 * median_nn_distance(points));
    constexpr double log_ls_hi = 30.0; // overflow guard only

    Eigen::VectorXd best_theta = kernel_.log_params();
    double best_objective = lml_;

    auto run_rprop = [&](Eigen::VectorXd theta) {
        Eigen::VectorXd step = Eigen::VectorXd::Constant(d + 1, 0.1);
        Eigen::VectorXd prev_grad = Eigen::VectorXd::Zero(d + 1);
        Eigen::VectorXd prev_theta = theta;

        for (int it = 0; it < iterations; ++it) {
            Eigen::VectorXd grad(d + 1);
            const double objective = eval(theta, grad);
            if (!std::isfinite(objective) || !grad.allFinite()) {
                // Reject the step that brought us here and shrink.
                theta = prev_theta;
                step = (step * eta_minus).cwiseMax(step_min);
                prev_grad.setZero();
                continue;
            }
            if (objective > best_objective) {
                best_objective = objective;
                best_theta = theta;
            }
            for (int j = 0; j <= d; ++j) {
                const double p = prev_grad(j) * grad(j);
                if (p > 0.0)
                    step(j) = std::min(step(j) * eta_plus, step_max);
                else if (p < 0.0) {
                    step(j) = std::max(step(j) * eta_minus, step_min);
                    grad(j) = 0.0; // iRprop-: no move on sign change
                }
            }
            prev_theta = theta;
            for (int j = 0; j <= d; ++j) {
                if (grad(j) > 0.0)
                    theta(j) += step(j);
                else if (grad(j) < 0.0)
                    theta(j) -= step(j);
                theta(j) = j == 0 ? std::min(std::max(theta(j), log_sigma_lo), log_sigma_hi)
                                  : std::min(std::max(theta(j), log_ls_lo), log_ls_hi);
            }
            prev_grad = grad;
        }
    };

    // The warm start continues the previous optimum per the update
    // schedule; the unit start (sigma = 1, l = 1) can escape a local
    // optimum the warm trajectory is trapped in, but only takes over when
    // it wins by a clear margin so the model does not flip between rival
    // explanations on every update.
    run_rprop(kernel_.log_params());
    run_rprop(Eigen::VectorXd::Zero(d + 1));

    kernel_.set_log_params(best_theta); // noise is untouched by the log view
    rebuild();
}

} // namespace mlei
