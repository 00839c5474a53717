#include "mlei/kernel.hpp"

#include <cmath>

#include "mlei/errors.hpp"

namespace mlei {

kernel_params::kernel_params(double signal_sigma, Eigen::VectorXd length_scales, double noise_sigma)
    : noise_sigma_(noise_sigma)
{
    if (!(signal_sigma > 0.0))
        throw usage_error("kernel_params: signal sigma must be positive");
    if (length_scales.size() == 0 || (length_scales.array() <= 0.0).any())
        throw usage_error("kernel_params: every length scale must be positive");
    if (noise_sigma < 0.0)
        throw usage_error("kernel_params: noise sigma must be non-negative");
    log_signal_sigma_ = std::log(signal_sigma);
    log_length_scales_ = length_scales.array().log();
}

kernel_params kernel_params::unit(int dim, double noise_sigma)
{
    return kernel_params(1.0, Eigen::VectorXd::Ones(dim), noise_sigma);
}

Eigen::VectorXd kernel_params::log_params() const
{
    Eigen::VectorXd theta(dim() + 1);
    theta(0) = log_signal_sigma_;
    theta.tail(dim()) = log_length_scales_;
    return theta;
}

void kernel_params::set_log_params(const Eigen::VectorXd& theta)
{
    if (theta.size() != dim() + 1)
        throw usage_error("kernel_params: log-parameter vector has wrong size");
    log_signal_sigma_ = theta(0);
    log_length_scales_ = theta.tail(dim());
}

double kernel_eval(const kernel_params& params, const Eigen::VectorXd& x, const Eigen::VectorXd& y)
{
    if (x.size() != params.dim() || y.size() != params.dim())
        throw usage_error("kernel_eval: point dimension does not match length scales");
    const Eigen::ArrayXd scaled = (x - y).array() / params.length_scales().array();
    const double s2 = params.signal_sigma() * params.signal_sigma();
    return s2 * std::exp(-0.5 * scaled.square().sum());
}

Eigen::MatrixXd gram_matrix(const kernel_params& params, const Eigen::MatrixXd& points)
{
    const Eigen::Index t = points.rows();
    if (points.cols() != params.dim())
        throw usage_error("gram_matrix: point dimension does not match length scales");
    const Eigen::ArrayXd inv_ls = params.length_scales().array().inverse();
    const double s2 = params.signal_sigma() * params.signal_sigma();
    const double n2 = params.noise_sigma() * params.noise_sigma();

    Eigen::MatrixXd k(t, t);
    for (Eigen::Index i = 0; i < t; ++i) {
        k(i, i) = s2 + n2;
        for (Eigen::Index j = 0; j < i; ++j) {
            const Eigen::ArrayXd d = (points.row(i) - points.row(j)).transpose().array() * inv_ls;
            const double v = s2 * std::exp(-0.5 * d.square().sum());
            k(i, j) = v;
            k(j, i) = v;
        }
    }
    return k;
}

} // namespace mlei
