#ifndef MLEI_KERNEL_HPP
#define MLEI_KERNEL_HPP

#include <Eigen/Dense>

namespace mlei {

// Squared-exponential ARD kernel hyperparameters: amplitude sigma, one
// length scale per input dimension, and the observation noise sigma_n.
// Amplitude and length scales are stored in log form so positivity is
// structural; the noise may be exactly zero and is kept linear.
class kernel_params {
public:
    kernel_params(double signal_sigma, Eigen::VectorXd length_scales, double noise_sigma);

    // sigma = 1, all length scales 1, configurable noise.
    static kernel_params unit(int dim, double noise_sigma);

    int dim() const { return static_cast<int>(log_length_scales_.size()); }
    double signal_sigma() const { return std::exp(log_signal_sigma_); }
    Eigen::VectorXd length_scales() const { return log_length_scales_.array().exp(); }
    double noise_sigma() const { return noise_sigma_; }

    // Optimizer view: [log sigma, log l_1 .. log l_D].  Noise is excluded;
    // it is held fixed at its configured value.
    Eigen::VectorXd log_params() const;
    void set_log_params(const Eigen::VectorXd& theta);

private:
    double log_signal_sigma_;
    Eigen::VectorXd log_length_scales_;
    double noise_sigma_;
};

// sigma^2 * exp(-1/2 sum_i ((x_i - y_i) / l_i)^2)
double kernel_eval(const kernel_params& params, const Eigen::VectorXd& x, const Eigen::VectorXd& y);

// K[i][j] = kernel_eval(x_i, x_j) + sigma_n^2 * delta_ij, points given row-wise (t x D).
Eigen::MatrixXd gram_matrix(const kernel_params& params, const Eigen::MatrixXd& points);

} // namespace mlei

#endif
