#ifndef MLEI_PRIOR_HPP
#define MLEI_PRIOR_HPP

#include <Eigen/Dense>
#include <memory>
#include <string>
#include <variant>

#include "mlei/arm.hpp"
#include "mlei/behavior_map.hpp"

namespace mlei {

// A candidate mean function for the GP.  Value semantics, deterministic,
// immutable after construction; safe for concurrent reads.
class prior_mean {
public:
    static prior_mean zero();
    static prior_mean constant(double c);
    // -|FWD(x) - target| on an intact arm.
    static prior_mean arm_target(const Eigen::Vector2d& target, int link_count = 5, double link_length = 1.0);
    // Stored reward of the cell containing x, fill_value for empty cells.
    static prior_mean tabular(behavior_map map, double fill_value);

    double operator()(const Eigen::VectorXd& x) const;

    // Prior values at several points, row-wise.
    Eigen::VectorXd at(const Eigen::MatrixXd& points) const;

    std::string describe() const;

private:
    struct zero_t {};
    struct constant_t {
        double value;
    };
    struct arm_target_t {
        arm_config config;
    };
    struct tabular_t {
        std::shared_ptr<const behavior_map> map;
        double fill_value;
    };

    using payload = std::variant<zero_t, constant_t, arm_target_t, tabular_t>;
    explicit prior_mean(payload p) : payload_(std::move(p)) {}

    payload payload_;
};

} // namespace mlei

#endif
