#include "mlei/arm.hpp"

#include <cmath>

#include "mlei/errors.hpp"

namespace mlei {

Eigen::Vector2d forward_kinematics(const arm_config& config, const Eigen::VectorXd& angles, bool* clamped)
{
    if (angles.size() != config.link_count)
        throw usage_error("forward_kinematics: expected one angle per link");
    if (clamped)
        *clamped = false;

    Eigen::VectorXd theta = angles;
    for (int i = 0; i < config.link_count; ++i) {
        if (theta(i) < config.joint_lo || theta(i) > config.joint_hi) {
            theta(i) = std::min(std::max(theta(i), config.joint_lo), config.joint_hi);
            if (clamped)
                *clamped = true;
        }
    }
    for (const auto& [joint, angle] : config.locked_joints) {
        if (joint < 0 || joint >= config.link_count)
            throw usage_error("forward_kinematics: locked joint index out of range");
        theta(joint) = angle;
    }

    Eigen::Vector2d pos(0.0, 0.0);
    double heading = 0.0;
    for (int i = 0; i < config.link_count; ++i) {
        heading += theta(i);
        pos.x() += config.link_length * std::cos(heading);
        pos.y() += config.link_length * std::sin(heading);
    }
    return pos;
}

double arm_reward(const arm_config& config, const Eigen::VectorXd& angles)
{
    return -(forward_kinematics(config, angles) - config.target).norm();
}

} // namespace mlei
