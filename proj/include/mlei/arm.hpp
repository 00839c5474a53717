#ifndef MLEI_ARM_HPP
#define MLEI_ARM_HPP

#include <Eigen/Dense>
#include <utility>
#include <vector>

namespace mlei {

// Planar arm with revolute joints, cumulative relative angles, base at the
// origin.  The zero configuration is stretched along +x.  Damage variants
// lock individual joints at a fixed angle regardless of the command.
struct arm_config {
    int link_count = 5;
    double link_length = 1.0;
    double joint_lo = -3.14159265358979323846;
    double joint_hi = 3.14159265358979323846;
    Eigen::Vector2d target{3.0, 3.0};
    std::vector<std::pair<int, double>> locked_joints;
};

// End-effector position.  Out-of-bounds commanded angles are clamped into
// the joint range; *clamped reports whether any clamping happened.  Locked
// joints override the commanded angle.
Eigen::Vector2d forward_kinematics(const arm_config& config, const Eigen::VectorXd& angles,
                                   bool* clamped = nullptr);

// Negative distance between the end effector and the target; <= 0 always,
// zero exactly when the target is reached.
double arm_reward(const arm_config& config, const Eigen::VectorXd& angles);

} // namespace mlei

#endif
