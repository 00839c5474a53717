#include "mlei/prior.hpp"

#include <cstdio>

namespace mlei {

prior_mean prior_mean::zero()
{
    return prior_mean(payload{zero_t{}});
}

prior_mean prior_mean::constant(double c)
{
    return prior_mean(payload{constant_t{c}});
}

prior_mean prior_mean::arm_target(const Eigen::Vector2d& target, int link_count, double link_length)
{
    arm_config config;
    config.link_count = link_count;
    config.link_length = link_length;
    config.target = target;
    return prior_mean(payload{arm_target_t{std::move(config)}});
}

prior_mean prior_mean::tabular(behavior_map map, double fill_value)
{
    return prior_mean(payload{tabular_t{std::make_shared<behavior_map>(std::move(map)), fill_value}});
}

double prior_mean::operator()(const Eigen::VectorXd& x) const
{
    return std::visit(
        [&](const auto& p) -> double {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, zero_t>) {
                return 0.0;
            } else if constexpr (std::is_same_v<T, constant_t>) {
                return p.value;
            } else if constexpr (std::is_same_v<T, arm_target_t>) {
                return arm_reward(p.config, x);
            } else {
                const behavior_map::cell* c = p.map->containing(x);
                return c ? c->reward : p.fill_value;
            }
        },
        payload_);
}

Eigen::VectorXd prior_mean::at(const Eigen::MatrixXd& points) const
{
    Eigen::VectorXd v(points.rows());
    for (Eigen::Index i = 0; i < points.rows(); ++i)
        v(i) = (*this)(points.row(i).transpose());
    return v;
}

std::string prior_mean::describe() const
{
    return std::visit(
        [](const auto& p) -> std::string {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, zero_t>) {
                return "zero";
            } else if constexpr (std::is_same_v<T, constant_t>) {
                char buf[48];
                std::snprintf(buf, sizeof(buf), "constant(%g)", p.value);
                return buf;
            } else if constexpr (std::is_same_v<T, arm_target_t>) {
                char buf[64];
                std::snprintf(buf, sizeof(buf), "arm-target(%g,%g)", p.config.target.x(), p.config.target.y());
                return buf;
            } else {
                return "tabular(" + std::to_string(p.map->occupied_count()) + " cells)";
            }
        },
        payload_);
}

} // namespace mlei
