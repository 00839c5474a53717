#ifndef MLEI_DOMAIN_HPP
#define MLEI_DOMAIN_HPP

#include <Eigen/Dense>
#include <variant>
#include <vector>

#include "mlei/errors.hpp"

namespace mlei {

// Search space: either a continuous box or an explicit candidate set.
class domain {
public:
    static domain box(Eigen::VectorXd lo, Eigen::VectorXd hi)
    {
        if (lo.size() != hi.size() || lo.size() == 0)
            throw usage_error("domain: bounds must be non-empty and of equal size");
        if (((hi - lo).array() <= 0.0).any())
            throw usage_error("domain: lower bound must be strictly below upper bound");
        return domain(box_t{std::move(lo), std::move(hi)});
    }

    static domain candidates(std::vector<Eigen::VectorXd> points)
    {
        if (points.empty())
            throw usage_error("domain: candidate set must be non-empty");
        return domain(finite_t{std::move(points)});
    }

    bool is_box() const { return std::holds_alternative<box_t>(v_); }
    bool is_finite() const { return !is_box(); }

    const Eigen::VectorXd& lo() const { return std::get<box_t>(v_).lo; }
    const Eigen::VectorXd& hi() const { return std::get<box_t>(v_).hi; }
    const std::vector<Eigen::VectorXd>& points() const { return std::get<finite_t>(v_).points; }

    int dim() const
    {
        return is_box() ? static_cast<int>(lo().size()) : static_cast<int>(points().front().size());
    }

    bool contains(const Eigen::VectorXd& x, double tol = 1e-9) const
    {
        if (is_box())
            return x.size() == lo().size() && (x.array() >= lo().array() - tol).all() &&
                   (x.array() <= hi().array() + tol).all();
        for (const auto& p : points())
            if (p.size() == x.size() && (p - x).lpNorm<Eigen::Infinity>() <= tol)
                return true;
        return false;
    }

private:
    struct box_t {
        Eigen::VectorXd lo, hi;
    };
    struct finite_t {
        std::vector<Eigen::VectorXd> points;
    };
    using payload = std::variant<box_t, finite_t>;
    explicit domain(payload v) : v_(std::move(v)) {}
    payload v_;
};

} // namespace mlei

#endif
