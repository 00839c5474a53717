#ifndef MLEI_BEHAVIOR_MAP_HPP
#define MLEI_BEHAVIOR_MAP_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace mlei {

// Grid archive over a bounded descriptor space.  Each cell holds at most one
// elite: its descriptor, the parameter vector that produced it, and the
// reward.  Serialized as the line-oriented "MAP v1" text format.
class behavior_map {
public:
    struct cell {
        std::vector<int> index;
        Eigen::VectorXd descriptor;
        Eigen::VectorXd params;
        double reward = 0.0;
    };

    behavior_map(Eigen::VectorXd lo, Eigen::VectorXd hi, std::vector<int> resolution, int param_dim);

    int dim() const { return static_cast<int>(resolution_.size()); }
    int param_dim() const { return param_dim_; }
    const Eigen::VectorXd& lo() const { return lo_; }
    const Eigen::VectorXd& hi() const { return hi_; }
    const std::vector<int>& resolution() const { return resolution_; }

    std::size_t total_cells() const;
    std::size_t occupied_count() const { return cells_.size(); }
    double coverage() const { return static_cast<double>(cells_.size()) / static_cast<double>(total_cells()); }

    // Uniform binning; values on the upper boundary clamp into the last
    // cell, values outside the bounds by more than a small tolerance are
    // a usage error.
    std::vector<int> cell_of(const Eigen::VectorXd& descriptor) const;

    Eigen::VectorXd cell_center(const std::vector<int>& index) const;

    // MAP-Elites insertion rule: empty cell stores, a strictly better reward
    // replaces, ties keep the incumbent.  Returns whether the map changed.
    bool insert(const Eigen::VectorXd& descriptor, const Eigen::VectorXd& params, double reward);

    const cell* at(const std::vector<int>& index) const;
    const cell* containing(const Eigen::VectorXd& descriptor) const;

    // Occupied cells in flat-index order (deterministic).
    std::vector<const cell*> occupied() const;

    bool operator==(const behavior_map& other) const;

    void save(std::ostream& out) const;
    void save_file(const std::string& path) const;
    static behavior_map load(std::istream& in);
    static behavior_map load_file(const std::string& path);

    std::int64_t flat_index(const std::vector<int>& index) const;

private:
    Eigen::VectorXd lo_, hi_;
    std::vector<int> resolution_;
    int param_dim_;
    std::map<std::int64_t, cell> cells_;
};

} // namespace mlei

#endif
