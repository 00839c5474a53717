#include "mlei/behavior_map.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "mlei/errors.hpp"

namespace mlei {

namespace {

// Shortest exact decimal: %.17g round-trips any double.
std::string fmt(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string join_csv(const Eigen::VectorXd& v)
{
    std::string s;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (i)
            s += ',';
        s += fmt(v(i));
    }
    return s;
}

std::string join_csv(const std::vector<int>& v)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i)
            s += ',';
        s += std::to_string(v[i]);
    }
    return s;
}

[[noreturn]] void parse_fail(int line, const std::string& what)
{
    throw usage_error("MAP v1 parse error at line " + std::to_string(line) + ": " + what);
}

std::vector<double> split_doubles(const std::string& s, char sep, int line)
{
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, sep)) {
        if (tok.empty())
            continue;
        try {
            std::size_t pos = 0;
            out.push_back(std::stod(tok, &pos));
            if (pos != tok.size())
                parse_fail(line, "trailing characters in number '" + tok + "'");
        } catch (const std::invalid_argument&) {
            parse_fail(line, "expected a number, got '" + tok + "'");
        } catch (const std::out_of_range&) {
            parse_fail(line, "number out of range '" + tok + "'");
        }
    }
    return out;
}

} // namespace

behavior_map::behavior_map(Eigen::VectorXd lo, Eigen::VectorXd hi, std::vector<int> resolution, int param_dim)
    : lo_(std::move(lo)), hi_(std::move(hi)), resolution_(std::move(resolution)), param_dim_(param_dim)
{
    if (lo_.size() != hi_.size() || static_cast<std::size_t>(lo_.size()) != resolution_.size())
        throw usage_error("behavior_map: bounds and resolution sizes disagree");
    if (lo_.size() == 0)
        throw usage_error("behavior_map: descriptor dimension must be at least 1");
    for (int i = 0; i < dim(); ++i) {
        if (!(lo_(i) < hi_(i)))
            throw usage_error("behavior_map: lower bound must be below upper bound");
        if (resolution_[i] < 1)
            throw usage_error("behavior_map: resolution must be at least 1 per dimension");
    }
    if (param_dim_ < 0)
        throw usage_error("behavior_map: parameter dimension must be non-negative");
}

std::size_t behavior_map::total_cells() const
{
    std::size_t n = 1;
    for (int r : resolution_)
        n *= static_cast<std::size_t>(r);
    return n;
}

std::vector<int> behavior_map::cell_of(const Eigen::VectorXd& descriptor) const
{
    if (descriptor.size() != dim())
        throw usage_error("cell_of: descriptor dimension mismatch");
    std::vector<int> idx(dim());
    for (int i = 0; i < dim(); ++i) {
        const double span = hi_(i) - lo_(i);
        const double tol = 1e-9 * span;
        double v = descriptor(i);
        if (v < lo_(i) - tol || v > hi_(i) + tol)
            throw usage_error("cell_of: descriptor outside map bounds in dimension " + std::to_string(i));
        v = std::min(std::max(v, lo_(i)), hi_(i));
        int c = static_cast<int>(std::floor((v - lo_(i)) / span * resolution_[i]));
        if (c >= resolution_[i])
            c = resolution_[i] - 1; // upper boundary clamps inward
        if (c < 0)
            c = 0;
        idx[i] = c;
    }
    return idx;
}

Eigen::VectorXd behavior_map::cell_center(const std::vector<int>& index) const
{
    if (index.size() != static_cast<std::size_t>(dim()))
        throw usage_error("cell_center: index dimension mismatch");
    Eigen::VectorXd c(dim());
    for (int i = 0; i < dim(); ++i) {
        if (index[i] < 0 || index[i] >= resolution_[i])
            throw usage_error("cell_center: index out of range");
        const double w = (hi_(i) - lo_(i)) / resolution_[i];
        c(i) = lo_(i) + (index[i] + 0.5) * w;
    }
    return c;
}

std::int64_t behavior_map::flat_index(const std::vector<int>& index) const
{
    std::int64_t f = 0;
    for (int i = 0; i < dim(); ++i)
        f = f * resolution_[i] + index[i];
    return f;
}

bool behavior_map::insert(const Eigen::VectorXd& descriptor, const Eigen::VectorXd& params, double reward)
{
    if (params.size() != param_dim_)
        throw usage_error("insert: parameter dimension mismatch");
    std::vector<int> idx = cell_of(descriptor);
    const std::int64_t f = flat_index(idx);
    auto it = cells_.find(f);
    if (it != cells_.end() && !(reward > it->second.reward))
        return false;
    cells_[f] = cell{std::move(idx), descriptor, params, reward};
    return true;
}

const behavior_map::cell* behavior_map::at(const std::vector<int>& index) const
{
    if (index.size() != static_cast<std::size_t>(dim()))
        throw usage_error("at: index dimension mismatch");
    auto it = cells_.find(flat_index(index));
    return it == cells_.end() ? nullptr : &it->second;
}

const behavior_map::cell* behavior_map::containing(const Eigen::VectorXd& descriptor) const
{
    auto it = cells_.find(flat_index(cell_of(descriptor)));
    return it == cells_.end() ? nullptr : &it->second;
}

std::vector<const behavior_map::cell*> behavior_map::occupied() const
{
    std::vector<const cell*> out;
    out.reserve(cells_.size());
    for (const auto& [f, c] : cells_)
        out.push_back(&c);
    return out;
}

bool behavior_map::operator==(const behavior_map& other) const
{
    if (lo_ != other.lo_ || hi_ != other.hi_ || resolution_ != other.resolution_ || param_dim_ != other.param_dim_)
        return false;
    if (cells_.size() != other.cells_.size())
        return false;
    for (const auto& [f, c] : cells_) {
        auto it = other.cells_.find(f);
        if (it == other.cells_.end())
            return false;
        const cell& o = it->second;
        if (c.index != o.index || c.descriptor != o.descriptor || c.params != o.params || c.reward != o.reward)
            return false;
    }
    return true;
}

void behavior_map::save(std::ostream& out) const
{
    out << "MAP v1 dim=" << dim() << " res=" << join_csv(resolution_) << " lo=" << join_csv(lo_)
        << " hi=" << join_csv(hi_) << " param_dim=" << param_dim_ << "\n";
    for (const auto& [f, c] : cells_) {
        for (std::size_t i = 0; i < c.index.size(); ++i)
            out << (i ? " " : "") << c.index[i];
        out << " |";
        for (Eigen::Index i = 0; i < c.descriptor.size(); ++i)
            out << ' ' << fmt(c.descriptor(i));
        out << " | " << fmt(c.reward) << " |";
        for (Eigen::Index i = 0; i < c.params.size(); ++i)
            out << ' ' << fmt(c.params(i));
        out << "\n";
    }
}

void behavior_map::save_file(const std::string& path) const
{
    std::ofstream f(path);
    if (!f)
        throw runtime_error("cannot open '" + path + "' for writing");
    save(f);
    if (!f.good())
        throw runtime_error("write failed for '" + path + "'");
}

behavior_map behavior_map::load(std::istream& in)
{
    std::string line;
    if (!std::getline(in, line))
        parse_fail(1, "empty input, expected MAP v1 header");

    int dim = -1, param_dim = -1;
    std::vector<double> lo, hi;
    std::vector<int> res;
    {
        std::stringstream ss(line);
        std::string magic, version;
        ss >> magic >> version;
        if (magic != "MAP" || version != "v1")
            parse_fail(1, "bad magic, expected 'MAP v1'");
        std::string field;
        while (ss >> field) {
            auto eq = field.find('=');
            if (eq == std::string::npos)
                parse_fail(1, "malformed header field '" + field + "'");
            const std::string key = field.substr(0, eq);
            const std::string val = field.substr(eq + 1);
            if (key == "dim") {
                dim = std::stoi(val);
            } else if (key == "res") {
                for (double v : split_doubles(val, ',', 1))
                    res.push_back(static_cast<int>(v));
            } else if (key == "lo") {
                lo = split_doubles(val, ',', 1);
            } else if (key == "hi") {
                hi = split_doubles(val, ',', 1);
            } else if (key == "param_dim") {
                param_dim = std::stoi(val);
            } else {
                parse_fail(1, "unknown header key '" + key + "'");
            }
        }
    }
    if (dim < 1 || param_dim < 0)
        parse_fail(1, "header missing dim or param_dim");
    if (static_cast<int>(res.size()) != dim || static_cast<int>(lo.size()) != dim || static_cast<int>(hi.size()) != dim)
        parse_fail(1, "header res/lo/hi lengths disagree with dim");

    behavior_map map(Eigen::Map<Eigen::VectorXd>(lo.data(), dim), Eigen::Map<Eigen::VectorXd>(hi.data(), dim), res,
                     param_dim);

    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty())
            continue;
        // cell_idx... | descriptor... | reward | params...
        std::vector<std::string> parts;
        {
            std::size_t start = 0;
            while (true) {
                auto bar = line.find('|', start);
                parts.push_back(line.substr(start, bar == std::string::npos ? std::string::npos : bar - start));
                if (bar == std::string::npos)
                    break;
                start = bar + 1;
            }
        }
        if (parts.size() != 4)
            parse_fail(lineno, "expected 4 '|'-separated sections, got " + std::to_string(parts.size()));

        auto idx_d = split_doubles(parts[0], ' ', lineno);
        auto desc_d = split_doubles(parts[1], ' ', lineno);
        auto reward_d = split_doubles(parts[2], ' ', lineno);
        auto params_d = split_doubles(parts[3], ' ', lineno);
        if (static_cast<int>(idx_d.size()) != dim)
            parse_fail(lineno, "cell index has wrong dimension");
        if (static_cast<int>(desc_d.size()) != dim)
            parse_fail(lineno, "descriptor has wrong dimension");
        if (reward_d.size() != 1)
            parse_fail(lineno, "expected a single reward value");
        if (static_cast<int>(params_d.size()) != param_dim)
            parse_fail(lineno, "parameter vector has wrong dimension");

        cell c;
        c.index.resize(dim);
        for (int i = 0; i < dim; ++i) {
            c.index[i] = static_cast<int>(idx_d[i]);
            if (c.index[i] < 0 || c.index[i] >= res[i])
                parse_fail(lineno, "cell index out of range in dimension " + std::to_string(i));
        }
        c.descriptor = Eigen::Map<Eigen::VectorXd>(desc_d.data(), dim);
        c.reward = reward_d[0];
        c.params = Eigen::Map<Eigen::VectorXd>(params_d.data(), param_dim);

        if (map.cell_of(c.descriptor) != c.index)
            parse_fail(lineno, "descriptor does not fall inside its cell");
        const std::int64_t f = map.flat_index(c.index);
        if (map.cells_.count(f))
            parse_fail(lineno, "duplicate cell index");
        map.cells_.emplace(f, std::move(c));
    }
    return map;
}

behavior_map behavior_map::load_file(const std::string& path)
{
    std::ifstream f(path);
    if (!f)
        throw runtime_error("cannot open '" + path + "' for reading");
    return load(f);
}

} // namespace mlei
