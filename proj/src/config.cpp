#include "mlei/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "mlei/errors.hpp"

namespace mlei {

namespace {

constexpr double pi = 3.14159265358979323846;

std::string trim(const std::string& s)
{
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos)
        return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_list(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, sep)) {
        tok = trim(tok);
        if (!tok.empty())
            out.push_back(tok);
    }
    return out;
}

[[noreturn]] void fail(int line, const std::string& what)
{
    throw usage_error("config parse error at line " + std::to_string(line) + ": " + what);
}

double to_double(const std::string& v, int line)
{
    try {
        std::size_t pos = 0;
        const double d = std::stod(v, &pos);
        if (pos != v.size())
            throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        fail(line, "bad number '" + v + "'");
    }
}

int to_int(const std::string& v, int line)
{
    try {
        std::size_t pos = 0;
        const int d = std::stoi(v, &pos);
        if (pos != v.size())
            throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        fail(line, "bad integer '" + v + "'");
    }
}

std::uint64_t to_u64(const std::string& v, int line)
{
    try {
        std::size_t pos = 0;
        const std::uint64_t d = std::stoull(v, &pos);
        if (pos != v.size())
            throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        fail(line, "bad seed '" + v + "'");
    }
}

} // namespace

experiment_config parse_experiment_config(std::istream& in)
{
    experiment_config cfg;
    bool kind_seen = false;
    experiment_config::variant_spec* section = nullptr;

    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = raw;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;

        if (line.front() == '[') {
            if (line.back() != ']')
                fail(lineno, "unterminated section header");
            const std::string inner = trim(line.substr(1, line.size() - 2));
            if (inner.rfind("variant ", 0) != 0)
                fail(lineno, "expected '[variant NAME]'");
            const std::string name = trim(inner.substr(8));
            if (name.empty())
                fail(lineno, "variant section needs a name");
            for (const auto& v : cfg.variants)
                if (v.name == name)
                    fail(lineno, "duplicate variant section '" + name + "'");
            cfg.variants.push_back({name, "mlei", {}});
            section = &cfg.variants.back();
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string::npos)
            fail(lineno, "expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            fail(lineno, "empty key");

        if (section) {
            if (key == "selector")
                section->selector = value;
            else if (key == "priors")
                section->priors = split_list(value, ';');
            else
                fail(lineno, "unknown key '" + key + "' in variant section");
            continue;
        }

        if (key == "kind") {
            kind_seen = true;
            if (value == "arm")
                cfg.experiment = experiment_config::kind::arm;
            else if (value == "map-adaptation")
                cfg.experiment = experiment_config::kind::map_adaptation;
            else if (value == "custom")
                cfg.experiment = experiment_config::kind::custom;
            else
                fail(lineno, "kind must be arm, map-adaptation, or custom");
        } else if (key == "replicates") {
            cfg.replicates = to_int(value, lineno);
        } else if (key == "episodes") {
            cfg.episodes = to_int(value, lineno);
        } else if (key == "init_trials") {
            cfg.init_trials = to_int(value, lineno);
        } else if (key == "hyperopt_iters") {
            cfg.hyperopt_iters = to_int(value, lineno);
        } else if (key == "seed") {
            cfg.seed = to_u64(value, lineno);
        } else if (key == "jobs") {
            cfg.jobs = to_int(value, lineno);
        } else if (key == "out") {
            cfg.out = value;
        } else if (key == "kernel_sigma") {
            cfg.kernel_sigma = to_double(value, lineno);
        } else if (key == "kernel_length_scale") {
            cfg.kernel_length_scale = to_double(value, lineno);
        } else if (key == "kernel_noise") {
            cfg.kernel_noise = to_double(value, lineno);
        } else if (key == "variants") {
            cfg.arm_variants = split_list(value, ',');
        } else if (key == "maps") {
            cfg.map_paths = split_list(value, ',');
        } else if (key == "repertoire") {
            cfg.repertoire_path = value;
        } else if (key == "conditions") {
            cfg.conditions = split_list(value, ',');
        } else if (key == "true_condition") {
            cfg.true_condition = value;
        } else if (key == "target") {
            const auto xy = split_list(value, ',');
            if (xy.size() != 2)
                fail(lineno, "target needs two coordinates");
            cfg.target_x = to_double(xy[0], lineno);
            cfg.target_y = to_double(xy[1], lineno);
        } else if (key == "objective") {
            cfg.objective = value;
        } else if (key == "objective_condition") {
            cfg.objective_condition = value;
        } else if (key == "domain_lo") {
            cfg.domain_lo.clear();
            for (const auto& tok : split_list(value, ','))
                cfg.domain_lo.push_back(to_double(tok, lineno));
        } else if (key == "domain_hi") {
            cfg.domain_hi.clear();
            for (const auto& tok : split_list(value, ','))
                cfg.domain_hi.push_back(to_double(tok, lineno));
        } else {
            fail(lineno, "unknown key '" + key + "'");
        }
    }
    if (!kind_seen)
        throw usage_error("config: missing required key 'kind'");
    return cfg;
}

experiment_config parse_experiment_config_file(const std::string& path)
{
    std::ifstream f(path);
    if (!f)
        throw runtime_error("cannot open config '" + path + "'");
    return parse_experiment_config(f);
}

prior_mean parse_prior_spec(const std::string& text)
{
    if (text == "zero")
        return prior_mean::zero();
    if (text.rfind("constant:", 0) == 0) {
        try {
            return prior_mean::constant(std::stod(text.substr(9)));
        } catch (const std::exception&) {
            throw usage_error("prior: bad constant in '" + text + "'");
        }
    }
    if (text.rfind("arm-target:", 0) == 0) {
        const auto xy = split_list(text.substr(11), ',');
        if (xy.size() != 2)
            throw usage_error("prior: arm-target needs two coordinates in '" + text + "'");
        try {
            return prior_mean::arm_target({std::stod(xy[0]), std::stod(xy[1])});
        } catch (const std::exception&) {
            throw usage_error("prior: bad coordinate in '" + text + "'");
        }
    }
    if (text.rfind("map:", 0) == 0) {
        std::string rest = text.substr(4);
        double fill = 0.0;
        bool fill_given = false;
        const auto colon = rest.rfind(':');
        if (colon != std::string::npos) {
            try {
                std::size_t pos = 0;
                fill = std::stod(rest.substr(colon + 1), &pos);
                if (pos == rest.size() - colon - 1) {
                    fill_given = true;
                    rest = rest.substr(0, colon);
                }
            } catch (const std::exception&) {
                // The suffix was not a number; treat the whole rest as a path.
            }
        }
        behavior_map map = behavior_map::load_file(rest);
        if (!fill_given) {
            // Pessimistic default: the worst stored reward.
            fill = 0.0;
            bool first = true;
            for (const behavior_map::cell* c : map.occupied()) {
                fill = first ? c->reward : std::min(fill, c->reward);
                first = false;
            }
        }
        return prior_mean::tabular(std::move(map), fill);
    }
    throw usage_error("prior: expected zero, constant:<c>, arm-target:<x>,<y>, or map:<path>[:<fill>], got '" +
                      text + "'");
}

namespace {

std::vector<result_row> run_custom(const experiment_config& cfg)
{
    if (cfg.variants.empty())
        throw usage_error("config: custom experiments need at least one [variant NAME] section");

    arm_config objective_arm = parse_arm_condition(cfg.objective_condition);
    objective_arm.target = {cfg.target_x, cfg.target_y};

    objective_fn objective;
    int dim = 0;
    Eigen::VectorXd lo, hi;
    if (cfg.objective == "arm-reach") {
        dim = objective_arm.link_count;
        lo = Eigen::VectorXd::Constant(dim, -pi);
        hi = Eigen::VectorXd::Constant(dim, pi);
        objective = [objective_arm](const Eigen::VectorXd& x, int) { return arm_reward(objective_arm, x); };
    } else if (cfg.objective == "sphere") {
        if (cfg.domain_lo.empty() || cfg.domain_lo.size() != cfg.domain_hi.size())
            throw usage_error("config: sphere objective needs matching domain_lo / domain_hi");
        dim = static_cast<int>(cfg.domain_lo.size());
        lo = Eigen::Map<const Eigen::VectorXd>(cfg.domain_lo.data(), dim);
        hi = Eigen::Map<const Eigen::VectorXd>(cfg.domain_hi.data(), dim);
        objective = [](const Eigen::VectorXd& x, int) { return -x.squaredNorm(); };
    } else {
        throw usage_error("config: objective must be arm-reach or sphere");
    }
    if (!cfg.domain_lo.empty()) {
        if (cfg.domain_lo.size() != static_cast<std::size_t>(dim) || cfg.domain_hi.size() != cfg.domain_lo.size())
            throw usage_error("config: domain bounds have the wrong dimension");
        lo = Eigen::Map<const Eigen::VectorXd>(cfg.domain_lo.data(), dim);
        hi = Eigen::Map<const Eigen::VectorXd>(cfg.domain_hi.data(), dim);
    }

    std::vector<result_row> all;
    const std::uint64_t replicate_root = rng::derive(cfg.seed, "replicate");
    for (const auto& variant : cfg.variants) {
        std::vector<prior_mean> priors;
        if (variant.priors.empty())
            priors.push_back(prior_mean::zero());
        for (const std::string& spec : variant.priors)
            priors.push_back(parse_prior_spec(spec));

        for (int r = 0; r < cfg.replicates; ++r) {
            bo_run_config bo;
            bo.search_space = domain::box(lo, hi);
            bo.priors = priors;
            bo.selector = selector_policy::parse(variant.selector);
            bo.init_trials = cfg.init_trials;
            bo.max_iterations = cfg.episodes;
            bo.seed = rng::derive(replicate_root, static_cast<std::uint64_t>(r));
            bo.kernel_init = kernel_params(
                cfg.kernel_sigma, Eigen::VectorXd::Constant(dim, cfg.kernel_length_scale), cfg.kernel_noise);
            bo.hyperopt_iters = cfg.hyperopt_iters;
            const auto records = run_bo(bo, objective);
            for (const episode_record& rec : records) {
                result_row row;
                row.variant = variant.name;
                row.replicate = r;
                row.episode = rec.iteration;
                row.selected_prior = rec.selected_prior == episode_record::init_marker
                                         ? "init"
                                         : std::to_string(rec.selected_prior);
                row.reward = rec.reward;
                row.best_so_far = rec.best_so_far;
                row.distance = -rec.reward;
                row.per_prior_log_likelihood = rec.per_prior_log_likelihood;
                all.push_back(std::move(row));
            }
        }
    }
    return all;
}

} // namespace

std::vector<result_row> run_experiment(const experiment_config& cfg)
{
    switch (cfg.experiment) {
    case experiment_config::kind::arm: {
        std::vector<result_row> all;
        for (const std::string& variant : cfg.arm_variants) {
            arm_experiment_config ac;
            ac.replicates = cfg.replicates;
            ac.episodes = cfg.episodes;
            ac.init_trials = cfg.init_trials;
            ac.hyperopt_iters = cfg.hyperopt_iters;
            ac.seed = cfg.seed;
            ac.jobs = cfg.jobs;
            auto rows = run_arm_experiment(variant, ac);
            all.insert(all.end(), std::make_move_iterator(rows.begin()), std::make_move_iterator(rows.end()));
        }
        return all;
    }
    case experiment_config::kind::map_adaptation: {
        map_adaptation_task task;
        task.true_condition = parse_arm_condition(cfg.true_condition);
        task.target = {cfg.target_x, cfg.target_y};
        if (!cfg.repertoire_path.empty()) {
            const behavior_map repertoire = behavior_map::load_file(cfg.repertoire_path);
            if (cfg.conditions.size() < 2)
                throw usage_error("config: map-adaptation needs 'conditions = <c1>,<c2>,...'");
            for (const std::string& cond : cfg.conditions) {
                task.condition_maps.push_back(
                    build_adaptation_map(repertoire, parse_arm_condition(cond), task.target));
                task.condition_names.push_back(cond);
            }
        } else {
            if (cfg.map_paths.empty())
                throw usage_error(
                    "config: map-adaptation needs 'repertoire = <file>' with 'conditions = ...', or "
                    "'maps = <file>,<file>,...'");
            for (const std::string& path : cfg.map_paths) {
                task.condition_maps.push_back(behavior_map::load_file(path));
                task.condition_names.push_back(path);
            }
        }

        std::vector<experiment_config::variant_spec> variants = cfg.variants;
        if (variants.empty())
            variants.push_back({"adapt", "mlei", {}});

        std::vector<result_row> all;
        for (const auto& variant : variants) {
            adaptation_experiment_config ac;
            ac.replicates = cfg.replicates;
            ac.episodes = cfg.episodes;
            ac.init_trials = cfg.init_trials;
            ac.hyperopt_iters = cfg.hyperopt_iters;
            ac.seed = cfg.seed;
            ac.jobs = cfg.jobs;
            ac.selector = selector_policy::parse(variant.selector);
            auto rows = run_map_adaptation_experiment(task, ac);
            for (auto& row : rows)
                row.variant = variant.name;
            all.insert(all.end(), std::make_move_iterator(rows.begin()), std::make_move_iterator(rows.end()));
        }
        return all;
    }
    case experiment_config::kind::custom:
        return run_custom(cfg);
    }
    throw usage_error("config: unknown experiment kind");
}

} // namespace mlei
