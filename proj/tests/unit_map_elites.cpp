#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>

#include "mlei/arm.hpp"
#include "mlei/errors.hpp"
#include "mlei/map_elites.hpp"

using namespace mlei;

namespace {

constexpr double pi = 3.14159265358979323846;

map_elites_config arm_task_config(std::uint64_t seed, std::size_t budget, std::size_t init = 200)
{
    map_elites_config cfg;
    cfg.grid_lo = Eigen::Vector2d(-5.0, -5.0);
    cfg.grid_hi = Eigen::Vector2d(5.0, 5.0);
    cfg.grid_resolution = {20, 20};
    cfg.init_count = init;
    cfg.budget = budget;
    cfg.mutation_sigma = 0.1;
    cfg.param_lo = Eigen::VectorXd::Constant(5, -pi);
    cfg.param_hi = Eigen::VectorXd::Constant(5, pi);
    cfg.seed = seed;
    return cfg;
}

std::pair<Eigen::VectorXd, double> arm_eval(const Eigen::VectorXd& params)
{
    const arm_config arm;
    return {forward_kinematics(arm, params), -params.lpNorm<1>()};
}

} // namespace

TEST_CASE("descriptor binning: boundaries and centroid distance")
{
    behavior_map map(Eigen::VectorXd::Constant(1, 0.0), Eigen::VectorXd::Constant(1, 1.0), {5}, 1);
    CHECK(map.cell_of(Eigen::VectorXd::Constant(1, 0.0)) == std::vector<int>{0});
    CHECK(map.cell_of(Eigen::VectorXd::Constant(1, 1.0)) == std::vector<int>{4}); // upper edge clamps in
    CHECK(map.cell_of(Eigen::VectorXd::Constant(1, 0.1999)) == std::vector<int>{0});
    CHECK(map.cell_of(Eigen::VectorXd::Constant(1, 0.2)) == std::vector<int>{1});
    CHECK_THROWS_AS(map.cell_of(Eigen::VectorXd::Constant(1, 1.5)), usage_error);
    CHECK_THROWS_AS(map.cell_of(Eigen::VectorXd::Constant(1, -0.1)), usage_error);

    rng gen(5);
    for (int i = 0; i < 500; ++i) {
        const Eigen::VectorXd d = Eigen::VectorXd::Constant(1, gen.uniform(0.0, 1.0));
        const auto cell = map.cell_of(d);
        const Eigen::VectorXd center = map.cell_center(cell);
        CHECK(std::abs(d(0) - center(0)) <= 0.5 * 0.2 + 1e-12); // half cell width
    }
}

TEST_CASE("insertion keeps only improvements, ties keep the incumbent")
{
    behavior_map map(Eigen::Vector2d(0.0, 0.0), Eigen::Vector2d(1.0, 1.0), {4, 4}, 1);
    const Eigen::Vector2d d(0.3, 0.3);
    CHECK(map.insert(d, Eigen::VectorXd::Constant(1, 1.0), 0.5));
    CHECK_FALSE(map.insert(d, Eigen::VectorXd::Constant(1, 2.0), 0.5)); // tie: incumbent stays
    CHECK(map.containing(d)->params(0) == 1.0);
    CHECK_FALSE(map.insert(d, Eigen::VectorXd::Constant(1, 3.0), 0.4));
    CHECK(map.containing(d)->reward == 0.5);
    CHECK(map.insert(d, Eigen::VectorXd::Constant(1, 4.0), 0.9));
    CHECK(map.containing(d)->reward == 0.9);
    CHECK(map.occupied_count() == 1);
}

TEST_CASE("budget equal to the initialization count yields only random elites")
{
    std::size_t evals = 0;
    const auto counted = [&evals](const Eigen::VectorXd& p) {
        ++evals;
        return arm_eval(p);
    };
    const behavior_map map = map_elites_run(arm_task_config(3, 200, 200), counted);
    CHECK(evals == 200);
    CHECK(map.occupied_count() > 0);
    CHECK(map.occupied_count() <= 200);
}

TEST_CASE("a constant evaluation function fills exactly one cell")
{
    map_elites_config cfg = arm_task_config(4, 500);
    const auto constant = [](const Eigen::VectorXd&) {
        return std::make_pair(Eigen::Vector2d(1.0, 1.0).eval(), 0.7);
    };
    const behavior_map map = map_elites_run(cfg, constant);
    CHECK(map.occupied_count() == 1);
}

TEST_CASE("non-finite evaluations are discarded but consume budget")
{
    map_elites_config cfg = arm_task_config(6, 50, 10);
    std::size_t evals = 0;
    const auto sometimes_bad = [&evals](const Eigen::VectorXd& p) -> std::pair<Eigen::VectorXd, double> {
        ++evals;
        if (evals % 3 == 0)
            return {Eigen::Vector2d(0.0, 0.0), std::nan("")};
        return arm_eval(p);
    };
    const behavior_map map = map_elites_run(cfg, sometimes_bad);
    CHECK(evals == 50);
    CHECK(map.occupied_count() > 0);
}

TEST_CASE("per-cell rewards and coverage are monotone across checkpoints")
{
    map_elites_config cfg = arm_task_config(8, 20000, 500);
    const std::vector<std::size_t> checkpoints = {500, 2000, 5000, 10000};
    const auto snaps = map_elites_run_checkpointed(cfg, arm_eval, checkpoints);
    REQUIRE(snaps.size() == checkpoints.size() + 1);

    for (std::size_t s = 1; s < snaps.size(); ++s) {
        CHECK(snaps[s].occupied_count() >= snaps[s - 1].occupied_count());
        for (const behavior_map::cell* prev : snaps[s - 1].occupied()) {
            const behavior_map::cell* now = snaps[s].at(prev->index);
            REQUIRE(now != nullptr);
            CHECK(now->reward >= prev->reward);
        }
    }
}

TEST_CASE("stored descriptors re-bin to their own cells")
{
    const behavior_map map = map_elites_run(arm_task_config(10, 3000), arm_eval);
    for (const behavior_map::cell* c : map.occupied())
        CHECK(map.cell_of(c->descriptor) == c->index);
}

TEST_CASE("identical seeds reproduce the map bit-exactly")
{
    const behavior_map a = map_elites_run(arm_task_config(11, 5000), arm_eval);
    const behavior_map b = map_elites_run(arm_task_config(11, 5000), arm_eval);
    CHECK(a == b);

    const behavior_map c = map_elites_run(arm_task_config(12, 5000), arm_eval);
    CHECK_FALSE(a == c); // different seed, different map
}

TEST_CASE("configuration validation")
{
    map_elites_config cfg = arm_task_config(1, 100);
    cfg.budget = 10;
    cfg.init_count = 20;
    CHECK_THROWS_AS(map_elites_run(cfg, arm_eval), usage_error);

    cfg = arm_task_config(1, 100);
    cfg.mutation_sigma = 0.0;
    CHECK_THROWS_AS(map_elites_run(cfg, arm_eval), usage_error);
}
