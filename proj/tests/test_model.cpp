#include <doctest.h>

#include "rearrange/io.hpp"
#include "rearrange/model.hpp"

#include <cmath>
#include <filesystem>

using namespace rearrange;

namespace {

Instance three_discs(Arrangement start, Arrangement goal) {
    Instance inst;
    inst.workspace = {10, 10};
    for (int i = 0; i < 3; ++i)
        inst.objects.push_back({i, Shape::disc(1.0)});
    inst.start = std::move(start);
    inst.goal = std::move(goal);
    return inst;
}

} // namespace

TEST_CASE("feasibility") {
    Instance inst = three_discs({{2, 2}, {5, 2}, {8, 2}}, {{2, 2}, {5, 2}, {8, 2}});
    CHECK(is_feasible(inst.start, inst));
    CHECK_FALSE(is_feasible({{2, 2}, {2, 2}, {8, 2}}, inst));
    CHECK_FALSE(is_feasible({{0.5, 2}, {5, 2}, {8, 2}}, inst));
    CHECK_THROWS_AS(is_feasible({{2, 2}, {5, 2}}, inst), MalformedArrangement);
}

TEST_CASE("plan validation") {
    Instance inst = three_discs({{2, 2}, {5, 2}, {8, 2}}, {{2, 2}, {5, 2}, {8, 2}});
    CHECK(validate_plan({}, inst).ok());

    inst.goal = {{2, 6}, {5, 2}, {8, 2}};
    const Plan good{{0, {2, 6}, ActionKind::SG}};
    CHECK(validate_plan(good, inst).ok());

    const Plan onto_occupied{{0, {5, 2}, ActionKind::SB}, {0, {2, 6}, ActionKind::BG}};
    const PlanCheck bad = validate_plan(onto_occupied, inst);
    CHECK(bad.cause == Violation::Collision);
    CHECK(bad.index == 0);
    REQUIRE(bad.other.has_value());
    CHECK(*bad.other == 1);

    const PlanCheck outside = validate_plan({{0, {-3, 2}, ActionKind::SB}}, inst);
    CHECK(outside.cause == Violation::OutOfWorkspace);

    const PlanCheck unfinished = validate_plan({{0, {2, 8}, ActionKind::SB}}, inst);
    CHECK(unfinished.cause == Violation::WrongFinalPose);
    CHECK(unfinished.index == 1);

    CHECK(validate_plan({{7, {2, 6}, ActionKind::SG}}, inst).cause == Violation::BadObject);
}

TEST_CASE("reversing a plan swaps its endpoints") {
    Instance inst = three_discs({{2, 2}, {5, 2}, {8, 2}}, {{5, 2}, {8, 2}, {2, 2}});
    const Plan forward{{0, {2, 6}, ActionKind::SB}, {2, {2, 2}, ActionKind::SG},
                       {1, {8, 2}, ActionKind::SG}, {0, {5, 2}, ActionKind::BG}};
    REQUIRE(validate_plan(forward, inst).ok());
    const Plan back = reverse_plan(inst.start, forward);
    CHECK(back.size() == forward.size());
    CHECK(validate_plan(back, inst, inst.goal, inst.start).ok());
}

TEST_CASE("action kinds follow their targets") {
    Instance inst = three_discs({{2, 2}, {5, 2}, {8, 2}}, {{5, 2}, {8, 2}, {2, 2}});
    Plan plan{{0, {2, 6}, ActionKind::SG}, {2, {2, 2}, ActionKind::SB},
              {1, {8, 2}, ActionKind::BG}, {0, {5, 2}, ActionKind::SG}};
    classify_kinds(plan, inst);
    CHECK(plan[0].kind == ActionKind::SB);
    CHECK(plan[1].kind == ActionKind::SG);
    CHECK(plan[2].kind == ActionKind::SG);
    CHECK(plan[3].kind == ActionKind::BG);
}

TEST_CASE("random instances match the requested density") {
    const Instance inst = gen_random(10, 0.5, ShapeFamily::Disc, {10, 10}, 3);
    CHECK(inst.size() == 10);
    CHECK(inst.objects[0].shape.as_disc().radius == doctest::Approx(std::sqrt(5.0 / kPi)).epsilon(1e-12));
    CHECK(std::abs(inst.density() - 0.5) < 1e-9);
    CHECK(is_feasible(inst.start, inst));
    CHECK(is_feasible(inst.goal, inst));

    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Instance r = gen_random(10, 0.4, ShapeFamily::Rect, {10, 10}, seed);
        CHECK(std::abs(r.density() - 0.4) < 1e-9);
        CHECK(is_feasible(r.start, r));
        CHECK(is_feasible(r.goal, r));
    }
    const Instance one = gen_random(1, 0.01, ShapeFamily::Disc, {10, 10}, 9);
    CHECK(is_feasible(one.start, one));
    CHECK(is_feasible(one.goal, one));
}

TEST_CASE("generators are deterministic per seed") {
    CHECK(gen_random(12, 0.3, ShapeFamily::Disc, {10, 10}, 77) == gen_random(12, 0.3, ShapeFamily::Disc, {10, 10}, 77));
    CHECK_FALSE(gen_random(12, 0.3, ShapeFamily::Disc, {10, 10}, 77) ==
                gen_random(12, 0.3, ShapeFamily::Disc, {10, 10}, 78));
    CHECK(gen_dense_small(6, 4) == gen_dense_small(6, 4));
    CHECK(gen_lattice(3, 5, 2) == gen_lattice(3, 5, 2));
}

TEST_CASE("generator preconditions") {
    CHECK_THROWS_AS(gen_random(5, 0.0, ShapeFamily::Disc, {10, 10}, 1), std::invalid_argument);
    CHECK_THROWS_AS(gen_random(5, 1.0, ShapeFamily::Disc, {10, 10}, 1), std::invalid_argument);
    CHECK_THROWS_AS(gen_dense_small(4, 1), std::invalid_argument);
    CHECK_THROWS_AS(gen_lattice(0, 3, 1), std::invalid_argument);
    CHECK_THROWS_AS(gen_random(200, 0.85, ShapeFamily::Disc, {10, 10}, 1), GenerationTimeout);
}

TEST_CASE("lattices") {
    const Instance single = gen_lattice(1, 1, 0);
    CHECK(single.size() == 1);
    CHECK(same_pose(single.start[0], single.goal[0]));

    const Instance grid = gen_lattice(3, 5, 8);
    CHECK(grid.size() == 15);
    CHECK(is_feasible(grid.start, grid));
    CHECK(is_feasible(grid.goal, grid));
    // neighbouring cells are 2.01 apart: a gap of 0.01 radius
    CHECK(grid.start[1].x - grid.start[0].x == doctest::Approx(2.01));
    CHECK(grid.start[5].y - grid.start[0].y == doctest::Approx(2.01));
    // the goal is a permutation of the start cells
    for (const Pose &g : grid.goal) {
        int hits = 0;
        for (const Pose &s : grid.start)
            hits += same_pose(g, s) ? 1 : 0;
        CHECK(hits == 1);
    }
}

TEST_CASE("dense small instances") {
    for (std::size_t n = 5; n <= 8; ++n) {
        const Instance inst = gen_dense_small(n, 100 + n);
        CHECK(inst.size() == n);
        CHECK(std::abs(inst.density() - 0.5) < 1e-9);
        CHECK(is_feasible(inst.start, inst));
        CHECK(is_feasible(inst.goal, inst));
    }
}

TEST_CASE("instance files round-trip exactly") {
    const auto dir = std::filesystem::temp_directory_path() / "rearrange_model_test";
    std::filesystem::create_directories(dir);
    for (ShapeFamily family : {ShapeFamily::Disc, ShapeFamily::Rect}) {
        const Instance inst = gen_random(9, 0.35, family, {10, 10}, 21);
        const auto path = dir / "inst.json";
        save_instance(path, inst);
        const Instance back = load_instance(path);
        CHECK(back == inst); // bitwise equal doubles
    }
}

TEST_CASE("instance schema errors") {
    nlohmann::json j = instance_to_json(gen_random(3, 0.2, ShapeFamily::Disc, {10, 10}, 1));
    j["start"].erase("1");
    CHECK_THROWS(instance_from_json(j));
    nlohmann::json k = instance_to_json(gen_random(3, 0.2, ShapeFamily::Disc, {10, 10}, 1));
    k["objects"][0]["shape"]["type"] = "triangle";
    CHECK_THROWS_AS(instance_from_json(k), SchemaError);
}

TEST_CASE("plan files round-trip") {
    const Plan plan{{0, {2, 6, 0.5}, ActionKind::SB}, {1, {8, 2}, ActionKind::SG}, {0, {5, 2}, ActionKind::BG}};
    const PlanStats stats{3, 0.25, 42};
    const nlohmann::json j = plan_to_json(plan, stats);
    CHECK(j["stats"]["actions"] == 3);
    PlanStats back_stats;
    const Plan back = plan_from_json(j, &back_stats);
    CHECK(back == plan);
    CHECK(back_stats.collision_checks == 42);
    CHECK(back_stats.time_s == 0.25);
}
