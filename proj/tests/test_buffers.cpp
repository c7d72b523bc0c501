#include <doctest.h>

#include "rearrange/buffers.hpp"

#include <cmath>

using namespace rearrange;

namespace {

Instance one_disc(double r) {
    Instance inst;
    inst.workspace = {10, 10};
    inst.objects.push_back({0, Shape::disc(r)});
    inst.start = {{5, 5}};
    inst.goal = {{5, 5}};
    return inst;
}

ConstraintSet centre_obstacle() { return {{Obstacle{Shape::disc(1.0), Pose(5, 5)}}}; }

Instance row_instance(Workspace ws) {
    Instance inst;
    inst.workspace = ws;
    for (int i = 0; i < 3; ++i)
        inst.objects.push_back({i, Shape::disc(1.0)});
    inst.start = {{1, 1}, {3, 1}, {5, 1}};
    inst.goal = {inst.start[1], inst.start[2], inst.start[0]};
    return inst;
}

} // namespace

TEST_CASE("sampling around a central obstacle") {
    const Instance inst = one_disc(1.0);
    CheckCounter c;
    Rng rng(3);
    CHECK(sample_buffers({}, {{}}, {std::nullopt}, inst, rng, c).success);
    for (int t = 0; t < 50; ++t) {
        const GenerationResult r = sample_buffers({0}, centre_obstacle(), {std::nullopt}, inst, rng, c);
        REQUIRE(r.success);
        const Pose &p = *r.buffers[0];
        CHECK(std::hypot(p.x - 5, p.y - 5) >= 2.0 - 1e-9);
        CHECK(p.x >= 1.0);
        CHECK(p.y >= 1.0);
        CHECK(p.x <= 9.0);
        CHECK(p.y <= 9.0);
    }
}

TEST_CASE("a buffer filling the workspace cannot avoid the centre") {
    const Instance inst = one_disc(5.0);
    CheckCounter c;
    Rng rng(3);
    CHECK_FALSE(sample_buffers({0}, centre_obstacle(), {std::nullopt}, inst, rng, c).success);
    CHECK_FALSE(optimize_buffers({0}, centre_obstacle(), {std::nullopt}, inst, rng, c).success);
}

TEST_CASE("optimizer finds a feasible buffer") {
    const Instance inst = one_disc(1.0);
    CheckCounter c;
    Rng rng(9);
    CHECK(optimize_buffers({}, {{}}, {std::nullopt}, inst, rng, c).success);
    const GenerationResult r = optimize_buffers({0}, centre_obstacle(), {std::nullopt}, inst, rng, c);
    REQUIRE(r.success);
    const Pose &p = *r.buffers[0];
    CHECK(std::hypot(p.x - 5, p.y - 5) - 2.0 > -1e-7);
    CHECK(contained(Shape::disc(1.0), p, inst.workspace));
    CHECK(penetration(Shape::disc(1.0), p, Shape::disc(1.0), Pose(5, 5)) < 1e-7);
}

TEST_CASE("optimizer keeps concurrent buffers apart") {
    Instance inst = row_instance({10, 10});
    ConstraintSet cons(3);
    for (int i = 0; i < 3; ++i)
        cons[static_cast<std::size_t>(i)].push_back({Shape::disc(1.0), Pose(5, 5)});
    CheckCounter c;
    Rng rng(1);
    const GenerationResult r = optimize_buffers({0, 1, 2}, cons, BufferAssignment(3), inst, rng, c);
    REQUIRE(r.success);
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            CHECK_FALSE(collides(Shape::disc(1.0), *r.buffers[static_cast<std::size_t>(i)], Shape::disc(1.0),
                                 *r.buffers[static_cast<std::size_t>(j)], c));
}

TEST_CASE("optimizer rejects rectangles") {
    Instance inst = one_disc(1.0);
    inst.objects[0].shape = Shape::rect(1, 2);
    CheckCounter c;
    Rng rng(1);
    CHECK_THROWS_AS(optimize_buffers({0}, {{}}, {std::nullopt}, inst, rng, c), UnsupportedShape);
}

TEST_CASE("valid buffers are kept bit for bit") {
    const Instance inst = one_disc(1.0);
    CheckCounter c;
    Rng rng(4);
    const BufferAssignment old{Pose(1.234567891, 8.7654321, 0.0)};
    for (int t = 0; t < 5; ++t) {
        CHECK(sample_buffers({0}, centre_obstacle(), old, inst, rng, c).buffers == old);
        CHECK(optimize_buffers({0}, centre_obstacle(), old, inst, rng, c).buffers == old);
    }
    const BufferAssignment stale{Pose(5.5, 5, 0.0)};
    const GenerationResult moved = sample_buffers({0}, centre_obstacle(), stale, inst, rng, c);
    REQUIRE(moved.success);
    CHECK_FALSE(moved.buffers == stale);
}

TEST_CASE("monotone plans need no buffers") {
    Instance inst = row_instance({10, 10});
    inst.goal = {{1.05, 5}, {3.15, 5}, {5.25, 5}};
    const PrimitivePlan plan{{{0, ActionKind::SG}, {1, ActionKind::SG}, {2, ActionKind::SG}}};
    CheckCounter c;
    Rng rng(0);
    const AllocationResult r = allocate(plan, inst.start, inst.goal, inst, BufferBackend::Sampling, rng, c);
    CHECK(r.success());
    for (const auto &b : r.buffers)
        CHECK_FALSE(b.has_value());
}

TEST_CASE("a snug row leaves no room for a buffer") {
    // three unit discs packed into a 6 x 2 tray
    const Instance inst = row_instance({6, 2});
    REQUIRE(is_feasible(inst.start, inst));
    CheckCounter c;
    const DependencyGraph g = build_dependency_graph(inst.start, inst.goal, inst, c);
    const PrimitivePlan plan = derive_plan(rbm(g).order, g);
    REQUIRE(plan.actions.front().move == ActionKind::SB);

    // exhaustive sweep: every pose in the tray other than the starts themselves
    // overlaps one of them
    int clear = 0;
    for (int i = 0; i < 100; ++i)
        for (int j = 0; j < 100; ++j) {
            const Pose p(1.0 + 4.0 * i / 99.0, 1.0 + 1e-3 * j / 99.0);
            bool at_start = false, ok = true;
            for (const Pose &s : inst.start) {
                at_start = at_start || same_pose(p, s);
                ok = ok && !collides(Shape::disc(1.0), p, Shape::disc(1.0), s, c);
            }
            clear += ok && !at_start ? 1 : 0;
        }
    CHECK(clear == 0);

    for (BufferBackend backend : {BufferBackend::Sampling, BufferBackend::Optimization}) {
        Rng rng(7);
        const AllocationResult r = allocate(plan, inst.start, inst.goal, inst, backend, rng, c);
        REQUIRE_FALSE(r.success());
        CHECK(*r.failed_step == 0);
        CHECK(instantiate(plan, 0, r.buffers, inst.start, inst.goal).empty());
    }
}

TEST_CASE("successful allocations instantiate to valid plans") {
    int successes = 0;
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const Instance inst = gen_random(12, 0.35, seed % 3 ? ShapeFamily::Disc : ShapeFamily::Rect, {10, 10}, seed);
        CheckCounter c;
        const DependencyGraph g = build_dependency_graph(inst.start, inst.goal, inst, c);
        const PrimitivePlan plan = derive_plan(rbm(g).order, g);
        const BufferBackend backend = inst.all_discs() && seed % 2 ? BufferBackend::Optimization : BufferBackend::Sampling;
        Rng rng(seed);
        const AllocationResult r = allocate(plan, inst.start, inst.goal, inst, backend, rng, c);
        if (r.success()) {
            ++successes;
            const Plan full = instantiate(plan, plan.actions.size(), r.buffers, inst.start, inst.goal);
            CHECK(validate_plan(full, inst).ok());
        } else {
            // the prefix before the failing step is still executable
            const Plan prefix = instantiate(plan, *r.failed_step, r.buffers, inst.start, inst.goal);
            const Arrangement reached = execute(inst.start, prefix);
            CHECK(validate_plan(prefix, inst, inst.start, reached).ok());
        }
    }
    CHECK(successes >= 10);
}
