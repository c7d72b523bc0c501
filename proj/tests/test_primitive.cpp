#include <doctest.h>

#include "rearrange/primitive.hpp"

#include <algorithm>
#include <map>
#include <numeric>

using namespace rearrange;

namespace {

using Edges = std::vector<std::pair<ObjectId, ObjectId>>;

DependencyGraph cycle3() { return DependencyGraph::from_edges(3, {{0, 1}, {1, 2}, {2, 0}}); }
DependencyGraph k3() { return DependencyGraph::from_edges(3, {{0, 1}, {1, 0}, {0, 2}, {2, 0}, {1, 2}, {2, 1}}); }

DependencyGraph random_graph(std::size_t n, double p, Rng &rng) {
    Edges edges;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j && rng.unit() < p)
                edges.emplace_back(static_cast<ObjectId>(i), static_cast<ObjectId>(j));
    return DependencyGraph::from_edges(n, edges);
}

// Running and total buffers of a placement order, simulated directly: before
// placing j every unplaced object still standing on its start that j's goal
// overlaps goes to a buffer and stays there until it is placed.
std::pair<std::size_t, std::size_t> simulate(const std::vector<ObjectId> &order, const DependencyGraph &g) {
    const std::size_t n = g.size();
    std::vector<int> state(n, 0); // 0 start, 1 buffer, 2 goal
    std::size_t held = 0, peak = 0, total = 0;
    for (ObjectId j : order) {
        for (ObjectId o = 0; o < static_cast<ObjectId>(n); ++o)
            if (o != j && g.has_edge(j, o) && state[static_cast<std::size_t>(o)] == 0) {
                state[static_cast<std::size_t>(o)] = 1;
                ++held;
                ++total;
                peak = std::max(peak, held);
            }
        if (state[static_cast<std::size_t>(j)] == 1)
            --held;
        state[static_cast<std::size_t>(j)] = 2;
    }
    return {peak, total};
}

std::pair<std::size_t, std::size_t> exhaustive(const DependencyGraph &g) {
    std::vector<ObjectId> order(g.size());
    std::iota(order.begin(), order.end(), 0);
    std::size_t best_run = g.size() + 1, best_total = g.size() + 1;
    do {
        const auto [run, total] = simulate(order, g);
        best_run = std::min(best_run, run);
        best_total = std::min(best_total, total);
    } while (std::next_permutation(order.begin(), order.end()));
    return {best_run, best_total};
}

std::vector<ObjectId> evicted(const PrimitivePlan &plan) {
    std::vector<ObjectId> out;
    for (const PrimitiveAction &a : plan.actions)
        if (a.move == ActionKind::SB)
            out.push_back(a.object);
    std::sort(out.begin(), out.end());
    return out;
}

bool is_fvs(const DependencyGraph &g, const std::vector<ObjectId> &removed) {
    std::vector<ObjectId> keep;
    for (ObjectId v = 0; v < static_cast<ObjectId>(g.size()); ++v)
        if (!std::binary_search(removed.begin(), removed.end(), v))
            keep.push_back(v);
    return is_monotone(g.induced(keep));
}

// Every object ends at its goal once, and a buffered object comes back by b->g.
void check_shape(const PrimitivePlan &plan, std::size_t n) {
    std::vector<int> state(n, 0);
    for (const PrimitiveAction &a : plan.actions) {
        int &s = state[static_cast<std::size_t>(a.object)];
        switch (a.move) {
        case ActionKind::SB: CHECK(s == 0); s = 1; break;
        case ActionKind::SG: CHECK(s == 0); s = 2; break;
        case ActionKind::BG: CHECK(s == 1); s = 2; break;
        }
    }
    for (int s : state)
        CHECK(s == 2);
}

} // namespace

TEST_CASE("derived plans") {
    const DependencyGraph dag = DependencyGraph::from_edges(3, {{0, 1}, {1, 2}});
    const PrimitivePlan mono = derive_plan({2, 1, 0}, dag);
    CHECK(mono.actions.size() == 3);
    CHECK(mono.running_buffers() == 0);
    CHECK(mono.total_buffers() == 0);

    // 0 waits on 1, 1 on 2, 2 on 0
    const PrimitivePlan cyc = derive_plan({0, 2, 1}, cycle3());
    CHECK(cyc.actions == std::vector<PrimitiveAction>{{1, ActionKind::SB}, {0, ActionKind::SG},
                                                      {2, ActionKind::SG}, {1, ActionKind::BG}});
    CHECK(cyc.running_buffers() == 1);
    CHECK(cyc.total_buffers() == 1);
    const PrimitivePlan chained = derive_plan({0, 1, 2}, cycle3());
    CHECK(chained.actions.size() == 5);
    CHECK(chained.running_buffers() == 2);

    // the middle object's goal blocks both neighbours, one of which waits on it
    const DependencyGraph fig = DependencyGraph::from_edges(3, {{1, 0}, {1, 2}, {0, 1}});
    const PrimitivePlan p = derive_plan({1, 0, 2}, fig);
    CHECK(p.actions == std::vector<PrimitiveAction>{{0, ActionKind::SB}, {2, ActionKind::SB}, {1, ActionKind::SG},
                                                    {0, ActionKind::BG}, {2, ActionKind::BG}});
    CHECK(p.running_buffers() == 2);
    CHECK(p.total_buffers() == 2);

    CHECK_THROWS(derive_plan({0, 0, 1}, cycle3()));
}

TEST_CASE("fixed small graphs") {
    CHECK(min_running_buffers(DependencyGraph::from_edges(4, {{0, 1}, {1, 2}, {3, 2}})) == 0);
    CHECK(min_running_buffers(cycle3()) == 1);
    CHECK(min_running_buffers(k3()) == 2);
    CHECK(derive_plan(tbm(cycle3()).order, cycle3()).total_buffers() == 1);
    CHECK(derive_plan(tbm(k3()).order, k3()).total_buffers() == 2);
    CHECK(derive_plan(rbm(cycle3()).order, cycle3()).running_buffers() == 1);

    CHECK(brute_force_mrb(cycle3()) == 1);
    CHECK(brute_force_tbm(cycle3()) == 1);
    CHECK(brute_force_mrb(k3()) == 2);
    CHECK(brute_force_tbm(k3()) == 2);
    CHECK(brute_force_mrb(DependencyGraph(4)) == 0);
    CHECK(brute_force_tbm(DependencyGraph(4)) == 0);
    CHECK_THROWS_AS(brute_force_mrb(DependencyGraph(9)), OracleTooLarge);
}

TEST_CASE("rbm breaks ties lexicographically") {
    CHECK(rbm(DependencyGraph(3)).order == PlacementOrder{0, 1, 2});
    CHECK(rbm(cycle3()).order == PlacementOrder{0, 2, 1});
}

TEST_CASE("brute force oracle agrees with a direct simulation") {
    Rng rng(11);
    for (int t = 0; t < 60; ++t) {
        const DependencyGraph g = random_graph(1 + rng.below(6), 0.35, rng);
        const auto [run, total] = exhaustive(g);
        CHECK(brute_force_mrb(g) == run);
        CHECK(brute_force_tbm(g) == total);
    }
}

TEST_CASE("dynamic programs match the oracles on random graphs") {
    Rng rng(2024);
    for (int t = 0; t < 500; ++t) {
        const std::size_t n = 1 + rng.below(8);
        const DependencyGraph g = random_graph(n, 0.1 + 0.5 * rng.unit(), rng);
        Rng tie(rng.fork());
        const OrderResult r = rbm(g, t % 2 ? &tie : nullptr);
        const PrimitivePlan rp = derive_plan(r.order, g);
        CHECK_FALSE(r.fallback);
        CHECK(rp.running_buffers() == brute_force_mrb(g));
        CHECK(min_running_buffers(g) == rp.running_buffers());
        CHECK((rp.running_buffers() == 0) == is_monotone(g));
        check_shape(rp, n);

        const PrimitivePlan tp = derive_plan(tbm(g, t % 2 ? &tie : nullptr).order, g);
        CHECK(tp.total_buffers() == brute_force_tbm(g));
        CHECK(is_fvs(g, evicted(tp)));
        CHECK(min_feedback_vertex_set(g).size() == tp.total_buffers());
        check_shape(tp, n);
    }
}

TEST_CASE("large components fall back to valid orders") {
    Rng rng(5);
    const DependencyGraph g = random_graph(30, 0.12, rng);
    const OrderResult r = rbm(g);
    CHECK(r.order.size() == 30);
    check_shape(derive_plan(r.order, g), 30);
    const PrimitivePlan tp = derive_plan(tbm(g).order, g);
    CHECK(is_fvs(g, evicted(tp)));
}

TEST_CASE("random orders") {
    CHECK(random_order(1, 7) == PlacementOrder{0});
    CHECK(random_order(3, 99) == random_order(3, 99));
    std::map<PlacementOrder, int> counts;
    for (std::uint64_t seed = 0; seed < 6000; ++seed)
        ++counts[random_order(3, seed)];
    CHECK(counts.size() == 6);
    for (const auto &[order, c] : counts) {
        CHECK(c >= 850);
        CHECK(c <= 1150);
    }
}

namespace {

// Replays an unlabeled plan and returns its peak buffer count. A slot can only
// be filled once its blockers have left their starts and nobody else sits in it.
std::size_t replay_unlabeled(const UnlabeledPlan &plan, const std::vector<std::vector<int>> &blockers) {
    const std::size_t k = blockers.size();
    std::vector<int> where(k, -1); // -1 start, -2 buffer, else slot
    std::vector<int> occupant(k, -1);
    std::size_t held = 0, peak = 0;
    for (const SlotAction &a : plan.actions) {
        int &w = where[static_cast<std::size_t>(a.object)];
        if (a.move == ActionKind::SB) {
            CHECK(w == -1);
            w = -2;
            peak = std::max(peak, ++held);
            continue;
        }
        CHECK(w == (a.move == ActionKind::SG ? -1 : -2));
        REQUIRE(a.slot >= 0);
        CHECK(occupant[static_cast<std::size_t>(a.slot)] == -1);
        for (int b : blockers[static_cast<std::size_t>(a.slot)])
            CHECK((b == a.object || where[static_cast<std::size_t>(b)] != -1));
        if (w == -2)
            --held;
        w = a.slot;
        occupant[static_cast<std::size_t>(a.slot)] = a.object;
    }
    for (std::size_t o = 0; o < k; ++o)
        CHECK(plan.slot_of[o] == (where[o] >= 0 ? where[o] : -1));
    return peak;
}

} // namespace

TEST_CASE("unlabeled plans") {
    const std::vector<std::vector<int>> complete{{1, 2}, {0, 2}, {0, 1}};
    const UnlabeledPlan u = unlabeled_plan(complete);
    CHECK(u.running_buffers == 1);
    CHECK(replay_unlabeled(u, complete) == u.running_buffers);

    const std::vector<std::vector<int>> free_slots{{}, {}, {}};
    CHECK(unlabeled_plan(free_slots).running_buffers == 0);

    Rng rng(8);
    for (int t = 0; t < 200; ++t) {
        const std::size_t k = 2 + rng.below(10);
        std::vector<std::vector<int>> blockers(k);
        for (std::size_t s = 0; s < k; ++s)
            for (std::size_t o = 0; o < k; ++o)
                if (o != s && rng.unit() < 0.3)
                    blockers[s].push_back(static_cast<int>(o));
        const UnlabeledPlan plan = unlabeled_plan(blockers, &rng);
        CHECK(replay_unlabeled(plan, blockers) == plan.running_buffers);
    }
}
