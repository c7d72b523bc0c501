#include "rearrange/planner.hpp"

#include "rearrange/depgraph.hpp"
#include "rearrange/primitive.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace rearrange {

namespace {

constexpr std::size_t kOneShotAttemptsPerObject = 30;
// unlabeled plans tried per component member before the component is skipped
constexpr std::size_t kPreprocessAttemptsPerObject = 30;
// unlabeled plans drawn per attempt while looking for one without swap cycles
constexpr std::size_t kCycleFreeDraws = 4;

// Objects that end up in each other's goal slots around a closed loop; such a
// loop survives as a dependency cycle after preprocessing. Trailing buffer to
// goal moves are left out since they are usually dropped.
std::size_t cycle_members(const UnlabeledPlan &up) {
    const std::size_t k = up.slot_of.size();
    std::size_t tail = up.actions.size();
    while (tail > 0 && up.actions[tail - 1].move == ActionKind::BG)
        --tail;
    std::vector<int> occupant(k, -1);
    for (std::size_t t = 0; t < tail; ++t)
        if (up.actions[t].move != ActionKind::SB)
            occupant[static_cast<std::size_t>(up.actions[t].slot)] = up.actions[t].object;
    std::vector<char> seen(k, 0);
    std::size_t members = 0;
    for (std::size_t s = 0; s < k; ++s) {
        if (seen[s] || occupant[s] < 0 || occupant[s] == static_cast<int>(s))
            continue;
        std::size_t len = 0;
        int cur = static_cast<int>(s);
        while (cur >= 0 && !seen[static_cast<std::size_t>(cur)]) {
            seen[static_cast<std::size_t>(cur)] = 1;
            ++len;
            cur = occupant[static_cast<std::size_t>(cur)];
        }
        if (cur == static_cast<int>(s))
            members += len;
    }
    return members;
}

} // namespace

SolverConfig SolverConfig::parse(const std::string &name) {
    SolverConfig cfg;
    std::vector<std::string> parts;
    std::stringstream ss(name);
    for (std::string part; std::getline(ss, part, '-');)
        parts.push_back(part);
    if (parts.size() != 3 && parts.size() != 4)
        throw std::invalid_argument("solver name must look like RBM-SP-BST[-PP], got '" + name + "'");
    if (parts[0] == "RBM") cfg.primitive = PrimitiveKind::RBM;
    else if (parts[0] == "TBM") cfg.primitive = PrimitiveKind::TBM;
    else if (parts[0] == "RO") cfg.primitive = PrimitiveKind::RO;
    else throw std::invalid_argument("unknown primitive planner '" + parts[0] + "'");
    if (parts[1] == "SP") cfg.backend = BufferBackend::Sampling;
    else if (parts[1] == "OPT") cfg.backend = BufferBackend::Optimization;
    else throw std::invalid_argument("unknown buffer backend '" + parts[1] + "'");
    if (parts[2] == "OS") cfg.framework = Framework::OS;
    else if (parts[2] == "ST") cfg.framework = Framework::ST;
    else if (parts[2] == "BST") cfg.framework = Framework::BST;
    else throw std::invalid_argument("unknown framework '" + parts[2] + "'");
    if (parts.size() == 4) {
        if (parts[3] != "PP")
            throw std::invalid_argument("unknown solver suffix '" + parts[3] + "'");
        cfg.preprocess = true;
    }
    return cfg;
}

std::string SolverConfig::name() const {
    static const char *prims[] = {"RBM", "TBM", "RO"};
    static const char *fws[] = {"OS", "ST", "BST"};
    std::string s = std::string(prims[static_cast<int>(primitive)]) + "-" +
                    (backend == BufferBackend::Sampling ? "SP" : "OPT") + "-" + fws[static_cast<int>(framework)];
    return preprocess ? s + "-PP" : s;
}

void SolverConfig::check(const Instance &inst) const {
    if (backend == BufferBackend::Optimization && !inst.all_discs())
        throw std::invalid_argument("optimization-based buffers need disc objects");
    if (!(max_time > 0.0))
        throw std::invalid_argument("time limit must be positive");
}

Deadline::Deadline(double seconds) : begin_(std::chrono::steady_clock::now()) {
    const auto budget = std::chrono::duration<double>(std::min(seconds, 1e9));
    end_ = begin_ + std::chrono::duration_cast<std::chrono::steady_clock::duration>(budget);
}

double Deadline::elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - begin_).count();
}

SearchTree::SearchTree(Arrangement root) { nodes_.push_back({std::move(root), 0, {}}); }

std::size_t SearchTree::add(std::size_t parent, Arrangement arrangement, Plan edge) {
    nodes_.push_back({std::move(arrangement), parent, std::move(edge)});
    return nodes_.size() - 1;
}

Plan SearchTree::path_from_root(std::size_t node) const {
    std::vector<std::size_t> chain;
    for (std::size_t v = node; v != 0; v = nodes_[v].parent)
        chain.push_back(v);
    Plan plan;
    for (auto it = chain.rbegin(); it != chain.rend(); ++it)
        plan.insert(plan.end(), nodes_[*it].edge.begin(), nodes_[*it].edge.end());
    return plan;
}

std::size_t nearest_node(const SearchTree &tree, const Arrangement &target) {
    std::size_t best = 0;
    std::size_t best_mismatch = static_cast<std::size_t>(-1);
    double best_dist = 0.0;
    for (std::size_t v = 0; v < tree.size(); ++v) {
        const Arrangement &a = tree.arrangement(v);
        const std::size_t mismatch = mismatch_count(a, target);
        if (mismatch > best_mismatch)
            continue;
        double dist = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i)
            dist += std::hypot(a[i].x - target[i].x, a[i].y - target[i].y);
        if (mismatch < best_mismatch || dist < best_dist) {
            best = v;
            best_mismatch = mismatch;
            best_dist = dist;
        }
    }
    return best;
}

LazyResult lazy_rearrange(const Arrangement &from, const Arrangement &to, const Instance &inst,
                          const SolverConfig &cfg, Rng &rng, CheckCounter &counter) {
    const DependencyGraph g = build_dependency_graph(from, to, inst, counter);
    PlacementOrder order;
    switch (cfg.primitive) {
    case PrimitiveKind::RBM: order = rbm(g, &rng).order; break;
    case PrimitiveKind::TBM: order = tbm(g, &rng).order; break;
    case PrimitiveKind::RO: order = random_order(inst.size(), rng); break;
    }
    const PrimitivePlan pi = derive_plan(order, g);
    const AllocationResult alloc = allocate(pi, from, to, inst, cfg.backend, rng, counter);
    const std::size_t steps = alloc.success() ? pi.actions.size() : *alloc.failed_step;

    LazyResult out;
    out.partial = instantiate(pi, steps, alloc.buffers, from, to);
    out.reached = execute(from, out.partial);
    out.complete = alloc.success();
    return out;
}

const char *to_string(SolveStatus s) { return s == SolveStatus::Solved ? "solved" : "timeout"; }

namespace {

struct Budget {
    const Deadline &deadline;
    std::size_t max_iterations;
    std::size_t used = 0;

    bool next() {
        if (deadline.expired() || (max_iterations > 0 && used >= max_iterations))
            return false;
        ++used;
        return true;
    }
};

SolveOutcome run_os(const Instance &inst, const SolverConfig &cfg, Rng &rng, CheckCounter &counter,
                    const Deadline &deadline) {
    SolveOutcome out;
    Budget budget{deadline, cfg.max_iterations};
    const std::size_t attempts = kOneShotAttemptsPerObject * std::max<std::size_t>(inst.size(), 1);
    for (std::size_t a = 0; a < attempts && budget.next(); ++a) {
        LazyResult r = lazy_rearrange(inst.start, inst.goal, inst, cfg, rng, counter);
        if (r.complete) {
            out.status = SolveStatus::Solved;
            out.plan = std::move(r.partial);
            break;
        }
    }
    out.stats.iterations = budget.used;
    return out;
}

SolveOutcome run_st(const Instance &inst, const SolverConfig &cfg, Rng &rng, CheckCounter &counter,
                    const Deadline &deadline) {
    SolveOutcome out;
    SearchTree tree(inst.start);
    Budget budget{deadline, cfg.max_iterations};
    if (same_arrangement(inst.start, inst.goal)) {
        out.status = SolveStatus::Solved;
    } else {
        while (budget.next()) {
            const std::size_t node = rng.below(tree.size());
            LazyResult r = lazy_rearrange(tree.arrangement(node), inst.goal, inst, cfg, rng, counter);
            if (r.partial.empty())
                continue;
            const std::size_t child = tree.add(node, std::move(r.reached), std::move(r.partial));
            if (r.complete) {
                out.status = SolveStatus::Solved;
                out.plan = tree.path_from_root(child);
                break;
            }
        }
    }
    out.stats.iterations = budget.used;
    out.stats.start_tree_nodes = tree.size();
    return out;
}

SolveOutcome run_bst(const Instance &inst, const SolverConfig &cfg, Rng &rng, CheckCounter &counter,
                     const Deadline &deadline) {
    SolveOutcome out;
    SearchTree start_tree(inst.start), goal_tree(inst.goal);
    Budget budget{deadline, cfg.max_iterations};

    // joins start_tree node s and goal_tree node g, which hold the same arrangement
    auto connect = [&](std::size_t s, std::size_t g) {
        Plan plan = start_tree.path_from_root(s);
        const Plan back = reverse_plan(inst.goal, goal_tree.path_from_root(g));
        plan.insert(plan.end(), back.begin(), back.end());
        out.status = SolveStatus::Solved;
        out.plan = std::move(plan);
    };

    if (same_arrangement(inst.start, inst.goal)) {
        out.status = SolveStatus::Solved;
    } else {
        bool forward = true; // T1 is the start tree
        while (budget.next()) {
            SearchTree &t1 = forward ? start_tree : goal_tree;
            SearchTree &t2 = forward ? goal_tree : start_tree;

            const std::size_t rand_node = rng.below(t1.size());
            LazyResult r1 = lazy_rearrange(t1.arrangement(rand_node), t2.root(), inst, cfg, rng, counter);
            std::size_t new1 = rand_node;
            if (!r1.partial.empty())
                new1 = t1.add(rand_node, std::move(r1.reached), std::move(r1.partial));
            if (r1.complete) {
                forward ? connect(new1, 0) : connect(0, new1);
                break;
            }

            const std::size_t near = nearest_node(t2, t1.arrangement(new1));
            LazyResult r2 = lazy_rearrange(t2.arrangement(near), t1.arrangement(new1), inst, cfg, rng, counter);
            std::size_t new2 = near;
            if (!r2.partial.empty())
                new2 = t2.add(near, std::move(r2.reached), std::move(r2.partial));
            if (r2.complete) {
                forward ? connect(new1, new2) : connect(new2, new1);
                break;
            }
            forward = !forward;
        }
    }
    out.stats.iterations = budget.used;
    out.stats.start_tree_nodes = start_tree.size();
    out.stats.goal_tree_nodes = goal_tree.size();
    return out;
}

SolveOutcome run_framework(const Instance &inst, const SolverConfig &cfg, Rng &rng, CheckCounter &counter,
                           const Deadline &deadline) {
    switch (cfg.framework) {
    case Framework::OS: return run_os(inst, cfg, rng, counter, deadline);
    case Framework::ST: return run_st(inst, cfg, rng, counter, deadline);
    case Framework::BST: return run_bst(inst, cfg, rng, counter, deadline);
    }
    return {};
}

// The members' dependency graph from `mid` to the goal has in- and out-degree
// at most one, i.e. it is made of paths and simple cycles.
bool remainder_is_simple(const Arrangement &mid, const Instance &inst, const std::vector<ObjectId> &members,
                         CheckCounter &counter) {
    Arrangement from, to;
    Instance sub{inst.workspace, {}, {}, {}};
    for (std::size_t k = 0; k < members.size(); ++k) {
        const auto v = static_cast<std::size_t>(members[k]);
        sub.objects.push_back({static_cast<ObjectId>(k), inst.objects[v].shape});
        from.push_back(mid[v]);
        to.push_back(inst.goal[v]);
    }
    const DependencyGraph g = build_dependency_graph(from, to, sub, counter);
    for (std::size_t v = 0; v < g.size(); ++v)
        if (g.successors(static_cast<ObjectId>(v)).size() > 1 || g.predecessors(static_cast<ObjectId>(v)).size() > 1)
            return false;
    return true;
}

// Includes o's own goal: in an unlabeled plan another member may fill it.
bool blocks_goal(ObjectId o, const Pose &pose, const Instance &inst, CheckCounter &counter) {
    for (std::size_t j = 0; j < inst.size(); ++j)
        if (collides(inst.shape(o), pose, inst.objects[j].shape, inst.goal[j], counter))
            return true;
    return false;
}

// A buffer where a parked object can stay for good: clear of every goal, of every
// pose the object could have met while parked and of the other buffers.
std::optional<Pose> resting_pose(ObjectId o, const std::vector<ObjectId> &members, const Arrangement &before,
                                 const BufferAssignment &buffers, const Instance &inst, Rng &rng,
                                 CheckCounter &counter) {
    const Shape &shape = inst.shape(o);
    for (int attempt = 0; attempt < kSamplesPerBuffer; ++attempt) {
        const double theta = shape.is_disc() ? 0.0 : rng.uniform(0.0, 2.0 * kPi);
        double hx, hy;
        shape.half_extents(theta, hx, hy);
        const Pose p(rng.uniform(hx, inst.workspace.width - hx), rng.uniform(hy, inst.workspace.height - hy), theta);
        bool ok = !blocks_goal(o, p, inst, counter);
        for (std::size_t j = 0; j < inst.size() && ok; ++j)
            ok = static_cast<ObjectId>(j) == o || !collides(shape, p, inst.objects[j].shape, before[j], counter);
        for (ObjectId m : members) {
            const auto &b = buffers[static_cast<std::size_t>(m)];
            if (!ok)
                break;
            ok = m == o || !b || !collides(shape, p, inst.shape(m), *b, counter);
        }
        if (ok)
            return p;
    }
    return std::nullopt;
}

SolveOutcome finish(SolveOutcome out, const Instance &inst, const Plan &prefix, const Deadline &deadline,
                    const CheckCounter &counter) {
    if (out.solved()) {
        Plan full = prefix;
        full.insert(full.end(), out.plan.begin(), out.plan.end());
        classify_kinds(full, inst);
        const PlanCheck check = validate_plan(full, inst);
        if (!check.ok())
            throw std::logic_error("planner produced an invalid plan: " + check.describe());
        out.plan = std::move(full);
    } else {
        out.plan.clear();
    }
    out.stats.actions = out.plan.size();
    out.stats.collision_checks = counter.count();
    out.stats.wall_time_s = deadline.elapsed();
    return out;
}

SolveOutcome solve_framework(const Instance &inst, SolverConfig cfg, Framework fw, CheckCounter &counter) {
    inst.check_well_formed();
    cfg.check(inst);
    cfg.framework = fw;
    Deadline deadline(cfg.max_time);
    Rng rng(cfg.seed);
    CheckCounter local;
    SolveOutcome out = finish(run_framework(inst, cfg, rng, local, deadline), inst, {}, deadline, local);
    counter.tick(local.count());
    return out;
}

} // namespace

PreprocessResult preprocess(const Instance &inst, const SolverConfig &cfg, Rng &rng, CheckCounter &counter,
                            const Deadline &deadline) {
    PreprocessResult out;
    out.mid = inst.start;
    const DependencyGraph g = build_dependency_graph(inst.start, inst.goal, inst, counter);

    for (const auto &comp : weak_components(g)) {
        if (deadline.expired())
            break;
        if (comp.size() < 2)
            continue;
        const DependencyGraph sub = g.induced(comp);
        const std::size_t need = derive_plan(rbm(sub).order, sub).running_buffers();
        if (need <= 1)
            continue;

        // blockers[s]: members currently overlapping the goal pose of member s
        const std::size_t k = comp.size();
        std::vector<std::vector<int>> blockers(k);
        for (std::size_t s = 0; s < k; ++s) {
            const auto gs = static_cast<std::size_t>(comp[s]);
            for (std::size_t o = 0; o < k; ++o) {
                const auto go = static_cast<std::size_t>(comp[o]);
                if (collides(inst.objects[gs].shape, inst.goal[gs], inst.objects[go].shape, out.mid[go], counter))
                    blockers[s].push_back(static_cast<int>(o));
            }
        }
        // Every attempt draws a fresh unlabeled plan and fresh buffers. Objects
        // parked at the tail of the plan stay in a buffer that overlaps no goal
        // if one can be found; moving them in would only lengthen the remainder.
        bool done = false;
        for (std::size_t attempt = 0; attempt < kPreprocessAttemptsPerObject * k && !done; ++attempt) {
            if (deadline.expired())
                break;
            UnlabeledPlan up = unlabeled_plan(blockers, &rng);
            for (std::size_t draw = 1; draw < kCycleFreeDraws && cycle_members(up) > 0; ++draw) {
                UnlabeledPlan other = unlabeled_plan(blockers, &rng);
                if (cycle_members(other) < cycle_members(up))
                    up = std::move(other);
            }
            Arrangement target = out.mid;
            for (std::size_t o = 0; o < k; ++o)
                if (up.slot_of[o] >= 0)
                    target[static_cast<std::size_t>(comp[o])] =
                        inst.goal[static_cast<std::size_t>(comp[static_cast<std::size_t>(up.slot_of[o])])];
            PrimitivePlan pi;
            for (const SlotAction &a : up.actions)
                pi.actions.push_back({comp[static_cast<std::size_t>(a.object)], a.move});
            const AllocationResult alloc =
                allocate(pi, out.mid, target, inst, cfg.backend, rng, counter);
            if (!alloc.success())
                continue;

            std::size_t tail = pi.actions.size();
            while (tail > 0 && pi.actions[tail - 1].move == ActionKind::BG)
                --tail;
            PrimitivePlan kept;
            kept.actions.assign(pi.actions.begin(), pi.actions.begin() + static_cast<std::ptrdiff_t>(tail));
            BufferAssignment buffers = alloc.buffers;
            for (std::size_t t = tail; t < pi.actions.size(); ++t) {
                const ObjectId o = pi.actions[t].object;
                if (!blocks_goal(o, *buffers[static_cast<std::size_t>(o)], inst, counter))
                    continue;
                if (const auto rest = resting_pose(o, comp, out.mid, buffers, inst, rng, counter))
                    buffers[static_cast<std::size_t>(o)] = *rest;
                else
                    kept.actions.push_back(pi.actions[t]);
            }

            const Plan moves = instantiate(kept, kept.actions.size(), buffers, out.mid, target);
            const Arrangement mid = execute(out.mid, moves);
            if (!remainder_is_simple(mid, inst, comp, counter))
                continue;
            out.running_buffers = std::max(out.running_buffers, kept.running_buffers());
            out.mid = mid;
            out.prefix.insert(out.prefix.end(), moves.begin(), moves.end());
            done = true;
        }
        if (!done) {
            ++out.skipped;
            continue;
        }
        out.processed.push_back(comp);
        ++out.components;
    }

    return out;
}

PreprocessResult preprocess(const Instance &inst, const SolverConfig &cfg, CheckCounter &counter) {
    Rng rng(cfg.seed);
    Deadline deadline(cfg.max_time);
    return preprocess(inst, cfg, rng, counter, deadline);
}

SolveOutcome solve_os(const Instance &inst, const SolverConfig &cfg, CheckCounter &counter) {
    return solve_framework(inst, cfg, Framework::OS, counter);
}

SolveOutcome solve_st(const Instance &inst, const SolverConfig &cfg, CheckCounter &counter) {
    return solve_framework(inst, cfg, Framework::ST, counter);
}

SolveOutcome solve_bst(const Instance &inst, const SolverConfig &cfg, CheckCounter &counter) {
    return solve_framework(inst, cfg, Framework::BST, counter);
}

SolveOutcome solve(const Instance &inst, const SolverConfig &cfg) {
    inst.check_well_formed();
    cfg.check(inst);
    Deadline deadline(cfg.max_time);
    Rng rng(cfg.seed);
    CheckCounter counter;

    Instance work = inst;
    PreprocessResult pp;
    if (cfg.preprocess) {
        pp = preprocess(inst, cfg, rng, counter, deadline);
        work.start = pp.mid;
    }
    SolveOutcome out = finish(run_framework(work, cfg, rng, counter, deadline), inst, pp.prefix, deadline, counter);
    out.stats.pp_actions = pp.prefix.size();
    out.stats.pp_components = pp.components;
    out.stats.pp_skipped = pp.skipped;
    return out;
}

} // namespace rearrange
