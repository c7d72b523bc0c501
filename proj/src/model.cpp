#include "rearrange/model.hpp"

#include "rearrange/random.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace rearrange {

bool same_pose(const Pose &a, const Pose &b) {
    if (std::abs(a.x - b.x) > kPoseTolerance || std::abs(a.y - b.y) > kPoseTolerance)
        return false;
    const double dt = std::abs(a.theta - b.theta);
    return std::min(dt, 2.0 * kPi - dt) <= kPoseTolerance;
}

bool same_arrangement(const Arrangement &a, const Arrangement &b) {
    return a.size() == b.size() && mismatch_count(a, b) == 0;
}

std::size_t mismatch_count(const Arrangement &a, const Arrangement &b) {
    std::size_t d = 0;
    for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i)
        d += same_pose(a[i], b[i]) ? 0 : 1;
    return d + std::max(a.size(), b.size()) - std::min(a.size(), b.size());
}

bool Instance::all_discs() const {
    return std::all_of(objects.begin(), objects.end(), [](const ObjectSpec &o) { return o.shape.is_disc(); });
}

double Instance::density() const {
    double total = 0.0;
    for (const auto &o : objects)
        total += o.shape.area();
    return total / workspace.area();
}

void Instance::check_well_formed() const {
    for (std::size_t i = 0; i < objects.size(); ++i)
        if (objects[i].id != static_cast<ObjectId>(i))
            throw MalformedArrangement("object ids must be 0..n-1 in order");
    if (start.size() != objects.size() || goal.size() != objects.size())
        throw MalformedArrangement("start and goal must give a pose for every object");
}

bool is_feasible(const Arrangement &arr, const Instance &inst, CheckCounter &counter) {
    if (arr.size() != inst.size())
        throw MalformedArrangement("arrangement covers " + std::to_string(arr.size()) + " of " +
                                   std::to_string(inst.size()) + " objects");
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const Shape &si = inst.objects[i].shape;
        if (!contained(si, arr[i], inst.workspace))
            return false;
        for (std::size_t j = i + 1; j < arr.size(); ++j)
            if (collides(si, arr[i], inst.objects[j].shape, arr[j], counter))
                return false;
    }
    return true;
}

bool is_feasible(const Arrangement &arr, const Instance &inst) {
    CheckCounter scratch;
    return is_feasible(arr, inst, scratch);
}

const char *to_string(ActionKind kind) {
    switch (kind) {
    case ActionKind::SG: return "SG";
    case ActionKind::SB: return "SB";
    case ActionKind::BG: return "BG";
    }
    return "?";
}

ActionKind action_kind_from_string(const std::string &s) {
    if (s == "SG") return ActionKind::SG;
    if (s == "SB") return ActionKind::SB;
    if (s == "BG") return ActionKind::BG;
    throw std::invalid_argument("unknown action kind '" + s + "'");
}

Arrangement execute(const Arrangement &from, const Plan &plan) {
    Arrangement cur = from;
    for (const Action &a : plan)
        cur[static_cast<std::size_t>(a.object)] = a.target;
    return cur;
}

Plan reverse_plan(const Arrangement &from, const Plan &plan) {
    std::vector<Pose> previous;
    previous.reserve(plan.size());
    Arrangement cur = from;
    for (const Action &a : plan) {
        previous.push_back(cur[static_cast<std::size_t>(a.object)]);
        cur[static_cast<std::size_t>(a.object)] = a.target;
    }
    Plan back;
    back.reserve(plan.size());
    for (std::size_t k = plan.size(); k-- > 0;)
        back.push_back({plan[k].object, previous[k], plan[k].kind});
    return back;
}

void classify_kinds(Plan &plan, const Instance &inst) {
    Arrangement cur = inst.start;
    for (Action &a : plan) {
        const auto i = static_cast<std::size_t>(a.object);
        if (same_pose(a.target, inst.goal[i]))
            a.kind = same_pose(cur[i], inst.start[i]) ? ActionKind::SG : ActionKind::BG;
        else
            a.kind = ActionKind::SB;
        cur[i] = a.target;
    }
}

const char *to_string(Violation v) {
    switch (v) {
    case Violation::None: return "ok";
    case Violation::Collision: return "collision";
    case Violation::OutOfWorkspace: return "out-of-workspace";
    case Violation::BadObject: return "bad-object";
    case Violation::WrongFinalPose: return "wrong-final-pose";
    }
    return "?";
}

std::string PlanCheck::describe() const {
    if (ok())
        return "ok";
    std::string s = std::string(to_string(cause)) + " at action " + std::to_string(index);
    if (other)
        s += " (with object " + std::to_string(*other) + ")";
    return s;
}

PlanCheck validate_plan(const Plan &plan, const Instance &inst, const Arrangement &from, const Arrangement &to) {
    CheckCounter scratch;
    Arrangement cur = from;
    const auto n = static_cast<ObjectId>(inst.size());
    for (std::size_t k = 0; k < plan.size(); ++k) {
        const Action &a = plan[k];
        if (a.object < 0 || a.object >= n)
            return {Violation::BadObject, k, std::nullopt};
        const Shape &shape = inst.shape(a.object);
        if (!contained(shape, a.target, inst.workspace))
            return {Violation::OutOfWorkspace, k, std::nullopt};
        for (ObjectId j = 0; j < n; ++j) {
            if (j == a.object)
                continue;
            if (collides(shape, a.target, inst.shape(j), cur[static_cast<std::size_t>(j)], scratch))
                return {Violation::Collision, k, j};
        }
        cur[static_cast<std::size_t>(a.object)] = a.target;
    }
    if (!same_arrangement(cur, to))
        return {Violation::WrongFinalPose, plan.size(), std::nullopt};
    return {};
}

PlanCheck validate_plan(const Plan &plan, const Instance &inst) { return validate_plan(plan, inst, inst.start, inst.goal); }

ShapeFamily shape_family_from_string(const std::string &s) {
    if (s == "disc") return ShapeFamily::Disc;
    if (s == "rect") return ShapeFamily::Rect;
    throw std::invalid_argument("unknown shape family '" + s + "'");
}

const char *to_string(ShapeFamily f) { return f == ShapeFamily::Disc ? "disc" : "rect"; }

double disc_radius_for_density(std::size_t n, double rho, const Workspace &ws) {
    return std::sqrt(rho * ws.area() / (static_cast<double>(n) * kPi));
}

namespace {

constexpr int kDartsPerObject = 1000;
constexpr int kEvictionsPerPass = 100;
constexpr int kPlacementBudget = 100000;

Pose random_contained_pose(const Shape &shape, const Workspace &ws, Rng &rng) {
    const double theta = shape.is_disc() ? 0.0 : rng.uniform(0.0, 2.0 * kPi);
    double hx, hy;
    shape.half_extents(theta, hx, hy);
    return Pose(rng.uniform(hx, ws.width - hx), rng.uniform(hy, ws.height - hy), theta);
}

// Random sequential placement. When an object finds no free spot within its dart
// budget, one random already-placed object is removed and placement continues;
// after too many removals the pass starts over from an empty table.
Arrangement sample_arrangement(const std::vector<ObjectSpec> &objects, const Workspace &ws, Rng &rng) {
    CheckCounter scratch;
    int placements = 0;
    while (placements < kPlacementBudget) {
        std::vector<std::size_t> placed;
        Arrangement arr(objects.size());
        std::vector<std::size_t> pending(objects.size());
        std::iota(pending.rbegin(), pending.rend(), std::size_t{0});
        int evictions = 0;
        while (!pending.empty() && evictions <= kEvictionsPerPass && placements < kPlacementBudget) {
            const std::size_t id = pending.back();
            const Shape &shape = objects[id].shape;
            ++placements;
            bool ok = false;
            for (int dart = 0; dart < kDartsPerObject && !ok; ++dart) {
                const Pose p = random_contained_pose(shape, ws, rng);
                ok = std::none_of(placed.begin(), placed.end(), [&](std::size_t j) {
                    return collides(shape, p, objects[j].shape, arr[j], scratch);
                });
                if (ok)
                    arr[id] = p;
            }
            if (ok) {
                placed.push_back(id);
                pending.pop_back();
            } else if (!placed.empty()) {
                ++evictions;
                const std::size_t k = rng.below(placed.size());
                pending.push_back(placed[k]);
                placed.erase(placed.begin() + static_cast<std::ptrdiff_t>(k));
            } else {
                ++evictions;
            }
        }
        if (pending.empty())
            return arr;
    }
    throw GenerationTimeout("no feasible arrangement within " + std::to_string(kPlacementBudget) +
                            " placement attempts");
}

} // namespace

Instance gen_random(std::size_t n, double rho, ShapeFamily family, const Workspace &ws, std::uint64_t seed) {
    if (n == 0)
        throw std::invalid_argument("instance needs at least one object");
    if (!(rho > 0.0 && rho < 1.0))
        throw std::invalid_argument("density must lie in (0, 1)");
    Instance inst;
    inst.workspace = ws;
    const double area = rho * ws.area() / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (family == ShapeFamily::Disc) {
            inst.objects.push_back({static_cast<ObjectId>(i), Shape::disc(disc_radius_for_density(n, rho, ws))});
        } else {
            const double h = std::sqrt(area / kRectAspect);
            inst.objects.push_back({static_cast<ObjectId>(i), Shape::rect(area / h, h)});
        }
    }
    Rng rng(seed);
    inst.start = sample_arrangement(inst.objects, ws, rng);
    inst.goal = sample_arrangement(inst.objects, ws, rng);
    return inst;
}

Instance gen_lattice(std::size_t rows, std::size_t cols, std::uint64_t seed) {
    if (rows == 0 || cols == 0)
        throw std::invalid_argument("lattice needs at least one cell");
    constexpr double r = 1.0;
    constexpr double pitch = 2.0 * r + 0.01 * r;
    Instance inst;
    inst.workspace = {static_cast<double>(cols - 1) * pitch + 2.0 * r + 2.0 * pitch,
                      static_cast<double>(rows - 1) * pitch + 2.0 * r + 2.0 * pitch};
    const std::size_t n = rows * cols;
    Arrangement cells;
    for (std::size_t row = 0; row < rows; ++row)
        for (std::size_t col = 0; col < cols; ++col)
            cells.emplace_back(pitch + r + static_cast<double>(col) * pitch, pitch + r + static_cast<double>(row) * pitch);
    for (std::size_t i = 0; i < n; ++i)
        inst.objects.push_back({static_cast<ObjectId>(i), Shape::disc(r)});
    inst.start = cells;

    Rng rng(seed);
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    for (std::size_t i = n; i > 1; --i)
        std::swap(perm[i - 1], perm[rng.below(i)]);
    inst.goal.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        inst.goal[i] = cells[perm[i]];
    return inst;
}

Instance gen_dense_small(std::size_t n, std::uint64_t seed) {
    if (n < 5 || n > 8)
        throw std::invalid_argument("dense-small instances have 5 to 8 objects");
    return gen_random(n, 0.5, ShapeFamily::Disc, Workspace{}, seed);
}

} // namespace rearrange
