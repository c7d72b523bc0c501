#pragma once
/**
 * @file
 * @brief Arrangements, problem instances, pick-n-place plans and instance generators.
 */

#include "rearrange/geometry.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace rearrange {

using ObjectId = int;

/// Two poses are the same placement when they agree within this distance.
inline constexpr double kPoseTolerance = 1e-6;

bool same_pose(const Pose &a, const Pose &b);

struct ObjectSpec {
    ObjectId id;
    Shape shape;
    friend bool operator==(const ObjectSpec &, const ObjectSpec &) = default;
};

/// One pose per object, indexed by object id.
using Arrangement = std::vector<Pose>;

bool same_arrangement(const Arrangement &a, const Arrangement &b);

/// Number of objects whose poses differ beyond kPoseTolerance.
std::size_t mismatch_count(const Arrangement &a, const Arrangement &b);

class MalformedArrangement : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

class GenerationTimeout : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct Instance {
    Workspace workspace;
    std::vector<ObjectSpec> objects;
    Arrangement start;
    Arrangement goal;

    std::size_t size() const { return objects.size(); }
    const Shape &shape(ObjectId id) const { return objects[static_cast<std::size_t>(id)].shape; }
    bool all_discs() const;
    /// Fraction of the workspace covered by object footprints.
    double density() const;
    /// Throws MalformedArrangement unless ids are contiguous and both arrangements cover them.
    void check_well_formed() const;

    friend bool operator==(const Instance &, const Instance &) = default;
};

bool is_feasible(const Arrangement &arr, const Instance &inst, CheckCounter &counter);
bool is_feasible(const Arrangement &arr, const Instance &inst);

enum class ActionKind { SG, SB, BG };

const char *to_string(ActionKind kind);
ActionKind action_kind_from_string(const std::string &s);

struct Action {
    ObjectId object;
    Pose target;
    ActionKind kind;
    friend bool operator==(const Action &, const Action &) = default;
};

using Plan = std::vector<Action>;

/// Arrangement after executing the plan from `from` (no feasibility checks).
Arrangement execute(const Arrangement &from, const Plan &plan);

/// Replays a plan backwards: a plan from X to Y becomes a plan from Y to X.
Plan reverse_plan(const Arrangement &from, const Plan &plan);

/// Relabels action kinds by target: goal pose reached from the start pose is SG,
/// goal pose reached from anywhere else is BG, any other target is SB.
void classify_kinds(Plan &plan, const Instance &inst);

enum class Violation { None, Collision, OutOfWorkspace, BadObject, WrongFinalPose };

const char *to_string(Violation v);

struct PlanCheck {
    Violation cause = Violation::None;
    /// Offending action index; equals plan size for a wrong final arrangement.
    std::size_t index = 0;
    /// Second object involved in a collision, if any.
    std::optional<ObjectId> other;

    bool ok() const { return cause == Violation::None; }
    std::string describe() const;
};

/// Replays the plan from `from`; every intermediate arrangement must be feasible
/// and the result must equal `to` pose for pose.
PlanCheck validate_plan(const Plan &plan, const Instance &inst, const Arrangement &from, const Arrangement &to);
PlanCheck validate_plan(const Plan &plan, const Instance &inst);

enum class ShapeFamily { Disc, Rect };

ShapeFamily shape_family_from_string(const std::string &s);
const char *to_string(ShapeFamily f);

/// Width/height ratio of generated rectangles.
inline constexpr double kRectAspect = 1.5;

/// Disc radius giving `n` equal discs a total area of rho * ws.area().
double disc_radius_for_density(std::size_t n, double rho, const Workspace &ws);

/// n equal objects at density rho with independently sampled start and goal arrangements.
Instance gen_random(std::size_t n, double rho, ShapeFamily family, const Workspace &ws, std::uint64_t seed);

/// Unit-radius discs on a rows x cols grid with 0.01-radius gaps; the goal is a random
/// permutation of the cells. The workspace leaves one free cell width around the grid.
Instance gen_lattice(std::size_t rows, std::size_t cols, std::uint64_t seed);

/// 5 to 8 discs at density 0.5 in a 10 x 10 workspace.
Instance gen_dense_small(std::size_t n, std::uint64_t seed);

} // namespace rearrange
