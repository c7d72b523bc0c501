#pragma once
/**
 * @file
 * @brief Primitive plans: schedules of start->goal, start->buffer and
 *        buffer->goal moves that ignore where buffers actually are.
 *
 * A placement order fixes when every object reaches its goal; the plan follows
 * from it by evicting, right before each placement, every still-unplaced object
 * that blocks the goal being filled.
 */

#include "rearrange/depgraph.hpp"
#include "rearrange/random.hpp"

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace rearrange {

/// Components larger than this use a greedy order instead of the subset DP.
inline constexpr std::size_t kExactComponentLimit = 20;
/// Node budget of the bounded depth-first search that refines greedy orders.
inline constexpr std::size_t kOrderSearchBudget = 2000;

struct PrimitiveAction {
    ObjectId object;
    ActionKind move;
    friend bool operator==(const PrimitiveAction &, const PrimitiveAction &) = default;
};

struct PrimitivePlan {
    std::vector<PrimitiveAction> actions;

    /// Objects that visit a buffer.
    std::size_t total_buffers() const;
    /// Peak number of objects parked in buffers at once. An object keeps its
    /// buffer until its buffer->goal move completes.
    std::size_t running_buffers() const;
};

using PlacementOrder = std::vector<ObjectId>;

struct OrderResult {
    PlacementOrder order;
    /// Some component exceeded kExactComponentLimit, so the order may not be optimal.
    bool fallback = false;
};

class OracleTooLarge : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

PrimitivePlan derive_plan(const PlacementOrder &order, const DependencyGraph &g);

/// Order minimising running buffers, solved per strongly connected component.
/// Without an rng ties go to the lexicographically smallest order; with one,
/// ties are broken uniformly at random.
OrderResult rbm(const DependencyGraph &g, Rng *rng = nullptr);

/// Order whose evicted set is a minimum feedback vertex set.
OrderResult tbm(const DependencyGraph &g, Rng *rng = nullptr);

/// Minimum feedback vertex set of a component of at most kExactComponentLimit vertices.
std::vector<ObjectId> min_feedback_vertex_set(const DependencyGraph &g, Rng *rng = nullptr);

PlacementOrder random_order(std::size_t n, std::uint64_t seed);
PlacementOrder random_order(std::size_t n, Rng &rng);

/// Minimum running buffers of `g` (value of the rbm order).
std::size_t min_running_buffers(const DependencyGraph &g);

/// Exhaustive minimum over all n! orders; n <= 8.
std::size_t brute_force_mrb(const DependencyGraph &g);
std::size_t brute_force_tbm(const DependencyGraph &g);

/// One move of an unlabeled plan: `object` leaves its current pose for a buffer (SB)
/// or for goal slot `slot` (SG from the current pose, BG from a buffer).
struct SlotAction {
    int object;
    ActionKind move;
    int slot = -1;
};

struct UnlabeledPlan {
    std::vector<SlotAction> actions;
    /// slot_of[object] = slot it ends in, -1 if it stays at its start or in a buffer.
    std::vector<int> slot_of;
    std::size_t running_buffers = 0;
    bool fallback = false;
};

/// Unlabeled rearrangement of k objects over k goal slots; slot s is the goal of
/// object s but any object may fill it. blockers[s] lists objects whose current
/// pose overlaps slot s (local indices 0..k-1). Slots are cleared in an order
/// chosen by a subset DP minimising peak buffer usage. A cleared slot takes one
/// of its blockers or a parked object, preferring fills that keep the labeled
/// remainder acyclic; slots nobody blocks and no parked object wants stay empty.
UnlabeledPlan unlabeled_plan(const std::vector<std::vector<int>> &blockers, Rng *rng = nullptr);

} // namespace rearrange
