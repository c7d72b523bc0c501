#pragma once
/**
 * @file
 * @brief High-level rearrangement planners built on lazy buffer allocation.
 *
 * A single lazy rearrangement either reaches its target or stops where buffer
 * generation failed; the arrangement it stopped at is a new, partially solved
 * problem with the same target. The tree planners grow search trees out of
 * these partial results.
 */

#include "rearrange/buffers.hpp"
#include "rearrange/model.hpp"
#include "rearrange/random.hpp"

#include <chrono>
#include <cstdint>
#include <string>
#include <vector>

namespace rearrange {

enum class PrimitiveKind { RBM, TBM, RO };
enum class Framework { OS, ST, BST };

struct SolverConfig {
    PrimitiveKind primitive = PrimitiveKind::RBM;
    BufferBackend backend = BufferBackend::Sampling;
    Framework framework = Framework::BST;
    bool preprocess = false;
    double max_time = 300.0;
    std::uint64_t seed = 0;
    /// Optional cap on planner iterations (0 = none). Unlike the wall-clock
    /// limit it makes timeouts reproducible.
    std::size_t max_iterations = 0;

    /// Parses names such as "RBM-SP-BST" or "TBM-OPT-OS-PP".
    static SolverConfig parse(const std::string &name);
    std::string name() const;
    /// Throws std::invalid_argument for combinations the instance cannot use.
    void check(const Instance &inst) const;
};

/// Wall-clock budget shared by every phase of one solve.
class Deadline {
  public:
    explicit Deadline(double seconds);
    bool expired() const { return std::chrono::steady_clock::now() >= end_; }
    double elapsed() const;

  private:
    std::chrono::steady_clock::time_point begin_, end_;
};

/// Tree of feasible arrangements; each non-root node stores the plan that leads
/// to it from its parent.
class SearchTree {
  public:
    explicit SearchTree(Arrangement root);

    std::size_t size() const { return nodes_.size(); }
    const Arrangement &arrangement(std::size_t node) const { return nodes_[node].arrangement; }
    const Arrangement &root() const { return nodes_[0].arrangement; }
    std::size_t parent(std::size_t node) const { return nodes_[node].parent; }
    const Plan &edge(std::size_t node) const { return nodes_[node].edge; }

    std::size_t add(std::size_t parent, Arrangement arrangement, Plan edge);
    /// Concatenated edge plans from the root down to `node`.
    Plan path_from_root(std::size_t node) const;

  private:
    struct Node {
        Arrangement arrangement;
        std::size_t parent;
        Plan edge;
    };
    std::vector<Node> nodes_;
};

/// Node closest to `target`: fewest differing object poses, then smallest summed
/// centre displacement, then earliest inserted.
std::size_t nearest_node(const SearchTree &tree, const Arrangement &target);

struct LazyResult {
    Arrangement reached;
    Plan partial;
    bool complete = false;
};

/// One primitive plan plus buffer allocation from `from` toward `to`.
LazyResult lazy_rearrange(const Arrangement &from, const Arrangement &to, const Instance &inst,
                          const SolverConfig &cfg, Rng &rng, CheckCounter &counter);

enum class SolveStatus { Solved, Timeout };

const char *to_string(SolveStatus s);

struct SolveStats {
    double wall_time_s = 0.0;
    std::size_t actions = 0;
    std::uint64_t collision_checks = 0;
    std::size_t iterations = 0;
    std::size_t start_tree_nodes = 0;
    std::size_t goal_tree_nodes = 0;
    std::size_t pp_actions = 0;
    std::size_t pp_components = 0;
    std::size_t pp_skipped = 0;
};

struct SolveOutcome {
    SolveStatus status = SolveStatus::Timeout;
    Plan plan;
    SolveStats stats;

    bool solved() const { return status == SolveStatus::Solved; }
};

struct PreprocessResult {
    Arrangement mid;
    Plan prefix;
    /// Components that were rearranged / could not be instantiated.
    std::size_t components = 0;
    std::size_t skipped = 0;
    /// Peak buffers used by the prefix.
    std::size_t running_buffers = 0;
    /// Members of every rearranged component.
    std::vector<std::vector<ObjectId>> processed;
};

/// Unlabeled pre-rearrangement of every dependency component that needs two or
/// more running buffers, leaving each such component needing at most one.
PreprocessResult preprocess(const Instance &inst, const SolverConfig &cfg, Rng &rng, CheckCounter &counter,
                            const Deadline &deadline);
PreprocessResult preprocess(const Instance &inst, const SolverConfig &cfg, CheckCounter &counter);

/// Framework runners from inst.start to inst.goal; each seeds its own rng from cfg.seed.
SolveOutcome solve_os(const Instance &inst, const SolverConfig &cfg, CheckCounter &counter);
SolveOutcome solve_st(const Instance &inst, const SolverConfig &cfg, CheckCounter &counter);
SolveOutcome solve_bst(const Instance &inst, const SolverConfig &cfg, CheckCounter &counter);

/// Optional preprocessing followed by the configured framework. A solved plan
/// has been replayed through validate_plan.
SolveOutcome solve(const Instance &inst, const SolverConfig &cfg);

} // namespace rearrange
