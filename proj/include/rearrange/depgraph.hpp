#pragma once
/**
 * @file
 * @brief Dependency graph between two arrangements.
 *
 * Edge i -> j means the goal footprint of object i overlaps object j at its
 * current pose, so j has to leave before i can be placed.
 */

#include "rearrange/model.hpp"

#include <string>
#include <utility>
#include <vector>

namespace rearrange {

class DependencyGraph {
  public:
    DependencyGraph() = default;
    explicit DependencyGraph(std::size_t n) : out_(n), in_(n) {}

    /// Builds a graph from an explicit edge list. Self-loops are rejected.
    static DependencyGraph from_edges(std::size_t n, const std::vector<std::pair<ObjectId, ObjectId>> &edges);

    std::size_t size() const { return out_.size(); }
    std::size_t edge_count() const;

    /// Adds i -> j; duplicate edges are ignored.
    void add_edge(ObjectId i, ObjectId j);
    bool has_edge(ObjectId i, ObjectId j) const;

    /// Objects that must move before `i` is placed, ascending.
    const std::vector<ObjectId> &successors(ObjectId i) const { return out_[static_cast<std::size_t>(i)]; }
    /// Objects waiting on `i`, ascending.
    const std::vector<ObjectId> &predecessors(ObjectId i) const { return in_[static_cast<std::size_t>(i)]; }

    std::vector<std::pair<ObjectId, ObjectId>> edges() const;

    /// Graph induced on `vertices`; vertex k of the result is vertices[k].
    DependencyGraph induced(const std::vector<ObjectId> &vertices) const;

    friend bool operator==(const DependencyGraph &, const DependencyGraph &) = default;

  private:
    std::vector<std::vector<ObjectId>> out_;
    std::vector<std::vector<ObjectId>> in_;
};

/// Serial reference: one collision query per ordered pair of distinct objects.
DependencyGraph build_dependency_graph(const Arrangement &from, const Arrangement &to, const Instance &inst,
                                       CheckCounter &counter);

/// OpenMP kernel producing the same graph and check count as the serial builder.
DependencyGraph build_dependency_graph_parallel(const Arrangement &from, const Arrangement &to, const Instance &inst,
                                                CheckCounter &counter);

/// True iff the graph has no directed cycle.
bool is_monotone(const DependencyGraph &g);

/// Topological order in which every object is placed after the objects it depends
/// on (reverse edge direction); smallest id first among ready objects. Empty if cyclic.
std::vector<ObjectId> placement_topological_order(const DependencyGraph &g);

/// Weakly connected components, each sorted, ordered by smallest member.
std::vector<std::vector<ObjectId>> weak_components(const DependencyGraph &g);

/// Strongly connected components, each sorted, in topological order of the
/// condensation (edges point from earlier to later components); ties by smallest member.
std::vector<std::vector<ObjectId>> strong_components(const DependencyGraph &g);

/// Graphviz rendering for debugging.
std::string to_dot(const DependencyGraph &g);

} // namespace rearrange
