#include "rearrange/depgraph.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <sstream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace rearrange {

namespace {

void insert_sorted(std::vector<ObjectId> &v, ObjectId x) {
    auto it = std::lower_bound(v.begin(), v.end(), x);
    if (it == v.end() || *it != x)
        v.insert(it, x);
}

} // namespace

DependencyGraph DependencyGraph::from_edges(std::size_t n, const std::vector<std::pair<ObjectId, ObjectId>> &edges) {
    DependencyGraph g(n);
    for (auto [i, j] : edges)
        g.add_edge(i, j);
    return g;
}

std::size_t DependencyGraph::edge_count() const {
    std::size_t m = 0;
    for (const auto &o : out_)
        m += o.size();
    return m;
}

void DependencyGraph::add_edge(ObjectId i, ObjectId j) {
    if (i == j)
        throw std::invalid_argument("dependency graph has no self-loops");
    if (i < 0 || j < 0 || static_cast<std::size_t>(i) >= size() || static_cast<std::size_t>(j) >= size())
        throw std::out_of_range("edge endpoint out of range");
    insert_sorted(out_[static_cast<std::size_t>(i)], j);
    insert_sorted(in_[static_cast<std::size_t>(j)], i);
}

bool DependencyGraph::has_edge(ObjectId i, ObjectId j) const {
    const auto &o = out_[static_cast<std::size_t>(i)];
    return std::binary_search(o.begin(), o.end(), j);
}

std::vector<std::pair<ObjectId, ObjectId>> DependencyGraph::edges() const {
    std::vector<std::pair<ObjectId, ObjectId>> e;
    for (std::size_t i = 0; i < out_.size(); ++i)
        for (ObjectId j : out_[i])
            e.emplace_back(static_cast<ObjectId>(i), j);
    return e;
}

DependencyGraph DependencyGraph::induced(const std::vector<ObjectId> &vertices) const {
    std::vector<int> local(size(), -1);
    for (std::size_t k = 0; k < vertices.size(); ++k)
        local[static_cast<std::size_t>(vertices[k])] = static_cast<int>(k);
    DependencyGraph sub(vertices.size());
    for (std::size_t k = 0; k < vertices.size(); ++k)
        for (ObjectId j : successors(vertices[k]))
            if (local[static_cast<std::size_t>(j)] >= 0)
                sub.add_edge(static_cast<ObjectId>(k), local[static_cast<std::size_t>(j)]);
    return sub;
}

DependencyGraph build_dependency_graph(const Arrangement &from, const Arrangement &to, const Instance &inst,
                                       CheckCounter &counter) {
    const std::size_t n = inst.size();
    if (from.size() != n || to.size() != n)
        throw MalformedArrangement("dependency graph needs poses for every object");
    DependencyGraph g(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j && collides(inst.objects[i].shape, to[i], inst.objects[j].shape, from[j], counter))
                g.add_edge(static_cast<ObjectId>(i), static_cast<ObjectId>(j));
    return g;
}

DependencyGraph build_dependency_graph_parallel(const Arrangement &from, const Arrangement &to, const Instance &inst,
                                                CheckCounter &counter) {
    const std::size_t n = inst.size();
    if (from.size() != n || to.size() != n)
        throw MalformedArrangement("dependency graph needs poses for every object");
    std::vector<std::vector<ObjectId>> rows(n);
    std::uint64_t checks = 0;
    const auto sn = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 4) reduction(+ : checks)
    for (long long i = 0; i < sn; ++i) {
        CheckCounter local;
        const auto ui = static_cast<std::size_t>(i);
        for (std::size_t j = 0; j < n; ++j)
            if (ui != j && collides(inst.objects[ui].shape, to[ui], inst.objects[j].shape, from[j], local))
                rows[ui].push_back(static_cast<ObjectId>(j));
        checks += local.count();
    }
    counter.tick(checks);
    DependencyGraph g(n);
    for (std::size_t i = 0; i < n; ++i)
        for (ObjectId j : rows[i])
            g.add_edge(static_cast<ObjectId>(i), j);
    return g;
}

std::vector<ObjectId> placement_topological_order(const DependencyGraph &g) {
    const std::size_t n = g.size();
    std::vector<std::size_t> pending(n);
    std::priority_queue<ObjectId, std::vector<ObjectId>, std::greater<>> ready;
    for (std::size_t i = 0; i < n; ++i) {
        pending[i] = g.successors(static_cast<ObjectId>(i)).size();
        if (pending[i] == 0)
            ready.push(static_cast<ObjectId>(i));
    }
    std::vector<ObjectId> order;
    order.reserve(n);
    while (!ready.empty()) {
        const ObjectId v = ready.top();
        ready.pop();
        order.push_back(v);
        for (ObjectId p : g.predecessors(v))
            if (--pending[static_cast<std::size_t>(p)] == 0)
                ready.push(p);
    }
    if (order.size() != n)
        order.clear();
    return order;
}

bool is_monotone(const DependencyGraph &g) {
    return g.size() == 0 || !placement_topological_order(g).empty();
}

std::vector<std::vector<ObjectId>> weak_components(const DependencyGraph &g) {
    const std::size_t n = g.size();
    std::vector<int> label(n, -1);
    std::vector<std::vector<ObjectId>> comps;
    for (std::size_t s = 0; s < n; ++s) {
        if (label[s] >= 0)
            continue;
        const int c = static_cast<int>(comps.size());
        comps.emplace_back();
        std::vector<ObjectId> stack{static_cast<ObjectId>(s)};
        label[s] = c;
        while (!stack.empty()) {
            const ObjectId v = stack.back();
            stack.pop_back();
            comps.back().push_back(v);
            for (const auto *adj : {&g.successors(v), &g.predecessors(v)})
                for (ObjectId w : *adj)
                    if (label[static_cast<std::size_t>(w)] < 0) {
                        label[static_cast<std::size_t>(w)] = c;
                        stack.push_back(w);
                    }
        }
        std::sort(comps.back().begin(), comps.back().end());
    }
    return comps;
}

std::vector<std::vector<ObjectId>> strong_components(const DependencyGraph &g) {
    // Tarjan, iterative
    const std::size_t n = g.size();
    std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
    std::vector<bool> on_stack(n, false);
    std::vector<ObjectId> stack;
    std::vector<std::vector<ObjectId>> sccs;
    int counter = 0;
    for (std::size_t root = 0; root < n; ++root) {
        if (index[root] >= 0)
            continue;
        std::vector<std::pair<ObjectId, std::size_t>> frames{{static_cast<ObjectId>(root), 0}};
        while (!frames.empty()) {
            auto &[v, next] = frames.back();
            const auto uv = static_cast<std::size_t>(v);
            if (next == 0 && index[uv] < 0) {
                index[uv] = low[uv] = counter++;
                stack.push_back(v);
                on_stack[uv] = true;
            }
            const auto &succ = g.successors(v);
            if (next < succ.size()) {
                const ObjectId w = succ[next++];
                const auto uw = static_cast<std::size_t>(w);
                if (index[uw] < 0)
                    frames.emplace_back(w, 0);
                else if (on_stack[uw])
                    low[uv] = std::min(low[uv], index[uw]);
                continue;
            }
            if (low[uv] == index[uv]) {
                std::vector<ObjectId> scc;
                ObjectId w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[static_cast<std::size_t>(w)] = false;
                    comp[static_cast<std::size_t>(w)] = static_cast<int>(sccs.size());
                    scc.push_back(w);
                } while (w != v);
                std::sort(scc.begin(), scc.end());
                sccs.push_back(std::move(scc));
            }
            const ObjectId done = v;
            frames.pop_back();
            if (!frames.empty()) {
                const auto up = static_cast<std::size_t>(frames.back().first);
                low[up] = std::min(low[up], low[static_cast<std::size_t>(done)]);
            }
        }
    }

    // order the condensation: Kahn on in-degrees, smallest member first
    const std::size_t k = sccs.size();
    std::vector<std::vector<int>> cout(k);
    std::vector<std::size_t> indeg(k, 0);
    for (auto [i, j] : g.edges()) {
        const int a = comp[static_cast<std::size_t>(i)], b = comp[static_cast<std::size_t>(j)];
        if (a != b)
            cout[static_cast<std::size_t>(a)].push_back(b);
    }
    for (auto &c : cout) {
        std::sort(c.begin(), c.end());
        c.erase(std::unique(c.begin(), c.end()), c.end());
        for (int b : c)
            ++indeg[static_cast<std::size_t>(b)];
    }
    auto cmp = [&](int a, int b) { return sccs[static_cast<std::size_t>(a)][0] > sccs[static_cast<std::size_t>(b)][0]; };
    std::priority_queue<int, std::vector<int>, decltype(cmp)> ready(cmp);
    for (std::size_t c = 0; c < k; ++c)
        if (indeg[c] == 0)
            ready.push(static_cast<int>(c));
    std::vector<std::vector<ObjectId>> ordered;
    while (!ready.empty()) {
        const int c = ready.top();
        ready.pop();
        ordered.push_back(sccs[static_cast<std::size_t>(c)]);
        for (int b : cout[static_cast<std::size_t>(c)])
            if (--indeg[static_cast<std::size_t>(b)] == 0)
                ready.push(b);
    }
    return ordered;
}

std::string to_dot(const DependencyGraph &g) {
    std::ostringstream os;
    os << "digraph dependency {\n";
    for (std::size_t i = 0; i < g.size(); ++i)
        os << "  o" << i << ";\n";
    for (auto [i, j] : g.edges())
        os << "  o" << i << " -> o" << j << ";\n";
    os << "}\n";
    return os.str();
}

} // namespace rearrange
