#include "rearrange/primitive.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <numeric>
#include <queue>
#include <unordered_set>

namespace rearrange {

std::size_t PrimitivePlan::total_buffers() const {
    return static_cast<std::size_t>(std::count_if(actions.begin(), actions.end(),
                                                  [](const PrimitiveAction &a) { return a.move == ActionKind::SB; }));
}

std::size_t PrimitivePlan::running_buffers() const {
    std::size_t current = 0, peak = 0;
    for (const auto &a : actions) {
        if (a.move == ActionKind::SB)
            peak = std::max(peak, ++current);
        else if (a.move == ActionKind::BG)
            --current;
    }
    return peak;
}

PrimitivePlan derive_plan(const PlacementOrder &order, const DependencyGraph &g) {
    const std::size_t n = g.size();
    std::vector<char> placed(n, 0), evicted(n, 0);
    if (order.size() != n)
        throw std::invalid_argument("placement order must list every object once");
    for (ObjectId v : order) {
        if (v < 0 || static_cast<std::size_t>(v) >= n || placed[static_cast<std::size_t>(v)])
            throw std::invalid_argument("placement order must be a permutation");
        placed[static_cast<std::size_t>(v)] = 1;
    }
    std::fill(placed.begin(), placed.end(), 0);

    PrimitivePlan plan;
    plan.actions.reserve(n + n / 2);
    for (ObjectId j : order) {
        for (ObjectId o : g.successors(j)) {
            const auto uo = static_cast<std::size_t>(o);
            if (!placed[uo] && !evicted[uo]) {
                evicted[uo] = 1;
                plan.actions.push_back({o, ActionKind::SB});
            }
        }
        const auto uj = static_cast<std::size_t>(j);
        plan.actions.push_back({j, evicted[uj] ? ActionKind::BG : ActionKind::SG});
        placed[uj] = 1;
    }
    return plan;
}

namespace {

using Mask = std::uint32_t;

std::vector<Mask> out_masks(const DependencyGraph &g) {
    std::vector<Mask> masks(g.size(), 0);
    for (std::size_t v = 0; v < g.size(); ++v)
        for (ObjectId w : g.successors(static_cast<ObjectId>(v)))
            masks[v] |= Mask{1} << w;
    return masks;
}

int popcount(Mask m) { return std::popcount(m); }

// Picks among candidates attaining the minimum: the first one, or a uniformly
// random one when an rng is supplied.
class TieBreaker {
  public:
    explicit TieBreaker(Rng *rng) : rng_(rng) {}

    void offer(int candidate, int value) {
        if (value < best_value_) {
            best_value_ = value;
            choice_ = candidate;
            ties_ = 1;
        } else if (value == best_value_) {
            ++ties_;
            if (rng_ && rng_->below(ties_) == 0)
                choice_ = candidate;
        }
    }
    int choice() const { return choice_; }
    int value() const { return best_value_; }

  private:
    Rng *rng_;
    int best_value_ = 1 << 30;
    int choice_ = -1;
    std::uint64_t ties_ = 0;
};

// Subset DP. cost[S] = fewest running buffers needed to finish once the objects
// in S are placed; evicted-but-unplaced objects after S are E(S) = N(S) \ S.
PlacementOrder rbm_exact(const DependencyGraph &g, Rng *rng) {
    const int k = static_cast<int>(g.size());
    const auto nbr = out_masks(g);
    const Mask full = (Mask{1} << k) - 1;
    std::vector<Mask> reach(std::size_t{full} + 1, 0);
    for (Mask s = 1; s <= full && s != 0; ++s)
        reach[s] = reach[s & (s - 1)] | nbr[static_cast<std::size_t>(std::countr_zero(s))];
    std::vector<std::uint8_t> cost(std::size_t{full} + 1, 0);

    auto peak = [&](Mask s, int j) {
        const Mask evicted = reach[s] & ~s;
        return popcount(evicted | (nbr[static_cast<std::size_t>(j)] & ~s));
    };

    for (Mask s = full; s-- > 0;) {
        int best = 1 << 30;
        for (Mask rem = full & ~s; rem; rem &= rem - 1) {
            const int j = std::countr_zero(rem);
            best = std::min(best, std::max(peak(s, j), int{cost[s | (Mask{1} << j)]}));
        }
        cost[s] = static_cast<std::uint8_t>(best);
    }

    PlacementOrder order;
    Mask s = 0;
    while (s != full) {
        TieBreaker pick(rng);
        for (Mask rem = full & ~s; rem; rem &= rem - 1) {
            const int j = std::countr_zero(rem);
            pick.offer(j, std::max(peak(s, j), int{cost[s | (Mask{1} << j)]}));
        }
        order.push_back(pick.choice());
        s |= Mask{1} << pick.choice();
    }
    return order;
}

// Places next whichever object raises the buffer count least.
PlacementOrder rbm_greedy(const DependencyGraph &g, Rng *rng) {
    const std::size_t k = g.size();
    std::vector<char> placed(k, 0), evicted(k, 0);
    std::size_t buffered = 0;
    PlacementOrder order;
    while (order.size() < k) {
        TieBreaker pick(rng);
        for (std::size_t j = 0; j < k; ++j) {
            if (placed[j])
                continue;
            int extra = 0;
            for (ObjectId o : g.successors(static_cast<ObjectId>(j)))
                extra += (!placed[static_cast<std::size_t>(o)] && !evicted[static_cast<std::size_t>(o)]) ? 1 : 0;
            pick.offer(static_cast<int>(j), static_cast<int>(buffered) + extra);
        }
        const auto j = static_cast<std::size_t>(pick.choice());
        for (ObjectId o : g.successors(static_cast<ObjectId>(j))) {
            const auto uo = static_cast<std::size_t>(o);
            if (!placed[uo] && !evicted[uo]) {
                evicted[uo] = 1;
                ++buffered;
            }
        }
        if (evicted[j])
            --buffered;
        placed[j] = 1;
        order.push_back(static_cast<ObjectId>(j));
    }
    return order;
}

// Depth-first search for an order whose running buffers never exceed `bound`.
// States are placed sets; failed ones are remembered. Placing an evicted object
// that evicts nothing new never hurts later, so such moves are forced.
class BoundedOrderSearch {
  public:
    BoundedOrderSearch(const DependencyGraph &g, Rng *rng, std::size_t budget) : rng_(rng), budget_(budget) {
        for (std::size_t v = 0; v < g.size(); ++v) {
            std::uint64_t m = 0;
            for (ObjectId w : g.successors(static_cast<ObjectId>(v)))
                m |= std::uint64_t{1} << w;
            nbr_.push_back(m);
        }
        full_ = g.size() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << g.size()) - 1;
    }

    /// Order within `bound`, or empty when none was found. exhausted() tells
    /// whether the search gave up on its node budget.
    PlacementOrder find(int bound) {
        bound_ = bound;
        dead_.clear();
        order_.clear();
        expanded_ = 0;
        exhausted_ = false;
        if (!dfs(0, 0))
            order_.clear();
        return order_;
    }
    bool exhausted() const { return exhausted_; }

  private:
    bool dfs(std::uint64_t placed, std::uint64_t evicted) {
        const std::size_t depth = order_.size();
        // forced moves
        for (;;) {
            bool moved = false;
            for (std::uint64_t rem = evicted; rem; rem &= rem - 1) {
                const int j = std::countr_zero(rem);
                if ((nbr_[static_cast<std::size_t>(j)] & ~placed & ~evicted) == 0) {
                    placed |= std::uint64_t{1} << j;
                    evicted &= ~(std::uint64_t{1} << j);
                    order_.push_back(j);
                    moved = true;
                }
            }
            if (!moved)
                break;
        }
        if (placed == full_)
            return true;
        if (dead_.count(placed) || ++expanded_ > budget_) {
            exhausted_ = exhausted_ || expanded_ > budget_;
            order_.resize(depth);
            return false;
        }
        const std::size_t base = order_.size();
        struct Move {
            int j;
            int after;
            std::uint64_t tie;
        };
        std::vector<Move> moves;
        for (std::uint64_t rem = full_ & ~placed; rem; rem &= rem - 1) {
            const int j = std::countr_zero(rem);
            const std::uint64_t bit = std::uint64_t{1} << j;
            const std::uint64_t next = (evicted | (nbr_[static_cast<std::size_t>(j)] & ~placed)) & ~bit;
            const int peak = std::popcount(evicted | (nbr_[static_cast<std::size_t>(j)] & ~placed));
            if (peak <= bound_)
                moves.push_back({j, std::popcount(next), rng_ ? rng_->next() : 0});
        }
        std::sort(moves.begin(), moves.end(), [](const Move &a, const Move &b) {
            return a.after != b.after ? a.after < b.after : a.tie != b.tie ? a.tie < b.tie : a.j < b.j;
        });
        for (const Move &m : moves) {
            const std::uint64_t bit = std::uint64_t{1} << m.j;
            order_.push_back(m.j);
            if (dfs(placed | bit, (evicted | (nbr_[static_cast<std::size_t>(m.j)] & ~placed)) & ~bit))
                return true;
            order_.resize(base);
            if (exhausted_)
                break;
        }
        if (!exhausted_)
            dead_.insert(placed);
        order_.resize(depth);
        return false;
    }

    Rng *rng_;
    std::size_t budget_;
    std::vector<std::uint64_t> nbr_;
    std::uint64_t full_ = 0;
    int bound_ = 0;
    std::unordered_set<std::uint64_t> dead_;
    PlacementOrder order_;
    std::size_t expanded_ = 0;
    bool exhausted_ = false;
};

// Components beyond the DP limit: greedy order, improved by bounded search on
// up to 64 vertices.
PlacementOrder rbm_large(const DependencyGraph &g, Rng *rng) {
    PlacementOrder best = rbm_greedy(g, rng);
    if (g.size() > 64)
        return best;
    const int greedy = static_cast<int>(derive_plan(best, g).running_buffers());
    BoundedOrderSearch search(g, rng, kOrderSearchBudget);
    for (int bound = greedy - 1; bound >= 1; --bound) {
        PlacementOrder found = search.find(bound);
        if (found.empty())
            break;
        best = std::move(found);
    }
    return best;
}

std::vector<ObjectId> fvs_exact(const DependencyGraph &g, Rng *rng) {
    const int k = static_cast<int>(g.size());
    const auto nbr = out_masks(g);
    const Mask full = (Mask{1} << k) - 1;
    // acyclic[X]: X induces a DAG, i.e. it has a sink v with X \ {v} acyclic
    std::vector<std::uint8_t> acyclic(std::size_t{full} + 1, 0);
    acyclic[0] = 1;
    for (Mask x = 1; x <= full && x != 0; ++x) {
        for (Mask rem = x; rem; rem &= rem - 1) {
            const int v = std::countr_zero(rem);
            if ((nbr[static_cast<std::size_t>(v)] & x) == 0 && acyclic[x & ~(Mask{1} << v)]) {
                acyclic[x] = 1;
                break;
            }
        }
    }
    int best_size = -1;
    Mask best = 0;
    std::uint64_t ties = 0;
    for (Mask x = full;; --x) {
        if (acyclic[x]) {
            const int size = popcount(x);
            if (size > best_size) {
                best_size = size;
                best = x;
                ties = 1;
            } else if (size == best_size && rng && rng->below(++ties) == 0) {
                best = x;
            }
        }
        if (x == 0)
            break;
    }
    std::vector<ObjectId> fvs;
    for (int v = 0; v < k; ++v)
        if (!(best & (Mask{1} << v)))
            fvs.push_back(v);
    return fvs;
}

// Trim sources and sinks, then drop the vertex with the largest in*out degree.
std::vector<ObjectId> fvs_greedy(const DependencyGraph &g, Rng *rng) {
    const std::size_t k = g.size();
    std::vector<char> alive(k, 1);
    std::vector<ObjectId> fvs;
    auto degree = [&](const std::vector<ObjectId> &adj) {
        return static_cast<int>(
            std::count_if(adj.begin(), adj.end(), [&](ObjectId w) { return alive[static_cast<std::size_t>(w)] != 0; }));
    };
    auto out_deg = [&](std::size_t v) { return degree(g.successors(static_cast<ObjectId>(v))); };
    auto in_deg = [&](std::size_t v) { return degree(g.predecessors(static_cast<ObjectId>(v))); };
    for (;;) {
        bool trimmed = true;
        while (trimmed) {
            trimmed = false;
            for (std::size_t v = 0; v < k; ++v) {
                if (alive[v] && (out_deg(v) == 0 || in_deg(v) == 0)) {
                    alive[v] = 0;
                    trimmed = true;
                }
            }
        }
        TieBreaker pick(rng);
        for (std::size_t v = 0; v < k; ++v)
            if (alive[v])
                pick.offer(static_cast<int>(v), -out_deg(v) * in_deg(v));
        if (pick.choice() < 0)
            break;
        alive[static_cast<std::size_t>(pick.choice())] = 0;
        fvs.push_back(pick.choice());
    }
    std::sort(fvs.begin(), fvs.end());
    return fvs;
}

// Strongly connected components are placed sinks first: when a component is
// reached, every object its goals block outside it has already been placed, so
// its buffers are all released before the next component starts.
template <class SolveComponent> OrderResult per_component(const DependencyGraph &g, SolveComponent solve) {
    OrderResult result;
    const auto sccs = strong_components(g);
    // components are placed once everything they point to is placed; among
    // ready components the one with the smallest member goes first
    std::vector<std::size_t> comp_of(g.size());
    for (std::size_t c = 0; c < sccs.size(); ++c)
        for (ObjectId v : sccs[c])
            comp_of[static_cast<std::size_t>(v)] = c;
    std::vector<std::vector<std::size_t>> waiting(sccs.size());
    std::vector<std::size_t> pending(sccs.size(), 0);
    for (std::size_t c = 0; c < sccs.size(); ++c) {
        std::vector<std::size_t> targets;
        for (ObjectId v : sccs[c])
            for (ObjectId w : g.successors(v))
                if (comp_of[static_cast<std::size_t>(w)] != c)
                    targets.push_back(comp_of[static_cast<std::size_t>(w)]);
        std::sort(targets.begin(), targets.end());
        targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
        pending[c] = targets.size();
        for (std::size_t t : targets)
            waiting[t].push_back(c);
    }
    using Ready = std::pair<ObjectId, std::size_t>;
    std::priority_queue<Ready, std::vector<Ready>, std::greater<>> ready;
    for (std::size_t c = 0; c < sccs.size(); ++c)
        if (pending[c] == 0)
            ready.emplace(sccs[c][0], c);
    while (!ready.empty()) {
        const std::size_t c = ready.top().second;
        ready.pop();
        for (std::size_t up : waiting[c])
            if (--pending[up] == 0)
                ready.emplace(sccs[up][0], up);
        const auto &comp = sccs[c];
        if (comp.size() == 1) {
            result.order.push_back(comp[0]);
            continue;
        }
        const DependencyGraph sub = g.induced(comp);
        const bool exact = comp.size() <= kExactComponentLimit;
        result.fallback = result.fallback || !exact;
        for (ObjectId local : solve(sub, exact))
            result.order.push_back(comp[static_cast<std::size_t>(local)]);
    }
    return result;
}

PlacementOrder order_around_fvs(const DependencyGraph &g, std::vector<ObjectId> fvs, Rng *rng) {
    std::vector<char> in_fvs(g.size(), 0);
    for (ObjectId v : fvs)
        in_fvs[static_cast<std::size_t>(v)] = 1;
    std::vector<ObjectId> rest;
    for (std::size_t v = 0; v < g.size(); ++v)
        if (!in_fvs[v])
            rest.push_back(static_cast<ObjectId>(v));
    PlacementOrder order;
    for (ObjectId local : placement_topological_order(g.induced(rest)))
        order.push_back(rest[static_cast<std::size_t>(local)]);
    if (rng)
        for (std::size_t i = fvs.size(); i > 1; --i)
            std::swap(fvs[i - 1], fvs[rng->below(i)]);
    order.insert(order.end(), fvs.begin(), fvs.end());
    return order;
}

} // namespace

OrderResult rbm(const DependencyGraph &g, Rng *rng) {
    return per_component(g, [rng](const DependencyGraph &sub, bool exact) {
        return exact ? rbm_exact(sub, rng) : rbm_large(sub, rng);
    });
}

std::vector<ObjectId> min_feedback_vertex_set(const DependencyGraph &g, Rng *rng) {
    if (g.size() > kExactComponentLimit)
        throw std::invalid_argument("exact feedback vertex set limited to " + std::to_string(kExactComponentLimit) +
                                    " vertices");
    return fvs_exact(g, rng);
}

OrderResult tbm(const DependencyGraph &g, Rng *rng) {
    return per_component(g, [rng](const DependencyGraph &sub, bool exact) {
        return order_around_fvs(sub, exact ? fvs_exact(sub, rng) : fvs_greedy(sub, rng), rng);
    });
}

PlacementOrder random_order(std::size_t n, Rng &rng) {
    PlacementOrder order(n);
    std::iota(order.begin(), order.end(), ObjectId{0});
    for (std::size_t i = n; i > 1; --i)
        std::swap(order[i - 1], order[rng.below(i)]);
    return order;
}

PlacementOrder random_order(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    return random_order(n, rng);
}

std::size_t min_running_buffers(const DependencyGraph &g) { return derive_plan(rbm(g).order, g).running_buffers(); }

namespace {

template <class Metric> std::size_t brute_force(const DependencyGraph &g, Metric metric) {
    if (g.size() > 8)
        throw OracleTooLarge("brute-force oracle limited to 8 objects");
    PlacementOrder order(g.size());
    std::iota(order.begin(), order.end(), ObjectId{0});
    std::size_t best = g.size();
    do {
        best = std::min(best, metric(derive_plan(order, g)));
    } while (std::next_permutation(order.begin(), order.end()));
    return best;
}

} // namespace

std::size_t brute_force_mrb(const DependencyGraph &g) {
    return brute_force(g, [](const PrimitivePlan &p) { return p.running_buffers(); });
}

std::size_t brute_force_tbm(const DependencyGraph &g) {
    return brute_force(g, [](const PrimitivePlan &p) { return p.total_buffers(); });
}

namespace {

// Fill order over goal slots. After filling F, the objects displaced so far are
// D(F) = blockers of F, and max(0, |D(F)| - |F|) of them wait in buffers. Filling
// slot s evicts its m remaining blockers; the last one drops straight into s.
std::vector<int> fill_order_exact(const std::vector<Mask> &blockers, Rng *rng) {
    const int k = static_cast<int>(blockers.size());
    const Mask full = (Mask{1} << k) - 1;
    std::vector<Mask> displaced(std::size_t{full} + 1, 0);
    for (Mask f = 1; f <= full && f != 0; ++f)
        displaced[f] = displaced[f & (f - 1)] | blockers[static_cast<std::size_t>(std::countr_zero(f))];

    auto peak = [&](Mask f, int s) {
        const int waiting = std::max(0, popcount(displaced[f]) - popcount(f));
        const int fresh = popcount(blockers[static_cast<std::size_t>(s)] & ~displaced[f]);
        return waiting + std::max(0, fresh - 1);
    };

    std::vector<std::uint8_t> cost(std::size_t{full} + 1, 0);
    for (Mask f = full; f-- > 0;) {
        int best = 1 << 30;
        for (Mask rem = full & ~f; rem; rem &= rem - 1) {
            const int s = std::countr_zero(rem);
            best = std::min(best, std::max(peak(f, s), int{cost[f | (Mask{1} << s)]}));
        }
        cost[f] = static_cast<std::uint8_t>(best);
    }
    std::vector<int> order;
    Mask f = 0;
    while (f != full) {
        TieBreaker pick(rng);
        for (Mask rem = full & ~f; rem; rem &= rem - 1) {
            const int s = std::countr_zero(rem);
            pick.offer(s, std::max(peak(f, s), int{cost[f | (Mask{1} << s)]}));
        }
        order.push_back(pick.choice());
        f |= Mask{1} << pick.choice();
    }
    return order;
}

std::vector<int> fill_order_greedy(const std::vector<std::vector<int>> &blockers, Rng *rng) {
    const std::size_t k = blockers.size();
    std::vector<char> filled(k, 0), moved(k, 0);
    std::vector<int> order, fresh(k, 0);
    // blocked_by[o]: slots that object o blocks
    std::vector<std::vector<int>> blocked_by(k);
    for (std::size_t s = 0; s < k; ++s)
        for (int o : blockers[s]) {
            blocked_by[static_cast<std::size_t>(o)].push_back(static_cast<int>(s));
            ++fresh[s];
        }
    while (order.size() < k) {
        // fewest fresh evictions first, then the slot that unblocks the most
        // other slots so parked objects can leave their buffers soon
        TieBreaker pick(rng);
        const int scale = static_cast<int>(k) + 1;
        for (std::size_t s = 0; s < k; ++s) {
            if (filled[s])
                continue;
            int freed = 0;
            for (int o : blockers[s]) {
                if (moved[static_cast<std::size_t>(o)])
                    continue;
                for (int t : blocked_by[static_cast<std::size_t>(o)])
                    freed += (t != static_cast<int>(s) && !filled[static_cast<std::size_t>(t)] &&
                              fresh[static_cast<std::size_t>(t)] == 1)
                                 ? 1
                                 : 0;
            }
            pick.offer(static_cast<int>(s), fresh[s] * scale - freed);
        }
        const auto s = static_cast<std::size_t>(pick.choice());
        for (int o : blockers[s])
            if (!moved[static_cast<std::size_t>(o)]) {
                moved[static_cast<std::size_t>(o)] = 1;
                for (int t : blocked_by[static_cast<std::size_t>(o)])
                    --fresh[static_cast<std::size_t>(t)];
            }
        filled[s] = 1;
        order.push_back(static_cast<int>(s));
    }
    return order;
}

} // namespace

UnlabeledPlan unlabeled_plan(const std::vector<std::vector<int>> &blockers, Rng *rng) {
    const std::size_t k = blockers.size();
    UnlabeledPlan plan;
    plan.slot_of.assign(k, -1);
    plan.fallback = k > kExactComponentLimit;

    std::vector<int> order;
    if (plan.fallback) {
        order = fill_order_greedy(blockers, rng);
    } else {
        std::vector<Mask> masks(k, 0);
        for (std::size_t s = 0; s < k; ++s)
            for (int o : blockers[s])
                masks[s] |= Mask{1} << o;
        order = fill_order_exact(masks, rng);
    }

    // occ[s]: object in slot s. Slot s is the goal of object s, so object t
    // waits on occ[t] afterwards. Among the objects that may fill a slot the one
    // closing no such chain into a cycle wins, otherwise the one closing the
    // shortest cycle.
    std::vector<int> occ(k, -1);
    std::vector<char> at_start(k, 1);
    std::vector<int> buffered;
    std::size_t in_buffer = 0;
    auto cycle_length = [&](int o, int slot) {
        if (o == slot)
            return 0;
        int v = o;
        for (int len = 1; len <= static_cast<int>(k); ++len) {
            if (v == slot)
                return len;
            const int w = occ[static_cast<std::size_t>(v)];
            if (w < 0 || w == v)
                return 0;
            v = w;
        }
        return 0;
    };
    auto best_filler = [&](const std::vector<int> &candidates, int slot) {
        TieBreaker pick(rng);
        for (int o : candidates)
            pick.offer(o, o == slot ? -1 : cycle_length(o, slot));
        return pick.choice();
    };
    auto fill = [&](int o, ActionKind move, int slot) {
        occ[static_cast<std::size_t>(slot)] = o;
        plan.slot_of[static_cast<std::size_t>(o)] = slot;
        plan.actions.push_back({o, move, slot});
    };
    auto from_buffer = [&](int slot) {
        const int o = best_filler(buffered, slot);
        buffered.erase(std::find(buffered.begin(), buffered.end(), o));
        --in_buffer;
        fill(o, ActionKind::BG, slot);
    };

    for (const int s : order) {
        std::vector<int> fresh;
        for (int o : blockers[static_cast<std::size_t>(s)])
            if (at_start[static_cast<std::size_t>(o)])
                fresh.push_back(o);
        if (fresh.empty()) {
            // nothing to clear; a parked object moves in, otherwise the slot stays empty
            if (!buffered.empty())
                from_buffer(s);
            continue;
        }
        const int drop = best_filler(fresh, s);
        for (int o : fresh) {
            at_start[static_cast<std::size_t>(o)] = 0;
            if (o == drop)
                continue;
            buffered.push_back(o);
            plan.actions.push_back({o, ActionKind::SB, -1});
            plan.running_buffers = std::max(plan.running_buffers, ++in_buffer);
        }
        fill(drop, ActionKind::SG, s);
    }
    for (std::size_t slot = 0; slot < k && !buffered.empty(); ++slot)
        if (occ[slot] < 0)
            from_buffer(static_cast<int>(slot));
    return plan;
}

} // namespace rearrange
