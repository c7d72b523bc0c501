#pragma once

#include "rearrange/model.hpp"

#include <cmath>

namespace fixtures {

using namespace rearrange;

inline Instance discs(Workspace ws, double r, Arrangement start, Arrangement goal) {
    Instance inst;
    inst.workspace = ws;
    for (std::size_t i = 0; i < start.size(); ++i)
        inst.objects.push_back({static_cast<ObjectId>(i), Shape::disc(r)});
    inst.start = std::move(start);
    inst.goal = std::move(goal);
    return inst;
}

/// Unit discs in a row, each taking its right neighbour's place: a 3-cycle.
inline Instance shifted_row() { return discs({10, 10}, 1.0, {{2, 2}, {5, 2}, {8, 2}}, {{5, 2}, {8, 2}, {2, 2}}); }

/// Three unit discs whose starts form a triangle and whose goals sit beyond the
/// opposite edges, so every goal overlaps both other starts. A fourth object
/// just slides sideways.
inline Instance complete_triangle() {
    Arrangement start, goal;
    const double cx = 4, cy = 5, rs = 2.2 / std::sqrt(3.0), rg = 1.3;
    for (int i = 0; i < 3; ++i) {
        const double a = kPi / 2 + 2 * kPi * i / 3;
        start.emplace_back(cx + rs * std::cos(a), cy + rs * std::sin(a));
        goal.emplace_back(cx - rg * std::cos(a), cy - rg * std::sin(a));
    }
    start.emplace_back(8.5, 2);
    goal.emplace_back(8.5, 5);
    return discs({10, 10}, 1.0, start, goal);
}

} // namespace fixtures
