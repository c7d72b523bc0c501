#pragma once

#include "rearrange/model.hpp"

#include <string>
#include <vector>

namespace rearrange {

/// Arrangements shown by the renderer: the start, then the state after each action.
std::vector<Arrangement> plan_frames(const Instance &inst, const Plan &plan);

/// One SVG document with a grid of frames. Objects at their start pose are
/// green, at their goal cyan, anywhere else (a buffer) transparent with a
/// dashed outline. Goal footprints are drawn faintly in every frame.
std::string render_svg(const Instance &inst, const Plan &plan, double scale = 30.0, std::size_t columns = 4);

} // namespace rearrange
