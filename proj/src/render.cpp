#include "rearrange/render.hpp"

#include <cmath>
#include <sstream>

namespace rearrange {

std::vector<Arrangement> plan_frames(const Instance &inst, const Plan &plan) {
    std::vector<Arrangement> frames{inst.start};
    Arrangement cur = inst.start;
    for (const auto &a : plan) {
        cur.at(static_cast<std::size_t>(a.object)) = a.target;
        frames.push_back(cur);
    }
    return frames;
}

namespace {

void shape_svg(std::ostream &os, const Shape &s, const Pose &p, double scale, double ox, double oy, double height,
               const std::string &style) {
    const double cx = ox + p.x * scale, cy = oy + (height - p.y) * scale;
    if (s.is_disc()) {
        os << "<circle cx=\"" << cx << "\" cy=\"" << cy << "\" r=\"" << s.as_disc().radius * scale << "\" " << style
           << "/>\n";
        return;
    }
    const Rect &r = s.as_rect();
    const double deg = -p.theta * 180.0 / kPi;
    os << "<rect x=\"" << cx - r.width * scale / 2 << "\" y=\"" << cy - r.height * scale / 2 << "\" width=\""
       << r.width * scale << "\" height=\"" << r.height * scale << "\" transform=\"rotate(" << deg << ' ' << cx << ' '
       << cy << ")\" " << style << "/>\n";
}

} // namespace

std::string render_svg(const Instance &inst, const Plan &plan, double scale, std::size_t columns) {
    const auto frames = plan_frames(inst, plan);
    const double w = inst.workspace.width * scale, h = inst.workspace.height * scale;
    const double gap = 20.0, title = 18.0;
    columns = std::max<std::size_t>(1, std::min(columns, frames.size()));
    const std::size_t rows = (frames.size() + columns - 1) / columns;
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << columns * (w + gap) + gap << "\" height=\""
       << rows * (h + gap + title) + gap << "\" font-family=\"sans-serif\">\n";
    for (std::size_t f = 0; f < frames.size(); ++f) {
        const double ox = gap + static_cast<double>(f % columns) * (w + gap);
        const double oy = gap + title + static_cast<double>(f / columns) * (h + gap + title);
        os << "<g class=\"frame\" id=\"frame-" << f << "\">\n";
        std::string label = f == 0 ? "start" : "action " + std::to_string(f);
        if (f > 0) {
            const Action &a = plan[f - 1];
            label += ": " + std::to_string(a.object) + " " + to_string(a.kind);
        }
        os << "<text x=\"" << ox << "\" y=\"" << oy - 5 << "\" font-size=\"13\">" << label << "</text>\n";
        os << "<rect x=\"" << ox << "\" y=\"" << oy << "\" width=\"" << w << "\" height=\"" << h
           << "\" fill=\"white\" stroke=\"black\"/>\n";
        for (std::size_t i = 0; i < inst.size(); ++i)
            shape_svg(os, inst.shape(static_cast<ObjectId>(i)), inst.goal[i], scale, ox, oy, inst.workspace.height,
                      "fill=\"none\" stroke=\"#00bcd4\" stroke-opacity=\"0.4\"");
        for (std::size_t i = 0; i < inst.size(); ++i) {
            const Pose &p = frames[f][i];
            std::string style;
            if (same_pose(p, inst.goal[i]))
                style = "fill=\"#00bcd4\" stroke=\"black\"";
            else if (same_pose(p, inst.start[i]))
                style = "fill=\"#4caf50\" stroke=\"black\"";
            else
                style = "fill=\"none\" stroke=\"black\" stroke-dasharray=\"4 3\"";
            shape_svg(os, inst.shape(static_cast<ObjectId>(i)), p, scale, ox, oy, inst.workspace.height, style);
            os << "<text x=\"" << ox + p.x * scale << "\" y=\"" << oy + (inst.workspace.height - p.y) * scale + 4
               << "\" font-size=\"11\" text-anchor=\"middle\">" << i << "</text>\n";
        }
        os << "</g>\n";
    }
    os << "</svg>\n";
    return os.str();
}

} // namespace rearrange
