#include "rearrange/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace rearrange {

double normalize_angle(double theta) {
    constexpr double two_pi = 2.0 * kPi;
    double t = std::fmod(theta, two_pi);
    if (t < 0.0)
        t += two_pi;
    // fmod of a tiny negative number can round up to exactly 2pi
    if (t >= two_pi)
        t = 0.0;
    return t;
}

Pose::Pose(double x_, double y_, double theta_) : x(x_), y(y_), theta(normalize_angle(theta_)) {}

Shape Shape::disc(double radius) {
    if (!(radius > 0.0) || !std::isfinite(radius))
        throw InvalidShape("disc radius must be positive, got " + std::to_string(radius));
    return Shape(Disc{radius});
}

Shape Shape::rect(double width, double height) {
    if (!(width > 0.0) || !(height > 0.0) || !std::isfinite(width) || !std::isfinite(height))
        throw InvalidShape("rect dimensions must be positive");
    return Shape(Rect{width, height});
}

double Shape::area() const {
    if (is_disc())
        return kPi * as_disc().radius * as_disc().radius;
    return as_rect().width * as_rect().height;
}

double Shape::bounding_radius() const {
    if (is_disc())
        return as_disc().radius;
    return 0.5 * std::hypot(as_rect().width, as_rect().height);
}

void Shape::half_extents(double theta, double &hx, double &hy) const {
    if (is_disc()) {
        hx = hy = as_disc().radius;
        return;
    }
    const double c = std::abs(std::cos(theta));
    const double s = std::abs(std::sin(theta));
    const double hw = 0.5 * as_rect().width;
    const double hh = 0.5 * as_rect().height;
    hx = hw * c + hh * s;
    hy = hw * s + hh * c;
}

namespace {

struct Vec2 {
    double x, y;
};

double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }

struct OrientedBox {
    Vec2 centre;
    std::array<Vec2, 2> axes; // unit edge normals
    std::array<double, 2> half;

    OrientedBox(const Rect &r, const Pose &p)
        : centre{p.x, p.y}, axes{{{std::cos(p.theta), std::sin(p.theta)}, {-std::sin(p.theta), std::cos(p.theta)}}},
          half{0.5 * r.width, 0.5 * r.height} {}

    double radius_along(Vec2 axis) const {
        return half[0] * std::abs(dot(axes[0], axis)) + half[1] * std::abs(dot(axes[1], axis));
    }
};

double disc_disc(const Disc &a, const Pose &pa, const Disc &b, const Pose &pb) {
    return a.radius + b.radius - std::hypot(pa.x - pb.x, pa.y - pb.y);
}

// Separating-axis test over the four edge normals; the overlap depth is the
// smallest projected overlap.
double rect_rect(const Rect &a, const Pose &pa, const Rect &b, const Pose &pb) {
    const OrientedBox ba(a, pa), bb(b, pb);
    const Vec2 d{pb.x - pa.x, pb.y - pa.y};
    double depth = std::numeric_limits<double>::infinity();
    for (const auto *box : {&ba, &bb}) {
        for (const Vec2 &axis : box->axes) {
            const double overlap = ba.radius_along(axis) + bb.radius_along(axis) - std::abs(dot(d, axis));
            depth = std::min(depth, overlap);
        }
    }
    return depth;
}

double disc_rect(const Disc &a, const Pose &pa, const Rect &b, const Pose &pb) {
    const double c = std::cos(pb.theta), s = std::sin(pb.theta);
    const double dx = pa.x - pb.x, dy = pa.y - pb.y;
    // disc centre in the rectangle frame
    const double lx = c * dx + s * dy;
    const double ly = -s * dx + c * dy;
    const double hw = 0.5 * b.width, hh = 0.5 * b.height;
    const double qx = std::abs(lx) - hw, qy = std::abs(ly) - hh;
    if (qx <= 0.0 && qy <= 0.0)
        return a.radius - std::max(qx, qy); // centre inside: r + distance to nearest edge
    const double outside = std::hypot(std::max(qx, 0.0), std::max(qy, 0.0));
    return a.radius - outside;
}

} // namespace

double penetration(const Shape &a, const Pose &pa, const Shape &b, const Pose &pb) {
    if (a.is_disc() && b.is_disc())
        return disc_disc(a.as_disc(), pa, b.as_disc(), pb);
    if (a.is_disc())
        return disc_rect(a.as_disc(), pa, b.as_rect(), pb);
    if (b.is_disc())
        return disc_rect(b.as_disc(), pb, a.as_rect(), pa);
    return rect_rect(a.as_rect(), pa, b.as_rect(), pb);
}

bool collides(const Shape &a, const Pose &pa, const Shape &b, const Pose &pb, CheckCounter &counter) {
    counter.tick();
    // cheap reject on enclosing circles
    const double reach = a.bounding_radius() + b.bounding_radius();
    const double dx = pa.x - pb.x, dy = pa.y - pb.y;
    if (dx * dx + dy * dy >= reach * reach)
        return false;
    return penetration(a, pa, b, pb) > kContactTolerance;
}

bool contained(const Shape &shape, const Pose &pose, const Workspace &ws) {
    double hx, hy;
    shape.half_extents(pose.theta, hx, hy);
    constexpr double tol = kContactTolerance;
    return pose.x - hx >= -tol && pose.x + hx <= ws.width + tol && pose.y - hy >= -tol &&
           pose.y + hy <= ws.height + tol;
}

} // namespace rearrange
