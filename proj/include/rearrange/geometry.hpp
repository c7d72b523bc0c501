#pragma once
/**
 * @file
 * @brief Planar poses, object footprints and the pairwise collision predicates
 *        every planner stage is built on.
 */

#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>

namespace rearrange {

/// Penetration depth below which two footprints are considered touching, not colliding.
inline constexpr double kContactTolerance = 1e-9;

inline constexpr double kPi = 3.14159265358979323846;

/// Wraps an angle into [0, 2pi).
double normalize_angle(double theta);

/// Object placement in the plane. theta is kept normalized to [0, 2pi).
struct Pose {
    double x = 0.0;
    double y = 0.0;
    double theta = 0.0;

    Pose() = default;
    Pose(double x_, double y_, double theta_ = 0.0);

    friend bool operator==(const Pose &, const Pose &) = default;
};

struct Disc {
    double radius;
    friend bool operator==(const Disc &, const Disc &) = default;
};

struct Rect {
    double width;
    double height;
    friend bool operator==(const Rect &, const Rect &) = default;
};

class InvalidShape : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Footprint of an upright object: a disc or a rectangle centred on the pose.
class Shape {
  public:
    static Shape disc(double radius);
    static Shape rect(double width, double height);

    bool is_disc() const { return std::holds_alternative<Disc>(form_); }
    const Disc &as_disc() const { return std::get<Disc>(form_); }
    const Rect &as_rect() const { return std::get<Rect>(form_); }

    double area() const;
    /// Radius of the smallest centred circle enclosing the footprint.
    double bounding_radius() const;
    /// Half extents of the axis-aligned box enclosing the footprint rotated by theta.
    void half_extents(double theta, double &hx, double &hy) const;

    friend bool operator==(const Shape &, const Shape &) = default;

  private:
    explicit Shape(std::variant<Disc, Rect> form) : form_(form) {}
    std::variant<Disc, Rect> form_;
};

/// Axis-aligned table area with one corner at the origin.
struct Workspace {
    double width = 10.0;
    double height = 10.0;

    double area() const { return width * height; }
    friend bool operator==(const Workspace &, const Workspace &) = default;
};

/// Number of pairwise collision queries made while solving.
class CheckCounter {
  public:
    void tick(std::uint64_t n = 1) { count_ += n; }
    std::uint64_t count() const { return count_; }

  private:
    std::uint64_t count_ = 0;
};

/// Signed overlap depth of two footprints: positive when interiors overlap,
/// zero or negative otherwise. Not instrumented.
double penetration(const Shape &a, const Pose &pa, const Shape &b, const Pose &pb);

/// True iff the interiors overlap by more than kContactTolerance. Ticks the counter once.
bool collides(const Shape &a, const Pose &pa, const Shape &b, const Pose &pb, CheckCounter &counter);

/// True iff the footprint lies inside the workspace; boundary contact is allowed.
bool contained(const Shape &shape, const Pose &pose, const Workspace &ws);

} // namespace rearrange
