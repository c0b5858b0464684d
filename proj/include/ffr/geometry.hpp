#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ffr {

// Raised for precondition violations and invalid configurations.
class SimError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  constexpr Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
  constexpr bool operator==(const Vec2&) const = default;

  double norm() const { return std::hypot(x, y); }
};

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }

inline Vec2 unit_from_angle(double a) { return {std::cos(a), std::sin(a)}; }

// Rotates a body-frame vector by heading `theta`.
inline Vec2 rotate(Vec2 v, double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return {c * v.x - s * v.y, s * v.x + c * v.y};
}

// Wraps an angle into (-pi, pi].
double wrap_angle(double a);

// Nearest multiple of pi/2, wrapped.
double snap_right_angle(double a);

double distance_to_segment(Vec2 p, Vec2 a, Vec2 b);

// Oriented rectangle: center, unit x-axis, half extents along its own axes.
struct OrientedBox {
  Vec2 center;
  Vec2 axis{1.0, 0.0};
  double half_length = 0.0;
  double half_width = 0.0;

  Vec2 to_local(Vec2 p) const {
    const Vec2 d = p - center;
    return {dot(d, axis), cross(axis, d)};
  }
  bool contains(Vec2 p, double tol = 0.0) const;
  // Distance from p to the box (0 inside).
  double distance(Vec2 p) const;
};

// Strict interior overlap via the separating-axis test.
bool boxes_overlap(const OrientedBox& a, const OrientedBox& b);

struct Pose {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;

  Vec2 position() const { return {x, y}; }
  Vec2 to_world(Vec2 body) const { return position() + rotate(body, theta); }
  bool operator==(const Pose&) const = default;
};

}  // namespace ffr
