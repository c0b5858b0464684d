#include "ffr/geometry.hpp"

#include <algorithm>
#include <array>

namespace ffr {

double wrap_angle(double a) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  a = std::fmod(a, two_pi);
  if (a <= -std::numbers::pi) a += two_pi;
  if (a > std::numbers::pi) a -= two_pi;
  return a;
}

double snap_right_angle(double a) {
  constexpr double quarter = std::numbers::pi / 2.0;
  return wrap_angle(std::round(a / quarter) * quarter);
}

double distance_to_segment(Vec2 p, Vec2 a, Vec2 b) {
  const Vec2 ab = b - a;
  const double len2 = dot(ab, ab);
  if (len2 == 0.0) return (p - a).norm();
  const double s = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
  return (p - (a + ab * s)).norm();
}

bool OrientedBox::contains(Vec2 p, double tol) const {
  const Vec2 l = to_local(p);
  return std::abs(l.x) < half_length - tol && std::abs(l.y) < half_width - tol;
}

double OrientedBox::distance(Vec2 p) const {
  const Vec2 l = to_local(p);
  const double dx = std::max(std::abs(l.x) - half_length, 0.0);
  const double dy = std::max(std::abs(l.y) - half_width, 0.0);
  return std::hypot(dx, dy);
}

namespace {

std::array<Vec2, 4> corners(const OrientedBox& b) {
  const Vec2 u = b.axis * b.half_length;
  const Vec2 v = Vec2{-b.axis.y, b.axis.x} * b.half_width;
  return {b.center + u + v, b.center + u - v, b.center - u - v, b.center - u + v};
}

// True when the projections of both boxes onto `n` are disjoint or only touch.
bool separated_on(Vec2 n, const std::array<Vec2, 4>& ca, const std::array<Vec2, 4>& cb) {
  double amin = dot(ca[0], n), amax = amin;
  double bmin = dot(cb[0], n), bmax = bmin;
  for (int i = 1; i < 4; ++i) {
    amin = std::min(amin, dot(ca[i], n));
    amax = std::max(amax, dot(ca[i], n));
    bmin = std::min(bmin, dot(cb[i], n));
    bmax = std::max(bmax, dot(cb[i], n));
  }
  return amax <= bmin || bmax <= amin;
}

}  // namespace

bool boxes_overlap(const OrientedBox& a, const OrientedBox& b) {
  const auto ca = corners(a);
  const auto cb = corners(b);
  const std::array<Vec2, 4> axes{a.axis, Vec2{-a.axis.y, a.axis.x}, b.axis,
                                 Vec2{-b.axis.y, b.axis.x}};
  for (const Vec2& n : axes) {
    if (separated_on(n, ca, cb)) return false;
  }
  return true;
}

}  // namespace ffr
