// Independent reference implementations used to check the library. None of these call
// into the code they check; keep them dumb and obviously correct.
#pragma once

#include <cmath>
#include <optional>
#include <random>
#include <vector>

#include "ffr/arena.hpp"
#include "ffr/vehicle.hpp"

namespace oracle {

inline constexpr double kPi = 3.14159265358979323846;

struct Rng {
  explicit Rng(std::uint64_t seed) : gen(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen); }
  std::mt19937_64 gen;
};

// Wall as a solid rectangle: segment swept by a square of side t (ends extend by t/2).
inline bool inside_wall(double px, double py, const ffr::WallSegment& w) {
  const double dx = w.b.x - w.a.x;
  const double dy = w.b.y - w.a.y;
  const double len = std::sqrt(dx * dx + dy * dy);
  const double ux = dx / len;
  const double uy = dy / len;
  const double rx = px - w.a.x;
  const double ry = py - w.a.y;
  const double along = rx * ux + ry * uy;
  const double across = -rx * uy + ry * ux;
  const double h = w.thickness / 2.0;
  return along >= -h && along <= len + h && std::abs(across) <= h;
}

inline bool inside_any_wall(double px, double py, const std::vector<ffr::WallSegment>& walls) {
  for (const auto& w : walls) {
    if (inside_wall(px, py, w)) return true;
  }
  return false;
}

// First penetration found by stepping along the ray.
inline std::optional<double> march(const std::vector<ffr::WallSegment>& walls, double ox, double oy,
                                   double dx, double dy, double max_range, double step = 5e-4) {
  for (double s = 0.0; s <= max_range + 1e-12; s += step) {
    if (inside_any_wall(ox + s * dx, oy + s * dy, walls)) return s;
  }
  return std::nullopt;
}

// Robot rectangle against walls by sampling the rectangle densely (outline plus interior grid).
inline bool footprint_hits(const std::vector<ffr::WallSegment>& walls, double x, double y,
                           double theta, double hl, double hw, double step = 2.5e-4) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  auto test = [&](double bx, double by) {
    return inside_any_wall(x + c * bx - s * by, y + s * bx + c * by, walls);
  };
  for (double a = -hl; a <= hl + 1e-12; a += step) {
    if (test(a, hw) || test(a, -hw)) return true;
  }
  for (double b = -hw; b <= hw + 1e-12; b += step) {
    if (test(hl, b) || test(-hl, b)) return true;
  }
  for (double a = -hl; a <= hl; a += 0.01) {
    for (double b = -hw; b <= hw; b += 0.01) {
      if (test(a, b)) return true;
    }
  }
  return false;
}

inline double interp(const std::vector<std::pair<double, double>>& t, double x) {
  if (x <= t.front().first) return t.front().second;
  if (x >= t.back().first) return t.back().second;
  for (std::size_t i = 1; i < t.size(); ++i) {
    if (x <= t[i].first) {
      const double f = (x - t[i - 1].first) / (t[i].first - t[i - 1].first);
      return t[i - 1].second + f * (t[i].second - t[i - 1].second);
    }
  }
  return t.back().second;
}

// Linear motor with friction disabled: J w' = -(B + Ki Kb/Ra) w + Ki E/Ra.
struct LinearMotor {
  double J;
  double a;  // total damping
  double b;  // input gain, torque per volt

  static LinearMotor from(const ffr::VehicleParams& p, const ffr::MotorParams& m) {
    const double J = m.J_m + p.wheel_inertia * (2.0 + p.L_2 / p.wheel_radius);
    return {J, m.B_m + m.K_i * m.K_b / m.R_a, m.K_i / m.R_a};
  }
  double steady(double E) const { return b * E / a; }
  double tau() const { return J / a; }
  double exact(double w0, double E, double t) const {
    return steady(E) + (w0 - steady(E)) * std::exp(-t / tau());
  }
  // explicit Euler at a tiny step, the brute-force cross-check
  double euler(double w0, double E, double t, double h) const {
    double w = w0;
    const long n = std::lround(t / h);
    for (long i = 0; i < n; ++i) w += h * (b * E - a * w) / J;
    return w;
  }
};

// RK4 amplification per step on w' = -w/tau, x = h/tau.
inline double rk4_factor(double x) {
  return 1.0 - x + x * x / 2.0 - x * x * x / 6.0 + x * x * x * x / 24.0;
}

// Magnitude of the one-step RK4 error on w' = -(w - ws)/tau: truncated exponential series.
inline double rk4_local_error(double x, double dev) {
  return std::abs(std::exp(-x) - rk4_factor(x)) * std::abs(dev);
}

// One RK4 step of h against two of h/2 on the same linear equation. Exact up to rounding.
inline double rk4_halving_diff(double x, double dev) {
  const double half = rk4_factor(x / 2.0);
  return std::abs(rk4_factor(x) - half * half) * std::abs(dev);
}

}  // namespace oracle
