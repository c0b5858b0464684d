#include "ffr/vehicle.hpp"

#include <cmath>

namespace ffr {

namespace {

constexpr double kStictionBand = 1e-6;  // rad/s

struct SideState {
  double omega;
  double i_a;
};

struct SideRates {
  double d_omega;
  double d_i;
};

class SideModel {
 public:
  SideModel(const VehicleParams& p, const MotorParams& mp)
      : mp_(mp),
        j_eff_(effective_inertia(p, mp)),
        breakaway_(p.mu * drive_normal_force(p) * p.wheel_radius) {}

  double algebraic_current(double E, double omega) const { return (E - mp_.K_b * omega) / mp_.R_a; }

  double current(const SideState& s, double E) const {
    return mp_.L_a > 0.0 ? s.i_a : algebraic_current(E, s.omega);
  }

  // friction_sign: +1/-1 is kinetic friction opposing that direction, 0 holds the wheel.
  // The sign is frozen for a whole step so the stages see one smooth ODE.
  SideRates rates(const SideState& s, double E, int friction_sign) const {
    const double i = current(s, E);
    const double driving = motor_torque(i, mp_) - mp_.B_m * s.omega;
    const double d_omega = friction_sign == 0 ? 0.0 : (driving - friction_sign * breakaway_) / j_eff_;
    const double d_i = mp_.L_a > 0.0 ? (E - mp_.R_a * s.i_a - mp_.K_b * s.omega) / mp_.L_a : 0.0;
    return {d_omega, d_i};
  }

  SideState step(const SideState& s, double E, double dt) const {
    int sign = 0;
    if (std::abs(s.omega) > kStictionBand) {
      sign = s.omega > 0.0 ? 1 : -1;
    } else {
      const double at_rest = motor_torque(current({0.0, s.i_a}, E), mp_);
      if (std::abs(at_rest) > breakaway_) sign = at_rest > 0.0 ? 1 : -1;
    }
    const SideState s0{sign == 0 ? 0.0 : s.omega, s.i_a};

    auto add = [](const SideState& a, const SideRates& k, double h) {
      return SideState{a.omega + h * k.d_omega, a.i_a + h * k.d_i};
    };
    const SideRates k1 = rates(s0, E, sign);
    const SideRates k2 = rates(add(s0, k1, 0.5 * dt), E, sign);
    const SideRates k3 = rates(add(s0, k2, 0.5 * dt), E, sign);
    const SideRates k4 = rates(add(s0, k3, dt), E, sign);
    SideState out{
        s0.omega + dt / 6.0 * (k1.d_omega + 2.0 * k2.d_omega + 2.0 * k3.d_omega + k4.d_omega),
        s0.i_a + dt / 6.0 * (k1.d_i + 2.0 * k2.d_i + 2.0 * k3.d_i + k4.d_i)};

    // friction stops the wheel, it never reverses it
    if (breakaway_ > 0.0 && sign != 0 && out.omega * sign < 0.0) out.omega = 0.0;
    if (mp_.L_a <= 0.0) out.i_a = algebraic_current(E, out.omega);
    return out;
  }

 private:
  MotorParams mp_;
  double j_eff_;
  double breakaway_;
};

bool finite(double v) { return std::isfinite(v); }

}  // namespace

std::vector<std::string> check_params(const VehicleParams& p) {
  std::vector<std::string> v;
  auto positive = [&](double x, const char* name) {
    if (!(x > 0.0)) v.push_back(std::string("vehicle.") + name + " must be positive");
  };
  positive(p.wheel_radius, "wheel_radius");
  positive(p.track_width, "track_width");
  positive(p.mass, "mass");
  positive(p.gravity, "gravity");
  positive(p.k, "k");
  positive(p.L_r, "L_r");
  positive(p.L_2, "L_2");
  positive(p.wheel_inertia, "wheel_inertia");
  positive(p.footprint.x, "footprint_half_length");
  positive(p.footprint.y, "footprint_half_width");
  if (!(p.mu >= 0.0)) v.push_back("vehicle.mu must be non-negative");
  return v;
}

std::vector<std::string> check_params(const MotorParams& mp) {
  std::vector<std::string> v;
  auto positive = [&](double x, const char* name) {
    if (!(x > 0.0)) v.push_back(std::string("motor.") + name + " must be positive");
  };
  positive(mp.K_i, "K_i");
  positive(mp.K_b, "K_b");
  positive(mp.R_a, "R_a");
  positive(mp.J_m, "J_m");
  positive(mp.B_m, "B_m");
  if (!(mp.L_a >= 0.0)) v.push_back("motor.L_a must be non-negative");
  return v;
}

BodyVelocity body_velocity(const DriveState& d, const VehicleParams& p) {
  return {(d.omega_r + d.omega_l) * p.wheel_radius / 2.0, 0.0,
          (d.omega_r - d.omega_l) * p.wheel_radius / p.track_width};
}

WorldRates world_rates(const Pose& pose, const DriveState& d, const VehicleParams& p) {
  const BodyVelocity b = body_velocity(d, p);
  return {b.u * std::cos(pose.theta), b.u * std::sin(pose.theta), b.r};
}

double drive_normal_force(const VehicleParams& p) {
  return p.k / (2.0 * (p.L_r + p.k)) * p.mass * p.gravity;
}

double friction_torque_load(const VehicleParams& p, double alpha) {
  const double friction = p.mu * drive_normal_force(p);
  const double wheel_set = p.wheel_inertia * alpha * (2.0 + p.L_2 / p.wheel_radius);
  return wheel_set + friction * p.wheel_radius;
}

double motor_torque(double i_a, const MotorParams& mp) { return mp.K_i * i_a; }

double effective_inertia(const VehicleParams& p, const MotorParams& mp) {
  return mp.J_m + p.wheel_inertia * (2.0 + p.L_2 / p.wheel_radius);
}

DriveState step_drive(const DriveState& d, double E_a_r, double E_a_l, const VehicleParams& p,
                      const MotorParams& mp, double dt) {
  if (!(dt > 0.0)) throw SimError("step_drive needs dt > 0");
  if (!finite(d.omega_r) || !finite(d.omega_l) || !finite(d.i_a_r) || !finite(d.i_a_l) ||
      !finite(E_a_r) || !finite(E_a_l) || !finite(dt)) {
    throw SimError("step_drive received a non-finite input");
  }
  const SideModel side(p, mp);
  const SideState r = side.step({d.omega_r, d.i_a_r}, E_a_r, dt);
  const SideState l = side.step({d.omega_l, d.i_a_l}, E_a_l, dt);
  return {r.omega, l.omega, r.i_a, l.i_a};
}

Pose integrate_arc(const Pose& pose, double u, double r, double dt) {
  Pose out = pose;
  const double dtheta = r * dt;
  if (std::abs(dtheta) < 1e-12) {
    out.x += u * dt * std::cos(pose.theta);
    out.y += u * dt * std::sin(pose.theta);
  } else {
    const double radius = u / r;
    const double th1 = pose.theta + dtheta;
    out.x += radius * (std::sin(th1) - std::sin(pose.theta));
    out.y -= radius * (std::cos(th1) - std::cos(pose.theta));
  }
  out.theta = wrap_angle(pose.theta + dtheta);
  return out;
}

Pose advance_pose(const Pose& pose, const DriveState& d, const VehicleParams& p, double dt) {
  if (!(dt > 0.0)) throw SimError("advance_pose needs dt > 0");
  const BodyVelocity b = body_velocity(d, p);
  return integrate_arc(pose, b.u, b.r, dt);
}

}  // namespace ffr
