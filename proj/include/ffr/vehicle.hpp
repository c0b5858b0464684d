#pragma once

#include <string>
#include <vector>

#include "ffr/geometry.hpp"

namespace ffr {

// Physical parameters of the tracked chassis.
struct VehicleParams {
  double wheel_radius = 0.03;    // R_t, drive-wheel radius
  double track_width = 0.20;     // T_r, distance between drive wheels
  double mass = 2.0;
  double gravity = 9.81;
  double k = 0.05;               // lever arm of the drive-wheel normal force split
  double L_r = 0.15;
  double L_2 = 0.03;             // belt span term of the wheel-set inertia
  double mu = 0.5;               // effective friction coefficient
  double wheel_inertia = 1e-5;   // I_wheels
  Vec2 footprint{0.10, 0.10};    // half extents: longitudinal, lateral
};

struct MotorParams {
  double K_i = 0.05;  // torque constant, N m / A
  double K_b = 0.05;  // back-emf constant, V s / rad
  double R_a = 2.0;
  double L_a = 0.0;   // 0 selects the algebraic armature model
  double J_m = 1e-5;
  double B_m = 1e-4;
};

struct BodyVelocity {
  double u = 0.0;  // longitudinal
  double v = 0.0;  // lateral; nonholonomic so always 0
  double r = 0.0;  // yaw rate
};

struct DriveState {
  double omega_r = 0.0;
  double omega_l = 0.0;
  double i_a_r = 0.0;
  double i_a_l = 0.0;
};

struct WorldRates {
  double x_dot = 0.0;
  double y_dot = 0.0;
  double theta_dot = 0.0;
};

std::vector<std::string> check_params(const VehicleParams& p);
std::vector<std::string> check_params(const MotorParams& mp);

BodyVelocity body_velocity(const DriveState& d, const VehicleParams& p);
WorldRates world_rates(const Pose& pose, const DriveState& d, const VehicleParams& p);

// Normal force carried by one drive wheel.
double drive_normal_force(const VehicleParams& p);

// Torque one motor must overcome: wheel-set acceleration plus ground friction at the wheel rim.
double friction_torque_load(const VehicleParams& p, double alpha);

double motor_torque(double i_a, const MotorParams& mp);

// Inertia seen by one motor shaft: rotor plus the drive wheel, sprockets and belt.
double effective_inertia(const VehicleParams& p, const MotorParams& mp);

// Advances both motor/wheel sides by one fixed RK4 step.
DriveState step_drive(const DriveState& d, double E_a_r, double E_a_l, const VehicleParams& p,
                      const MotorParams& mp, double dt);

// Closed-form arc update of the pose for the wheel speeds held over dt.
Pose advance_pose(const Pose& pose, const DriveState& d, const VehicleParams& p, double dt);

// Same arc update from a body velocity; shared by the plant and wheel odometry.
Pose integrate_arc(const Pose& pose, double u, double r, double dt);

}  // namespace ffr
