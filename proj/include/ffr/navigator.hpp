#pragma once

#include <string>
#include <vector>

#include "ffr/geometry.hpp"
#include "ffr/sensors.hpp"

namespace ffr {

enum class Side { Left, Right };
inline Side opposite(Side s) { return s == Side::Left ? Side::Right : Side::Left; }
const char* to_string(Side s);

enum class Task { ToRoom, InRoom, DestroyFlame, ReturnHome, Done };

// Sub-state of the active task. Cruise phases (Forward, WallFollow) are re-derived every tick
// from the wall case; the rest are latched until their exit condition.
enum class Phase {
  Forward,
  WallFollow,
  Approach,     // driving to the middle of a side opening before turning into it
  Turning,
  LineOverrun,  // past a doorway line, before the room task takes over
  Entering,
  Scanning,
  ExitTurn,
  ExitDrive,
  ExitClear,
  Aligning,
  Homing,
  Blowing,
  RetraceTurn,
  RetraceDrive,
  Follow,
  Overrun,
  Stopped,
};

const char* to_string(Task t);
const char* to_string(Phase p);

enum class WallCaseKind {
  Forward = 1,
  TurnLeft90 = 2,
  TurnRight90 = 3,
  TurnPreferred = 4,
  TurnAround180 = 5,
  WallFollow = 6,
};

struct WallCase {
  WallCaseKind kind = WallCaseKind::Forward;
  Side side = Side::Left;  // wall side for WallFollow, turn side for TurnPreferred
  bool operator==(const WallCase&) const = default;
};

struct Command {
  double E_a_r = 0.0;
  double E_a_l = 0.0;
  bool fan_on = false;
  bool operator==(const Command&) const = default;
};

struct NavigatorConfig {
  double supply_voltage = 6.0;
  double cruise_voltage = 2.0;
  double turn_voltage = 2.0;
  double turn_creep_voltage = 1.6;  // just above breakaway
  double turn_taper = 4.0;          // V per radian still to go
  double scan_voltage = 1.8;
  double homing_voltage = 1.9;

  double kp_angle = 7.7;     // V per metre of front/rear range difference
  double kp_dist = 5.4;      // V per metre of distance error
  double kp_heading = 1.8;   // V per radian, heading hold on odometry
  double homing_gain = 0.4;  // V per unit normalized left/right flame difference
  double max_steer = 0.4;    // |differential voltage| limit

  double wall_setpoint = 0.15;
  double blocked_threshold = 0.25;
  double front_standoff = 0.145;  // CF reading at which a corner turn starts
  double opening_travel = 0.295;  // travel after a side opening edge before turning into it
  double doorway_overrun = 0.10;
  double entry_travel = 0.20;
  double exit_clearance = 0.30;
  double home_overrun = 0.05;
  double arrive_tolerance = 0.005;

  std::vector<int> tour{1, 2, 3, 4};
  Side door_side = Side::Right;  // side the rooms open to while travelling out

  double flame_threshold = 0.02;  // I_min
  double homing_stop_range = 0.25;
  double homing_stop_factor = 4.0;
  double stop_intensity = 0.25;
  double blow_duration = 4.0;
  double scan_angle = 6.283185307179586;

  // Filled from the vehicle and sensor sections; the controller reads encoders and voltages.
  double wheel_radius = 0.03;
  double track_width = 0.20;
  IrCalibration ir;
  Pose start;
};

std::vector<std::string> check_config(const NavigatorConfig& cfg);

struct NavState {
  Task task = Task::ToRoom;
  Phase phase = Phase::Forward;
  Task next_task = Task::ToRoom;  // continuation after Turning
  Phase next_phase = Phase::Forward;

  double travel = 0.0;
  double turn_target = 0.0;
  double turn_accum = 0.0;
  double heading_ref = 0.0;

  double scan_accum = 0.0;
  double best_heading = 0.0;
  double best_intensity = 0.0;
  double blow_elapsed = 0.0;

  int line_count = 0;
  int current_room = 0;  // 0 = hallway
  int rooms_visited = 0;
  int prev_line = 0;
  bool door_wall_seen = false;

  Pose odom;
  double enc_left = 0.0;
  double enc_right = 0.0;
  bool odom_ready = false;

  Vec2 scan_point;
  double entry_heading = 0.0;

  bool operator==(const NavState&) const = default;
};

NavState initial_state(const NavigatorConfig& cfg);

// Perceived range of one proximity sensor, read back through the calibration.
double perceived_range(const SensorFrame& frame, MountId id, const NavigatorConfig& cfg);

WallCase classify_wall_case(const SensorFrame& frame, const NavigatorConfig& cfg,
                            Side follow_side, Side turn_side);

// Proportional wall follower on two same-side corner sensors; empty when the wall is lost.
std::optional<Command> wall_follow_command(const SensorFrame& frame, Side side,
                                           const NavigatorConfig& cfg);

struct TurnOutput {
  Command command;
  bool done = false;
};

// Heading change from wheel encoder increments.
double odometry_heading_change(double d_left, double d_right, double wheel_radius,
                               double track_width);

// Spin in place toward `target` until `accumulated` reaches it.
TurnOutput turn_in_place(double accumulated, double target, const NavigatorConfig& cfg);

struct StepOutput {
  NavState state;
  Command command;
};

StepOutput step(const NavState& nav, const SensorFrame& frame, double dt,
                const NavigatorConfig& cfg);

}  // namespace ffr
