#include "ffr/navigator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ffr/vehicle.hpp"

namespace ffr {

const char* to_string(Side s) { return s == Side::Left ? "left" : "right"; }

const char* to_string(Task t) {
  switch (t) {
    case Task::ToRoom: return "ToRoom";
    case Task::InRoom: return "InRoom";
    case Task::DestroyFlame: return "DestroyFlame";
    case Task::ReturnHome: return "ReturnHome";
    case Task::Done: return "Done";
  }
  return "?";
}

const char* to_string(Phase p) {
  switch (p) {
    case Phase::Forward: return "Forward";
    case Phase::WallFollow: return "WallFollow";
    case Phase::Approach: return "Approach";
    case Phase::Turning: return "Turning";
    case Phase::LineOverrun: return "LineOverrun";
    case Phase::Entering: return "Entering";
    case Phase::Scanning: return "Scanning";
    case Phase::ExitTurn: return "ExitTurn";
    case Phase::ExitDrive: return "ExitDrive";
    case Phase::ExitClear: return "ExitClear";
    case Phase::Aligning: return "Aligning";
    case Phase::Homing: return "Homing";
    case Phase::Blowing: return "Blowing";
    case Phase::RetraceTurn: return "RetraceTurn";
    case Phase::RetraceDrive: return "RetraceDrive";
    case Phase::Follow: return "Follow";
    case Phase::Overrun: return "Overrun";
    case Phase::Stopped: return "Stopped";
  }
  return "?";
}

std::vector<std::string> check_config(const NavigatorConfig& c) {
  std::vector<std::string> v;
  auto positive = [&](double x, const char* name) {
    if (!(x > 0.0)) v.push_back(std::string("navigator.") + name + " must be positive");
  };
  positive(c.supply_voltage, "supply_voltage");
  positive(c.cruise_voltage, "cruise_voltage");
  positive(c.turn_voltage, "turn_voltage");
  positive(c.scan_voltage, "scan_voltage");
  positive(c.turn_creep_voltage, "turn_creep_voltage");
  if (c.turn_taper < 0.0) v.push_back("navigator.turn_taper must not be negative");
  if (c.turn_creep_voltage > c.turn_voltage) {
    v.push_back("navigator.turn_creep_voltage must not exceed turn_voltage");
  }
  positive(c.homing_voltage, "homing_voltage");
  positive(c.wall_setpoint, "wall_setpoint");
  positive(c.blocked_threshold, "blocked_threshold");
  positive(c.front_standoff, "front_standoff");
  positive(c.opening_travel, "opening_travel");
  positive(c.doorway_overrun, "doorway_overrun");
  positive(c.entry_travel, "entry_travel");
  positive(c.exit_clearance, "exit_clearance");
  positive(c.home_overrun, "home_overrun");
  positive(c.arrive_tolerance, "arrive_tolerance");
  positive(c.flame_threshold, "flame_threshold");
  positive(c.blow_duration, "blow_duration");
  positive(c.scan_angle, "scan_angle");
  positive(c.max_steer, "max_steer");
  for (double volts : {c.cruise_voltage, c.turn_voltage, c.scan_voltage, c.homing_voltage}) {
    if (volts + c.max_steer > c.supply_voltage) {
      v.push_back("navigator voltages plus max_steer must stay within supply_voltage");
      break;
    }
  }
  if (c.front_standoff > c.blocked_threshold) {
    v.push_back("navigator.front_standoff must not exceed blocked_threshold");
  }
  if (c.tour.empty()) v.push_back("navigator.tour must name at least one room");
  for (int r : c.tour) {
    if (r < 1 || r > 4) v.push_back("navigator.tour entries must be room ids 1..4");
  }
  return v;
}

NavState initial_state(const NavigatorConfig& cfg) {
  NavState s;
  s.odom = cfg.start;
  s.heading_ref = snap_right_angle(cfg.start.theta);
  return s;
}

double perceived_range(const SensorFrame& frame, MountId id, const NavigatorConfig& cfg) {
  return ir_distance(frame.at(id).voltage, cfg.ir);
}

WallCase classify_wall_case(const SensorFrame& frame, const NavigatorConfig& cfg,
                            Side follow_side, Side turn_side) {
  const double th = cfg.blocked_threshold;
  auto blocked = [&](MountId id) { return perceived_range(frame, id, cfg) <= th; };
  const bool front = blocked(MountId::CF);
  const bool left = blocked(MountId::FL) || blocked(MountId::RL);
  const bool right = blocked(MountId::FR) || blocked(MountId::RR);

  if (!front) {
    if (left && right) return {WallCaseKind::WallFollow, follow_side};
    if (left) return {WallCaseKind::WallFollow, Side::Left};
    if (right) return {WallCaseKind::WallFollow, Side::Right};
    return {WallCaseKind::Forward, follow_side};
  }
  if (left && right) return {WallCaseKind::TurnAround180, turn_side};
  if (right) return {WallCaseKind::TurnLeft90, Side::Left};
  if (left) return {WallCaseKind::TurnRight90, Side::Right};
  return {WallCaseKind::TurnPreferred, turn_side};
}

namespace {

Command differential(double cruise, double delta, const NavigatorConfig& cfg) {
  delta = std::clamp(delta, -cfg.max_steer, cfg.max_steer);
  const double lim = cfg.supply_voltage;
  return {std::clamp(cruise + delta, -lim, lim), std::clamp(cruise - delta, -lim, lim), false};
}

Command hold_heading(const NavState& s, double voltage, const NavigatorConfig& cfg) {
  return differential(voltage, cfg.kp_heading * wrap_angle(s.heading_ref - s.odom.theta), cfg);
}

// Perpendicular distance moved along the current heading this tick.
struct OdomDelta {
  double ds = 0.0;
  double dtheta = 0.0;
};

OdomDelta update_odometry(NavState& s, const SensorFrame& f, const NavigatorConfig& cfg) {
  if (!s.odom_ready) {
    s.enc_left = f.encoder_left;
    s.enc_right = f.encoder_right;
    s.odom_ready = true;
    return {};
  }
  const double dl = f.encoder_left - s.enc_left;
  const double dr = f.encoder_right - s.enc_right;
  s.enc_left = f.encoder_left;
  s.enc_right = f.encoder_right;
  OdomDelta d;
  d.ds = (dr + dl) * cfg.wheel_radius / 2.0;
  d.dtheta = odometry_heading_change(dl, dr, cfg.wheel_radius, cfg.track_width);
  s.odom = integrate_arc(s.odom, d.ds, d.dtheta, 1.0);
  return d;
}

void begin_turn(NavState& s, double target, Task next_task, Phase next_phase) {
  s.phase = Phase::Turning;
  s.turn_target = target;
  s.turn_accum = 0.0;
  s.next_task = next_task;
  s.next_phase = next_phase;
}

double side_sign(Side s) { return s == Side::Left ? 1.0 : -1.0; }

// Relative turn that lands on the right-angle heading one quarter turn toward `side`.
double quarter_turn(const NavState& s, Side side) {
  const double target = snap_right_angle(s.odom.theta + side_sign(side) * std::numbers::pi / 2.0);
  return wrap_angle(target - s.odom.theta);
}

double about_turn(const NavState& s, Side side) {
  const double target = snap_right_angle(s.odom.theta + std::numbers::pi);
  const double rel = wrap_angle(target - s.odom.theta);
  // wrap_angle maps a half turn to +pi; pick the direction toward `side`.
  return std::abs(std::abs(rel) - std::numbers::pi) < 0.5 ? side_sign(side) * std::abs(rel) : rel;
}

// Corridor travel shared by ToRoom and ReturnHome: wall case, follow or turn at the standoff.
Command corridor(NavState& s, const SensorFrame& f, const NavigatorConfig& cfg, Side follow_side,
                 Side turn_side, Task task) {
  const WallCase wc = classify_wall_case(f, cfg, follow_side, turn_side);
  const double cf = perceived_range(f, MountId::CF, cfg);
  const Phase cruise = task == Task::ReturnHome ? Phase::Follow : Phase::Forward;

  auto follow = [&](Side preferred) -> Command {
    if (auto c = wall_follow_command(f, preferred, cfg)) {
      if (task != Task::ReturnHome) s.phase = Phase::WallFollow;
      s.heading_ref = snap_right_angle(s.odom.theta);
      return *c;
    }
    if (auto c = wall_follow_command(f, opposite(preferred), cfg)) {
      if (task != Task::ReturnHome) s.phase = Phase::WallFollow;
      s.heading_ref = snap_right_angle(s.odom.theta);
      return *c;
    }
    s.phase = cruise;
    return hold_heading(s, cfg.cruise_voltage, cfg);
  };

  switch (wc.kind) {
    case WallCaseKind::Forward:
      s.phase = cruise;
      return hold_heading(s, cfg.cruise_voltage, cfg);
    case WallCaseKind::WallFollow:
      return follow(wc.side);
    default:
      break;
  }
  if (cf > cfg.front_standoff) return follow(follow_side);

  double target = 0.0;
  switch (wc.kind) {
    case WallCaseKind::TurnLeft90: target = quarter_turn(s, Side::Left); break;
    case WallCaseKind::TurnRight90: target = quarter_turn(s, Side::Right); break;
    case WallCaseKind::TurnPreferred: target = quarter_turn(s, wc.side); break;
    default: target = about_turn(s, wc.side); break;
  }
  s.door_wall_seen = false;
  begin_turn(s, target, task, cruise);
  return {};
}

void begin_exit(NavState& s) {
  s.heading_ref = snap_right_angle(s.entry_heading + std::numbers::pi);
  begin_turn(s, wrap_angle(s.heading_ref - s.odom.theta), s.task, Phase::ExitDrive);
  s.phase = Phase::ExitTurn;
}

}  // namespace

std::optional<Command> wall_follow_command(const SensorFrame& frame, Side side,
                                           const NavigatorConfig& cfg) {
  const MountId front = side == Side::Left ? MountId::FL : MountId::FR;
  const MountId rear = side == Side::Left ? MountId::RL : MountId::RR;
  const double d_front = perceived_range(frame, front, cfg);
  const double d_rear = perceived_range(frame, rear, cfg);
  if (d_front > cfg.blocked_threshold || d_rear > cfg.blocked_threshold) return std::nullopt;
  const double angle_err = d_front - d_rear;
  const double dist_err = 0.5 * (d_front + d_rear) - cfg.wall_setpoint;
  // Positive delta turns left; a left wall that is too far pulls the robot toward it.
  const double delta = side_sign(side) * (cfg.kp_angle * angle_err + cfg.kp_dist * dist_err);
  return differential(cfg.cruise_voltage, delta, cfg);
}

double odometry_heading_change(double d_left, double d_right, double wheel_radius,
                               double track_width) {
  return (d_right - d_left) * wheel_radius / track_width;
}

TurnOutput turn_in_place(double accumulated, double target, const NavigatorConfig& cfg) {
  const double remaining = std::abs(target) - std::abs(accumulated);
  if (target == 0.0 || remaining <= 0.0) return {{}, true};
  const double s = target > 0.0 ? 1.0 : -1.0;
  // slow to a creep near the target so the coast after cut-off stays small
  const double v = std::min(cfg.turn_voltage, cfg.turn_creep_voltage + cfg.turn_taper * remaining);
  return {{s * v, -s * v, false}, false};
}

StepOutput step(const NavState& nav, const SensorFrame& f, double dt, const NavigatorConfig& cfg) {
  if (!(dt > 0.0)) throw SimError("navigator step needs dt > 0");
  NavState s = nav;
  const OdomDelta d = update_odometry(s, f, cfg);
  const bool rising = f.line == 1 && s.prev_line == 0;
  s.prev_line = f.line;
  if (rising) ++s.line_count;
  const bool doorway_edge = rising && f.line_marker && f.line_marker->kind == MarkerKind::Doorway;
  const bool home_edge = rising && f.line_marker && f.line_marker->kind == MarkerKind::Home;
  const bool candle_mark = f.line_marker && f.line_marker->kind == MarkerKind::Candle;

  const Side out_follow = opposite(cfg.door_side);
  Command cmd;

  switch (s.phase) {
    case Phase::Turning:
    case Phase::ExitTurn:
    case Phase::Aligning:
    case Phase::RetraceTurn: {
      s.turn_accum += d.dtheta;
      const TurnOutput t = turn_in_place(s.turn_accum, s.turn_target, cfg);
      cmd = t.command;
      if (t.done) {
        if (s.phase == Phase::Turning) {
          s.task = s.next_task;
          s.phase = s.next_phase;
          s.heading_ref = snap_right_angle(s.odom.theta);
        } else if (s.phase == Phase::ExitTurn) {
          s.phase = Phase::ExitDrive;
        } else if (s.phase == Phase::Aligning) {
          s.phase = Phase::Homing;
        } else {
          s.phase = Phase::RetraceDrive;
        }
      }
      break;
    }

    case Phase::Forward:
    case Phase::WallFollow:
      if (doorway_edge) {
        const std::size_t k = static_cast<std::size_t>(s.rooms_visited);
        s.current_room = k < cfg.tour.size() ? cfg.tour[k] : f.line_marker->id;
        ++s.rooms_visited;
        s.phase = Phase::LineOverrun;
        s.travel = 0.0;
        s.heading_ref = snap_right_angle(s.odom.theta);
        cmd = hold_heading(s, cfg.cruise_voltage, cfg);
        break;
      }
      {
        const MountId probe = cfg.door_side == Side::Left ? MountId::FL : MountId::FR;
        if (perceived_range(f, probe, cfg) <= cfg.blocked_threshold) {
          s.door_wall_seen = true;
        } else if (s.door_wall_seen) {
          s.door_wall_seen = false;
          s.phase = Phase::Approach;
          s.travel = 0.0;
          s.heading_ref = snap_right_angle(s.odom.theta);
        }
      }
      if (s.phase == Phase::Approach) {
        cmd = wall_follow_command(f, out_follow, cfg).value_or(hold_heading(s, cfg.cruise_voltage, cfg));
      } else {
        cmd = corridor(s, f, cfg, out_follow, cfg.door_side, Task::ToRoom);
      }
      break;

    case Phase::Approach:
      s.travel += d.ds;
      if (s.travel >= cfg.opening_travel ||
          perceived_range(f, MountId::CF, cfg) <= cfg.front_standoff) {
        begin_turn(s, quarter_turn(s, cfg.door_side), Task::ToRoom, Phase::Forward);
        break;
      }
      cmd = wall_follow_command(f, out_follow, cfg).value_or(hold_heading(s, cfg.cruise_voltage, cfg));
      break;

    case Phase::LineOverrun:
      s.travel += d.ds;
      cmd = hold_heading(s, cfg.cruise_voltage, cfg);
      if (s.travel >= cfg.doorway_overrun) {
        s.task = Task::InRoom;
        s.phase = Phase::Entering;
        s.travel = 0.0;
        s.entry_heading = s.heading_ref;
      }
      break;

    case Phase::Entering:
      s.travel += d.ds;
      cmd = hold_heading(s, cfg.cruise_voltage, cfg);
      if (s.travel >= cfg.entry_travel) {
        s.phase = Phase::Scanning;
        s.scan_accum = 0.0;
        s.best_intensity = 0.0;
        s.best_heading = s.odom.theta;
        s.scan_point = s.odom.position();
        cmd = {};
      }
      break;

    case Phase::Scanning: {
      s.scan_accum += d.dtheta;
      const double intensity = 0.5 * (f.flame_left + f.flame_right);
      if (intensity > s.best_intensity) {
        s.best_intensity = intensity;
        s.best_heading = s.odom.theta;
      }
      if (s.scan_accum >= cfg.scan_angle) {
        if (s.best_intensity >= cfg.flame_threshold) {
          s.task = Task::DestroyFlame;
          begin_turn(s, wrap_angle(s.best_heading - s.odom.theta), Task::DestroyFlame, Phase::Homing);
          s.phase = Phase::Aligning;
        } else {
          begin_exit(s);
        }
        break;
      }
      cmd = {cfg.scan_voltage, -cfg.scan_voltage, false};
      break;
    }

    case Phase::ExitDrive:
      cmd = hold_heading(s, cfg.cruise_voltage, cfg);
      if (doorway_edge) {
        s.phase = Phase::ExitClear;
        s.travel = 0.0;
        s.current_room = 0;
      }
      break;

    case Phase::ExitClear:
      s.travel += d.ds;
      cmd = hold_heading(s, cfg.cruise_voltage, cfg);
      if (s.travel >= cfg.exit_clearance) {
        if (s.task == Task::ReturnHome) {
          begin_turn(s, quarter_turn(s, opposite(cfg.door_side)), Task::ReturnHome, Phase::Follow);
        } else {
          begin_turn(s, quarter_turn(s, cfg.door_side), Task::ToRoom, Phase::Forward);
        }
        s.door_wall_seen = false;
      }
      break;

    case Phase::Homing: {
      const double il = f.flame_left;
      const double ir = f.flame_right;
      const double axis = 0.5 * (il + ir);
      const double cf = perceived_range(f, MountId::CF, cfg);
      const bool close = (cf <= cfg.homing_stop_range &&
                          axis >= cfg.homing_stop_factor * cfg.flame_threshold) ||
                         candle_mark || axis >= cfg.stop_intensity;
      if (close) {
        s.phase = Phase::Blowing;
        s.blow_elapsed = 0.0;
        cmd = {};
        break;
      }
      if (il + ir > 0.0) {
        cmd = differential(cfg.homing_voltage, cfg.homing_gain * (il - ir) / (il + ir), cfg);
        s.heading_ref = s.odom.theta;
      } else {
        cmd = hold_heading(s, cfg.homing_voltage, cfg);
      }
      break;
    }

    case Phase::Blowing:
      cmd = {0.0, 0.0, true};
      s.blow_elapsed = std::min(s.blow_elapsed + dt, cfg.blow_duration);
      break;

    case Phase::RetraceDrive: {
      const Vec2 to_go = s.scan_point - s.odom.position();
      const double along = dot(to_go, unit_from_angle(s.odom.theta));
      if (to_go.norm() <= cfg.arrive_tolerance || along <= 0.0) {
        begin_exit(s);
        break;
      }
      s.heading_ref = std::atan2(to_go.y, to_go.x);
      cmd = hold_heading(s, cfg.cruise_voltage, cfg);
      break;
    }

    case Phase::Follow:
      if (home_edge) {
        s.phase = Phase::Overrun;
        s.travel = 0.0;
        s.heading_ref = snap_right_angle(s.odom.theta);
        cmd = hold_heading(s, cfg.cruise_voltage, cfg);
        break;
      }
      cmd = corridor(s, f, cfg, cfg.door_side, opposite(cfg.door_side), Task::ReturnHome);
      break;

    case Phase::Overrun:
      s.travel += d.ds;
      cmd = hold_heading(s, cfg.cruise_voltage, cfg);
      if (s.travel >= cfg.home_overrun) {
        s.task = Task::Done;
        s.phase = Phase::Stopped;
        cmd = {};
      }
      break;

    case Phase::Stopped:
      cmd = {};
      break;
  }

  // Blowing ends once the full duration has been emitted with the fan on.
  if (s.phase == Phase::Blowing && s.blow_elapsed >= cfg.blow_duration - 1e-9) {
    s.task = Task::ReturnHome;
    const Vec2 to_scan = s.scan_point - s.odom.position();
    if (to_scan.norm() <= cfg.arrive_tolerance) {
      begin_exit(s);
    } else {
      begin_turn(s, wrap_angle(std::atan2(to_scan.y, to_scan.x) - s.odom.theta), Task::ReturnHome,
                 Phase::RetraceDrive);
      s.phase = Phase::RetraceTurn;
    }
  }
  return {s, cmd};
}

}  // namespace ffr
