#include "doctest.h"
#include "ffr/config.hpp"
#include "ffr/navigator.hpp"
#include "ffr/vehicle.hpp"
#include "oracles.hpp"

using namespace ffr;
using doctest::Approx;

namespace {

const NavigatorConfig& nav_cfg() {
  static const NavigatorConfig c = default_sim_config().navigator;
  return c;
}

SensorFrame frame(double front, double left, double right) {
  const IrCalibration& cal = nav_cfg().ir;
  SensorFrame f;
  auto set = [&](MountId id, double d) {
    f.at(id) = {std::min(d, cal.max_range()), ir_voltage(d, cal), d < cal.max_range()};
  };
  set(MountId::CF, front);
  set(MountId::FL, left);
  set(MountId::RL, left);
  set(MountId::FR, right);
  set(MountId::RR, right);
  return f;
}

NavState ready_state() {
  NavState s = initial_state(nav_cfg());
  s.odom_ready = true;
  return s;
}

// Encoder angles that spin the robot by `dtheta` in place.
void spin_encoders(SensorFrame& f, const NavState& s, double dtheta) {
  const double wheel = dtheta * nav_cfg().track_width / (2 * nav_cfg().wheel_radius);
  f.encoder_left = s.enc_left - wheel;
  f.encoder_right = s.enc_right + wheel;
}

void drive_encoders(SensorFrame& f, const NavState& s, double ds) {
  f.encoder_left = s.enc_left + ds / nav_cfg().wheel_radius;
  f.encoder_right = s.enc_right + ds / nav_cfg().wheel_radius;
}

}  // namespace

TEST_CASE("classify_wall_case examples") {
  const auto& c = nav_cfg();
  CHECK(classify_wall_case(frame(1.0, 0.15, 1.0), c, Side::Left, Side::Right) ==
        WallCase{WallCaseKind::WallFollow, Side::Left});
  CHECK(classify_wall_case(frame(0.18, 0.15, 0.15), c, Side::Left, Side::Right).kind ==
        WallCaseKind::TurnAround180);
  CHECK(classify_wall_case(frame(0.18, 0.15, 0.60), c, Side::Left, Side::Right) ==
        WallCase{WallCaseKind::TurnRight90, Side::Right});
}

TEST_CASE("classify_wall_case full table") {
  const auto& c = nav_cfg();
  const double open = 0.7, near = 0.15;
  CHECK(classify_wall_case(frame(open, open, open), c, Side::Left, Side::Right).kind == WallCaseKind::Forward);
  CHECK(classify_wall_case(frame(near, open, near), c, Side::Left, Side::Right) ==
        WallCase{WallCaseKind::TurnLeft90, Side::Left});
  CHECK(classify_wall_case(frame(near, open, open), c, Side::Left, Side::Right) ==
        WallCase{WallCaseKind::TurnPreferred, Side::Right});
  CHECK(classify_wall_case(frame(near, open, open), c, Side::Left, Side::Left) ==
        WallCase{WallCaseKind::TurnPreferred, Side::Left});
  CHECK(classify_wall_case(frame(open, open, near), c, Side::Left, Side::Right) ==
        WallCase{WallCaseKind::WallFollow, Side::Right});
  // both side walls: follow the requested side
  CHECK(classify_wall_case(frame(open, near, near), c, Side::Right, Side::Left) ==
        WallCase{WallCaseKind::WallFollow, Side::Right});
}

TEST_CASE("wall_follow_command") {
  const auto& c = nav_cfg();
  auto cmd = wall_follow_command(frame(1.0, c.wall_setpoint, 1.0), Side::Left, c);
  REQUIRE(cmd.has_value());
  CHECK(cmd->E_a_r == Approx(c.cruise_voltage));
  CHECK(cmd->E_a_l == Approx(c.cruise_voltage));
  CHECK_FALSE(cmd->fan_on);

  // 5 cm too close to a left wall: turn right, so the left track runs faster
  cmd = wall_follow_command(frame(1.0, c.wall_setpoint - 0.05, 1.0), Side::Left, c);
  REQUIRE(cmd.has_value());
  CHECK(cmd->E_a_l > cmd->E_a_r);
  cmd = wall_follow_command(frame(1.0, 1.0, c.wall_setpoint - 0.05), Side::Right, c);
  REQUIRE(cmd.has_value());
  CHECK(cmd->E_a_r > cmd->E_a_l);

  // lost wall
  CHECK_FALSE(wall_follow_command(frame(1.0, 0.5, 1.0), Side::Left, c).has_value());
}

TEST_CASE("wall following from a skewed start converges within 1.5 m") {
  SimConfig cfg = default_sim_config();
  const double face = 0.013 / 2;
  const Arena wall({WallSegment{{-1, 0}, {6, 0}, 0.013}}, {}, {},
                   CircleMarker{{3, 3}, 0.15, MarkerKind::Home}, Bounds{7, 7});
  // COM offset of the side sensors from the centreline
  const double lateral = std::abs(cfg.sensors.layout.proximity[static_cast<int>(MountId::FR)].offset.y);
  const double target = face + cfg.navigator.wall_setpoint + lateral;
  for (double skew : {10.0, -10.0}) {
    for (double offset : {0.0, 0.03, -0.03}) {
      Pose pose{0, target + offset, skew * oracle::kPi / 180};
      DriveState d;
      std::mt19937_64 rng(1);
      double el = 0, er = 0, travelled = 0, last_bad = 0;
      while (travelled < 3.0) {
        const SensorFrame f = sense(pose, wall, cfg.sensors, 0, el, er, rng);
        const auto c = wall_follow_command(f, Side::Right, cfg.navigator);
        REQUIRE(c.has_value());
        d = step_drive(d, c->E_a_r, c->E_a_l, cfg.vehicle, cfg.motor, 1e-3);
        const Pose next = advance_pose(pose, d, cfg.vehicle, 1e-3);
        travelled += (next.position() - pose.position()).norm();
        pose = next;
        el += d.omega_l * 1e-3;
        er += d.omega_r * 1e-3;
        if (std::abs(pose.y - target) >= 0.01) last_bad = travelled;
      }
      CHECK(last_bad <= 1.5);
    }
  }
}

TEST_CASE("turn_in_place") {
  const auto& c = nav_cfg();
  const TurnOutput t0 = turn_in_place(0.3, 0.0, c);
  CHECK(t0.done);
  CHECK(t0.command == Command{});
  const TurnOutput t1 = turn_in_place(0.0, 1.0, c);
  CHECK_FALSE(t1.done);
  CHECK(t1.command.E_a_r > 0.0);
  CHECK(t1.command.E_a_l == -t1.command.E_a_r);
  CHECK(turn_in_place(0.0, -1.0, c).command.E_a_r < 0.0);
  CHECK(turn_in_place(1.0, 1.0, c).done);
}

TEST_CASE("odometry matches true heading exactly in the no-slip plant") {
  const SimConfig cfg = default_sim_config();
  oracle::Rng rng(31);
  DriveState d;
  Pose pose;
  double acc = 0.0;
  for (int i = 0; i < 5000; ++i) {
    if (i % 250 == 0) d = {rng.uniform(-20, 20), rng.uniform(-20, 20), 0, 0};
    d = step_drive(d, rng.uniform(-3, 3), rng.uniform(-3, 3), cfg.vehicle, cfg.motor, 1e-3);
    const Pose next = advance_pose(pose, d, cfg.vehicle, 1e-3);
    acc += odometry_heading_change(d.omega_l * 1e-3, d.omega_r * 1e-3, cfg.vehicle.wheel_radius,
                                   cfg.vehicle.track_width);
    pose = next;
  }
  CHECK(std::abs(wrap_angle(pose.theta - acc)) <= 1e-9);
}

TEST_CASE("closed-loop quarter turns land within 3 degrees") {
  const SimConfig cfg = default_sim_config();
  for (double target : {oracle::kPi / 2, -oracle::kPi / 2, oracle::kPi, 0.3}) {
    DriveState d;
    Pose pose;
    double acc = 0.0;
    bool done = false;
    for (int i = 0; i < 10000; ++i) {
      const TurnOutput t = turn_in_place(acc, target, cfg.navigator);
      done = done || t.done;
      const Command c = done ? Command{} : t.command;
      d = step_drive(d, c.E_a_r, c.E_a_l, cfg.vehicle, cfg.motor, 1e-3);
      pose = advance_pose(pose, d, cfg.vehicle, 1e-3);
      acc += odometry_heading_change(d.omega_l * 1e-3, d.omega_r * 1e-3, cfg.vehicle.wheel_radius,
                                     cfg.vehicle.track_width);
    }
    REQUIRE(done);
    CHECK(d.omega_r == 0.0);
    CHECK(std::abs(wrap_angle(pose.theta - target)) <= 3.0 * oracle::kPi / 180);
  }
}

TEST_CASE("scan finding a flame switches to DestroyFlame") {
  const auto& c = nav_cfg();
  NavState s = ready_state();
  s.task = Task::InRoom;
  s.phase = Phase::Scanning;
  s.scan_accum = c.scan_angle - 0.01;
  SensorFrame f = frame(1.0, 1.0, 1.0);
  f.flame_left = f.flame_right = 0.5;
  spin_encoders(f, s, 0.02);
  const StepOutput out = step(s, f, 1e-3, c);
  CHECK(out.state.task == Task::DestroyFlame);
  CHECK(out.state.best_intensity == 0.5);

  // no flame: leave the room instead
  f.flame_left = f.flame_right = 0.0;
  const StepOutput dark = step(s, f, 1e-3, c);
  CHECK(dark.state.task == Task::InRoom);
  CHECK(dark.state.phase == Phase::ExitTurn);
}

TEST_CASE("blowing ends after the full duration") {
  const auto& c = nav_cfg();
  NavState s = ready_state();
  s.task = Task::DestroyFlame;
  s.phase = Phase::Blowing;
  s.scan_point = s.odom.position() + Vec2{0.3, 0.0};
  const SensorFrame f = frame(0.2, 1.0, 1.0);
  int fan_ticks = 0;
  while (s.task == Task::DestroyFlame) {
    const StepOutput out = step(s, f, 1e-3, c);
    CHECK(out.command.E_a_r == 0.0);
    CHECK(out.command.E_a_l == 0.0);
    CHECK(out.state.blow_elapsed <= c.blow_duration);
    if (out.command.fan_on) ++fan_ticks;
    s = out.state;
    REQUIRE(fan_ticks <= 5000);
  }
  CHECK(fan_ticks == 4000);
  CHECK(s.task == Task::ReturnHome);
}

TEST_CASE("home overrun then stop") {
  const auto& c = nav_cfg();
  NavState s = ready_state();
  s.task = Task::ReturnHome;
  s.phase = Phase::Follow;
  SensorFrame f = frame(1.0, 1.0, 0.15);
  f.line = 1;
  f.line_marker = MarkerId{MarkerKind::Home, 0};
  StepOutput out = step(s, f, 1e-3, c);
  CHECK(out.state.phase == Phase::Overrun);
  CHECK(out.state.line_count == 1);
  s = out.state;
  f.line = 0;
  f.line_marker.reset();
  drive_encoders(f, s, 0.03);
  out = step(s, f, 1e-3, c);
  CHECK(out.state.task == Task::ReturnHome);
  s = out.state;
  drive_encoders(f, s, 0.03);
  out = step(s, f, 1e-3, c);
  CHECK(out.state.task == Task::Done);
  CHECK(out.command == Command{0, 0, false});
  out = step(out.state, f, 1e-3, c);
  CHECK(out.command == Command{});
}

TEST_CASE("doorway edge binds the room from the tour plan") {
  const auto& c = nav_cfg();
  NavState s = ready_state();
  SensorFrame f = frame(1.0, 0.15, 1.0);
  f.line = 1;
  f.line_marker = MarkerId{MarkerKind::Doorway, 3};  // the plan wins over the marker id
  const StepOutput out = step(s, f, 1e-3, c);
  CHECK(out.state.phase == Phase::LineOverrun);
  CHECK(out.state.current_room == c.tour.front());
  CHECK(out.state.line_count == 1);
  // holding the line does not count again
  const StepOutput again = step(out.state, f, 1e-3, c);
  CHECK(again.state.line_count == 1);
}

TEST_CASE("step rejects dt <= 0") {
  CHECK_THROWS_AS(step(ready_state(), frame(1, 1, 1), 0.0, nav_cfg()), SimError);
}

TEST_CASE("step fuzz: bounded voltages, fan only while blowing, monotone line count") {
  const auto& c = nav_cfg();
  oracle::Rng rng(99);
  for (int run = 0; run < 200; ++run) {
    NavState s = ready_state();
    s.task = static_cast<Task>(rng.integer(0, 3));
    s.phase = static_cast<Phase>(rng.integer(0, static_cast<int>(Phase::Stopped)));
    s.scan_point = {rng.uniform(0, 2), rng.uniform(0, 2)};
    for (int i = 0; i < 500; ++i) {
      SensorFrame f = frame(rng.uniform(0.05, 1.0), rng.uniform(0.05, 1.0), rng.uniform(0.05, 1.0));
      f.line = rng.integer(0, 1);
      if (f.line) f.line_marker = MarkerId{static_cast<MarkerKind>(rng.integer(0, 2)), rng.integer(0, 4)};
      f.flame_left = rng.uniform(0, 0.3);
      f.flame_right = rng.uniform(0, 0.3);
      f.encoder_left = s.enc_left + rng.uniform(-0.05, 0.05);
      f.encoder_right = s.enc_right + rng.uniform(-0.05, 0.05);
      const StepOutput a = step(s, f, 1e-3, c);
      const StepOutput b = step(s, f, 1e-3, c);
      CHECK(a.state == b.state);
      CHECK(a.command == b.command);
      CHECK(std::abs(a.command.E_a_r) <= c.supply_voltage);
      CHECK(std::abs(a.command.E_a_l) <= c.supply_voltage);
      if (a.command.fan_on) CHECK(s.phase == Phase::Blowing);
      CHECK(a.state.line_count >= s.line_count);
      CHECK(a.state.line_count - s.line_count == ((f.line == 1 && s.prev_line == 0) ? 1 : 0));
      s = a.state;
    }
  }
}
