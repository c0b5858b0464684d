#include "ffr/simcore.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <sstream>
#include <thread>

namespace ffr {

const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::Success: return "Success";
    case Outcome::CollisionFail: return "CollisionFail";
    case Outcome::TimeoutFind: return "TimeoutFind";
    case Outcome::TimeoutReturn: return "TimeoutReturn";
  }
  return "?";
}

void sync_derived(SimConfig& cfg) {
  cfg.arena.robot_half_extents = cfg.vehicle.footprint;
  cfg.navigator.wheel_radius = cfg.vehicle.wheel_radius;
  cfg.navigator.track_width = cfg.vehicle.track_width;
  cfg.navigator.ir = cfg.sensors.ir;
  cfg.navigator.flame_threshold = cfg.sensors.flame.threshold;
  cfg.navigator.start = {cfg.arena.home.center.x, cfg.arena.home.center.y, cfg.arena.home_heading};
}

std::vector<std::string> check_config(const SimConfig& cfg) {
  std::vector<std::string> v;
  if (!(cfg.dt > 0.0)) v.push_back("sim.dt must be positive");
  if (!(cfg.t_max_find > 0.0)) v.push_back("sim.t_max_find must be positive");
  if (!(cfg.t_max_return > 0.0)) v.push_back("sim.t_max_return must be positive");
  if (cfg.record_every < 1) v.push_back("sim.record_every must be at least 1");
  if (cfg.candle_room < 1 || cfg.candle_room > 4) v.push_back("sim.candle_room must be in 1..4");
  auto append = [&](std::vector<std::string> more) { v.insert(v.end(), more.begin(), more.end()); };
  append(check_params(cfg.vehicle));
  append(check_params(cfg.motor));
  append(check_config(cfg.sensors));
  append(check_config(cfg.navigator));
  if (v.empty()) {
    ArenaConfig arena = cfg.arena;
    arena.robot_half_extents = cfg.vehicle.footprint;
    append(check_layout(arena));
  }
  return v;
}

Arena mark_extinguished(const Arena& arena) { return arena.extinguished(); }

namespace {

std::string fmt_point(Vec2 p) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(4);
  os << p.x << ' ' << p.y;
  return os.str();
}

}  // namespace

SimResult run(const SimConfig& input) {
  SimConfig cfg = input;
  sync_derived(cfg);
  if (const auto v = check_config(cfg); !v.empty()) {
    std::string msg = "invalid simulation config:";
    for (const auto& s : v) msg += "\n  " + s;
    throw SimError(msg);
  }

  Arena arena = place_candle(build_standard_arena(cfg.arena), cfg.candle_room, cfg.seed);
  SimResult res;
  res.candle = arena.candle()->flame;

  Pose pose = cfg.navigator.start;
  DriveState drive;
  double enc_l = 0.0, enc_r = 0.0;
  NavState nav = initial_state(cfg.navigator);
  std::mt19937_64 noise_rng(cfg.seed ^ 0x9e3779b97f4a7c15ULL);
  res.task_sequence.push_back(nav.task);
  res.events.push_back({0.0, "start", "room=" + std::to_string(cfg.candle_room) +
                                          " candle=" + fmt_point(res.candle)});

  auto sample = [&](double t) {
    const BodyVelocity b = body_velocity(drive, cfg.vehicle);
    res.trajectory.push_back({t, pose, b.u, b.r, drive.omega_l, drive.omega_r, nav.task});
  };
  sample(0.0);

  const double dt = cfg.dt;
  bool extinguished = false;
  for (long k = 0;; ++k) {
    const double t = static_cast<double>(k) * dt;
    const double t1 = static_cast<double>(k + 1) * dt;
    const SensorFrame frame = sense(pose, arena, cfg.sensors, t, enc_l, enc_r, noise_rng);
    const StepOutput out = step(nav, frame, dt, cfg.navigator);

    if (out.state.line_count > nav.line_count) {
      res.events.push_back({t, "line",
                            (frame.line_marker ? to_string(*frame.line_marker) : "none") +
                                " count=" + std::to_string(out.state.line_count)});
    }
    if (out.state.task != nav.task) {
      res.events.push_back({t1, "task", std::string(to_string(nav.task)) + "->" +
                                            to_string(out.state.task)});
      res.task_sequence.push_back(out.state.task);
    }
    if (out.state.phase != nav.phase) {
      res.events.push_back({t1, "phase", std::string(to_string(nav.phase)) + "->" +
                                             to_string(out.state.phase)});
    }
    if (out.state.current_room != nav.current_room && out.state.current_room != 0) {
      res.events.push_back({t1, "room", "room=" + std::to_string(out.state.current_room) +
                                            " visited=" + std::to_string(out.state.rooms_visited)});
    }
    if (out.command.fan_on) res.fan_on_time += dt;
    res.max_abs_voltage =
        std::max({res.max_abs_voltage, std::abs(out.command.E_a_r), std::abs(out.command.E_a_l)});
    if (nav.task == Task::DestroyFlame && out.state.task == Task::ReturnHome) {
      arena = mark_extinguished(arena);
      extinguished = true;
      res.time_to_flame = t1;
      res.events.push_back({t1, "extinguished", "candle=" + fmt_point(res.candle)});
    }
    nav = out.state;

    drive = step_drive(drive, out.command.E_a_r, out.command.E_a_l, cfg.vehicle, cfg.motor, dt);
    pose = advance_pose(pose, drive, cfg.vehicle, dt);
    enc_l += drive.omega_l * dt;
    enc_r += drive.omega_r * dt;
    res.ticks = k + 1;

    const bool collided = arena.footprint_collides(pose, cfg.vehicle.footprint);
    const bool done = nav.task == Task::Done;
    const bool find_timeout = !extinguished && t1 > cfg.t_max_find;
    const bool return_timeout = extinguished && t1 - res.time_to_flame > cfg.t_max_return;
    const bool last = collided || done || find_timeout || return_timeout;
    if ((k + 1) % cfg.record_every == 0 || last) sample(t1);
    if (!last) continue;

    res.total_time = t1;
    if (collided) {
      res.collisions = 1;
      res.outcome = Outcome::CollisionFail;
      res.events.push_back({t1, "collision", "pose=" + fmt_point(pose.position())});
    } else if (done) {
      res.outcome = Outcome::Success;
    } else if (find_timeout) {
      res.outcome = Outcome::TimeoutFind;
    } else {
      res.outcome = Outcome::TimeoutReturn;
    }
    res.events.push_back({t1, "outcome", to_string(res.outcome)});
    break;
  }
  return res;
}

std::vector<SimResult> run_batch(const SimConfig& base, const std::vector<RunKey>& keys,
                                 unsigned workers) {
  std::vector<SimResult> results(keys.size());
  std::vector<std::exception_ptr> errors(keys.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < keys.size(); i = next++) {
      try {
        SimConfig cfg = base;
        cfg.candle_room = keys[i].room;
        cfg.seed = keys[i].seed;
        results[i] = run(cfg);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(keys.size())));
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

}  // namespace ffr
