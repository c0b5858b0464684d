#include <sstream>

#include "doctest.h"
#include "ffr/config.hpp"
#include "ffr/report.hpp"
#include "ffr/simcore.hpp"

using namespace ffr;

namespace {

std::string serialize(const SimResult& r) {
  std::ostringstream os;
  write_trajectory_csv(os, r);
  write_events_jsonl(os, r);
  return os.str();
}

// ToRoom -> InRoom -> (ToRoom -> InRoom)* -> DestroyFlame -> ReturnHome -> Done
bool valid_task_order(const std::vector<Task>& seq) {
  std::size_t i = 0;
  if (seq.size() < 5 || seq[i++] != Task::ToRoom || seq[i++] != Task::InRoom) return false;
  while (i + 1 < seq.size() && seq[i] == Task::ToRoom && seq[i + 1] == Task::InRoom) i += 2;
  return seq.size() - i == 3 && seq[i] == Task::DestroyFlame && seq[i + 1] == Task::ReturnHome &&
         seq[i + 2] == Task::Done;
}

}  // namespace

TEST_CASE("default run, room 1, seed 7") {
  SimConfig cfg = default_sim_config();
  cfg.candle_room = 1;
  cfg.seed = 7;
  const SimResult r = run(cfg);
  CHECK(r.outcome == Outcome::Success);
  CHECK(r.collisions == 0);
  CHECK(r.time_to_flame > 0.0);
  CHECK(r.time_to_flame < r.total_time);
  CHECK(r.fan_on_time == doctest::Approx(4.0).epsilon(1e-9));
  CHECK(r.max_abs_voltage <= cfg.navigator.supply_voltage);
  CHECK(valid_task_order(r.task_sequence));

  int extinguished = 0;
  double prev_t = -1.0;
  for (const auto& e : r.events) {
    CHECK(e.t >= prev_t);
    prev_t = e.t;
    if (e.kind == "extinguished") {
      ++extinguished;
      CHECK(e.t == r.time_to_flame);
    }
    CHECK(e.kind != "collision");
  }
  CHECK(extinguished == 1);
  CHECK(r.events.back().kind == "outcome");
  CHECK(r.events.back().payload == "Success");

  // strictly increasing samples, none in contact with a wall
  SimConfig synced = cfg;
  sync_derived(synced);
  const Arena arena = build_standard_arena(synced.arena);
  for (std::size_t i = 1; i < r.trajectory.size(); ++i) {
    CHECK(r.trajectory[i].t > r.trajectory[i - 1].t);
    CHECK_FALSE(arena.footprint_collides(r.trajectory[i].pose, cfg.vehicle.footprint));
  }
  CHECK(r.trajectory.back().t == r.total_time);
}

TEST_CASE("runs are deterministic") {
  SimConfig cfg = default_sim_config();
  cfg.candle_room = 2;
  cfg.seed = 3;
  CHECK(serialize(run(cfg)) == serialize(run(cfg)));
}

TEST_CASE("run_batch matches sequential runs in input order") {
  const SimConfig cfg = default_sim_config();
  const std::vector<RunKey> keys{{3, 1}, {1, 2}, {2, 5}};
  const auto batch = run_batch(cfg, keys, 3);
  REQUIRE(batch.size() == keys.size());
  for (std::size_t i = 0; i < keys.size(); ++i) {
    SimConfig c = cfg;
    c.candle_room = keys[i].room;
    c.seed = keys[i].seed;
    CHECK(serialize(batch[i]) == serialize(run(c)));
  }
}

TEST_CASE("invalid configs are rejected before stepping") {
  SimConfig cfg = default_sim_config();
  cfg.dt = 0.0;
  CHECK_THROWS_AS(run(cfg), SimError);
  cfg = default_sim_config();
  cfg.candle_room = 5;
  CHECK_THROWS_AS(run(cfg), SimError);
  cfg = default_sim_config();
  cfg.t_max_find = -1;
  CHECK_FALSE(check_config(cfg).empty());
  CHECK(check_config(default_sim_config()).empty());
}

TEST_CASE("timeouts") {
  SimConfig cfg = default_sim_config();
  cfg.candle_room = 4;
  cfg.t_max_find = 5.0;
  SimResult r = run(cfg);
  CHECK(r.outcome == Outcome::TimeoutFind);
  CHECK(r.time_to_flame < 0.0);
  CHECK(r.total_time == doctest::Approx(5.001));

  cfg = default_sim_config();
  cfg.candle_room = 1;
  cfg.t_max_return = 1.0;
  r = run(cfg);
  CHECK(r.outcome == Outcome::TimeoutReturn);
  CHECK(r.time_to_flame > 0.0);
  CHECK(r.return_time() > 1.0);
}

TEST_CASE("wall contact ends the run") {
  SimConfig cfg = default_sim_config();
  // home pushed against the west wall and the robot set down diagonally
  cfg.arena.home.center.x = 0.11;
  cfg.arena.home_heading = std::numbers::pi / 4;
  const SimResult r = run(cfg);
  CHECK(r.outcome == Outcome::CollisionFail);
  CHECK(r.collisions == 1);
  CHECK(r.events[r.events.size() - 2].kind == "collision");
}

TEST_CASE("mark_extinguished") {
  const SimConfig cfg = default_sim_config();
  const Arena bare = build_standard_arena(cfg.arena);
  CHECK_THROWS_AS(mark_extinguished(bare), SimError);
  const Arena lit = place_candle(bare, 3, 1);
  const Arena out = mark_extinguished(lit);
  CHECK_FALSE(out.candle_lit());
  CHECK_THROWS_AS(mark_extinguished(out), SimError);
  const Vec2 f = lit.candle()->flame;
  for (double a = 0; a < 6.28; a += 0.1) {
    const Pose p{f.x - 0.3 * std::cos(a), f.y - 0.3 * std::sin(a), a};
    CHECK(flame_intensity(p, 0.0, lit, cfg.sensors.flame) > 0.0);
    CHECK(flame_intensity(p, 0.0, out, cfg.sensors.flame) == 0.0);
  }
}

TEST_CASE("unpowered plant comes to rest") {
  const SimConfig cfg = default_sim_config();
  DriveState d{25, -12, 0, 0};
  double prev = 1e9;
  for (int i = 0; i < 2000; ++i) {
    d = step_drive(d, 0, 0, cfg.vehicle, cfg.motor, cfg.dt);
    const double energy = d.omega_r * d.omega_r + d.omega_l * d.omega_l;
    CHECK(energy <= prev);
    prev = energy;
  }
  CHECK(prev == 0.0);
}
