#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ffr/arena.hpp"
#include "ffr/navigator.hpp"
#include "ffr/sensors.hpp"
#include "ffr/vehicle.hpp"

namespace ffr {

struct SimConfig {
  double dt = 0.001;
  double t_max_find = 300.0;
  double t_max_return = 120.0;
  int record_every = 10;  // ticks between trajectory rows
  ArenaConfig arena;
  VehicleParams vehicle;
  MotorParams motor;
  SensorConfig sensors;
  NavigatorConfig navigator;
  int candle_room = 1;
  std::uint64_t seed = 7;
};

// Copies the values other modules share (footprint, wheel geometry, calibration, start pose).
void sync_derived(SimConfig& cfg);

// Every violated invariant across all sections; empty means the config can run.
std::vector<std::string> check_config(const SimConfig& cfg);

enum class Outcome { Success, CollisionFail, TimeoutFind, TimeoutReturn };
const char* to_string(Outcome o);

struct TrajectorySample {
  double t = 0.0;
  Pose pose;
  double u = 0.0;
  double r = 0.0;
  double omega_l = 0.0;
  double omega_r = 0.0;
  Task task = Task::ToRoom;
};

struct Event {
  double t = 0.0;
  std::string kind;
  std::string payload;
};

struct SimResult {
  Outcome outcome = Outcome::TimeoutFind;
  double time_to_flame = -1.0;  // negative until the flame is out
  double total_time = 0.0;
  std::vector<TrajectorySample> trajectory;
  std::vector<Event> events;
  int collisions = 0;
  double fan_on_time = 0.0;
  double max_abs_voltage = 0.0;
  Vec2 candle;
  long ticks = 0;
  std::vector<Task> task_sequence;  // distinct consecutive tasks

  double return_time() const { return time_to_flame >= 0.0 ? total_time - time_to_flame : -1.0; }
};

// Puts out the flame; throws when no lit candle is present.
Arena mark_extinguished(const Arena& arena);

// Runs one closed-loop simulation to completion. Deterministic for a given config.
SimResult run(const SimConfig& cfg);

// Runs one simulation per (room, seed) pair on up to `workers` threads, results in input order.
struct RunKey {
  int room = 1;
  std::uint64_t seed = 0;
};
std::vector<SimResult> run_batch(const SimConfig& base, const std::vector<RunKey>& keys,
                                 unsigned workers);

}  // namespace ffr
