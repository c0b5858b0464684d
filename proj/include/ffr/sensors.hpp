#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "ffr/arena.hpp"
#include "ffr/geometry.hpp"

namespace ffr {

enum class MountId { CF = 0, FL = 1, FR = 2, RL = 3, RR = 4 };
inline constexpr std::size_t kProximityCount = 5;
const char* to_string(MountId id);

struct SensorMount {
  Vec2 offset;           // body frame
  double bearing = 0.0;  // body frame
  MountId id = MountId::CF;
};

// Distance-to-voltage curve of the infrared ranger, piecewise linear between anchors.
struct IrCalibration {
  std::vector<std::pair<double, double>> table;  // (distance m, voltage V)

  double min_range() const { return table.front().first; }
  double max_range() const { return table.back().first; }
};

struct FlameModel {
  std::vector<std::pair<double, double>> k_table;  // (|dtheta| rad, K)
  double fov = 0.7853981633974483;
  double constant = 0.0125;   // footcandle m^2
  double threshold = 0.02;    // detection level I_min, footcandle
};

struct SensorLayout {
  std::array<SensorMount, kProximityCount> proximity;
  Vec2 line_offset{0.06, 0.0};
  Vec2 flame_offset{0.0, 0.0};
  double flame_bearing_left = 0.17453292519943295;
  double flame_bearing_right = -0.17453292519943295;
};

// Optional additive voltage noise; off unless stddev > 0.
struct SensorNoise {
  double ir_voltage_stddev = 0.0;
};

struct SensorConfig {
  IrCalibration ir;
  FlameModel flame;
  SensorLayout layout;
  SensorNoise noise;
};

struct ProximityReading {
  double distance = 0.0;
  double voltage = 0.0;
  bool hit = false;
};

struct SensorFrame {
  std::array<ProximityReading, kProximityCount> proximity{};
  int line = 0;
  std::optional<MarkerId> line_marker;
  double flame_left = 0.0;
  double flame_right = 0.0;
  double encoder_left = 0.0;   // cumulative wheel angle, rad
  double encoder_right = 0.0;
  double t = 0.0;

  const ProximityReading& at(MountId id) const { return proximity[static_cast<std::size_t>(id)]; }
  ProximityReading& at(MountId id) { return proximity[static_cast<std::size_t>(id)]; }
};

std::vector<std::string> check_config(const SensorConfig& cfg);

double ir_voltage(double distance, const IrCalibration& cal);
// Inverse of ir_voltage over the valid range; what a controller reads back from a voltage.
double ir_distance(double voltage, const IrCalibration& cal);

std::array<ProximityReading, kProximityCount> proximity_scan(
    const Pose& pose, const std::array<SensorMount, kProximityCount>& mounts, const Arena& arena,
    const IrCalibration& cal);

std::pair<int, std::optional<MarkerId>> line_sense(const Pose& pose, Vec2 mount_offset,
                                                   const Arena& arena);

double flame_distance(Vec2 robot, Vec2 candle);
double intensity_coefficient(double dtheta, const FlameModel& fm);

// Illuminance seen by a flame sensor at the robot's COM looking along `sensor_bearing`.
double flame_intensity(const Pose& pose, double sensor_bearing, const Arena& arena,
                       const FlameModel& fm, Vec2 sensor_offset = {});

// Samples every sensor for one tick. `rng` is only drawn from when noise is enabled.
SensorFrame sense(const Pose& pose, const Arena& arena, const SensorConfig& cfg, double t,
                  double encoder_left, double encoder_right, std::mt19937_64& rng);

}  // namespace ffr
