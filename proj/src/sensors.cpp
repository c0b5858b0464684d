#include "ffr/sensors.hpp"

#include <algorithm>
#include <cmath>

namespace ffr {

const char* to_string(MountId id) {
  switch (id) {
    case MountId::CF: return "CF";
    case MountId::FL: return "FL";
    case MountId::FR: return "FR";
    case MountId::RL: return "RL";
    case MountId::RR: return "RR";
  }
  return "?";
}

namespace {

double interpolate(const std::vector<std::pair<double, double>>& table, double x) {
  if (x <= table.front().first) return table.front().second;
  if (x >= table.back().first) return table.back().second;
  const auto hi = std::upper_bound(table.begin(), table.end(), x,
                                   [](double v, const auto& e) { return v < e.first; });
  const auto lo = hi - 1;
  const double s = (x - lo->first) / (hi->first - lo->first);
  return lo->second + s * (hi->second - lo->second);
}

}  // namespace

std::vector<std::string> check_config(const SensorConfig& cfg) {
  std::vector<std::string> v;
  const auto& ir = cfg.ir.table;
  if (ir.size() < 2) v.push_back("ir_calibration needs at least two anchors");
  for (std::size_t i = 1; i < ir.size(); ++i) {
    if (!(ir[i].first > ir[i - 1].first)) v.push_back("ir_calibration distances must increase strictly");
    if (!(ir[i].second < ir[i - 1].second)) v.push_back("ir_calibration voltages must decrease strictly");
  }
  if (!ir.empty() && !(ir.front().first > 0.0)) v.push_back("ir_calibration distances must be positive");

  const auto& fm = cfg.flame;
  if (!(fm.fov > 0.0)) v.push_back("flame.fov must be positive");
  if (!(fm.constant > 0.0)) v.push_back("flame.constant must be positive");
  if (!(fm.threshold > 0.0)) v.push_back("flame.threshold must be positive");
  if (fm.k_table.size() < 2) {
    v.push_back("flame.k_table needs at least two entries");
  } else {
    if (fm.k_table.front().first != 0.0 || fm.k_table.front().second != 1.0) {
      v.push_back("flame.k_table must start at (0, 1)");
    }
    for (std::size_t i = 1; i < fm.k_table.size(); ++i) {
      if (!(fm.k_table[i].first > fm.k_table[i - 1].first)) {
        v.push_back("flame.k_table angles must increase strictly");
      }
    }
    for (const auto& [a, k] : fm.k_table) {
      if (k < 0.0 || k > 1.0) v.push_back("flame.k_table values must lie in [0, 1]");
    }
  }
  if (cfg.layout.proximity[0].id != MountId::CF || cfg.layout.proximity[0].bearing != 0.0) {
    v.push_back("mounts: CF must be the first proximity mount and face forward");
  }
  for (std::size_t i = 0; i < kProximityCount; ++i) {
    if (static_cast<std::size_t>(cfg.layout.proximity[i].id) != i) {
      v.push_back("mounts: proximity mounts must be listed as CF FL FR RL RR");
      break;
    }
  }
  if (cfg.noise.ir_voltage_stddev < 0.0) v.push_back("noise.ir_voltage_stddev must be non-negative");
  return v;
}

double ir_voltage(double distance, const IrCalibration& cal) {
  if (distance < 0.0) throw SimError("ir_voltage needs a non-negative distance");
  return interpolate(cal.table, distance);
}

double ir_distance(double voltage, const IrCalibration& cal) {
  const auto& t = cal.table;
  if (voltage >= t.front().second) return t.front().first;
  if (voltage <= t.back().second) return t.back().first;
  for (std::size_t i = 1; i < t.size(); ++i) {
    if (voltage >= t[i].second) {
      const double s = (voltage - t[i - 1].second) / (t[i].second - t[i - 1].second);
      return t[i - 1].first + s * (t[i].first - t[i - 1].first);
    }
  }
  return t.back().first;
}

std::array<ProximityReading, kProximityCount> proximity_scan(
    const Pose& pose, const std::array<SensorMount, kProximityCount>& mounts, const Arena& arena,
    const IrCalibration& cal) {
  std::array<ProximityReading, kProximityCount> out{};
  const double max_range = cal.max_range();
  for (std::size_t i = 0; i < kProximityCount; ++i) {
    const Vec2 origin = pose.to_world(mounts[i].offset);
    const Vec2 dir = unit_from_angle(pose.theta + mounts[i].bearing);
    const auto hit = arena.raycast(origin, dir, max_range);
    out[i].hit = hit.has_value();
    out[i].distance = hit.value_or(max_range);
    out[i].voltage = ir_voltage(out[i].distance, cal);
  }
  return out;
}

std::pair<int, std::optional<MarkerId>> line_sense(const Pose& pose, Vec2 mount_offset,
                                                   const Arena& arena) {
  const auto marker = arena.on_white(pose.to_world(mount_offset));
  return {marker ? 1 : 0, marker};
}

double flame_distance(Vec2 robot, Vec2 candle) {
  return std::sqrt((candle.x - robot.x) * (candle.x - robot.x) +
                   (candle.y - robot.y) * (candle.y - robot.y));
}

double intensity_coefficient(double dtheta, const FlameModel& fm) {
  const double a = std::abs(dtheta);
  if (a >= fm.fov) return 0.0;
  return interpolate(fm.k_table, a);
}

double flame_intensity(const Pose& pose, double sensor_bearing, const Arena& arena,
                       const FlameModel& fm, Vec2 sensor_offset) {
  if (!arena.candle_lit()) return 0.0;
  const Vec2 eye = pose.to_world(sensor_offset);
  const Vec2 flame = arena.candle()->flame;
  const double R = flame_distance(eye, flame);
  if (!(R > 0.0)) throw SimError("flame intensity is undefined at zero distance");
  const Vec2 to_flame = (flame - eye) * (1.0 / R);
  if (arena.raycast(eye, to_flame, R)) return 0.0;  // a wall blocks the line of sight
  const double dtheta =
      wrap_angle(std::atan2(to_flame.y, to_flame.x) - (pose.theta + sensor_bearing));
  return fm.constant / (R * R) * intensity_coefficient(dtheta, fm);
}

SensorFrame sense(const Pose& pose, const Arena& arena, const SensorConfig& cfg, double t,
                  double encoder_left, double encoder_right, std::mt19937_64& rng) {
  SensorFrame f;
  f.t = t;
  f.proximity = proximity_scan(pose, cfg.layout.proximity, arena, cfg.ir);
  if (cfg.noise.ir_voltage_stddev > 0.0) {
    std::normal_distribution<double> noise(0.0, cfg.noise.ir_voltage_stddev);
    for (auto& r : f.proximity) r.voltage = std::max(0.0, r.voltage + noise(rng));
  }
  std::tie(f.line, f.line_marker) = line_sense(pose, cfg.layout.line_offset, arena);
  f.flame_left = flame_intensity(pose, cfg.layout.flame_bearing_left, arena, cfg.flame,
                                 cfg.layout.flame_offset);
  f.flame_right = flame_intensity(pose, cfg.layout.flame_bearing_right, arena, cfg.flame,
                                  cfg.layout.flame_offset);
  f.encoder_left = encoder_left;
  f.encoder_right = encoder_right;
  return f;
}

}  // namespace ffr
