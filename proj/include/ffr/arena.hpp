#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ffr/geometry.hpp"

namespace ffr {

struct WallSegment {
  Vec2 a;
  Vec2 b;
  double thickness = 0.013;
};

enum class MarkerKind { Doorway, Home, Candle };

struct CircleMarker {
  Vec2 center;
  double radius = 0.15;
  MarkerKind kind = MarkerKind::Home;
};

struct DoorwayLine {
  Vec2 a;
  Vec2 b;
  int room_id = 0;
};

struct Room {
  int id = 0;
  std::vector<Vec2> polygon;  // counterclockwise or clockwise, simple

  bool contains(Vec2 p) const;
  // Distance from p to the nearest polygon edge.
  double edge_distance(Vec2 p) const;
  Vec2 centroid() const;
};

// Identity of a white floor marking. Doorways carry their room id, circles id 0.
struct MarkerId {
  MarkerKind kind = MarkerKind::Doorway;
  int id = 0;
  bool operator==(const MarkerId&) const = default;
};

std::string to_string(MarkerId m);

struct Candle {
  CircleMarker circle;
  Vec2 flame;
  int room_id = 0;
  bool lit = true;
};

// Contest rules constraining where the candle may stand.
struct CandleRules {
  double radius = 0.15;
  double min_depth = 0.33;    // flame distance from the doorway line into the room
  double wall_margin = 0.25;  // flame distance from every room wall
};

struct Bounds {
  double width = 2.44;
  double height = 2.44;
  bool contains(Vec2 p) const { return p.x >= 0 && p.y >= 0 && p.x <= width && p.y <= height; }
};

// Everything needed to build an arena, as read from a layout file.
struct ArenaConfig {
  Bounds bounds;
  double wall_thickness = 0.013;
  double stroke_width = 0.025;
  CandleRules candle;
  double door_clearance = 0.02;      // beyond the robot's full width
  Vec2 robot_half_extents{0.10, 0.10};
  std::vector<WallSegment> walls;  // thickness taken from wall_thickness
  std::vector<DoorwayLine> doorways;
  CircleMarker home;
  double home_heading = 0.0;  // start heading of the robot placed on home
  std::vector<Room> rooms;
};

// Immutable contest environment. Copies are cheap enough to hand one to each run.
class Arena {
 public:
  Arena() = default;
  // Checks only the basic per-item invariants; layout rules live in check_layout().
  Arena(std::vector<WallSegment> walls, std::vector<Room> rooms, std::vector<DoorwayLine> doorways,
        CircleMarker home, Bounds bounds, double stroke_width = 0.025, CandleRules rules = {});

  const std::vector<WallSegment>& walls() const { return walls_; }
  const std::vector<OrientedBox>& wall_boxes() const { return boxes_; }
  const std::vector<Room>& rooms() const { return rooms_; }
  const std::vector<DoorwayLine>& doorways() const { return doorways_; }
  const CircleMarker& home() const { return home_; }
  const std::optional<Candle>& candle() const { return candle_; }
  const Bounds& bounds() const { return bounds_; }
  double stroke_width() const { return stroke_width_; }
  const CandleRules& candle_rules() const { return rules_; }
  const Room& room(int id) const;

  bool candle_lit() const { return candle_ && candle_->lit; }

  // Distance along the ray to the first wall face, absent when nothing lies within max_range.
  // Throws when the origin is strictly inside a wall.
  std::optional<double> raycast(Vec2 origin, Vec2 direction, double max_range) const;

  std::optional<MarkerId> on_white(Vec2 p) const;

  bool point_in_wall(Vec2 p) const;
  bool footprint_collides(const Pose& pose, Vec2 half_extents) const;

  Arena with_candle(Candle c) const;
  // Copy with the flame put out; the candle circle marking stays on the floor.
  Arena extinguished() const;

 private:
  std::vector<WallSegment> walls_;
  std::vector<OrientedBox> boxes_;
  std::vector<Room> rooms_;
  std::vector<DoorwayLine> doorways_;
  CircleMarker home_;
  std::optional<Candle> candle_;
  Bounds bounds_;
  double stroke_width_ = 0.025;
  CandleRules rules_;
};

// Wall rectangle with square end caps of half the thickness.
OrientedBox wall_box(const WallSegment& w);

// Returns every violated layout rule; empty means the layout is usable.
std::vector<std::string> check_layout(const ArenaConfig& cfg);

// Validates the layout and builds the arena (no candle).
Arena build_standard_arena(const ArenaConfig& cfg);

// Whether `flame` is an admissible candle position in `room_id`.
bool candle_admissible(const Arena& arena, int room_id, Vec2 flame);

// Seeded uniform draw from the admissible region of the room.
Arena place_candle(const Arena& arena, int room_id, std::uint64_t seed);

// Flood fill of the robot's configuration space from home; returns unreachable room ids.
std::vector<int> unreachable_rooms(const Arena& arena, Vec2 robot_half_extents,
                                   double resolution = 0.01);

}  // namespace ffr
