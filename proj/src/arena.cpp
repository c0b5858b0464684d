#include "ffr/arena.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <random>
#include <set>
#include <sstream>

namespace ffr {

bool Room::contains(Vec2 p) const {
  bool inside = false;
  const std::size_t n = polygon.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Vec2 a = polygon[i];
    const Vec2 b = polygon[j];
    if ((a.y > p.y) != (b.y > p.y)) {
      const double x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (p.x < x) inside = !inside;
    }
  }
  return inside;
}

double Room::edge_distance(Vec2 p) const {
  double best = std::numeric_limits<double>::infinity();
  const std::size_t n = polygon.size();
  for (std::size_t i = 0; i < n; ++i) {
    best = std::min(best, distance_to_segment(p, polygon[i], polygon[(i + 1) % n]));
  }
  return best;
}

Vec2 Room::centroid() const {
  double area2 = 0.0;
  Vec2 acc;
  const std::size_t n = polygon.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 a = polygon[i];
    const Vec2 b = polygon[(i + 1) % n];
    const double c = cross(a, b);
    area2 += c;
    acc = acc + (a + b) * c;
  }
  return acc * (1.0 / (3.0 * area2));
}

std::string to_string(MarkerId m) {
  switch (m.kind) {
    case MarkerKind::Doorway:
      return "doorway:" + std::to_string(m.id);
    case MarkerKind::Home:
      return "home";
    case MarkerKind::Candle:
      return "candle";
  }
  return "unknown";
}

OrientedBox wall_box(const WallSegment& w) {
  const Vec2 d = w.b - w.a;
  const double len = d.norm();
  OrientedBox box;
  box.center = (w.a + w.b) * 0.5;
  box.axis = d * (1.0 / len);
  box.half_length = 0.5 * len + 0.5 * w.thickness;
  box.half_width = 0.5 * w.thickness;
  return box;
}

Arena::Arena(std::vector<WallSegment> walls, std::vector<Room> rooms,
             std::vector<DoorwayLine> doorways, CircleMarker home, Bounds bounds,
             double stroke_width, CandleRules rules)
    : walls_(std::move(walls)),
      rooms_(std::move(rooms)),
      doorways_(std::move(doorways)),
      home_(home),
      bounds_(bounds),
      stroke_width_(stroke_width),
      rules_(rules) {
  if (stroke_width_ <= 0.0) throw SimError("stroke width must be positive");
  if (home_.radius <= 0.0) throw SimError("home circle radius must be positive");
  home_.kind = MarkerKind::Home;
  for (const auto& w : walls_) {
    if (w.a == w.b) throw SimError("wall segment has coincident endpoints");
    if (!(w.thickness > 0.0)) throw SimError("wall thickness must be positive");
    if (w.thickness != walls_.front().thickness) {
      throw SimError("all walls must share one thickness");
    }
    boxes_.push_back(wall_box(w));
  }
}

const Room& Arena::room(int id) const {
  for (const auto& r : rooms_) {
    if (r.id == id) return r;
  }
  throw SimError("no room with id " + std::to_string(id));
}

std::optional<double> Arena::raycast(Vec2 origin, Vec2 direction, double max_range) const {
  if (!(max_range > 0.0)) throw SimError("raycast max_range must be positive");
  std::optional<double> best;
  for (const auto& box : boxes_) {
    const Vec2 o = box.to_local(origin);
    const Vec2 d{dot(direction, box.axis), cross(box.axis, direction)};
    double t_in = -std::numeric_limits<double>::infinity();
    double t_out = std::numeric_limits<double>::infinity();
    bool miss = false;
    for (int k = 0; k < 2 && !miss; ++k) {
      const double ok = k == 0 ? o.x : o.y;
      const double dk = k == 0 ? d.x : d.y;
      const double h = k == 0 ? box.half_length : box.half_width;
      if (std::abs(dk) < 1e-15) {
        if (std::abs(ok) >= h) miss = true;
        continue;
      }
      double t1 = (-h - ok) / dk;
      double t2 = (h - ok) / dk;
      if (t1 > t2) std::swap(t1, t2);
      t_in = std::max(t_in, t1);
      t_out = std::min(t_out, t2);
    }
    if (miss || t_in > t_out || t_out <= 0.0) continue;
    if (t_in < 0.0) {
      if (box.contains(origin, 1e-12)) throw SimError("raycast origin lies inside a wall");
      t_in = 0.0;
    }
    if (t_in <= max_range && (!best || t_in < *best)) best = t_in;
  }
  return best;
}

std::optional<MarkerId> Arena::on_white(Vec2 p) const {
  const double half = 0.5 * stroke_width_;
  for (const auto& d : doorways_) {
    if (distance_to_segment(p, d.a, d.b) <= half) return MarkerId{MarkerKind::Doorway, d.room_id};
  }
  if (std::abs((p - home_.center).norm() - home_.radius) <= half) {
    return MarkerId{MarkerKind::Home, 0};
  }
  if (candle_ && std::abs((p - candle_->circle.center).norm() - candle_->circle.radius) <= half) {
    return MarkerId{MarkerKind::Candle, 0};
  }
  return std::nullopt;
}

bool Arena::point_in_wall(Vec2 p) const {
  return std::any_of(boxes_.begin(), boxes_.end(), [&](const auto& b) { return b.contains(p); });
}

bool Arena::footprint_collides(const Pose& pose, Vec2 half_extents) const {
  OrientedBox robot;
  robot.center = pose.position();
  robot.axis = unit_from_angle(pose.theta);
  robot.half_length = half_extents.x;
  robot.half_width = half_extents.y;
  return std::any_of(boxes_.begin(), boxes_.end(),
                     [&](const auto& b) { return boxes_overlap(robot, b); });
}

Arena Arena::with_candle(Candle c) const {
  if (candle_) throw SimError("arena already holds a candle");
  if (c.circle.radius <= 0.0) throw SimError("candle circle radius must be positive");
  if (!room(c.room_id).contains(c.flame)) throw SimError("candle must lie inside its room");
  c.circle.kind = MarkerKind::Candle;
  Arena out = *this;
  out.candle_ = c;
  return out;
}

Arena Arena::extinguished() const {
  if (!candle_lit()) throw SimError("no lit candle to extinguish");
  Arena out = *this;
  out.candle_->lit = false;
  return out;
}

bool candle_admissible(const Arena& arena, int room_id, Vec2 flame) {
  const Room& room = arena.room(room_id);
  const CandleRules& rules = arena.candle_rules();
  if (!room.contains(flame)) return false;
  if (room.edge_distance(flame) < rules.wall_margin) return false;
  const double touch = rules.radius + 0.5 * arena.stroke_width();
  for (const auto& d : arena.doorways()) {
    const double dist = distance_to_segment(flame, d.a, d.b);
    if (dist <= touch) return false;
    if (d.room_id == room_id && dist < rules.min_depth) return false;
  }
  return true;
}

namespace {

// 53-bit uniform in [0, 1); the standard distributions are not portable across libraries.
double canonical(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

struct Box2 {
  Vec2 lo, hi;
};

Box2 bounding_box(const std::vector<Vec2>& poly) {
  Box2 b{poly.front(), poly.front()};
  for (const Vec2& p : poly) {
    b.lo = {std::min(b.lo.x, p.x), std::min(b.lo.y, p.y)};
    b.hi = {std::max(b.hi.x, p.x), std::max(b.hi.y, p.y)};
  }
  return b;
}

bool segments_cross(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
  const double d1 = cross(b - a, c - a);
  const double d2 = cross(b - a, d - a);
  const double d3 = cross(d - c, a - c);
  const double d4 = cross(d - c, b - c);
  return ((d1 > 1e-12 && d2 < -1e-12) || (d1 < -1e-12 && d2 > 1e-12)) &&
         ((d3 > 1e-12 && d4 < -1e-12) || (d3 < -1e-12 && d4 > 1e-12));
}

bool rooms_overlap(const Room& a, const Room& b) {
  const std::size_t na = a.polygon.size(), nb = b.polygon.size();
  for (std::size_t i = 0; i < na; ++i) {
    for (std::size_t j = 0; j < nb; ++j) {
      if (segments_cross(a.polygon[i], a.polygon[(i + 1) % na], b.polygon[j],
                         b.polygon[(j + 1) % nb])) {
        return true;
      }
    }
  }
  auto deep_inside = [](const Room& r, Vec2 p) { return r.contains(p) && r.edge_distance(p) > 1e-9; };
  for (const Vec2& p : a.polygon) {
    if (deep_inside(b, p)) return true;
  }
  for (const Vec2& p : b.polygon) {
    if (deep_inside(a, p)) return true;
  }
  return deep_inside(b, a.centroid()) || deep_inside(a, b.centroid());
}

bool has_admissible_point(const Arena& arena, int room_id) {
  const Box2 bb = bounding_box(arena.room(room_id).polygon);
  constexpr double step = 0.01;
  for (double x = bb.lo.x; x <= bb.hi.x; x += step) {
    for (double y = bb.lo.y; y <= bb.hi.y; y += step) {
      if (candle_admissible(arena, room_id, {x, y})) return true;
    }
  }
  return false;
}

Arena assemble(const ArenaConfig& cfg) {
  std::vector<WallSegment> walls = cfg.walls;
  for (auto& w : walls) w.thickness = cfg.wall_thickness;
  CircleMarker home = cfg.home;
  home.kind = MarkerKind::Home;
  return Arena(std::move(walls), cfg.rooms, cfg.doorways, home, cfg.bounds, cfg.stroke_width,
               cfg.candle);
}

}  // namespace

std::vector<std::string> check_layout(const ArenaConfig& cfg) {
  std::vector<std::string> v;
  if (!(cfg.bounds.width > 0.0) || !(cfg.bounds.height > 0.0)) v.push_back("bounds must be positive");
  if (!(cfg.wall_thickness > 0.0)) v.push_back("wall thickness must be positive");
  if (!(cfg.stroke_width > 0.0)) v.push_back("stroke width must be positive");
  if (!(cfg.candle.radius > 0.0)) v.push_back("candle radius must be positive");
  if (!(cfg.home.radius > 0.0)) v.push_back("home radius must be positive");
  if (cfg.robot_half_extents.x <= 0.0 || cfg.robot_half_extents.y <= 0.0) {
    v.push_back("robot footprint must be positive");
  }
  for (std::size_t i = 0; i < cfg.walls.size(); ++i) {
    if (cfg.walls[i].a == cfg.walls[i].b) {
      v.push_back("wall " + std::to_string(i) + " has coincident endpoints");
    }
  }
  // Later checks need a constructible arena.
  if (!v.empty()) return v;

  std::set<int> ids;
  for (const auto& r : cfg.rooms) {
    if (r.polygon.size() < 3) v.push_back("room " + std::to_string(r.id) + " has fewer than 3 vertices");
    ids.insert(r.id);
  }
  if (cfg.rooms.size() != 4 || ids != std::set<int>{1, 2, 3, 4}) {
    v.push_back("layout needs exactly four rooms with ids 1..4");
  }
  if (!v.empty()) return v;

  const Arena arena = assemble(cfg);
  const double half_t = 0.5 * cfg.wall_thickness;

  for (std::size_t i = 0; i < cfg.rooms.size(); ++i) {
    for (std::size_t j = i + 1; j < cfg.rooms.size(); ++j) {
      if (rooms_overlap(cfg.rooms[i], cfg.rooms[j])) {
        v.push_back("rooms " + std::to_string(cfg.rooms[i].id) + " and " +
                    std::to_string(cfg.rooms[j].id) + " overlap");
      }
    }
  }

  for (std::size_t i = 0; i < cfg.walls.size(); ++i) {
    const auto& w = cfg.walls[i];
    const double len = (w.b - w.a).norm();
    const int n = std::max(2, static_cast<int>(len / 0.01));
    bool bad = false;
    for (int k = 0; k <= n && !bad; ++k) {
      const Vec2 p = w.a + (w.b - w.a) * (static_cast<double>(k) / n);
      for (const auto& r : cfg.rooms) {
        if (r.contains(p) && r.edge_distance(p) > half_t + 1e-9) bad = true;
      }
    }
    if (bad) v.push_back("wall " + std::to_string(i) + " crosses a room interior");
  }

  const double min_door = 2.0 * cfg.robot_half_extents.y + cfg.door_clearance;
  std::set<int> rooms_with_door;
  for (std::size_t i = 0; i < cfg.doorways.size(); ++i) {
    const auto& d = cfg.doorways[i];
    const std::string name = "doorway " + std::to_string(i);
    int bordering = 0;
    bool owner_borders = false;
    for (const auto& r : cfg.rooms) {
      const Vec2 mid = (d.a + d.b) * 0.5;
      if (r.edge_distance(d.a) < 1e-6 && r.edge_distance(d.b) < 1e-6 && r.edge_distance(mid) < 1e-6) {
        ++bordering;
        if (r.id == d.room_id) owner_borders = true;
      }
    }
    if (bordering != 1 || !owner_borders) {
      v.push_back(name + " must border exactly its own room " + std::to_string(d.room_id));
    }
    rooms_with_door.insert(d.room_id);
    const double len = (d.b - d.a).norm();
    if (len - cfg.wall_thickness < min_door) {
      v.push_back(name + " clear width " + std::to_string(len - cfg.wall_thickness) +
                  " m is narrower than robot width plus clearance " + std::to_string(min_door) + " m");
    }
    const int n = 50;
    for (int k = 0; k <= n; ++k) {
      const double s = (half_t + 1e-6) / len + (1.0 - 2.0 * (half_t + 1e-6) / len) * k / n;
      if (arena.point_in_wall(d.a + (d.b - d.a) * s)) {
        v.push_back(name + " is blocked by a wall");
        break;
      }
    }
  }
  for (int id : ids) {
    if (!rooms_with_door.count(id)) v.push_back("room " + std::to_string(id) + " has no doorway");
  }

  if (!cfg.bounds.contains(cfg.home.center) || arena.point_in_wall(cfg.home.center)) {
    v.push_back("home circle center must be inside the bounds and off the walls");
  }
  for (const auto& r : cfg.rooms) {
    if (r.contains(cfg.home.center)) v.push_back("home circle must lie in a hallway, not a room");
  }
  if (!v.empty()) return v;

  for (int id : unreachable_rooms(arena, cfg.robot_half_extents)) {
    v.push_back("room " + std::to_string(id) + " is unreachable from home for the robot footprint");
  }
  for (int id : ids) {
    if (!has_admissible_point(arena, id)) {
      v.push_back("room " + std::to_string(id) + " has no admissible candle position");
    }
  }
  return v;
}

Arena build_standard_arena(const ArenaConfig& cfg) {
  const auto violations = check_layout(cfg);
  if (!violations.empty()) {
    std::ostringstream os;
    os << "invalid arena layout:";
    for (const auto& s : violations) os << "\n  " << s;
    throw SimError(os.str());
  }
  return assemble(cfg);
}

Arena place_candle(const Arena& arena, int room_id, std::uint64_t seed) {
  if (room_id < 1 || room_id > 4) throw SimError("room id must be in 1..4");
  if (arena.candle()) throw SimError("arena already holds a candle");
  const Box2 bb = bounding_box(arena.room(room_id).polygon);
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < 100000; ++attempt) {
    const Vec2 p{bb.lo.x + (bb.hi.x - bb.lo.x) * canonical(rng),
                 bb.lo.y + (bb.hi.y - bb.lo.y) * canonical(rng)};
    if (candle_admissible(arena, room_id, p)) {
      Candle c;
      c.circle = {p, arena.candle_rules().radius, MarkerKind::Candle};
      c.flame = p;
      c.room_id = room_id;
      return arena.with_candle(c);
    }
  }
  throw SimError("room " + std::to_string(room_id) + " has no admissible candle region");
}

std::vector<int> unreachable_rooms(const Arena& arena, Vec2 robot_half_extents, double resolution) {
  const double inflate = std::max(robot_half_extents.x, robot_half_extents.y);
  const Bounds& b = arena.bounds();
  const int nx = static_cast<int>(b.width / resolution) + 1;
  const int ny = static_cast<int>(b.height / resolution) + 1;
  auto cell_center = [&](int i, int j) { return Vec2{i * resolution, j * resolution}; };
  auto free = [&](int i, int j) {
    const Vec2 p = cell_center(i, j);
    for (const auto& box : arena.wall_boxes()) {
      if (box.distance(p) <= inflate) return false;
    }
    return true;
  };
  std::vector<signed char> state(static_cast<std::size_t>(nx) * ny, -1);  // -1 unknown, 0 blocked, 1 reached
  auto idx = [&](int i, int j) { return static_cast<std::size_t>(j) * nx + i; };

  const int si = static_cast<int>(std::lround(arena.home().center.x / resolution));
  const int sj = static_cast<int>(std::lround(arena.home().center.y / resolution));
  std::vector<int> missing;
  if (si < 0 || sj < 0 || si >= nx || sj >= ny || !free(si, sj)) {
    for (const auto& r : arena.rooms()) missing.push_back(r.id);
    return missing;
  }
  std::deque<std::pair<int, int>> queue{{si, sj}};
  state[idx(si, sj)] = 1;
  while (!queue.empty()) {
    const auto [i, j] = queue.front();
    queue.pop_front();
    constexpr int di[4] = {1, -1, 0, 0};
    constexpr int dj[4] = {0, 0, 1, -1};
    for (int k = 0; k < 4; ++k) {
      const int a = i + di[k], c = j + dj[k];
      if (a < 0 || c < 0 || a >= nx || c >= ny || state[idx(a, c)] != -1) continue;
      state[idx(a, c)] = free(a, c) ? 1 : 0;
      if (state[idx(a, c)] == 1) queue.emplace_back(a, c);
    }
  }
  for (const auto& r : arena.rooms()) {
    bool reached = false;
    for (int j = 0; j < ny && !reached; ++j) {
      for (int i = 0; i < nx && !reached; ++i) {
        const Vec2 p = cell_center(i, j);
        reached = state[idx(i, j)] == 1 && r.contains(p) && r.edge_distance(p) > inflate;
      }
    }
    if (!reached) missing.push_back(r.id);
  }
  return missing;
}

}  // namespace ffr
