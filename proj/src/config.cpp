#include "ffr/config.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

namespace ffr {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  for (std::string tok; is >> tok;) out.push_back(tok);
  return out;
}

[[noreturn]] void fail(const std::string& section, const std::string& msg) {
  throw SimError("config [" + section + "]: " + msg);
}

// Reads known keys from a section and rejects the rest, so typos do not pass silently.
class KeyReader {
 public:
  KeyReader(const ConfigDocument& doc, std::string name) : name_(std::move(name)) {
    if (auto it = doc.sections.find(name_); it != doc.sections.end()) section_ = &it->second;
  }
  ~KeyReader() noexcept(false) {
    if (!section_ || std::uncaught_exceptions() > 0) return;
    for (const auto& [k, v] : section_->values) {
      if (!used_.count(k)) fail(name_, "unknown key '" + k + "'");
    }
  }

  bool present() const { return section_ != nullptr; }
  const ConfigSection* section() const { return section_; }

  void num(const char* key, double& out) {
    if (const std::string* v = find(key)) {
      try {
        out = parse_number(*v);
      } catch (const SimError& e) {
        fail(name_, std::string(key) + ": " + e.what());
      }
    }
  }
  void integer(const char* key, int& out) {
    double d = out;
    num(key, d);
    if (d != std::floor(d)) fail(name_, std::string(key) + " must be an integer");
    out = static_cast<int>(d);
  }
  void u64(const char* key, std::uint64_t& out) {
    if (const std::string* v = find(key)) {
      try {
        std::size_t pos = 0;
        out = std::stoull(*v, &pos);
        if (pos != v->size()) throw std::invalid_argument("trailing characters");
      } catch (const std::exception&) {
        fail(name_, std::string(key) + " must be a non-negative integer");
      }
    }
  }
  void side(const char* key, Side& out) {
    if (const std::string* v = find(key)) {
      const std::string s = lower(*v);
      if (s == "left") out = Side::Left;
      else if (s == "right") out = Side::Right;
      else fail(name_, std::string(key) + " must be left or right");
    }
  }
  void int_list(const char* key, std::vector<int>& out) {
    if (const std::string* v = find(key)) {
      out.clear();
      std::string item;
      std::istringstream is(*v);
      while (std::getline(is, item, ',')) {
        const std::string t = trim(item);
        if (t.empty()) continue;
        const double d = parse_number(t);
        if (d != std::floor(d)) fail(name_, std::string(key) + " entries must be integers");
        out.push_back(static_cast<int>(d));
      }
    }
  }

 private:
  const std::string* find(const char* key) {
    if (!section_) return nullptr;
    used_.insert(key);
    auto it = section_->values.find(key);
    return it == section_->values.end() ? nullptr : &it->second;
  }

  std::string name_;
  const ConfigSection* section_ = nullptr;
  std::set<std::string> used_;
};

std::vector<double> numeric_row(const std::string& section, const std::vector<std::string>& row,
                                std::size_t first, int line) {
  std::vector<double> out;
  for (std::size_t i = first; i < row.size(); ++i) {
    try {
      out.push_back(parse_number(row[i]));
    } catch (const SimError& e) {
      fail(section, "line " + std::to_string(line) + ": " + e.what());
    }
  }
  return out;
}

void expect_width(const std::string& section, const std::vector<double>& v, std::size_t n, int line) {
  if (v.size() != n) {
    fail(section, "line " + std::to_string(line) + ": expected " + std::to_string(n) + " numbers");
  }
}

const std::set<std::string> kKnownSections{
    "sim",    "arena", "walls",          "doorways", "home",  "rooms",     "vehicle",
    "motor",  "ir_calibration", "flame", "mounts",   "noise", "navigator"};

const std::set<std::string> kRowSections{"walls", "doorways", "rooms", "ir_calibration", "mounts"};

}  // namespace

double parse_number(const std::string& token) {
  std::string t = token;
  double scale = 1.0;
  if (t.size() > 3 && lower(t.substr(t.size() - 3)) == "deg") {
    t = t.substr(0, t.size() - 3);
    scale = std::numbers::pi / 180.0;
  }
  try {
    std::size_t pos = 0;
    const double v = std::stod(t, &pos);
    if (pos != t.size() || !std::isfinite(v)) throw std::invalid_argument(token);
    return v * scale;
  } catch (const std::exception&) {
    throw SimError("not a number: '" + token + "'");
  }
}

ConfigDocument parse_config(std::string_view text) {
  ConfigDocument doc;
  std::string current;
  std::istringstream is{std::string(text)};
  int lineno = 0;
  for (std::string raw; std::getline(is, raw);) {
    ++lineno;
    const std::string line = trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw SimError("config line " + std::to_string(lineno) + ": bad section header");
      current = lower(trim(line.substr(1, line.size() - 2)));
      if (!kKnownSections.count(current)) {
        throw SimError("config line " + std::to_string(lineno) + ": unknown section [" + current + "]");
      }
      doc.sections[current];
      continue;
    }
    if (current.empty()) {
      throw SimError("config line " + std::to_string(lineno) + ": entry outside any section");
    }
    ConfigSection& sec = doc.sections[current];
    if (const auto eq = line.find('='); eq != std::string::npos) {
      sec.values[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    } else {
      sec.rows.push_back(split_ws(line));
      sec.row_lines.push_back(lineno);
    }
  }
  for (const auto& [name, sec] : doc.sections) {
    if (!sec.rows.empty() && !kRowSections.count(name) && name != "flame") {
      throw SimError("config [" + name + "]: expected key = value entries, line " +
                     std::to_string(sec.row_lines.front()));
    }
  }
  return doc;
}

SimConfig apply_config(const ConfigDocument& doc, SimConfig cfg) {
  {
    KeyReader r(doc, "sim");
    r.num("dt", cfg.dt);
    r.num("t_max_find", cfg.t_max_find);
    r.num("t_max_return", cfg.t_max_return);
    r.integer("record_every", cfg.record_every);
    r.integer("candle_room", cfg.candle_room);
    r.u64("seed", cfg.seed);
  }
  {
    KeyReader r(doc, "arena");
    r.num("width", cfg.arena.bounds.width);
    r.num("height", cfg.arena.bounds.height);
    r.num("wall_thickness", cfg.arena.wall_thickness);
    r.num("stroke_width", cfg.arena.stroke_width);
    r.num("candle_radius", cfg.arena.candle.radius);
    r.num("candle_min_depth", cfg.arena.candle.min_depth);
    r.num("candle_wall_margin", cfg.arena.candle.wall_margin);
    r.num("door_clearance", cfg.arena.door_clearance);
  }
  if (auto it = doc.sections.find("walls"); it != doc.sections.end()) {
    cfg.arena.walls.clear();
    for (std::size_t i = 0; i < it->second.rows.size(); ++i) {
      const auto v = numeric_row("walls", it->second.rows[i], 0, it->second.row_lines[i]);
      expect_width("walls", v, 4, it->second.row_lines[i]);
      cfg.arena.walls.push_back({{v[0], v[1]}, {v[2], v[3]}, cfg.arena.wall_thickness});
    }
  }
  if (auto it = doc.sections.find("doorways"); it != doc.sections.end()) {
    cfg.arena.doorways.clear();
    for (std::size_t i = 0; i < it->second.rows.size(); ++i) {
      const auto v = numeric_row("doorways", it->second.rows[i], 0, it->second.row_lines[i]);
      expect_width("doorways", v, 5, it->second.row_lines[i]);
      cfg.arena.doorways.push_back({{v[1], v[2]}, {v[3], v[4]}, static_cast<int>(v[0])});
    }
  }
  {
    KeyReader r(doc, "home");
    r.num("x", cfg.arena.home.center.x);
    r.num("y", cfg.arena.home.center.y);
    r.num("radius", cfg.arena.home.radius);
    r.num("heading", cfg.arena.home_heading);
  }
  if (auto it = doc.sections.find("rooms"); it != doc.sections.end()) {
    cfg.arena.rooms.clear();
    for (std::size_t i = 0; i < it->second.rows.size(); ++i) {
      const int line = it->second.row_lines[i];
      const auto v = numeric_row("rooms", it->second.rows[i], 0, line);
      if (v.size() < 7 || v.size() % 2 == 0) {
        fail("rooms", "line " + std::to_string(line) + ": expected id followed by x y pairs");
      }
      Room room;
      room.id = static_cast<int>(v[0]);
      for (std::size_t j = 1; j + 1 < v.size(); j += 2) room.polygon.push_back({v[j], v[j + 1]});
      cfg.arena.rooms.push_back(room);
    }
  }
  {
    KeyReader r(doc, "vehicle");
    auto& p = cfg.vehicle;
    r.num("wheel_radius", p.wheel_radius);
    r.num("track_width", p.track_width);
    r.num("mass", p.mass);
    r.num("gravity", p.gravity);
    r.num("k", p.k);
    r.num("L_r", p.L_r);
    r.num("L_2", p.L_2);
    r.num("mu", p.mu);
    r.num("wheel_inertia", p.wheel_inertia);
    r.num("footprint_half_length", p.footprint.x);
    r.num("footprint_half_width", p.footprint.y);
  }
  {
    KeyReader r(doc, "motor");
    auto& m = cfg.motor;
    r.num("K_i", m.K_i);
    r.num("K_b", m.K_b);
    r.num("R_a", m.R_a);
    r.num("L_a", m.L_a);
    r.num("J_m", m.J_m);
    r.num("B_m", m.B_m);
  }
  if (auto it = doc.sections.find("ir_calibration"); it != doc.sections.end()) {
    if (!it->second.values.empty()) fail("ir_calibration", "expected 'distance voltage' rows");
    cfg.sensors.ir.table.clear();
    for (std::size_t i = 0; i < it->second.rows.size(); ++i) {
      const auto v = numeric_row("ir_calibration", it->second.rows[i], 0, it->second.row_lines[i]);
      expect_width("ir_calibration", v, 2, it->second.row_lines[i]);
      cfg.sensors.ir.table.emplace_back(v[0], v[1]);
    }
  }
  {
    KeyReader r(doc, "flame");
    r.num("fov", cfg.sensors.flame.fov);
    r.num("constant", cfg.sensors.flame.constant);
    r.num("threshold", cfg.sensors.flame.threshold);
    if (r.present() && !r.section()->rows.empty()) {
      cfg.sensors.flame.k_table.clear();
      const auto& sec = *r.section();
      for (std::size_t i = 0; i < sec.rows.size(); ++i) {
        const auto v = numeric_row("flame", sec.rows[i], 0, sec.row_lines[i]);
        expect_width("flame", v, 2, sec.row_lines[i]);
        cfg.sensors.flame.k_table.emplace_back(v[0], v[1]);
      }
    }
  }
  if (auto it = doc.sections.find("mounts"); it != doc.sections.end()) {
    const std::vector<std::string> names{"CF", "FL", "FR", "RL", "RR"};
    for (std::size_t i = 0; i < it->second.rows.size(); ++i) {
      const auto& row = it->second.rows[i];
      const int line = it->second.row_lines[i];
      if (row.empty()) continue;
      const std::string name = row[0];
      const auto v = numeric_row("mounts", row, 1, line);
      auto& lay = cfg.sensors.layout;
      bool matched = false;
      for (std::size_t k = 0; k < names.size(); ++k) {
        if (name == names[k]) {
          expect_width("mounts", v, 3, line);
          lay.proximity[k] = {{v[0], v[1]}, v[2], static_cast<MountId>(k)};
          matched = true;
        }
      }
      if (matched) continue;
      if (name == "LINE") {
        expect_width("mounts", v, 2, line);
        lay.line_offset = {v[0], v[1]};
      } else if (name == "FLAME_L" || name == "FLAME_R") {
        expect_width("mounts", v, 3, line);
        lay.flame_offset = {v[0], v[1]};
        (name == "FLAME_L" ? lay.flame_bearing_left : lay.flame_bearing_right) = v[2];
      } else {
        fail("mounts", "line " + std::to_string(line) + ": unknown mount '" + name + "'");
      }
    }
  }
  {
    KeyReader r(doc, "noise");
    r.num("ir_voltage_stddev", cfg.sensors.noise.ir_voltage_stddev);
  }
  {
    KeyReader r(doc, "navigator");
    auto& n = cfg.navigator;
    r.num("supply_voltage", n.supply_voltage);
    r.num("cruise_voltage", n.cruise_voltage);
    r.num("turn_voltage", n.turn_voltage);
    r.num("turn_creep_voltage", n.turn_creep_voltage);
    r.num("turn_taper", n.turn_taper);
    r.num("scan_voltage", n.scan_voltage);
    r.num("homing_voltage", n.homing_voltage);
    r.num("kp_angle", n.kp_angle);
    r.num("kp_dist", n.kp_dist);
    r.num("kp_heading", n.kp_heading);
    r.num("homing_gain", n.homing_gain);
    r.num("max_steer", n.max_steer);
    r.num("wall_setpoint", n.wall_setpoint);
    r.num("blocked_threshold", n.blocked_threshold);
    r.num("front_standoff", n.front_standoff);
    r.num("opening_travel", n.opening_travel);
    r.num("doorway_overrun", n.doorway_overrun);
    r.num("entry_travel", n.entry_travel);
    r.num("exit_clearance", n.exit_clearance);
    r.num("home_overrun", n.home_overrun);
    r.num("arrive_tolerance", n.arrive_tolerance);
    r.int_list("tour", n.tour);
    r.side("door_side", n.door_side);
    r.num("homing_stop_range", n.homing_stop_range);
    r.num("homing_stop_factor", n.homing_stop_factor);
    r.num("stop_intensity", n.stop_intensity);
    r.num("blow_duration", n.blow_duration);
    r.num("scan_angle", n.scan_angle);
  }
  sync_derived(cfg);
  return cfg;
}

SimConfig default_sim_config() {
  static const SimConfig cfg = apply_config(parse_config(default_config_text()), SimConfig{});
  return cfg;
}

SimConfig sim_config_from_text(std::string_view text) {
  return apply_config(parse_config(text), default_sim_config());
}

SimConfig load_sim_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SimError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return sim_config_from_text(ss.str());
}

}  // namespace ffr
