#include <fstream>
#include <sstream>

#include "doctest.h"
#include "ffr/config.hpp"

using namespace ffr;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

TEST_CASE("shipped config files match the embedded defaults") {
  CHECK(slurp(FFR_CONFIG_DIR "/default.conf") == std::string(default_config_text()));
  CHECK(slurp(FFR_CONFIG_DIR "/default_arena.txt") == std::string(default_arena_text()));
}

TEST_CASE("default config values") {
  const SimConfig c = load_sim_config(FFR_CONFIG_DIR "/default.conf");
  CHECK(c.dt == 0.001);
  CHECK(c.t_max_find == 300.0);
  CHECK(c.t_max_return == 120.0);
  CHECK(c.vehicle.mass == 2.0);
  CHECK(c.vehicle.wheel_radius == 0.03);
  CHECK(c.vehicle.track_width == 0.20);
  CHECK(c.motor.K_i == 0.05);
  CHECK(c.motor.R_a == 2.0);
  CHECK(c.motor.L_a == 0.0);
  CHECK(c.sensors.ir.table.size() == 8);
  CHECK(c.sensors.ir.table.front() == std::pair{0.10, 2.25});
  CHECK(c.sensors.flame.constant == 0.0125);
  CHECK(c.sensors.flame.fov == doctest::Approx(std::numbers::pi / 4));
  CHECK(c.navigator.tour == std::vector<int>{1, 2, 3, 4});
  CHECK(c.navigator.blocked_threshold == 0.25);
  CHECK(c.arena.walls.size() == 13);
  CHECK(c.arena.home_heading == doctest::Approx(std::numbers::pi / 2));
  CHECK(check_config(c).empty());
}

TEST_CASE("a layout file alone is a valid config") {
  const SimConfig c = load_sim_config(FFR_CONFIG_DIR "/default_arena.txt");
  CHECK(check_config(c).empty());
  CHECK(c.arena.rooms.size() == 4);
}

TEST_CASE("parse_number") {
  CHECK(parse_number("1.5") == 1.5);
  CHECK(parse_number("90deg") == doctest::Approx(std::numbers::pi / 2));
  CHECK(parse_number("-45deg") == doctest::Approx(-std::numbers::pi / 4));
  CHECK(parse_number("1e-5") == 1e-5);
  CHECK_THROWS_AS(parse_number("abc"), SimError);
  CHECK_THROWS_AS(parse_number("1.5x"), SimError);
  CHECK_THROWS_AS(parse_number("nan"), SimError);
}

TEST_CASE("overrides apply on top of the defaults") {
  const SimConfig c = sim_config_from_text("[sim]\ndt = 0.002\nseed = 11\n[navigator]\ndoor_side = left\n");
  CHECK(c.dt == 0.002);
  CHECK(c.seed == 11);
  CHECK(c.navigator.door_side == Side::Left);
  CHECK(c.vehicle.mass == 2.0);
}

TEST_CASE("malformed configs are rejected") {
  CHECK_THROWS_AS(sim_config_from_text("[nonsense]\na = 1\n"), SimError);
  CHECK_THROWS_AS(sim_config_from_text("[sim]\nbogus = 1\n"), SimError);
  CHECK_THROWS_AS(sim_config_from_text("dt = 1\n"), SimError);
  CHECK_THROWS_AS(sim_config_from_text("[sim\n"), SimError);
  CHECK_THROWS_AS(sim_config_from_text("[sim]\ndt = fast\n"), SimError);
  CHECK_THROWS_AS(sim_config_from_text("[walls]\n0 0 1\n"), SimError);
  CHECK_THROWS_AS(sim_config_from_text("[vehicle]\n1 2 3\n"), SimError);
  CHECK_THROWS_AS(sim_config_from_text("[navigator]\ndoor_side = up\n"), SimError);
  CHECK_THROWS_AS(load_sim_config("/nonexistent/ffr.conf"), SimError);
}

TEST_CASE("semantic violations are reported, not thrown") {
  const SimConfig c = sim_config_from_text("[sim]\ndt = 0\n[vehicle]\nmass = -1\n");
  const auto v = check_config(c);
  CHECK(v.size() >= 2);
}
