#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "ffr/simcore.hpp"

namespace ffr {

// One `[name]` block: `key = value` entries and free-form whitespace-separated rows.
struct ConfigSection {
  std::map<std::string, std::string> values;
  std::vector<std::vector<std::string>> rows;
  std::vector<int> row_lines;
};

// Parsed structured-text config. Comments start with '#'.
struct ConfigDocument {
  std::map<std::string, ConfigSection> sections;
  bool has(const std::string& name) const { return sections.count(name) > 0; }
};

ConfigDocument parse_config(std::string_view text);

// Parses a number with an optional `deg` suffix (converted to radians).
double parse_number(const std::string& token);

// Applies every section present in `doc` on top of `base`. Layout sections replace the
// corresponding lists wholesale.
SimConfig apply_config(const ConfigDocument& doc, SimConfig base);

SimConfig default_sim_config();
SimConfig sim_config_from_text(std::string_view text);
SimConfig load_sim_config(const std::string& path);

// Text of the shipped defaults; also installed as configs/default.conf and
// configs/default_arena.txt.
std::string_view default_arena_text();
std::string_view default_config_text();

}  // namespace ffr
