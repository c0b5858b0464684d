// Command-line front end: single runs, the four-room campaign, and config validation.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

#include "CLI11.hpp"
#include "ffr/config.hpp"
#include "ffr/report.hpp"
#include "ffr/simcore.hpp"

namespace fs = std::filesystem;

namespace {

constexpr const char* kConfigEnv = "FFR_SIM_CONFIG";

ffr::SimConfig load(const std::string& path) {
  if (!path.empty()) return ffr::load_sim_config(path);
  if (const char* env = std::getenv(kConfigEnv); env && *env) return ffr::load_sim_config(env);
  return ffr::default_sim_config();
}

std::string stem(int room, std::uint64_t seed) {
  return "room" + std::to_string(room) + "_seed" + std::to_string(seed);
}

std::vector<fs::path> write_outputs(const fs::path& dir, int room, std::uint64_t seed,
                                    const ffr::SimResult& r) {
  fs::create_directories(dir);
  const fs::path traj = dir / (stem(room, seed) + "_trajectory.csv");
  const fs::path events = dir / (stem(room, seed) + "_events.jsonl");
  std::ofstream t(traj, std::ios::binary);
  ffr::write_trajectory_csv(t, r);
  std::ofstream e(events, std::ios::binary);
  ffr::write_events_jsonl(e, r);
  if (!t || !e) throw ffr::SimError("failed writing outputs under " + dir.string());
  return {traj, events};
}

void print_run(int room, std::uint64_t seed, const ffr::SimResult& r) {
  std::cout << "room " << room << " seed " << seed << ": " << ffr::to_string(r.outcome)
            << "  time_to_flame=" << ffr::format_time(r.time_to_flame)
            << " s  total=" << ffr::format_time(r.total_time) << " s\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fire-fighting robot maze simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = "out";

  auto* run_cmd = app.add_subcommand("run", "Run one simulation and write its trajectory and events");
  int room = 1;
  std::uint64_t seed = 7;
  bool seed_given = false;
  run_cmd->add_option("--room", room, "Candle room (1..4)")->required()->check(CLI::Range(1, 4));
  run_cmd->add_option_function<std::uint64_t>("--seed", [&](std::uint64_t s) { seed = s; seed_given = true; },
                                              "Candle placement seed");
  run_cmd->add_option("--config", config_path, "Config file (default: $FFR_SIM_CONFIG or built-in)");
  run_cmd->add_option("--out", out_dir, "Output directory");

  auto* campaign_cmd = app.add_subcommand("campaign", "Run every room/seed pair and print the time table");
  std::vector<int> rooms{1, 2, 3, 4};
  std::vector<std::uint64_t> seeds{7};
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
  campaign_cmd->add_option("--rooms", rooms, "Candle rooms, comma separated")
      ->delimiter(',')
      ->check(CLI::Range(1, 4));
  campaign_cmd->add_option("--seeds", seeds, "Seeds, comma separated")->delimiter(',');
  campaign_cmd->add_option("--config", config_path, "Config file (default: $FFR_SIM_CONFIG or built-in)");
  campaign_cmd->add_option("--out", out_dir, "Output directory");
  campaign_cmd->add_option("--jobs", jobs, "Parallel runs")->check(CLI::PositiveNumber);

  auto* validate_cmd = app.add_subcommand("validate", "Check a config against every invariant");
  validate_cmd->add_option("--config", config_path, "Config file (default: $FFR_SIM_CONFIG or built-in)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*validate_cmd) {
      const ffr::SimConfig cfg = load(config_path);
      const auto violations = ffr::check_config(cfg);
      for (const auto& v : violations) std::cout << "violation: " << v << '\n';
      std::cout << violations.size() << " violations\n";
      return violations.empty() ? 0 : 1;
    }

    if (*run_cmd) {
      ffr::SimConfig cfg = load(config_path);
      cfg.candle_room = room;
      if (seed_given) cfg.seed = seed;
      const ffr::SimResult r = ffr::run(cfg);
      print_run(room, cfg.seed, r);
      for (const auto& p : write_outputs(out_dir, room, cfg.seed, r)) std::cout << "wrote " << p.string() << '\n';
      return r.outcome == ffr::Outcome::Success ? 0 : 1;
    }

    const ffr::SimConfig cfg = load(config_path);
    if (rooms.empty() || seeds.empty()) throw ffr::SimError("campaign needs at least one room and one seed");
    std::vector<ffr::RunKey> keys;
    for (std::uint64_t s : seeds) {
      for (int r : rooms) keys.push_back({r, s});
    }
    const auto results = ffr::run_batch(cfg, keys, jobs);

    bool all_ok = true;
    std::vector<fs::path> written;
    for (std::size_t i = 0; i < keys.size(); ++i) {
      print_run(keys[i].room, keys[i].seed, results[i]);
      all_ok = all_ok && results[i].outcome == ffr::Outcome::Success;
      for (auto& p : write_outputs(out_dir, keys[i].room, keys[i].seed, results[i])) written.push_back(p);
    }
    for (std::uint64_t s : seeds) {
      std::vector<ffr::SummaryColumn> cols;
      for (std::size_t i = 0; i < keys.size(); ++i) {
        if (keys[i].seed != s) continue;
        const auto& r = results[i];
        const bool ok = r.outcome == ffr::Outcome::Success;
        cols.push_back({keys[i].room, r.time_to_flame, ok ? r.total_time : -1.0});
      }
      std::cout << "\nseed " << s << '\n' << ffr::format_summary_table(cols);
    }
    std::cout << '\n';
    for (const auto& p : written) std::cout << "wrote " << p.string() << '\n';
    return all_ok ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "ffr_sim: " << e.what() << '\n';
    return 2;
  }
}
