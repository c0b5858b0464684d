#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "ffr/config.hpp"
#include "ffr/report.hpp"
#include "ffr/simcore.hpp"

namespace py = pybind11;
using namespace ffr;

namespace {

SimConfig config_from(const std::optional<std::string>& path) {
  return path ? load_sim_config(*path) : default_sim_config();
}

std::string trajectory_csv(const SimResult& r) {
  std::ostringstream os;
  write_trajectory_csv(os, r);
  return os.str();
}

std::string events_jsonl(const SimResult& r) {
  std::ostringstream os;
  write_events_jsonl(os, r);
  return os.str();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Fire-fighting robot maze simulator";

  py::register_exception<SimError>(m, "SimError", PyExc_ValueError);

  py::class_<Pose>(m, "Pose")
      .def(py::init<double, double, double>(), py::arg("x") = 0.0, py::arg("y") = 0.0,
           py::arg("theta") = 0.0)
      .def_readwrite("x", &Pose::x)
      .def_readwrite("y", &Pose::y)
      .def_readwrite("theta", &Pose::theta)
      .def("__repr__", [](const Pose& p) {
        std::ostringstream os;
        os << "Pose(" << p.x << ", " << p.y << ", " << p.theta << ")";
        return os.str();
      });

  py::class_<VehicleParams>(m, "VehicleParams")
      .def(py::init<>())
      .def_readwrite("wheel_radius", &VehicleParams::wheel_radius)
      .def_readwrite("track_width", &VehicleParams::track_width)
      .def_readwrite("mass", &VehicleParams::mass)
      .def_readwrite("gravity", &VehicleParams::gravity)
      .def_readwrite("k", &VehicleParams::k)
      .def_readwrite("L_r", &VehicleParams::L_r)
      .def_readwrite("L_2", &VehicleParams::L_2)
      .def_readwrite("mu", &VehicleParams::mu)
      .def_readwrite("wheel_inertia", &VehicleParams::wheel_inertia);

  py::class_<MotorParams>(m, "MotorParams")
      .def(py::init<>())
      .def_readwrite("K_i", &MotorParams::K_i)
      .def_readwrite("K_b", &MotorParams::K_b)
      .def_readwrite("R_a", &MotorParams::R_a)
      .def_readwrite("L_a", &MotorParams::L_a)
      .def_readwrite("J_m", &MotorParams::J_m)
      .def_readwrite("B_m", &MotorParams::B_m);

  py::class_<DriveState>(m, "DriveState")
      .def(py::init<double, double, double, double>(), py::arg("omega_r") = 0.0,
           py::arg("omega_l") = 0.0, py::arg("i_a_r") = 0.0, py::arg("i_a_l") = 0.0)
      .def_readwrite("omega_r", &DriveState::omega_r)
      .def_readwrite("omega_l", &DriveState::omega_l)
      .def_readwrite("i_a_r", &DriveState::i_a_r)
      .def_readwrite("i_a_l", &DriveState::i_a_l);

  m.def("body_velocity", [](const DriveState& d, const VehicleParams& p) {
    const BodyVelocity b = body_velocity(d, p);
    return py::make_tuple(b.u, b.v, b.r);
  }, "(u, v, r) for the given wheel speeds");
  m.def("world_rates", [](const Pose& pose, const DriveState& d, const VehicleParams& p) {
    const WorldRates w = world_rates(pose, d, p);
    return py::make_tuple(w.x_dot, w.y_dot, w.theta_dot);
  });
  m.def("drive_normal_force", &drive_normal_force);
  m.def("friction_torque_load", &friction_torque_load, py::arg("params"), py::arg("alpha"));
  m.def("step_drive", &step_drive, py::arg("state"), py::arg("E_a_r"), py::arg("E_a_l"),
        py::arg("vehicle"), py::arg("motor"), py::arg("dt"));
  m.def("advance_pose", &advance_pose, py::arg("pose"), py::arg("state"), py::arg("vehicle"),
        py::arg("dt"));

  py::class_<SimConfig>(m, "SimConfig")
      .def_readwrite("dt", &SimConfig::dt)
      .def_readwrite("t_max_find", &SimConfig::t_max_find)
      .def_readwrite("t_max_return", &SimConfig::t_max_return)
      .def_readwrite("record_every", &SimConfig::record_every)
      .def_readwrite("candle_room", &SimConfig::candle_room)
      .def_readwrite("seed", &SimConfig::seed)
      .def_readwrite("vehicle", &SimConfig::vehicle)
      .def_readwrite("motor", &SimConfig::motor);

  m.def("default_config", &default_sim_config);
  m.def("load_config", &load_sim_config, py::arg("path"));
  m.def("config_from_text", [](const std::string& text) { return sim_config_from_text(text); });
  m.def("default_config_text", [] { return std::string(default_config_text()); });
  m.def("check_config", [](const SimConfig& c) { return check_config(c); },
        "List of violated invariants; empty when the config can run");

  py::enum_<Outcome>(m, "Outcome")
      .value("Success", Outcome::Success)
      .value("CollisionFail", Outcome::CollisionFail)
      .value("TimeoutFind", Outcome::TimeoutFind)
      .value("TimeoutReturn", Outcome::TimeoutReturn);

  py::class_<Event>(m, "Event")
      .def_readonly("t", &Event::t)
      .def_readonly("kind", &Event::kind)
      .def_readonly("payload", &Event::payload);

  py::class_<SimResult>(m, "SimResult")
      .def_readonly("outcome", &SimResult::outcome)
      .def_readonly("time_to_flame", &SimResult::time_to_flame)
      .def_readonly("total_time", &SimResult::total_time)
      .def_readonly("collisions", &SimResult::collisions)
      .def_readonly("fan_on_time", &SimResult::fan_on_time)
      .def_readonly("events", &SimResult::events)
      .def_readonly("ticks", &SimResult::ticks)
      .def_property_readonly("return_time", &SimResult::return_time)
      .def_property_readonly("candle", [](const SimResult& r) { return py::make_tuple(r.candle.x, r.candle.y); })
      .def_property_readonly("trajectory", [](const SimResult& r) {
        py::list rows;
        for (const auto& s : r.trajectory) {
          rows.append(py::make_tuple(s.t, s.pose.x, s.pose.y, s.pose.theta, s.u, s.r, s.omega_l,
                                     s.omega_r, to_string(s.task)));
        }
        return rows;
      })
      .def("trajectory_csv", &trajectory_csv)
      .def("events_jsonl", &events_jsonl);

  m.def("run", [](int room, std::optional<std::uint64_t> seed, std::optional<std::string> config) {
          SimConfig c = config_from(config);
          c.candle_room = room;
          if (seed) c.seed = *seed;
          py::gil_scoped_release unlock;
          return run(c);
        },
        py::arg("room"), py::arg("seed") = py::none(), py::arg("config") = py::none(),
        "Run one simulation with the candle in `room`.");
  m.def("run_config", [](const SimConfig& c) {
    py::gil_scoped_release unlock;
    return run(c);
  }, py::arg("config"));
  m.def("campaign",
        [](std::vector<int> rooms, std::vector<std::uint64_t> seeds, std::optional<std::string> config,
           unsigned workers) {
          const SimConfig c = config_from(config);
          std::vector<RunKey> keys;
          for (auto s : seeds) {
            for (int r : rooms) keys.push_back({r, s});
          }
          std::vector<SimResult> out;
          {
            py::gil_scoped_release unlock;
            out = run_batch(c, keys, workers);
          }
          py::list rows;
          for (std::size_t i = 0; i < keys.size(); ++i) {
            rows.append(py::make_tuple(keys[i].room, keys[i].seed, out[i]));
          }
          return rows;
        },
        py::arg("rooms") = std::vector<int>{1, 2, 3, 4}, py::arg("seeds") = std::vector<std::uint64_t>{7},
        py::arg("config") = py::none(), py::arg("workers") = 1,
        "List of (room, seed, SimResult) in input order.");
  m.def("summary_table", [](const std::vector<SimResult>& results, const std::vector<int>& rooms) {
    if (results.size() != rooms.size()) throw SimError("one room id per result");
    std::vector<SummaryColumn> cols;
    for (std::size_t i = 0; i < results.size(); ++i) {
      const bool ok = results[i].outcome == Outcome::Success;
      cols.push_back({rooms[i], results[i].time_to_flame, ok ? results[i].total_time : -1.0});
    }
    return format_summary_table(cols);
  });
}
