#include "ffr/report.hpp"

#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace ffr {

namespace {

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  std::string s(buf);
  // "-0.000000" and "0.000000" must serialize identically.
  if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

}  // namespace

void write_trajectory_csv(std::ostream& os, const SimResult& r) {
  os << "t,x,y,theta,u,r,omega_l,omega_r,task\n";
  for (const auto& s : r.trajectory) {
    os << fixed(s.t, 3) << ',' << fixed(s.pose.x, 6) << ',' << fixed(s.pose.y, 6) << ','
       << fixed(s.pose.theta, 6) << ',' << fixed(s.u, 6) << ',' << fixed(s.r, 6) << ','
       << fixed(s.omega_l, 6) << ',' << fixed(s.omega_r, 6) << ',' << to_string(s.task) << '\n';
  }
}

void write_events_jsonl(std::ostream& os, const SimResult& r) {
  for (const auto& e : r.events) {
    os << "{\"t\":" << fixed(e.t, 3) << ",\"kind\":" << nlohmann::json(e.kind).dump()
       << ",\"payload\":" << nlohmann::json(e.payload).dump() << "}\n";
  }
}

std::string format_time(double seconds) { return seconds < 0.0 ? "-" : fixed(seconds, 1); }

std::string format_summary_table(const std::vector<SummaryColumn>& columns) {
  std::ostringstream os;
  char buf[128];
  std::snprintf(buf, sizeof buf, "%-26s", "Candle room");
  os << buf;
  for (const auto& c : columns) {
    std::snprintf(buf, sizeof buf, "%10s", ("Room " + std::to_string(c.room)).c_str());
    os << buf;
  }
  os << '\n';
  std::snprintf(buf, sizeof buf, "%-26s", "Time to extinguish (s)");
  os << buf;
  for (const auto& c : columns) {
    std::snprintf(buf, sizeof buf, "%10s", format_time(c.time_to_flame).c_str());
    os << buf;
  }
  os << '\n';
  std::snprintf(buf, sizeof buf, "%-26s", "Total time to home (s)");
  os << buf;
  for (const auto& c : columns) {
    std::snprintf(buf, sizeof buf, "%10s", format_time(c.total_time).c_str());
    os << buf;
  }
  os << '\n';
  return os.str();
}

}  // namespace ffr
