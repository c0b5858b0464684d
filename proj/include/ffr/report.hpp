#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "ffr/simcore.hpp"

namespace ffr {

// Header `t,x,y,theta,u,r,omega_l,omega_r,task`, one row per recorded sample.
void write_trajectory_csv(std::ostream& os, const SimResult& r);

// One JSON object per line: {"t":..,"kind":..,"payload":..}.
void write_events_jsonl(std::ostream& os, const SimResult& r);

struct SummaryColumn {
  int room = 0;
  double time_to_flame = -1.0;  // negative prints as "-"
  double total_time = -1.0;
};

// Two-row elapsed-time table, 0.1 s precision.
std::string format_summary_table(const std::vector<SummaryColumn>& columns);

// Fixed-point text of a time at 0.1 s, or "-" when negative.
std::string format_time(double seconds);

}  // namespace ffr
