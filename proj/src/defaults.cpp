#include "ffr/config.hpp"

namespace ffr {

namespace {

// Keep in sync with configs/default_arena.txt (checked by the config tests).
constexpr std::string_view kArena = R"(# Four-room contest maze, 2.44 m x 2.44 m. Coordinates in metres, origin at the
# south-west corner, wall centre lines. The hallway is a U around the room block:
# west strip (home at its south end), north strip, east strip.

[arena]
width = 2.44
height = 2.44
wall_thickness = 0.013
stroke_width = 0.025
candle_radius = 0.15
candle_min_depth = 0.33
candle_wall_margin = 0.25
door_clearance = 0.02

[walls]
# x1 y1 x2 y2
# outer boundary
0.00 0.00 2.44 0.00
2.44 0.00 2.44 2.44
2.44 2.44 0.00 2.44
0.00 2.44 0.00 0.00
# west face of the room block, doorways of rooms 1 and 2
0.46 0.00 0.46 0.45
0.46 0.91 0.46 1.28
0.46 1.74 0.46 1.98
# north face, doorway of room 3
0.46 1.98 1.30 1.98
1.76 1.98 1.98 1.98
# east face, doorway of room 4
1.98 1.98 1.98 0.76
1.98 0.30 1.98 0.00
# partitions
1.22 0.00 1.22 1.98
0.46 0.99 1.98 0.99

[doorways]
# room_id x1 y1 x2 y2
1 0.46 0.45 0.46 0.91
2 0.46 1.28 0.46 1.74
3 1.30 1.98 1.76 1.98
4 1.98 0.30 1.98 0.76

[home]
x = 0.23
y = 0.23
radius = 0.15
heading = 90deg

[rooms]
# id followed by polygon vertices
1 0.46 0.00 1.22 0.00 1.22 0.99 0.46 0.99
2 0.46 0.99 1.22 0.99 1.22 1.98 0.46 1.98
3 1.22 0.99 1.98 0.99 1.98 1.98 1.22 1.98
4 1.22 0.00 1.98 0.00 1.98 0.99 1.22 0.99
)";

// Keep in sync with configs/default.conf minus the layout sections.
constexpr std::string_view kRest = R"(
[sim]
dt = 0.001
t_max_find = 300
t_max_return = 120
record_every = 10
candle_room = 1
seed = 7

[vehicle]
wheel_radius = 0.03
track_width = 0.20
mass = 2.0
gravity = 9.81
k = 0.05
L_r = 0.15
L_2 = 0.03
mu = 0.5
wheel_inertia = 1e-5
footprint_half_length = 0.10
footprint_half_width = 0.10

[motor]
K_i = 0.05
K_b = 0.05
R_a = 2.0
L_a = 0
J_m = 1e-5
B_m = 1e-4

[ir_calibration]
# distance_m voltage_V
0.10 2.25
0.20 1.30
0.30 0.92
0.40 0.72
0.50 0.60
0.60 0.52
0.70 0.46
0.80 0.42

[flame]
fov = 45deg
constant = 0.0125
threshold = 0.02
# |dtheta| K
0 1
45deg 0

[mounts]
# name x y bearing (body frame)
CF 0.08 0.00 0deg
FL 0.07 0.07 90deg
FR 0.07 -0.07 -90deg
RL -0.07 0.07 90deg
RR -0.07 -0.07 -90deg
LINE 0.06 0.00
FLAME_L 0.00 0.00 10deg
FLAME_R 0.00 0.00 -10deg

[noise]
ir_voltage_stddev = 0

[navigator]
supply_voltage = 6.0
cruise_voltage = 2.0
turn_voltage = 2.0
turn_creep_voltage = 1.6
turn_taper = 4.0
scan_voltage = 1.8
homing_voltage = 1.9
kp_angle = 7.7
kp_dist = 5.4
kp_heading = 1.8
homing_gain = 0.4
max_steer = 0.4
wall_setpoint = 0.15
blocked_threshold = 0.25
front_standoff = 0.145
opening_travel = 0.295
doorway_overrun = 0.10
entry_travel = 0.20
exit_clearance = 0.30
home_overrun = 0.05
arrive_tolerance = 0.005
tour = 1,2,3,4
door_side = right
homing_stop_range = 0.25
homing_stop_factor = 4
stop_intensity = 0.25
blow_duration = 4.0
scan_angle = 360deg
)";

const std::string kFull = std::string(kArena) + std::string(kRest);

}  // namespace

std::string_view default_arena_text() { return kArena; }
std::string_view default_config_text() { return kFull; }

}  // namespace ffr
