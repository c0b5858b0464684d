import math

import pytest

import ffr_sim


def test_kinematics_examples():
    p = ffr_sim.VehicleParams()
    u, v, r = ffr_sim.body_velocity(ffr_sim.DriveState(10, -10), p)
    assert abs(u) < 1e-15 and v == 0 and r == pytest.approx(3.0, abs=1e-12)
    xd, yd, td = ffr_sim.world_rates(ffr_sim.Pose(0, 0, math.pi / 2), ffr_sim.DriveState(10, 10), p)
    assert abs(xd) < 1e-12 and yd == pytest.approx(0.3, abs=1e-12) and td == 0
    assert ffr_sim.drive_normal_force(p) == pytest.approx(2.4525, abs=1e-12)


def test_step_drive_and_pose():
    p, m = ffr_sim.VehicleParams(), ffr_sim.MotorParams()
    d = ffr_sim.step_drive(ffr_sim.DriveState(), 2.0, 2.0, p, m, 1e-3)
    assert d.omega_r > 0 and d.omega_r == d.omega_l
    pose = ffr_sim.advance_pose(ffr_sim.Pose(), ffr_sim.DriveState(10, 10), p, 1.0)
    assert pose.x == pytest.approx(0.3, abs=1e-12)
    with pytest.raises(ffr_sim.SimError):
        ffr_sim.step_drive(ffr_sim.DriveState(), 1.0, 1.0, p, m, 0.0)


def test_default_config_is_valid():
    assert ffr_sim.check_config(ffr_sim.default_config()) == []
    bad = ffr_sim.config_from_text("[sim]\ndt = 0\n")
    assert ffr_sim.check_config(bad)


def test_single_run_succeeds():
    r = ffr_sim.run(1, seed=7)
    assert r.outcome == ffr_sim.Outcome.Success
    assert r.collisions == 0
    assert 0 < r.time_to_flame < r.total_time
    assert r.fan_on_time == pytest.approx(4.0)
    kinds = [e.kind for e in r.events]
    assert kinds.count("extinguished") == 1
    assert r.trajectory[0][0] == 0.0
    assert r.trajectory_csv().startswith("t,x,y,theta,u,r,omega_l,omega_r,task\n")


def test_campaign_is_deterministic_and_ordered():
    a = ffr_sim.campaign([1, 2, 3, 4], [3], workers=2)
    b = ffr_sim.campaign([1, 2, 3, 4], [3], workers=1)
    assert [x[2].trajectory_csv() for x in a] == [x[2].trajectory_csv() for x in b]
    times = [x[2].time_to_flame for x in a]
    assert times == sorted(times)
    table = ffr_sim.summary_table([x[2] for x in a], [x[0] for x in a])
    assert "Room 4" in table


def test_invalid_room():
    with pytest.raises(ffr_sim.SimError):
        ffr_sim.run(5)
