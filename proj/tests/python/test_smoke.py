import math

import pytest

import ca2d

LOG2 = math.log(2.0)


def test_version():
    assert ca2d.__version__


def test_rule_info():
    info = ca2d.rule_info("F3")
    assert info["q"] == 2
    assert info["radius"] == 1
    assert info["linear"]
    with pytest.raises(ValueError):
        ca2d.rule_info("F9")


def test_delta_step_f3():
    ones = ca2d.step_delta("F3", half=6, steps=1)
    assert sorted(ones) == [(-1, 0), (0, -1)]


def test_step_random_deterministic():
    a = ca2d.step_random("F3", 32, 32, steps=4, seed=9)
    b = ca2d.step_random("F3", 32, 32, steps=4, seed=9)
    assert a == b


def test_profile_closed_form():
    p = ca2d.profile("F3", n=64, angles=64)
    for theta, lh in zip(p["angles"], p["lambda_hat"]):
        expect = max(0.0, math.cos(theta), math.sin(theta))
        assert expect - 1e-9 <= lh <= expect + 2.0 / 64


def test_rank_golden():
    assert ca2d.trajectory_rank("F3", p=2, n=1) == 7
    assert ca2d.trajectory_rank("F3", p=4, n=6) == 16 + 7 * 6
    assert ca2d.trajectory_rank("identity", p=3, n=5) == 9


def test_afe_golden():
    est = ca2d.afe_rank("F3", p_max=6, n_max=12)
    assert est["afe_stabilized"]
    assert abs(est["afe_proxy"] - 2 * LOG2) < 1e-12
    assert abs(ca2d.afe_rank("F1")["afe_proxy"] - LOG2) < 1e-12


def test_shift_entropy():
    assert abs(ca2d.shift_entropy([0.5, 0.5]) - LOG2) < 1e-15
    assert abs(ca2d.shift_entropy([0.5, 0.25, 0.25]) - 1.5 * LOG2) < 1e-15


def test_bound_report_f3():
    rep = ca2d.bound_report("F3", n=64, angles=64)
    assert rep["lambda_R"] == pytest.approx(4.0)
    assert rep["lambda_T_quadrant"] == pytest.approx(
        math.pi / 8 + 0.25 + math.sqrt(2.0) + math.pi / 2, abs=0.03
    )
    assert rep["all_pass"]
    assert rep["verdicts"]["afe_le_integral_quadrant"]


def test_bound_report_deterministic():
    a = ca2d.bound_report("F3", n=32, angles=32, seed=7)
    b = ca2d.bound_report("F3", n=32, angles=32, seed=7)
    assert a == b


def test_surfaces():
    s = ca2d.surfaces("F3", n=16)
    assert s["T_star"] <= s["R_area"] + 4 * 16  # T* clipped inside R_n cells
    assert 0.9 <= s["ratio"] <= 1.0
