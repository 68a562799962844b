"""Evolution parameters, the symplectic map, and the Heisenberg flow."""

import math

import numpy as np
import pytest

from qfho.classical import PhysicalParams, closed_form_constant_force, integrate_trajectory
from qfho.errors import TimeOutOfRange
from qfho.evolution import (
    ehrenfest_expectations,
    evolution_params,
    heisenberg_point,
    symplectic_map,
)
from qfho.force import Constant, Zero

NATURAL = PhysicalParams(1.0, 1.0, 1.0)


def _params_at(params, profile, t, t_end=None, h=1e-3):
    traj = integrate_trajectory(params, profile, t_end if t_end else max(t, h), h)
    return evolution_params(params, traj, t)


def test_initial_conditions():
    ep = _params_at(NATURAL, Zero(), 0.0, t_end=1.0)
    assert (ep.angle, ep.shear) == (0.0, 1.0)
    assert (ep.shift_q, ep.shift_p, ep.action) == (0.0, 0.0, 0.0)


def test_angle_and_shear_are_constructed():
    params = PhysicalParams(1.0, 2.0, 1.0)
    ep = _params_at(params, Zero(), math.pi / 4, t_end=1.0)
    assert ep.angle == 2.0 * (math.pi / 4)  # exactly omega * t
    assert ep.shear == 2.0
    assert (ep.shift_q, ep.shift_p, ep.action) == (0.0, 0.0, 0.0)


def test_constant_force_parameters_from_oracle():
    ep = _params_at(NATURAL, Constant(1.0), math.pi, t_end=math.pi)
    want = closed_form_constant_force(NATURAL, 1.0, math.pi)
    assert ep.angle == math.pi
    assert ep.shift_q == pytest.approx(want[0], abs=1e-8)  # = 2
    assert ep.shift_p == pytest.approx(want[1], abs=1e-8)  # = 0
    assert ep.action == pytest.approx(want[2], abs=1e-8)


def test_time_out_of_range():
    traj = integrate_trajectory(NATURAL, Zero(), 1.0, 1e-2)
    with pytest.raises(TimeOutOfRange):
        evolution_params(NATURAL, traj, 2.0)


def test_map_at_origin_is_exactly_identity():
    smap = symplectic_map(_params_at(NATURAL, Zero(), 0.0, t_end=1.0))
    assert np.array_equal(smap.matrix, np.eye(2))
    assert np.array_equal(smap.shift, np.zeros(2))


def test_quarter_period_matrix_entries():
    params = PhysicalParams(1.5, 2.0, 1.0)  # shear scale = 3
    traj = integrate_trajectory(params, Zero(), 2.0, 1e-3)
    ep = evolution_params(params, traj, math.pi / 4)  # angle = pi/2
    smap = symplectic_map(ep)
    want = np.array([[math.cos(math.pi / 2), 1.0 / 3.0],
                     [-3.0, math.cos(math.pi / 2)]])
    assert np.allclose(smap.matrix, want, atol=1e-15)


def test_determinant_is_one_at_random_times():
    rng = np.random.default_rng(42)
    traj = integrate_trajectory(NATURAL, Constant(0.7), 10.0, 1e-2)
    for t in rng.uniform(0.0, 10.0, size=1000):
        smap = symplectic_map(evolution_params(NATURAL, traj, float(t)))
        assert abs(smap.det - 1.0) < 1e-12


def test_free_maps_compose_as_a_group():
    """With no drive, the map at t1+t2 equals the composition of the maps."""
    params = PhysicalParams(1.2, 0.9, 1.0)
    traj = integrate_trajectory(params, Zero(), 12.0, 1e-2)
    rng = np.random.default_rng(7)
    for t1, t2 in rng.uniform(0.0, 6.0, size=(200, 2)):
        m1 = symplectic_map(evolution_params(params, traj, float(t1)))
        m2 = symplectic_map(evolution_params(params, traj, float(t2)))
        m12 = symplectic_map(evolution_params(params, traj, float(t1) + float(t2)))
        assert np.allclose(m2.matrix @ m1.matrix, m12.matrix, atol=1e-12)
        assert np.allclose(m2.shift, np.zeros(2), atol=0.0)


def test_heisenberg_identity_map():
    smap = symplectic_map(_params_at(NATURAL, Zero(), 0.0, t_end=1.0))
    assert heisenberg_point(smap, 1.0, 2.0) == (1.0, 2.0)


def test_heisenberg_quarter_period_rotation():
    # by hand: angle pi/2 at unit shear maps (1, 0) -> (0, -1)
    smap = symplectic_map(_params_at(NATURAL, Zero(), math.pi / 2, t_end=2.0))
    q, p = heisenberg_point(smap, 1.0, 0.0)
    assert q == pytest.approx(0.0, abs=1e-15)
    assert p == pytest.approx(-1.0, abs=1e-15)


def test_heisenberg_constant_force_full_period():
    """After one full period of a constant drive the shifts return to zero,
    so phase-space points come back to themselves."""
    t = 2.0 * math.pi
    ep = _params_at(NATURAL, Constant(1.0), t, t_end=t)
    smap = symplectic_map(ep)
    q, p = heisenberg_point(smap, 0.3, -0.8)
    assert q == pytest.approx(0.3, abs=1e-8)
    assert p == pytest.approx(-0.8, abs=1e-8)


def test_heisenberg_flow_is_affine_linear():
    ep = _params_at(NATURAL, Constant(0.5), 1.3, t_end=2.0)
    smap = symplectic_map(ep)
    shift = (smap.shift[0], smap.shift[1])
    a, b = 0.7, -1.9
    x1, x2 = (0.4, 1.1), (-0.6, 0.2)
    lhs = heisenberg_point(smap, a * x1[0] + b * x2[0], a * x1[1] + b * x2[1])
    y1 = heisenberg_point(smap, *x1)
    y2 = heisenberg_point(smap, *x2)
    rhs = tuple(a * (u1 - s) + b * (u2 - s) + s * 0.0
                for u1, u2, s in zip(y1, y2, shift))
    # linear part: subtract the shift before combining
    assert lhs[0] - shift[0] == pytest.approx(rhs[0], abs=1e-12)
    assert lhs[1] - shift[1] == pytest.approx(rhs[1], abs=1e-12)


def test_ehrenfest_is_the_same_arithmetic():
    ep = _params_at(NATURAL, Constant(0.5), 1.3, t_end=2.0)
    smap = symplectic_map(ep)
    assert ehrenfest_expectations(smap, 1.0, 0.0) == heisenberg_point(smap, 1.0, 0.0)
