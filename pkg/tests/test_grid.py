"""Grid solver: packet construction, stepping, expectations, overlap."""

import cmath
import math

import numpy as np
import pytest

from qfho.classical import PhysicalParams
from qfho.errors import NotNormalized, PacketTouchesBoundary
from qfho.force import Sinusoid, Zero
from qfho.grid import (
    Grid,
    WaveFunction,
    evolve,
    expectation_p,
    expectation_q,
    make_gaussian,
    overlap,
    step,
)

NATURAL = PhysicalParams(1.0, 1.0, 1.0)
REF_GRID = Grid(-20.0, 20.0, 2048)


def test_grid_validation():
    with pytest.raises(ValueError):
        Grid(1.0, -1.0, 64)
    with pytest.raises(ValueError):
        Grid(-1.0, 1.0, 100)  # not a power of two
    with pytest.raises(ValueError):
        Grid(-1.0, 1.0, 8)  # too small
    g = Grid(-20.0, 20.0, 2048)
    assert g.dx == pytest.approx(40.0 / 2048)
    assert len(g.xs) == 2048
    assert g.xs[0] == -20.0


def test_make_gaussian_normalized_and_centered():
    wf = make_gaussian(REF_GRID, 1.0, 2.0, 1.0 / math.sqrt(2.0), 1.0)
    assert abs(wf.norm() - 1.0) < 1e-12
    assert expectation_q(wf) == pytest.approx(1.0, abs=1e-10)
    assert expectation_p(wf, 1.0) == pytest.approx(2.0, abs=1e-10)


def test_make_gaussian_symmetric_packet():
    wf = make_gaussian(REF_GRID, 0.0, 0.0, 1.0, 1.0)
    assert expectation_q(wf) == pytest.approx(0.0, abs=1e-12)
    assert expectation_p(wf, 1.0) == pytest.approx(0.0, abs=1e-12)
    # purely real up to the global (unit) phase
    assert np.max(np.abs(wf.amps.imag)) < 1e-15


def test_make_gaussian_fast_packet():
    wf = make_gaussian(REF_GRID, 0.0, 5.0, 1.0, 1.0)
    assert expectation_p(wf, 1.0) == pytest.approx(5.0, abs=1e-10)


def test_make_gaussian_boundary_guard():
    with pytest.raises(PacketTouchesBoundary):
        make_gaussian(REF_GRID, 18.0, 0.0, 1.0, 1.0)  # closer than 6 sigma
    with pytest.raises(ValueError):
        make_gaussian(REF_GRID, 0.0, 0.0, -1.0, 1.0)


def test_ground_state_density_is_stationary_and_phase_rotates():
    """The coherent-width packet at the origin is the stationary ground
    state: density frozen, global phase advancing at omega/2."""
    sigma = math.sqrt(0.5)  # sqrt(hbar / (2 m w))
    wf0 = make_gaussian(REF_GRID, 0.0, 0.0, sigma, 1.0)
    t_end = 1.0
    result = evolve(NATURAL, Zero(), wf0, t_end, 1e-3)
    # the splitting deforms the density only at O(dt^2); observed ~5e-8
    assert np.max(np.abs(result.final.density() - wf0.density())) < 1e-6
    ov = overlap(wf0, result.final)
    assert abs(ov) == pytest.approx(1.0, abs=1e-12)
    assert cmath.phase(ov) == pytest.approx(-0.5 * t_end, abs=1e-6)


def test_norm_is_exactly_preserved():
    wf = make_gaussian(REF_GRID, 1.0, 0.0, 1.0 / math.sqrt(2.0), 1.0)
    result = evolve(NATURAL, Sinusoid(0.5, 0.8, 0.0), wf, 1.0, 1e-3)
    assert abs(result.final.norm() - 1.0) < 1e-13


def test_single_step_matches_evolve():
    wf = make_gaussian(REF_GRID, 1.0, 0.0, 1.0, 1.0)
    stepped = step(NATURAL, Sinusoid(0.5, 0.8, 0.0), wf, 1e-3)
    evolved = evolve(NATURAL, Sinusoid(0.5, 0.8, 0.0), wf, 1e-3, 1e-3).final
    assert np.max(np.abs(stepped.amps - evolved.amps)) < 1e-15
    assert stepped.t == pytest.approx(1e-3)


def test_stepping_is_second_order_in_dt():
    """Richardson self-comparison on a driven run: halving dt shrinks the
    wavefunction error about 4x."""
    profile = Sinusoid(0.7, 1.3, 0.4)
    wf = make_gaussian(REF_GRID, 0.5, 0.3, 1.0 / math.sqrt(2.0), 1.0)
    t_end = 1.0

    def final(dt):
        return evolve(NATURAL, profile, wf, t_end, dt).final.amps

    reference = final(1.25e-4)
    err_coarse = np.max(np.abs(final(1e-3) - reference))
    err_fine = np.max(np.abs(final(5e-4) - reference))
    assert err_coarse / err_fine >= 3.5
    assert err_coarse / err_fine <= 6.0


def test_ehrenfest_relations_hold_in_log():
    """Logged means obey d<q>/dt = <p>/m and d<p>/dt = f - m w^2 <q>
    up to the scheme's O(dt^2)."""
    profile = Sinusoid(0.5, 0.8, 0.0)
    wf = make_gaussian(REF_GRID, 1.0, 0.0, 1.0 / math.sqrt(2.0), 1.0)
    result = evolve(NATURAL, profile, wf, 2.0, 1e-3, log_every=10)
    rows = result.log
    max_rq = max_rp = 0.0
    for prev, mid, nxt in zip(rows, rows[1:], rows[2:]):
        dt2 = nxt.t - prev.t
        if abs(dt2 - 0.02) > 1e-12:
            continue  # skip the shortened tail pair
        dq = (nxt.q_mean - prev.q_mean) / dt2
        dp = (nxt.p_mean - prev.p_mean) / dt2
        f = 0.5 * math.sin(0.8 * mid.t)
        max_rq = max(max_rq, abs(dq - mid.p_mean))
        max_rp = max(max_rp, abs(dp - f + mid.q_mean))
    # residual dominated by the centered-difference O(dt_log^2) term
    assert max_rq < 5e-4
    assert max_rp < 5e-4


def test_boundary_guard_fires_when_packet_escapes():
    grid = Grid(-6.0, 6.0, 256)
    wf = make_gaussian(grid, 0.0, 4.0, 0.8, 1.0)  # fast packet, small box
    with pytest.raises(PacketTouchesBoundary):
        evolve(NATURAL, Zero(), wf, 3.0, 1e-2, log_every=5)


def test_expectations_require_normalization():
    wf = make_gaussian(REF_GRID, 0.0, 0.0, 1.0, 1.0)
    doubled = WaveFunction(REF_GRID, 2.0 * wf.amps, 0.0)
    with pytest.raises(NotNormalized):
        expectation_q(doubled)
    with pytest.raises(NotNormalized):
        expectation_p(doubled, 1.0)


def test_overlap_trivial_cases():
    wf = make_gaussian(REF_GRID, 1.0, 2.0, 1.0, 1.0)
    assert abs(overlap(wf, wf)) == pytest.approx(1.0, abs=1e-12)
    even = make_gaussian(REF_GRID, 0.0, 0.0, 1.0, 1.0)
    xs = REF_GRID.xs
    odd_amps = xs * np.exp(-0.25 * xs ** 2)
    odd_amps = odd_amps / math.sqrt(float(np.sum(np.abs(odd_amps) ** 2)) * REF_GRID.dx)
    odd = WaveFunction(REF_GRID, odd_amps, 0.0)
    assert abs(overlap(even, odd)) < 1e-12  # parity
    with pytest.raises(ValueError):
        overlap(wf, make_gaussian(Grid(-10.0, 10.0, 1024), 0.0, 0.0, 1.0, 1.0))


def test_grid_refinement_certificate():
    """Doubling N leaves the final state essentially unchanged on the
    reference scenario (the N=2048 resolution is adequate)."""
    profile = Sinusoid(0.5, 0.8, 0.0)
    t_end = 0.8 * math.pi
    finals = {}
    for n in (2048, 4096):
        grid = Grid(-20.0, 20.0, n)
        wf = make_gaussian(grid, 1.0, 0.0, 1.0 / math.sqrt(2.0), 1.0)
        finals[n] = evolve(NATURAL, profile, wf, t_end, 1e-3).final
    coarse = finals[2048]
    fine = finals[4096]
    # the fine grid contains the coarse points exactly
    sub = fine.amps[::2]
    sub = sub / math.sqrt(float(np.sum(np.abs(sub) ** 2)) * coarse.grid.dx)
    fidelity = abs(np.sum(np.conj(sub) * coarse.amps) * coarse.grid.dx)
    assert 1.0 - fidelity < 1e-8
