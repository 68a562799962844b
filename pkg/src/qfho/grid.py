"""Independent grid solver for the driven-oscillator Schrodinger equation.

This is the ground truth the closed forms are tested against: a Strang
split-step spectral scheme on a uniform periodic grid.  Each step applies a
half-step potential phase, a full kinetic step in momentum space, and a
second half-step potential phase; the drive is sampled at the step midpoint,
which keeps the scheme second order in dt for time-dependent forcing.  Every
factor is a pure phase, so the scheme is exactly unitary up to rounding.

The quadratic potential is smooth, so spatial accuracy is spectral.  A
stability-style bound dt <= 0.5 * dx^2 * m / hbar is conventional for
finite-difference schemes; the spectral scheme does not require it and it is
not enforced.  Periodic wrap-around is controlled by failing loudly when the
packet stops being negligible at the grid edges.
"""

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .classical import PhysicalParams
from .errors import NotNormalized, PacketTouchesBoundary, QfhoError
from .force import ForceProfile, eval_force

__all__ = [
    "Grid",
    "WaveFunction",
    "EvolveResult",
    "LogRow",
    "make_gaussian",
    "step",
    "evolve",
    "expectation_q",
    "expectation_p",
    "overlap",
    "energy",
    "BOUNDARY_TOLERANCE",
]

# |psi| at the outermost grid points must stay below this fraction of the
# peak for the periodic truncation to be trustworthy.
BOUNDARY_TOLERANCE = 1e-10

# expectation values are only meaningful near unit norm; this guards against
# wrong-measure bugs, not against small quadrature drift
_NORM_SLACK = 1e-4


@dataclass(frozen=True)
class Grid:
    """Uniform spatial grid of n points on [x_min, x_max), n a power of two."""

    x_min: float
    x_max: float
    n: int

    def __post_init__(self):
        if not (math.isfinite(self.x_min) and math.isfinite(self.x_max)
                and self.x_min < self.x_max):
            raise ValueError(f"need x_min < x_max, got [{self.x_min!r}, {self.x_max!r}]")
        if self.n < 16 or (self.n & (self.n - 1)) != 0:
            raise ValueError(f"n must be a power of two >= 16, got {self.n!r}")

    @property
    def dx(self) -> float:
        return (self.x_max - self.x_min) / self.n

    @cached_property
    def xs(self) -> np.ndarray:
        xs = self.x_min + self.dx * np.arange(self.n)
        xs.flags.writeable = False
        return xs

    @cached_property
    def ks(self) -> np.ndarray:
        ks = 2.0 * np.pi * np.fft.fftfreq(self.n, d=self.dx)
        ks.flags.writeable = False
        return ks


class WaveFunction:
    """Complex amplitudes on a grid with a time stamp.

    The squared norm is sum(|psi_j|^2) * dx.  Instances own their buffer and
    are immutable after construction.
    """

    def __init__(self, grid: Grid, amps, t: float = 0.0):
        amps = np.array(amps, dtype=np.complex128)
        if amps.shape != (grid.n,):
            raise ValueError(f"expected {grid.n} amplitudes, got shape {amps.shape}")
        amps.flags.writeable = False
        self.grid = grid
        self.amps = amps
        self.t = t

    def norm(self) -> float:
        a = self.amps
        return math.sqrt(float(np.sum(a.real * a.real + a.imag * a.imag)) * self.grid.dx)

    def density(self) -> np.ndarray:
        a = self.amps
        return a.real * a.real + a.imag * a.imag

    def boundary_fraction(self) -> float:
        """max(|psi(edge)|) / max(|psi|); small iff the packet is contained."""
        mags = np.abs(self.amps)
        peak = float(mags.max())
        if peak == 0.0:
            return 0.0
        return float(max(mags[0], mags[-1])) / peak

    def require_contained(self) -> None:
        frac = self.boundary_fraction()
        if frac >= BOUNDARY_TOLERANCE:
            raise PacketTouchesBoundary(
                f"boundary amplitude is {frac:.3e} of peak at t={self.t!r} "
                f"(limit {BOUNDARY_TOLERANCE:.0e})"
            )


def make_gaussian(grid: Grid, q0: float, p0: float, sigma: float,
                  hbar: float) -> WaveFunction:
    """Normalized Gaussian packet centered at (q0, p0).

    psi(x) ~ exp(-(x - q0)^2 / (4 sigma^2) + i p0 x / hbar), so sigma is the
    position-density standard deviation; sigma = sqrt(hbar / (2 m w)) gives
    the coherent (non-spreading) width.  The packet must sit at least
    6 sigma from both edges.
    """
    if not (sigma > 0.0 and math.isfinite(sigma)):
        raise ValueError(f"sigma must be positive, got {sigma!r}")
    if q0 - 6.0 * sigma < grid.x_min or q0 + 6.0 * sigma > grid.x_max:
        raise PacketTouchesBoundary(
            f"packet at q0={q0!r} with sigma={sigma!r} is closer than 6 sigma "
            f"to a grid edge [{grid.x_min!r}, {grid.x_max!r}]"
        )
    x = grid.xs
    amps = np.exp(-((x - q0) ** 2) / (4.0 * sigma * sigma) + 1j * p0 * x / hbar)
    amps /= math.sqrt(float(np.sum(np.abs(amps) ** 2)) * grid.dx)
    return WaveFunction(grid, amps, 0.0)


def _half_potential_phase(params, profile, grid, t_mid, dt_over_2hbar):
    v = 0.5 * params.mass * params.omega ** 2 * grid.xs ** 2 \
        - eval_force(profile, t_mid) * grid.xs
    return np.exp(-1j * dt_over_2hbar * v)


def step(params: PhysicalParams, profile: ForceProfile, wf: WaveFunction,
         dt: float) -> WaveFunction:
    """One Strang split step of size dt; exactly norm-preserving."""
    if not (dt > 0.0 and math.isfinite(dt)):
        raise ValueError(f"dt must be positive, got {dt!r}")
    grid = wf.grid
    half = _half_potential_phase(params, profile, grid, wf.t + 0.5 * dt,
                                 0.5 * dt / params.hbar)
    kinetic = np.exp(-1j * params.hbar * grid.ks ** 2 * dt / (2.0 * params.mass))
    amps = half * wf.amps
    amps = np.fft.ifft(kinetic * np.fft.fft(amps))
    amps *= half
    return WaveFunction(grid, amps, wf.t + dt)


@dataclass(frozen=True)
class LogRow:
    t: float
    norm: float
    q_mean: float
    p_mean: float
    energy: float


@dataclass
class EvolveResult:
    final: WaveFunction
    log: list
    snapshots: list


def evolve(params: PhysicalParams, profile: ForceProfile, wf: WaveFunction,
           t_end: float, dt: float, *, log_every: int = 0,
           snapshot_every: int = 0) -> EvolveResult:
    """Drive the state from wf.t to t_end in steps of dt.

    The last step is shortened to land exactly on t_end.  When
    ``log_every`` > 0, a LogRow is recorded at step 0, every log_every-th
    step, and the final step; ``snapshot_every`` does the same with full
    state copies.  The boundary guard runs at every logged/snapshotted time
    and at the end, raising PacketTouchesBoundary if the packet reaches the
    edges.
    """
    span = t_end - wf.t
    if not (span > 0.0 and math.isfinite(span)):
        raise ValueError(f"t_end={t_end!r} must exceed the state's time {wf.t!r}")
    if not (dt > 0.0 and math.isfinite(dt)):
        raise ValueError(f"dt must be positive, got {dt!r}")
    grid = wf.grid
    n = max(1, int(math.ceil(span / dt - 1e-9)))
    ts = wf.t + dt * np.arange(n + 1)
    ts[-1] = t_end

    x = grid.xs
    v_static = 0.5 * params.mass * params.omega ** 2 * x ** 2
    kin_coef = -1j * params.hbar * grid.ks ** 2 / (2.0 * params.mass)
    kinetic = np.exp(kin_coef * dt)

    log: list[LogRow] = []
    snapshots: list[WaveFunction] = []

    def observe(k, amps):
        state = WaveFunction(grid, amps, float(ts[k]))
        wants_log = log_every > 0 and (k % log_every == 0 or k == n)
        wants_snap = snapshot_every > 0 and (k % snapshot_every == 0 or k == n)
        if wants_log or wants_snap:
            state.require_contained()
        if wants_log:
            log.append(LogRow(state.t, state.norm(), expectation_q(state),
                              expectation_p(state, params.hbar),
                              energy(params, profile, state)))
        if wants_snap:
            snapshots.append(state)
        return state

    amps = wf.amps.copy()
    observe(0, amps)
    for k in range(n):
        h = float(ts[k + 1] - ts[k])
        if k == n - 1 and h != dt:
            kinetic = np.exp(kin_coef * h)
        f_mid = eval_force(profile, float(ts[k]) + 0.5 * h)
        half = np.exp(-1j * (0.5 * h / params.hbar) * (v_static - f_mid * x))
        amps *= half
        amps = np.fft.ifft(kinetic * np.fft.fft(amps))
        amps *= half
        if k + 1 < n:
            observe(k + 1, amps)

    final = observe(n, amps)
    final.require_contained()
    return EvolveResult(final, log, snapshots)


def _require_normalized(wf: WaveFunction) -> None:
    nrm = wf.norm()
    if abs(nrm * nrm - 1.0) > _NORM_SLACK:
        raise NotNormalized(f"squared norm {nrm * nrm!r} is not within "
                            f"{_NORM_SLACK} of 1")


def expectation_q(wf: WaveFunction) -> float:
    """<q> = sum x |psi|^2 dx; requires a (near-)normalized state."""
    _require_normalized(wf)
    return float(np.sum(wf.grid.xs * wf.density()) * wf.grid.dx)


def expectation_p(wf: WaveFunction, hbar: float) -> float:
    """<p> via the spectral derivative.

    Computes sum conj(psi) (-i hbar d/dx psi) dx and checks that the
    imaginary residue is below 1e-10 before discarding it.
    """
    _require_normalized(wf)
    grid = wf.grid
    dpsi = np.fft.ifft(1j * grid.ks * np.fft.fft(wf.amps))
    val = np.sum(np.conj(wf.amps) * (-1j * hbar) * dpsi) * grid.dx
    if abs(val.imag) >= 1e-10:
        raise QfhoError(
            f"momentum expectation has imaginary residue {val.imag!r}; "
            f"state is inconsistent with the grid"
        )
    return float(val.real)


def overlap(bra: WaveFunction, ket: WaveFunction) -> complex:
    """<bra|ket> = sum conj(bra) ket dx on a shared grid."""
    if bra.grid != ket.grid:
        raise ValueError("overlap requires both states on the same grid")
    return complex(np.sum(np.conj(bra.amps) * ket.amps) * bra.grid.dx)


def energy(params: PhysicalParams, profile: ForceProfile, wf: WaveFunction) -> float:
    """<H> at the state's time stamp (kinetic via spectral derivative)."""
    grid = wf.grid
    kin_density = np.fft.ifft(
        (params.hbar ** 2 * grid.ks ** 2 / (2.0 * params.mass)) * np.fft.fft(wf.amps)
    )
    kin = np.sum(np.conj(wf.amps) * kin_density).real * grid.dx
    v = 0.5 * params.mass * params.omega ** 2 * grid.xs ** 2 \
        - eval_force(profile, wf.t) * grid.xs
    pot = float(np.sum(v * wf.density()) * grid.dx)
    return float(kin + pot)
