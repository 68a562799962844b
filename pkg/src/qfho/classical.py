"""Classical shift-parameter dynamics.

The driven oscillator's quantum evolution operator is a harmonic rotation
composed with a position/momentum translation and a global phase.  All of
its time dependence lives in three classical functions: the position shift
``shift_q``, the momentum shift ``shift_p``, and the accumulated action
``action``.  They obey

    d(shift_q)/dt = shift_p / m
    d(shift_p)/dt = f(t) - m w^2 shift_q
    d(action)/dt  = L

with L = shift_p^2/(2m) + m w^2 shift_q^2 / 2 - f shift_q - shift_p * d(shift_q)/dt
and all three starting at zero.  On-shell L equals minus the conventional
driven-oscillator Lagrangian, which is why the propagator carries the phase
exp(-i*action/hbar).

Integration is classical fixed-step RK4 with the action carried as a third
state component, so the action converges at the same fourth order as the
shifts.  Off-sample queries use cubic Hermite interpolation with derivatives
from the exact right-hand side, preserving fourth-order accuracy.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import TimeOutOfRange
from .force import ForceProfile, eval_force

__all__ = [
    "PhysicalParams",
    "TrajectoryPoint",
    "Trajectory",
    "lagrangian",
    "trajectory_rhs",
    "integrate_trajectory",
    "closed_form_constant_force",
]


@dataclass(frozen=True)
class PhysicalParams:
    """Oscillator constants; all strictly positive."""

    mass: float
    omega: float
    hbar: float

    def __post_init__(self):
        for name in ("mass", "omega", "hbar"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0.0):
                raise ValueError(f"{name} must be a positive finite number, got {v!r}")


@dataclass(frozen=True)
class TrajectoryPoint:
    t: float
    shift_q: float
    shift_p: float
    action: float


def lagrangian(params: PhysicalParams, shift_q: float, shift_p: float,
               shift_q_dot: float, force: float) -> float:
    """The action integrand.

    Note the sign convention: along a solution (shift_p = m * shift_q_dot)
    this equals MINUS the conventional classical Lagrangian
    m qdot^2/2 - m w^2 q^2/2 + f q.
    """
    m, w = params.mass, params.omega
    return (
        shift_p * shift_p / (2.0 * m)
        + 0.5 * m * w * w * shift_q * shift_q
        - force * shift_q
        - shift_p * shift_q_dot
    )


def trajectory_rhs(params: PhysicalParams, state, force: float):
    """Time derivatives (d shift_q, d shift_p, d action) at the given state.

    ``state`` is (shift_q, shift_p, action); the action does not feed back.
    """
    shift_q, shift_p = state[0], state[1]
    m, w = params.mass, params.omega
    q_dot = shift_p / m
    p_dot = force - m * w * w * shift_q
    return (q_dot, p_dot, lagrangian(params, shift_q, shift_p, q_dot, force))


class Trajectory:
    """Uniformly sampled solution of the shift-parameter system.

    Samples sit at 0, h, 2h, ...; the final step may be shorter so the last
    sample lands exactly on t_end.  Instances are immutable after
    construction and safe for concurrent reads.
    """

    def __init__(self, params, profile, step, ts, shift_q, shift_p, action, derivs):
        self.params = params
        self.profile = profile
        self.step = step
        self.ts = ts
        self.shift_q = shift_q
        self.shift_p = shift_p
        self.action = action
        self._derivs = derivs  # (3, n) array of rhs values at the samples
        for arr in (ts, shift_q, shift_p, action, derivs):
            arr.flags.writeable = False

    def __len__(self) -> int:
        return len(self.ts)

    @property
    def t_end(self) -> float:
        return float(self.ts[-1])

    def point(self, i: int) -> TrajectoryPoint:
        return TrajectoryPoint(
            float(self.ts[i]), float(self.shift_q[i]),
            float(self.shift_p[i]), float(self.action[i]),
        )

    @property
    def points(self) -> list:
        return [self.point(i) for i in range(len(self.ts))]

    def interpolate(self, t: float):
        """(shift_q, shift_p, action) at an arbitrary time in [0, t_end].

        Exact at sample times; cubic Hermite (O(h^4)) between them.
        """
        t_end = self.t_end
        slack = 1e-9 * max(1.0, abs(t_end))
        if not (-slack <= t <= t_end + slack):
            raise TimeOutOfRange(t, t_end)
        t = min(max(t, 0.0), t_end)
        i = int(np.searchsorted(self.ts, t, side="right")) - 1
        i = min(max(i, 0), len(self.ts) - 2)
        t0, t1 = self.ts[i], self.ts[i + 1]
        if t == t0:
            return (float(self.shift_q[i]), float(self.shift_p[i]), float(self.action[i]))
        if t == t1:
            return (float(self.shift_q[i + 1]), float(self.shift_p[i + 1]),
                    float(self.action[i + 1]))
        h = t1 - t0
        u = (t - t0) / h
        u2 = u * u
        u3 = u2 * u
        b00 = 2.0 * u3 - 3.0 * u2 + 1.0
        b10 = u3 - 2.0 * u2 + u
        b01 = -2.0 * u3 + 3.0 * u2
        b11 = u3 - u2
        out = []
        for values, dk in (
            (self.shift_q, self._derivs[0]),
            (self.shift_p, self._derivs[1]),
            (self.action, self._derivs[2]),
        ):
            out.append(
                b00 * values[i] + b10 * h * dk[i]
                + b01 * values[i + 1] + b11 * h * dk[i + 1]
            )
        return (float(out[0]), float(out[1]), float(out[2]))


def integrate_trajectory(params: PhysicalParams, profile: ForceProfile,
                         t_end: float, h: float) -> Trajectory:
    """Integrate the shift-parameter system from rest over [0, t_end].

    Fixed-step RK4; the force is sampled at stage times (one midpoint
    evaluation is shared by the two internal stages, which is exact because
    the drive does not depend on the state).  Force-evaluation failures
    propagate with the offending time in their message.  RK4's fourth order
    assumes f is smooth across each step; a merely piecewise-continuous
    drive degrades the local order at its discontinuities.
    """
    if not (math.isfinite(t_end) and t_end > 0.0):
        raise ValueError(f"t_end must be positive and finite, got {t_end!r}")
    if not (math.isfinite(h) and h > 0.0):
        raise ValueError(f"step h must be positive and finite, got {h!r}")
    if h > t_end:
        raise ValueError(f"step h={h!r} exceeds horizon t_end={t_end!r}")

    n = int(math.ceil(t_end / h - 1e-9))
    ts = h * np.arange(n + 1, dtype=float)
    ts[-1] = t_end  # last step shortened (or rounding-corrected) to land exactly

    m, w = params.mass, params.omega
    m_inv = 1.0 / m
    mww = m * w * w

    def rhs(q, p, f):
        q_dot = p * m_inv
        lag = p * p * (0.5 * m_inv) + 0.5 * mww * q * q - f * q - p * q_dot
        return q_dot, f - mww * q, lag

    qs = np.empty(n + 1)
    ps = np.empty(n + 1)
    ss = np.empty(n + 1)
    derivs = np.empty((3, n + 1))
    q = p = s = 0.0
    f0 = eval_force(profile, 0.0)
    for k in range(n):
        qs[k], ps[k], ss[k] = q, p, s
        dq1, dp1, ds1 = rhs(q, p, f0)
        derivs[0, k], derivs[1, k], derivs[2, k] = dq1, dp1, ds1

        t0 = ts[k]
        dt = ts[k + 1] - t0
        half = 0.5 * dt
        fm = eval_force(profile, t0 + half)
        f1 = eval_force(profile, ts[k + 1])

        dq2, dp2, ds2 = rhs(q + half * dq1, p + half * dp1, fm)
        dq3, dp3, ds3 = rhs(q + half * dq2, p + half * dp2, fm)
        dq4, dp4, ds4 = rhs(q + dt * dq3, p + dt * dp3, f1)
        sixth = dt / 6.0
        q += sixth * (dq1 + 2.0 * (dq2 + dq3) + dq4)
        p += sixth * (dp1 + 2.0 * (dp2 + dp3) + dp4)
        s += sixth * (ds1 + 2.0 * (ds2 + ds3) + ds4)
        f0 = f1
    qs[n], ps[n], ss[n] = q, p, s
    derivs[0, n], derivs[1, n], derivs[2, n] = rhs(q, p, f0)

    return Trajectory(params, profile, h, ts, qs, ps, ss, derivs)


def closed_form_constant_force(params: PhysicalParams, f0: float, t: float):
    """Analytic (shift_q, shift_p, action) for a constant drive f0.

    Solving the linear system from rest gives
        shift_q = (f0 / m w^2) (1 - cos wt)
        shift_p = (f0 / w) sin wt
    and substituting into the action integrand collapses it to
    -(f0^2 / m w^2) sin^2(wt), whose integral is the closed form below.
    """
    m, w = params.mass, params.omega
    a = f0 / (m * w * w)
    shift_q = a * (1.0 - math.cos(w * t))
    shift_p = (f0 / w) * math.sin(w * t)
    action = -(f0 * f0 / (m * w * w)) * (0.5 * t - math.sin(2.0 * w * t) / (4.0 * w))
    return (shift_q, shift_p, action)
