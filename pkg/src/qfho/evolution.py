"""Evolution-operator parameters and the symplectic phase-space map.

The rotation angle and shear scale have exact closed forms (angle = w*t,
shear = m*w); they are constructed rather than integrated.  Together with
the interpolated shift parameters they determine the Heisenberg-picture
map, a rotation-like matrix of unit determinant plus a translation.
"""

import math
from dataclasses import dataclass

import numpy as np

from .classical import PhysicalParams, Trajectory

__all__ = [
    "EvolutionParams",
    "SymplecticMap",
    "evolution_params",
    "symplectic_map",
    "heisenberg_point",
    "ehrenfest_expectations",
]


@dataclass(frozen=True)
class EvolutionParams:
    """Complete parameter set of the evolution operator at one time."""

    t: float
    angle: float      # rotation angle of the harmonic part, = omega * t
    shear: float      # scale mixing q and p in the rotation, = mass * omega
    shift_q: float
    shift_p: float
    action: float


@dataclass(frozen=True, eq=False)
class SymplecticMap:
    """Linear phase-space map (q, p) -> matrix @ (q, p) + shift."""

    matrix: np.ndarray  # (2, 2)
    shift: np.ndarray   # (2,)

    @property
    def det(self) -> float:
        m = self.matrix
        return float(m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0])


def evolution_params(params: PhysicalParams, traj: Trajectory, t: float) -> EvolutionParams:
    """Assemble the parameter set at time t from a trajectory.

    Raises TimeOutOfRange if t is outside the integrated horizon.
    """
    shift_q, shift_p, action = traj.interpolate(t)
    return EvolutionParams(
        t=t,
        angle=params.omega * t,
        shear=params.mass * params.omega,
        shift_q=shift_q,
        shift_p=shift_p,
        action=action,
    )


def symplectic_map(ep: EvolutionParams) -> SymplecticMap:
    """Heisenberg-picture map for the given parameters.

    det(matrix) = cos^2 + sin^2 = 1; at t=0 the map is the identity.
    """
    c = math.cos(ep.angle)
    s = math.sin(ep.angle)
    matrix = np.array([[c, s / ep.shear], [-ep.shear * s, c]])
    shift = np.array([ep.shift_q, ep.shift_p])
    matrix.flags.writeable = False
    shift.flags.writeable = False
    return SymplecticMap(matrix, shift)


def heisenberg_point(smap: SymplecticMap, q: float, p: float):
    """Image of the phase-space point (q, p) under the map."""
    m = smap.matrix
    return (
        float(m[0, 0] * q + m[0, 1] * p + smap.shift[0]),
        float(m[1, 0] * q + m[1, 1] * p + smap.shift[1]),
    )


def ehrenfest_expectations(smap: SymplecticMap, q_mean: float, p_mean: float):
    """Predicted (<q>, <p>) at the map's time from the initial means.

    The map is linear, so expectation values follow the classical flow
    exactly; this is the same arithmetic as heisenberg_point, named for the
    quantity it predicts.
    """
    return heisenberg_point(smap, q_mean, p_mean)
