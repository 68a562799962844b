"""Closed-form propagator and wave-packet transport by quadrature.

The full propagator factorizes as a translation/boost/phase layer over the
plain harmonic kernel:

    G(q, q'; t) = exp(-i*action/hbar) * exp(i*shift_p*(q - shift_q)/hbar)
                  * K_ho(q - shift_q, q'; angle, shear)

with

    K_ho(a, b) = sqrt(shear / (2 pi i hbar sin(angle)))
                 * exp[i shear ((a^2 + b^2) cos(angle) - 2 a b)
                       / (2 hbar sin(angle))]

(the i belongs under the square root: without it unitarity fails, and the
cross term carries a single power of hbar on dimensional grounds; both are
confirmed against the grid solver).  The principal branch of the square
root is continuous for angle in (0, pi), i.e. within the first caustic
window, where no extra branch phase can appear.  At angle = n*pi the kernel
degenerates to a delta-type distribution and past the first window the
principal branch drops a branch phase, so both cases are refused:
multi-window evolution must be composed from sub-window segments with the
drive re-based (see force.time_shifted).
"""

import cmath
import math
import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .classical import PhysicalParams
from .errors import CausticSingular, ConfigError, GridTooCoarse
from .evolution import EvolutionParams
from .grid import WaveFunction

__all__ = [
    "EPS_CAUSTIC",
    "ho_kernel",
    "forced_kernel",
    "evolve_by_kernel",
]

# below this |sin(angle)| the Gaussian quadrature is meaningless on any
# affordable grid; refuse rather than approximate a delta kernel
EPS_CAUSTIC = 1e-6


def _checked_sin(angle: float) -> float:
    s = math.sin(angle)
    if not (0.0 < angle < math.pi):
        raise CausticSingular(
            angle,
            "single-kernel evaluation is limited to the first caustic "
            "window 0 < angle < pi; compose segments for longer times",
        )
    if abs(s) < EPS_CAUSTIC:
        raise CausticSingular(angle)
    return s


def _ho_raw(params, q_to, q_from, angle, shear, s):
    prefactor = cmath.sqrt(shear / (2j * math.pi * params.hbar * s))
    scale = shear / (2.0 * params.hbar * s)
    phase = scale * ((q_from * q_from + q_to * q_to) * math.cos(angle)
                     - 2.0 * q_from * q_to)
    return prefactor * np.exp(1j * phase)


def ho_kernel(params: PhysicalParams, q_to, q_from, angle: float, shear: float):
    """Plain harmonic kernel <q_to| (rotation by angle at scale shear) |q_from>.

    Symmetric in (q_to, q_from); accepts scalars or broadcastable arrays.
    Raises CausticSingular at or beyond the first caustic.
    """
    s = _checked_sin(angle)
    value = _ho_raw(params, np.asarray(q_to, dtype=float),
                    np.asarray(q_from, dtype=float), angle, shear, s)
    if np.ndim(value) == 0:
        return complex(value)
    return value


def forced_kernel(params: PhysicalParams, ep: EvolutionParams, q, q_prime):
    """Full driven-oscillator propagator G(q, q'; t, 0).

    With all shift parameters zero this reduces bit-for-bit to ho_kernel.
    """
    s = _checked_sin(ep.angle)
    q = np.asarray(q, dtype=float)
    q_prime = np.asarray(q_prime, dtype=float)
    shifted = q - ep.shift_q
    phase = (ep.shift_p * shifted - ep.action) / params.hbar
    value = np.exp(1j * phase) * _ho_raw(params, shifted, q_prime,
                                         ep.angle, ep.shear, s)
    if np.ndim(value) == 0:
        return complex(value)
    return value


def _min_quadrature_wavelength(params, ep, grid) -> float:
    # largest phase gradient of G(q, x') over x' on the grid, maximized over
    # output q; the quadrature must resolve the matching wavelength
    extent = max(abs(grid.x_min), abs(grid.x_max))
    span = (1.0 + abs(math.cos(ep.angle))) * extent + abs(ep.shift_q)
    return 2.0 * math.pi * params.hbar * abs(math.sin(ep.angle)) / (ep.shear * span)


def _worker_count() -> int:
    limit = min(os.cpu_count() or 1, 8)
    env = os.environ.get("QFHO_NUM_THREADS")
    if env is not None:
        try:
            limit = min(limit, int(env))
        except ValueError:
            raise ConfigError(f"QFHO_NUM_THREADS must be an integer, got {env!r}")
    return max(1, limit)


def evolve_by_kernel(params: PhysicalParams, ep: EvolutionParams,
                     psi0: WaveFunction, *, block_rows: int = 256) -> WaveFunction:
    """Evolve psi0 to ep.t by quadrature against the closed-form propagator.

    psi(q) = sum_j G(q, x_j) psi0(x_j) w_j with trapezoidal weights on the
    packet's own grid; the output shares that grid.  The output norm is not
    re-imposed — it lands within quadrature accuracy of 1 and serves as a
    diagnostic.

    Raises CausticSingular near/beyond a caustic and GridTooCoarse when the
    kernel oscillates faster than 4 grid spacings per wavelength anywhere in
    the quadrature.  The row map over output points is embarrassingly
    parallel; QFHO_NUM_THREADS caps the worker threads (output is identical
    for any worker count).
    """
    s = _checked_sin(ep.angle)
    grid = psi0.grid
    min_wl = _min_quadrature_wavelength(params, ep, grid)
    if min_wl < 4.0 * grid.dx:
        raise GridTooCoarse(min_wl, 4.0 * grid.dx)

    xs = grid.xs
    weights = psi0.amps * grid.dx  # fresh array; safe to edit the ends
    weights[0] *= 0.5
    weights[-1] *= 0.5

    out = np.empty(grid.n, dtype=np.complex128)

    def fill_block(lo: int, hi: int) -> None:
        rows = _ho_raw(params, (xs[lo:hi] - ep.shift_q)[:, None], xs[None, :],
                       ep.angle, ep.shear, s)
        rows *= np.exp(
            1j * (ep.shift_p * (xs[lo:hi] - ep.shift_q) - ep.action) / params.hbar
        )[:, None]
        out[lo:hi] = (rows * weights[None, :]).sum(axis=1)

    bounds = [(lo, min(lo + block_rows, grid.n)) for lo in range(0, grid.n, block_rows)]
    workers = _worker_count()
    if workers == 1 or len(bounds) == 1:
        for lo, hi in bounds:
            fill_block(lo, hi)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            list(pool.map(lambda b: fill_block(*b), bounds))

    return WaveFunction(grid, out, ep.t)
