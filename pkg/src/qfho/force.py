"""Driving-force models: presets, tabulated data, and parsed expressions.

All profiles are immutable after construction and may be shared freely
between threads.  Evaluation is scalar and pure.
"""

import csv
import math
import os
from dataclasses import dataclass, field
from typing import Union

import numpy as np

from . import expressions
from .errors import EvalDomainError, OutOfTableRange
from .expressions import BinOp, Call, Neg, Node, Num, Var

__all__ = [
    "Zero",
    "Constant",
    "Sinusoid",
    "GaussianPulse",
    "Tabulated",
    "Expression",
    "ForceProfile",
    "parse_force_expression",
    "eval_force",
    "to_expression",
    "render_profile",
    "time_shifted",
    "load_table",
]


@dataclass(frozen=True)
class Zero:
    """No drive: f(t) = 0."""


@dataclass(frozen=True)
class Constant:
    """f(t) = amplitude."""

    amplitude: float


@dataclass(frozen=True)
class Sinusoid:
    """f(t) = amplitude * sin(drive_omega * t + phase)."""

    amplitude: float
    drive_omega: float
    phase: float = 0.0


@dataclass(frozen=True)
class GaussianPulse:
    """f(t) = amplitude * exp(-(t - center)^2 / (2 width^2)), width > 0."""

    amplitude: float
    center: float
    width: float

    def __post_init__(self):
        if not (self.width > 0.0 and math.isfinite(self.width)):
            raise ValueError(f"pulse width must be positive, got {self.width!r}")


@dataclass(frozen=True)
class Tabulated:
    """Sampled force, linearly interpolated; queries outside the sampled
    range raise OutOfTableRange rather than clamping."""

    times: tuple
    values: tuple
    _t: np.ndarray = field(init=False, repr=False, compare=False)
    _f: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        times = tuple(float(v) for v in self.times)
        values = tuple(float(v) for v in self.values)
        if len(times) != len(values):
            raise ValueError("times and values must have equal length")
        if len(times) < 2:
            raise ValueError("a force table needs at least 2 samples")
        if not all(map(math.isfinite, times + values)):
            raise ValueError("force table entries must be finite")
        if any(b <= a for a, b in zip(times, times[1:])):
            raise ValueError("force table times must be strictly increasing")
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "_t", np.asarray(times))
        object.__setattr__(self, "_f", np.asarray(values))
        self._t.flags.writeable = False
        self._f.flags.writeable = False


@dataclass(frozen=True)
class Expression:
    """Force given by a parsed expression tree in the single variable t."""

    tree: Node


ForceProfile = Union[Zero, Constant, Sinusoid, GaussianPulse, Tabulated, Expression]


def parse_force_expression(text: str) -> Node:
    """Parse infix text (see the expressions module for the grammar)."""
    return expressions.parse(text)


def eval_force(profile: ForceProfile, t: float) -> float:
    """Evaluate the drive at time t.

    Raises OutOfTableRange for tabulated extrapolation and EvalDomainError
    (with the offending time in the message) for expression domain failures.
    """
    if isinstance(profile, Zero):
        return 0.0
    if isinstance(profile, Constant):
        return profile.amplitude
    if isinstance(profile, Sinusoid):
        return profile.amplitude * math.sin(profile.drive_omega * t + profile.phase)
    if isinstance(profile, GaussianPulse):
        u = (t - profile.center) / profile.width
        return profile.amplitude * math.exp(-0.5 * u * u)
    if isinstance(profile, Tabulated):
        if t < profile.times[0] or t > profile.times[-1]:
            raise OutOfTableRange(t, profile.times[0], profile.times[-1])
        return float(np.interp(t, profile._t, profile._f))
    if isinstance(profile, Expression):
        try:
            return expressions.evaluate(profile.tree, t)
        except EvalDomainError as exc:
            raise EvalDomainError(f"force undefined at t={t!r}: {exc}") from exc
    raise TypeError(f"not a force profile: {profile!r}")


def to_expression(profile: ForceProfile) -> Node:
    """Expression tree evaluating pointwise equal to the profile.

    Tabulated profiles are not expressible in the grammar and raise
    ValueError.
    """
    if isinstance(profile, Zero):
        return Num(0.0)
    if isinstance(profile, Constant):
        return Num(profile.amplitude)
    if isinstance(profile, Sinusoid):
        arg: Node = BinOp("*", Num(profile.drive_omega), Var())
        if profile.phase != 0.0:
            arg = BinOp("+", arg, Num(profile.phase))
        return BinOp("*", Num(profile.amplitude), Call("sin", arg))
    if isinstance(profile, GaussianPulse):
        shifted = BinOp("-", Var(), Num(profile.center))
        num = BinOp("^", shifted, Num(2.0))
        den = BinOp("*", Num(2.0), BinOp("^", Num(profile.width), Num(2.0)))
        return BinOp("*", Num(profile.amplitude), Call("exp", Neg(BinOp("/", num, den))))
    if isinstance(profile, Expression):
        return profile.tree
    if isinstance(profile, Tabulated):
        raise ValueError("tabulated profiles have no closed-form expression")
    raise TypeError(f"not a force profile: {profile!r}")


def render_profile(profile: ForceProfile) -> str:
    """Render the profile as expression text; parse/eval round-trips."""
    return expressions.render(to_expression(profile))


def time_shifted(profile: ForceProfile, offset: float) -> ForceProfile:
    """Profile g with g(s) = f(s + offset).

    This is the re-basing used when evolution is composed from segments:
    the second segment sees the drive shifted by the first segment's span.
    """
    if isinstance(profile, (Zero, Constant)):
        return profile
    if isinstance(profile, Sinusoid):
        return Sinusoid(
            profile.amplitude,
            profile.drive_omega,
            profile.phase + profile.drive_omega * offset,
        )
    if isinstance(profile, GaussianPulse):
        return GaussianPulse(profile.amplitude, profile.center - offset, profile.width)
    if isinstance(profile, Tabulated):
        return Tabulated(tuple(t - offset for t in profile.times), profile.values)
    if isinstance(profile, Expression):
        return Expression(_shift_tree(profile.tree, offset))
    raise TypeError(f"not a force profile: {profile!r}")


def _shift_tree(node: Node, offset: float) -> Node:
    if isinstance(node, Var):
        return BinOp("+", Var(), Num(offset))
    if isinstance(node, Num):
        return node
    if isinstance(node, Neg):
        return Neg(_shift_tree(node.operand, offset))
    if isinstance(node, Call):
        return Call(node.func, _shift_tree(node.arg, offset))
    if isinstance(node, BinOp):
        return BinOp(node.op, _shift_tree(node.left, offset), _shift_tree(node.right, offset))
    raise TypeError(f"not an expression node: {node!r}")


def load_table(path: str | os.PathLike) -> Tabulated:
    """Read a two-column (t, f) CSV into a Tabulated profile.

    A single non-numeric header row is tolerated and skipped.
    """
    times: list[float] = []
    values: list[float] = []
    with open(path, newline="") as fh:
        for lineno, row in enumerate(csv.reader(fh), start=1):
            if not row or all(not cell.strip() for cell in row):
                continue
            try:
                t, f = float(row[0]), float(row[1])
            except (ValueError, IndexError):
                if lineno == 1:
                    continue  # header
                raise ValueError(f"{path}:{lineno}: expected two numeric columns, got {row!r}")
            times.append(t)
            values.append(f)
    return Tabulated(tuple(times), tuple(values))
