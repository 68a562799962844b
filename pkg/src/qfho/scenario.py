"""Scenario files: sectioned key-value configuration for the CLI.

A scenario is an INI file with sections [physical], [force], [grid],
[packet] and [schedule].  All validation happens here, before any
computation; failures raise ConfigError with the offending field path.

Example::

    [physical]
    m = 1.0
    omega = 1.0
    hbar = 1.0

    [force]
    type = sinusoid
    f0 = 0.5
    omega = 0.8
    phi = 0.0

    [grid]
    x_min = -20
    x_max = 20
    n = 2048

    [packet]
    q0 = 1.0
    p0 = 0.0
    sigma = 0.70710678118654752

    [schedule]
    t_end = 2.5132741228718345
    dt = 0.001
    stride = 600

Force types and their keys:
    zero            --
    constant        f0
    sinusoid        f0, omega, [phi]
    gaussian_pulse  f0, t0, sigma
    table           path  (two-column t,f CSV, resolved next to the scenario)
    expression      expr
"""

import configparser
import math
import os
from dataclasses import dataclass

from . import force as force_mod
from .classical import PhysicalParams
from .errors import ConfigError, ExpressionError
from .force import ForceProfile
from .grid import Grid

__all__ = ["PacketSpec", "Schedule", "Scenario", "load_scenario"]


@dataclass(frozen=True)
class PacketSpec:
    q0: float
    p0: float
    sigma: float


@dataclass(frozen=True)
class Schedule:
    t_end: float
    dt: float
    stride: int


@dataclass(frozen=True)
class Scenario:
    physical: PhysicalParams
    force: ForceProfile
    grid: Grid
    packet: PacketSpec
    schedule: Schedule


class _Section:
    """One INI section with typed, validated field access."""

    def __init__(self, name, mapping):
        self.name = name
        self._map = dict(mapping)
        self._seen = set()

    def _raw(self, key, default=None, required=True):
        self._seen.add(key)
        if key in self._map:
            return self._map[key]
        if required:
            raise ConfigError(f"{self.name}.{key}: missing required key")
        return default

    def number(self, key, default=None, required=True, positive=False):
        raw = self._raw(key, default=default, required=required)
        if raw is None:
            return None
        try:
            value = float(raw)
        except (TypeError, ValueError):
            raise ConfigError(f"{self.name}.{key}: not a number: {raw!r}")
        if not math.isfinite(value):
            raise ConfigError(f"{self.name}.{key}: must be finite, got {raw!r}")
        if positive and value <= 0.0:
            raise ConfigError(f"{self.name}.{key}: must be > 0, got {raw!r}")
        return value

    def integer(self, key, default=None, required=True, minimum=None):
        raw = self._raw(key, default=default, required=required)
        if raw is None:
            return None
        try:
            value = int(str(raw), 10)
        except (TypeError, ValueError):
            raise ConfigError(f"{self.name}.{key}: not an integer: {raw!r}")
        if minimum is not None and value < minimum:
            raise ConfigError(f"{self.name}.{key}: must be >= {minimum}, got {value}")
        return value

    def text(self, key, default=None, required=True):
        raw = self._raw(key, default=default, required=required)
        return raw if raw is None else str(raw).strip()

    def reject_unknown(self):
        extra = sorted(set(self._map) - self._seen)
        if extra:
            raise ConfigError(f"{self.name}: unknown key(s) {', '.join(extra)}")


def _force_from_section(sec: _Section, base_dir: str) -> ForceProfile:
    kind = sec.text("type")
    if kind == "zero":
        profile = force_mod.Zero()
    elif kind == "constant":
        profile = force_mod.Constant(sec.number("f0"))
    elif kind == "sinusoid":
        profile = force_mod.Sinusoid(
            sec.number("f0"),
            sec.number("omega"),
            sec.number("phi", default=0.0, required=False),
        )
    elif kind == "gaussian_pulse":
        try:
            profile = force_mod.GaussianPulse(
                sec.number("f0"), sec.number("t0"), sec.number("sigma"),
            )
        except ValueError as exc:
            raise ConfigError(f"force.sigma: {exc}")
    elif kind == "table":
        rel = sec.text("path")
        path = rel if os.path.isabs(rel) else os.path.join(base_dir, rel)
        if not os.path.exists(path):
            raise ConfigError(f"force.path: no such file: {path}")
        try:
            profile = force_mod.load_table(path)
        except ValueError as exc:
            raise ConfigError(f"force.path: {exc}")
    elif kind == "expression":
        text = sec.text("expr")
        try:
            profile = force_mod.Expression(force_mod.parse_force_expression(text))
        except ExpressionError as exc:
            raise ConfigError(f"force.expr: {exc}")
    else:
        raise ConfigError(
            f"force.type: unknown type {kind!r} (expected zero, constant, "
            f"sinusoid, gaussian_pulse, table or expression)"
        )
    sec.reject_unknown()
    return profile


def load_scenario(path) -> Scenario:
    """Parse and fully validate a scenario file."""
    parser = configparser.ConfigParser(interpolation=None)
    try:
        with open(path) as fh:
            parser.read_file(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read scenario file: {exc}")
    except configparser.Error as exc:
        raise ConfigError(f"malformed scenario file: {exc}")

    required = {"physical", "force", "grid", "packet", "schedule"}
    missing = sorted(required - set(parser.sections()))
    if missing:
        raise ConfigError(f"missing section(s): {', '.join(missing)}")
    extra = sorted(set(parser.sections()) - required)
    if extra:
        raise ConfigError(f"unknown section(s): {', '.join(extra)}")

    phys_sec = _Section("physical", parser["physical"])
    try:
        physical = PhysicalParams(
            mass=phys_sec.number("m", positive=True),
            omega=phys_sec.number("omega", positive=True),
            hbar=phys_sec.number("hbar", positive=True),
        )
    except ValueError as exc:
        raise ConfigError(f"physical: {exc}")
    phys_sec.reject_unknown()

    profile = _force_from_section(
        _Section("force", parser["force"]), os.path.dirname(os.path.abspath(path))
    )

    grid_sec = _Section("grid", parser["grid"])
    try:
        grid = Grid(
            x_min=grid_sec.number("x_min"),
            x_max=grid_sec.number("x_max"),
            n=grid_sec.integer("n", minimum=16),
        )
    except ValueError as exc:
        raise ConfigError(f"grid: {exc}")
    grid_sec.reject_unknown()

    pkt_sec = _Section("packet", parser["packet"])
    packet = PacketSpec(
        q0=pkt_sec.number("q0"),
        p0=pkt_sec.number("p0", default=0.0, required=False),
        sigma=pkt_sec.number("sigma", positive=True),
    )
    pkt_sec.reject_unknown()

    sch_sec = _Section("schedule", parser["schedule"])
    schedule = Schedule(
        t_end=sch_sec.number("t_end", positive=True),
        dt=sch_sec.number("dt", positive=True),
        stride=sch_sec.integer("stride", default=1, required=False, minimum=1),
    )
    sch_sec.reject_unknown()
    if schedule.dt > schedule.t_end:
        raise ConfigError(
            f"schedule.dt: step {schedule.dt!r} exceeds t_end {schedule.t_end!r}"
        )

    if isinstance(profile, force_mod.Tabulated):
        if profile.times[0] > 0.0 or profile.times[-1] < schedule.t_end:
            raise ConfigError(
                f"force.path: table covers [{profile.times[0]!r}, "
                f"{profile.times[-1]!r}] but the schedule needs [0, "
                f"{schedule.t_end!r}]"
            )

    return Scenario(physical, profile, grid, packet, schedule)
