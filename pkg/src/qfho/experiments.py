"""The four experiment drivers behind the CLI subcommands.

Each driver validates nothing itself (the scenario is already validated),
computes, writes CSVs into the output directory, optionally renders a PNG
next to each CSV, and returns what the CLI needs for its exit code.
"""

import cmath
import os
from dataclasses import dataclass

import numpy as np

from . import io
from .classical import integrate_trajectory
from .evolution import ehrenfest_expectations, evolution_params, symplectic_map
from .grid import evolve, make_gaussian, overlap
from .kernel import evolve_by_kernel, forced_kernel
from .scenario import Scenario

__all__ = [
    "CompareOutcome",
    "run_trajectory",
    "run_kernel",
    "run_compare",
    "run_heisenberg",
    "FIDELITY_MIN",
    "PHASE_ERROR_MAX",
    "KERNEL_NORM_TOL",
    "ORACLE_NORM_TOL",
    "MEAN_ERROR_MAX",
]

# pass/fail thresholds for run_compare, one per report column
FIDELITY_MIN = 1.0 - 1e-6
PHASE_ERROR_MAX = 1e-4
KERNEL_NORM_TOL = 1e-6
ORACLE_NORM_TOL = 1e-10
MEAN_ERROR_MAX = 1e-4


def _say(quiet, *parts):
    if not quiet:
        print(*parts)


def run_trajectory(scenario: Scenario, out_dir, *, plot=True, quiet=False) -> str:
    """Integrate the shift parameters and write trajectory.csv."""
    sch = scenario.schedule
    traj = integrate_trajectory(scenario.physical, scenario.force, sch.t_end, sch.dt)
    path = os.path.join(out_dir, "trajectory.csv")
    io.write_trajectory_csv(path, traj, stride=sch.stride)
    if plot:
        from . import plots

        plots.plot_trajectory(traj, os.path.join(out_dir, "trajectory.png"))
    end = traj.point(len(traj) - 1)
    _say(quiet, f"trajectory: t={end.t:.6g} shift_q={end.shift_q:.12g} "
                f"shift_p={end.shift_p:.12g} action={end.action:.12g}")
    _say(quiet, f"wrote {path}")
    return path


def run_kernel(scenario: Scenario, q_values, qp_values, t, out_dir, *,
               plot=True, quiet=False) -> str:
    """Evaluate the propagator on the (q, q') product at time t."""
    sch = scenario.schedule
    traj = integrate_trajectory(scenario.physical, scenario.force,
                                max(t, sch.dt), sch.dt)
    ep = evolution_params(scenario.physical, traj, t)
    q_arr = np.asarray(list(q_values), dtype=float)
    qp_arr = np.asarray(list(qp_values), dtype=float)
    values = forced_kernel(scenario.physical, ep, q_arr[:, None], qp_arr[None, :])
    path = os.path.join(out_dir, "kernel.csv")
    io.write_csv(path, io.KERNEL_HEADER, (
        (q_arr[i], qp_arr[j], t, values[i, j].real, values[i, j].imag)
        for i in range(len(q_arr)) for j in range(len(qp_arr))
    ))
    if plot:
        from . import plots

        plots.plot_kernel(q_arr, qp_arr, values, t, os.path.join(out_dir, "kernel.png"))
    _say(quiet, f"kernel: {values.size} values at t={t:.6g}")
    _say(quiet, f"wrote {path}")
    return path


@dataclass
class CompareOutcome:
    passed: bool
    rows: list
    report_path: str


def run_compare(scenario: Scenario, out_dir, *, plot=True, quiet=False) -> CompareOutcome:
    """Evolve the packet by kernel quadrature and by the grid solver.

    Writes report.csv (per-snapshot agreement metrics), oracle_log.csv (the
    grid solver's run log) and the two final wavefunctions.  Passes iff all
    snapshots meet the agreement thresholds.
    """
    phys, sch = scenario.physical, scenario.schedule
    psi0 = make_gaussian(scenario.grid, scenario.packet.q0, scenario.packet.p0,
                         scenario.packet.sigma, phys.hbar)
    traj = integrate_trajectory(phys, scenario.force, sch.t_end, sch.dt)
    result = evolve(phys, scenario.force, psi0, sch.t_end, sch.dt,
                    log_every=sch.stride, snapshot_every=sch.stride)

    rows = []
    kernel_final = psi0
    for log_row, oracle_state in zip(result.log, result.snapshots):
        t = oracle_state.t
        ep = evolution_params(phys, traj, t)
        if t == 0.0:
            kernel_state = psi0  # the map is the identity at t=0
        else:
            kernel_state = evolve_by_kernel(phys, ep, psi0)
        ov = overlap(oracle_state, kernel_state)
        pred_q, pred_p = ehrenfest_expectations(
            symplectic_map(ep), scenario.packet.q0, scenario.packet.p0
        )
        rows.append((
            t,
            abs(ov),
            abs(cmath.phase(ov)),
            kernel_state.norm(),
            log_row.norm,
            abs(log_row.q_mean - pred_q),
            abs(log_row.p_mean - pred_p),
        ))
        kernel_final = kernel_state

    report_path = os.path.join(out_dir, "report.csv")
    io.write_csv(report_path, io.REPORT_HEADER, rows)
    io.write_run_log_csv(os.path.join(out_dir, "oracle_log.csv"), result.log)
    io.write_wavefunction_csv(os.path.join(out_dir, "oracle_final.csv"), result.final)
    io.write_wavefunction_csv(os.path.join(out_dir, "kernel_final.csv"), kernel_final)
    if plot:
        from . import plots

        plots.plot_compare(rows, result.final, kernel_final,
                           os.path.join(out_dir, "report.png"))

    worst_fidelity = min(r[1] for r in rows)
    worst_phase = max(r[2] for r in rows)
    worst_kernel_norm = max(abs(r[3] - 1.0) for r in rows)
    worst_oracle_norm = max(abs(r[4] - 1.0) for r in rows)
    worst_mean = max(max(r[5], r[6]) for r in rows)
    passed = (
        worst_fidelity >= FIDELITY_MIN
        and worst_phase < PHASE_ERROR_MAX
        and worst_kernel_norm <= KERNEL_NORM_TOL
        and worst_oracle_norm <= ORACLE_NORM_TOL
        and worst_mean < MEAN_ERROR_MAX
    )
    verdict = "PASS" if passed else "FAIL"
    _say(quiet, f"compare: fidelity>={worst_fidelity:.9f} "
                f"phase_error<={worst_phase:.3e} "
                f"|norm_kernel-1|<={worst_kernel_norm:.3e} "
                f"|norm_oracle-1|<={worst_oracle_norm:.3e} "
                f"mean_err<={worst_mean:.3e} -> {verdict}")
    _say(quiet, f"wrote {report_path}")
    return CompareOutcome(passed, rows, report_path)


def run_heisenberg(scenario: Scenario, out_dir, *, plot=True, quiet=False) -> str:
    """Tabulate the phase-space map over the schedule."""
    phys, sch = scenario.physical, scenario.schedule
    traj = integrate_trajectory(phys, scenario.force, sch.t_end, sch.dt)
    times = [float(traj.ts[i]) for i in io._strided_indices(len(traj.ts), sch.stride)]
    rows = []
    matrices = []
    shifts = []
    for t in times:
        smap = symplectic_map(evolution_params(phys, traj, t))
        matrices.append(smap.matrix)
        shifts.append(smap.shift)
        m = smap.matrix
        rows.append((t, m[0, 0], m[0, 1], m[1, 0], m[1, 1],
                     smap.shift[0], smap.shift[1], smap.det))
    path = os.path.join(out_dir, "heisenberg.csv")
    io.write_csv(path, io.MAP_HEADER, rows)
    if plot:
        from . import plots

        plots.plot_heisenberg(times, matrices, shifts,
                              os.path.join(out_dir, "heisenberg.png"))
    _say(quiet, f"heisenberg: {len(rows)} rows, max |det-1| = "
                f"{max(abs(r[7] - 1.0) for r in rows):.3e}")
    _say(quiet, f"wrote {path}")
    return path
