"""CSV emission with fixed headers and full double precision.

Every writer formats floats with 17 significant digits, which round-trips
IEEE doubles exactly, and uses '\\n' line endings so identical inputs give
byte-identical files on every platform.
"""

TRAJECTORY_HEADER = "t,lambda,pi,S"
MAP_HEADER = "t,M11,M12,M21,M22,xi_q,xi_p,detM"
KERNEL_HEADER = "q,q_prime,t,re,im"
WAVEFUNCTION_HEADER = "x,re,im,prob_density"
RUN_LOG_HEADER = "t,norm,q_mean,p_mean,energy"
REPORT_HEADER = "t,fidelity,phase_error,norm_kernel,norm_oracle,q_mean_err,p_mean_err"


def fmt(x: float) -> str:
    return format(float(x), ".17g")


def write_csv(path, header: str, rows) -> None:
    """rows: iterable of float sequences, written under the given header."""
    with open(path, "w", newline="") as fh:
        fh.write(header + "\n")
        for row in rows:
            fh.write(",".join(fmt(v) for v in row) + "\n")


def write_trajectory_csv(path, traj, stride: int = 1) -> None:
    """Every stride-th sample plus the final one, as t,lambda,pi,S."""
    idx = _strided_indices(len(traj.ts), stride)
    write_csv(path, TRAJECTORY_HEADER, (
        (traj.ts[i], traj.shift_q[i], traj.shift_p[i], traj.action[i]) for i in idx
    ))


def write_wavefunction_csv(path, wf) -> None:
    write_csv(path, WAVEFUNCTION_HEADER, (
        (x, a.real, a.imag, a.real * a.real + a.imag * a.imag)
        for x, a in zip(wf.grid.xs, wf.amps)
    ))


def write_run_log_csv(path, log) -> None:
    write_csv(path, RUN_LOG_HEADER, (
        (row.t, row.norm, row.q_mean, row.p_mean, row.energy) for row in log
    ))


def _strided_indices(n: int, stride: int) -> list:
    idx = list(range(0, n, max(1, stride)))
    if idx[-1] != n - 1:
        idx.append(n - 1)
    return idx
