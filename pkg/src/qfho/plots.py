"""Figure rendering for the CLI report paths.

Each subcommand that writes a CSV can also render a PNG next to it.  The
figures are diagnostic companions to the tables, never a data source; all
quantitative output stays in the CSVs.
"""

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

_RC = {
    "figure.figsize": (8.0, 5.0),
    "figure.dpi": 110,
    "savefig.dpi": 150,
    "axes.grid": True,
    "grid.alpha": 0.3,
    "font.size": 9,
    "lines.linewidth": 1.2,
}


def _save(fig, path):
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def plot_trajectory(traj, path) -> None:
    """Shift parameters and action against time, three stacked panels."""
    with plt.rc_context(_RC):
        fig, axes = plt.subplots(3, 1, sharex=True, figsize=(8.0, 6.5))
        for ax, values, label in zip(
            axes,
            (traj.shift_q, traj.shift_p, traj.action),
            ("position shift", "momentum shift", "action"),
        ):
            ax.plot(traj.ts, values)
            ax.set_ylabel(label)
        axes[-1].set_xlabel("t")
        axes[0].set_title("classical shift-parameter trajectory")
        _save(fig, path)


def plot_heisenberg(ts, matrices, shifts, path) -> None:
    """Matrix entries over time plus the drift of the phase-space shift."""
    ts = np.asarray(ts)
    matrices = np.asarray(matrices)
    shifts = np.asarray(shifts)
    with plt.rc_context(_RC):
        fig, (ax_m, ax_s) = plt.subplots(2, 1, sharex=True, figsize=(8.0, 6.0))
        labels = ("M11", "M12", "M21", "M22")
        for (i, j), label in zip(((0, 0), (0, 1), (1, 0), (1, 1)), labels):
            ax_m.plot(ts, matrices[:, i, j], label=label)
        ax_m.legend(ncol=4)
        ax_m.set_ylabel("matrix entry")
        ax_m.set_title("Heisenberg-picture map")
        ax_s.plot(ts, shifts[:, 0], label="shift q")
        ax_s.plot(ts, shifts[:, 1], label="shift p")
        ax_s.legend()
        ax_s.set_xlabel("t")
        ax_s.set_ylabel("shift")
        _save(fig, path)


def plot_kernel(q_values, qp_values, values, t, path) -> None:
    """|G| heatmap over the (q, q') product, or line cuts when 1-D."""
    q_values = np.asarray(q_values)
    qp_values = np.asarray(qp_values)
    values = np.asarray(values)
    with plt.rc_context(_RC):
        if len(q_values) >= 2 and len(qp_values) >= 2:
            fig, ax = plt.subplots()
            mesh = ax.pcolormesh(qp_values, q_values, np.abs(values), shading="nearest")
            fig.colorbar(mesh, ax=ax, label="|G|")
            ax.set_xlabel("q'")
            ax.set_ylabel("q")
            ax.set_title(f"propagator magnitude at t={t:g}")
        else:
            fig, ax = plt.subplots()
            if len(qp_values) == 1:
                xs, rows, xlabel = q_values, values[:, 0], "q"
            else:
                xs, rows, xlabel = qp_values, values[0, :], "q'"
            ax.plot(xs, rows.real, label="Re G")
            ax.plot(xs, rows.imag, label="Im G")
            ax.set_xlabel(xlabel)
            ax.legend()
            ax.set_title(f"propagator at t={t:g}")
        _save(fig, path)


def plot_compare(rows, oracle_final, kernel_final, path) -> None:
    """Fidelity/phase traces plus the final densities overlaid."""
    rows = list(rows)
    ts = [r[0] for r in rows]
    with plt.rc_context(_RC):
        fig, axes = plt.subplots(3, 1, figsize=(8.0, 7.5))
        axes[0].plot(ts, [1.0 - r[1] for r in rows], marker="o")
        axes[0].set_ylabel("1 - fidelity")
        axes[0].set_yscale("symlog", linthresh=1e-12)
        axes[0].set_title("closed form vs grid solver")
        axes[1].plot(ts, [r[2] for r in rows], marker="o")
        axes[1].set_ylabel("phase error [rad]")
        axes[1].set_yscale("symlog", linthresh=1e-12)
        axes[1].set_xlabel("t")
        xs = oracle_final.grid.xs
        axes[2].plot(xs, oracle_final.density(), label="grid solver")
        axes[2].plot(xs, kernel_final.density(), "--", label="kernel quadrature")
        axes[2].set_xlabel("x")
        axes[2].set_ylabel("probability density")
        axes[2].legend()
        _save(fig, path)
