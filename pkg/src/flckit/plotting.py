"""Render membership curves and control surfaces to figure files.

The CSV exports stay the canonical data boundary; these helpers produce
quick-look figures next to them. Import is deferred to call time in the CLI
so evaluation paths never pay the matplotlib startup cost.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .engine import LinguisticVariable


def plot_membership(var: LinguisticVariable, resolution: int, path: str) -> None:
    """One labelled curve per term of the variable."""
    xs = var.universe.grid(resolution)
    fig, ax = plt.subplots(figsize=(7, 4))
    for tname, mf in var.terms.items():
        ax.plot(xs, mf.sample(xs), label=tname)
    ax.set_xlabel(var.name)
    ax.set_ylabel("membership")
    ax.set_ylim(-0.05, 1.05)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def plot_surface_1d(
    sweep_name: str, xs: np.ndarray, outputs: dict[str, np.ndarray], path: str
) -> None:
    """Stacked line plots, one panel per output, sharing the swept axis."""
    fig, axes = plt.subplots(
        len(outputs), 1, sharex=True, figsize=(7, 2.4 * len(outputs)), squeeze=False
    )
    for ax, (name, values) in zip(axes[:, 0], outputs.items()):
        ax.plot(xs, values)
        ax.set_ylabel(name)
    axes[-1, 0].set_xlabel(sweep_name)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def plot_surface_2d(
    names: tuple[str, str],
    x1s: np.ndarray,
    x2s: np.ndarray,
    outputs: dict[str, np.ndarray],
    path: str,
) -> None:
    """One heat map per output over the two swept inputs.

    Each grid in `outputs` is indexed [i, j] for (x1s[i], x2s[j]).
    """
    fig, axes = plt.subplots(
        1, len(outputs), figsize=(4.5 * len(outputs), 4), squeeze=False
    )
    for ax, (name, grid) in zip(axes[0], outputs.items()):
        mesh = ax.pcolormesh(x2s, x1s, grid, shading="nearest")
        ax.set_xlabel(names[1])
        ax.set_ylabel(names[0])
        ax.set_title(name)
        fig.colorbar(mesh, ax=ax)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
