"""Render report tables to figure files.

matplotlib is imported lazily with the Agg backend, so the computational
modules stay free of any plotting dependency and no display is needed.
"""

from __future__ import annotations

from pathlib import Path
from typing import Sequence


def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def render_sweep_figures(reports: Sequence, outdir: str | Path) -> list[Path]:
    """Plot chi and the two concurrences against l, one curve per n.

    Writes ``monogamy_chi.png`` and ``monogamy_concurrence.png`` into
    ``outdir`` and returns the written paths.
    """
    plt = _pyplot()
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    by_n: dict[int, list] = {}
    for r in reports:
        by_n.setdefault(r.n, []).append(r)

    written = []

    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    for n, rows in sorted(by_n.items()):
        rows = sorted(rows, key=lambda r: r.l)
        ax.plot([r.l for r in rows], [r.chi for r in rows], marker="o", label=f"n={n}")
        peak = [r for r in rows if r.is_chi_max]
        ax.plot([r.l for r in peak], [r.chi for r in peak], "k*", markersize=10, zorder=3)
    ax.set_xlabel("excitations l")
    ax.set_ylabel(r"monogamy gap $\chi$")
    ax.set_ylim(-0.02, 1.0)
    ax.legend(fontsize=8, ncol=2)
    ax.grid(alpha=0.3)
    path = outdir / "monogamy_chi.png"
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
    written.append(path)

    fig, axes = plt.subplots(1, 2, figsize=(9.6, 4.0), sharex=True)
    for n, rows in sorted(by_n.items()):
        rows = sorted(rows, key=lambda r: r.l)
        ls = [r.l for r in rows]
        axes[0].plot(ls, [r.c12 for r in rows], marker="o", label=f"n={n}")
        axes[1].plot(ls, [r.c1_rest_sq for r in rows], marker="o", label=f"n={n}")
    axes[0].set_ylabel("pairwise concurrence")
    axes[1].set_ylabel("one-vs-rest concurrence (squared)")
    for ax in axes:
        ax.set_xlabel("excitations l")
        ax.grid(alpha=0.3)
    axes[0].legend(fontsize=8, ncol=2)
    path = outdir / "monogamy_concurrence.png"
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
    written.append(path)

    return written


def render_conjecture_figure(
    n: int,
    ls: Sequence[int],
    ks: Sequence[int],
    magnitudes: Sequence[Sequence[float]],
    outdir: str | Path,
) -> list[Path]:
    """Heatmap of |d_k| over Dicke states (rows: l, columns: k).

    Exact zeros are greyed out; nonzero cells are colored by log10 of the
    magnitude.  Returns the written path.
    """
    import numpy as np

    plt = _pyplot()
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)

    grid = np.array(magnitudes, dtype=float)
    masked = np.ma.masked_where(grid == 0.0, np.log10(np.where(grid > 0, grid, 1.0)))
    cmap = plt.get_cmap("viridis").copy()
    cmap.set_bad(color="0.85")
    fig, ax = plt.subplots(figsize=(5.4, 4.6))
    image = ax.imshow(masked, cmap=cmap, aspect="equal")
    ax.set_xticks(range(len(ks)), [str(k) for k in ks])
    ax.set_yticks(range(len(ls)), [str(l) for l in ls])
    ax.set_xlabel("discriminant index k")
    ax.set_ylabel("excitations l")
    ax.set_title(f"log10 |d_k| on Dicke states, n={n} (grey = zero)")
    fig.colorbar(image, ax=ax, shrink=0.85)
    path = outdir / f"dcrit_crosstable_n{n}.png"
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
    return [path]
