"""Figures and CSV tables for a prime: the quiver, tilting dimensions and
Weyl factor counts."""

from __future__ import annotations

import csv
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
from matplotlib.patches import Arc  # noqa: E402

from . import padic, quiveralg, repchar  # noqa: E402


def plot_quiver(p: int, vmax: int, path: Path) -> Path:
    g = quiveralg.quiver_graph(p, vmax)
    blocks = sorted(g.blocks())
    color = {e: plt.cm.tab10(i % 10) for i, e in enumerate(blocks)}
    fig, ax = plt.subplots(figsize=(max(8, vmax / 4), 4))
    for a, b, kind, _ in g.arrows:
        lo, hi = min(a, b), max(a, b)
        sign = 1 if kind == "down" else -1
        ax.add_patch(Arc(((lo + hi) / 2, 0), hi - lo, (hi - lo) * 0.6, theta1=0 if sign > 0 else 180,
                         theta2=180 if sign > 0 else 360, lw=0.8,
                         ls="-" if kind == "down" else "--",
                         color=color[padic.block_of(a + 1, p) - 1]))
    for x in g.vertices:
        e = padic.block_of(x + 1, p) - 1
        ax.plot([x], [0], "o", ms=4, color=color[e])
    span = max((abs(a - b) for a, b, _, _ in g.arrows), default=1)
    ax.set_ylim(-0.35 * span - 1, 0.35 * span + 1)
    ax.set_xlim(-1, vmax)
    ax.set_yticks([])
    ax.set_xlabel("vertex v-1")
    ax.set_title(f"quiver for p={p}: down arrows above (solid), up arrows below (dashed)")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def plot_characters(p: int, vmax: int, path: Path) -> Path:
    rows = repchar.table(p, vmax)
    xs = [r.label for r in rows]
    fig, (a1, a2) = plt.subplots(2, 1, figsize=(8, 6), sharex=True)
    a1.semilogy(xs, [r.dim for r in rows], ".-", lw=0.8)
    a1.set_ylabel("dim T(v-1)")
    for k in range(1, repchar.ideal_level(vmax, p) + 1):
        a1.axvline(p**k - 1, color="grey", lw=0.6, ls=":")
    a2.step(xs, [len(r.nabla) for r in rows], where="mid", label="nabla factors of T")
    a2.step(xs, [len(r.delta_factors) for r in rows], where="mid", label="simple factors of Delta")
    a2.set_xlabel("v-1")
    a2.set_ylabel("count")
    a2.legend()
    a1.set_title(f"tilting characters, p={p}")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def write_arrows_csv(p: int, vmax: int, path: Path) -> Path:
    g = quiveralg.quiver_graph(p, vmax)
    with open(path, "w", newline="") as fh:
        wr = csv.writer(fh)
        wr.writerow(["source", "target", "kind", "S", "block"])
        for a, b, kind, S in g.arrows:
            wr.writerow([a, b, kind, " ".join(map(str, S)), padic.block_of(a + 1, p) - 1])
    return path


def make_report(p: int, vmax: int, out: str | Path) -> list[Path]:
    out = Path(out)
    out.mkdir(parents=True, exist_ok=True)
    files = [
        plot_quiver(p, vmax, out / f"quiver_p{p}.png"),
        plot_characters(p, vmax, out / f"characters_p{p}.png"),
        write_arrows_csv(p, vmax, out / f"quiver_p{p}.csv"),
    ]
    path = out / f"characters_p{p}.csv"
    path.write_text(repchar.to_csv(repchar.table(p, vmax)))
    files.append(path)
    return files
