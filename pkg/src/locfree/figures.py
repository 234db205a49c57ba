"""Figure rendering for the report path.

Every figure is drawn from recomputed combinatorial data (height profiles,
link graphs, piece margins); nothing is digitized from external pictures.
matplotlib is imported lazily so the exact-arithmetic core stays
import-light when no figures are requested.
"""

import math
from fractions import Fraction


def _plt():
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    return plt


def save_height_profiles(cells, path):
    """Staircase plots of each cell boundary's height profile."""
    plt = _plt()
    fig, axes = plt.subplots(len(cells), 1,
                             figsize=(8, 2.2 * len(cells)), squeeze=False)
    for ax, cell in zip(axes[:, 0], cells):
        ys = list(cell.heights) + [cell.heights[0]]
        xs = range(len(ys))
        ax.step(xs, ys, where="post", lw=1.5)
        ax.plot(xs, ys, "o", ms=3)
        for level in range(cell.min_height, cell.max_height + 1):
            ax.axhline(level, color="0.85", lw=0.6, zorder=0)
        label = cell.boundary.letters
        if len(label) > 40:
            label = label[:37] + "..."
        ax.set_title(f"boundary {label} (area counts arcs at interior levels)",
                     fontsize=9)
        ax.set_ylabel("height")
    axes[-1, 0].set_xlabel("boundary vertex")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def save_link_graphs(asc, desc, path):
    """Ascending and descending links drawn on vertex circles."""
    plt = _plt()
    fig, axes = plt.subplots(1, 2, figsize=(8, 4))
    for ax, link, title in ((axes[0], asc, "ascending link"),
                            (axes[1], desc, "descending link")):
        n = len(link.vertices)
        pos = {}
        for i, v in enumerate(link.vertices):
            angle = 2 * math.pi * i / n + math.pi / 2
            pos[v] = (math.cos(angle), math.sin(angle))
        seen = {}
        for a, b, ri, ci in link.edges:
            (x1, y1), (x2, y2) = pos[a], pos[b]
            bend = seen.get((a, b), 0)
            seen[(a, b)] = bend + 1
            mx, my = (x1 + x2) / 2, (y1 + y2) / 2
            ax.annotate("", xy=(x2, y2), xytext=(x1, y1),
                        arrowprops=dict(arrowstyle="-", lw=1.4,
                                        connectionstyle=f"arc3,rad={0.25 * bend}"))
            ax.text(mx, my + 0.08 * bend, f"r{ri}c{ci}", fontsize=7,
                    ha="center", color="0.4")
        for v, (x, y) in pos.items():
            ax.plot([x], [y], "o", ms=16, color="#4878d0")
            ax.text(x, y, v, ha="center", va="center", fontsize=9,
                    color="white")
        verdict = "tree" if link.is_tree() else "not a tree"
        ax.set_title(f"{title}: {verdict}", fontsize=10)
        ax.set_xlim(-1.4, 1.4)
        ax.set_ylim(-1.4, 1.4)
        ax.set_aspect("equal")
        ax.axis("off")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def save_piece_margins(entries, path):
    """Max piece length against the metric threshold, one bar per input.

    ``entries`` is a list of (label, relator_length, max_piece, threshold)
    with the threshold an exact rational.
    """
    plt = _plt()
    fig, ax = plt.subplots(figsize=(8, 4))
    labels = [e[0] for e in entries]
    xs = range(len(entries))
    pieces = [e[2] for e in entries]
    thresholds = [float(Fraction(e[3])) for e in entries]
    ax.bar(xs, pieces, width=0.6, color="#4878d0", label="max piece")
    ax.plot(xs, thresholds, "r_", ms=24, mew=2, label="threshold")
    for x, e in zip(xs, entries):
        ax.text(x, e[2] + 0.3, str(e[2]), ha="center", fontsize=8)
    ax.set_xticks(list(xs))
    ax.set_xticklabels(labels, fontsize=8)
    ax.set_ylabel("letters")
    ax.set_title("piece length vs. metric threshold "
                 "(condition holds when the bar stays below the mark)",
                 fontsize=10)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def save_length_trace(lengths, path):
    """Total relator length after each script move."""
    plt = _plt()
    fig, ax = plt.subplots(figsize=(8, 3.5))
    ax.plot(range(len(lengths)), lengths, "o-", lw=1.4)
    ax.set_xlabel("moves applied")
    ax.set_ylabel("total relator length")
    ax.set_title("presentation size along the rewriting script", fontsize=10)
    ax.grid(True, color="0.9")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
