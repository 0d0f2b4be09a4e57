"""SVG chart of the complexity bounds on the (S, U) grid."""
from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
from matplotlib.patches import Patch  # noqa: E402

from .complexity import Status  # noqa: E402

COLOURS = {
    Status.EXACT: "#d9ead3",
    Status.BOUNDED: "#fce5cd",
    Status.LOWER_ONLY: "#eeeeee",
}


def _label(cell) -> str:
    if cell.status == Status.EXACT:
        return str(cell.lower)
    if cell.upper is None:
        return f">={cell.lower}"
    return f"{cell.lower}..{cell.upper}"


def grid_figure(cells, S_max: int, U_max: int):
    """Figure with one square per cell; polyhedral pairs are outlined (they have C = 0)."""
    fig, ax = plt.subplots(figsize=(0.55 * U_max + 1.5, 0.55 * S_max + 1.2))
    for c in cells:
        x, y = c.U - 1, c.S - 1
        ax.add_patch(plt.Rectangle((x, y), 1, 1, facecolor=COLOURS[c.status],
                                   edgecolor="k" if c.pair else "#999999",
                                   linewidth=1.4 if c.pair else 0.4))
        ax.text(x + 0.5, y + 0.5, _label(c), ha="center", va="center",
                fontsize=6 if c.upper and c.upper >= 10 and c.status != Status.EXACT else 7)
    ax.set_xlim(0, U_max)
    ax.set_ylim(0, S_max)
    ax.set_xticks([k + 0.5 for k in range(U_max)], [str(k + 1) for k in range(U_max)])
    ax.set_yticks([k + 0.5 for k in range(S_max)], [str(k + 1) for k in range(S_max)])
    ax.set_xlabel("U (unstable)")
    ax.set_ylabel("S (stable)")
    ax.set_aspect("equal")
    ax.tick_params(length=0)
    ax.legend(handles=[Patch(facecolor=v, edgecolor="#999999", label=str(k)) for k, v in COLOURS.items()],
              loc="upper left", bbox_to_anchor=(1.01, 1), fontsize=7, frameon=False)
    fig.tight_layout()
    return fig


def save_grid_svg(cells, S_max: int, U_max: int, path) -> None:
    fig = grid_figure(cells, S_max, U_max)
    fig.savefig(path, format="svg")
    plt.close(fig)
