"""Figure construction and deterministic rendering.

Everything here is built on the object-oriented matplotlib API; no
pyplot, so no global state leaks between renders.  Determinism is part
of the contract: the same table must produce byte-identical output, so
the SVG hash salt is pinned and timestamps are stripped from metadata.
"""

import matplotlib
from matplotlib.figure import Figure

from .reader import read_sweep

# Fixed color assignment for the L groups, smallest L first (the
# matplotlib "tab10" palette).  Pinned here so the series colors never
# depend on matplotlib defaults or rcParams.
COLOR_CYCLE = (
    "#1f77b4",
    "#ff7f0e",
    "#2ca02c",
    "#d62728",
    "#9467bd",
    "#8c564b",
    "#e377c2",
    "#7f7f7f",
    "#bcbd22",
    "#17becf",
)

_FORMAT_EXTENSIONS = {"vector": "svg", "raster": "png"}


def build_figure(table):
    """Build the comparison chart for a SweepTable.

    One color per L: the closed-form delta as a connected line, the
    measured delta as unconnected circles on top.  Both axes are
    logarithmic.  Returns the matplotlib Figure.
    """
    fig = Figure(figsize=(6.4, 4.8))
    ax = fig.add_subplot()
    for position, (num_ris, rows) in enumerate(sorted(table.groups().items())):
        color = COLOR_CYCLE[position % len(COLOR_CYCLE)]
        x = [row.N_I for row in rows]
        ax.plot(
            x,
            [row.delta_theory for row in rows],
            color=color,
            linestyle="-",
            label=f"L = {num_ris}",
        )
        ax.plot(
            x,
            [row.delta_empirical for row in rows],
            color=color,
            linestyle="None",
            marker="o",
            markerfacecolor="none",
        )
    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.set_xlabel("N_I")
    ax.set_ylabel("relative difference \N{GREEK SMALL LETTER DELTA}")
    ax.grid(True, which="both", alpha=0.3)
    ax.legend()
    return fig


def save_figure(fig, out_path, image_format):
    """Write the figure as svg or png with reproducible metadata."""
    if image_format == "svg":
        # unsalted SVG ids embed a fresh uuid per save; pin the salt and
        # drop the Date stamp so the bytes are stable
        with matplotlib.rc_context({"svg.hashsalt": "figplot"}):
            fig.savefig(
                out_path,
                format="svg",
                metadata={"Date": None, "Creator": "figplot"},
            )
    elif image_format == "png":
        fig.savefig(
            out_path,
            format="png",
            dpi=150,
            metadata={"Software": "figplot"},
        )
    else:
        raise ValueError(f"unsupported image format: {image_format!r}")


def resolve_format(out_path, choice=None):
    """Pick svg or png from the explicit choice or the file extension.

    ``choice`` is "vector" or "raster" when given and wins over the
    extension.  Without either signal the default is vector.
    """
    if choice is not None:
        return _FORMAT_EXTENSIONS[choice]
    suffix = str(out_path).rsplit(".", 1)
    if len(suffix) == 2 and suffix[1].lower() in ("svg", "png"):
        return suffix[1].lower()
    return "svg"


def render(csv_path, out_path, image_format=None):
    """Read a delta-sweep CSV and write the chart to out_path.

    ``image_format`` is "vector", "raster", or None to infer from the
    output extension.
    """
    table = read_sweep(csv_path)
    fig = build_figure(table)
    save_figure(fig, out_path, resolve_format(out_path, image_format))
