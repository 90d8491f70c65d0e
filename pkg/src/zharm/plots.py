"""Figure rendering for the report path.

Every emitted data series is written twice: a delimited CSV for external
tooling and a rendered PNG alongside it.  Rendering is file-only (Agg);
no interactive backends are touched.
"""

from __future__ import annotations

import os

__all__ = ["write_series_csv", "render_series_png", "emit_series"]


def _fmt(v) -> str:
    if isinstance(v, float):
        return f"{v:.17g}"
    return str(v)


def write_series_csv(path: str, columns: tuple[str, str], rows) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("# schema: 1\n")
        fh.write(",".join(columns) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(v) for v in row) + "\n")


def render_series_png(
    path: str,
    columns: tuple[str, str],
    rows,
    title: str,
    logx: bool = False,
    logy: bool = False,
) -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    xs = [r[0] for r in rows]
    ys = [r[1] for r in rows]
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.plot(xs, ys, marker="o", markersize=3, linewidth=1.0)
    if logx:
        ax.set_xscale("log")
    if logy:
        ax.set_yscale("log")
    ax.set_xlabel(columns[0])
    ax.set_ylabel(columns[1])
    ax.set_title(title)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def emit_series(
    out_dir: str,
    stem: str,
    columns: tuple[str, str],
    rows,
    title: str,
    logx: bool = False,
    logy: bool = False,
) -> list[str]:
    """Write stem.csv and stem.png under out_dir; returns the paths."""
    os.makedirs(out_dir, exist_ok=True)
    rows = list(rows)
    csv_path = os.path.join(out_dir, stem + ".csv")
    png_path = os.path.join(out_dir, stem + ".png")
    write_series_csv(csv_path, columns, rows)
    render_series_png(png_path, columns, rows, title, logx=logx, logy=logy)
    return [csv_path, png_path]
