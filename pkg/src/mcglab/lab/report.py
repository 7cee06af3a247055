"""Report emission: CSV rows, JSON sidecar, PNG figures."""
from __future__ import annotations

import csv
import json
from pathlib import Path
from typing import Sequence

from .scans import ScanReport, fmt


def sidecar_path(out: str | Path) -> Path:
    return Path(out).with_suffix(".json")


def figure_path(out: str | Path) -> Path:
    return Path(out).with_suffix(".png")


def write_csv(path: str | Path, columns: Sequence[str], rows: Sequence[tuple]) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(columns)
        for r in rows:
            w.writerow([fmt(x) for x in r])


def read_csv(path: str | Path) -> tuple[list[str], list[tuple]]:
    """Rows come back as strings, with integer-looking cells converted."""
    def cell(x: str):
        try:
            return int(x)
        except ValueError:
            return x

    with Path(path).open(newline="") as fh:
        r = csv.reader(fh)
        header = next(r)
        return header, [tuple(cell(x) for x in row) for row in r]


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (str, int, float, bool)) or x is None:
        return x
    return fmt(x)


def write_sidecar(path: str | Path, report: ScanReport) -> None:
    doc = {
        "passed": report.passed,
        "summary": _jsonable(report.summary),
        "provenance": _jsonable(report.provenance),
        "columns": list(report.columns),
        "rows": len(report.rows),
    }
    Path(path).write_text(json.dumps(doc, indent=1, sort_keys=True) + "\n")


# figures --------------------------------------------------------------------------------

def _col(report: ScanReport, name: str) -> list:
    i = report.columns.index(name)
    return [r[i] for r in report.rows]


def _hist(ax, values, label):
    from collections import Counter

    counts = sorted(Counter(values).items())
    ax.bar([str(k) for k, _ in counts], [v for _, v in counts])
    ax.set_xlabel(label)
    ax.set_ylabel("count")


def render_figure(path: str | Path, scan: str, report: ScanReport) -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(6, 4))
    if not report.rows:
        ax.text(0.5, 0.5, "no rows", ha="center", va="center")
    elif scan == "behrstock":
        for length in sorted(set(_col(report, "word_length"))):
            vals = [r[4] for r in report.rows if r[1] == length]
            ax.hist(vals, bins=range(0, max(vals) + 2), alpha=0.5, label=f"L = {length}")
        ax.set_xlabel("min(dY, dZ)")
        ax.set_ylabel("count")
        ax.legend()
    elif scan == "em_projection":
        _hist(ax, _col(report, "max_dY"), "max d_Y over domains, per edge")
    elif scan == "distance_formula":
        for seed in sorted(set(_col(report, "seed"))):
            sel = [r for r in report.rows if r[0] == seed]
            ax.scatter([r[3] for r in sel], [r[4] for r in sel], s=6, alpha=0.4, label=f"seed {seed}")
        ax.set_xlabel("marking distance")
        ax.set_ylabel("thresholded projection sum")
        ax.legend()
    elif scan == "hyperbolicity":
        _hist(ax, [fmt(x) for x in _col(report, "delta")], "four-point delta")
    elif scan == "orbit":
        n = _col(report, "n")
        ax.plot(n, _col(report, "d_S"), label="d_S")
        ax.plot(n, _col(report, "sup_annuli"), label="sup over annuli")
        ax.set_xlabel("n")
        ax.legend()
    elif scan == "divergence":
        pts = [(r[0], r[3]) for r in report.rows if r[3] != "none"]
        ax.plot(_col(report, "r"), _col(report, "plain"), "o-", label="plain")
        if pts:
            ax.plot([p[0] for p in pts], [p[1] for p in pts], "s-", label="avoiding")
        ax.set_xlabel("r")
        ax.set_ylabel("path length")
        ax.legend()
    elif scan == "contraction":
        ax.scatter(_col(report, "r"), _col(report, "diam_phi"), s=8, alpha=0.5)
        ax.set_xlabel("r = d(mu, projection)")
        ax.set_ylabel("diameter of projected images")
    elif scan == "calibrate":
        _hist(ax, [r[3] for r in report.rows if r[2] == "M2"], "largest off-path annular distance")
    ax.set_title(scan)
    fig.tight_layout()
    fig.savefig(path, dpi=100)
    plt.close(fig)


def emit(report: ScanReport, scan: str, out: str | Path, figures: bool = True) -> dict:
    out = Path(out)
    write_csv(out, report.columns, report.rows)
    write_sidecar(sidecar_path(out), report)
    paths = {"csv": str(out), "json": str(sidecar_path(out))}
    if figures:
        render_figure(figure_path(out), scan, report)
        paths["png"] = str(figure_path(out))
    return paths
