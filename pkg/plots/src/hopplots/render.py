"""CSV loading, schema validation, and matplotlib rendering.

Read-only with respect to inputs and deterministic: the Agg backend with a
pinned style and stripped metadata re-renders to an identical byte stream.
"""

from __future__ import annotations

import csv
import json
import sys
from dataclasses import dataclass, field

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

from .figures import FIGURES, FigureDef  # noqa: E402


class SchemaError(ValueError):
    """The CSV does not carry the columns the figure needs."""


@dataclass(frozen=True)
class FigureSpec:
    """One rendering job: figure id, input CSV path(s), output image."""

    figure: str
    inputs: tuple[str, ...]
    output: str
    xlabel: str | None = None
    ylabel: str | None = None
    title: str | None = None
    series: dict[str, str] = field(default_factory=dict)

    @classmethod
    def from_json(cls, path: str) -> "FigureSpec":
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
        inputs = raw.get("inputs") or [raw["input"]]
        return cls(
            figure=raw["figure"],
            inputs=tuple(inputs),
            output=raw["output"],
            xlabel=raw.get("xlabel"),
            ylabel=raw.get("ylabel"),
            title=raw.get("title"),
            series=dict(raw.get("series", {})),
        )


def load_csv(path: str) -> dict[str, list]:
    """Columns of a hopenergy CSV; '#' comment lines are skipped."""
    with open(path, "r", encoding="utf-8", newline="") as fh:
        rows = [r for r in csv.reader(line for line in fh if not line.startswith("#"))]
    if not rows:
        raise SchemaError(f"{path}: no header row")
    header = rows[0]
    columns: dict[str, list] = {name: [] for name in header}
    for row in rows[1:]:
        for name, cell in zip(header, row):
            try:
                columns[name].append(float(cell))
            except ValueError:
                columns[name].append(cell)
    return columns


def _require(columns: dict[str, list], names, path: str) -> None:
    missing = [n for n in names if n not in columns]
    if missing:
        raise SchemaError(f"{path}: missing columns {', '.join(missing)}")


def _plot_panel(ax, columns: dict[str, list], fig_def: FigureDef, series: dict[str, str]):
    xs = columns[fig_def.x]
    if fig_def.group_by and any(v != "" for v in columns.get(fig_def.group_by, [])):
        groups: dict[object, list[int]] = {}
        for i, key in enumerate(columns[fig_def.group_by]):
            groups.setdefault(key, []).append(i)
        for key in sorted(groups, key=str):
            idx = groups[key]
            for column, label in series.items():
                ax.plot(
                    [xs[i] for i in idx],
                    [columns[column][i] for i in idx],
                    marker="o",
                    markersize=3,
                    label=f"{label} [{key}]",
                )
    else:
        for column, label in series.items():
            err_col = fig_def.errorbars.get(column)
            if err_col and err_col in columns:
                ax.errorbar(xs, columns[column], yerr=columns[err_col],
                            marker="o", markersize=3, capsize=3, label=label)
            else:
                ax.plot(xs, columns[column], marker="o", markersize=3, label=label)
    if fig_def.logx:
        ax.set_xscale("log")
    if fig_def.logy:
        ax.set_yscale("log")


def render(spec: FigureSpec) -> str:
    """Render one spec to its output path; returns the path."""
    fig_def = FIGURES.get(spec.figure)
    if fig_def is None:
        raise SchemaError(f"unknown figure id {spec.figure!r}; "
                          f"known: {', '.join(sorted(FIGURES))}")
    series = spec.series or fig_def.series

    panels = []
    for path in spec.inputs:
        columns = load_csv(path)
        _require(columns, [fig_def.x, *series], path)
        panels.append((path, columns))

    fig, axes = plt.subplots(
        1, len(panels), figsize=(6.4 * len(panels), 4.8), squeeze=False
    )
    for ax, (path, columns) in zip(axes[0], panels):
        if not columns[fig_def.x]:
            print(f"warning: {path} has no data rows; rendering empty axes",
                  file=sys.stderr)
        else:
            _plot_panel(ax, columns, fig_def, series)
            ax.legend(fontsize=8)
        ax.set_xlabel(spec.xlabel or fig_def.xlabel)
        ax.set_ylabel(spec.ylabel or fig_def.ylabel)
        ax.set_title(spec.title or fig_def.title, fontsize=10)
        ax.grid(True, alpha=0.3)
    fig.tight_layout()
    _save_deterministic(fig, spec.output)
    plt.close(fig)
    return spec.output


def _save_deterministic(fig, path: str) -> None:
    if path.endswith(".svg"):
        with plt.rc_context({"svg.hashsalt": "hopplots"}):
            fig.savefig(path, metadata={"Date": None})
    elif path.endswith(".png"):
        fig.savefig(path, metadata={"Software": None})
    else:
        fig.savefig(path)
