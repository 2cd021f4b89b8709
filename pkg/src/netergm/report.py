"""Result tables: shared layout, text alignment, CSV and JSON writers.

Every table the CLI emits goes through :class:`Table`, so the aligned text
view and the machine-readable file always hold the same cells. Numbers are
formatted to three decimals; undefined values render blank; p-values get
the usual significance ladder (0.001, 0.01, 0.05, 0.1).
"""

from __future__ import annotations

import csv
import json
import math
import os
from dataclasses import dataclass, field

import numpy as np

from .descriptives import DescriptiveRow
from .estimator import FitResult
from .temporal import BootstrapResult

__all__ = [
    "Table",
    "significance_stars",
    "format_number",
    "describe_table",
    "fit_table",
    "btergm_table",
    "formation_table",
    "trace_table",
    "render_text",
    "emit",
]


def significance_stars(p) -> str:
    """Classic ladder: *** under 0.001, ** under 0.01, * under 0.05,
    . under 0.1, empty otherwise (or for missing p)."""
    if p is None or (isinstance(p, float) and math.isnan(p)):
        return ""
    if p < 0.001:
        return "***"
    if p < 0.01:
        return "**"
    if p < 0.05:
        return "*"
    if p < 0.1:
        return "."
    return ""


def format_number(x, decimals: int = 3) -> str:
    """Fixed-point with ``decimals`` places; blank for None/NaN; ints bare."""
    if x is None:
        return ""
    if isinstance(x, (bool, np.bool_)):
        return "yes" if x else "no"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    xf = float(x)
    if math.isnan(xf):
        return ""
    return f"{xf:.{decimals}f}"


@dataclass(frozen=True)
class Table:
    """A titled grid of already-formatted string cells plus footer lines."""

    title: str
    headers: tuple
    rows: tuple
    footers: tuple = field(default_factory=tuple)


def describe_table(labeled_rows) -> Table:
    """One row per network from (label, DescriptiveRow) pairs."""
    headers = (
        "network",
        "nodes",
        "edges",
        "density",
        "mean_indegree",
        "mean_outdegree",
        "mean_total_degree",
        "reciprocity",
        "transitivity",
        "indegree_centralization",
        "outdegree_centralization",
        "total_degree_centralization",
        "betweenness_centralization",
        "eigenvector_centralization",
    )
    rows = []
    for label, row in labeled_rows:
        assert isinstance(row, DescriptiveRow)
        d = row.as_dict()
        rows.append(tuple([label] + [format_number(d[h]) for h in headers[1:]]))
    return Table("Descriptive statistics", headers, tuple(rows))


def _flag_note(fit: FitResult, k: int) -> str:
    if fit.term_names[k] in fit.dropped_terms:
        return "dropped"
    if fit.separation_flags[k]:
        return "separation"
    return ""


def fit_table(fit: FitResult, title: str = "Model fit") -> Table:
    headers = ("term", "estimate", "std_error", "exp_estimate", "p_value", "sig", "note")
    rows = []
    for k, name in enumerate(fit.term_names):
        rows.append(
            (
                name,
                format_number(fit.coefficients[k]),
                format_number(fit.standard_errors[k]),
                format_number(fit.exp_coefficients[k]),
                format_number(fit.p_values[k]),
                significance_stars(
                    None if math.isnan(fit.p_values[k]) else float(fit.p_values[k])
                ),
                _flag_note(fit, k),
            )
        )
    footers = (
        f"null_pseudo_deviance: {format_number(fit.null_deviance)}",
        f"residual_pseudo_deviance: {format_number(fit.residual_deviance)}",
        f"aic: {format_number(fit.aic)}",
        f"bic: {format_number(fit.bic)}",
        f"n_dyads: {fit.n_dyads}",
        f"n_params: {fit.n_params}",
        f"converged: {'yes' if fit.converged else 'no'}",
    )
    return Table(title, headers, tuple(rows), footers)


def btergm_table(boot: BootstrapResult, title: str = "Pooled temporal fit") -> Table:
    headers = ("term", "estimate", "boot_se", "exp_estimate", "ci_lower", "ci_upper", "sig")
    rows = []
    for k, name in enumerate(boot.term_names):
        est = boot.point_estimates[k]
        rows.append(
            (
                name,
                format_number(est),
                format_number(boot.standard_errors[k]),
                format_number(np.exp(est)),
                format_number(boot.ci_lower[k]),
                format_number(boot.ci_upper[k]),
                "*" if boot.significant[k] else "",
            )
        )
    footers = (
        f"replications: {boot.replications}",
        f"valid_replicates: {boot.n_valid}",
        f"dropped_replicates: {boot.dropped_replicates}",
        f"bootstrap_mode: {boot.mode}",
        f"seed: {boot.seed}",
    )
    return Table(title, headers, tuple(rows), footers)


def formation_table(
    fit: FitResult,
    title: str = "Formation model",
    bic_all_dyads: float | None = None,
) -> Table:
    headers = ("term", "estimate", "std_error", "p_value", "sig", "note")
    rows = []
    for k, name in enumerate(fit.term_names):
        rows.append(
            (
                name,
                format_number(fit.coefficients[k]),
                format_number(fit.standard_errors[k]),
                format_number(fit.p_values[k]),
                significance_stars(
                    None if math.isnan(fit.p_values[k]) else float(fit.p_values[k])
                ),
                _flag_note(fit, k),
            )
        )
    footers = [
        f"log_likelihood: {format_number(fit.log_likelihood)}",
        f"aic: {format_number(fit.aic)}",
        f"bic: {format_number(fit.bic)}",
        f"n_dyads: {fit.n_dyads}",
        f"n_params: {fit.n_params}",
        f"converged: {'yes' if fit.converged else 'no'}",
    ]
    if bic_all_dyads is not None:
        footers.insert(3, f"bic_all_dyads: {format_number(bic_all_dyads)}")
    return Table(title, headers, tuple(rows), tuple(footers))


def trace_table(term_names, stats: np.ndarray, title: str = "Sampler trace") -> Table:
    headers = ("sample",) + tuple(term_names)
    rows = tuple(
        (str(k),) + tuple(format_number(v) for v in stat_row)
        for k, stat_row in enumerate(stats)
    )
    return Table(title, headers, rows)


def render_text(table: Table) -> str:
    """Aligned monospace view: first column left, the rest right."""
    cols = list(zip(table.headers, *table.rows)) if table.rows else [
        (h,) for h in table.headers
    ]
    widths = [max(len(str(c)) for c in col) for col in cols]
    lines = [table.title, "=" * len(table.title)]

    def fmt_row(cells):
        parts = []
        for k, cell in enumerate(cells):
            cell = str(cell)
            parts.append(cell.ljust(widths[k]) if k == 0 else cell.rjust(widths[k]))
        return "  ".join(parts).rstrip()

    lines.append(fmt_row(table.headers))
    lines.append("-" * (sum(widths) + 2 * (len(widths) - 1)))
    lines.extend(fmt_row(r) for r in table.rows)
    if table.footers:
        lines.append("")
        lines.extend(table.footers)
    return "\n".join(lines) + "\n"


def _write_csv(table: Table, path):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(table.headers)
        writer.writerows(table.rows)
        for line in table.footers:
            writer.writerow(["# " + line])


def _write_json(table: Table, path):
    payload = {
        "title": table.title,
        "headers": list(table.headers),
        "rows": [list(r) for r in table.rows],
        "footers": list(table.footers),
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def emit(table: Table, out_dir, name: str, fmt: str = "text") -> list:
    """Write the aligned text file plus one machine-readable file.

    ``fmt`` picks the machine format: json for ``json``, csv otherwise.
    Returns the written paths.
    """
    os.makedirs(out_dir, exist_ok=True)
    txt_path = os.path.join(out_dir, f"{name}.txt")
    with open(txt_path, "w", encoding="utf-8") as fh:
        fh.write(render_text(table))
    if fmt == "json":
        data_path = os.path.join(out_dir, f"{name}.json")
        _write_json(table, data_path)
    else:
        data_path = os.path.join(out_dir, f"{name}.csv")
        _write_csv(table, data_path)
    return [txt_path, data_path]
