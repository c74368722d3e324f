"""Plot-ready tab-separated tables for grids, curves, and decompositions.

Every table starts with '#'-prefixed key=value comment lines carrying the
estimation config, so a table is self-describing and reproducible.
"""

from __future__ import annotations

from .csvio import format_number, write_table
from .estimator import (
    EstimationConfig,
    GeneralizedHurstCurve,
    HeightCovarianceGrid,
    ScalingDecomposition,
)

NA = "NA"
NO_SCALING_MARKER = "no-scaling"


def config_comments(config: EstimationConfig) -> list[str]:
    lo, hi = config.tau_max_range
    return [
        "q_grid=" + ",".join(format_number(q) for q in config.q_grid),
        f"tau_min={config.tau_min}",
        f"tau_max_range={lo}..{hi}",
        f"filter={config.filter}",
        f"min_fit_points={config.min_fit_points}",
        f"confidence={format_number(config.confidence)}",
    ]


def write_grid(path, grid: HeightCovarianceGrid, comments: list[str] = ()) -> None:
    """Rows of (q, tau, K) covering the whole lattice."""
    rows = []
    for i, q in enumerate(grid.q_values):
        for j, tau in enumerate(grid.tau_values):
            rows.append((q, tau, grid.k_matrix[i, j]))
    write_table(
        path,
        [f"series_x={grid.x_label}", f"series_y={grid.y_label}"]
        + list(comments)
        + config_comments(grid.config),
        ["q", "tau", "k"],
        rows,
    )


def _curve_cells(curve: GeneralizedHurstCurve, q: float):
    """(h, ci_low, ci_high, n, note) table cells for one q."""
    for e in curve.estimates:
        if abs(e.q - q) < 1e-12:
            return e.h, e.ci_low, e.ci_high, e.n_resamples, "ok"
    for fq, msg in curve.failures:
        if abs(fq - q) < 1e-12:
            return NA, NA, NA, 0, msg
    return NA, NA, NA, 0, "not estimated"


def write_curve(path, curve: GeneralizedHurstCurve, comments: list[str] = ()) -> None:
    """Rows of (q, h, ci_low, ci_high, n, note); failed q keep a note only."""
    rows = []
    for q in curve.config.q_grid:
        h, lo, hi, n, note = _curve_cells(curve, q)
        rows.append((q, h, lo, hi, n, note))
    write_table(
        path,
        [f"series_x={curve.x_label}", f"series_y={curve.y_label}"]
        + list(comments)
        + config_comments(curve.config),
        ["q", "h", "ci_low", "ci_high", "n", "note"],
        rows,
    )


def write_pair_curves(
    path,
    xy: GeneralizedHurstCurve,
    x_curve: GeneralizedHurstCurve,
    y_curve: GeneralizedHurstCurve,
    comments: list[str] = (),
) -> None:
    """Joint and univariate exponents side by side, with the average column."""
    rows = []
    for q in xy.config.q_grid:
        h_xy, lo, hi, n, note_xy = _curve_cells(xy, q)
        h_x = _curve_cells(x_curve, q)
        h_y = _curve_cells(y_curve, q)
        notes = [note_xy]
        for tag, cells in (("x", h_x), ("y", h_y)):
            if cells[4] != "ok":
                notes.append(f"{tag}: {cells[4]}")
        if all(isinstance(v, float) for v in (h_x[0], h_y[0])):
            h_avg = 0.5 * (h_x[0] + h_y[0])
        else:
            h_avg = NA
        note = "ok" if notes == ["ok"] else "; ".join(
            n for n in notes if n != "ok"
        )
        rows.append((q, h_x[0], h_y[0], h_xy, lo, hi, h_avg, n, note))
    write_table(
        path,
        [f"series_x={xy.x_label}", f"series_y={xy.y_label}"]
        + list(comments)
        + config_comments(xy.config),
        ["q", "h_x", "h_y", "h_xy", "ci_low", "ci_high", "h_avg", "n", "note"],
        rows,
    )


def write_decomposition(
    path, dec: ScalingDecomposition, comments: list[str] = ()
) -> None:
    """Rows of (q, tau, product_term, covariance_term) plus the alpha record."""
    alpha = NO_SCALING_MARKER if dec.alpha is None else format_number(dec.alpha)
    rows = [
        (dec.q, tau, dec.product_term[tau], dec.covariance_term[tau])
        for tau in sorted(dec.product_term)
    ]
    rows.append(("alpha", dec.q, alpha, len(dec.alpha_fit_taus)))
    write_table(
        path,
        [f"series_x={dec.x_label}", f"series_y={dec.y_label}"]
        + list(comments)
        + config_comments(dec.config)
        + [f"excluded_taus={dec.n_excluded}"],
        ["q", "tau", "product_term", "covariance_term"],
        rows,
    )
