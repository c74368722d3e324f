"""Command-line front end.

Grammar: mfhxa <generate|transform|estimate|decompose|replicate>
              [name] [key=value ...] [--in PATH ...] [--out PATH]

Every output file starts with '#'-prefixed manifest lines (tool version,
resolved parameters, input digests, seed, timestamp) so a result can be
reproduced from the file alone. All numbers print with 12 significant
digits. MFHXA_SEED provides a fallback when a command needs a seed and
none is given.
"""

from __future__ import annotations

import argparse
import dataclasses
import hashlib
import os
import sys
from datetime import datetime, timezone
from pathlib import Path

from . import __version__
from .csvio import format_number, read_columns, write_csv, write_table
from .errors import MfhxaError, ParameterError
from .estimator import (
    EstimationConfig,
    covariance_grid,
    fit_hurst_single,
    hurst_curve_from_grid,
    real_preset,
    scaling_decomposition,
    synthetic_preset,
)
from .generators import (
    ArfimaConfig,
    MbmConfig,
    NoisePairConfig,
    TwoComponentConfig,
    correlated_noise_pair,
    generate_arfima,
    generate_mbm,
    generate_two_component,
)
from .series import (
    TimeSeries,
    absolute_returns,
    accumulate,
    log_returns,
    volume_relative_deviation,
)
from .tables import (
    NO_SCALING_MARKER,
    write_curve,
    write_grid,
    write_pair_curves,
)

GENERATORS = ("mbm", "arfima", "arfima-pair", "two-component")
TRANSFORMS = ("log-returns", "abs-returns", "volume-deviation")
FIGURES = (
    "fig1a", "fig1b", "fig1c", "fig1d", "fig1e", "fig1f", "fig1g", "fig1h",
    "fig2a", "fig2b", "fig2c", "fig2d",
)


class Params:
    """key=value parameters with typed access and unknown-key detection."""

    def __init__(self, tokens: list[str]):
        self.raw: dict[str, str] = {}
        for tok in tokens:
            if "=" not in tok:
                raise ParameterError(f"expected key=value, got {tok!r}")
            key, value = tok.split("=", 1)
            if not key or key in self.raw:
                raise ParameterError(f"bad or repeated parameter key {key!r}")
            self.raw[key] = value
        self.used: set[str] = set()

    def _take(self, key: str):
        self.used.add(key)
        return self.raw.get(key)

    def string(self, key: str, default: str | None = None, choices=None) -> str:
        v = self._take(key)
        if v is None:
            if default is None:
                raise ParameterError(f"missing required parameter {key!r}")
            v = default
        if choices and v not in choices:
            raise ParameterError(
                f"{key}={v!r} invalid; expected one of {', '.join(choices)}"
            )
        return v

    def number(self, key: str, default: float | None = None) -> float:
        v = self._take(key)
        if v is None:
            if default is None:
                raise ParameterError(f"missing required parameter {key!r}")
            return default
        try:
            return float(v)
        except ValueError:
            raise ParameterError(f"{key}={v!r} is not a number") from None

    def integer(self, key: str, default: int | None = None) -> int:
        v = self._take(key)
        if v is None:
            if default is None:
                raise ParameterError(f"missing required parameter {key!r}")
            return default
        try:
            return int(v)
        except ValueError:
            raise ParameterError(f"{key}={v!r} is not an integer") from None

    def tau_range(self, key: str, default: tuple[int, int]) -> tuple[int, int]:
        v = self._take(key)
        if v is None:
            return default
        try:
            if ".." in v:
                lo, hi = v.split("..", 1)
                return int(lo), int(hi)
            return int(v), int(v)
        except ValueError:
            raise ParameterError(f"{key}={v!r} is not N or LO..HI") from None

    def seed(self, key: str = "seed") -> int:
        v = self._take(key)
        if v is None:
            v = os.environ.get("MFHXA_SEED")
        if v is None:
            raise ParameterError(
                "missing required parameter 'seed' (or set MFHXA_SEED)"
            )
        try:
            return int(v)
        except ValueError:
            raise ParameterError(f"seed={v!r} is not an integer") from None

    def reject_unknown(self) -> None:
        unknown = sorted(set(self.raw) - self.used)
        if unknown:
            raise ParameterError(f"unknown parameter key(s): {', '.join(unknown)}")


def _sha256(path: Path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 16), b""):
            h.update(chunk)
    return h.hexdigest()


def manifest(command: str, params: dict, inputs: list[Path], seed=None) -> list[str]:
    lines = [f"tool=mfhxa {__version__}", f"command={command}"]
    for key in sorted(params):
        lines.append(f"{key}={params[key]}")
    for i, path in enumerate(inputs, start=1):
        lines.append(f"input{i}={path}")
        lines.append(f"input{i}_sha256={_sha256(path)}")
    if seed is not None:
        lines.append(f"seed={seed}")
    lines.append(f"timestamp={datetime.now(timezone.utc).isoformat()}")
    return lines


def _require_out(out) -> Path:
    if out is None:
        raise ParameterError("missing --out PATH")
    return Path(out)


def _require_inputs(inputs, lo: int, hi: int) -> list[Path]:
    if not lo <= len(inputs) <= hi:
        want = str(lo) if lo == hi else f"{lo} or {hi}"
        raise ParameterError(f"expected {want} --in PATH argument(s), got {len(inputs)}")
    return [Path(p) for p in inputs]


# ---------------------------------------------------------------- generate

def cmd_generate(name: str | None, params: Params, inputs, out) -> int:
    if name is None or name not in GENERATORS:
        raise ParameterError(
            f"unknown generator {name!r}; expected one of {', '.join(GENERATORS)}"
        )
    out_path = _require_out(out)
    _require_inputs(inputs, 0, 0)

    if name == "mbm":
        cfg = MbmConfig(m0=params.number("m0"), k=params.integer("k"))
        params.reject_unknown()
        series = generate_mbm(cfg)
        cols, names, meta, seed = [series.values], ["mbm"], dataclasses.asdict(cfg), None
    elif name == "arfima":
        cfg = ArfimaConfig(
            d=params.number("d"),
            length=params.integer("length"),
            truncation=params.integer("truncation", ArfimaConfig.truncation),
            burn_in=params.integer("burn_in", ArfimaConfig.burn_in),
            seed=params.seed(),
        )
        params.reject_unknown()
        series = generate_arfima(cfg)
        meta = dataclasses.asdict(cfg)
        seed = meta.pop("seed")
        cols, names = [series.values], ["arfima"]
    elif name == "arfima-pair":
        seed = params.seed()
        d1 = params.number("d1")
        d2 = params.number("d2")
        rho = params.number("rho")
        length = params.integer("length")
        truncation = params.integer("truncation", ArfimaConfig.truncation)
        burn_in = params.integer("burn_in", ArfimaConfig.burn_in)
        params.reject_unknown()
        eps, nu = correlated_noise_pair(
            NoisePairConfig(rho=rho, length=burn_in + length, seed=seed)
        )
        x = generate_arfima(
            ArfimaConfig(d1, length, truncation, burn_in, seed), noise=eps
        )
        y = generate_arfima(
            ArfimaConfig(d2, length, truncation, burn_in, seed), noise=nu
        )
        meta = {"d1": d1, "d2": d2, "rho": rho, "length": length,
                "truncation": truncation, "burn_in": burn_in}
        cols, names = [x.values, y.values], ["x", "y"]
    else:  # two-component
        cfg = TwoComponentConfig(
            d1=params.number("d1"),
            d2=params.number("d2"),
            w=params.number("w"),
            length=params.integer("length"),
            burn_in=params.integer("burn_in", TwoComponentConfig.burn_in),
            truncation=params.integer("truncation", TwoComponentConfig.truncation),
            seed=params.seed(),
        )
        params.reject_unknown()
        x, y = generate_two_component(cfg)
        meta = dataclasses.asdict(cfg)
        seed = meta.pop("seed")
        cols, names = [x.values, y.values], ["x", "y"]

    meta = {k: format_number(v) if isinstance(v, float) else v for k, v in meta.items()}
    write_csv(
        out_path,
        manifest(f"generate {name}", meta, [], seed=seed),
        names,
        cols,
    )
    return 0


# ---------------------------------------------------------------- transform

def cmd_transform(name: str | None, params: Params, inputs, out) -> int:
    if name is None or name not in TRANSFORMS:
        raise ParameterError(
            f"unknown transform {name!r}; expected one of {', '.join(TRANSFORMS)}"
        )
    out_path = _require_out(out)
    (in_path,) = _require_inputs(inputs, 1, 1)
    column = params.integer("col", 1)
    meta: dict = {"transform": name, "col": column}
    window = None
    if name == "volume-deviation":
        window = params.integer("window")
        meta["window"] = window
    params.reject_unknown()

    dates, cols, names = read_columns(in_path)
    if not 1 <= column <= len(cols):
        raise ParameterError(
            f"col={column} but input has {len(cols)} numeric column(s)"
        )
    series = TimeSeries(cols[column - 1], names[column - 1])
    if name == "log-returns":
        result = log_returns(series)
    elif name == "abs-returns":
        result = absolute_returns(series)
    else:
        result = volume_relative_deviation(series, window)

    out_dates = dates[len(dates) - len(result):] if dates is not None else None
    write_csv(
        out_path,
        manifest(f"transform {name}", meta, [in_path]),
        [name],
        [result.values],
        dates=out_dates,
    )
    return 0


# ---------------------------------------------------------------- estimate

def _build_config(params: Params, preset_name: str) -> EstimationConfig:
    base = synthetic_preset() if preset_name == "synthetic" else real_preset()
    q_min = params.number("q_min", base.q_grid[0])
    q_max = params.number("q_max", base.q_grid[-1])
    q_step = params.number("q_step", 0.1)
    n = int(round((q_max - q_min) / q_step))
    q_grid = tuple(round(q_min + i * q_step, 10) for i in range(n + 1))
    return dataclasses.replace(
        base,
        q_grid=q_grid,
        tau_min=params.integer("tau_min", base.tau_min),
        tau_max_range=params.tau_range("tau_max", base.tau_max_range),
        filter=params.string("filter", base.filter, choices=("none", "constant", "linear")),
        min_fit_points=params.integer("min_fit_points", base.min_fit_points),
        confidence=params.number("confidence", base.confidence),
    )


def _load_series(path: Path, column: int, mode: str) -> TimeSeries:
    _, cols, names = read_columns(path)
    if not 1 <= column <= len(cols):
        raise ParameterError(
            f"column {column} requested but {path} has {len(cols)} numeric column(s)"
        )
    series = TimeSeries(cols[column - 1], names[column - 1])
    return accumulate(series) if mode == "increments" else series


def cmd_estimate(params: Params, inputs, out) -> int:
    out_prefix = _require_out(out)
    preset = params.string("preset", "synthetic", choices=("synthetic", "real"))
    y_key = params.string("y", "", choices=("", "self"))
    mode = params.string("input", "levels", choices=("levels", "increments"))
    x_col = params.integer("x_col", 1)
    y_col = params.integer("y_col", 1)
    config = _build_config(params, preset)
    params.reject_unknown()

    paths = _require_inputs(inputs, 1, 2)
    x = _load_series(paths[0], x_col, mode)
    self_pair = len(paths) == 1 or y_key == "self"
    if self_pair and len(paths) == 2:
        raise ParameterError("y=self given together with a second --in PATH")
    meta = {"preset": preset, "input": mode, "pair": "self" if self_pair else "xy"}

    if self_pair:
        grid = covariance_grid(x, x, config)
        curve = hurst_curve_from_grid(grid)
        write_curve(f"{out_prefix}.curve.tsv", curve, manifest("estimate", meta, paths))
        write_grid(f"{out_prefix}.grid.tsv", grid, manifest("estimate", meta, paths))
        n_ok = len(curve.estimates)
    else:
        y = _load_series(paths[1], y_col, mode)
        grid = covariance_grid(x, y, config)
        xy = hurst_curve_from_grid(grid)
        xx = hurst_curve_from_grid(covariance_grid(x, x, config))
        yy = hurst_curve_from_grid(covariance_grid(y, y, config))
        write_pair_curves(
            f"{out_prefix}.curve.tsv", xy, xx, yy, manifest("estimate", meta, paths)
        )
        write_grid(f"{out_prefix}.grid.tsv", grid, manifest("estimate", meta, paths))
        n_ok = len(xy.estimates)

    if n_ok == 0:
        print("mfhxa: estimate: no q could be estimated; see the note column",
              file=sys.stderr)
        return 1
    return 0


# ---------------------------------------------------------------- decompose

def _decomposition_rows(x: TimeSeries, y: TimeSeries, q: float,
                        config: EstimationConfig):
    """(tau, K_x, K_y, product, covariance) rows plus header slope comments."""
    dec = scaling_decomposition(x, y, q, config)
    gx = covariance_grid(x, x, config)
    gy = covariance_grid(y, y, config)
    tau_hi = config.tau_max_range[1]
    h_x = fit_hurst_single(gx, q, tau_hi)
    h_y = fit_hurst_single(gy, q, tau_hi)
    alpha = NO_SCALING_MARKER if dec.alpha is None else format_number(dec.alpha)
    comments = [
        f"q={format_number(q)}",
        f"h_x={format_number(h_x)}",
        f"h_y={format_number(h_y)}",
        f"alpha={alpha}",
        f"alpha_n_points={len(dec.alpha_fit_taus)}",
        f"excluded_taus={dec.n_excluded}",
    ]
    rows = [
        (tau, gx.value(q, tau), gy.value(q, tau),
         dec.product_term[tau], dec.covariance_term[tau])
        for tau in config.taus
    ]
    return rows, comments


def cmd_decompose(params: Params, inputs, out) -> int:
    out_path = _require_out(out)
    q = params.number("q")
    tau_min = params.integer("tau_min", 1)
    tau_hi = params.integer("tau_max", 20)
    filt = params.string("filter", "constant", choices=("none", "constant", "linear"))
    min_fit_points = params.integer("min_fit_points", 4)
    mode = params.string("input", "levels", choices=("levels", "increments"))
    x_col = params.integer("x_col", 1)
    y_col = params.integer("y_col", 1)
    params.reject_unknown()
    paths = _require_inputs(inputs, 1, 2)
    config = EstimationConfig(
        q_grid=(q,), tau_min=tau_min, tau_max_range=(tau_hi, tau_hi),
        filter=filt, min_fit_points=min_fit_points,
    )
    x = _load_series(paths[0], x_col, mode)
    y = _load_series(paths[-1], y_col, mode) if len(paths) == 2 else x
    rows, comments = _decomposition_rows(x, y, q, config)
    meta = {"q": format_number(q), "tau_min": tau_min, "tau_max": tau_hi,
            "filter": filt, "input": mode}
    write_table(
        out_path,
        manifest("decompose", meta, paths) + comments,
        ["tau", "k_x", "k_y", "product_term", "covariance_term"],
        rows,
    )
    return 0


# ---------------------------------------------------------------- replicate

def _mbm_pair() -> tuple[TimeSeries, TimeSeries]:
    x = accumulate(generate_mbm(MbmConfig(m0=0.3, k=16)))
    y = accumulate(generate_mbm(MbmConfig(m0=0.4, k=16)))
    return (TimeSeries(x.values, "mbm_m0=0.3"), TimeSeries(y.values, "mbm_m0=0.4"))


def _arfima_pair(rho: float, seed: int) -> tuple[TimeSeries, TimeSeries]:
    """Accumulated profiles of a correlated-innovation long-memory pair."""
    length = 10_000
    burn_in = ArfimaConfig.burn_in
    eps, nu = correlated_noise_pair(
        NoisePairConfig(rho=rho, length=burn_in + length, seed=seed)
    )
    x = generate_arfima(ArfimaConfig(d=0.3, length=length, seed=seed), noise=eps)
    y = generate_arfima(ArfimaConfig(d=0.1, length=length, seed=seed), noise=nu)
    return accumulate(x), accumulate(y)


def _two_component_profiles(w: float, seed: int) -> tuple[TimeSeries, TimeSeries]:
    x, y = generate_two_component(
        TwoComponentConfig(d1=0.3, d2=0.3, w=w, length=10_000, seed=seed)
    )
    return accumulate(x), accumulate(y)


def _write_panel_curves(outdir: Path, stem: str, x: TimeSeries, y: TimeSeries,
                        config: EstimationConfig, meta: dict,
                        inputs: list[Path]) -> None:
    xy = hurst_curve_from_grid(covariance_grid(x, y, config))
    xx = hurst_curve_from_grid(covariance_grid(x, x, config))
    yy = hurst_curve_from_grid(covariance_grid(y, y, config))
    write_pair_curves(outdir / f"{stem}_curves.tsv", xy, xx, yy,
                      manifest(f"replicate {stem}", meta, inputs))


def _write_panel_decomposition(outdir: Path, fname: str, x: TimeSeries,
                               y: TimeSeries, meta: dict) -> None:
    config = EstimationConfig(q_grid=(2.0,), tau_min=1, tau_max_range=(20, 20),
                              filter="constant")
    rows, comments = _decomposition_rows(x, y, 2.0, config)
    write_table(
        outdir / fname,
        manifest(f"replicate {fname.split('_')[0]}", meta, []) + comments,
        ["tau", "k_x", "k_y", "product_term", "covariance_term"],
        rows,
    )


RHO_PANELS = {"fig1b": 1.0, "fig1c": 0.5, "fig1d": 0.0, "fig1e": -0.5, "fig1f": -1.0}
W_PANELS = {"fig1g": 0.75, "fig1h": 0.5}


def cmd_replicate(figure: str | None, params: Params, inputs, out) -> int:
    if figure is None or figure not in FIGURES:
        raise ParameterError(
            f"unknown figure id {figure!r}; expected one of {', '.join(FIGURES)}"
        )
    outdir = _require_out(out)
    _require_inputs(inputs, 0, 0)
    needs_seed = figure not in ("fig1a", "fig2a")
    seed = params.seed() if needs_seed else None
    params.reject_unknown()
    outdir.mkdir(parents=True, exist_ok=True)
    config = synthetic_preset()

    if figure == "fig1a":
        x, y = _mbm_pair()
        _write_panel_curves(outdir, figure, x, y, config,
                            {"process": "mbm", "m0_x": 0.3, "m0_y": 0.4, "k": 16}, [])
    elif figure in RHO_PANELS:
        rho = RHO_PANELS[figure]
        x, y = _arfima_pair(rho, seed)
        _write_panel_curves(
            outdir, figure, x, y, config,
            {"process": "arfima-pair", "d_x": 0.3, "d_y": 0.1, "rho": rho,
             "length": 10000, "seed": seed}, [])
    elif figure in W_PANELS:
        w = W_PANELS[figure]
        x, y = _two_component_profiles(w, seed)
        _write_panel_curves(
            outdir, figure, x, y, config,
            {"process": "two-component", "d1": 0.3, "d2": 0.3, "w": w,
             "length": 10000, "seed": seed}, [])
    elif figure == "fig2a":
        x, y = _mbm_pair()
        _write_panel_decomposition(outdir, "fig2a_decomposition.tsv", x, y,
                                   {"process": "mbm", "m0_x": 0.3, "m0_y": 0.4, "k": 16})
    elif figure == "fig2b":
        for rho in (1.0, 0.5, -0.5, -1.0):
            x, y = _arfima_pair(rho, seed)
            _write_panel_decomposition(
                outdir, f"fig2b_rho_{format_number(rho)}_decomposition.tsv", x, y,
                {"process": "arfima-pair", "d_x": 0.3, "d_y": 0.1, "rho": rho,
                 "length": 10000, "seed": seed})
    else:  # fig2c / fig2d
        w = 0.75 if figure == "fig2c" else 0.5
        x, y = _two_component_profiles(w, seed)
        _write_panel_decomposition(
            outdir, f"{figure}_decomposition.tsv", x, y,
            {"process": "two-component", "d1": 0.3, "d2": 0.3, "w": w,
             "length": 10000, "seed": seed})
    return 0


# ---------------------------------------------------------------- entry point

def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="mfhxa",
        description=(
            "Generalized bivariate Hurst exponents from height-height "
            "covariance scaling: process generation, transforms, estimation, "
            "covariance decomposition, and figure replication."
        ),
    )
    parser.add_argument("--version", action="version",
                        version=f"mfhxa {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    specs = {
        "generate": "write a simulated process to CSV (mbm, arfima, arfima-pair, two-component)",
        "transform": "apply log-returns, abs-returns, or volume-deviation to a CSV column",
        "estimate": "estimate generalized Hurst curves (curve + grid tables)",
        "decompose": "split the scaling function into product and covariance parts",
        "replicate": "run a named synthetic analysis (fig1a..fig1h, fig2a..fig2d)",
    }
    for name, help_text in specs.items():
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("tokens", nargs="*", metavar="key=value",
                        help="name (for generate/transform/replicate) and parameters")
        sp.add_argument("--in", dest="inputs", action="append", default=[],
                        metavar="PATH", help="input CSV (repeatable)")
        sp.add_argument("--out", dest="out", metavar="PATH",
                        help="output file, prefix, or directory")
    args = parser.parse_args(argv)

    tokens = list(args.tokens)
    name = None
    if args.command in ("generate", "transform", "replicate"):
        if tokens and "=" not in tokens[0]:
            name = tokens.pop(0)
    try:
        params = Params(tokens)
        if args.command == "generate":
            return cmd_generate(name, params, args.inputs, args.out)
        if args.command == "transform":
            return cmd_transform(name, params, args.inputs, args.out)
        if args.command == "estimate":
            return cmd_estimate(params, args.inputs, args.out)
        if args.command == "decompose":
            return cmd_decompose(params, args.inputs, args.out)
        return cmd_replicate(name, params, args.inputs, args.out)
    except MfhxaError as exc:
        print(f"mfhxa: {args.command}: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"mfhxa: {args.command}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
