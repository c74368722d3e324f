"""Bivariate scaling estimation from height-height covariance functions.

The scaling function of a pair (X, Y) at moment order q and lag tau is the
sample mean of |detrended increments of X times detrended increments of Y|
raised to q/2. Its log-log slope in tau, divided by q, is the generalized
bivariate Hurst exponent H_xy(q); the univariate H_x(q) is the X = Y case.
Point estimates and confidence intervals come from refitting the slope while
the upper end of the fitting window varies, then forming a Student-t interval
over that family of fits.

The covariance decomposition splits the scaling function into the product of
the two univariate moment means plus the covariance of the per-series
absolute-increment powers; the covariance part carries its own scaling
exponent alpha(q) whenever it scales at all. Comparing alpha(q) with the
average of the univariate exponents separates co-movement inherited from each
series' own persistence from genuine joint scaling.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass

import numpy as np
from scipy.stats import t as _student_t

from .errors import (
    ConfidenceUndefinedError,
    DegenerateScalingError,
    InsufficientDataError,
    InsufficientPointsError,
    LagTooLargeError,
    LengthMismatchError,
    MfhxaError,
    ParameterError,
)
from .series import IncrementSeries, TimeSeries

FILTERS = ("none", "constant", "linear")


@dataclass(frozen=True)
class EstimationConfig:
    """Moment grid, lag windows, detrending filter, and CI settings."""

    q_grid: tuple[float, ...]
    tau_min: int = 1
    tau_max_range: tuple[int, int] = (5, 100)
    filter: str = "constant"
    min_fit_points: int = 4
    confidence: float = 0.99

    def __post_init__(self):
        qs = tuple(float(q) for q in self.q_grid)
        if not qs:
            raise ParameterError("q_grid must not be empty")
        if any(q <= 0 for q in qs):
            raise ParameterError("all q must be > 0")
        if any(b <= a for a, b in zip(qs, qs[1:])):
            raise ParameterError("q_grid must be strictly increasing")
        object.__setattr__(self, "q_grid", qs)
        lo, hi = (int(v) for v in self.tau_max_range)
        object.__setattr__(self, "tau_max_range", (lo, hi))
        if self.tau_min < 1:
            raise ParameterError(f"tau_min must be >= 1, got {self.tau_min}")
        if lo > hi:
            raise ParameterError(f"tau_max_range {lo}..{hi} is empty")
        if self.tau_min > lo:
            raise ParameterError(
                f"tau_min={self.tau_min} exceeds smallest tau_max={lo}"
            )
        if self.filter not in FILTERS:
            raise ParameterError(
                f"filter must be one of {FILTERS}, got {self.filter!r}"
            )
        if self.min_fit_points < 2:
            raise ParameterError(
                f"min_fit_points must be >= 2, got {self.min_fit_points}"
            )
        if not 0.0 < self.confidence < 1.0:
            raise ParameterError(
                f"confidence must lie in (0, 1), got {self.confidence}"
            )

    @property
    def tau_maxes(self) -> range:
        lo, hi = self.tau_max_range
        return range(lo, hi + 1)

    @property
    def taus(self) -> range:
        return range(self.tau_min, self.tau_max_range[1] + 1)


def q_range(lo: float, hi: float, step: float = 0.1) -> tuple[float, ...]:
    """Inclusive arithmetic moment grid, rounded to avoid float drift."""
    if step <= 0:
        raise ParameterError(f"step must be > 0, got {step}")
    n = int(round((hi - lo) / step))
    qs = tuple(round(lo + i * step, 10) for i in range(n + 1))
    return tuple(q for q in qs if q <= hi + 1e-12)


def synthetic_preset() -> EstimationConfig:
    """Wide moment and lag ranges suitable for long clean simulated series."""
    return EstimationConfig(q_grid=q_range(0.1, 10.0), tau_max_range=(5, 100),
                            filter="constant")


def real_preset() -> EstimationConfig:
    """Narrower ranges for daily financial data, with linear detrending."""
    return EstimationConfig(q_grid=q_range(0.1, 3.0), tau_max_range=(5, 20),
                            filter="linear")


def _detrend_array(d: np.ndarray, filter: str) -> np.ndarray:
    if filter == "none":
        return d
    if filter == "constant":
        if d.size < 2:
            raise InsufficientDataError(
                f"constant filter needs at least 2 increments, got {d.size}"
            )
        return d - d.mean()
    if filter == "linear":
        if d.size < 3:
            raise InsufficientDataError(
                f"linear filter needs at least 3 increments, got {d.size}"
            )
        tc = np.arange(d.size, dtype=float)
        tc -= tc.mean()
        slope = np.dot(tc, d) / np.dot(tc, tc)
        return d - d.mean() - slope * tc
    raise ParameterError(f"filter must be one of {FILTERS}, got {filter!r}")


def detrend_increments(increments: IncrementSeries, filter: str) -> IncrementSeries:
    """Remove a constant or an OLS line (in the time index) from the increments."""
    return IncrementSeries(
        _detrend_array(increments.values, filter),
        increments.tau,
        increments.source_label,
    )


def _filtered_increments(values: np.ndarray, tau: int, filter: str) -> np.ndarray:
    return _detrend_array(values[tau:] - values[:-tau], filter)


def _check_pair(x: TimeSeries, y: TimeSeries, max_tau: int) -> None:
    if len(x) != len(y):
        raise LengthMismatchError(
            f"series lengths differ: {x.label!r} has {len(x)}, {y.label!r} has {len(y)}"
        )
    if max_tau > len(x) - 1:
        raise LagTooLargeError(
            f"tau={max_tau} out of range for series of length {len(x)} "
            f"(valid: 1..{len(x) - 1})"
        )
    if max_tau < 1:
        raise ParameterError(f"tau must be >= 1, got {max_tau}")


def height_covariance(
    x: TimeSeries, y: TimeSeries, q: float, tau: int, filter: str = "none"
) -> float:
    """Mean of |filtered increments of X times filtered increments of Y|^(q/2).

    For x = y and no filtering this is the univariate q-th order height-height
    correlation, the mean of |increment|^q.
    """
    if q <= 0:
        raise ParameterError(f"q must be > 0, got {q}")
    _check_pair(x, y, tau)
    dx = _filtered_increments(x.values, tau, filter)
    dy = _filtered_increments(y.values, tau, filter)
    p = np.abs(dx) * np.abs(dy)
    return float(np.mean(p ** (0.5 * q)))


def _moment_means(p: np.ndarray, q_grid: tuple[float, ...]) -> np.ndarray:
    """mean(p ** (q/2)) for each q; uniform grids use a running power ladder."""
    q = np.asarray(q_grid)
    out = np.empty(q.size)
    d = np.diff(q)
    if q.size >= 8 and np.all(np.abs(d - d[0]) < 1e-12):
        cur = p ** (0.5 * q[0])
        step = p ** (0.5 * d[0])
        out[0] = cur.mean()
        for i in range(1, q.size):
            cur = cur * step
            out[i] = cur.mean()
    else:
        for i, qi in enumerate(q):
            out[i] = np.mean(p ** (0.5 * qi))
    return out


@dataclass(frozen=True)
class HeightCovarianceGrid:
    """Scaling-function values over the (q, tau) lattice for one series pair."""

    q_values: tuple[float, ...]
    tau_values: tuple[int, ...]
    k_matrix: np.ndarray  # shape (len(q_values), len(tau_values))
    x_label: str
    y_label: str
    config: EstimationConfig

    def __post_init__(self):
        k = np.asarray(self.k_matrix, dtype=float)
        if k.shape != (len(self.q_values), len(self.tau_values)):
            raise ParameterError(
                f"k_matrix shape {k.shape} does not match "
                f"{len(self.q_values)} q values x {len(self.tau_values)} tau values"
            )
        if np.any(k < 0) or not np.all(np.isfinite(k)):
            raise ParameterError("covariance grid entries must be finite and >= 0")
        k = k.copy()
        k.setflags(write=False)
        object.__setattr__(self, "k_matrix", k)
        object.__setattr__(self, "q_values", tuple(float(q) for q in self.q_values))
        object.__setattr__(self, "tau_values", tuple(int(t) for t in self.tau_values))

    def q_index(self, q: float) -> int:
        for i, qi in enumerate(self.q_values):
            if qi == q or abs(qi - q) < 1e-12:
                return i
        raise ParameterError(f"q={q} is not on the grid")

    def row(self, q: float) -> np.ndarray:
        return self.k_matrix[self.q_index(q)]

    def value(self, q: float, tau: int) -> float:
        try:
            j = self.tau_values.index(int(tau))
        except ValueError:
            raise ParameterError(f"tau={tau} is not on the grid") from None
        return float(self.k_matrix[self.q_index(q), j])


def covariance_grid(
    x: TimeSeries, y: TimeSeries, config: EstimationConfig
) -> HeightCovarianceGrid:
    """Evaluate the scaling function on every (q, tau) cell of the config."""
    taus = tuple(config.taus)
    _check_pair(x, y, taus[-1])
    k = np.empty((len(config.q_grid), len(taus)))
    for j, tau in enumerate(taus):
        dx = _filtered_increments(x.values, tau, config.filter)
        dy = _filtered_increments(y.values, tau, config.filter)
        p = np.abs(dx) * np.abs(dy)
        k[:, j] = _moment_means(p, config.q_grid)
    return HeightCovarianceGrid(config.q_grid, taus, k, x.label, y.label, config)


def _ols_slope(xs: np.ndarray, ys: np.ndarray) -> float:
    xc = xs - xs.mean()
    return float(np.dot(xc, ys) / np.dot(xc, xc))


def fit_hurst_single(grid: HeightCovarianceGrid, q: float, tau_max: int) -> float:
    """Slope of log K against log tau over tau_min..tau_max, divided by q."""
    row = grid.row(q)
    taus = np.asarray(grid.tau_values, dtype=float)
    mask = taus <= tau_max
    k = row[mask]
    t = taus[mask]
    if t.size < grid.config.min_fit_points:
        raise InsufficientPointsError(
            f"{t.size} tau values available up to tau_max={tau_max}, "
            f"need {grid.config.min_fit_points}"
        )
    zero = np.flatnonzero(k <= 0)
    if zero.size:
        raise DegenerateScalingError(
            f"K(q={q:g}, tau={int(t[zero[0]])}) = 0: scaling function is "
            "degenerate, no Hurst exponent exists"
        )
    return _ols_slope(np.log(t), np.log(k)) / q


@dataclass(frozen=True)
class HurstEstimate:
    """Point estimate with a t-based confidence band over the tau_max family."""

    q: float
    h: float
    ci_low: float
    ci_high: float
    n_resamples: int
    per_tau_max: tuple[tuple[int, float], ...]

    def __post_init__(self):
        if not self.ci_low <= self.h <= self.ci_high:
            raise ParameterError(
                f"invalid interval: {self.ci_low} <= {self.h} <= {self.ci_high} fails"
            )
        if self.n_resamples != len(self.per_tau_max):
            raise ParameterError("n_resamples must equal len(per_tau_max)")


def student_t_quantile(p: float, dof: int) -> float:
    """Quantile of Student's t distribution with `dof` degrees of freedom."""
    if not 0.0 < p < 1.0:
        raise ParameterError(f"p must lie in (0, 1), got {p}")
    if dof < 1:
        raise ParameterError(f"dof must be >= 1, got {dof}")
    if p == 0.5:
        return 0.0
    return float(_student_t.ppf(p, dof))


def _effective_dof(config: EstimationConfig, n: int) -> int:
    """Degrees of freedom for the t-interval over the tau_max fit family.

    Fits at nearby tau_max share almost all their points, so the family is
    strongly serially correlated; the number of roughly independent fits is
    the number of scale octaves the tau_max range spans, not the raw count.
    """
    lo, hi = config.tau_max_range
    return min(n - 1, int(np.log2(hi / lo)) + 1)


def jackknife_hurst(
    grid: HeightCovarianceGrid, q: float, config: EstimationConfig
) -> HurstEstimate:
    """Mean and t-interval of the slope fits obtained while varying tau_max.

    Each tau_max in the config's range yields one fit over tau_min..tau_max.
    The point estimate is the mean of those fits. Treating the exponent as
    normally distributed with unknown variance, the interval is
    mean +/- t((1+confidence)/2, dof) * s, with s the sample standard
    deviation over the fits and dof the effective (octave-based) count of
    independent fits in the family.
    """
    tau_maxes = list(config.tau_maxes)
    if len(tau_maxes) == 1:
        raise ConfidenceUndefinedError(
            "confidence interval undefined for a single tau_max; widen tau_max_range"
        )
    per = []
    for tm in tau_maxes:
        try:
            per.append((tm, fit_hurst_single(grid, q, tm)))
        except MfhxaError as exc:
            raise type(exc)(f"tau_max={tm}: {exc}") from exc
    hs = np.array([h for _, h in per])
    h = float(hs.mean())
    s = float(hs.std(ddof=1))
    n = hs.size
    dof = _effective_dof(config, n)
    half = student_t_quantile(0.5 * (1.0 + config.confidence), dof) * s
    return HurstEstimate(float(q), h, h - half, h + half, n, tuple(per))


@dataclass(frozen=True)
class GeneralizedHurstCurve:
    """Jackknife estimates over the moment grid, with per-q failure notes."""

    estimates: tuple[HurstEstimate, ...]
    x_label: str
    y_label: str
    config: EstimationConfig
    failures: tuple[tuple[float, str], ...] = ()

    def __post_init__(self):
        qs = [e.q for e in self.estimates]
        if any(b <= a for a, b in zip(qs, qs[1:])):
            raise ParameterError("curve estimates must be strictly increasing in q")

    def estimate(self, q: float) -> HurstEstimate:
        for e in self.estimates:
            if e.q == q or abs(e.q - q) < 1e-12:
                return e
        raise ParameterError(f"no estimate at q={q}")


def hurst_curve_from_grid(grid: HeightCovarianceGrid) -> GeneralizedHurstCurve:
    """Jackknife estimate at every q of the grid; failures are recorded, not raised."""
    config = grid.config
    estimates: list[HurstEstimate] = []
    failures: list[tuple[float, str]] = []
    for q in config.q_grid:
        try:
            estimates.append(jackknife_hurst(grid, q, config))
        except MfhxaError as exc:
            failures.append((q, str(exc)))
    return GeneralizedHurstCurve(
        tuple(estimates), grid.x_label, grid.y_label, config, tuple(failures)
    )


def generalized_hurst_curve(
    x: TimeSeries, y: TimeSeries, config: EstimationConfig
) -> GeneralizedHurstCurve:
    """Jackknife estimate at every q; failures are recorded, not raised.

    Pass y = x for the univariate curve of a single series.
    """
    return hurst_curve_from_grid(covariance_grid(x, y, config))


ALPHA_MIN_R2 = 0.95


@dataclass(frozen=True)
class ScalingDecomposition:
    """Per-tau split of the scaling function into product and covariance parts.

    product_term[tau] + covariance_term[tau] equals the scaling function at
    (q, tau). alpha is the covariance scaling exponent, fitted over the taus
    with strictly positive covariance; it is absent when too few such taus
    exist or when the log-log fit quality is poor (r_squared below
    ALPHA_MIN_R2), i.e. when the covariances vary around zero instead of
    scaling.
    """

    q: float
    product_term: dict[int, float]
    covariance_term: dict[int, float]
    alpha: float | None
    alpha_reason: str | None
    alpha_fit_taus: tuple[int, ...]
    n_excluded: int
    r_squared: float | None
    x_label: str
    y_label: str
    config: EstimationConfig

    NO_SCALING = "no covariance scaling"


def scaling_decomposition(
    x: TimeSeries, y: TimeSeries, q: float, config: EstimationConfig
) -> ScalingDecomposition:
    """Split the scaling function by the covariance identity and fit alpha.

    For each tau: product_term = mean(|dX|^(q/2)) * mean(|dY|^(q/2)) and
    covariance_term = sample covariance (1/n normalized) of |dX|^(q/2) with
    |dY|^(q/2); their sum reproduces the scaling function exactly. alpha(q)
    is the log-log slope of the covariance term over tau, divided by q.
    """
    if q <= 0:
        raise ParameterError(f"q must be > 0, got {q}")
    taus = tuple(config.taus)
    _check_pair(x, y, taus[-1])
    qh = 0.5 * q
    product: dict[int, float] = {}
    covariance: dict[int, float] = {}
    for tau in taus:
        dx = _filtered_increments(x.values, tau, config.filter)
        dy = _filtered_increments(y.values, tau, config.filter)
        a = np.abs(dx) ** qh
        b = np.abs(dy) ** qh
        am = a.mean()
        bm = b.mean()
        product[tau] = float(am * bm)
        covariance[tau] = float(np.mean((a - am) * (b - bm)))

    positive = tuple(t for t in taus if covariance[t] > 0.0)
    n_excluded = len(taus) - len(positive)
    alpha = reason = r_squared = None
    if len(positive) < config.min_fit_points:
        reason = ScalingDecomposition.NO_SCALING
    else:
        lt = np.log(np.array(positive, dtype=float))
        lc = np.log(np.array([covariance[t] for t in positive]))
        slope = _ols_slope(lt, lc)
        resid = (lc - lc.mean()) - slope * (lt - lt.mean())
        total = float(np.sum((lc - lc.mean()) ** 2))
        r_squared = 1.0 - float(np.sum(resid**2)) / total if total > 0 else 1.0
        if r_squared < ALPHA_MIN_R2:
            reason = ScalingDecomposition.NO_SCALING
        else:
            alpha = slope / q
    return ScalingDecomposition(
        float(q), product, covariance, alpha, reason, positive, n_excluded,
        r_squared, x.label, y.label, config,
    )


@dataclass(frozen=True)
class CrossPersistenceVerdict:
    """Does the joint exponent deviate from the average of the univariate ones?"""

    q: float
    h_xy: HurstEstimate
    h_avg: float
    deviates: bool
    direction: str  # above | below | none
    h_x: HurstEstimate
    h_y: HurstEstimate

    def __post_init__(self):
        inside = self.h_xy.ci_low <= self.h_avg <= self.h_xy.ci_high
        if self.deviates == inside:
            raise ParameterError("deviates flag inconsistent with the interval")


def cross_persistence_verdict(
    x: TimeSeries, y: TimeSeries, q: float, config: EstimationConfig
) -> CrossPersistenceVerdict:
    """Test whether (H_x + H_y)/2 falls outside the CI of H_xy at one q.

    direction is 'above' when the joint exponent sits above the average
    (the average falls below the CI), 'below' for the opposite, 'none'
    when the average lies inside the interval.
    """
    sub = dataclasses.replace(config, q_grid=(float(q),))
    h_xy = jackknife_hurst(covariance_grid(x, y, sub), q, sub)
    h_x = jackknife_hurst(covariance_grid(x, x, sub), q, sub)
    h_y = jackknife_hurst(covariance_grid(y, y, sub), q, sub)
    h_avg = 0.5 * (h_x.h + h_y.h)
    deviates = not h_xy.ci_low <= h_avg <= h_xy.ci_high
    if not deviates:
        direction = "none"
    elif h_avg < h_xy.ci_low:
        direction = "above"
    else:
        direction = "below"
    return CrossPersistenceVerdict(float(q), h_xy, h_avg, deviates, direction, h_x, h_y)
