"""Seeded generation of the reference processes used to validate the estimators.

Three families: the deterministic binomial multiplicative cascade, long-memory
fractional-noise recursions driven by (optionally correlated) Gaussian
innovations, and the coupled two-component variant that mixes the memory of
two such processes.

Randomness comes from numpy's PCG64 via ``np.random.default_rng(seed)``;
normal variates use its ziggurat ``standard_normal``. The same seed therefore
reproduces a series bit-for-bit on the same numpy build.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InsufficientDataError, ParameterError
from .series import TimeSeries

DEFAULT_TRUNCATION = 10_000
DEFAULT_BURN_IN = 2_000

MAX_CASCADE_STAGES = 30


@dataclass(frozen=True)
class MbmConfig:
    """Binomial cascade: mass split m0 : 1-m0 over k dyadic stages."""

    m0: float
    k: int

    def __post_init__(self):
        if not 0.0 < self.m0 < 1.0:
            raise ParameterError(f"m0 must lie in (0, 1), got {self.m0}")
        if not 1 <= self.k <= MAX_CASCADE_STAGES:
            raise ParameterError(
                f"k must lie in 1..{MAX_CASCADE_STAGES}, got {self.k}"
            )


@dataclass(frozen=True)
class ArfimaConfig:
    """Fractional-memory parameter d in (0, 0.5); the Hurst exponent is d + 0.5."""

    d: float
    length: int
    truncation: int = DEFAULT_TRUNCATION
    burn_in: int = DEFAULT_BURN_IN
    seed: int = 0

    def __post_init__(self):
        if not 0.0 < self.d < 0.5:
            raise ParameterError(f"d must lie in (0, 0.5), got {self.d}")
        if self.length < 1:
            raise ParameterError(f"length must be >= 1, got {self.length}")
        if self.truncation < 1:
            raise ParameterError(f"truncation must be >= 1, got {self.truncation}")
        if self.burn_in < 0:
            raise ParameterError(f"burn_in must be >= 0, got {self.burn_in}")


@dataclass(frozen=True)
class NoisePairConfig:
    """Two standard-normal innovation streams with population correlation rho."""

    rho: float
    length: int
    seed: int = 0

    def __post_init__(self):
        if not -1.0 <= self.rho <= 1.0:
            raise ParameterError(f"rho must lie in [-1, 1], got {self.rho}")
        if self.length < 1:
            raise ParameterError(f"length must be >= 1, got {self.length}")


@dataclass(frozen=True)
class TwoComponentConfig:
    """Coupled pair mixing two memory kernels; w in [0.5, 1] sets the coupling."""

    d1: float
    d2: float
    w: float
    length: int
    burn_in: int = DEFAULT_BURN_IN
    truncation: int = DEFAULT_TRUNCATION
    seed: int = 0

    def __post_init__(self):
        for name, d in (("d1", self.d1), ("d2", self.d2)):
            if not 0.0 < d < 0.5:
                raise ParameterError(f"{name} must lie in (0, 0.5), got {d}")
        if not 0.5 <= self.w <= 1.0:
            raise ParameterError(f"w must lie in [0.5, 1], got {self.w}")
        if self.length < 1:
            raise ParameterError(f"length must be >= 1, got {self.length}")
        if self.truncation < 1:
            raise ParameterError(f"truncation must be >= 1, got {self.truncation}")
        if self.burn_in < 0:
            raise ParameterError(f"burn_in must be >= 0, got {self.burn_in}")


def arfima_weights(d: float, max_lag: int) -> np.ndarray:
    """Memory weights a_1..a_max_lag of the fractional recursion.

    Computed by the stable recursion a_1 = d, a_{i+1} = a_i (i - d) / (i + 1),
    equivalent to d*Gamma(i-d) / (Gamma(1-d)*Gamma(1+i)) without overflow.
    All weights are positive and strictly decreasing.
    """
    if not 0.0 < d < 0.5:
        raise ParameterError(f"d must lie in (0, 0.5), got {d}")
    if max_lag < 1:
        raise ParameterError(f"max_lag must be >= 1, got {max_lag}")
    i = np.arange(1, max_lag, dtype=float)
    return d * np.concatenate(([1.0], np.cumprod((i - d) / (i + 1.0))))


def generate_mbm(config: MbmConfig) -> TimeSeries:
    """Deterministic binomial cascade measure of length 2^k.

    The value at index j is m0^z0 * m1^z1, where z0 and z1 count the zero and
    one bits of the k-bit expansion of j. Values are positive and sum to 1.
    The output is a measure (increment) series; accumulate it to levels
    before running scaling estimators on it.
    """
    m0, m1 = config.m0, 1.0 - config.m0
    values = np.array([1.0])
    for _ in range(config.k):
        values = np.ravel(np.column_stack((m0 * values, m1 * values)))
    return TimeSeries(values, "mbm")


def correlated_noise_pair(config: NoisePairConfig) -> tuple[TimeSeries, TimeSeries]:
    """Two N(0,1) streams with correlation rho, reproducible from the seed.

    The second stream is rho*eps + sqrt(1 - rho^2)*eta, with eps and eta
    independent; rho = +/-1 collapses it to +/-eps exactly.
    """
    rng = np.random.default_rng(config.seed)
    eps = rng.standard_normal(config.length)
    eta = rng.standard_normal(config.length)
    nu = config.rho * eps + math.sqrt(1.0 - config.rho * config.rho) * eta
    return TimeSeries(eps, "eps"), TimeSeries(nu, "nu")


def _required_noise(config) -> int:
    return config.burn_in + config.length


def generate_arfima(config: ArfimaConfig, noise: TimeSeries | None = None) -> TimeSeries:
    """Long-memory series from the truncated autoregressive recursion.

    x[t] = sum_{i=1..min(t, truncation)} a_i(d) x[t-i] + noise[t], started
    from zero history; the first burn_in values are discarded. When `noise`
    is omitted, burn_in + length innovations are drawn from the seed.
    """
    total = _required_noise(config)
    if noise is None:
        eps = np.random.default_rng(config.seed).standard_normal(total)
    else:
        if len(noise) < total:
            raise InsufficientDataError(
                f"need {total} noise values (burn_in {config.burn_in} + length "
                f"{config.length}), got {len(noise)}"
            )
        eps = noise.values[:total]
    x = _arfima_recursion(config.d, config.truncation, eps)
    return TimeSeries(x[config.burn_in :], f"arfima(d={config.d:g})")


def _arfima_recursion(d: float, truncation: int, eps: np.ndarray) -> np.ndarray:
    w = arfima_weights(d, truncation)
    wrev = w[::-1].copy()  # wrev[truncation - m:] == [a_m, ..., a_1]
    total = eps.size
    x = np.empty(total)
    for t in range(total):
        m = min(t, truncation)
        if m:
            x[t] = eps[t] + np.dot(wrev[truncation - m :], x[t - m : t])
        else:
            x[t] = eps[t]
    return x


def generate_two_component(
    config: TwoComponentConfig,
    noise: tuple[TimeSeries, TimeSeries] | None = None,
) -> tuple[TimeSeries, TimeSeries]:
    """Coupled pair whose memory terms mix across the two series.

    X[t] = w*x[t] + (1-w)*y[t] + eps[t]
    Y[t] = (1-w)*x[t] + w*y[t] + nu[t]

    with x[t] = sum a_i(d1) X[t-i] and y[t] = sum a_i(d2) Y[t-i], both sums
    truncated as in ``generate_arfima``. w = 1 decouples the pair into two
    plain fractional recursions. By default eps and nu are independent
    N(0,1) streams drawn from the seed (eps first, then nu, each of length
    burn_in + length); pass `noise` to inject innovations.
    """
    total = _required_noise(config)
    if noise is None:
        rng = np.random.default_rng(config.seed)
        eps = rng.standard_normal(total)
        nu = rng.standard_normal(total)
    else:
        if len(noise[0]) < total or len(noise[1]) < total:
            raise InsufficientDataError(
                f"need {total} noise values per stream, got "
                f"{len(noise[0])} and {len(noise[1])}"
            )
        eps = noise[0].values[:total]
        nu = noise[1].values[:total]

    trunc = config.truncation
    w1rev = arfima_weights(config.d1, trunc)[::-1].copy()
    w2rev = arfima_weights(config.d2, trunc)[::-1].copy()
    w = config.w
    x_series = np.empty(total)
    y_series = np.empty(total)
    for t in range(total):
        m = min(t, trunc)
        if m:
            xm = np.dot(w1rev[trunc - m :], x_series[t - m : t])
            ym = np.dot(w2rev[trunc - m :], y_series[t - m : t])
        else:
            xm = 0.0
            ym = 0.0
        x_series[t] = w * xm + (1.0 - w) * ym + eps[t]
        y_series[t] = (1.0 - w) * xm + w * ym + nu[t]

    b = config.burn_in
    tag = f"d1={config.d1:g},d2={config.d2:g},w={config.w:g}"
    return (
        TimeSeries(x_series[b:], f"twocomp_x({tag})"),
        TimeSeries(y_series[b:], f"twocomp_y({tag})"),
    )
