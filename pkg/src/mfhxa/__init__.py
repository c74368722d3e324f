"""Multifractal height cross-correlation analysis.

Estimation of generalized bivariate Hurst exponents from the scaling of
height-height covariance functions, decomposition of cross-persistence into
separate-process scaling versus covariance scaling, and seeded generators
for the reference processes used to validate the method.
"""

__version__ = "0.1.0"

from .errors import (
    ConfidenceUndefinedError,
    CsvFormatError,
    DegenerateScalingError,
    DomainError,
    InsufficientDataError,
    InsufficientPointsError,
    LagTooLargeError,
    LengthMismatchError,
    MfhxaError,
    ParameterError,
)
from .series import (
    IncrementSeries,
    TimeSeries,
    absolute_returns,
    accumulate,
    log_returns,
    subsample,
    tau_increments,
    volume_relative_deviation,
)
from .generators import (
    ArfimaConfig,
    MbmConfig,
    NoisePairConfig,
    TwoComponentConfig,
    arfima_weights,
    correlated_noise_pair,
    generate_arfima,
    generate_mbm,
    generate_two_component,
)
from .estimator import (
    CrossPersistenceVerdict,
    EstimationConfig,
    GeneralizedHurstCurve,
    HeightCovarianceGrid,
    HurstEstimate,
    ScalingDecomposition,
    covariance_grid,
    cross_persistence_verdict,
    detrend_increments,
    fit_hurst_single,
    generalized_hurst_curve,
    height_covariance,
    hurst_curve_from_grid,
    jackknife_hurst,
    q_range,
    real_preset,
    scaling_decomposition,
    student_t_quantile,
    synthetic_preset,
)
from .csvio import read_columns, read_series

__all__ = [
    "ArfimaConfig",
    "ConfidenceUndefinedError",
    "CrossPersistenceVerdict",
    "CsvFormatError",
    "DegenerateScalingError",
    "DomainError",
    "EstimationConfig",
    "GeneralizedHurstCurve",
    "HeightCovarianceGrid",
    "HurstEstimate",
    "IncrementSeries",
    "InsufficientDataError",
    "InsufficientPointsError",
    "LagTooLargeError",
    "LengthMismatchError",
    "MbmConfig",
    "MfhxaError",
    "NoisePairConfig",
    "ParameterError",
    "ScalingDecomposition",
    "TimeSeries",
    "TwoComponentConfig",
    "absolute_returns",
    "accumulate",
    "arfima_weights",
    "correlated_noise_pair",
    "covariance_grid",
    "cross_persistence_verdict",
    "detrend_increments",
    "fit_hurst_single",
    "generalized_hurst_curve",
    "generate_arfima",
    "generate_mbm",
    "generate_two_component",
    "height_covariance",
    "hurst_curve_from_grid",
    "jackknife_hurst",
    "log_returns",
    "q_range",
    "read_columns",
    "read_series",
    "real_preset",
    "scaling_decomposition",
    "student_t_quantile",
    "subsample",
    "synthetic_preset",
    "tau_increments",
    "volume_relative_deviation",
]
