"""Exact chord-length and dot-product distributions on the N-sphere.

The chord law gives the distribution of the Euclidean distance between two
independent uniform points on the surface of an N-dimensional hypersphere;
the dot-product law is the induced distribution of the cosine between two
uniform unit vectors.  Alongside the analytic laws the package provides
seeded samplers, goodness-of-fit auditing, and dimension/radius estimation
from observed distances.
"""

from .analysis import (
    DimensionEstimate,
    DistanceSample,
    GofReport,
    QuantileTable,
    empirical_cdf,
    estimate_dimension,
    figure_series,
    gof_test,
    kolmogorov_survival,
    ks_critical_value,
    ks_statistic,
    quantile_range,
    quantile_table,
)
from .chord import ChordDistribution
from .dotprod import DotProductDistribution
from .errors import (
    ConvergenceError,
    DegenerateSampleError,
    DomainError,
    SingularityError,
    UndersizedSampleError,
    UnsupportedDimensionError,
)
from .sampling import (
    SampleMethod,
    SampleSpec,
    sample_chords,
    sample_dot_products,
    sample_sphere_point,
)
from .specfun import (
    DEFAULT_TOL,
    ToleranceConfig,
    inv_reg_inc_beta,
    log_beta,
    log_gamma,
    reg_inc_beta,
    reg_inc_beta_step,
)

__version__ = "0.1.0"

__all__ = [
    "ChordDistribution",
    "DotProductDistribution",
    "SampleMethod",
    "SampleSpec",
    "sample_sphere_point",
    "sample_chords",
    "sample_dot_products",
    "DistanceSample",
    "GofReport",
    "QuantileTable",
    "DimensionEstimate",
    "empirical_cdf",
    "ks_statistic",
    "ks_critical_value",
    "kolmogorov_survival",
    "gof_test",
    "quantile_range",
    "quantile_table",
    "estimate_dimension",
    "figure_series",
    "ToleranceConfig",
    "DEFAULT_TOL",
    "log_gamma",
    "log_beta",
    "reg_inc_beta",
    "inv_reg_inc_beta",
    "reg_inc_beta_step",
    "DomainError",
    "UnsupportedDimensionError",
    "SingularityError",
    "ConvergenceError",
    "UndersizedSampleError",
    "DegenerateSampleError",
    "__version__",
]
