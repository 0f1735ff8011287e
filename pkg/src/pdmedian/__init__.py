"""Differentially private multivariate medians via projected outlyingness.

The estimator family: project the data onto many random unit directions,
score any candidate point by its worst-case standardized deviation across
those projections, and take the minimizer as the median. The private
variant certifies a data-dependent safety margin, runs a noised
propose-test-release gate, and on a pass samples from an exponential
mechanism restricted to a low-outlyingness region.
"""

from .bench import (
    CSV_HEADER,
    ExperimentConfig,
    ResultRow,
    read_results,
    run_experiment,
    summarize,
    write_results,
)
from .datagen import (
    CauchyProduct,
    ContaminatedGaussian,
    DataSpec,
    Gaussian,
    generate,
)
from .directions import DirectionSet, project, sample_directions
from .outlyingness import (
    ProjectedStats,
    level_set_contains,
    outlyingness,
    outlyingness_gradient,
    projected_stats,
)
from .private_median import (
    DescentConfig,
    MedianResult,
    nonprivate_pd_median,
    private_pd_median,
)
from .ptr import (
    ABSTAIN,
    Abstain,
    PrivacyParams,
    Released,
    TestOutcome,
    generic_ptr,
    log_volume_ratio,
    ptr_test,
    safety_margin_lb,
    sample_laplace,
    volume_ratio,
)
from .sampler import SamplerConfig, SampleResult, langevin_em_sample
from .sensitivity import (
    SensitivityReport,
    delta_hat,
    sens_mad,
    sens_median,
    sens_trimmed,
    sensitivity_report,
)
from .univariate import (
    MED_MAD,
    EstimatorPair,
    iqr,
    mad,
    median,
    tm_tad,
    trimmed_ad,
    trimmed_mean,
)

__version__ = "0.1.0"

__all__ = [
    "ABSTAIN",
    "Abstain",
    "CSV_HEADER",
    "CauchyProduct",
    "ContaminatedGaussian",
    "DataSpec",
    "DescentConfig",
    "DirectionSet",
    "EstimatorPair",
    "ExperimentConfig",
    "Gaussian",
    "MED_MAD",
    "MedianResult",
    "PrivacyParams",
    "ProjectedStats",
    "Released",
    "ResultRow",
    "SampleResult",
    "SamplerConfig",
    "SensitivityReport",
    "TestOutcome",
    "delta_hat",
    "generate",
    "generic_ptr",
    "iqr",
    "langevin_em_sample",
    "level_set_contains",
    "log_volume_ratio",
    "mad",
    "median",
    "nonprivate_pd_median",
    "outlyingness",
    "outlyingness_gradient",
    "private_pd_median",
    "project",
    "projected_stats",
    "ptr_test",
    "read_results",
    "run_experiment",
    "safety_margin_lb",
    "sample_directions",
    "sample_laplace",
    "sens_mad",
    "sens_median",
    "sens_trimmed",
    "sensitivity_report",
    "summarize",
    "tm_tad",
    "trimmed_ad",
    "trimmed_mean",
    "volume_ratio",
    "write_results",
]
