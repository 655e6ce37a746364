"""Randomized generalized singular values for comparative analysis of
matrix pairs, with full decomposition recovery and certified error
bounds."""

from .analysis import (
    ComparativeReport,
    angular_distances,
    compare,
    eigenexpression_fractions,
    relative_significance,
    shannon_entropy,
)
from .bench import BenchRecord, RunConfig, median_seconds, run_bench
from .bounds import (
    BoundCertificate,
    perturbation_bound,
    projector_bound,
    quantity_error_bounds,
)
from .core import (
    QrFactors,
    SvdFactors,
    as_matrix,
    frobenius_norm,
    gaussian_matrix,
    pseudoinverse_norm,
    reduced_qr,
    svd,
)
from .engine import (
    GmpPair,
    GsvOptions,
    GsvSpectrum,
    GsvdFactors,
    classify_spectrum,
    compute_gsv,
    recover_gsvd,
)
from .errors import (
    ConvergenceError,
    DegenerateSpectrumError,
    DimensionError,
    GsvError,
    InfeasibleRankError,
    ParseError,
    RankDeficiencyError,
    RecoveryError,
    ValidationError,
)
from .io import read_matrix, report_to_dict, write_matrix, write_report
from .rangefinder import BasisResult, ExtractionConfig, extract_basis, residual_norm
from .synthetic import SynthResult, SynthSpec, synth_gmp

__version__ = "0.1.0"

__all__ = [
    "BasisResult",
    "BenchRecord",
    "BoundCertificate",
    "ComparativeReport",
    "ConvergenceError",
    "DegenerateSpectrumError",
    "DimensionError",
    "ExtractionConfig",
    "GmpPair",
    "GsvError",
    "GsvOptions",
    "GsvSpectrum",
    "GsvdFactors",
    "InfeasibleRankError",
    "ParseError",
    "QrFactors",
    "RankDeficiencyError",
    "RecoveryError",
    "RunConfig",
    "SvdFactors",
    "SynthResult",
    "SynthSpec",
    "ValidationError",
    "angular_distances",
    "as_matrix",
    "classify_spectrum",
    "compare",
    "compute_gsv",
    "eigenexpression_fractions",
    "extract_basis",
    "frobenius_norm",
    "gaussian_matrix",
    "median_seconds",
    "perturbation_bound",
    "projector_bound",
    "pseudoinverse_norm",
    "quantity_error_bounds",
    "read_matrix",
    "recover_gsvd",
    "reduced_qr",
    "relative_significance",
    "report_to_dict",
    "residual_norm",
    "run_bench",
    "shannon_entropy",
    "svd",
    "synth_gmp",
    "write_matrix",
    "write_report",
]
