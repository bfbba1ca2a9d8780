"""Normalized contingency tables, divergences and spectral diagnostics."""

from contingency_table.divergence import (
    independence_model,
    kl_divergence,
    mutual_information,
)
from contingency_table.errors import (
    ConfigError,
    EmptyGroupError,
    EmptyTextError,
    InfeasibleWeightsError,
    LambdaOutOfRangeError,
    LatentModelError,
    MarginMismatchError,
    NegativeEntryError,
    NotSquareError,
    NotSymmetricError,
    SquareOnlyError,
    SupportMismatchError,
    SymmetryViolationError,
    UnmappableEncodingError,
    ZeroLineError,
    ZeroRowGroupError,
    ZeroTableError,
)
from contingency_table.readers import read_dense_csv, read_edge_list
from contingency_table.spectral import (
    PSD_TOLERANCE,
    LambdaBounds,
    SpectralReport,
    diagonal_inflation,
    lambda_bounds,
    rank_estimate,
    smallest_eigenvalue,
    spectral_report,
)
from contingency_table.table import (
    SYMMETRY_TOLERANCE,
    ContingencyTable,
    FloatArray,
    is_symmetric,
    normalize,
    symmetrize,
)

__all__ = [
    "PSD_TOLERANCE",
    "SYMMETRY_TOLERANCE",
    "ConfigError",
    "ContingencyTable",
    "EmptyGroupError",
    "EmptyTextError",
    "FloatArray",
    "InfeasibleWeightsError",
    "LambdaBounds",
    "LambdaOutOfRangeError",
    "LatentModelError",
    "MarginMismatchError",
    "NegativeEntryError",
    "NotSquareError",
    "NotSymmetricError",
    "SpectralReport",
    "SquareOnlyError",
    "SupportMismatchError",
    "SymmetryViolationError",
    "UnmappableEncodingError",
    "ZeroLineError",
    "ZeroRowGroupError",
    "ZeroTableError",
    "diagonal_inflation",
    "independence_model",
    "is_symmetric",
    "kl_divergence",
    "lambda_bounds",
    "mutual_information",
    "normalize",
    "rank_estimate",
    "read_dense_csv",
    "read_edge_list",
    "smallest_eigenvalue",
    "spectral_report",
    "symmetrize",
]
