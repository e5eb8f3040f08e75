"""Deformed binomial distributions built from generating functions."""

from .cst import (
    CstSequence,
    DeformedBinomialTable,
    deformed_binomial,
    i_coefficients,
    pn_polynomials,
    sequence_from_series,
    series_from_sequence,
)
from .errors import (
    ConvergenceError,
    DivisionUndefinedError,
    DomainError,
    OrderMismatchError,
    TruncationError,
)
from .powerseries import EtaPoly, EtaSeries, TruncSeries, eta_division, rational
from .sigma import (
    ClassReport,
    check_sigma,
    check_sigma0,
    check_sigma_plus,
    eval_sigma0,
    normalize,
    sigma0_from_json,
)

__version__ = "0.1.0"
