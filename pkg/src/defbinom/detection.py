"""Helstrom error bounds for coherent and nonlinear coherent states."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ConvergenceError, DomainError
from .powerseries import TruncSeries
from .sigma import check_sigma

TAIL_TOLERANCE = 1e-12


def helstrom_overlap(overlap_sq: float) -> float:
    """``(1 - sqrt(1 - |<psi1|psi0>|^2)) / 2`` for equiprobable states."""
    if not 0.0 <= overlap_sq <= 1.0:
        raise DomainError(f"squared overlap must lie in [0, 1], got {overlap_sq}")
    return 0.5 * (1.0 - math.sqrt(1.0 - overlap_sq))


@dataclass(frozen=True)
class HelstromResult:
    bound: float
    n_value: float
    last_term: float
    tail_ratio: float

    def to_json(self):
        return {
            "bound": self.bound,
            "N(t)": self.n_value,
            "last_term": self.last_term,
            "tail_ratio": self.tail_ratio,
        }


def evaluate_with_tail(n_series: TruncSeries, t: float):
    """Partial sum at t and the magnitude of its last retained term."""
    total, power = 0.0, 1.0
    last = 0.0
    for a in n_series.coeffs:
        last = float(a) * power
        total += last
        power *= t
    return total, abs(last)


def helstrom_nonlinear(
    n_series: TruncSeries, t: float, tail_tolerance: float = TAIL_TOLERANCE
) -> HelstromResult:
    """``(1 - sqrt(1 - 1/N(t))) / 2`` with N evaluated from its truncation.

    Raises :class:`ConvergenceError` when the last retained term is larger
    than ``tail_tolerance`` times the partial sum, since the truncated value
    is then not trustworthy.
    """
    if t < 0:
        raise DomainError("t must be nonnegative")
    report = check_sigma(n_series)
    if not report.passed:
        raise DomainError("the Helstrom bound needs a member of Sigma")
    value, last = evaluate_with_tail(n_series, t)
    ratio = last / value
    if not math.isfinite(value) or ratio > tail_tolerance:
        raise ConvergenceError(
            f"truncated series unreliable at t = {t}: last term / sum = {ratio:.3e}",
            diagnostic={"t": t, "partial_sum": value, "last_term": last, "tail_ratio": ratio},
        )
    radicand = max(0.0, 1.0 - 1.0 / value)
    return HelstromResult(0.5 * (1.0 - math.sqrt(radicand)), value, last, ratio)
