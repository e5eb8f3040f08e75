"""Exact checks of the product recursions for exponentials of polynomials.

For ``N = exp(t + (a/m) t^m)`` the claim is

    x_{n+1} = (n + 1) / (1 + a x_n x_{n-1} ... x_{n-m+2}),

and for ``N = exp(sum_j c_j t^j)`` a sum of such products with one weight
per degree.  Whether those weights are the exponent's coefficients
themselves ("as-printed") or those coefficients times their degree
("scaled-by-n") is ambiguous, so both readings are checked.  The comparison
with the series is exact; the asymptotic ratios are floats.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

from .cst import sequence_from_series
from .errors import DomainError, TruncationError
from .powerseries import RationalLike, TruncSeries, format_rational, rational
from .sigma import MonomialSum

AS_PRINTED = "as-printed"
SCALED_BY_N = "scaled-by-n"
CONVENTIONS = (AS_PRINTED, SCALED_BY_N)
DEFAULT_N_MAX = 200
DEFAULT_ORDER = 256


@dataclass(frozen=True)
class ConjectureReport:
    convention: str
    n_max: int
    passed: bool
    first_failure: Optional[int]
    ratios: tuple = ()
    parameters: dict = field(default_factory=dict, compare=False)

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"

    def to_json(self):
        return {
            "convention": self.convention,
            "n_max": self.n_max,
            "verdict": self.verdict,
            "first_failure": self.first_failure,
            "ratios": [[n, r] for n, r in self.ratios],
            "parameters": self.parameters,
        }


def ladder(n_max: int) -> List[int]:
    """1, 2, 4, ... up to n_max, always ending at n_max."""
    out, n = [], 1
    while n < n_max:
        out.append(n)
        n *= 2
    out.append(n_max)
    return out


def recursion_sequence(weights: Dict[int, Fraction], n_max: int) -> List[Fraction]:
    """``x_{n+1} = (n+1) / (1 + sum_j w_j x_n x_{n-1} ... x_{n-j+2})`` from x_0 = 0.

    A product that would reach index 0 or below vanishes, matching x_0 = 0.
    """
    xs = [Fraction(0)]
    for n in range(n_max):
        denom = Fraction(1)
        for j, w in weights.items():
            lo = n - j + 2
            if w == 0 or lo <= 0:
                continue
            prod = w
            for i in range(lo, n + 1):
                prod *= xs[i]
            denom += prod
        xs.append((n + 1) / denom)
    return xs


def _first_mismatch(predicted: Sequence[Fraction], actual: Sequence[Fraction]) -> Optional[int]:
    for n in range(1, len(predicted)):
        if predicted[n] != actual[n]:
            return n
    return None


def _ratios(xs: Sequence[Fraction], exponent: Fraction, scale: Fraction, n_max: int):
    return tuple(
        (n, float(xs[n]) / (n / float(scale)) ** float(exponent)) for n in ladder(n_max)
    )


def _series_sequence(f_coeffs: Sequence[Fraction], n_max: int, order: int):
    if n_max > order:
        raise TruncationError(f"n_max = {n_max} exceeds truncation order {order}")
    N = MonomialSum(tuple(f_coeffs)).series(n_max).exp()
    return sequence_from_series(N).x


def conjecture1_check(
    a: RationalLike, m: int, n_max: int = DEFAULT_N_MAX, order: int = DEFAULT_ORDER
) -> ConjectureReport:
    """Recursion vs series for ``exp(t + (a/m) t^m)``."""
    a = rational(a)
    if a <= 0:
        raise DomainError("a must be positive")
    if m < 2:
        raise DomainError("m must be at least 2")
    f = [Fraction(0), Fraction(1)] + [Fraction(0)] * (m - 1)
    f[m] += a / m
    actual = _series_sequence(f, n_max, order)
    predicted = recursion_sequence({m: a}, n_max)
    bad = _first_mismatch(predicted, actual)
    return ConjectureReport(
        convention="weak",
        n_max=n_max,
        passed=bad is None,
        first_failure=bad,
        ratios=_ratios(actual, Fraction(1, m), a, n_max),
        parameters={"a": format_rational(a), "m": m},
    )


def conjecture2_check(
    coeffs: Sequence[RationalLike],
    convention: str,
    n_max: int = DEFAULT_N_MAX,
    order: int = DEFAULT_ORDER,
) -> ConjectureReport:
    """Recursion vs series for ``coeffs = (c_2, ..., c_m)`` under one reading.

    ``as-printed``: series ``exp(t + sum c_j t^j)`` against weights ``c_j``.
    ``scaled-by-n``: series ``exp(t + sum (c_j/j) t^j)`` against weights ``c_j``.
    """
    if convention not in CONVENTIONS:
        raise DomainError(f"unknown convention {convention!r}")
    cs = [rational(c) for c in coeffs]
    if not cs or any(c < 0 for c in cs):
        raise DomainError("conjecture 2 needs nonnegative coefficients c_2..c_m")
    weights = {j: c for j, c in enumerate(cs, start=2)}
    f = [Fraction(0), Fraction(1)]
    for j, c in weights.items():
        f.append(c if convention == AS_PRINTED else c / j)
    actual = _series_sequence(f, n_max, order)
    predicted = recursion_sequence(weights, n_max)
    bad = _first_mismatch(predicted, actual)
    m = max((j for j, c in weights.items() if c), default=None)
    ratios = _ratios(actual, Fraction(1, m), weights[m], n_max) if m else ()
    return ConjectureReport(
        convention=convention,
        n_max=n_max,
        passed=bad is None,
        first_failure=bad,
        ratios=ratios,
        parameters={"coeffs": [format_rational(c) for c in cs]},
    )


def asymptotic_probe(
    n_series: TruncSeries, exponent: RationalLike, scale: RationalLike, n_max: int
) -> tuple:
    """``(n, x_n / (n/scale)^exponent)`` along a doubling ladder of n."""
    if n_max > n_series.order:
        raise TruncationError(f"n_max = {n_max} exceeds truncation order {n_series.order}")
    xs = sequence_from_series(n_series).x
    return _ratios(xs, rational(exponent), rational(scale), n_max)
