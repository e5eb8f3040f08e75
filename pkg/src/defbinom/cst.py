"""From a generating function to its sequence, polynomials and distribution.

A member N of Sigma determines the sequence ``x_n = a_{n-1} / a_n`` (so that
``a_n = 1 / x_n!``), the reciprocal coefficients ``I_n``, the polynomials
``p_n(eta)`` generated by ``N(t) / N(eta t)``, and the deformed binomial
probabilities

    P_k^(n)(eta) = x_n! / (x_k! x_{n-k}!) * eta^k * p_{n-k}(eta).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import List, Optional, Sequence

from .errors import DomainError, TruncationError
from .powerseries import (
    EtaPoly,
    EtaSeries,
    RationalLike,
    TruncSeries,
    eta_division,
    format_rational,
    rational,
)
from .sigma import ClassReport, Violation, check_sigma, check_sigma_plus


@dataclass(frozen=True)
class CstSequence:
    """``x[0] = 0`` followed by positive terms, with running products ``xfact``."""

    x: tuple
    xfact: tuple = field(default=(), compare=False)

    def __post_init__(self):
        x = tuple(rational(v) for v in self.x)
        if not x or x[0] != 0:
            raise DomainError("a CST sequence starts with x_0 = 0")
        for n, v in enumerate(x[1:], 1):
            if v <= 0:
                raise DomainError(f"x_{n} must be positive, got {format_rational(v)}")
        xfact = [Fraction(1)]
        for v in x[1:]:
            xfact.append(xfact[-1] * v)
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "xfact", tuple(xfact))

    @property
    def order(self) -> int:
        return len(self.x) - 1

    def __len__(self):
        return len(self.x)

    def __getitem__(self, n):
        return self.x[n]

    def choose(self, n: int, k: int) -> Fraction:
        """Deformed binomial coefficient ``x_n! / (x_k! x_{n-k}!)``."""
        return self.xfact[n] / (self.xfact[k] * self.xfact[n - k])


@dataclass(frozen=True)
class DeformedBinomialTable:
    n: int
    eta: Fraction
    probs: tuple
    probabilistic: bool = True

    def __iter__(self):
        return iter(self.probs)

    def __getitem__(self, k):
        return self.probs[k]

    def total(self) -> Fraction:
        return sum(self.probs, Fraction(0))

    def to_json(self):
        return {
            "n": self.n,
            "eta": format_rational(self.eta),
            "probs": [format_rational(p) for p in self.probs],
            "probabilistic": self.probabilistic,
        }


def _require_sigma(n_series: TruncSeries):
    report = check_sigma(n_series)
    if not report.passed:
        v = report.first_violation
        raise DomainError(
            f"generating function is not in Sigma: coefficient {v.index} "
            f"= {format_rational(v.value)} violates {v.condition}"
        )


@lru_cache(maxsize=256)
def sequence_from_series(n_series: TruncSeries) -> CstSequence:
    _require_sigma(n_series)
    a = n_series.coeffs
    return CstSequence((Fraction(0),) + tuple(a[n - 1] / a[n] for n in range(1, len(a))))


def series_from_sequence(x: CstSequence) -> TruncSeries:
    return TruncSeries(tuple(1 / f for f in x.xfact))


@lru_cache(maxsize=256)
def i_coefficients(n_series: TruncSeries) -> tuple:
    """``I_n`` from ``1/N(t) = sum I_n (-t)^n / x_n!``."""
    x = sequence_from_series(n_series)
    r = n_series.reciprocal()
    return tuple((-1) ** n * x.xfact[n] * r[n] for n in range(len(r)))


@lru_cache(maxsize=256)
def pn_polynomials(n_series: TruncSeries) -> tuple:
    """``p_n(eta)`` for ``0 <= n <= T`` from the series ``N(t) / N(eta t)``."""
    x = sequence_from_series(n_series)
    g = eta_division(n_series)
    return tuple(g[n] * x.xfact[n] for n in range(len(g)))


@lru_cache(maxsize=256)
def pn_polynomials_explicit(n_series: TruncSeries) -> tuple:
    """``p_n(eta) = sum_k C(x_n, x_k) I_k (-eta)^k``, independent of eta_division."""
    x = sequence_from_series(n_series)
    I = i_coefficients(n_series)
    return tuple(
        EtaPoly(x.choose(n, k) * I[k] * (-1) ** k for k in range(n + 1))
        for n in range(len(x))
    )


def deformed_binomial_polys(n_series: TruncSeries, n: int) -> tuple:
    """The table ``P_k^(n)`` as polynomials in eta, ``k = 0..n``."""
    if n > n_series.order:
        raise TruncationError(f"n = {n} exceeds truncation order {n_series.order}")
    x = sequence_from_series(n_series)
    p = pn_polynomials_explicit(n_series)
    return tuple((p[n - k] * x.choose(n, k)).shift(k) for k in range(n + 1))


def deformed_binomial(n_series: TruncSeries, n: int, eta: RationalLike) -> DeformedBinomialTable:
    """Exact table of ``P_k^(n)(eta)``.

    For members of Sigma outside Sigma+ the formal (possibly negative) table
    is still returned, with ``probabilistic=False``.
    """
    eta = rational(eta)
    if not 0 <= eta <= 1:
        raise DomainError(f"eta must lie in [0, 1], got {format_rational(eta)}")
    if n < 0:
        raise DomainError("n must be nonnegative")
    if n > n_series.order:
        raise TruncationError(f"n = {n} exceeds truncation order {n_series.order}")
    x = sequence_from_series(n_series)
    p = pn_polynomials(n_series)
    probs = tuple(x.choose(n, k) * eta**k * p[n - k](eta) for k in range(n + 1))
    return DeformedBinomialTable(n, eta, probs, check_sigma_plus(n_series).passed)


def joint_gf_check(
    n_series: TruncSeries, n_max: int, prob_polys: Optional[Sequence[Sequence[EtaPoly]]] = None
) -> ClassReport:
    """Compare ``N(z eta t) N(t) / N(eta t)`` with ``sum t^n/x_n! sum z^k P_k^(n)``.

    The left side is expanded as a bivariate series (z-power by z-power);
    the right side comes from the probability polynomials, which default to
    :func:`deformed_binomial_polys` and may be overridden to test the check.
    """
    if n_max > n_series.order:
        raise TruncationError(f"n_max = {n_max} exceeds truncation order {n_series.order}")
    T = n_max
    N = n_series.truncate(T)
    x = sequence_from_series(N)
    g = eta_division(N)
    # N(z eta t) = sum_j a_j eta^j z^j t^j; collect the product by z-power j.
    left = [[EtaPoly()] * (n + 1) for n in range(T + 1)]
    for j in range(T + 1):
        zfactor = EtaPoly.monomial(N[j], j)
        for m in range(T + 1 - j):
            left[j + m][j] = left[j + m][j] + zfactor * g[m]
    for n in range(T + 1):
        row = prob_polys[n] if prob_polys is not None else deformed_binomial_polys(N, n)
        for k in range(n + 1):
            rhs = row[k] * (1 / x.xfact[n])
            if left[n][k] != rhs:
                return ClassReport(
                    "JointGF", False, T, Violation(n, k, f"coefficient of t^{n} z^{k}")
                )
    return ClassReport("JointGF", True, T)


def theorem_lnN_check(n_series: TruncSeries) -> ClassReport:
    """``[t^n] log N = -p_n'(1) / (n x_n!)`` and ``p_n'(1) <= 0``, exactly."""
    x = sequence_from_series(n_series)
    p = pn_polynomials(n_series)
    logN = n_series.log()
    T = n_series.order
    if T >= 1 and p[1].derivative()(1) != -1:
        return ClassReport("LnN", False, T, Violation(1, p[1].derivative()(1), "p_1'(1) = -1"))
    for n in range(1, T + 1):
        slope = p[n].derivative()(1)
        if slope > 0:
            return ClassReport("LnN", False, T, Violation(n, slope, "p_n'(1) <= 0"))
        if logN[n] != -slope / (x.xfact[n] * n):
            return ClassReport(
                "LnN", False, T, Violation(n, logN[n], "log coefficient = -p_n'(1)/(n x_n!)")
            )
    return ClassReport("LnN", True, T)


def xn_bound_check(x: CstSequence) -> ClassReport:
    """``0 <= x_n <= n x_1`` for every available n."""
    for n in range(1, x.order + 1):
        if not 0 <= x[n] <= n * x[1]:
            return ClassReport("XnBound", False, x.order, Violation(n, x[n], "x_n <= n x_1"))
    return ClassReport("XnBound", True, x.order)


def odd_f_polynomials(x: CstSequence) -> tuple:
    """``p_n(eta) = sum_k C(x_n, x_k) (-eta)^k``; valid when ``log N`` is odd."""
    return tuple(
        EtaPoly(x.choose(n, k) * (-1) ** k for k in range(n + 1)) for n in range(len(x))
    )


def is_odd(series: TruncSeries) -> bool:
    return all(c == 0 for c in series.coeffs[0::2])
