"""Deformation operators on normalized Sigma+ members.

``D_alpha(N)(t) = N(t/(1-alpha)) / N(alpha t/(1-alpha))`` and
``E_alpha(N)(t) = N(t/(1-alpha)) * N(-alpha t/(1-alpha))`` for alpha in
[-1, 1).  Both fix ``e^t`` and reduce to the identity at alpha = 0.  The
closed-form sequence and polynomial transforms here are checked in the test
suite against recomputation from the transformed series.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple, Union

from .cst import CstSequence, DeformedBinomialTable, deformed_binomial
from .errors import DomainError
from .powerseries import EtaPoly, EtaSeries, RationalLike, TruncSeries, format_rational, rational
from .sigma import check_sigma_plus


def _alpha(alpha) -> Fraction:
    alpha = rational(alpha)
    if not -1 <= alpha < 1:
        raise DomainError(f"alpha must lie in [-1, 1), got {format_rational(alpha)}")
    return alpha


def _require_normalized_sigma_plus(n: TruncSeries):
    if n.order < 1 or n[1] != 1:
        raise DomainError("deformations act on normalized series (a_1 = 1)")
    if n[0] != 1 or not check_sigma_plus(n).passed:
        raise DomainError("deformations act on members of Sigma+")


def d_alpha(n: TruncSeries, alpha: RationalLike) -> TruncSeries:
    alpha = _alpha(alpha)
    _require_normalized_sigma_plus(n)
    if alpha == 0:
        return n
    return n.scale_argument(1 / (1 - alpha)) / n.scale_argument(alpha / (1 - alpha))


def e_alpha(n: TruncSeries, alpha: RationalLike) -> TruncSeries:
    alpha = _alpha(alpha)
    _require_normalized_sigma_plus(n)
    if alpha == 0:
        return n
    return n.scale_argument(1 / (1 - alpha)) * n.scale_argument(-alpha / (1 - alpha))


def _nonvanishing(value: Fraction, what: str, n: int) -> Fraction:
    if value == 0:
        raise DomainError(f"{what} vanishes at n = {n}; transform is degenerate")
    return value


def d_alpha_sequence(x: CstSequence, p: Sequence[EtaPoly], alpha: RationalLike) -> CstSequence:
    """``x_n^(alpha) = x_n (1-alpha) p_{n-1}(alpha) / p_n(alpha)``."""
    alpha = _alpha(alpha)
    values = [_nonvanishing(p[n](alpha), "p_n(alpha)", n) for n in range(len(x))]
    return CstSequence(
        (Fraction(0),)
        + tuple(x[n] * (1 - alpha) * values[n - 1] / values[n] for n in range(1, len(x)))
    )


def d_alpha_in(x: CstSequence, i: Sequence[Fraction], alpha: RationalLike) -> tuple:
    """``I_n^(alpha)`` as the ratio of two deformed-binomial sums in x and I.

    This equals ``(-alpha)^n p_n(1/alpha) / p_n(alpha)`` but never divides by
    alpha; at alpha = 0 it returns the input coefficients unchanged.
    """
    alpha = _alpha(alpha)
    if alpha == 0:
        return tuple(i)
    out = []
    for n in range(len(x)):
        num = sum((x.choose(n, k) * i[k] * (-alpha) ** (n - k) for k in range(n + 1)), Fraction(0))
        den = sum((x.choose(n, k) * i[k] * (-alpha) ** k for k in range(n + 1)), Fraction(0))
        out.append(num / _nonvanishing(den, "p_n(alpha)", n))
    return tuple(out)


def _alpha_pow_times_inverse(p: EtaPoly, k: int, alpha: Fraction) -> Fraction:
    """``alpha^k p(1/alpha)`` for ``deg p <= k``, finite at alpha = 0."""
    return sum((c * alpha ** (k - j) for j, c in enumerate(p.coeffs)), Fraction(0))


def d_alpha_polys(x: CstSequence, p: Sequence[EtaPoly], alpha: RationalLike) -> tuple:
    """``p_n^(alpha)(eta) = (1/p_n(alpha)) sum_k C(x_n,x_k) p_k(1/alpha) p_{n-k}(alpha) (alpha eta)^k``."""
    alpha = _alpha(alpha)
    out = []
    for n in range(len(x)):
        den = _nonvanishing(p[n](alpha), "p_n(alpha)", n)
        coeffs = [
            x.choose(n, k) * _alpha_pow_times_inverse(p[k], k, alpha) * p[n - k](alpha) / den
            for k in range(n + 1)
        ]
        out.append(EtaPoly(coeffs))
    return tuple(out)


def e_alpha_q_polynomials(x: CstSequence) -> tuple:
    """``q_n(eta) = sum_k C(x_n, x_k) (-eta)^k``."""
    return tuple(
        EtaPoly(x.choose(n, k) * (-1) ** k for k in range(n + 1)) for n in range(len(x))
    )


def q_polynomials_series(n: TruncSeries) -> tuple:
    """``q_n`` read off the eta-series ``N(t) N(-eta t)``; the product route."""
    prod = EtaSeries.lift(n) * EtaSeries.scaled(n, -1)
    return tuple(prod[k] * (1 / n[k]) for k in range(len(prod)))


def e_alpha_sequence_and_polys(
    x: CstSequence, p: Sequence[EtaPoly], q: Sequence[EtaPoly], alpha: RationalLike
) -> Tuple[CstSequence, tuple]:
    """Sequence and polynomials of ``E_alpha(N)`` from those of N.

    ``x_n^(alpha) = x_n (1-alpha) q_{n-1}(alpha) / q_n(alpha)`` and
    ``p_n^(alpha)(eta) = (1/q_n(alpha)) sum_k C(x_n,x_k) p_k(eta) p_{n-k}(eta) (-alpha)^k``.
    """
    alpha = _alpha(alpha)
    qa = [_nonvanishing(q[n](alpha), "q_n(alpha)", n) for n in range(len(x))]
    seq = CstSequence(
        (Fraction(0),) + tuple(x[n] * (1 - alpha) * qa[n - 1] / qa[n] for n in range(1, len(x)))
    )
    polys = []
    for n in range(len(x)):
        acc = EtaPoly()
        for k in range(n + 1):
            acc = acc + p[k] * p[n - k] * (x.choose(n, k) * (-alpha) ** k)
        polys.append(acc * (1 / qa[n]))
    return seq, tuple(polys)


# ---------------------------------------------------------------------------
# Coefficient flow
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FlowState:
    """Coefficients of F in ``N = exp(F)``, with f_0 = 0 and f_1 = 1."""

    f: tuple
    step: int = 0
    alpha: Fraction = Fraction(0)

    def __post_init__(self):
        f = tuple(rational(c) for c in self.f)
        if len(f) < 2 or f[0] != 0 or f[1] != 1:
            raise DomainError("flow coefficients need f_0 = 0 and f_1 = 1")
        if any(c < 0 for c in f[2:]):
            raise DomainError("flow coefficients need f_k >= 0")
        object.__setattr__(self, "f", f)
        object.__setattr__(self, "alpha", _alpha(self.alpha))


def flow_multiplier(k: int, alpha: RationalLike, operator: str = "d") -> Fraction:
    """Factor applied to f_k by one application of the operator.

    ``d``: (1 - alpha^k) / (1 - alpha)^k;  ``e``: (1 + (-alpha)^k) / (1 - alpha)^k.
    """
    alpha = rational(alpha)
    if operator == "d":
        num = 1 - alpha**k
    elif operator == "e":
        num = 1 + (-alpha) ** k
    else:
        raise ValueError(f"unknown operator {operator!r}")
    return num / (1 - alpha) ** k


@dataclass(frozen=True)
class AxisReport:
    k: int
    multiplier: Fraction
    behaviour: str  # "contracting", "marginal" or "expanding"


@dataclass(frozen=True)
class FlowResult:
    state: FlowState
    trajectory: tuple
    axes: tuple

    def to_json(self):
        return {
            "alpha": format_rational(self.state.alpha),
            "steps": self.state.step,
            "trajectory": [[format_rational(c) for c in f] for f in self.trajectory],
            "axes": [
                {"k": a.k, "multiplier": format_rational(a.multiplier), "behaviour": a.behaviour}
                for a in self.axes
            ],
        }


def flow_iterate(state: FlowState, steps: int, operator: str = "d") -> FlowResult:
    """Apply the per-axis multipliers ``steps`` times, recording each state."""
    if steps < 0:
        raise DomainError("steps must be nonnegative")
    mult = [flow_multiplier(k, state.alpha, operator) for k in range(len(state.f))]
    f = list(state.f)
    trajectory = [tuple(f)]
    for _ in range(steps):
        f = [c * m for c, m in zip(f, mult)]
        trajectory.append(tuple(f))
    axes = []
    for k in range(1, len(mult)):
        m = abs(mult[k])
        behaviour = "marginal" if m == 1 else ("contracting" if m < 1 else "expanding")
        axes.append(AxisReport(k, mult[k], behaviour))
    final = FlowState(tuple(f), state.step + steps, state.alpha)
    return FlowResult(final, tuple(trajectory), tuple(axes))


# ---------------------------------------------------------------------------
# Monotone reparametrization of eta
# ---------------------------------------------------------------------------


def _exact_root(q: Fraction, r: int) -> Fraction | None:
    def iroot(n):
        lo, hi = 0, 1
        while hi**r <= n:
            hi *= 2
        while lo < hi - 1:
            mid = (lo + hi) // 2
            if mid**r <= n:
                lo = mid
            else:
                hi = mid
        return lo if lo**r == n else None

    num, den = iroot(q.numerator), iroot(q.denominator)
    if num is None or den is None:
        return None
    return Fraction(num, den)


@dataclass(frozen=True)
class PowerMap:
    """``g(eta) = eta**c`` for positive rational c."""

    c: Fraction

    def __post_init__(self):
        c = rational(self.c)
        if c <= 0:
            raise DomainError("power map exponent must be positive")
        object.__setattr__(self, "c", c)

    def __call__(self, eta: RationalLike) -> Fraction:
        eta = rational(eta)
        base = eta**self.c.numerator
        root = _exact_root(base, self.c.denominator)
        if root is None:
            raise DomainError(
                f"{format_rational(eta)}^{format_rational(self.c)} is irrational; "
                "use an eta whose power is rational"
            )
        return root


@dataclass(frozen=True)
class PolyMap:
    """``g(eta) = sum_{j>=1} c_j eta^j`` with c_j >= 0 and sum c_j = 1."""

    coeffs: tuple

    def __post_init__(self):
        coeffs = tuple(rational(c) for c in self.coeffs)
        if not coeffs or coeffs[0] != 0:
            raise DomainError("polynomial map needs a zero constant term")
        if any(c < 0 for c in coeffs):
            raise DomainError("polynomial map needs nonnegative coefficients")
        if sum(coeffs) != 1:
            raise DomainError("polynomial map coefficients must sum to 1")
        object.__setattr__(self, "coeffs", coeffs)

    def __call__(self, eta: RationalLike) -> Fraction:
        return EtaPoly(self.coeffs)(eta)


MonotoneMap = Union[PowerMap, PolyMap]


def parse_monotone_map(text: str) -> MonotoneMap:
    """``pow:c`` or ``poly:c1,c2,...`` (coefficients from degree 1 upward)."""
    kind, _, body = text.partition(":")
    if kind == "pow":
        return PowerMap(body)
    if kind == "poly":
        return PolyMap((0,) + tuple(s for s in body.split(",") if s))
    raise DomainError(f"unknown map {text!r}; expected pow:c or poly:c1,c2,...")


def eta_deform(n_series: TruncSeries, g: MonotoneMap, n: int, eta: RationalLike) -> DeformedBinomialTable:
    """Deformed binomial table evaluated at ``g(eta)`` in place of eta."""
    if not isinstance(g, (PowerMap, PolyMap)):
        raise DomainError("unsupported monotone map")
    eta = rational(eta)
    if not 0 <= eta <= 1:
        raise DomainError(f"eta must lie in [0, 1], got {format_rational(eta)}")
    table = deformed_binomial(n_series, n, g(eta))
    return DeformedBinomialTable(n, eta, table.probs, table.probabilistic)
