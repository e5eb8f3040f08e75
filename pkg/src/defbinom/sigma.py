"""The function classes Sigma0, Sigma and Sigma+ and their constructors.

* Sigma0: series F with F(0) = 0, F'(0) > 0 and nonnegative higher coefficients.
* Sigma: series N with N(0) = 1 and strictly positive coefficients.
* Sigma+: the members of Sigma whose deformed binomial polynomials are
  nonnegative on [0, 1); these are exactly ``exp(F)`` for F in Sigma0.

Membership can only be certified up to the truncation order, and every
:class:`ClassReport` says so.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import DomainError
from .powerseries import RationalLike, TruncSeries, format_rational, rational

SIGMA0 = "Sigma0"
SIGMA = "Sigma"
SIGMA_PLUS = "SigmaPlus"


@dataclass(frozen=True)
class Violation:
    index: int
    value: object
    condition: str

    def to_json(self):
        value = format_rational(self.value) if isinstance(self.value, Fraction) else self.value
        return {"index": self.index, "value": value, "condition": self.condition}


@dataclass(frozen=True)
class ClassReport:
    """Outcome of a finite membership or identity check.

    ``passed`` means the property holds for every index up to ``order``; it
    says nothing about higher orders.
    """

    tested: str
    passed: bool
    order: int
    first_violation: Optional[Violation] = None

    def __post_init__(self):
        if not self.passed and self.first_violation is None:
            raise ValueError("a failing report must carry its first violation")

    def __bool__(self):
        return self.passed

    @property
    def verdict(self) -> str:
        return "pass-up-to-T" if self.passed else "fail"

    def to_json(self):
        out = {"class": self.tested, "verdict": self.verdict, "order": self.order}
        if self.first_violation is not None:
            out["first_violation"] = self.first_violation.to_json()
        return out


def _fail(tested, order, index, value, condition):
    return ClassReport(tested, False, order, Violation(index, value, condition))


def check_sigma0(f: TruncSeries) -> ClassReport:
    if f[0] != 0:
        return _fail(SIGMA0, f.order, 0, f[0], "f_0 = 0")
    if f.order >= 1 and f[1] <= 0:
        return _fail(SIGMA0, f.order, 1, f[1], "f_1 > 0")
    for n in range(2, f.order + 1):
        if f[n] < 0:
            return _fail(SIGMA0, f.order, n, f[n], "f_n >= 0")
    return ClassReport(SIGMA0, True, f.order)


def check_sigma(n: TruncSeries) -> ClassReport:
    if n[0] != 1:
        return _fail(SIGMA, n.order, 0, n[0], "a_0 = 1")
    for k in range(1, n.order + 1):
        if n[k] <= 0:
            return _fail(SIGMA, n.order, k, n[k], "a_n > 0")
    return ClassReport(SIGMA, True, n.order)


def check_sigma_plus(n: TruncSeries) -> ClassReport:
    """Decide membership in Sigma+ through the sign pattern of ``log n``."""
    if n[0] != 1:
        raise DomainError(f"Sigma+ test needs a_0 = 1, got {format_rational(n[0])}")
    report = check_sigma0(n.log())
    if report.passed:
        return ClassReport(SIGMA_PLUS, True, n.order)
    v = report.first_violation
    return _fail(SIGMA_PLUS, n.order, v.index, v.value, f"log coefficient: {v.condition}")


def in_sigma_plus(n: TruncSeries) -> bool:
    return n[0] == 1 and check_sigma_plus(n).passed


# ---------------------------------------------------------------------------
# Sigma0 expressions
# ---------------------------------------------------------------------------


def _positive(name, value):
    value = rational(value)
    if value <= 0:
        raise DomainError(f"{name} must be positive, got {format_rational(value)}")
    return value


def _eta(value):
    value = rational(value)
    if not -1 <= value < 1:
        raise DomainError(f"eta must lie in [-1, 1), got {format_rational(value)}")
    return value


class Sigma0Expr:
    """Base class of the expression tree; every node knows its series."""

    kind: str = ""

    def series(self, order: int) -> TruncSeries:
        raise NotImplementedError

    def to_json(self) -> dict:
        raise NotImplementedError

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    def __add__(self, other):
        return Add(self, other)


@dataclass(frozen=True)
class ExpM1(Sigma0Expr):
    """``exp(a t) - 1``."""

    a: Fraction
    kind = "ExpM1"

    def __post_init__(self):
        object.__setattr__(self, "a", _positive("a", self.a))

    def series(self, order):
        return (TruncSeries.exponential(order) - 1).scale_argument(self.a)

    def to_json(self):
        return {"kind": self.kind, "a": format_rational(self.a)}


@dataclass(frozen=True)
class NegLog(Sigma0Expr):
    """``-a log(1 - b t)``."""

    a: Fraction
    b: Fraction
    kind = "NegLog"

    def __post_init__(self):
        object.__setattr__(self, "a", _positive("a", self.a))
        object.__setattr__(self, "b", _positive("b", self.b))

    def series(self, order):
        return TruncSeries(
            (Fraction(0),) + tuple(self.a * self.b**n / n for n in range(1, order + 1))
        )

    def to_json(self):
        return {"kind": self.kind, "a": format_rational(self.a), "b": format_rational(self.b)}


@dataclass(frozen=True)
class LogRatio(Sigma0Expr):
    """``a log((1 + alpha b t) / (1 - b t))``."""

    a: Fraction
    b: Fraction
    alpha: Fraction
    kind = "LogRatio"

    def __post_init__(self):
        object.__setattr__(self, "a", _positive("a", self.a))
        object.__setattr__(self, "b", _positive("b", self.b))
        alpha = rational(self.alpha)
        if not 0 <= alpha <= 1:
            raise DomainError(f"alpha must lie in [0, 1], got {format_rational(alpha)}")
        object.__setattr__(self, "alpha", alpha)

    def series(self, order):
        a, b, al = self.a, self.b, self.alpha
        return TruncSeries(
            (Fraction(0),)
            + tuple(a * b**n * (1 - (-al) ** n) / n for n in range(1, order + 1))
        )

    def to_json(self):
        return {
            "kind": self.kind,
            "a": format_rational(self.a),
            "b": format_rational(self.b),
            "alpha": format_rational(self.alpha),
        }


@dataclass(frozen=True)
class MonomialSum(Sigma0Expr):
    """A polynomial ``sum f_k t**k`` with f_0 = 0, f_1 > 0, f_k >= 0."""

    f: tuple
    kind = "MonomialSum"

    def __post_init__(self):
        f = tuple(rational(c) for c in self.f)
        if len(f) < 2:
            raise DomainError("MonomialSum needs at least f_0 and f_1")
        if f[0] != 0:
            raise DomainError("MonomialSum needs f_0 = 0")
        if f[1] <= 0:
            raise DomainError("MonomialSum needs f_1 > 0")
        if any(c < 0 for c in f[2:]):
            raise DomainError("MonomialSum needs f_k >= 0 for k >= 2")
        object.__setattr__(self, "f", f)

    def series(self, order):
        return TruncSeries.from_coeffs(self.f, order)

    def to_json(self):
        return {"kind": self.kind, "f": [format_rational(c) for c in self.f]}


@dataclass(frozen=True)
class HTerm(Sigma0Expr):
    """Perturbation ``H`` with h_0 = h_1 = 0 and h_k >= 0.

    Not a member of Sigma0 itself; only meaningful added to one.
    """

    h: tuple
    kind = "H"

    def __post_init__(self):
        h = tuple(rational(c) for c in self.h)
        if any(c != 0 for c in h[:2]):
            raise DomainError("H needs h_0 = h_1 = 0")
        if any(c < 0 for c in h):
            raise DomainError("H needs h_k >= 0")
        object.__setattr__(self, "h", h)

    def series(self, order):
        return TruncSeries.from_coeffs(self.h or (0,), order)

    def to_json(self):
        return {"kind": self.kind, "h": [format_rational(c) for c in self.h]}


@dataclass(frozen=True)
class Add(Sigma0Expr):
    lhs: Sigma0Expr
    rhs: Sigma0Expr
    kind = "Add"

    def __post_init__(self):
        if isinstance(self.lhs, HTerm) and isinstance(self.rhs, HTerm):
            raise DomainError("the sum of two H terms has no linear coefficient")

    def series(self, order):
        return self.lhs.series(order) + self.rhs.series(order)

    def to_json(self):
        return {"kind": self.kind, "lhs": self.lhs.to_json(), "rhs": self.rhs.to_json()}


@dataclass(frozen=True)
class EtaDiff(Sigma0Expr):
    """``F(t) - F(eta t)``."""

    inner: Sigma0Expr
    eta: Fraction
    kind = "EtaDiff"

    def __post_init__(self):
        object.__setattr__(self, "eta", _eta(self.eta))

    def series(self, order):
        f = self.inner.series(order)
        return f - f.scale_argument(self.eta)

    def to_json(self):
        return {"kind": self.kind, "inner": self.inner.to_json(), "eta": format_rational(self.eta)}


@dataclass(frozen=True)
class EtaSum(Sigma0Expr):
    """``F(t) + F(-eta t)``."""

    inner: Sigma0Expr
    eta: Fraction
    kind = "EtaSum"

    def __post_init__(self):
        object.__setattr__(self, "eta", _eta(self.eta))

    def series(self, order):
        f = self.inner.series(order)
        return f + f.scale_argument(-self.eta)

    def to_json(self):
        return {"kind": self.kind, "inner": self.inner.to_json(), "eta": format_rational(self.eta)}


@dataclass(frozen=True)
class ShiftMul(Sigma0Expr):
    """``(a + F) * G``."""

    a: Fraction
    lhs: Sigma0Expr
    rhs: Sigma0Expr
    kind = "ShiftMul"

    def __post_init__(self):
        object.__setattr__(self, "a", _positive("a", self.a))

    def series(self, order):
        return (self.lhs.series(order) + self.a) * self.rhs.series(order)

    def to_json(self):
        return {
            "kind": self.kind,
            "a": format_rational(self.a),
            "lhs": self.lhs.to_json(),
            "rhs": self.rhs.to_json(),
        }


@dataclass(frozen=True)
class Compose(Sigma0Expr):
    """``outer(inner(t))``."""

    outer: Sigma0Expr
    inner: Sigma0Expr
    kind = "Compose"

    def series(self, order):
        return self.outer.series(order).compose(self.inner.series(order))

    def to_json(self):
        return {"kind": self.kind, "outer": self.outer.to_json(), "inner": self.inner.to_json()}


def _field(obj, name):
    try:
        return obj[name]
    except KeyError:
        raise DomainError(f"missing field {name!r} in {obj.get('kind', 'expression')}") from None


def sigma0_from_json(obj) -> Sigma0Expr:
    """Decode the tagged-union JSON form (rationals as ``"p/q"`` strings)."""
    if isinstance(obj, str):
        obj = json.loads(obj)
    if not isinstance(obj, dict):
        raise DomainError("a Sigma0 expression must be a JSON object")
    kind = obj.get("kind")
    if kind == "ExpM1":
        return ExpM1(_field(obj, "a"))
    if kind == "NegLog":
        return NegLog(_field(obj, "a"), _field(obj, "b"))
    if kind == "LogRatio":
        return LogRatio(_field(obj, "a"), _field(obj, "b"), _field(obj, "alpha"))
    if kind == "MonomialSum":
        return MonomialSum(tuple(_field(obj, "f")))
    if kind == "H":
        return HTerm(tuple(_field(obj, "h")))
    if kind == "Add":
        return Add(sigma0_from_json(_field(obj, "lhs")), sigma0_from_json(_field(obj, "rhs")))
    if kind == "EtaDiff":
        return EtaDiff(sigma0_from_json(_field(obj, "inner")), _field(obj, "eta"))
    if kind == "EtaSum":
        return EtaSum(sigma0_from_json(_field(obj, "inner")), _field(obj, "eta"))
    if kind == "ShiftMul":
        return ShiftMul(
            _field(obj, "a"), sigma0_from_json(_field(obj, "lhs")), sigma0_from_json(_field(obj, "rhs"))
        )
    if kind == "Compose":
        return Compose(sigma0_from_json(_field(obj, "outer")), sigma0_from_json(_field(obj, "inner")))
    raise DomainError(f"unknown Sigma0 expression kind {kind!r}")


def eval_sigma0(expr: Sigma0Expr, order: int) -> TruncSeries:
    if isinstance(expr, HTerm):
        raise DomainError("a bare H term is not a member of Sigma0")
    return expr.series(order)


# ---------------------------------------------------------------------------
# Constructors of Sigma+ members
# ---------------------------------------------------------------------------

THEOREM31_VARIANTS = ("ExpF", "ExpExpM1", "InvPow", "RatioPow", "GeomExp")


def build_theorem31(
    f: Sigma0Expr,
    variant: str,
    order: int,
    a: RationalLike | None = None,
    b: RationalLike | None = None,
    alpha: RationalLike | None = None,
) -> TruncSeries:
    """Generating functions built from a Sigma0 member F.

    ``ExpF``: e^F; ``ExpExpM1``: exp(e^F - 1); ``InvPow``: (1 - bF)^-a;
    ``RatioPow``: (1 + alpha b F)^a (1 - bF)^-a; ``GeomExp``: (1 + b - b e^F)^-a.
    """
    F = eval_sigma0(f, order)
    if variant == "ExpF":
        return F.exp()
    if variant == "ExpExpM1":
        return (F.exp() - 1).exp()
    if variant not in THEOREM31_VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    if a is None or b is None:
        raise DomainError(f"{variant} needs parameters a and b")
    a, b = _positive("a", a), _positive("b", b)
    if variant == "InvPow":
        return (1 - F * b).pow(-a)
    if variant == "RatioPow":
        if alpha is None:
            raise DomainError("RatioPow needs alpha")
        alpha = rational(alpha)
        if not 0 <= alpha <= 1:
            raise DomainError(f"alpha must lie in [0, 1], got {format_rational(alpha)}")
        return (1 + F * (alpha * b)).pow(a) * (1 - F * b).pow(-a)
    # GeomExp
    return (1 + b - F.exp() * b).pow(-a)


def build_product_family(a_list: Sequence[RationalLike], alpha: RationalLike, order: int) -> TruncSeries:
    """``prod_k (1 + alpha a_k t) / (1 - a_k t)`` over a finite list.

    Zero entries contribute the factor 1.  For an infinite family the caller
    chooses where to cut and is responsible for the summability of the a_k.
    """
    alpha = rational(alpha)
    if not 0 <= alpha <= 1:
        raise DomainError(f"alpha must lie in [0, 1], got {format_rational(alpha)}")
    out = TruncSeries.one(order)
    for raw in a_list:
        ak = rational(raw)
        if ak < 0:
            raise DomainError(f"product factors need a_k >= 0, got {format_rational(ak)}")
        if ak == 0:
            continue
        geometric = TruncSeries(tuple(ak**n for n in range(order + 1)))
        numerator = TruncSeries.from_coeffs((1, alpha * ak), order)
        out = out * (geometric * numerator)
    return out


def extend_by_H(f: Sigma0Expr, h) -> Sigma0Expr:
    """``F + H`` for a perturbation H with h_0 = h_1 = 0, h_k >= 0."""
    if not isinstance(h, HTerm):
        h = HTerm(tuple(h))
    return Add(f, h)


def normalize(n: TruncSeries) -> TruncSeries:
    """Rescale the argument so that the linear coefficient becomes 1."""
    if n.order < 1 or n[1] <= 0:
        raise DomainError("normalization needs a positive linear coefficient")
    return n.scale_argument(1 / n[1])


def is_normalized(n: TruncSeries) -> bool:
    return n.order >= 1 and n[1] == 1
