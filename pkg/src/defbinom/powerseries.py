"""Truncated power series with exact rational coefficients.

Two coefficient rings are used: plain rationals (:class:`TruncSeries`) and
polynomials in an auxiliary variable eta (:class:`EtaSeries`, whose
coefficients are :class:`EtaPoly`).  Every value is immutable, and every
operation returns a new object truncated at the same order as its inputs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import DivisionUndefinedError, DomainError, OrderMismatchError

DEFAULT_ORDER = 64
MAX_ORDER = 512

RationalLike = Union[int, Fraction, str]


def rational(value: RationalLike) -> Fraction:
    """Coerce ``value`` to a :class:`Fraction`.

    Strings of the form ``"p/q"`` or ``"p"`` are accepted, as are ints and
    Fractions.  Floats are refused because their binary expansion is almost
    never the number the caller meant.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except ValueError:
            raise DomainError(f"not a rational number: {value!r}") from None
    raise TypeError(f"cannot interpret {type(value).__name__} as an exact rational")


def format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


# ---------------------------------------------------------------------------
# Polynomials in eta
# ---------------------------------------------------------------------------


def _trim(coeffs: Iterable[Fraction]) -> tuple:
    out = [rational(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


@dataclass(frozen=True)
class EtaPoly:
    """Polynomial in eta, ``coeffs[j]`` multiplying ``eta**j``.

    Trailing zeros are trimmed, so the zero polynomial has no coefficients.
    """

    coeffs: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _trim(self.coeffs))

    @classmethod
    def constant(cls, c: RationalLike) -> "EtaPoly":
        return cls((rational(c),))

    @classmethod
    def monomial(cls, c: RationalLike, power: int) -> "EtaPoly":
        return cls((0,) * power + (rational(c),))

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def coeff(self, j: int) -> Fraction:
        return self.coeffs[j] if 0 <= j < len(self.coeffs) else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, x: RationalLike) -> Fraction:
        x = rational(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def evalf(self, x: float) -> float:
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * x + float(c)
        return acc

    def __add__(self, other):
        if not isinstance(other, EtaPoly):
            other = EtaPoly.constant(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return EtaPoly(self.coeff(j) + other.coeff(j) for j in range(n))

    __radd__ = __add__

    def __neg__(self):
        return EtaPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        if not isinstance(other, EtaPoly):
            other = EtaPoly.constant(other)
        return self + (-other)

    def __rsub__(self, other):
        return EtaPoly.constant(other) - self

    def __mul__(self, other):
        if not isinstance(other, EtaPoly):
            c = rational(other)
            return EtaPoly(c * a for a in self.coeffs)
        if self.is_zero() or other.is_zero():
            return EtaPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    out[i + j] += a * b
        return EtaPoly(out)

    __rmul__ = __mul__

    def shift(self, k: int) -> "EtaPoly":
        """Multiply by ``eta**k``."""
        if self.is_zero():
            return self
        return EtaPoly((Fraction(0),) * k + self.coeffs)

    def scale_argument(self, s: RationalLike) -> "EtaPoly":
        """The polynomial ``eta -> P(s * eta)``."""
        s = rational(s)
        return EtaPoly(c * s**j for j, c in enumerate(self.coeffs))

    def derivative(self) -> "EtaPoly":
        return EtaPoly(j * c for j, c in enumerate(self.coeffs) if j)

    def __str__(self):
        if self.is_zero():
            return "0"
        terms = []
        for j, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if j == 0 else ("eta" if j == 1 else f"eta^{j}")
            if mono and abs(c) == 1:
                body = mono
            else:
                body = format_rational(abs(c)) + (f"*{mono}" if mono else "")
            terms.append(("-" if c < 0 else "+", body))
        sign, body = terms[0]
        text = ("-" if sign == "-" else "") + body
        for sign, body in terms[1:]:
            text += f" {sign} {body}"
        return text


# ---------------------------------------------------------------------------
# Rational series
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TruncSeries:
    """Power series in t known exactly up to and including ``t**order``."""

    coeffs: tuple

    def __post_init__(self):
        coeffs = tuple(rational(c) for c in self.coeffs)
        if not coeffs:
            raise ValueError("a truncated series needs at least one coefficient")
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[RationalLike], order: int | None = None) -> "TruncSeries":
        """Build a series, zero-padding or cutting ``coeffs`` to ``order``."""
        coeffs = [rational(c) for c in coeffs]
        if order is None:
            return cls(tuple(coeffs))
        if order < 0:
            raise ValueError("order must be nonnegative")
        coeffs = coeffs[: order + 1]
        coeffs += [Fraction(0)] * (order + 1 - len(coeffs))
        return cls(tuple(coeffs))

    @classmethod
    def zero(cls, order: int) -> "TruncSeries":
        return cls((Fraction(0),) * (order + 1))

    @classmethod
    def one(cls, order: int) -> "TruncSeries":
        return cls.monomial(0, order)

    @classmethod
    def monomial(cls, power: int, order: int, c: RationalLike = 1) -> "TruncSeries":
        coeffs = [Fraction(0)] * (order + 1)
        if power <= order:
            coeffs[power] = rational(c)
        return cls(tuple(coeffs))

    @classmethod
    def exponential(cls, order: int) -> "TruncSeries":
        """Coefficients of ``e**t``."""
        coeffs, c = [], Fraction(1)
        for n in range(order + 1):
            if n:
                c /= n
            coeffs.append(c)
        return cls(tuple(coeffs))

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __getitem__(self, k):
        return self.coeffs[k]

    def truncate(self, order: int) -> "TruncSeries":
        if order > self.order:
            raise ValueError(f"cannot extend a series of order {self.order} to {order}")
        return TruncSeries(self.coeffs[: order + 1])

    def _same_order(self, other: "TruncSeries"):
        if other.order != self.order:
            raise OrderMismatchError(
                f"truncation orders differ: {self.order} vs {other.order}"
            )

    def _lift(self, other) -> "TruncSeries":
        if isinstance(other, TruncSeries):
            self._same_order(other)
            return other
        return TruncSeries.monomial(0, self.order, rational(other))

    # -- ring operations ---------------------------------------------------

    def __add__(self, other):
        other = self._lift(other)
        return TruncSeries(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return TruncSeries(tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, TruncSeries):
            c = rational(other)
            return TruncSeries(tuple(c * a for a in self.coeffs))
        self._same_order(other)
        T = self.order
        out = [Fraction(0)] * (T + 1)
        b = other.coeffs
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j in range(T + 1 - i):
                if b[j]:
                    out[i + j] += a * b[j]
        return TruncSeries(tuple(out))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, TruncSeries):
            c = rational(other)
            if c == 0:
                raise DivisionUndefinedError("division by zero")
            return TruncSeries(tuple(a / c for a in self.coeffs))
        self._same_order(other)
        b = other.coeffs
        if b[0] == 0:
            raise DivisionUndefinedError("divisor has zero constant term")
        # forward substitution: a = b * c  =>  c_n = (a_n - sum_{k>=1} b_k c_{n-k}) / b_0
        nonzero = [k for k in range(1, len(b)) if b[k]]
        out: list = []
        for n, a in enumerate(self.coeffs):
            acc = a
            for k in nonzero:
                if k > n:
                    break
                acc -= b[k] * out[n - k]
            out.append(acc / b[0])
        return TruncSeries(tuple(out))

    def __rtruediv__(self, other):
        return self._lift(other) / self

    def reciprocal(self) -> "TruncSeries":
        return TruncSeries.one(self.order) / self

    # -- transcendental operations ----------------------------------------

    def exp(self) -> "TruncSeries":
        f = self.coeffs
        if f[0] != 0:
            raise DomainError(f"exp needs constant term 0, got {format_rational(f[0])}")
        # g' = f' g  =>  n g_n = sum_{k=1}^n k f_k g_{n-k}
        kf = [(k, k * f[k]) for k in range(1, len(f)) if f[k]]
        g = [Fraction(1)]
        for n in range(1, len(f)):
            acc = Fraction(0)
            for k, c in kf:
                if k > n:
                    break
                acc += c * g[n - k]
            g.append(acc / n)
        return TruncSeries(tuple(g))

    def log(self) -> "TruncSeries":
        a = self.coeffs
        if a[0] != 1:
            raise DomainError(f"log needs constant term 1, got {format_rational(a[0])}")
        # f = log a, a' = f' a  =>  n f_n = n a_n - sum_{k=1}^{n-1} k f_k a_{n-k}
        f = [Fraction(0)]
        nz = [k for k in range(1, len(a)) if a[k]]
        for n in range(1, len(a)):
            acc = n * a[n]
            for j in nz:
                if j >= n:
                    break
                # term k = n - j
                if f[n - j]:
                    acc -= (n - j) * f[n - j] * a[j]
            f.append(acc / n)
        return TruncSeries(tuple(f))

    def pow(self, r: RationalLike) -> "TruncSeries":
        """``self ** r`` for rational ``r``, defined through ``exp(r log self)``."""
        r = rational(r)
        if self.coeffs[0] != 1:
            raise DomainError(
                f"pow needs constant term 1, got {format_rational(self.coeffs[0])}"
            )
        return (self.log() * r).exp()

    def __pow__(self, r):
        return self.pow(r)

    def compose(self, inner: "TruncSeries") -> "TruncSeries":
        """``self(inner(t))``; ``inner`` must vanish at 0."""
        self._same_order(inner)
        if inner.coeffs[0] != 0:
            raise DomainError(
                "composition needs an inner series with constant term 0, got "
                + format_rational(inner.coeffs[0])
            )
        T = self.order
        acc = TruncSeries.monomial(0, T, self.coeffs[T])
        for k in range(T - 1, -1, -1):
            acc = acc * inner + self.coeffs[k]
        return acc

    def scale_argument(self, s: RationalLike) -> "TruncSeries":
        """The series of ``t -> self(s * t)``."""
        s = rational(s)
        out, p = [], Fraction(1)
        for a in self.coeffs:
            out.append(a * p)
            p *= s
        return TruncSeries(tuple(out))

    def derivative(self) -> "TruncSeries":
        """Formal derivative; the top coefficient is unknown and set to 0."""
        d = [k * a for k, a in enumerate(self.coeffs) if k]
        return TruncSeries.from_coeffs(d, self.order)

    def evalf(self, t: float) -> float:
        acc = 0.0
        for a in reversed(self.coeffs):
            acc = acc * t + float(a)
        return acc

    def __str__(self):
        return "(" + ", ".join(format_rational(a) for a in self.coeffs) + ")"


def series_arith(a: TruncSeries, b: TruncSeries | None, op: str) -> TruncSeries:
    """Dispatch by name: ``add``, ``sub``, ``mul``, ``div`` or ``reciprocal``."""
    if op == "reciprocal":
        return a.reciprocal()
    if b is None:
        raise ValueError(f"{op} needs two operands")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


# ---------------------------------------------------------------------------
# Series with eta-polynomial coefficients
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EtaSeries:
    """Truncated series in t whose coefficients are polynomials in eta."""

    coeffs: tuple

    @classmethod
    def lift(cls, series: TruncSeries) -> "EtaSeries":
        return cls(tuple(EtaPoly.constant(a) for a in series.coeffs))

    @classmethod
    def scaled(cls, series: TruncSeries, factor: RationalLike = 1) -> "EtaSeries":
        """The series of ``t -> series(factor * eta * t)``."""
        factor = rational(factor)
        return cls(
            tuple(EtaPoly.monomial(a * factor**k, k) for k, a in enumerate(series.coeffs))
        )

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k) -> EtaPoly:
        return self.coeffs[k]

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def _same_order(self, other: "EtaSeries"):
        if other.order != self.order:
            raise OrderMismatchError(
                f"truncation orders differ: {self.order} vs {other.order}"
            )

    def __mul__(self, other: "EtaSeries") -> "EtaSeries":
        self._same_order(other)
        T = self.order
        out = [EtaPoly()] * (T + 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j in range(T + 1 - i):
                b = other.coeffs[j]
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return EtaSeries(tuple(out))

    def __truediv__(self, other: "EtaSeries") -> "EtaSeries":
        """Division by a series whose constant coefficient is the polynomial 1."""
        self._same_order(other)
        b = other.coeffs
        if b[0] != EtaPoly.constant(1):
            raise DivisionUndefinedError(
                "eta-series division needs the divisor's constant coefficient to be 1"
            )
        out: list = []
        for n, a in enumerate(self.coeffs):
            acc = a
            for k in range(1, n + 1):
                if not b[k].is_zero():
                    acc = acc - b[k] * out[n - k]
            out.append(acc)
        return EtaSeries(tuple(out))

    def substitute(self, eta: RationalLike) -> TruncSeries:
        """Evaluate every coefficient at a rational eta."""
        eta = rational(eta)
        return TruncSeries(tuple(p(eta) for p in self.coeffs))


def eta_division(n_series: TruncSeries) -> EtaSeries:
    """``N(t) / N(eta t)`` with eta kept symbolic.

    The coefficient of ``t**k`` is ``p_k(eta) / x_k!``.
    """
    if n_series[0] != 1:
        raise DomainError(
            f"eta_division needs constant term 1, got {format_rational(n_series[0])}"
        )
    return EtaSeries.lift(n_series) / EtaSeries.scaled(n_series)
