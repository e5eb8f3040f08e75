"""Closed-form families and their independent formulas.

Each family spec produces its generating function through the generic
constructors (product family, exponential of a polynomial).  The closed
forms below are written from the explicit formulas only and never call the
series machinery, so the two can be compared.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import List, Union

from .errors import DomainError
from .powerseries import EtaPoly, RationalLike, TruncSeries, format_rational, rational
from .sigma import MonomialSum, build_product_family


def _pos(name, v):
    v = rational(v)
    if v <= 0:
        raise DomainError(f"{name} must be positive, got {format_rational(v)}")
    return v


@dataclass(frozen=True)
class Example1:
    """``N(t) = (1 - a t)^(-n0)``."""

    a: Fraction
    n0: int

    def __post_init__(self):
        object.__setattr__(self, "a", _pos("a", self.a))
        try:
            n0 = int(self.n0)
        except (TypeError, ValueError):
            raise DomainError(f"n0 must be a positive integer, got {self.n0!r}") from None
        if n0 != rational(self.n0) or n0 < 1:
            raise DomainError(f"n0 must be a positive integer, got {self.n0!r}")
        object.__setattr__(self, "n0", n0)

    def series(self, order):
        return build_product_family([self.a] * self.n0, 0, order)

    def to_json(self):
        return {"family": "Example1", "a": format_rational(self.a), "n0": self.n0}


@dataclass(frozen=True)
class Example2Finite:
    """``N(t) = 1 / ((1 - a1 t)(1 - a2 t))`` with ``0 < a1 < a2``."""

    a1: Fraction
    a2: Fraction

    def __post_init__(self):
        a1, a2 = _pos("a1", self.a1), _pos("a2", self.a2)
        if not a1 < a2:
            raise DomainError("Example 2 needs a1 < a2")
        object.__setattr__(self, "a1", a1)
        object.__setattr__(self, "a2", a2)

    def series(self, order):
        return build_product_family([self.a1, self.a2], 0, order)

    def to_json(self):
        return {"family": "Example2", "a1": format_rational(self.a1), "a2": format_rational(self.a2)}


@dataclass(frozen=True)
class ProductQ:
    """``prod_{k < factors} (1 + alpha a_k t)/(1 - a_k t)`` with ``a_k = (1-q) q^k``."""

    q: Fraction
    factors: int
    alpha: Fraction = Fraction(0)

    def __post_init__(self):
        q = rational(self.q)
        if not 0 < q < 1:
            raise DomainError("q must lie in (0, 1)")
        if self.factors < 1:
            raise DomainError("factors must be positive")
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "alpha", rational(self.alpha))

    def a_list(self):
        return [(1 - self.q) * self.q**k for k in range(self.factors)]

    def series(self, order):
        return build_product_family(self.a_list(), self.alpha, order)

    def to_json(self):
        return {
            "family": "ProductQ",
            "q": format_rational(self.q),
            "factors": self.factors,
            "alpha": format_rational(self.alpha),
        }


@dataclass(frozen=True)
class Gauss:
    """``N(t) = exp(t + (a/2) t^2)``."""

    a: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a", _pos("a", self.a))

    def series(self, order):
        return MonomialSum((0, 1, self.a / 2)).series(order).exp()

    def to_json(self):
        return {"family": "Gauss", "a": format_rational(self.a)}


@dataclass(frozen=True)
class CubicExp:
    """``N(t) = exp(t + (a/3) t^3)``."""

    a: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a", _pos("a", self.a))

    def series(self, order):
        return MonomialSum((0, 1, 0, self.a / 3)).series(order).exp()

    def to_json(self):
        return {"family": "CubicExp", "a": format_rational(self.a)}


@dataclass(frozen=True)
class ExpPoly:
    """``N(t) = exp(t + a_2 t^2 + ... + a_m t^m)``, coefficients taken as given."""

    coeffs: tuple

    def __post_init__(self):
        coeffs = tuple(rational(c) for c in self.coeffs)
        if any(c < 0 for c in coeffs):
            raise DomainError("ExpPoly coefficients must be nonnegative")
        object.__setattr__(self, "coeffs", coeffs)

    def series(self, order):
        return MonomialSum((0, 1) + self.coeffs).series(order).exp()

    def to_json(self):
        return {"family": "ExpPoly", "coeffs": [format_rational(c) for c in self.coeffs]}


FamilySpec = Union[Example1, Example2Finite, ProductQ, Gauss, CubicExp, ExpPoly]


def family_from_json(obj) -> FamilySpec:
    if isinstance(obj, str):
        obj = json.loads(obj)
    name = obj.get("family")
    try:
        if name == "Example1":
            return Example1(obj["a"], obj["n0"])
        if name == "Example2":
            return Example2Finite(obj["a1"], obj["a2"])
        if name == "ProductQ":
            return ProductQ(obj["q"], int(obj["factors"]), obj.get("alpha", "0"))
        if name == "Gauss":
            return Gauss(obj["a"])
        if name == "CubicExp":
            return CubicExp(obj["a"])
        if name == "ExpPoly":
            return ExpPoly(tuple(obj["coeffs"]))
    except KeyError as exc:
        raise DomainError(f"missing field {exc.args[0]!r} for family {name}") from None
    raise DomainError(f"unknown family {name!r}")


def family_series(spec: FamilySpec, order: int) -> TruncSeries:
    return spec.series(order)


def product_q_convergence(spec: ProductQ, order: int) -> Fraction:
    """Largest coefficient change when one more factor is included."""
    more = ProductQ(spec.q, spec.factors + 1, spec.alpha)
    a, b = spec.series(order), more.series(order)
    return max(abs(u - v) for u, v in zip(a, b))


# ---------------------------------------------------------------------------
# Example 1: (1 - a t)^(-n)
# ---------------------------------------------------------------------------


def example1_xk(spec: Example1, k: int) -> Fraction:
    """``x_k = k / (a (n - 1 + k))``."""
    if k == 0:
        return Fraction(0)
    return Fraction(k) / (spec.a * (spec.n0 - 1 + k))


def example1_xfact(spec: Example1, k: int) -> Fraction:
    """``x_k! = k!/a^k * (n-1)!/(n-1+k)!``."""
    n = spec.n0
    return Fraction(factorial(k) * factorial(n - 1), factorial(n - 1 + k)) / spec.a**k


def example1_recursion(spec: Example1, k_max: int) -> List[Fraction]:
    """Sequence regenerated from ``x_{k+1} = (a x_k (n-2) + 1) / (a (n - a x_k))``."""
    a, n = spec.a, spec.n0
    xs = [Fraction(0)]
    for k in range(k_max):
        den = a * (n - a * xs[k])
        if den == 0:
            raise DomainError(f"recursion degenerates at k = {k} (needs n0 >= 2)")
        xs.append((a * xs[k] * (n - 2) + 1) / den)
    return xs


def example1_pk(spec: Example1, k: int) -> EtaPoly:
    """Terminating hypergeometric form of ``p_k^(n)``."""
    n = spec.n0
    coeffs = []
    for j in range(min(k, n) + 1):
        coeffs.append(
            comb(n, j)
            * (-1) ** j
            * Fraction(factorial(n - 1 + k - j), factorial(n - 1 + k))
            * Fraction(factorial(k), factorial(k - j))
        )
    return EtaPoly(coeffs)


# ---------------------------------------------------------------------------
# Example 2: 1 / ((1 - a1 t)(1 - a2 t))
# ---------------------------------------------------------------------------


def _h(spec: Example2Finite, k: int) -> Fraction:
    """``sum_{i=0}^k a1^i a2^(k-i)``."""
    return sum((spec.a1**i * spec.a2 ** (k - i) for i in range(k + 1)), Fraction(0))


def example2_xfact(spec: Example2Finite, k: int) -> Fraction:
    return 1 / _h(spec, k)


def example2_xk(spec: Example2Finite, k: int) -> Fraction:
    """Ratio form ``sum_j a1^j a2^(k-1-j) / sum_i a1^i a2^(k-i)``."""
    if k == 0:
        return Fraction(0)
    return _h(spec, k - 1) / _h(spec, k)


def example2_xk_geometric(spec: Example2Finite, k: int) -> Fraction:
    """``(1/a2) (r^k - 1) / (r^(k+1) - 1)`` with ``r = a1/a2``."""
    r = spec.a1 / spec.a2
    return (r**k - 1) / (spec.a2 * (r ** (k + 1) - 1))


def bracket_as_printed(n: int, q: Fraction) -> Fraction:
    """``[n]_q = q^(n+1) / (q - 1)``, literally as printed."""
    return q ** (n + 1) / (q - 1)


def bracket_minus_one_restored(n: int, q: Fraction) -> Fraction:
    """``[n]_q = (q^(n+1) - 1) / (q - 1)``."""
    return (q ** (n + 1) - 1) / (q - 1)


def bracket_consistent(n: int, q: Fraction) -> Fraction:
    """``[n]_q = (q^(n-1) - 1) / (q - 1)``, the indexing that matches the ratio form."""
    return (q ** (n - 1) - 1) / (q - 1)


def example2_xk_bracket(spec: Example2Finite, k: int, bracket=bracket_consistent) -> Fraction:
    """``x_k = (1/a2) [k+1]_r / [k+2]_r`` for a chosen bracket convention."""
    r = spec.a1 / spec.a2
    return bracket(k + 1, r) / (spec.a2 * bracket(k + 2, r))


def example2_b(spec: Example2Finite, k: int) -> Fraction:
    """``b_k = sum_{i=0}^{k-2} a1^(i+1) a2^(k-1-i) / sum_{i=0}^k a1^i a2^(k-i)``."""
    num = sum((spec.a1 ** (i + 1) * spec.a2 ** (k - 1 - i) for i in range(k - 1)), Fraction(0))
    return num / _h(spec, k)


def example2_pk(spec: Example2Finite, k: int) -> EtaPoly:
    """``1 - eta (1 + b_k) + eta^2 b_k`` for k >= 2; the universal p_0, p_1 otherwise."""
    if k == 0:
        return EtaPoly((1,))
    if k == 1:
        return EtaPoly((1, -1))
    b = example2_b(spec, k)
    return EtaPoly((1, -(1 + b), b))


# ---------------------------------------------------------------------------
# Hermite polynomials and Example 3: exp(t + (a/2) t^2)
# ---------------------------------------------------------------------------


def hermite_by_recurrence(n_max: int) -> List[tuple]:
    """Integer coefficient tuples of H_0..H_{n_max} via ``H_{n+1} = 2x H_n - 2n H_{n-1}``."""
    H = [(1,), (0, 2)]
    for n in range(1, n_max):
        prev, cur = H[n - 1], H[n]
        nxt = [0] * (len(cur) + 1)
        for j, c in enumerate(cur):
            nxt[j + 1] += 2 * c
        for j, c in enumerate(prev):
            nxt[j] -= 2 * n * c
        H.append(tuple(nxt))
    return H[: n_max + 1]


def hermite_by_expansion(n: int) -> tuple:
    """``H_n(x) = n! sum_m (-1)^m (2x)^(n-2m) / (m! (n-2m)!)``."""
    coeffs = [0] * (n + 1)
    for m in range(n // 2 + 1):
        j = n - 2 * m
        coeffs[j] = factorial(n) * (-1) ** m * 2**j // (factorial(m) * factorial(j))
    return tuple(coeffs)


def hermite_imaginary_value(hermite: tuple, n: int, a: RationalLike) -> Fraction:
    """``i^n (a/2)^(n/2) H_n(-i / sqrt(2a))``, which is rational.

    Only powers ``x^j`` with ``j = n mod 2`` occur in H_n, and for those
    ``i^n (a/2)^(n/2) x^j = (-1)^((n-j)/2) (a/2)^((n-j)/2) / 2^j``.
    """
    a = rational(a)
    total = Fraction(0)
    for j, c in enumerate(hermite):
        if c == 0:
            continue
        if (n - j) % 2:
            raise ValueError("Hermite polynomial has the wrong parity")
        h = (n - j) // 2
        total += c * (-1) ** h * (a / 2) ** h / 2**j
    return total


def example3_xnfact(spec: Gauss, n: int) -> Fraction:
    """``x_n! = [sum_m (a/2)^m / (m! (n-2m)!)]^(-1)``."""
    half = spec.a / 2
    s = sum((half**m / (factorial(m) * factorial(n - 2 * m)) for m in range(n // 2 + 1)), Fraction(0))
    return 1 / s


def example3_xnfact_hermite(spec: Gauss, n: int, hermite: tuple | None = None) -> Fraction:
    """``x_n! = [i^n (a/2)^(n/2) H_n(-i/sqrt(2a)) / n!]^(-1)``."""
    if hermite is None:
        hermite = hermite_by_recurrence(n)[n]
    return factorial(n) / hermite_imaginary_value(hermite, n, spec.a)


def example3_xn(spec: Gauss, n: int) -> Fraction:
    """Ratio of the two floor-sums giving ``x_n = x_n! / x_{n-1}!``."""
    if n == 0:
        return Fraction(0)
    half = spec.a / 2
    num = sum(
        (half**j / (factorial(j) * factorial(n - 1 - 2 * j)) for j in range((n - 1) // 2 + 1)),
        Fraction(0),
    )
    den = sum((half**m / (factorial(m) * factorial(n - 2 * m)) for m in range(n // 2 + 1)), Fraction(0))
    return num / den


def example3_recursion(spec: Gauss, n_max: int) -> List[Fraction]:
    """``x_{n+1} = (n+1) / (1 + a x_n)`` from ``x_0 = 0``."""
    xs = [Fraction(0)]
    for n in range(n_max):
        xs.append((n + 1) / (1 + spec.a * xs[n]))
    return xs


def example3_recursion_float(a: float, n_max: int) -> List[float]:
    xs = [0.0]
    for n in range(n_max):
        xs.append((n + 1) / (1 + a * xs[n]))
    return xs


def example3_pn(spec: Gauss, n: int) -> EtaPoly:
    """``p_n = x_n! sum_j (a/2)^j (1-eta)^(n-j) (1+eta)^j / (j! (n-2j)!)``.

    This is the Hermite closed form with the half-integer powers cancelled.
    """
    half = spec.a / 2
    one_minus, one_plus = EtaPoly((1, -1)), EtaPoly((1, 1))
    acc = EtaPoly()
    for j in range(n // 2 + 1):
        term = EtaPoly((1,))
        for _ in range(n - j):
            term = term * one_minus
        for _ in range(j):
            term = term * one_plus
        acc = acc + term * (half**j / (factorial(j) * factorial(n - 2 * j)))
    return acc * example3_xnfact(spec, n)
