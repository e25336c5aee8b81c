"""Exact rational scalars and dense univariate polynomials.

Scalars are :class:`fractions.Fraction`, which already keeps lowest terms
with a positive denominator. Polynomials are immutable tuples of fractions,
index ``i`` holding the coefficient of ``n**i``.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence, Union

ExactRational = Fraction
Scalar = Union[int, Fraction]

__all__ = [
    "ExactRational",
    "Polynomial",
    "binomial",
    "poly_eval",
    "poly_mul",
    "poly_pow_linear",
    "interpolate",
    "sturm_sequence",
    "count_positive_real_roots",
    "isolate_positive_roots",
    "cauchy_bound",
    "refine_root",
]


def binomial(n: int, k: int) -> int:
    """Binomial coefficient, zero whenever ``k < 0`` or ``k > n``."""
    if n < 0:
        raise ValueError(f"binomial requires n >= 0, got {n}")
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


class Polynomial:
    """Dense polynomial in ``n`` with exact rational coefficients.

    The zero polynomial has an empty coefficient tuple and degree -1.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self._coeffs = tuple(cs)

    @classmethod
    def constant(cls, c: Scalar) -> "Polynomial":
        return cls([c])

    @classmethod
    def linear(cls, a: Scalar, b: Scalar) -> "Polynomial":
        """``a*n + b``."""
        return cls([b, a])

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._coeffs

    @property
    def degree(self) -> int:
        return len(self._coeffs) - 1

    def is_zero(self) -> bool:
        return not self._coeffs

    def coeff(self, i: int) -> Fraction:
        if 0 <= i < len(self._coeffs):
            return self._coeffs[i]
        return Fraction(0)

    @property
    def leading(self) -> Fraction:
        return self._coeffs[-1] if self._coeffs else Fraction(0)

    def __call__(self, x: Scalar) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self._coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Polynomial):
            return self._coeffs == other._coeffs
        if isinstance(other, (int, Fraction)):
            return self._coeffs == Polynomial([other])._coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._coeffs)

    def __add__(self, other: "Polynomial | Scalar") -> "Polynomial":
        other = _as_poly(other)
        size = max(len(self._coeffs), len(other._coeffs))
        return Polynomial(self.coeff(i) + other.coeff(i) for i in range(size))

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial(-c for c in self._coeffs)

    def __sub__(self, other: "Polynomial | Scalar") -> "Polynomial":
        return self + (-_as_poly(other))

    def __rsub__(self, other: Scalar) -> "Polynomial":
        return _as_poly(other) - self

    def __mul__(self, other: "Polynomial | Scalar") -> "Polynomial":
        other = _as_poly(other)
        if self.is_zero() or other.is_zero():
            return Polynomial()
        out = [Fraction(0)] * (len(self._coeffs) + len(other._coeffs) - 1)
        for i, a in enumerate(self._coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other._coeffs):
                out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Polynomial":
        if e < 0:
            raise ValueError("negative exponent")
        result = Polynomial([1])
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def divmod(self, other: "Polynomial") -> tuple["Polynomial", "Polynomial"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self._coeffs)
        dq = other.degree
        lead = other.leading
        quot = [Fraction(0)] * max(len(rem) - dq, 0)
        for k in range(len(rem) - 1 - dq, -1, -1):
            q = rem[k + dq] / lead
            quot[k] = q
            if q:
                for i, b in enumerate(other._coeffs):
                    rem[k + i] -= q * b
        return Polynomial(quot), Polynomial(rem[:dq] if dq > 0 else [])

    def derivative(self) -> "Polynomial":
        return Polynomial(i * c for i, c in enumerate(self._coeffs) if i)

    def to_json(self) -> list[list[int]]:
        """Ascending ``[[num, den], ...]``; the zero polynomial is ``[]``."""
        return [[c.numerator, c.denominator] for c in self._coeffs]

    @classmethod
    def from_json(cls, data: Sequence[Sequence[int]]) -> "Polynomial":
        coeffs = []
        for pair in data:
            if len(pair) != 2 or not all(isinstance(v, int) for v in pair):
                raise ValueError(f"coefficient must be [num, den] integers, got {pair!r}")
            if pair[1] == 0:
                raise ValueError("zero denominator")
            coeffs.append(Fraction(pair[0], pair[1]))
        return cls(coeffs)

    def __str__(self) -> str:
        if not self._coeffs:
            return "0"
        parts = []
        for i in range(len(self._coeffs) - 1, -1, -1):
            c = self._coeffs[i]
            if c == 0:
                continue
            mag = abs(c)
            if i == 0:
                body = str(mag)
            else:
                mono = "n" if i == 1 else f"n^{i}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append((" - " if c < 0 else " + ") + body)
        return "".join(parts)

    def __repr__(self) -> str:
        return f"Polynomial({str(self)!r})"


def _as_poly(x: "Polynomial | Scalar") -> Polynomial:
    if isinstance(x, Polynomial):
        return x
    if isinstance(x, (int, Fraction)):
        return Polynomial([x])
    raise TypeError(f"cannot treat {type(x).__name__} as a polynomial")


def poly_eval(p: Polynomial, x: Scalar) -> Fraction:
    return p(x)


def poly_mul(p: Polynomial, q: Polynomial) -> Polynomial:
    return p * q


def poly_pow_linear(a: int, b: int, e: int) -> Polynomial:
    """Expand ``(a*n + b)**e`` by the binomial theorem."""
    if e < 0:
        raise ValueError(f"exponent must be non-negative, got {e}")
    return Polynomial(binomial(e, i) * a**i * b ** (e - i) for i in range(e + 1))


def interpolate(samples: Sequence[tuple[int, int]]) -> Polynomial:
    """Unique polynomial of degree < len(samples) through ``(n, value)`` pairs.

    Newton divided differences, converted to monomial form.
    """
    xs = [Fraction(x) for x, _ in samples]
    if len(set(xs)) != len(xs):
        raise ValueError("interpolation abscissae must be pairwise distinct")
    table = [Fraction(v) for _, v in samples]
    k = len(xs)
    for level in range(1, k):
        for i in range(k - 1, level - 1, -1):
            table[i] = (table[i] - table[i - 1]) / (xs[i] - xs[i - level])
    # Horner on the Newton basis: c_0 + (n-x_0)(c_1 + (n-x_1)(c_2 + ...))
    result = Polynomial()
    for i in range(k - 1, -1, -1):
        result = result * Polynomial([-xs[i], 1]) + table[i]
    return result


def cauchy_bound(p: Polynomial) -> Fraction:
    """``1 + max |c_i / c_deg|``; every complex root has modulus below it."""
    if p.is_zero():
        raise ValueError("zero polynomial has no root bound")
    lead = p.leading
    return 1 + max((abs(c / lead) for c in p.coeffs[:-1]), default=Fraction(0))


def sturm_sequence(p: Polynomial) -> list[Polynomial]:
    """Sturm sequence of the squarefree part of ``p``."""
    seq = _remainder_chain(p)
    if seq[-1].degree > 0:
        p, _ = p.divmod(seq[-1])
        seq = _remainder_chain(p)
    return seq


def _remainder_chain(p: Polynomial) -> list[Polynomial]:
    seq = [p, p.derivative()]
    while not seq[-1].is_zero():
        _, r = seq[-2].divmod(seq[-1])
        seq.append(-r)
    seq.pop()
    return seq


def _sign_changes(seq: Sequence[Polynomial], x: Fraction) -> int:
    changes = 0
    prev = 0
    for q in seq:
        v = q(x)
        if v == 0:
            continue
        s = 1 if v > 0 else -1
        if prev and s != prev:
            changes += 1
        prev = s
    return changes


def _strip_zero_root(p: Polynomial) -> Polynomial:
    cs = p.coeffs
    k = 0
    while cs[k] == 0:
        k += 1
    return Polynomial(cs[k:])


def count_positive_real_roots(p: Polynomial) -> int:
    """Number of distinct real roots in ``(0, +inf)``, by Sturm's theorem."""
    if p.is_zero():
        raise ValueError("zero polynomial has infinitely many roots")
    p = _strip_zero_root(p)
    if p.degree == 0:
        return 0
    seq = sturm_sequence(p)
    return _sign_changes(seq, Fraction(0)) - _sign_changes(seq, cauchy_bound(p))


def isolate_positive_roots(p: Polynomial) -> list[tuple[Fraction, Fraction]]:
    """Half-open intervals ``(lo, hi]`` each holding exactly one positive root.

    Bisection on Sturm counts; intervals come back in increasing order.
    """
    if p.is_zero():
        raise ValueError("zero polynomial has infinitely many roots")
    p = _strip_zero_root(p)
    if p.degree == 0:
        return []
    seq = sturm_sequence(p)

    def count(lo: Fraction, hi: Fraction) -> int:
        return _sign_changes(seq, lo) - _sign_changes(seq, hi)

    out = []
    stack = [(Fraction(0), cauchy_bound(p))]
    while stack:
        lo, hi = stack.pop()
        k = count(lo, hi)
        if k == 0:
            continue
        if k == 1:
            out.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        stack.append((mid, hi))
        stack.append((lo, mid))
    out.sort()
    return out


def refine_root(p: Polynomial, lo: Fraction, hi: Fraction, width: Fraction) -> tuple[Fraction, Fraction]:
    """Shrink an isolating interval ``(lo, hi]`` until ``hi - lo <= width``."""
    seq = sturm_sequence(_strip_zero_root(p))
    v_lo = _sign_changes(seq, lo)
    while hi - lo > width:
        mid = (lo + hi) / 2
        v_mid = _sign_changes(seq, mid)
        if v_lo - v_mid == 1:
            hi = mid
        else:
            lo, v_lo = mid, v_mid
    return lo, hi
