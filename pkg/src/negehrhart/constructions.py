"""Reeve tetrahedra, their iterated prisms, and the coefficient bookkeeping.

``paper_family(d, m)`` is ``Q_m x [0, d-3]^(d-3)``. Its Ehrhart polynomial is
``((d-3)n + 1)^(d-3) * i(Q_m, n)``, and for large ``m`` every coefficient of
``n^1 .. n^(d-2)`` is negative.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .exact import Polynomial, binomial, count_positive_real_roots, poly_pow_linear
from .polytope import Box, Product, Simplex, product

__all__ = [
    "InvariantViolation",
    "CoefficientReport",
    "reeve",
    "reeve_ehrhart",
    "paper_family",
    "closed_form_ehrhart",
    "a_value",
    "g_value",
    "coefficient_report",
    "negativity_thresholds",
    "min_negative_m",
    "min_positive_root_m",
]


class InvariantViolation(AssertionError):
    """Two independent computations of the same quantity disagreed."""


def _check_dm(d: int, m: int) -> None:
    if d < 4:
        raise ValueError(f"d must be at least 4, got {d}")
    if m < 1:
        raise ValueError(f"m must be a positive integer, got {m}")


def reeve(m: int) -> Simplex:
    if not isinstance(m, int) or m < 1:
        raise ValueError(f"m must be a positive integer, got {m!r}")
    return Simplex(((0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, m)))


def reeve_ehrhart(m: int) -> Polynomial:
    """``m/6 n^3 + n^2 + (12-m)/6 n + 1``."""
    return Polynomial([1, Fraction(12 - m, 6), 1, Fraction(m, 6)])


def paper_family(d: int, m: int) -> Product:
    _check_dm(d, m)
    k = d - 3
    P = reeve(m)
    for _ in range(k):
        P = product(P, Box(((0, k),)))
    return P


def closed_form_ehrhart(d: int, m: int) -> Polynomial:
    _check_dm(d, m)
    return poly_pow_linear(d - 3, 1, d - 3) * reeve_ehrhart(m)


def a_value(d: int, i: int) -> int:
    """``(d-3)^i * C(d-3, i)``; zero at ``i = d-2`` by the binomial convention."""
    if d < 4:
        raise ValueError(f"d must be at least 4, got {d}")
    if not 0 <= i <= d - 2:
        raise ValueError(f"A_i needs 0 <= i <= d-2 = {d - 2}, got i = {i}")
    return (d - 3) ** i * binomial(d - 3, i)


def g_value(d: int, j: int) -> int:
    if d < 5 or not 3 <= j <= d - 2:
        raise ValueError(f"g(d, j) needs d >= 5 and 3 <= j <= d-2, got d={d}, j={j}")
    return (d - 3) ** 2 * binomial(d - 3, j - 1) - binomial(d - 3, j - 3)


def _formula_coefficients(d: int, m: int) -> dict[int, Fraction]:
    """``c_1 .. c_{d-2}`` from the explicit A_i formulas.

    Polynomial in ``m``, so ``m = 0`` is a valid evaluation point for slopes.
    """
    A = [a_value(d, i) for i in range(d - 1)]
    top = Fraction(m, 6)
    lin = Fraction(12 - m, 6)
    out = {1: lin + A[1], 2: 1 + lin * A[1] + A[2]}
    for j in range(3, d - 1):
        # j = d-2 reaches A[d-2], which is 0
        out[j] = top * A[j - 3] + A[j - 2] + lin * A[j - 1] + A[j]
    return out


@dataclass(frozen=True)
class CoefficientReport:
    d: int
    m: int
    coefficients: tuple[Fraction, ...]
    a_table: tuple[int, ...]
    g_table: dict[int, int]
    signs: tuple[int, ...]
    all_middle_negative: bool

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "m": self.m,
            "coefficients": [[c.numerator, c.denominator] for c in self.coefficients],
            "a_table": list(self.a_table),
            "g_table": {str(j): g for j, g in self.g_table.items()},
            "signs": list(self.signs),
            "all_middle_negative": self.all_middle_negative,
        }


def coefficient_report(d: int, m: int) -> CoefficientReport:
    _check_dm(d, m)
    expanded = closed_form_ehrhart(d, m)
    coeffs = tuple(expanded.coeff(i) for i in range(d + 1))
    A = tuple(a_value(d, i) for i in range(d - 1))
    g_table = {j: g_value(d, j) for j in range(3, d - 1)} if d >= 5 else {}

    for j, c in _formula_coefficients(d, m).items():
        if c != coeffs[j]:
            raise InvariantViolation(f"c_{j}: formula gives {c}, expansion gives {coeffs[j]}")
    for j, g in g_table.items():
        rearranged = -Fraction((d - 3) ** (j - 3) * g, 6) * m + (A[j - 2] + 2 * A[j - 1] + A[j])
        if rearranged != coeffs[j]:
            raise InvariantViolation(f"c_{j}: g-form gives {rearranged}, expansion gives {coeffs[j]}")
    if coeffs[0] != 1:
        raise InvariantViolation(f"c_0 = {coeffs[0]}")
    if coeffs[d] != Fraction(m * (d - 3) ** (d - 3), 6) or coeffs[d - 1] <= 0:
        raise InvariantViolation("top two coefficients must be positive")

    signs = tuple((c > 0) - (c < 0) for c in coeffs)
    return CoefficientReport(
        d=d,
        m=m,
        coefficients=coeffs,
        a_table=A,
        g_table=g_table,
        signs=signs,
        all_middle_negative=all(coeffs[j] < 0 for j in range(1, d - 1)),
    )


def negativity_thresholds(d: int) -> dict[int, int]:
    """Per ``j``, the least ``m >= 1`` making ``c_j`` negative.

    Each ``c_j`` is affine in ``m`` with negative slope, so the threshold is
    ``floor(intercept / -slope) + 1``.
    """
    if d < 4:
        raise ValueError(f"d must be at least 4, got {d}")
    at0 = _formula_coefficients(d, 0)
    at1 = _formula_coefficients(d, 1)
    out = {}
    for j in at0:
        slope = at1[j] - at0[j]
        if slope >= 0:
            raise InvariantViolation(f"c_{j} has non-negative slope {slope} in m")
        out[j] = max(1, math.floor(at0[j] / -slope) + 1)
    return out


def min_negative_m(d: int) -> int:
    """Least ``m`` with ``c_1 .. c_{d-2}`` all negative."""
    m = max(negativity_thresholds(d).values())
    if not coefficient_report(d, m).all_middle_negative:
        raise InvariantViolation(f"threshold m = {m} does not make all middle coefficients negative")
    if m > 1 and coefficient_report(d, m - 1).all_middle_negative:
        raise InvariantViolation(f"threshold m = {m} is not minimal")
    return m


def min_positive_root_m(limit: int = 10**6) -> int:
    """Least ``m`` for which ``i(Q_m, n)`` has a positive real root."""
    for m in range(1, limit + 1):
        if count_positive_real_roots(reeve_ehrhart(m)) >= 1:
            return m
    raise RuntimeError(f"no m <= {limit} gives a positive real root")
