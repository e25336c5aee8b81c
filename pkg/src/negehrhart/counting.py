"""Lattice-point counts of dilates, Ehrhart polynomials and delta-vectors.

Counting reduces every polytope to an integer system ``A x <= n*c`` over the
dilated bounding box and hands disjoint slabs of that box (split along the
first coordinate) to a scan kernel. The compiled kernel is used when it was
built and the int64 range is provably safe; otherwise the pure-Python twin
runs. Set ``NEGEHRHART_PURE=1`` to force the fallback.
"""

from __future__ import annotations

import itertools
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from . import _pykernel
from .exact import Polynomial, binomial, interpolate
from .polytope import LatticePolytope, Product, contains, dimension

try:
    from . import _ckernel
except ImportError:  # extension not built
    _ckernel = None

__all__ = [
    "KERNELS",
    "DEFAULT_KERNEL",
    "BudgetExceeded",
    "EhrhartConsistencyError",
    "DeltaVectorError",
    "DeltaVector",
    "candidate_points",
    "count_lattice_points",
    "count_by_membership",
    "ehrhart_polynomial",
    "delta_vector",
]

KERNELS: dict[str, Callable] = {"python": _pykernel.count_region}
if _ckernel is not None:
    KERNELS["cython"] = _ckernel.count_region

DEFAULT_KERNEL = "cython" if "cython" in KERNELS and not os.environ.get("NEGEHRHART_PURE") else "python"

_INT64_SAFE = 2**62


class BudgetExceeded(RuntimeError):
    def __init__(self, needed: int, limit: int):
        super().__init__(f"enumeration needs {needed} candidate points, budget is {limit}")
        self.needed = needed
        self.limit = limit


class EhrhartConsistencyError(ArithmeticError):
    """Counts are not those of a lattice polytope (not Ehrhart-consistent)."""


class DeltaVectorError(ArithmeticError):
    """Not a lattice-polytope Ehrhart polynomial."""


@dataclass(frozen=True)
class DeltaVector:
    entries: tuple[int, ...]

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    @property
    def normalized_volume(self) -> int:
        return sum(self.entries)


def _dilated_box(P: LatticePolytope, n: int) -> list[tuple[int, int]]:
    return [(n * lo, n * hi) for lo, hi in P.bbox()]


def _box_volume(box) -> int:
    return math.prod(hi - lo + 1 for lo, hi in box)


def candidate_points(P: LatticePolytope, n: int, factorize: bool = True) -> int:
    """Number of box points a count of ``nP`` would scan."""
    if n == 0:
        return 1
    if factorize and isinstance(P, Product):
        return sum(candidate_points(f, n) for f in P.factors)
    return _box_volume(_dilated_box(P, n))


def _fits_int64(A, c, box) -> bool:
    reach = [max(abs(lo), abs(hi)) for lo, hi in box]
    for row, rhs in zip(A, c):
        if abs(rhs) + sum(abs(a) * r for a, r in zip(row, reach)) >= _INT64_SAFE:
            return False
    return True


def _slab_bounds(lo: int, hi: int, slabs: int) -> list[tuple[int, int]]:
    width = hi - lo + 1
    slabs = max(1, min(slabs, width))
    step, extra = divmod(width, slabs)
    out = []
    start = lo
    for i in range(slabs):
        size = step + (1 if i < extra else 0)
        out.append((start, start + size - 1))
        start += size
    return out


def _count_flat(P: LatticePolytope, n: int, threads: int, slabs: Optional[int], kernel: str) -> int:
    rows = P.inequalities()
    A = [list(normal) for normal, _ in rows]
    c = [n * rhs for _, rhs in rows]
    box = _dilated_box(P, n)
    fn = KERNELS[kernel]
    if kernel != "python" and not _fits_int64(A, c, box):
        fn = KERNELS["python"]
    lo = [b[0] for b in box]
    hi = [b[1] for b in box]
    parts = _slab_bounds(lo[0], hi[0], slabs if slabs else max(1, threads))

    def run(part):
        return fn(A, c, [part[0]] + lo[1:], [part[1]] + hi[1:])

    if threads > 1 and len(parts) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return sum(pool.map(run, parts))
    return sum(map(run, parts))


def count_lattice_points(
    P: LatticePolytope,
    n: int,
    *,
    factorize: bool = True,
    threads: int = 1,
    slabs: Optional[int] = None,
    kernel: Optional[str] = None,
    max_points: Optional[int] = None,
) -> int:
    """Exact ``#(nP ∩ Z^N)``.

    Products are counted factor by factor unless ``factorize`` is False, in
    which case the joint box is scanned in one pass. ``slabs`` sets how many
    first-coordinate slabs the box is cut into (default: ``threads``); the
    total does not depend on it or on ``threads``.
    """
    if n < 0:
        raise ValueError(f"dilation factor must be non-negative, got {n}")
    if n == 0:
        return 1
    if max_points is not None:
        needed = candidate_points(P, n, factorize)
        if needed > max_points:
            raise BudgetExceeded(needed, max_points)
    kernel = kernel or DEFAULT_KERNEL
    if kernel not in KERNELS:
        raise ValueError(f"unknown or unavailable kernel {kernel!r}; have {sorted(KERNELS)}")
    if factorize and isinstance(P, Product):
        return math.prod(
            count_lattice_points(f, n, threads=threads, slabs=slabs, kernel=kernel) for f in P.factors
        )
    return _count_flat(P, n, threads, slabs, kernel)


def count_by_membership(P: LatticePolytope, n: int) -> int:
    """Slow reference count: test ``q/n`` with ``contains`` for each box point."""
    if n == 0:
        return 1
    box = _dilated_box(P, n)
    return sum(
        1
        for q in itertools.product(*(range(lo, hi + 1) for lo, hi in box))
        if contains(P, [Fraction(v, n) for v in q])
    )


def ehrhart_polynomial(P: LatticePolytope, **count_opts) -> Polynomial:
    """Interpolate counts at ``n = 0..d`` and confirm at ``d+1`` and ``d+2``.

    Keyword arguments go to :func:`count_lattice_points`.
    """
    d = dimension(P)
    samples = [(n, count_lattice_points(P, n, **count_opts)) for n in range(d + 1)]
    poly = interpolate(samples)
    for n in (d + 1, d + 2):
        got = count_lattice_points(P, n, **count_opts)
        if poly(n) != got:
            raise EhrhartConsistencyError(
                f"not Ehrhart-consistent: interpolant predicts {poly(n)} points at n={n}, counted {got}"
            )
    if poly.degree != d:
        raise EhrhartConsistencyError(f"degree {poly.degree} differs from dimension {d}")
    if poly.leading <= 0 or (d >= 1 and poly.coeff(d - 1) <= 0):
        raise EhrhartConsistencyError(f"top two coefficients of {poly} must be positive")
    return poly


def delta_vector(p: Polynomial, d: int) -> DeltaVector:
    """Numerator of the Ehrhart series ``sum p(n) t^n = delta(t) / (1-t)^(d+1)``."""
    if p.degree != d:
        raise DeltaVectorError(f"polynomial has degree {p.degree}, expected {d}")
    if p(0) != 1:
        raise DeltaVectorError(f"constant term is {p(0)}, expected 1")
    values = [p(i) for i in range(d + 1)]
    entries = []
    for i in range(d + 1):
        delta = sum(((-1) ** j * binomial(d + 1, j) * values[i - j] for j in range(i + 1)), Fraction(0))
        if delta.denominator != 1:
            raise DeltaVectorError(f"not a lattice-polytope Ehrhart polynomial: delta_{i} = {delta}")
        entries.append(int(delta))
    return DeltaVector(tuple(entries))
