"""Integral convex polytopes: simplices, boxes, products and H-representations.

All variants are frozen and full-dimensional. Every variant can emit an
integer inequality system ``A x <= n*c`` describing its ``n``-th dilate, which
is what the counting kernels consume; ``contains`` is the independent,
rational-arithmetic membership test.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence, Union

__all__ = [
    "PolytopeError",
    "SpecError",
    "Simplex",
    "Box",
    "Product",
    "HRep",
    "LatticePolytope",
    "dimension",
    "contains",
    "product",
    "prism",
    "parse_spec",
    "serialize_spec",
    "spec_to_dict",
    "spec_from_dict",
]


class PolytopeError(ValueError):
    """Structurally invalid polytope."""


class SpecError(ValueError):
    """Malformed PolytopeSpec document; ``path`` locates the offending node."""

    def __init__(self, message: str, path: str = "$"):
        super().__init__(f"{path}: {message}")
        self.path = path


def _solve_barycentric(vertices: tuple[tuple[int, ...], ...]):
    """Invert the (d+1)x(d+1) matrix with columns ``[v_i; 1]``.

    Returns ``(det, inverse)``; raises PolytopeError on affine dependence.
    """
    size = len(vertices)
    rows = [[Fraction(v[r]) for v in vertices] for r in range(size - 1)]
    rows.append([Fraction(1)] * size)
    aug = [row + [Fraction(int(i == r)) for i in range(size)] for r, row in enumerate(rows)]
    det = Fraction(1)
    for col in range(size):
        pivot = next((r for r in range(col, size) if aug[r][col] != 0), None)
        if pivot is None:
            raise PolytopeError("simplex vertices are affinely dependent")
        if pivot != col:
            aug[col], aug[pivot] = aug[pivot], aug[col]
            det = -det
        p = aug[col][col]
        det *= p
        inv_p = 1 / p
        aug[col] = [x * inv_p for x in aug[col]]
        for r in range(size):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    inverse = tuple(tuple(row[size:]) for row in aug)
    return int(det), inverse


@dataclass(frozen=True)
class Simplex:
    vertices: tuple[tuple[int, ...], ...]
    _det: int = field(init=False, repr=False, compare=False)
    _inverse: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        verts = tuple(tuple(int(c) for c in v) for v in self.vertices)
        object.__setattr__(self, "vertices", verts)
        if not verts:
            raise PolytopeError("simplex needs at least one vertex")
        dim = len(verts[0])
        if any(len(v) != dim for v in verts):
            raise PolytopeError("simplex vertices have inconsistent lengths")
        if len(verts) != dim + 1:
            raise PolytopeError(
                f"simplex in dimension {dim} needs {dim + 1} vertices, got {len(verts)}"
                " (wrong vertex count / affinely dependent)"
            )
        det, inverse = _solve_barycentric(verts)
        object.__setattr__(self, "_det", det)
        object.__setattr__(self, "_inverse", inverse)

    @property
    def ambient_dim(self) -> int:
        return len(self.vertices[0])

    @property
    def normalized_volume(self) -> int:
        return abs(self._det)

    def barycentric(self, point: Sequence[Fraction]) -> list[Fraction]:
        rhs = [Fraction(x) for x in point] + [Fraction(1)]
        return [sum((a * b for a, b in zip(row, rhs)), Fraction(0)) for row in self._inverse]

    def inequalities(self) -> list[tuple[tuple[int, ...], int]]:
        """Facet inequalities ``a.x <= c`` with coprime integer entries."""
        sign = 1 if self._det > 0 else -1
        out = []
        for row in self._inverse:
            adj = [int(x * self._det) * sign for x in row]
            normal = [-a for a in adj[:-1]]
            rhs = adj[-1]
            g = math.gcd(*normal, rhs)
            if g > 1:
                normal = [a // g for a in normal]
                rhs //= g
            out.append((tuple(normal), rhs))
        return out

    def bbox(self) -> list[tuple[int, int]]:
        return [(min(col), max(col)) for col in zip(*self.vertices)]


@dataclass(frozen=True)
class Box:
    intervals: tuple[tuple[int, int], ...]
    allow_degenerate: bool = False

    def __post_init__(self):
        ivs = tuple((int(lo), int(hi)) for lo, hi in self.intervals)
        object.__setattr__(self, "intervals", ivs)
        if not ivs:
            raise PolytopeError("box needs at least one interval")
        for i, (lo, hi) in enumerate(ivs):
            if lo > hi:
                raise PolytopeError(f"empty interval {i}: [{lo}, {hi}]")
            if lo == hi and not self.allow_degenerate:
                raise PolytopeError(f"degenerate interval {i}: [{lo}, {hi}] (set allow_degenerate)")

    @property
    def ambient_dim(self) -> int:
        return len(self.intervals)

    def inequalities(self) -> list[tuple[tuple[int, ...], int]]:
        d = len(self.intervals)
        out = []
        for i, (lo, hi) in enumerate(self.intervals):
            e = [0] * d
            e[i] = 1
            out.append((tuple(e), hi))
            e = [0] * d
            e[i] = -1
            out.append((tuple(e), -lo))
        return out

    def bbox(self) -> list[tuple[int, int]]:
        return list(self.intervals)


@dataclass(frozen=True)
class Product:
    factors: tuple["LatticePolytope", ...]

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        if not self.factors:
            raise PolytopeError("product needs at least one factor")
        if any(isinstance(f, Product) for f in self.factors):
            raise PolytopeError("nested products must be flattened; use product()")

    @property
    def ambient_dim(self) -> int:
        return sum(f.ambient_dim for f in self.factors)

    def inequalities(self) -> list[tuple[tuple[int, ...], int]]:
        total = self.ambient_dim
        out = []
        offset = 0
        for f in self.factors:
            k = f.ambient_dim
            for normal, rhs in f.inequalities():
                row = [0] * total
                row[offset:offset + k] = normal
                out.append((tuple(row), rhs))
            offset += k
        return out

    def bbox(self) -> list[tuple[int, int]]:
        return [iv for f in self.factors for iv in f.bbox()]


@dataclass(frozen=True)
class HRep:
    """``{x : normal . x <= rhs for every row}``, searched inside ``box``.

    The box must contain the polytope; counts are cross-checked against
    polynomiality, which catches boxes that are too small only partially.
    """

    dim: int
    rows: tuple[tuple[tuple[int, ...], int], ...]
    box: tuple[tuple[int, int], ...]

    def __post_init__(self):
        rows = tuple((tuple(int(a) for a in normal), int(rhs)) for normal, rhs in self.rows)
        box = tuple((int(lo), int(hi)) for lo, hi in self.box)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "box", box)
        if self.dim < 1:
            raise PolytopeError("hrep dimension must be positive")
        if len(box) != self.dim:
            raise PolytopeError(f"bbox has {len(box)} intervals, expected {self.dim}")
        for lo, hi in box:
            if lo > hi:
                raise PolytopeError(f"empty bbox interval [{lo}, {hi}]")
        for normal, _ in rows:
            if len(normal) != self.dim:
                raise PolytopeError(f"normal {normal} has wrong length for dim {self.dim}")

    @property
    def ambient_dim(self) -> int:
        return self.dim

    def inequalities(self) -> list[tuple[tuple[int, ...], int]]:
        # the bbox rows keep the kernel's search region explicit
        return list(self.rows) + Box(self.box, allow_degenerate=True).inequalities()

    def bbox(self) -> list[tuple[int, int]]:
        return list(self.box)


LatticePolytope = Union[Simplex, Box, Product, HRep]


def dimension(P: LatticePolytope) -> int:
    if isinstance(P, Simplex):
        return len(P.vertices) - 1
    if isinstance(P, Box):
        return sum(1 for lo, hi in P.intervals if lo < hi)
    if isinstance(P, Product):
        return sum(dimension(f) for f in P.factors)
    if isinstance(P, HRep):
        return P.dim
    raise TypeError(f"not a polytope: {P!r}")


def contains(P: LatticePolytope, point: Sequence[Union[int, Fraction]]) -> bool:
    """Closed-set membership of a rational point."""
    if len(point) != P.ambient_dim:
        raise ValueError(f"point has length {len(point)}, polytope lives in dimension {P.ambient_dim}")
    if isinstance(P, Simplex):
        return all(lam >= 0 for lam in P.barycentric(point))
    if isinstance(P, Box):
        return all(lo <= x <= hi for x, (lo, hi) in zip(point, P.intervals))
    if isinstance(P, Product):
        offset = 0
        for f in P.factors:
            k = f.ambient_dim
            if not contains(f, point[offset:offset + k]):
                return False
            offset += k
        return True
    if isinstance(P, HRep):
        return all(sum(a * x for a, x in zip(normal, point)) <= rhs for normal, rhs in P.rows)
    raise TypeError(f"not a polytope: {P!r}")


def product(P: LatticePolytope, Q: LatticePolytope) -> Product:
    """Cartesian product; nested products are flattened."""
    left = P.factors if isinstance(P, Product) else (P,)
    right = Q.factors if isinstance(Q, Product) else (Q,)
    return Product(left + right)


def prism(P: LatticePolytope, k: int) -> Product:
    """``P x [0, k]``, whose Ehrhart polynomial is ``(k*n + 1) * i(P, n)``."""
    if not isinstance(k, int) or k < 1:
        raise ValueError(f"prism height must be a positive integer, got {k!r}")
    return product(P, Box(((0, k),)))


# -- PolytopeSpec documents --------------------------------------------------

def spec_to_dict(P: LatticePolytope) -> dict[str, Any]:
    if isinstance(P, Simplex):
        return {"kind": "simplex", "vertices": [list(v) for v in P.vertices]}
    if isinstance(P, Box):
        d: dict[str, Any] = {"kind": "box", "intervals": [list(iv) for iv in P.intervals]}
        if P.allow_degenerate:
            d["allow_degenerate"] = True
        return d
    if isinstance(P, Product):
        return {"kind": "product", "factors": [spec_to_dict(f) for f in P.factors]}
    if isinstance(P, HRep):
        return {
            "kind": "hrep",
            "dim": P.dim,
            "inequalities": [{"normal": list(nv), "rhs": rhs} for nv, rhs in P.rows],
            "bbox": [list(iv) for iv in P.box],
        }
    raise TypeError(f"not a polytope: {P!r}")


def serialize_spec(P: LatticePolytope) -> str:
    return json.dumps(spec_to_dict(P), separators=(", ", ": "))


def _int(value: Any, path: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise SpecError(f"expected an integer, got {value!r}", path)
    return value


def _int_list(value: Any, path: str) -> list[int]:
    if not isinstance(value, list):
        raise SpecError(f"expected a list of integers, got {value!r}", path)
    return [_int(v, f"{path}[{i}]") for i, v in enumerate(value)]


def _intervals(value: Any, path: str) -> list[tuple[int, int]]:
    if not isinstance(value, list) or not value:
        raise SpecError("expected a non-empty list of [lo, hi] pairs", path)
    out = []
    for i, iv in enumerate(value):
        pair = _int_list(iv, f"{path}[{i}]")
        if len(pair) != 2:
            raise SpecError("interval must be [lo, hi]", f"{path}[{i}]")
        if pair[0] > pair[1]:
            raise SpecError(f"empty interval [{pair[0]}, {pair[1]}]", f"{path}[{i}]")
        out.append((pair[0], pair[1]))
    return out


def _require(doc: dict, key: str, path: str) -> Any:
    if key not in doc:
        raise SpecError(f"missing key {key!r}", path)
    return doc[key]


def spec_from_dict(doc: Any, path: str = "$") -> LatticePolytope:
    if not isinstance(doc, dict):
        raise SpecError("expected an object", path)
    kind = _require(doc, "kind", path)
    try:
        if kind == "simplex":
            raw = _require(doc, "vertices", path)
            if not isinstance(raw, list) or not raw:
                raise SpecError("expected a non-empty list of vertices", f"{path}.vertices")
            verts = [_int_list(v, f"{path}.vertices[{i}]") for i, v in enumerate(raw)]
            return Simplex(tuple(tuple(v) for v in verts))
        if kind == "box":
            ivs = _intervals(_require(doc, "intervals", path), f"{path}.intervals")
            flag = doc.get("allow_degenerate", False)
            if not isinstance(flag, bool):
                raise SpecError("allow_degenerate must be a boolean", f"{path}.allow_degenerate")
            return Box(tuple(ivs), allow_degenerate=flag)
        if kind == "product":
            raw = _require(doc, "factors", path)
            if not isinstance(raw, list) or not raw:
                raise SpecError("expected a non-empty list of factors", f"{path}.factors")
            factors = [spec_from_dict(f, f"{path}.factors[{i}]") for i, f in enumerate(raw)]
            result = factors[0]
            for f in factors[1:]:
                result = product(result, f)
            return result if isinstance(result, Product) else Product((result,))
        if kind == "hrep":
            dim = _int(_require(doc, "dim", path), f"{path}.dim")
            if "bbox" not in doc:
                raise SpecError("hrep requires an explicit bbox", path)
            box = _intervals(doc["bbox"], f"{path}.bbox")
            raw = _require(doc, "inequalities", path)
            if not isinstance(raw, list):
                raise SpecError("expected a list", f"{path}.inequalities")
            rows = []
            for i, ineq in enumerate(raw):
                here = f"{path}.inequalities[{i}]"
                if not isinstance(ineq, dict):
                    raise SpecError("expected {normal, rhs}", here)
                normal = _int_list(_require(ineq, "normal", here), f"{here}.normal")
                rhs = _int(_require(ineq, "rhs", here), f"{here}.rhs")
                rows.append((tuple(normal), rhs))
            return HRep(dim, tuple(rows), tuple(box))
    except PolytopeError as exc:
        raise SpecError(str(exc), path) from exc
    raise SpecError(f"unknown kind {kind!r}", f"{path}.kind")


def parse_spec(text: str) -> LatticePolytope:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(f"malformed JSON: {exc.msg} (line {exc.lineno}, column {exc.colno})") from exc
    return spec_from_dict(doc)
