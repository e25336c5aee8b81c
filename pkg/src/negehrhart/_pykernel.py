"""Pure-Python box scan; reference twin of ``_ckernel.count_region``."""

from __future__ import annotations

from typing import Sequence


def count_region(
    A: Sequence[Sequence[int]],
    c: Sequence[int],
    lo: Sequence[int],
    hi: Sequence[int],
) -> int:
    """Count integer ``x`` with ``lo <= x <= hi`` and ``A x <= c`` row-wise.

    Odometer scan over the box; row sums are updated incrementally, so each
    point costs one comparison per row.
    """
    d = len(lo)
    if any(l > h for l, h in zip(lo, hi)):
        return 0
    rows = range(len(c))
    x = list(lo)
    s = [sum(a * v for a, v in zip(row, x)) for row in A]
    last = d - 1
    col_last = [row[last] for row in A]
    span_last = hi[last] - lo[last] + 1
    total = 0
    while True:
        for _ in range(span_last):
            if all(s[r] <= c[r] for r in rows):
                total += 1
            for r in rows:
                s[r] += col_last[r]
        for r in rows:
            s[r] -= col_last[r] * span_last
        j = last - 1
        while j >= 0:
            if x[j] < hi[j]:
                x[j] += 1
                for r in rows:
                    s[r] += A[r][j]
                break
            for r in rows:
                s[r] -= A[r][j] * (x[j] - lo[j])
            x[j] = lo[j]
            j -= 1
        if j < 0:
            return total
