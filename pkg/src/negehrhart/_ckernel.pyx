# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled box scan; callers guarantee every partial sum fits in int64."""

from libc.stdlib cimport malloc, free


def count_region(A, c, lo, hi):
    cdef Py_ssize_t d = len(lo)
    cdef Py_ssize_t k = len(c)
    cdef Py_ssize_t r, j, t
    cdef long long total = 0
    cdef long long span_last
    cdef bint ok
    if d == 0:
        return 0
    for j in range(d):
        if lo[j] > hi[j]:
            return 0
    cdef long long* a = <long long*> malloc(k * d * sizeof(long long))
    cdef long long* cv = <long long*> malloc(k * sizeof(long long))
    cdef long long* s = <long long*> malloc(k * sizeof(long long))
    cdef long long* x = <long long*> malloc(d * sizeof(long long))
    cdef long long* l = <long long*> malloc(d * sizeof(long long))
    cdef long long* h = <long long*> malloc(d * sizeof(long long))
    if not (a and cv and s and x and l and h):
        free(a); free(cv); free(s); free(x); free(l); free(h)
        raise MemoryError()
    try:
        for r in range(k):
            cv[r] = c[r]
            row = A[r]
            for j in range(d):
                a[r * d + j] = row[j]
        for j in range(d):
            l[j] = lo[j]
            h[j] = hi[j]
            x[j] = l[j]
        with nogil:
            for r in range(k):
                s[r] = 0
                for j in range(d):
                    s[r] += a[r * d + j] * x[j]
            span_last = h[d - 1] - l[d - 1] + 1
            while True:
                for t in range(span_last):
                    ok = True
                    for r in range(k):
                        if s[r] > cv[r]:
                            ok = False
                            break
                    if ok:
                        total += 1
                    for r in range(k):
                        s[r] += a[r * d + d - 1]
                for r in range(k):
                    s[r] -= a[r * d + d - 1] * span_last
                j = d - 2
                while j >= 0:
                    if x[j] < h[j]:
                        x[j] += 1
                        for r in range(k):
                            s[r] += a[r * d + j]
                        break
                    for r in range(k):
                        s[r] -= a[r * d + j] * (x[j] - l[j])
                    x[j] = l[j]
                    j -= 1
                if j < 0:
                    break
    finally:
        free(a); free(cv); free(s); free(x); free(l); free(h)
    return total
