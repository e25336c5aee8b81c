import math
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from conftest import CORPUS, UNIT_SQUARE
from negehrhart.constructions import paper_family, reeve
from negehrhart.counting import (
    BudgetExceeded,
    DeltaVectorError,
    EhrhartConsistencyError,
    candidate_points,
    count_by_membership,
    count_lattice_points,
    delta_vector,
    ehrhart_polynomial,
)
from negehrhart.exact import Polynomial
from negehrhart.polytope import Box, HRep, Simplex, dimension, prism, product


def test_count_examples(kernel):
    assert count_lattice_points(UNIT_SQUARE, 2, kernel=kernel) == 9
    assert count_lattice_points(reeve(13), 1, kernel=kernel) == 4
    assert count_lattice_points(paper_family(4, 19), 1, kernel=kernel) == 8


def test_count_reeve13_matches_sympy_enumeration(kernel):
    # frozen from an independent sympy barycentric enumeration
    assert [count_lattice_points(reeve(13), n, kernel=kernel) for n in range(6)] == [1, 4, 22, 68, 155, 296]
    assert [count_lattice_points(reeve(1), n, kernel=kernel) for n in range(5)] == [1, 4, 10, 20, 35]


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_count_matches_membership_oracle(name, kernel):
    P = CORPUS[name]
    for n in range(4):
        assert count_lattice_points(P, n, kernel=kernel) == count_by_membership(P, n)


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_zero_dilate_and_monotone(name):
    P = CORPUS[name]
    counts = [count_lattice_points(P, n) for n in range(6)]
    assert counts[0] == 1
    assert all(a <= b for a, b in zip(counts, counts[1:]))


small_factor = st.one_of(
    st.builds(lambda a, b: Box(((a, a + b),)), st.integers(-2, 2), st.integers(1, 3)),
    st.sampled_from([CORPUS["triangle"], reeve(1), reeve(3), Simplex(((0, 0), (2, 0), (1, 3)))]),
)


@settings(max_examples=40, deadline=None)
@given(st.lists(small_factor, min_size=2, max_size=3), st.integers(1, 3))
def test_factorized_equals_flat(factors, n):
    P = factors[0]
    for f in factors[1:]:
        P = product(P, f)
    if candidate_points(P, n, factorize=False) > 10**5:
        return
    flat = count_lattice_points(P, n, factorize=False)
    assert count_lattice_points(P, n) == flat
    assert flat == math.prod(count_lattice_points(f, n) for f in P.factors)


def test_budget():
    P = reeve(13)
    assert candidate_points(P, 3) == 4 * 4 * 40
    with pytest.raises(BudgetExceeded):
        count_lattice_points(P, 3, max_points=100)
    assert count_lattice_points(P, 3, max_points=640) == 68
    # products are budgeted factor by factor unless scanned flat
    Q = paper_family(5, 37)
    assert candidate_points(Q, 2) == 3 * 3 * 75 + 5 + 5
    assert candidate_points(Q, 2, factorize=False) == 3 * 3 * 75 * 25


def test_ehrhart_examples():
    assert ehrhart_polynomial(UNIT_SQUARE) == Polynomial([1, 2, 1])
    assert ehrhart_polynomial(reeve(13)) == Polynomial([1, F(-1, 6), 1, F(13, 6)])
    assert ehrhart_polynomial(reeve(1)) == Polynomial([1, F(11, 6), 1, F(1, 6)])


def test_unimodular_simplices_are_binomials():
    for d in range(1, 5):
        verts = [tuple(0 for _ in range(d))] + [tuple(int(i == j) for j in range(d)) for i in range(d)]
        p = ehrhart_polynomial(Simplex(tuple(verts)))
        for n in range(8):
            assert p(n) == math.comb(n + d, d)


def test_non_integral_hrep_is_rejected():
    # 0 <= 2x <= 1: vertex 1/2, counts floor(n/2)+1 are not polynomial
    P = HRep(1, (((2,), 1), ((-1,), 0)), ((0, 1),))
    with pytest.raises(EhrhartConsistencyError, match="not Ehrhart-consistent"):
        ehrhart_polynomial(P)


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_top_coefficients_positive_and_delta_invariants(name):
    P = CORPUS[name]
    d = dimension(P)
    p = ehrhart_polynomial(P)
    assert p.degree == d and p(0) == 1
    assert p.leading > 0 and p.coeff(d - 1) > 0
    delta = delta_vector(p, d)
    assert delta[0] == 1
    assert all(x >= 0 for x in delta)
    assert sum(delta) == math.factorial(d) * p.leading


@pytest.mark.parametrize("name", sorted(CORPUS))
@pytest.mark.parametrize("k", [1, 2, 3])
def test_prism_multiplies_ehrhart(name, k):
    P = CORPUS[name]
    assert ehrhart_polynomial(prism(P, k)) == Polynomial([1, k]) * ehrhart_polynomial(P)


def test_delta_examples():
    assert tuple(delta_vector(Polynomial([1, 1]), 1)) == (1, 0)
    q13 = Polynomial([1, F(-1, 6), 1, F(13, 6)])
    assert tuple(delta_vector(q13, 3)) == (1, 0, 12, 0)
    assert tuple(delta_vector(Polynomial([1, 2, 1]), 2)) == (1, 1, 0)


def test_delta_rejects_non_lattice():
    with pytest.raises(DeltaVectorError):
        delta_vector(Polynomial([1, F(1, 2), F(1, 3)]), 2)
    with pytest.raises(DeltaVectorError):
        delta_vector(Polynomial([2, 1]), 1)


def test_delta_matches_series_expansion():
    # independent route: multiply the first terms of sum p(n) t^n by (1-t)^(d+1)
    p = ehrhart_polynomial(reeve(7))
    d = 3
    series = [p(n) for n in range(d + 1)]
    factor = [(-1) ** j * math.comb(d + 1, j) for j in range(d + 2)]
    numer = [sum(series[i - j] * factor[j] for j in range(i + 1)) for i in range(d + 1)]
    assert list(delta_vector(p, d)) == numer == [1, 0, 6, 0]
