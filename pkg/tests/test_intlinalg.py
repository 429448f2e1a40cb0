from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wiener_dirichlet import intlinalg
from wiener_dirichlet.multipoly import MultiPoly, canon
from wiener_dirichlet.primes import exponent_vector, factorize, from_exponent_vector, nth_prime, prime_slot

small = st.integers(-4, 4)


def matrices(n_rows, n_cols):
    return st.lists(st.lists(small, min_size=n_cols, max_size=n_cols), min_size=n_rows, max_size=n_rows)


def test_primes():
    assert [nth_prime(j) for j in range(1, 8)] == [2, 3, 5, 7, 11, 13, 17]
    assert prime_slot(97) == 25
    assert exponent_vector(12) == (2, 1)
    assert exponent_vector(25) == (0, 0, 2)
    assert exponent_vector(1) == ()
    assert factorize(360) == {2: 3, 3: 2, 5: 1}


@given(st.integers(1, 10**6))
@settings(max_examples=300, deadline=None)
def test_exponent_vector_round_trip(n):
    assert from_exponent_vector(exponent_vector(n)) == n


@given(st.integers(1, 4).flatmap(lambda n: matrices(n, n)))
@settings(max_examples=200, deadline=None)
def test_det_matches_float(m):
    assert abs(intlinalg.det(m) - np.linalg.det(np.array(m, dtype=float))) < 1e-6


@given(st.tuples(st.integers(1, 4), st.integers(1, 5)).flatmap(lambda s: matrices(*s)))
@settings(max_examples=200, deadline=None)
def test_kernel_and_rank(m):
    kernel = intlinalg.integer_kernel(m)
    assert intlinalg.rank(m) + len(kernel) == len(m[0])
    for v in kernel:
        assert all(isinstance(x, int) for x in v)
        assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in m)


@given(st.integers(1, 4).flatmap(lambda n: st.tuples(matrices(n, n), st.lists(small, min_size=n, max_size=n))))
@settings(max_examples=200, deadline=None)
def test_solve(pair):
    m, b = pair
    if intlinalg.det(m) == 0:
        return
    x = intlinalg.solve(m, b)
    assert all(sum(Fraction(a) * xi for a, xi in zip(row, x)) == bi for row, bi in zip(m, b))


def _integral_coords(H, col):
    """Exact coordinates of ``col`` in the columns of ``H`` (full column rank), or None if not integral."""
    r = len(H[0])
    _, piv = intlinalg.rref(intlinalg.transpose(H))
    rows = [H[i] for i in piv[:r]]
    x = intlinalg.solve(rows, [col[i] for i in piv[:r]])
    if any(sum(a * xi for a, xi in zip(row, x)) != c for row, c in zip(H, col)):
        return None
    return x if all(xi.denominator == 1 for xi in x) else None


def _minor_gcd(m, r):
    from itertools import combinations
    from math import gcd
    g = 0
    cols = range(len(m[0]))
    for rs in combinations(range(len(m)), r):
        for cs in combinations(cols, r):
            g = gcd(g, intlinalg.det([[m[i][j] for j in cs] for i in rs]))
    return g


@given(st.tuples(st.integers(1, 4), st.integers(1, 4)).flatmap(lambda s: matrices(*s)))
@settings(max_examples=150, deadline=None)
def test_column_lattice_basis_spans_same_lattice(m):
    H = intlinalg.column_lattice_basis(m)
    r = intlinalg.rank(m)
    assert all(len(row) == r for row in H)
    if r == 0:
        return
    assert intlinalg.rank(H) == r
    for j in range(len(m[0])):
        assert _integral_coords(H, [row[j] for row in m]) is not None
    # same covolume: gcd of maximal minors agree
    assert _minor_gcd(m, r) == _minor_gcd(H, r)


def test_multipoly_basics():
    z1, z2 = MultiPoly.variable(1), MultiPoly.variable(2)
    p = (z1 + z2) ** 2
    assert p == MultiPoly({(2,): 1, (1, 1): 2, (0, 2): 1})
    assert p.norm() == 4
    assert canon((1, 0, 0)) == (1,)
    with pytest.raises(ValueError):
        canon((1, -1))
    assert p.mul(z1, degree_cutoff=2) == MultiPoly()
