import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from liecrown.exactlinalg import (
    DimensionMismatchError,
    EnumerationBudgetError,
    Subspace,
    count_subspaces,
    enumerate_subspaces,
    gaussian_binomial,
    inverse,
    nullspace,
    rref,
    subspace_ops,
)

from oracles import all_subspaces, naive_rref, span_set

primes = st.sampled_from([2, 3, 5, 7])


@st.composite
def matrices(draw, max_rows=5, max_cols=5):
    p = draw(primes)
    r = draw(st.integers(0, max_rows))
    c = draw(st.integers(1, max_cols))
    m = draw(st.lists(st.lists(st.integers(0, p - 1), min_size=c, max_size=c), min_size=r, max_size=r))
    return np.array(m, dtype=np.int64).reshape(r, c), p


def test_rref_identity():
    m, r, piv = rref(np.eye(3, dtype=np.int64), 5)
    assert r == 3 and np.array_equal(m, np.eye(3)) and list(piv) == [0, 1, 2]


def test_rref_zero():
    m, r, _ = rref(np.zeros((2, 4), dtype=np.int64), 2)
    assert r == 0 and m.shape[0] == 0


def test_rref_small_example():
    m, r, _ = rref(np.array([[2, 4], [1, 2]]), 5)
    assert r == 1 and m.tolist() == [[1, 2]]


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_rref_matches_naive_and_is_idempotent(mp):
    m, p = mp
    got, r, piv = rref(m, p)
    want, wpiv = naive_rref(m.tolist(), p)
    assert got.tolist() == want and list(piv) == wpiv and r == len(want)
    again, _, _ = rref(got, p)
    assert np.array_equal(again, got)


@settings(max_examples=100, deadline=None)
@given(matrices(), st.data())
def test_nullspace_is_kernel(mp, data):
    m, p = mp
    ns = nullspace(m, p)
    if m.shape[0]:
        assert not np.any(m @ ns.T % p) if ns.size else True
    assert ns.shape[0] == m.shape[1] - rref(m, p)[1]


def test_inverse():
    a = np.array([[1, 2], [3, 4]])
    inv = inverse(a, 5)
    assert np.array_equal(a @ inv % 5, np.eye(2))
    assert inverse(np.array([[1, 2], [2, 4]]), 5) is None


def test_subspace_ops_examples():
    u = Subspace.span(3, 2, [[1, 0]])
    v = Subspace.span(3, 2, [[1, 1]])
    ops = subspace_ops(u, v)
    assert ops["sum"].dim == 2 and ops["intersection"].dim == 0 and not ops["equal"]
    assert subspace_ops(u, u)["sum"] == u and subspace_ops(u, u)["intersection"] == u
    a = Subspace.span(2, 4, [[1, 0, 0, 0], [0, 1, 0, 0]])
    b = Subspace.span(2, 4, [[0, 1, 0, 0], [0, 0, 1, 0]])
    inter = a & b
    brute = span_set(a.basis, 4, 2) & span_set(b.basis, 4, 2)
    assert span_set(inter.basis, 4, 2) == brute
    assert inter == Subspace.span(2, 4, [[0, 1, 0, 0]])


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatchError):
        Subspace.span(2, 3, [[1, 0, 0]]) + Subspace.span(2, 2, [[1, 0]])


@st.composite
def subspace_pairs(draw):
    p = draw(st.sampled_from([2, 3, 5]))
    n = draw(st.integers(1, 5))
    vec = st.lists(st.integers(0, p - 1), min_size=n, max_size=n)
    a = draw(st.lists(vec, max_size=4))
    b = draw(st.lists(vec, max_size=4))
    return p, n, Subspace.span(p, n, a), Subspace.span(p, n, b)


@settings(max_examples=150, deadline=None)
@given(subspace_pairs())
def test_grassmann_and_canonical_form(pair):
    p, n, u, v = pair
    assert (u + v).dim + (u & v).dim == u.dim + v.dim
    assert u & v <= u and u <= u + v
    basis = u.basis
    for row, piv in zip(basis, u.pivots):
        assert row[piv] == 1 and np.count_nonzero(basis[:, piv]) == 1
    assert Subspace.span(p, n, basis[::-1]) == u


@settings(max_examples=100, deadline=None)
@given(subspace_pairs(), st.data())
def test_contains_agrees_with_brute_membership(pair, data):
    p, n, u, _ = pair
    vec = data.draw(st.lists(st.integers(0, p - 1), min_size=n, max_size=n))
    assert u.contains(vec) == (tuple(vec) in span_set(u.basis, n, p))


def test_enumeration_examples():
    assert len(list(enumerate_subspaces(2, 3, dims=1))) == 4
    assert len(list(enumerate_subspaces(4, 2))) == 67
    with pytest.raises(EnumerationBudgetError):
        enumerate_subspaces(6, 5, dims=3)


@pytest.mark.parametrize("n,p", [(n, p) for p in (2, 3) for n in range(1, 6) if p**n <= 81])
def test_enumeration_counts_match_closed_form(n, p):
    subs = list(enumerate_subspaces(n, p))
    assert len(subs) == count_subspaces(n, p) == sum(gaussian_binomial(n, k, p) for k in range(n + 1))
    assert len({s.key for s in subs}) == len(subs)
    if p**n <= 32:
        assert len(subs) == len(all_subspaces(n, p))


def test_enumeration_order_is_lexicographic_within_dimension():
    subs = list(enumerate_subspaces(3, 2, dims=2))
    flat = [tuple(s.basis.ravel()) for s in subs]
    assert flat == sorted(flat)
