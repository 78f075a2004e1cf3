import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from liecrown.catalog import builtin, corpus, random_solvable
from liecrown.chief import chief_factors, is_abelian_factor
from liecrown.liecore import (
    AntisymmetryError,
    JacobiError,
    LieAlgebra,
    NotAnIdealError,
    NotASectionError,
    bracket,
    centralizer_of_section,
    closure,
    idealizer_of_section,
    normalizer,
    core,
    quotient,
    structure_predicates,
)

from oracles import Alg, span_set



def e(n, i):
    return np.eye(n, dtype=np.int64)[i]


def test_bracket_examples():
    assert not bracket(builtin("ab2", 3), e(2, 0), e(2, 1)).any()
    assert bracket(builtin("r2", 3), e(2, 0), e(2, 1)).tolist() == [0, 1]
    assert bracket(builtin("h3", 2), e(3, 0), e(3, 1)).tolist() == [0, 0, 1]


def test_constructor_guards():
    with pytest.raises(AntisymmetryError):
        LieAlgebra.from_brackets(3, 2, {(0, 0): {1: 1}})
    # [e0,e1]=e1, [e0,e2]=e0 breaks Jacobi
    with pytest.raises(JacobiError):
        LieAlgebra.from_brackets(3, 3, {(0, 1): {1: 1}, (1, 2): {0: 1}})


def test_closure_examples():
    h3 = builtin("h3", 2)
    assert closure(h3, [e(3, 0), e(3, 1)]) == h3.whole()
    r2 = builtin("r2", 3)
    assert closure(r2, [e(2, 0)], mode="ideal") == r2.whole()
    assert closure(r2, np.zeros((0, 2)), mode="ideal").dim == 0
    assert closure(h3, np.zeros((0, 3))).dim == 0


def test_centralizer_examples():
    h3 = builtin("h3", 2)
    z = h3.span([e(3, 2)])
    assert centralizer_of_section(h3, z, h3.zero()) == h3.whole()
    r2 = builtin("r2", 3)
    a = r2.span([e(2, 1)])
    assert centralizer_of_section(r2, a, r2.zero()) == a
    assert idealizer_of_section(r2, a, r2.zero()) == a
    L = builtin("sl2sl2", 5)
    A = L.span(np.eye(6, dtype=np.int64)[:3])
    B = L.span(np.eye(6, dtype=np.int64)[3:])
    assert centralizer_of_section(L, A, L.zero()) == B
    with pytest.raises(NotASectionError):
        centralizer_of_section(r2, r2.span([e(2, 0)]), r2.zero())


def test_quotient_examples():
    h3 = builtin("h3", 2)
    q = quotient(h3, h3.span([e(3, 2)]))
    assert q.quotient.dim == 2 and q.quotient.is_abelian()
    r2 = builtin("r2", 3)
    q0 = quotient(r2, r2.zero())
    assert np.array_equal(q0.quotient.sc, r2.sc)
    assert quotient(r2, r2.whole()).quotient.dim == 0
    with pytest.raises(NotAnIdealError):
        quotient(r2, r2.span([e(2, 0)]))


def test_structure_predicates_examples():
    ab = structure_predicates(builtin("ab3", 2))
    assert ab["center"].dim == 3 and ab["is_solvable"]
    r2 = structure_predicates(builtin("r2", 3))
    assert [s.dim for s in r2["derived_series"]] == [2, 1, 0] and r2["is_solvable"]
    sl2 = structure_predicates(builtin("sl2", 5))
    assert [s.dim for s in sl2["derived_series"]] == [3] and not sl2["is_solvable"]


ALGS = [(name, L) for name, _, L in corpus(fields=(2, 3, 5), max_dim=6)]


@pytest.mark.parametrize("name,L", ALGS, ids=[a for a, _ in ALGS])
def test_quotient_projection_is_homomorphism(name, L):
    for a, _ in chief_factors(L):
        q = quotient(L, a)
        P = q.projection
        for i in range(L.dim):
            for j in range(L.dim):
                lhs = q.project(L.bracket(e(L.dim, i), e(L.dim, j)))
                rhs = q.quotient.bracket(P[:, i], P[:, j])
                assert np.array_equal(lhs, rhs)
        assert np.array_equal(P @ q.section % L.p, np.eye(q.quotient.dim))
        assert np.all(P @ a.basis.T % L.p == 0)


@pytest.mark.parametrize("name,L", ALGS, ids=[a for a, _ in ALGS])
def test_abelian_factor_iff_idealizer_equals_centralizer(name, L):
    for a, b in chief_factors(L):
        c = centralizer_of_section(L, a, b)
        assert b <= c and L.is_ideal(c)
        assert is_abelian_factor(L, a, b) == (idealizer_of_section(L, a, b) == c)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([2, 3]), st.data())
def test_closure_properties_on_random_algebras(seed, p, data):
    L = random_solvable(4, p, seed)
    gens = data.draw(st.lists(st.lists(st.integers(0, p - 1), min_size=L.dim, max_size=L.dim), max_size=2))
    gens = np.array(gens, dtype=np.int64).reshape(-1, L.dim)
    S = closure(L, gens)
    I = closure(L, gens, mode="ideal")
    assert L.is_subalgebra(S) and L.is_ideal(I) and S <= I
    oracle = Alg(L)
    assert oracle.is_subalgebra(span_set(S.basis, L.dim, p))
    assert oracle.is_ideal(span_set(I.basis, L.dim, p))
    # minimality: no smaller ideal found by brute force contains the generators
    gen_set = span_set(gens, L.dim, p)
    smallest = min((i for i in oracle.ideals() if gen_set <= i), key=len)
    assert len(smallest) == p**I.dim


@pytest.mark.parametrize("name,L", [a for a in ALGS if a[1].dim <= 4], ids=[a for a, L in ALGS if L.dim <= 4])
def test_core_and_normalizer_against_brute_force(name, L):
    oracle = Alg(L)
    for s in oracle.subalgebras():
        rows = [list(v) for v in s]
        U = L.span(rows)
        want = max((i for i in oracle.ideals() if i <= s), key=len)
        assert p_size(core(L, U), L) == len(want)
        nl = normalizer(L, U)
        brute = [v for v in oracle.whole() if all(oracle.br(v, u) in s for u in s)]
        assert p_size(nl, L) == len(brute)


def p_size(s, L):
    return L.p**s.dim
