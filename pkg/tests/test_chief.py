import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from liecrown.catalog import builtin, corpus, random_solvable, sl2sl2_summands
from liecrown.chief import (
    PrimitiveKind,
    all_chief_series,
    chief_factors,
    check_centralizers_under_core_free,
    complements_of,
    factor_complements,
    frattini,
    is_abelian_factor,
    is_chief_factor,
    maximal_subalgebras_and_frattini,
    minimal_ideals,
    primitive_type,
    socle,
    socle_core_primitive,
)
from liecrown.liecore import centralizer, core, is_solvable, quotient

from oracles import Alg


def sset(S, L):
    """Subspace -> frozenset of its vectors, for comparison with the oracle."""
    from oracles import span_set

    return span_set(S.basis, L.dim, L.p)


def test_minimal_ideal_examples():
    h3 = builtin("h3", 2)
    assert minimal_ideals(h3) == [h3.span([[0, 0, 1]])]
    L = builtin("sl2sl2", 5)
    assert sorted(m.key for m in minimal_ideals(L)) == sorted(s.key for s in sl2sl2_summands(L))
    assert len(minimal_ideals(builtin("ab2", 3))) == 4


def test_series_count_examples():
    assert len(all_chief_series(builtin("r2", 3))) == 1
    assert len(all_chief_series(builtin("h3", 2))) == 3
    assert len(all_chief_series(builtin("sl2sl2", 5))) == 2


def test_maximal_and_frattini_examples():
    h3 = builtin("h3", 2)
    mf = maximal_subalgebras_and_frattini(h3)
    z = h3.span([[0, 0, 1]])
    assert mf.certified and len(mf.maximals) == 3 and all(m.dim == 2 and z <= m for m in mf.maximals)
    assert mf.frattini == z
    r2 = builtin("r2", 3)
    mf = maximal_subalgebras_and_frattini(r2)
    assert len(mf.maximals) == 4 and all(m.dim == 1 for m in mf.maximals) and mf.frattini.dim == 0
    for n in (1, 2, 3):
        assert frattini(builtin(f"ab{n}", 2)).dim == 0


def test_factor_complement_examples():
    h3 = builtin("h3", 2)
    fc = factor_complements(h3, h3.span([[0, 0, 1]]), h3.zero())
    assert fc.is_c.is_no and fc.is_m.is_no and fc.is_frattini.is_yes
    r2 = builtin("r2", 3)
    fc = factor_complements(r2, r2.span([[0, 1]]), r2.zero())
    assert fc.is_c.is_yes and fc.is_m.is_yes and r2.span([[1, 0]]) in fc.complements
    sl = builtin("sl2", 5)
    fc = factor_complements(sl, sl.whole(), sl.zero())
    assert fc.complements == [sl.zero()] and fc.is_c.is_yes and fc.is_m.is_no


def test_primitive_examples():
    r2 = builtin("r2", 3)
    pt = primitive_type(r2)
    assert pt.kind == PrimitiveKind.TYPE1 and all(pt.checks.values())
    assert core(r2, pt.witness).dim == 0
    sl = builtin("sl2", 5)
    pt = primitive_type(sl)
    assert pt.kind == PrimitiveKind.TYPE2 and all(pt.checks.values())
    maxes = maximal_subalgebras_and_frattini(sl).maximals
    assert pt.witness in maxes and core(sl, pt.witness).dim == 0
    # the Borel subalgebras are core-free maximal as well (the reported witness is a nonsplit torus)
    assert any(m.dim == 2 and core(sl, m).dim == 0 for m in maxes)
    L = builtin("sl2sl2", 5)
    pt = primitive_type(L)
    assert pt.kind == PrimitiveKind.TYPE3 and all(pt.checks.values())
    A, B = sl2sl2_summands(L)
    assert pt.witness + A == L.whole() and pt.witness + B == L.whole() and pt.witness.dim == 3
    assert primitive_type(builtin("h3", 2)).kind == PrimitiveKind.NOT_PRIMITIVE
    rep = socle_core_primitive(r2, r2.span([[1, 0]]))
    assert rep["socle"] == r2.span([[0, 1]]) and rep["core"].dim == 0


CORPUS = [(n, L) for n, _, L in corpus()]
SMALL = [(n, L) for n, L in CORPUS if L.p ** L.dim <= 81]


@pytest.mark.parametrize("name,L", SMALL, ids=[n for n, _ in SMALL])
def test_lattice_against_brute_force(name, L):
    o = Alg(L)
    assert {sset(m, L) for m in minimal_ideals(L)} == set(o.minimal_ideals())
    assert len(all_chief_series(L)) == o.chief_series_count()
    assert {(sset(a, L), sset(b, L)) for a, b in chief_factors(L)} == set(o.chief_factors())
    mf = maximal_subalgebras_and_frattini(L)
    assert {sset(m, L) for m in mf.maximals} == set(o.maximal_subalgebras())
    assert sset(mf.frattini, L) == o.frattini()


@pytest.mark.parametrize("name,L", SMALL, ids=[n for n, _ in SMALL])
def test_complements_and_frattini_status_against_brute_force(name, L):
    o = Alg(L)
    whole = o.whole()
    for a, b in chief_factors(L):
        A, Bs = sset(a, L), sset(b, L)
        fc = factor_complements(L, a, b)
        assert {sset(c, L) for c in fc.complements} == set(o.complements(A, Bs))
        supplemented = any(len(m) < len(whole) and o.ssum(m, A) == whole and Bs <= m for m in o.subalgebras())
        assert fc.supplemented.as_bool() == supplemented
        maxes = set(o.maximal_subalgebras())
        assert fc.is_m.as_bool() == any(c in maxes for c in o.complements(A, Bs))


@pytest.mark.parametrize("name,L", CORPUS, ids=[n for n, _ in CORPUS])
def test_complement_properties(name, L):
    for s in all_chief_series(L):
        for x, y in zip(s.chain, s.chain[1:]):
            assert is_chief_factor(L, y, x)
    for a, b in chief_factors(L):
        fc = factor_complements(L, a, b)
        for M in fc.complements:
            assert L.is_subalgebra(M) and M.dim + a.dim - b.dim == L.dim
        if is_abelian_factor(L, a, b):
            assert fc.is_m.value == fc.is_c.value
            assert fc.is_frattini.value == fc.is_m.negate().value


@pytest.mark.parametrize("name,L", CORPUS, ids=[n for n, _ in CORPUS])
def test_centralizers_in_primitive_algebras(name, L):
    pt = primitive_type(L)
    if pt.kind in (PrimitiveKind.NOT_PRIMITIVE, PrimitiveKind.UNKNOWN):
        return
    assert all(all(v) for v in check_centralizers_under_core_free(L, pt.witness).values())
    s = socle(L)
    if pt.kind == PrimitiveKind.TYPE2:
        assert centralizer(L, s).dim == 0


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([2, 3]))
def test_solvable_dichotomy_on_random_algebras(seed, p):
    L = random_solvable(4, p, seed)
    assert is_solvable(L)
    for a, b in chief_factors(L):
        fc = factor_complements(L, a, b)
        assert fc.is_frattini.decided and fc.is_c.decided
        assert fc.is_frattini.is_yes != fc.is_c.is_yes
        # Frattini means the factor sits inside the Frattini ideal of L/b
        qm = quotient(L, b)
        assert fc.is_frattini.is_yes == (qm.image(a) <= frattini(qm.quotient))


def test_complements_are_memoised_and_sorted():
    L = builtin("ab2", 3)
    a = L.whole()
    cs = complements_of(L, a, L.zero())
    assert cs is complements_of(L, a, L.zero()) and cs.complements == [L.zero()]


def test_zero_frattini_bound_is_certified_in_witness_mode():
    L = builtin("sl2sl2", 5)
    mf = maximal_subalgebras_and_frattini(L)
    assert mf.mode == "witness" and mf.frattini.dim == 0 and mf.certified
