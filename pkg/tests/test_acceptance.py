"""Acceptance criteria, one test each.

Every test prints a single ``PASS``/``FAIL`` line to the terminal (even under
output capture) before asserting, so a ``pytest -v`` log carries the summary.
Arithmetic is exact and tolerances are zero.
"""

import itertools
import time

import numpy as np
import pytest

from liecrown.catalog import builtin, corpus, random_solvable, sl2sl2_summands
from liecrown.chief import (
    PrimitiveKind,
    all_chief_series,
    all_ideals,
    chief_factors,
    complements_of,
    factor_complements,
    is_abelian_factor,
    is_maximal,
    maximal_subalgebras_and_frattini,
    primitive_type,
)
from liecrown.classify import cc_type_and_variation, configuration_report, label_series, series_counts, series_permutation
from liecrown.cohomology import check_prop2, check_theorem2, cocycle_space, is_cocycle, l_equivalent
from liecrown.crowns import crown_data, l_connected
from liecrown.liecore import LieAlgebra, is_solvable, quotient
from liecrown.lmodule import adjoint_module, chief_factor_module, i_and_c, l_isomorphism, make_module

from oracles import brute_cocycles


@pytest.fixture
def emit(capsys):
    def _emit(n, title, ok, detail=""):
        with capsys.disabled():
            print(f"\nACCEPTANCE {n:2d} {'PASS' if ok else 'FAIL'}  {title}" + (f": {detail}" if detail else ""))
        return ok

    return _emit


def solvable_corpus():
    return [(lab, L) for lab, _, L in corpus() if is_solvable(L)]


def distinct_factor_modules(L):
    seen, out = set(), []
    for a, b in chief_factors(L):
        m = chief_factor_module(L, a, b)
        if m.key not in seen:
            seen.add(m.key)
            out.append(((a, b), m))
    return out


# ---------------------------------------------------------------- 1


def test_criterion_01_m_and_frattini_counts(emit):
    t0 = time.perf_counter()
    problems, n_series = [], {}
    expected_series = {"h3(2)": 3, "r2(2)": 1, "r2(3)": 1, "sl2sl2(5)": 2}
    for label, _, L in corpus():
        series = all_chief_series(L)
        n_series[label] = len(series)
        counts = [series_counts(label_series(L, s)) for s in series]
        for key in ("m", "frattini"):
            vals = {c[key] for c in counts}
            if None in vals or len(vals) != 1:
                problems.append(f"{label} {key}-counts {sorted(map(str, vals))}")
        if label in expected_series and len(series) != expected_series[label]:
            problems.append(f"{label} has {len(series)} series")
    dt = time.perf_counter() - t0
    ok = not problems and dt < 60
    emit(1, "m-count and Frattini-count invariance", ok,
         f"{len(n_series)} algebras, {sum(n_series.values())} series, {dt:.1f}s" + (f"; {problems}" if problems else ""))
    assert ok, problems


# ---------------------------------------------------------------- 2


def test_criterion_02_variation_bound(emit):
    problems, rows = [], []
    for label, _, L in corpus():
        rep = cc_type_and_variation(L)
        rows.append(f"{label}: spread {rep.spread}, v {rep.v}")
        if not rep.complete or rep.spread is None or rep.spread > rep.v:
            problems.append(rows[-1])
        if is_solvable(L) and (rep.v != 0 or rep.spread != 0):
            problems.append(f"{label} solvable with v {rep.v}, spread {rep.spread}")
    ok = not problems
    emit(2, "c-count spread bounded by v", ok, f"{len(rows)} algebras" + (f"; {problems}" if problems else ""))
    assert ok, problems


# ---------------------------------------------------------------- 3


def _frattini_factor(L, a, b):
    """``a/b <= phi(L/b)``, from an exhaustive scan of maximal subalgebras of ``L/b``."""
    qm = quotient(L, b)
    mf = maximal_subalgebras_and_frattini(qm.quotient)
    assert mf.mode == "exhaustive"
    return a <= qm.preimage(mf.frattini)


def test_criterion_03_frattini_xor_complemented(emit):
    t0 = time.perf_counter()
    algebras = solvable_corpus()
    for k in range(200):
        # half the samples are nilpotent, half come from upper-triangular matrices
        p, diagonal, seed = (2, 3)[k % 2], bool(k // 2 % 2), k // 4
        algebras.append((f"random p={p} seed={seed} diagonal={diagonal}",
                         random_solvable(4, p, seed=seed, diagonal=diagonal)))
    bad, n_factors = [], 0
    for label, L in algebras:
        assert L.dim <= 4 and is_solvable(L)
        for a, b in chief_factors(L):
            n_factors += 1
            cs = complements_of(L, a, b)
            if not cs.exhaustive:
                bad.append(f"{label}: non-exhaustive search")
                continue
            if _frattini_factor(L, a, b) == bool(cs.complements):
                bad.append(f"{label}: {a.dim}/{b.dim}")
    dt = time.perf_counter() - t0
    ok = not bad and dt < 120
    emit(3, "solvable chief factors are Frattini xor complemented", ok,
         f"{len(algebras)} algebras, {n_factors} factors, {dt:.1f}s" + (f"; {bad[:5]}" if bad else ""))
    assert ok, bad


# ---------------------------------------------------------------- 4


def test_criterion_04_abelian_crowns(emit):
    bad, n = [], 0
    for label, _, L in corpus():
        for (a, b), m in distinct_factor_modules(L):
            if not is_abelian_factor(L, a, b):
                continue
            n += 1
            cr = crown_data(L, m)
            if not all(cr.complete.values()) or cr.E_core != cr.D:
                bad.append(f"{label} {a.dim}/{b.dim}")
    ok = not bad and n > 0
    emit(4, "E = D for abelian irreducible factor modules", ok, f"{n} modules" + (f"; {bad}" if bad else ""))
    assert ok, bad


# ---------------------------------------------------------------- 5


def _nonabelian_modules():
    out = []
    for p in (3, 5):
        L = builtin("sl2", p)
        out.append((f"sl2({p}) adjoint", L, adjoint_module(L)))
    L = builtin("sl2sl2", 5)
    for name, S in zip("AB", sl2sl2_summands(L)):
        out.append((f"sl2sl2(5) {name}", L, chief_factor_module(L, S, L.zero())))
    return out


def test_criterion_05_nonabelian_crowns(emit):
    bad = []
    for name, L, m in _nonabelian_modules():
        cr = crown_data(L, m)
        checks = {"complete": all(cr.complete.values())}
        checks["I = J + D"] = cr.J + cr.D == cr.I
        checks["J & D = E"] = (cr.J & cr.D) == cr.E_core
        inter, found = L.whole(), False
        for a, b in chief_factors(L):
            f = chief_factor_module(L, a, b)
            if l_equivalent(m, f).is_yes:
                found = True
                inter = inter & i_and_c(f)["C_L"]
        checks["D = common centralizer"] = found and inter == cr.D
        if cr.C < cr.I:
            iso = l_isomorphism(chief_factor_module(L, cr.I, cr.C, check=False), m)
            checks["D <= C iff I/C = A"] = iso.decided and (cr.D <= cr.C) == iso.is_yes
        checks["E via complements = via centralizers"] = cr.E_core == cr.E_core_via_centralizers
        bad += [f"{name}: {k}" for k, v in checks.items() if not v]
    ok = not bad
    emit(5, "nonabelian crown identities", ok, "4 modules" + (f"; {bad}" if bad else ""))
    assert ok, bad


# ---------------------------------------------------------------- 6


def test_criterion_06_connectedness_conditions_agree(emit):
    bad, decided, pairs = [], 0, 0
    for label, _, L in corpus():
        fs = chief_factors(L)
        for f, g in itertools.combinations_with_replacement(fs, 2):
            pairs += 1
            c = l_connected(L, f, g)
            if all(v.decided for v in c.verdicts()):
                decided += 1
                if not c.consistent:
                    bad.append(f"{label} {f[0].dim}/{f[1].dim} vs {g[0].dim}/{g[1].dim}")
    ok = not bad and decided == pairs
    emit(6, "four connectedness conditions agree", ok,
         f"{decided}/{pairs} pairs fully decided" + (f"; {bad}" if bad else ""))
    assert ok, bad


# ---------------------------------------------------------------- 7


def test_criterion_07_cocycle_complement_criterion(emit):
    bad, n = [], 0
    for label, _, L in corpus():
        for a, b in chief_factors(L):
            if is_abelian_factor(L, a, b):
                continue
            n += 1
            via_cocycle = check_prop2(L, a, b)["complemented"]
            direct = factor_complements(L, a, b).is_c
            if not (direct.mode == "exhaustive" or direct.is_no) or via_cocycle.value != direct.value:
                bad.append(f"{label} {a.dim}/{b.dim}: {via_cocycle.value} vs {direct.value}")
    ok = not bad and n > 0
    emit(7, "cocycle criterion matches complement search", ok, f"{n} nonabelian factors" + (f"; {bad}" if bad else ""))
    assert ok, bad


# ---------------------------------------------------------------- 8


def test_criterion_08_sl2sl2_facts(emit):
    L = builtin("sl2sl2", 5)
    A, B = sl2sl2_summands(L)
    z = L.zero()
    mA, mB = chief_factor_module(L, A, z), chief_factor_module(L, B, z)
    checks = {}
    eq = l_equivalent(mA, mB)
    checks["A ~ B with witness"] = eq.is_yes and eq.witness.check(mA, mB)
    checks["A not isomorphic to B"] = l_isomorphism(mA, mB).is_no
    pt = primitive_type(L)
    U = pt.witness
    checks["type 3"] = pt.kind == PrimitiveKind.TYPE3
    checks["diagonal complement"] = (U is not None and U.dim == 3 and (U & A) == z and (U & B) == z
                                     and is_maximal(L, U).is_yes)
    counts = [series_counts(label_series(L, s)) for s in all_chief_series(L)]
    checks["c = 2, m = 1 per series"] = len(counts) == 2 and all(c["c"] == 2 and c["m"] == 1 for c in counts)
    bad = [k for k, v in checks.items() if not v]
    ok = not bad
    emit(8, "sl2+sl2 over GF(5) headline facts", ok, ", ".join(checks) if ok else f"failing: {bad}")
    assert ok, bad


# ---------------------------------------------------------------- 9


def _solver_vs_brute(m):
    want = set(brute_cocycles(m.acting.sc.tolist(), m.action.tolist(), m.carrier.sc.tolist(), m.p))
    got = {tuple(int(x) for x in b.ravel()) for b in cocycle_space(m, method="enumerate").members()}
    return got == want, len(want)


def test_criterion_09_cocycle_oracle(emit):
    checks = {}
    ok_sl2, n = _solver_vs_brute(adjoint_module(builtin("sl2", 3)))
    checks[f"sl2(3) adjoint ({n} cocycles of 3^9)"] = ok_sl2
    L = builtin("h3", 2)
    A = LieAlgebra.abelian(1, 2)
    for t1, t2 in itertools.product(range(2), repeat=2):
        ok, n = _solver_vs_brute(make_module(L, A, np.array([[[t1]], [[t2]], [[0]]])))
        checks[f"h3(2) weight ({t1},{t2})"] = ok
    for p in (3, 5, 7):
        checks[f"-id in Z1 for sl2({p})"] = is_cocycle(adjoint_module(builtin("sl2", p)), (-np.eye(3, dtype=np.int64)) % p)
    bad = [k for k, v in checks.items() if not v]
    ok = not bad
    emit(9, "cocycle enumeration equals brute force", ok, f"{len(checks)} checks" + (f"; {bad}" if bad else ""))
    assert ok, bad


# ---------------------------------------------------------------- 10


def test_criterion_10_series_matching(emit):
    bad, pairs = [], 0
    for label, _, L in corpus():
        series = all_chief_series(L)
        for i, s in enumerate(series):
            for j, t in enumerate(series):
                pairs += 1
                sm = series_permutation(L, s, t)
                if sm.pi is None or sm.matching_count != 1 or sm.flags:
                    bad.append(f"{label} series {i} vs {j}: count {sm.matching_count}, {sm.flags}")
    ok = not bad
    emit(10, "unique m-related matching with matched status", ok,
         f"{pairs} series pairs" + (f"; {len(bad)} failing, e.g. {bad[0]}" if bad else ""))
    assert ok, bad


# ---------------------------------------------------------------- 11


def test_criterion_11_example_configuration(emit):
    t0 = time.perf_counter()
    rep = configuration_report(builtin("ex1", 7))
    dt = time.perf_counter() - t0
    parts = rep["configuration"].parts
    checks = {
        "identities": all(rep["identities"].values()),
        "I/C crosses X/0": rep["crossing"],
        "configuration parts": all(parts[k].is_yes for k in ("i", "ii", "iii", "iv")),
        "no invariant ideal of O1": rep["o1_invariant_ideals"] == 0,
        "non-complementedness Unknown": rep["I/C not complemented"].is_unknown,
        "count difference Unknown": rep["one more complemented factor"].is_unknown,
        "under 30 s": dt < 30,
    }
    bad = [k for k, v in checks.items() if not v]
    ok = not bad
    emit(11, "36-dimensional example", ok, f"{dt:.1f}s" + (f"; failing: {bad}" if bad else ""))
    assert ok, bad


# ---------------------------------------------------------------- 12


def _inflation_triples(limit=50):
    out = []
    for label, _, L in corpus():
        for (a, b), m in distinct_factor_modules(L):
            if not is_abelian_factor(L, a, b):
                continue
            C = i_and_c(m)["C_L"]
            for N in all_ideals(L):
                if N <= C:
                    out.append((label, L, N, m))
                    if len(out) == limit:
                        return out
    return out


def test_criterion_12_inflation_conditions_agree(emit):
    triples = _inflation_triples()
    bad, shapes = [], set()
    for label, L, N, m in triples:
        r = check_theorem2(L, N, m)
        shapes.add(tuple(r))
        if len(set(r)) != 1:
            bad.append(f"{label} N dim {N.dim}: {tuple(r)}")
    ok = len(triples) == 50 and not bad
    emit(12, "inflation conditions agree", ok,
         f"{len(triples)} triples, outcomes {sorted(shapes)}" + (f"; {bad[:5]}" if bad else ""))
    assert ok, bad
