"""Labelling chief factors and comparing chief series.

``A/B ↘ C/D`` means ``A = B + C`` and ``B & C = D``.  Relations between
factors are precomputed once per algebra as boolean matrices over ``CF(L)``;
undecided labels give a "definite" and a "possible" version of every matrix
so that a budget overrun shows up as Unknown instead of a wrong answer.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .chief import (
    ChiefSeries,
    all_chief_series,
    chief_factors,
    factor_complements,
    is_abelian_factor,
    minimal_ideals,
    socle,
)
from .cohomology import l_equivalent
from .crowns import crown_data
from .exactlinalg import EnumerationBudgetError, Subspace
from .liecore import LieAlgebra, centralizer_of_section, quotient
from .lmodule import chief_factor_module, irreducible
from .verdict import Verdict

Factor = tuple[Subspace, Subspace]


def crosses(f1: Factor, f2: Factor) -> bool:
    """``f1 ↘ f2``."""
    (a, b), (c, d) = f1, f2
    if a.dim - b.dim != c.dim - d.dim or not c <= a:
        return False
    return (b + c) == a and (b & c) == d


@dataclass
class FactorLabel:
    factor: Factor
    abelian: bool
    frattini: bool | None
    supplemented: bool | None
    c: Verdict
    m: Verdict

    @property
    def short(self) -> str:
        c = {True: "c", False: "c'", None: "c?"}[self.c.as_bool()]
        m = {True: "m", False: "m'", None: "m?"}[self.m.as_bool()]
        return ("Frattini " if self.frattini else "") + f"{c} {m}"


def label_factor(L: LieAlgebra, f: Factor) -> FactorLabel:
    a, b = f
    fc = factor_complements(L, a, b)
    sup = fc.supplemented.as_bool()
    return FactorLabel(f, is_abelian_factor(L, a, b), None if sup is None else not sup, sup, fc.is_c, fc.is_m)


def label_series(L: LieAlgebra, s: ChiefSeries) -> list[FactorLabel]:
    return [label_factor(L, f) for f in s.factors()]


def series_counts(labels: list[FactorLabel]) -> dict:
    def count(pred):
        vals = [pred(lb) for lb in labels]
        return None if any(v is None for v in vals) else sum(vals)

    return {
        "c": count(lambda lb: lb.c.as_bool()),
        "m": count(lambda lb: lb.m.as_bool()),
        "frattini": count(lambda lb: lb.frattini),
    }


# --------------------------------------------------------------------------
# the relation table
# --------------------------------------------------------------------------


@dataclass
class FactorTable:
    factors: list[Factor]
    index: dict
    labels: list[FactorLabel]
    down: np.ndarray  # down[i, j]: f_i ↘ f_j
    related: dict  # "def"/"pos" -> (n x n x 4) boolean, one slice per case

    def idx(self, f: Factor) -> int:
        return self.index[(f[0].key, f[1].key)]


def _bmm(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    return (x.astype(np.int64) @ y.astype(np.int64)) > 0


def factor_table(L: LieAlgebra) -> FactorTable:
    memo = L._memo
    if "factor_table" in memo:
        return memo["factor_table"]
    cf = chief_factors(L)
    n = len(cf)
    index = {(a.key, b.key): i for i, (a, b) in enumerate(cf)}
    labels = [label_factor(L, f) for f in cf]
    down = np.zeros((n, n), dtype=bool)
    for i in range(n):
        for j in range(n):
            down[i, j] = crosses(cf[i], cf[j])
    sup_def = np.array([lb.supplemented is True for lb in labels])
    sup_pos = np.array([lb.supplemented is not False for lb in labels])
    fr_def = np.array([lb.frattini is True for lb in labels])
    fr_pos = np.array([lb.frattini is not False for lb in labels])

    # m-crossings [U/V ↘ W/X] together with the indices of V/X and U/W when those are chief factors
    crossings = []
    for u in range(n):
        for w in range(n):
            if u == w or not down[u, w]:
                continue
            (U, V), (W, X) = cf[u], cf[w]
            k = index.get((V.key, X.key), -1)
            l_ = index.get((U.key, W.key), -1)
            crossings.append((u, w, k, l_))

    related = {}
    for tag, sup, fr in (("def", sup_def, fr_def), ("pos", sup_pos, fr_pos)):
        rel = np.zeros((n, n, 4), dtype=bool)
        # 1: R/S ↘ A/B and R/S ↘ C/D with R/S supplemented
        rel[:, :, 0] = _bmm(down[sup].T, down[sup])
        for u, w, k, l_ in crossings:
            if not (fr[u] and sup[w]):
                continue
            # 2: V/X ↘ A/B and W/X ↘ C/D
            if k >= 0:
                rel[:, :, 1] |= np.outer(down[k], down[w])
            # 4: A/B ↘ U/V and C/D ↘ U/W
            if l_ >= 0:
                rel[:, :, 3] |= np.outer(down[:, u], down[:, l_])
        # 3: A/B ↘ Y/Z and C/D ↘ Y/Z with Y/Z Frattini
        rel[:, :, 2] = _bmm(down[:, fr], down[:, fr].T)
        related[tag] = rel
    table = FactorTable(cf, index, labels, down, related)
    memo["factor_table"] = table
    return table


@dataclass
class MRelation:
    related: Verdict
    case: int | None
    witness: tuple = ()  # factors: (R/S,), (U/V, W/X) or (Y/Z,)


def _witness(t: FactorTable, i: int, j: int, case: int) -> tuple:
    n = len(t.factors)
    lab = t.labels
    sup = [lb.supplemented is True for lb in lab]
    fr = [lb.frattini is True for lb in lab]
    down = t.down
    if case == 1:
        r = next(r for r in range(n) if sup[r] and down[r, i] and down[r, j])
        return (t.factors[r],)
    if case == 3:
        r = next(r for r in range(n) if fr[r] and down[i, r] and down[j, r])
        return (t.factors[r],)
    for u in range(n):
        for w in range(n):
            if u == w or not (down[u, w] and fr[u] and sup[w]):
                continue
            (U, V), (W, X) = t.factors[u], t.factors[w]
            if case == 2:
                k = t.index.get((V.key, X.key))
                if k is not None and down[k, i] and down[w, j]:
                    return (t.factors[u], t.factors[w])
            else:
                k = t.index.get((U.key, W.key))
                if k is not None and down[i, u] and down[j, k]:
                    return (t.factors[u], t.factors[w])
    raise AssertionError("relation table and witness scan disagree")


def m_related(L: LieAlgebra, f1: Factor, f2: Factor) -> MRelation:
    """Whether two chief factors are m-related; the first matching pattern is reported with its witness."""
    t = factor_table(L)
    i, j = t.idx(f1), t.idx(f2)
    d, p = t.related["def"][i, j], t.related["pos"][i, j]
    if d.any():
        case = int(np.flatnonzero(d)[0]) + 1
        wit = _witness(t, i, j, case)
        return MRelation(Verdict.yes(wit), case, wit)
    if not p.any():
        return MRelation(Verdict.no("none of the four patterns occurs"), None)
    return MRelation(Verdict.unknown("depends on undecided factor labels"), None)


# --------------------------------------------------------------------------
# matchings between two series
# --------------------------------------------------------------------------


def _matchings(adj: np.ndarray, limit: int = 10**5) -> list[tuple[int, ...]]:
    n = adj.shape[0]
    out: list[tuple[int, ...]] = []
    used = [False] * n
    perm = [0] * n

    def go(i):
        if len(out) >= limit:
            return
        if i == n:
            out.append(tuple(perm))
            return
        for j in np.flatnonzero(adj[i]):
            if not used[j]:
                used[j] = True
                perm[i] = int(j)
                go(i + 1)
                used[j] = False

    go(0)
    return out


@dataclass
class SeriesMatch:
    pi: tuple[int, ...] | None
    cases: list[int | None]
    matching_count: int
    possible_count: int  # counting edges that depend on undecided labels
    equal_length: bool
    pair_checks: list[dict] = field(default_factory=list)
    flags: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.flags


def _common_maximal_complement(L, f1: Factor, f2: Factor) -> Verdict:
    c1 = factor_complements(L, *f1)
    c2 = factor_complements(L, *f2)
    k2 = {m.key for m in c2.maximal_complements}
    for m in c1.maximal_complements:
        if m.key in k2:
            return Verdict.yes(m)
    if c1.is_c.mode == "exhaustive" and c2.is_c.mode == "exhaustive" and c1.is_m.decided and c2.is_m.decided:
        return Verdict.no("no shared maximal complement")
    return Verdict.unknown("complement lists incomplete")


def mprime_alternative(L: LieAlgebra, f1: Factor, f2: Factor, l1: FactorLabel, l2: FactorLabel) -> dict:
    """Which of the three alternatives holds for a matched pair of m'-factors."""
    c1, c2 = l1.c.as_bool(), l2.c.as_bool()
    out = {"a": None, "b": None, "c": None}
    if c1 is None or c2 is None:
        return out
    nonab = not l1.abelian and not l2.abelian
    out["a"] = not c1 and not c2
    out["b"] = c1 and c2 and nonab
    if c1 != c2 and nonab:
        cprime, cfac = (f1, f2) if not c1 else (f2, f1)
        out["c"] = configuration_search(L, cprime, cfac).is_yes
    else:
        out["c"] = False
    return out


def series_permutation(L: LieAlgebra, s1: ChiefSeries, s2: ChiefSeries, checks: bool = True) -> SeriesMatch:
    t = factor_table(L)
    f1, f2 = s1.factors(), s2.factors()
    if len(f1) != len(f2):
        return SeriesMatch(None, [], 0, 0, False, flags=["series lengths differ"])
    i1 = [t.idx(f) for f in f1]
    i2 = [t.idx(f) for f in f2]
    d = t.related["def"][np.ix_(i1, i2)].any(axis=2)
    p = t.related["pos"][np.ix_(i1, i2)].any(axis=2)
    sure = _matchings(d)
    maybe = _matchings(p)
    flags = []
    if not maybe:
        flags.append("no perfect m-related matching")
    elif len(maybe) != len(sure):
        flags.append("matching depends on undecided labels")
    if len(sure) > 1:
        flags.append(f"{len(sure)} perfect matchings")
    pi = sure[0] if sure else (maybe[0] if maybe else None)
    cases = []
    pair_checks = []
    if pi is not None:
        for a, b in enumerate(pi):
            rel = t.related["def"][i1[a], i2[b]]
            cases.append(int(np.flatnonzero(rel)[0]) + 1 if rel.any() else None)
        if checks:
            for a, b in enumerate(pi):
                fa, fb = f1[a], f2[b]
                la, lb = t.labels[i1[a]], t.labels[i2[b]]
                rec = {
                    "pair": (a, b),
                    "equivalent": l_equivalent(chief_factor_module(L, *fa), chief_factor_module(L, *fb)),
                    "same_m": None if not (la.m.decided and lb.m.decided) else la.m.value == lb.m.value,
                }
                if la.m.is_yes and lb.m.is_yes:
                    rec["common_maximal_complement"] = _common_maximal_complement(L, fa, fb)
                if la.m.is_no and lb.m.is_no:
                    rec["alternative"] = mprime_alternative(L, fa, fb, la, lb)
                pair_checks.append(rec)
                if rec["equivalent"].is_no:
                    flags.append(f"pair {a}->{b} not L-equivalent")
                if rec["same_m"] is False:
                    flags.append(f"pair {a}->{b} differs in m-status")
                cm = rec.get("common_maximal_complement")
                if cm is not None and cm.is_no:
                    flags.append(f"pair {a}->{b} has no common maximal complement")
                alt = rec.get("alternative")
                if alt is not None and None not in alt.values() and sum(bool(v) for v in alt.values()) != 1:
                    flags.append(f"pair {a}->{b} violates the m'-trichotomy")
    return SeriesMatch(pi, cases, len(sure), len(maybe), True, pair_checks, flags)


# --------------------------------------------------------------------------
# the configuration for a c'-factor crossing a nonabelian c-factor
# --------------------------------------------------------------------------


@dataclass
class CrossingConfiguration:
    I: Subspace
    C: Subspace
    X: Subspace | None
    N: Subspace | None
    parts: dict  # "i", "i_cprime", "ii", "iii", "iv" -> Verdict

    @property
    def holds(self) -> Verdict:
        vals = list(self.parts.values())
        if any(v.is_no for v in vals):
            return Verdict.no("a part fails")
        if all(v.is_yes for v in vals):
            return Verdict.yes(True, mode="witness")
        return Verdict.unknown("some parts undecided")


def _is_c(L, a, b) -> Verdict:
    try:
        return factor_complements(L, a, b).is_c
    except EnumerationBudgetError as exc:
        return Verdict.unknown(str(exc))


def _complement_ok(L: LieAlgebra, U: Subspace, a: Subspace, b: Subspace) -> bool:
    return L.is_subalgebra(U) and U + a == L.whole() and (U & a) == b


def check_configuration(L: LieAlgebra, cprime: Factor, cfac: Factor, X: Subspace | None = None,
                 U: Subspace | None = None, ideals: list[Subspace] | None = None) -> CrossingConfiguration:
    """Parts (i)-(iv) for a c'-factor ``B*/B`` crossing a c-factor ``A*/A``.

    ``X`` and a complement ``U`` of ``X/N`` may be supplied; otherwise ``X``
    is searched among ``ideals`` (default: every ideal of ``L``).
    """
    (bs, b), (as_, a) = cprime, cfac
    C = centralizer_of_section(L, as_, a)
    I = as_ + C
    parts: dict = {}
    parts["i"] = Verdict.of((C + bs) == I and (C & bs) == b, witness=(I, C))
    neg = _is_c(L, I, C).negate() if parts["i"].is_yes else Verdict.no("I/C does not cross B*/B")
    parts["i_cprime"] = neg

    def ii_holds(Xc):
        N = Xc & C
        return Xc <= I and (N + as_) == Xc and (N & as_) == a and (C + Xc) == I and (C & Xc) == N

    chosen, N = None, None
    if X is not None:
        if ii_holds(X):
            chosen = X
    else:
        from .chief import all_ideals

        for Xc in (ideals if ideals is not None else all_ideals(L)):
            if ii_holds(Xc):
                cv = _is_c(L, Xc, Xc & C)
                if cv.is_yes:
                    chosen, U = Xc, cv.witness
                    break
    if chosen is None:
        parts["ii"] = Verdict.no("no suitable X") if X is None else Verdict.no("supplied X fails")
    else:
        N = chosen & C
        if U is not None and _complement_ok(L, U, chosen, N):
            parts["ii"] = Verdict.yes(chosen, mode="witness")
        else:
            cv = _is_c(L, chosen, N)
            U = cv.witness if cv.is_yes else None
            parts["ii"] = Verdict.yes(chosen, mode="witness") if cv.is_yes else cv
    # (iii) F = U + C supplements I/C and L/N splits as I/C by F/C
    if chosen is not None and U is not None:
        F = U + C
        prod_ok = all(N.contains(L.bracket(x, c)) for x in chosen.basis for c in C.basis)
        ok = (L.is_subalgebra(F) and F + I == L.whole() and prod_ok
              and L.dim - N.dim == (I.dim - C.dim) + (F.dim - C.dim))
        parts["iii"] = Verdict.of(ok, witness=F)
    else:
        parts["iii"] = Verdict.unknown("no complement of X/N available")
    # (iv) I/C is the unique minimal ideal of L/C and is nonabelian: then L/C is primitive of type 2
    irr = irreducible(chief_factor_module(L, I, C)) if I != C else Verdict.no("I = C")
    self_central = centralizer_of_section(L, I, C) == C
    nonab = not is_abelian_factor(L, I, C)
    if irr.is_yes:
        parts["iv"] = Verdict.of(self_central and nonab, witness=I)
    elif irr.is_no:
        parts["iv"] = Verdict.no("I/C is not a chief factor")
    else:
        parts["iv"] = Verdict.unknown("irreducibility of I/C undecided")
    return CrossingConfiguration(I, C, chosen, N, parts)


def configuration_search(L: LieAlgebra, cprime: Factor, cfac: Factor) -> Verdict:
    """Look for a c'-factor crossing into ``cfac`` through which the configuration holds."""
    t = factor_table(L)
    i, j = t.idx(cprime), t.idx(cfac)
    cands = [i] + [r for r in range(len(t.factors)) if t.down[r, i] and t.down[r, j]]
    undecided = False
    for r in cands:
        if not t.down[r, j]:
            continue
        rep = check_configuration(L, t.factors[r], cfac)
        h = rep.holds
        if h.is_yes:
            return Verdict.yes(rep, mode="witness")
        undecided |= h.is_unknown
    return Verdict.unknown("undecided") if undecided else Verdict.no("configuration not found")


def configuration_report(bundle) -> dict:
    """Checks on the 36-dimensional example at the level of linear algebra.

    The two claims that need a complement search in dimension 36 (``I/C`` has
    no complement, and a series through ``X`` has one more complemented factor
    than a series through ``C``) stay Unknown unless the search finishes.
    """
    L, X, C, I = bundle.L, bundle.X, bundle.C, bundle.I
    z = L.zero()
    rep = check_configuration(L, (I, C), (X, z), X=X, U=bundle.U)
    cprime = rep.parts["i_cprime"]
    x_c = _is_c(L, X, z) if cprime.decided else Verdict.unknown("not attempted")
    if cprime.is_yes and x_c.is_yes:
        extra = Verdict.yes(1)
    elif cprime.decided and x_c.decided:
        extra = Verdict.no("complement status does not differ")
    else:
        extra = Verdict.unknown("complement search out of range")
    return {
        "identities": bundle.identities(),
        "crossing": crosses((I, C), (X, z)),
        "configuration": rep,
        "o1_invariant_ideals": len(bundle.o1_invariant_ideals()),
        "I/C not complemented": cprime,
        "one more complemented factor": extra,
    }


# --------------------------------------------------------------------------
# cc'-type and the variation bound
# --------------------------------------------------------------------------


@dataclass
class ClassRecord:
    representative: Factor
    members: list[Factor]
    strict_chain: bool | None  # E_core < D < I
    soc_cprime: Verdict
    cc: Verdict  # by the crown criterion
    cc_direct: bool | None  # by a mixed matched pair over some two series


@dataclass
class VariationReport:
    classes: list[ClassRecord]
    v: int
    v_upper: int
    c_counts: list[int | None]
    m_counts: list[int | None]
    frattini_counts: list[int | None]
    spread: int | None
    spread_ok: bool | None
    lemma4_checks: list[dict]
    complete: bool


def _nonabelian_classes(L: LieAlgebra, factors: list[Factor]) -> list[list[Factor]]:
    groups: list[list[Factor]] = []
    for f in factors:
        m = chief_factor_module(L, *f)
        for g in groups:
            if l_equivalent(m, chief_factor_module(L, *g[0])).is_yes:
                g.append(f)
                break
        else:
            groups.append([f])
    return groups


def soc_is_cprime(L: LieAlgebra, C: Subspace) -> Verdict:
    """``Soc(L/C)`` is a c'-factor of ``L/C``."""
    P = quotient(L, C).quotient
    try:
        mins = minimal_ideals(P)
    except EnumerationBudgetError as exc:
        return Verdict.unknown(str(exc))
    if len(mins) != 1:
        return Verdict.no("socle is not a single chief factor")
    return _is_c(P, socle(P), P.zero()).negate()


def cc_type_and_variation(L: LieAlgebra, series: list[ChiefSeries] | None = None) -> VariationReport:
    series = all_chief_series(L) if series is None else series
    t = factor_table(L)
    labels = [[t.labels[t.idx(f)] for f in s.factors()] for s in series]
    counts = [series_counts(lb) for lb in labels]
    c_counts = [c["c"] for c in counts]

    seen, nonab = set(), []
    for s in series:
        for f in s.factors():
            k = (f[0].key, f[1].key)
            if k not in seen and not is_abelian_factor(L, *f):
                seen.add(k)
                nonab.append(f)
    groups = _nonabelian_classes(L, nonab)

    # the direct definition: some matched pair of m'-factors on two series has mixed c-status
    mixed: list[tuple[Factor, Factor]] = []
    lemma4_checks: list[dict] = []
    for x in range(len(series)):
        for y in range(x + 1, len(series)):
            sm = series_permutation(L, series[x], series[y], checks=False)
            if sm.pi is None:
                continue
            fx, fy = series[x].factors(), series[y].factors()
            for a, b in enumerate(sm.pi):
                la, lb = labels[x][a], labels[y][b]
                if la.m.is_no and lb.m.is_no and la.c.decided and lb.c.decided and la.c.value != lb.c.value:
                    pair = (fx[a], fy[b]) if la.c.is_no else (fy[b], fx[a])
                    mixed.append(pair)
                    v = configuration_search(L, *pair) if not (la.abelian or lb.abelian) else Verdict.no("abelian")
                    lemma4_checks.append({"series": (x, y), "pair": (a, b), "configuration": v})

    classes = []
    for g in groups:
        rep = g[0]
        m = chief_factor_module(L, *rep)
        cr = crown_data(L, m)
        exact = all(cr.complete.values())
        strict = (cr.E_core < cr.D and cr.D < cr.I) if exact else None
        soc = soc_is_cprime(L, cr.C)
        if strict is False or soc.is_no:
            cc = Verdict.no("crown criterion fails")
        elif strict and soc.is_yes:
            cc = Verdict.yes(rep)
        else:
            cc = Verdict.unknown("crown data incomplete")
        direct = any(
            l_equivalent(m, chief_factor_module(L, *pair[0])).is_yes for pair in mixed
        )
        classes.append(ClassRecord(rep, g, strict, soc, cc, direct))
    v = sum(c.cc.is_yes for c in classes)
    v_upper = sum(not c.cc.is_no for c in classes)
    spread = None if any(c is None for c in c_counts) else (max(c_counts) - min(c_counts) if c_counts else 0)
    return VariationReport(
        classes, v, v_upper, c_counts, [c["m"] for c in counts], [c["frattini"] for c in counts],
        spread, None if spread is None else spread <= v_upper, lemma4_checks,
        complete=spread is not None and v == v_upper,
    )


__all__ = [
    "ClassRecord",
    "CrossingConfiguration",
    "FactorLabel",
    "FactorTable",
    "MRelation",
    "SeriesMatch",
    "VariationReport",
    "cc_type_and_variation",
    "check_configuration",
    "configuration_report",
    "configuration_search",
    "crosses",
    "factor_table",
    "label_factor",
    "label_series",
    "m_related",
    "mprime_alternative",
    "series_counts",
    "series_permutation",
    "soc_is_cprime",
]
