"""Crowns of an irreducible L-algebra and L-connectedness of chief factors."""

from __future__ import annotations

from dataclasses import dataclass, field

from .chief import (
    ChiefSeries,
    all_ideals,
    chief_factors,
    complements_of,
    core_free_maximal,
    factor_complements,
    is_abelian_factor,
    is_chief_factor,
    is_maximal,
    minimal_ideals,
)
from .cohomology import cocycle_space, e_core, e_l, l_equivalent, twist
from .exactlinalg import EnumerationBudgetError, Subspace
from .liecore import LieAlgebra, QuotientMap, quotient
from .lmodule import LAlgebraModule, chief_factor_module, i_and_c, l_isomorphism
from .verdict import Verdict


@dataclass
class CrownRecord:
    module: LAlgebraModule
    I: Subspace
    C: Subspace
    D: Subspace
    E_raw: Subspace
    E_core: Subspace  # core in A x| L of the common kernel, read back in L
    E_core_via_centralizers: Subspace  # common centralizer of all twists
    J: Subspace
    crown: QuotientMap  # L -> L/D; the crown is the image of I
    complete: dict = field(default_factory=dict)  # field name -> bool

    @property
    def crown_dim(self) -> int:
        return self.I.dim - self.D.dim

    def summary(self) -> dict:
        return {k: getattr(self, k).dim for k in ("I", "C", "D", "E_raw", "E_core", "J")}


def _distinct_factor_modules(L: LieAlgebra) -> list[LAlgebraModule]:
    seen, out = set(), []
    for a, b in chief_factors(L):
        m = chief_factor_module(L, a, b)
        if m.key not in seen:
            seen.add(m.key)
            out.append(m)
    return out


def crown_data(L: LieAlgebra, m: LAlgebraModule) -> CrownRecord:
    """``I_L``, ``C_L``, ``D_L``, ``E_L`` (raw and core), ``J_L`` for an irreducible ``A``."""
    if m.acting != L:
        raise ValueError("module is over a different algebra")
    ic = i_and_c(m)
    I, C = ic["I_L"], ic["C_L"]
    complete = {}

    D, ok = I, True
    for R in all_ideals(L):
        if not (R < I and is_chief_factor(L, I, R)):
            continue
        eq = l_equivalent(m, chief_factor_module(L, I, R))
        if eq.is_no:
            continue
        sup = factor_complements(L, I, R).supplemented
        if eq.is_yes and sup.is_yes:
            D = D & R
        elif eq.is_unknown or sup.is_unknown:
            ok = False
    complete["D"] = ok

    el = e_l(m)
    complete["E_raw"] = el.exact
    try:
        ec = e_core(m)
        e_h, e_c = ec.via_complements, ec.via_centralizers
        complete["E_core"] = True
    except EnumerationBudgetError:
        e_c = e_h = I
        complete["E_core"] = False

    J, ok = I, True
    family = []
    try:
        cs = cocycle_space(m)
        factors = _distinct_factor_modules(L)
        seen = set()
        for beta in cs.members():
            tw = twist(m, beta)
            if tw.key in seen:
                continue
            seen.add(tw.key)
            verdicts = [l_isomorphism(tw, f) for f in factors]
            if any(v.is_yes for v in verdicts):
                continue
            if any(v.is_unknown for v in verdicts):
                ok = False
                continue
            family.append(i_and_c(tw)["C_L"])
    except EnumerationBudgetError:
        ok = False
    if family:
        J = family[0]
        for c in family[1:]:
            J = J & c
    complete["J"] = ok
    return CrownRecord(m, I, C, D, el.subspace, e_h, e_c, J, quotient(L, D), complete)


# --------------------------------------------------------------------------
# L-connectedness
# --------------------------------------------------------------------------

Factor = tuple[Subspace, Subspace]


@dataclass
class Connection:
    isomorphic: Verdict
    equivalent: Verdict  # (i)
    connected: Verdict  # (ii); witness is the kernel K of a type-3 image, or "isomorphic"
    maximal_common_complement: Verdict  # (iii)
    common_complement: Verdict  # (iv)

    def verdicts(self) -> list[Verdict]:
        return [self.equivalent, self.connected, self.maximal_common_complement, self.common_complement]

    @property
    def consistent(self) -> bool:
        decided = {v.is_yes for v in self.verdicts() if v.decided}
        return len(decided) <= 1


def _module(L, f: Factor) -> LAlgebraModule:
    return chief_factor_module(L, f[0], f[1])


def _iso(L, f1: Factor, f2: Factor) -> Verdict:
    return l_isomorphism(_module(L, f1), _module(L, f2))


def _type3_image(L: LieAlgebra, f1: Factor, f2: Factor) -> Verdict:
    undecided = False
    m1, m2 = _module(L, f1), _module(L, f2)
    for K in all_ideals(L):
        qm = quotient(L, K)
        mins = minimal_ideals(qm.quotient)
        if len(mins) != 2:
            continue
        tops = [qm.preimage(x) for x in mins]
        if any(is_abelian_factor(L, t, K) for t in tops):
            continue
        n1, n2 = (chief_factor_module(L, t, K) for t in tops)
        match = []
        for x, y in ((n1, n2), (n2, n1)):
            match.append(_and2(l_isomorphism(m1, x), l_isomorphism(m2, y)))
        if not any(v.is_yes for v in match):
            undecided |= any(v.is_unknown for v in match)
            continue
        prim = core_free_maximal(qm.quotient)
        if prim.is_yes:
            return Verdict.yes(K, mode=prim.mode)
        undecided |= prim.is_unknown
    if undecided:
        return Verdict.unknown("some type-3 images could not be decided")
    return Verdict.no("no epimorphic image of type 3 matches")


def _and2(a: Verdict, b: Verdict) -> Verdict:
    if a.is_no or b.is_no:
        return Verdict.no()
    if a.is_yes and b.is_yes:
        return Verdict.yes(True)
    return Verdict.unknown()


def _common_complements(L: LieAlgebra, f1: Factor, f2: Factor) -> tuple[Verdict, Verdict]:
    """(maximal common complement, common complement) over factors isomorphic to f1 and f2."""
    cf = chief_factors(L)
    undecided = False
    e1 = []
    e2 = []
    for g in cf:
        for f, bucket in ((f1, e1), (f2, e2)):
            v = _iso(L, f, g)
            if v.is_yes:
                bucket.append(g)
            undecided |= v.is_unknown

    def comps(g):
        nonlocal undecided
        try:
            return {c.key: c for c in complements_of(L, g[0], g[1]).complements}
        except EnumerationBudgetError:
            undecided = True
            return {}

    common: dict = {}
    for g1 in e1:
        c1 = comps(g1)
        for g2 in e2:
            c2 = comps(g2)
            for k in c1.keys() & c2.keys():
                common.setdefault(k, c1[k])
    shared = sorted(common.values(), key=lambda s: s.sort_key)
    maximal, max_undecided = None, False
    for U in shared:
        v = is_maximal(L, U)
        if v.is_yes:
            maximal = U
            break
        max_undecided |= v.is_unknown
    if shared:
        any_c = Verdict.yes(shared[0])
    else:
        any_c = Verdict.unknown("budget") if undecided else Verdict.no("no common complement")
    if maximal is not None:
        max_c = Verdict.yes(maximal)
    else:
        max_c = Verdict.unknown("budget") if (undecided or max_undecided) else Verdict.no("no maximal common complement")
    return max_c, any_c


def l_connected(L: LieAlgebra, f1: Factor, f2: Factor) -> Connection:
    """All four equivalent conditions for a pair of chief factors, evaluated independently."""
    iso = _iso(L, f1, f2)
    eq = l_equivalent(_module(L, f1), _module(L, f2))
    if iso.is_yes:
        yes = Verdict.yes("isomorphic")
        return Connection(iso, eq, yes, yes, yes)
    conn = _type3_image(L, f1, f2)
    max_c, any_c = _common_complements(L, f1, f2)
    if iso.is_unknown:
        conn = conn if conn.is_yes else Verdict.unknown("isomorphism undecided")
        max_c = max_c if max_c.is_yes else Verdict.unknown("isomorphism undecided")
        any_c = any_c if any_c.is_yes else Verdict.unknown("isomorphism undecided")
    return Connection(iso, eq, conn, max_c, any_c)


# --------------------------------------------------------------------------
# classes of chief factors
# --------------------------------------------------------------------------


@dataclass
class FactorClass:
    representatives: list[Factor]
    dim: int
    abelian: bool
    flagged: bool = False  # some membership question was undecided


def factor_classes(L: LieAlgebra, series: ChiefSeries | list[Factor]) -> list[FactorClass]:
    """Partition factors by L-connectedness; undecided pairs stay apart and are flagged."""
    factors = series.factors() if isinstance(series, ChiefSeries) else list(series)
    n = len(factors)
    parent = list(range(n))
    flagged = [False] * n

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if find(i) == find(j):
                continue
            a, b = factors[i], factors[j]
            if a[0].dim - a[1].dim != b[0].dim - b[1].dim:
                continue
            c = l_connected(L, a, b)
            if c.connected.is_yes or c.equivalent.is_yes:
                parent[find(j)] = find(i)
            elif not (c.connected.is_no or c.equivalent.is_no):
                flagged[i] = flagged[j] = True
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    out = []
    for root in sorted(groups, key=lambda r: groups[r][0]):
        idx = groups[root]
        a, b = factors[idx[0]]
        out.append(FactorClass([factors[i] for i in idx], a.dim - b.dim, is_abelian_factor(L, a, b),
                               any(flagged[i] for i in idx)))
    return out


def crown_of_factor(L: LieAlgebra, a: Subspace, b: Subspace) -> CrownRecord:
    return crown_data(L, chief_factor_module(L, a, b))


__all__ = [
    "Connection",
    "CrownRecord",
    "FactorClass",
    "crown_data",
    "crown_of_factor",
    "factor_classes",
    "l_connected",
]
