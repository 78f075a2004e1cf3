"""Ideals, chief series, maximal subalgebras, Frattini ideal and complements.

Searches that may be cut short by a budget answer with a
:class:`~liecrown.verdict.Verdict`.  Complements of a chief factor ``a/b``
are found exhaustively as the splittings of ``L/b -> L/a``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .exactlinalg import (
    EnumerationBudgetError,
    SectionCoords,
    Subspace,
    budgets,
    check_budget,
    enumerate_subspaces,
    nullspace,
    projective_points,
)
from .liecore import (
    LieAlgebra,
    NotASectionError,
    _close,
    center,
    centralizer,
    centralizer_of_section,
    core,
    quotient,
)
from .splitting import enumerate_splittings
from .verdict import Verdict

# --------------------------------------------------------------------------
# ideals
# --------------------------------------------------------------------------

_MINIMAL: dict = {}


def ideal_closure(L: LieAlgebra, vectors) -> Subspace:
    return _close(L, L.span(vectors), "ideal")


def minimal_ideals(L: LieAlgebra, budget: float | None = None) -> list[Subspace]:
    """All minimal nonzero ideals, sorted canonically.

    Every minimal ideal is the ideal closure of each of its nonzero vectors,
    so it suffices to close one vector per line and keep the minimal results.
    """
    hit = _MINIMAL.get(L.key)
    if hit is not None:
        return hit
    if L.dim == 0:
        return []
    budget = budgets().vectors if budget is None else budget
    pts = projective_points(L.dim, L.p, budget=budget * max(L.dim, 1))
    found: dict[bytes, Subspace] = {}
    minimal: list[Subspace] = []
    for v in pts:
        J = ideal_closure(L, v)
        if J.key in found:
            continue
        found[J.key] = J
        if not any(m <= J for m in minimal):
            minimal = [m for m in minimal if not J < m] + [J]
    out = sorted(minimal, key=lambda s: s.sort_key)
    _MINIMAL[L.key] = out
    return out


def socle(L: LieAlgebra) -> Subspace:
    s = L.zero()
    for m in minimal_ideals(L):
        s = s + m
    return s


def covers(L: LieAlgebra, b: Subspace) -> list[Subspace]:
    """Ideals ``a`` with ``a/b`` a minimal ideal of ``L/b``."""
    memo = L._memo.setdefault("covers", {})
    hit = memo.get(b.key)
    if hit is not None:
        return hit
    qm = quotient(L, b)
    out = sorted((qm.preimage(m) for m in minimal_ideals(qm.quotient)), key=lambda s: s.sort_key)
    memo[b.key] = out
    return out


def all_ideals(L: LieAlgebra) -> list[Subspace]:
    """Every ideal, by walking covers upward from 0 (each ideal sits on a chief series)."""
    memo = L._memo
    if "ideals" in memo:
        return memo["ideals"]
    seen = {L.zero().key: L.zero()}
    frontier = [L.zero()]
    while frontier:
        nxt = []
        for b in frontier:
            for a in covers(L, b):
                if a.key not in seen:
                    seen[a.key] = a
                    nxt.append(a)
        frontier = nxt
    out = sorted(seen.values(), key=lambda s: s.sort_key)
    memo["ideals"] = out
    return out


def chief_factors(L: LieAlgebra) -> list[tuple[Subspace, Subspace]]:
    """``CF(L)``: every pair ``(a, b)`` of ideals with ``a/b`` a chief factor."""
    out = []
    for b in all_ideals(L):
        for a in covers(L, b):
            out.append((a, b))
    return sorted(out, key=lambda ab: (ab[0].sort_key, ab[1].sort_key))


@dataclass(frozen=True)
class ChiefSeries:
    chain: tuple[Subspace, ...]

    @property
    def length(self) -> int:
        return len(self.chain) - 1

    def factors(self) -> list[tuple[Subspace, Subspace]]:
        return [(self.chain[i + 1], self.chain[i]) for i in range(self.length)]

    def validate(self, L: LieAlgebra) -> None:
        for a, b in self.factors():
            if not (L.is_ideal(a) and L.is_ideal(b)):
                raise NotASectionError("series term is not an ideal")
            if not is_chief_factor(L, a, b):
                raise NotASectionError("series factor is not a chief factor")


def is_chief_factor(L: LieAlgebra, a: Subspace, b: Subspace) -> bool:
    if not (b < a and L.is_ideal(a) and L.is_ideal(b)):
        return False
    qm = quotient(L, b)
    return qm.image(a) in minimal_ideals(qm.quotient)


def all_chief_series(L: LieAlgebra, lower: Subspace | None = None, upper: Subspace | None = None,
                     budget: float | None = None) -> list[ChiefSeries]:
    """Every chain of chief factors from ``lower`` (default 0) up to ``upper`` (default L)."""
    lower = L.zero() if lower is None else lower
    upper = L.whole() if upper is None else upper
    if not (lower <= upper and L.is_ideal(lower) and L.is_ideal(upper)):
        raise NotASectionError("expected ideals lower <= upper")
    budget = budgets().series if budget is None else budget
    out: list[ChiefSeries] = []

    def walk(chain: list[Subspace]) -> None:
        top = chain[-1]
        if top == upper:
            out.append(ChiefSeries(tuple(chain)))
            check_budget("chief series", len(out), budget)
            return
        for a in covers(L, top):
            if a <= upper:
                walk(chain + [a])

    walk([lower])
    return out


# --------------------------------------------------------------------------
# maximal subalgebras and the Frattini ideal
# --------------------------------------------------------------------------


def is_maximal(L: LieAlgebra, M: Subspace, budget: float | None = None) -> Verdict:
    """``M`` proper and ``<M, v> = L`` for every line of ``L/M``."""
    if not L.is_subalgebra(M):
        return Verdict.no("not a subalgebra")
    if M == L.whole():
        return Verdict.no("not proper")
    budget = budgets().vectors if budget is None else budget
    sec = SectionCoords(L.whole(), M)
    try:
        pts = projective_points(sec.dim, L.p, budget=budget * max(sec.dim, 1))
    except EnumerationBudgetError as exc:
        return Verdict.unknown(str(exc))
    for c in pts:
        v = sec.lift(c)
        if _close(L, M + L.span(v), "subalgebra") != L.whole():
            return Verdict.no("a larger proper subalgebra exists")
    return Verdict.yes(M)


@dataclass
class MaximalsAndFrattini:
    maximals: list[Subspace]
    frattini: Subspace
    mode: str  # "exhaustive" or "witness"

    @property
    def certified(self) -> bool:
        # a partial list of maximals bounds phi from above, so a zero bound is exact
        return self.mode == "exhaustive" or self.frattini.dim == 0


def maximal_subalgebras_and_frattini(L: LieAlgebra, extra_candidates=(),
                                     budget: float | None = None) -> MaximalsAndFrattini:
    """Maximal subalgebras and ``phi(L)``.

    Exhaustive when every subspace can be scanned; otherwise the maximals are
    those found among ``extra_candidates`` and complements of minimal ideals,
    and ``phi`` is only an upper bound.
    """
    memo = L._memo
    if not extra_candidates and "maximals" in memo:
        return memo["maximals"]
    n = L.dim
    if n == 0:
        return MaximalsAndFrattini([], L.zero(), "exhaustive")
    try:
        subs = list(enumerate_subspaces(n, L.p, dims=range(n), budget=budget))
        mode = "exhaustive"
    except EnumerationBudgetError:
        subs = None
        mode = "witness"
    maximals: list[Subspace] = []
    if subs is not None:
        by_dim: dict[int, list[Subspace]] = {}
        for s in subs:
            by_dim.setdefault(s.dim, []).append(s)
        for d in range(n - 1, -1, -1):
            for s in by_dim.get(d, []):
                if L.is_subalgebra(s) and not any(s <= m for m in maximals):
                    maximals.append(s)
    else:
        cands = list(extra_candidates)
        for a in minimal_ideals(L):
            try:
                cands.extend(complements_of(L, a, L.zero()).complements)
            except EnumerationBudgetError:
                pass
        seen = set()
        for c in cands:
            if c.key in seen:
                continue
            seen.add(c.key)
            if is_maximal(L, c).is_yes:
                maximals.append(c)
    maximals.sort(key=lambda s: s.sort_key)
    inter = L.whole()
    for m in maximals:
        inter = inter & m
    out = MaximalsAndFrattini(maximals, core(L, inter), mode)
    if not extra_candidates:
        memo["maximals"] = out
    return out


def frattini(L: LieAlgebra) -> Subspace:
    return maximal_subalgebras_and_frattini(L).frattini


# --------------------------------------------------------------------------
# complements and supplements of chief factors
# --------------------------------------------------------------------------


@dataclass
class ComplementSearch:
    complements: list[Subspace]
    exhaustive: bool
    reason: str = ""


def complements_of(L: LieAlgebra, a: Subspace, b: Subspace, budget: float | None = None) -> ComplementSearch:
    """All subalgebras ``M`` with ``M + a = L`` and ``M & a = b`` (``b <= a`` ideals)."""
    memo = L._memo.setdefault("complements", {})
    key = (a.key, b.key)
    if key in memo:
        return memo[key]
    qm = quotient(L, b)
    search = enumerate_splittings(qm.quotient, qm.image(a), budget=budget)
    comps = sorted({c.key: qm.preimage(c) for c in search.complements()}.values(), key=lambda s: s.sort_key)
    out = ComplementSearch(comps, True)
    memo[key] = out
    return out


def fitting_null(L: LieAlgebra, x) -> Subspace:
    """``L_0(ad x)``: the generalised 0-eigenspace of ``ad x``."""
    ad = L.ad(x)
    power = np.eye(L.dim, dtype=np.int64)
    for _ in range(L.dim):
        power = power @ ad % L.p
    return L.span(nullspace(power, L.p))


def _fitting_supplement(L: LieAlgebra, a: Subspace, b: Subspace) -> Subspace | None:
    """A proper supplement of a nonabelian chief factor: ``L_0(ad x)`` in ``L/b`` for some
    ``x`` in ``a`` whose adjoint is not nilpotent (then ``L = L_0 + [x, L]`` and ``[x, L] <= a``)."""
    qm = quotient(L, b)
    Q = qm.quotient
    ahat = qm.image(a)
    cands = [v for v in ahat.basis]
    cands += [(u + v) % L.p for i, u in enumerate(ahat.basis) for v in ahat.basis[i + 1:]]
    for x in cands:
        n0 = fitting_null(Q, x)
        if n0 != Q.whole():
            M = qm.preimage(n0)
            if M + a == L.whole():
                return M
    try:
        pts = projective_points(ahat.dim, L.p, budget=budgets().vectors)
    except EnumerationBudgetError:
        return None
    sec = SectionCoords(ahat, Q.zero())
    for c in pts:
        n0 = fitting_null(Q, sec.lift(c))
        if n0 != Q.whole():
            M = qm.preimage(n0)
            if M + a == L.whole():
                return M
    return None


@dataclass
class FactorComplements:
    a: Subspace
    b: Subspace
    complements: list[Subspace]
    supplements: list[Subspace]  # proper supplements found (complements come first)
    is_c: Verdict
    is_m: Verdict
    supplemented: Verdict  # a proper supplement exists, i.e. the factor is not Frattini
    maximal_complements: list[Subspace] = field(default_factory=list)

    @property
    def is_frattini(self) -> Verdict:
        return self.supplemented.negate()


def factor_complements(L: LieAlgebra, a: Subspace, b: Subspace, budget: float | None = None) -> FactorComplements:
    if not is_chief_factor(L, a, b):
        raise NotASectionError("expected a chief factor a/b")
    memo = L._memo.setdefault("factor_complements", {})
    key = (a.key, b.key)
    if key in memo:
        return memo[key]
    try:
        cs = complements_of(L, a, b, budget=budget)
        comps, exhaustive, reason = cs.complements, True, ""
    except EnumerationBudgetError as exc:
        comps, exhaustive, reason = [], False, str(exc)
    if comps:
        is_c = Verdict.yes(comps[0], mode="exhaustive" if exhaustive else "witness")
    elif exhaustive:
        is_c = Verdict.no("exhaustive complement search")
    else:
        is_c = Verdict.unknown(reason)

    maximal_comps, undecided = [], False
    for M in comps:
        v = is_maximal(L, M)
        if v.is_yes:
            maximal_comps.append(M)
        undecided |= v.is_unknown
    if maximal_comps:
        is_m = Verdict.yes(maximal_comps[0])
    elif exhaustive and not undecided:
        is_m = Verdict.no("no complement is maximal")
    else:
        is_m = Verdict.unknown(reason or "maximality undecided")

    supplements = list(comps)
    abelian = is_abelian_factor(L, a, b)
    if supplements:
        supplemented = Verdict.yes(supplements[0])
    elif abelian:
        # a supplement M meets the abelian factor in an ideal, so it is a complement or all of L
        supplemented = Verdict.no("abelian factor with no complement") if exhaustive else Verdict.unknown(reason)
    else:
        M = _fitting_supplement(L, a, b)
        if M is not None:
            supplements.append(M)
            supplemented = Verdict.yes(M, mode="witness")
        else:
            supplemented = Verdict.unknown("no proper supplement found")
    out = FactorComplements(a, b, comps, supplements, is_c, is_m, supplemented, maximal_comps)
    memo[key] = out
    return out


def is_abelian_factor(L: LieAlgebra, a: Subspace, b: Subspace) -> bool:
    ann = b.annihilator()
    for x in a.basis:
        for y in a.basis:
            if np.any(ann @ L.bracket(x, y) % L.p):
                return False
    return True


# --------------------------------------------------------------------------
# socle, core, primitivity
# --------------------------------------------------------------------------


class PrimitiveKind(str, Enum):
    NOT_PRIMITIVE = "not-primitive"
    TYPE1 = "type1"
    TYPE2 = "type2"
    TYPE3 = "type3"
    UNKNOWN = "unknown"


@dataclass
class PrimitiveType:
    kind: PrimitiveKind
    witness: Subspace | None = None
    checks: dict = field(default_factory=dict)


def core_free_maximal(L: LieAlgebra, budget: float | None = None) -> Verdict:
    mf = maximal_subalgebras_and_frattini(L, budget=budget)
    for M in mf.maximals:
        if core(L, M).dim == 0:
            return Verdict.yes(M, mode=mf.mode)
    if mf.mode == "exhaustive":
        return Verdict.no("every maximal subalgebra has a nonzero core")
    return Verdict.unknown("maximal subalgebras only partly known")


def primitive_type(L: LieAlgebra, budget: float | None = None) -> PrimitiveType:
    v = core_free_maximal(L, budget=budget)
    if v.is_no:
        return PrimitiveType(PrimitiveKind.NOT_PRIMITIVE)
    if v.is_unknown:
        return PrimitiveType(PrimitiveKind.UNKNOWN)
    U = v.witness
    mins = minimal_ideals(L)
    abelian = [is_abelian_factor(L, m, L.zero()) for m in mins]
    checks: dict = {}
    if len(mins) == 1 and abelian[0]:
        kind = PrimitiveKind.TYPE1
        A = mins[0]
        checks["complemented_by_U"] = (A + U == L.whole()) and (A & U).dim == 0
        checks["self_centralizing"] = centralizer(L, A) == A
    elif len(mins) == 1:
        kind = PrimitiveKind.TYPE2
        checks["centralizer_zero"] = centralizer(L, mins[0]).dim == 0
    elif len(mins) == 2 and not any(abelian):
        kind = PrimitiveKind.TYPE3
        A, B = mins
        checks["A_complements_U"] = A + U == L.whole() and (A & U).dim == 0
        checks["B_complements_U"] = B + U == L.whole() and (B & U).dim == 0
        checks["centralizers_swap"] = centralizer(L, A) == B and centralizer(L, B) == A
        checks["equal_dims"] = A.dim == B.dim == ((A + B) & U).dim
    else:
        raise AssertionError("primitive algebra with an impossible socle")
    return PrimitiveType(kind, U, checks)


def socle_core_primitive(L: LieAlgebra, u: Subspace | None = None) -> dict:
    out = {"socle": socle(L), "primitive": primitive_type(L)}
    if u is not None:
        out["core"] = core(L, u)
    return out


def check_centralizers_under_core_free(L: LieAlgebra, U: Subspace) -> dict:
    """For a core-free maximal ``U``: every nonzero ideal ``A`` has ``C_L(A) & U = 0``
    and ``C_L(A)`` is 0 or a minimal ideal."""
    mins = {m.key for m in minimal_ideals(L)}
    report = {}
    for A in all_ideals(L):
        if A.dim == 0:
            continue
        C = centralizer(L, A)
        report[A.key] = ((C & U).dim == 0, C.dim == 0 or C.key in mins)
    return report


__all__ = [
    "ChiefSeries",
    "ComplementSearch",
    "FactorComplements",
    "MaximalsAndFrattini",
    "PrimitiveKind",
    "PrimitiveType",
    "all_chief_series",
    "all_ideals",
    "center",
    "centralizer_of_section",
    "check_centralizers_under_core_free",
    "chief_factors",
    "complements_of",
    "core_free_maximal",
    "covers",
    "factor_complements",
    "fitting_null",
    "frattini",
    "ideal_closure",
    "is_abelian_factor",
    "is_chief_factor",
    "is_maximal",
    "maximal_subalgebras_and_frattini",
    "minimal_ideals",
    "primitive_type",
    "socle",
    "socle_core_primitive",
]
