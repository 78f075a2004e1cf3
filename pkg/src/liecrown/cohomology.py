"""1-cocycles of an L-algebra, twisted actions, E_L and L-equivalence.

A cocycle ``beta`` is stored as a ``dim A x dim L`` matrix whose column ``i``
is ``beta(x_i)``.  For an abelian carrier ``Z^1`` is a linear space and is
found by solving a linear system; otherwise it is enumerated as the set of
splittings of ``A x| L -> L`` (see :mod:`liecrown.splitting`).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, NamedTuple

import numpy as np

from .exactlinalg import EnumerationBudgetError, Subspace, budgets, check_budget, nullspace
from .liecore import LieAlgebra, LieAlgebraError, NotASectionError, core, quotient
from .lmodule import (
    LAlgebraModule,
    chief_factor_module,
    i_and_c,
    is_l_isomorphism,
    l_isomorphism,
    semidirect_sum,
)
from .splitting import enumerate_splittings
from .verdict import Verdict


class OutOfScopeError(LieAlgebraError):
    """The requested computation is only defined for a narrower class of inputs."""


class CocycleError(LieAlgebraError):
    pass


def cocycle_defect(m: LAlgebraModule, beta) -> np.ndarray:
    """``beta([x_i,x_j]) - x_i.beta(x_j) + x_j.beta(x_i) - beta(x_i)beta(x_j)`` for all i, j."""
    L, A, p = m.acting, m.carrier, m.p
    beta = np.asarray(beta, dtype=np.int64) % p
    lhs = np.einsum("ijk,sk->ijs", L.sc, beta)
    act = np.einsum("ist,tj->ijs", m.action, beta)  # x_i . beta(x_j)
    prod = np.einsum("si,tj,stu->iju", beta, beta, A.sc)
    return (lhs - act + act.transpose(1, 0, 2) - prod) % p


def is_cocycle(m: LAlgebraModule, beta) -> bool:
    beta = np.asarray(beta, dtype=np.int64)
    if beta.shape != (m.dim, m.acting.dim):
        return False
    return not np.any(cocycle_defect(m, beta))


@dataclass(frozen=True)
class Cocycle:
    module: LAlgebraModule
    map: np.ndarray

    def __call__(self, x) -> np.ndarray:
        return (self.map @ np.asarray(x, dtype=np.int64)) % self.module.p

    def kernel(self) -> Subspace:
        return self.module.acting.span(nullspace(self.map, self.module.p))


@dataclass
class CocycleSet:
    module: LAlgebraModule
    abelian_basis: np.ndarray | None = None  # h x dim A x dim L
    explicit_list: np.ndarray | None = None  # N x dim A x dim L
    completeness: str = "exhaustive"

    @property
    def linear(self) -> bool:
        return self.abelian_basis is not None

    @property
    def dim(self) -> int:
        if self.abelian_basis is None:
            raise OutOfScopeError("cocycles into a nonabelian carrier do not form a linear space")
        return self.abelian_basis.shape[0]

    def count(self) -> int:
        if self.abelian_basis is not None:
            return self.module.p ** self.dim
        return len(self.explicit_list)

    def members(self, budget: float | None = None) -> Iterator[np.ndarray]:
        """All cocycles in canonical order (coefficient tuples for a linear space)."""
        if self.abelian_basis is None:
            yield from self.explicit_list
            return
        p, h = self.module.p, self.dim
        budget = budgets().cocycles if budget is None else budget
        check_budget("listing a linear cocycle space", float(p) ** h, budget)
        basis = self.abelian_basis
        for coeffs in itertools.product(range(p), repeat=h):
            yield np.einsum("t,tij->ij", np.array(coeffs, dtype=np.int64), basis) % p if h else \
                np.zeros((self.module.dim, self.module.acting.dim), dtype=np.int64)

    def cocycles(self) -> list[Cocycle]:
        return [Cocycle(self.module, b) for b in self.members()]

    def spanning(self) -> np.ndarray:
        """Cocycles whose kernels cut out ``E_L``: the basis, or the full list."""
        return self.abelian_basis if self.abelian_basis is not None else self.explicit_list


def _linear_system(m: LAlgebraModule, with_product: bool = False) -> np.ndarray:
    """Rows of the linear cocycle conditions on vec(beta) (row-major, index s*dL + k)."""
    L, p = m.acting, m.p
    da, dl = m.dim, L.dim
    rows = []
    eye = np.eye(da, dtype=np.int64)
    for i in range(dl):
        for j in range(i + 1, dl):
            M = np.zeros((da, da, dl), dtype=np.int64)
            M += np.einsum("st,k->stk", eye, L.sc[i, j])
            M[:, :, j] -= m.action[i]
            M[:, :, i] += m.action[j]
            rows.append(M.reshape(da, da * dl))
    if not rows:
        return np.zeros((0, da * dl), dtype=np.int64)
    return np.vstack(rows) % p


_CACHE: dict = {}


def cocycle_space(m: LAlgebraModule, method: str = "auto", budget: float | None = None) -> CocycleSet:
    """``Z^1(L, A)``; ``method`` is ``auto``, ``linear`` or ``enumerate``."""
    if method == "auto":
        method = "linear" if m.is_abelian() else "enumerate"
    if method == "linear" and not m.is_abelian():
        raise OutOfScopeError("linear solving needs an abelian carrier")
    key = (m.key, method)
    hit = _CACHE.get(key)
    if hit is not None:
        return hit
    da, dl = m.dim, m.acting.dim
    if method == "linear":
        sol = nullspace(_linear_system(m), m.p)
        basis = sol.reshape(-1, da, dl) if sol.size else np.zeros((0, da, dl), dtype=np.int64)
        out = CocycleSet(m, abelian_basis=basis)
    elif method == "enumerate":
        sd = semidirect_sum(m, check=False)
        search = enumerate_splittings(sd.algebra, sd.a_image, budget=budget)
        # the quotient representatives are the L-coordinates, so sigma(x_i) = (beta(x_i), x_i)
        betas = search.sections[:, :da, :].copy()
        out = CocycleSet(m, explicit_list=betas)
    else:
        raise ValueError(f"unknown method {method!r}")
    if len(_CACHE) > 2048:
        _CACHE.clear()
    _CACHE[key] = out
    return out


def coboundaries(m: LAlgebraModule) -> np.ndarray:
    """Basis (as ``h x dim A x dim L``) of ``B^1``: the maps ``x -> x.a``."""
    if not m.is_abelian():
        raise OutOfScopeError("coboundaries are only used for abelian carriers")
    da, dl = m.dim, m.acting.dim
    maps = np.transpose(m.action, (2, 1, 0)).reshape(da, da * dl)  # row s: x_i -> x_i.e_s
    sol = Subspace.span(m.p, da * dl, maps)
    return sol.basis.reshape(sol.dim, da, dl)


def h1_dim(m: LAlgebraModule) -> int:
    return cocycle_space(m).dim - coboundaries(m).shape[0]


def twist(m: LAlgebraModule, beta) -> LAlgebraModule:
    """``A_beta``: the action ``x -> ad_A(beta(x)) + theta(x)``."""
    beta = beta.map if isinstance(beta, Cocycle) else np.asarray(beta, dtype=np.int64)
    if not np.any(beta % m.p):
        return m
    adA = m.carrier.ad_basis()  # adA[s] = ad(e_s)
    action = (np.einsum("si,suv->iuv", beta, adA) + m.action) % m.p
    try:
        return LAlgebraModule(m.acting, m.carrier, action, check=True)
    except LieAlgebraError as exc:
        raise CocycleError(f"twisting by a non-cocycle: {exc}") from exc


@dataclass(frozen=True)
class ELResult:
    subspace: Subspace
    exact: bool


def e_l(m: LAlgebraModule, budget: float | None = None) -> ELResult:
    """Raw ``E_L(A)``: common kernel of all cocycles.  On a budget overrun the
    only safe statement is ``E_L <= L``, tagged inexact."""
    L = m.acting
    try:
        cs = cocycle_space(m, budget=budget)
    except EnumerationBudgetError:
        return ELResult(L.whole(), False)
    maps = cs.spanning()
    if maps.shape[0] == 0:
        return ELResult(L.whole(), True)
    return ELResult(L.span(nullspace(maps.reshape(-1, L.dim), m.p)), True)


@dataclass(frozen=True)
class ECore:
    via_centralizers: Subspace
    via_complements: Subspace

    @property
    def agree(self) -> bool:
        return self.via_centralizers == self.via_complements


def e_core(m: LAlgebraModule, budget: float | None = None) -> ECore:
    """Core of ``E_L(A)`` in ``A x| L``, computed as the common centralizer of all
    twists and as the core of the intersection of all complements."""
    L, p = m.acting, m.p
    cs = cocycle_space(m, budget=budget)
    maps = list(cs.members())
    adA = m.carrier.ad_basis()
    da, dl = m.dim, L.dim
    # x in C_L(A_alpha) <=> sum_i x_i (ad(alpha(x_i)) + theta_i) = 0
    blocks = []
    for beta in maps:
        twisted = (np.einsum("si,suv->iuv", beta, adA) + m.action) % p
        blocks.append(twisted.reshape(dl, -1).T)
    via_c = L.span(nullspace(np.vstack(blocks), p)) if blocks else L.whole()
    sd = semidirect_sum(m, check=False)
    S = sd.algebra
    inter = S.whole()
    for beta in maps:
        graph = S.span(np.hstack([beta.T, np.eye(dl, dtype=np.int64)]))
        inter = inter & graph
    cored = core(S, inter)
    via_h = L.span(cored.basis[:, da:]) if cored.dim else L.zero()
    return ECore(via_c, via_h)


# ---------------------------------------------------------------- equivalence


@dataclass(frozen=True)
class EquivalenceWitness:
    beta: np.ndarray
    phi: np.ndarray

    def check(self, m1: LAlgebraModule, m2: LAlgebraModule) -> bool:
        return is_cocycle(m2, self.beta) and is_l_isomorphism(self.phi, m1, twist(m2, self.beta))


def l_equivalent(m1: LAlgebraModule, m2: LAlgebraModule, budget: float | None = None) -> Verdict:
    """Is ``A ~_L B``?  A YES carries an :class:`EquivalenceWitness`."""
    if m1.acting != m2.acting:
        raise ValueError("modules over different algebras")
    if m1.dim != m2.dim:
        return Verdict.no("dimensions differ")
    if m1.is_abelian() != m2.is_abelian():
        return Verdict.no("only one carrier is abelian")
    zero = np.zeros((m2.dim, m2.acting.dim), dtype=np.int64)
    if m1.is_abelian():
        v = l_isomorphism(m1, m2, budget=budget)
        if v.is_yes:
            return Verdict.yes(EquivalenceWitness(zero, v.witness), mode=v.mode)
        return v
    try:
        cs = cocycle_space(m2, budget=budget)
    except EnumerationBudgetError as exc:
        return Verdict.unknown(str(exc))
    undecided = False
    for beta in cs.members():
        v = l_isomorphism(m1, twist(m2, beta), budget=budget)
        if v.is_yes:
            return Verdict.yes(EquivalenceWitness(beta, v.witness), mode=v.mode)
        undecided |= v.is_unknown
    if undecided:
        return Verdict.unknown("some twisted isomorphism searches were cut short")
    return Verdict.no("no twist is L-isomorphic")


# ---------------------------------------------------------------- complements


def check_prop2(L: LieAlgebra, a: Subspace, b: Subspace, budget: float | None = None) -> dict:
    """Complement of the nonabelian chief factor ``a/b`` from a cocycle whose twist
    is centralized by ``a``; the complement is the kernel of that cocycle."""
    if not (b < a and L.is_ideal(a) and L.is_ideal(b)):
        raise NotASectionError("expected ideals b < a")
    m = chief_factor_module(L, a, b)
    if m.is_abelian():
        raise OutOfScopeError("the factor is abelian")
    out = {"complemented": None, "witness_module": None, "complement": None, "cocycle": None}
    try:
        cs = cocycle_space(m, budget=budget)
    except EnumerationBudgetError as exc:
        out["complemented"] = Verdict.unknown(str(exc))
        return out
    for beta in cs.members():
        tw = twist(m, beta)
        if not a <= i_and_c(tw)["C_L"]:
            continue
        M = L.span(nullspace(beta, L.p))
        if not (M + a == L.whole() and (M & a) == b and L.is_subalgebra(M)):
            raise CocycleError("kernel construction did not give a complement")
        out.update(complemented=Verdict.yes(M), witness_module=tw, complement=M, cocycle=beta)
        return out
    out["complemented"] = Verdict.no("no twist is centralized by the factor")
    return out


# ---------------------------------------------------------------- inflation


class InflationCheck(NamedTuple):
    in_e_l: bool
    same_z1: bool
    same_h1: bool


def induced_module(m: LAlgebraModule, n: Subspace) -> tuple[LAlgebraModule, object]:
    """``A`` as an ``L/N``-algebra, for an ideal ``N`` acting trivially."""
    L = m.acting
    if not n <= i_and_c(m)["C_L"]:
        raise OutOfScopeError("N does not act trivially")
    qm = quotient(L, n)
    action = np.einsum("ka,kuv->auv", qm.section, m.action) % m.p
    return LAlgebraModule(qm.quotient, m.carrier, action), qm


def check_theorem2(L: LieAlgebra, n: Subspace, m: LAlgebraModule) -> InflationCheck:
    """Three statements about an abelian irreducible ``A`` and ``N <= C_L(A)``:
    ``N <= E_L(A)``, ``Z^1(L,A) = Z^1(L/N,A)`` and ``H^1(L,A) = H^1(L/N,A)``."""
    if not m.is_abelian():
        raise OutOfScopeError("only abelian carriers")
    if m.acting != L:
        raise ValueError("module is over a different algebra")
    mq, _ = induced_module(m, n)
    z_l, z_q = cocycle_space(m).dim, cocycle_space(mq).dim
    # inflation is injective, so equality of the spaces is equality of dimensions
    return InflationCheck(
        in_e_l=n <= e_l(m).subspace,
        same_z1=z_l == z_q,
        same_h1=h1_dim(m) == h1_dim(mq),
    )


__all__ = [
    "Cocycle",
    "CocycleError",
    "CocycleSet",
    "ECore",
    "ELResult",
    "EquivalenceWitness",
    "OutOfScopeError",
    "InflationCheck",
    "check_prop2",
    "check_theorem2",
    "coboundaries",
    "cocycle_defect",
    "cocycle_space",
    "e_core",
    "e_l",
    "h1_dim",
    "induced_module",
    "is_cocycle",
    "l_equivalent",
    "twist",
]
