"""L-algebras: a Lie algebra ``A`` with an action of ``L`` by derivations."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .exactlinalg import (
    EnumerationBudgetError,
    SectionCoords,
    Subspace,
    budgets,
    check_budget,
    inverse,
    nullspace,
    projective_points,
)
from .liecore import LieAlgebra, LieAlgebraError, NotASectionError, center
from .verdict import Verdict


class InvalidActionError(LieAlgebraError):
    def __init__(self, message: str, pair: tuple[int, int] | None = None):
        super().__init__(message)
        self.pair = pair


class LAlgebraModule:
    """``L`` acting on the Lie algebra ``A``; ``action[i]`` is the matrix of ``x_i``."""

    def __init__(self, acting: LieAlgebra, carrier: LieAlgebra, action, check: bool = True,
                 origin: tuple[Subspace, Subspace] | None = None):
        if acting.p != carrier.p:
            raise InvalidActionError("acting algebra and carrier live over different fields")
        p = acting.p
        action = np.asarray(action, dtype=np.int64) % p
        if action.size == 0:
            action = np.zeros((acting.dim, carrier.dim, carrier.dim), dtype=np.int64)
        if action.shape != (acting.dim, carrier.dim, carrier.dim):
            raise InvalidActionError(
                f"expected {acting.dim} matrices of size {carrier.dim}, got shape {action.shape}"
            )
        action.setflags(write=False)
        self.acting = acting
        self.carrier = carrier
        self.action = action
        self.p = p
        self.origin = origin
        self._key = None
        if check:
            self.validate()

    @property
    def dim(self) -> int:
        return self.carrier.dim

    @property
    def key(self) -> tuple:
        if self._key is None:
            self._key = (self.acting.key, self.carrier.key, self.action.tobytes())
        return self._key

    def __repr__(self) -> str:
        tag = " section" if self.origin is not None else ""
        return f"LAlgebraModule{tag}(dim L={self.acting.dim}, dim A={self.dim}, p={self.p})"

    def theta(self, x) -> np.ndarray:
        return np.einsum("i,ijk->jk", np.asarray(x, dtype=np.int64), self.action) % self.p

    def act(self, x, a) -> np.ndarray:
        return self.theta(x) @ np.asarray(a, dtype=np.int64) % self.p

    def is_abelian(self) -> bool:
        return self.carrier.is_abelian()

    def validate(self) -> None:
        p, L, A, th = self.p, self.acting, self.carrier, self.action
        # theta([x_i, x_j]) = [theta_i, theta_j]
        lhs = np.einsum("ijk,kab->ijab", L.sc, th) % p
        rhs = (np.einsum("iab,jbc->ijac", th, th) - np.einsum("jab,ibc->ijac", th, th)) % p
        bad = np.argwhere((lhs != rhs).any(axis=(2, 3)))
        if bad.size:
            i, j = (int(v) for v in bad[0])
            raise InvalidActionError(f"action is not a homomorphism on basis pair ({i}, {j})", (i, j))
        # x.(a b) = (x.a) b + a (x.b)
        if A.dim and not A.is_abelian():
            xab = np.einsum("abk,ilk->ilab", A.sc, th)  # theta_i([a_a, a_b])
            left = np.einsum("ika,kbl->iabl", th, A.sc)  # [theta_i a_a, a_b]
            right = np.einsum("ikb,akl->iabl", th, A.sc)  # [a_a, theta_i a_b]
            defect = (np.transpose(xab, (0, 2, 3, 1)) - left - right) % p
            bad = np.argwhere(defect.any(axis=(1, 2, 3)))
            if bad.size:
                i = int(bad[0][0])
                ab = np.argwhere(defect[i].any(axis=2))[0]
                raise InvalidActionError(
                    f"x_{i} does not act as a derivation on carrier pair ({ab[0]}, {ab[1]})",
                    (int(ab[0]), int(ab[1])),
                )


def make_module(L: LieAlgebra, A: LieAlgebra, action) -> LAlgebraModule:
    return LAlgebraModule(L, A, action)


def trivial_module(L: LieAlgebra, A: LieAlgebra) -> LAlgebraModule:
    return LAlgebraModule(L, A, np.zeros((L.dim, A.dim, A.dim), dtype=np.int64))


def chief_factor_module(L: LieAlgebra, a: Subspace, b: Subspace, check: bool = True) -> LAlgebraModule:
    """The section ``a/b`` (ideals ``b <= a``) as an L-algebra with the adjoint action."""
    if check and not (b <= a and L.is_ideal(a) and L.is_ideal(b)):
        raise NotASectionError("expected ideals b <= a")
    memo = L._memo.setdefault("section_modules", {})
    hit = memo.get((a.key, b.key))
    if hit is not None:
        return hit
    sec = SectionCoords(a, b)
    k = sec.dim
    reps = sec.reps
    p = L.p
    if k:
        br = np.einsum("ai,bj,ijk->abk", reps, reps, L.sc) % p
        upper = sec(br.reshape(-1, L.dim)).reshape(k, k, k)
        # action of e_i on rep_s, projected: theta_i[:, s]
        img = np.einsum("ikj,sj->isk", L.ad_basis(), reps) % p  # [e_i, r_s]
        action = np.transpose(sec(img.reshape(-1, L.dim)).reshape(L.dim, k, k), (0, 2, 1))
    else:
        upper = np.zeros((0, 0, 0), dtype=np.int64)
        action = np.zeros((L.dim, 0, 0), dtype=np.int64)
    A = LieAlgebra(p, k, upper, check=False)
    m = LAlgebraModule(L, A, action, check=False, origin=(a, b))
    memo[(a.key, b.key)] = m
    return m


def adjoint_module(L: LieAlgebra) -> LAlgebraModule:
    return chief_factor_module(L, L.whole(), L.zero())


def ad_carrier(A: LieAlgebra) -> np.ndarray:
    """``ad_carrier(A)[s]`` is the matrix of ``ad_A(a_s)``."""
    return A.ad_basis()


# --------------------------------------------------------------------------
# semidirect sums
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class SemidirectSum:
    algebra: LieAlgebra
    embed_a: np.ndarray  # (dim A + dim L) x dim A
    embed_l: np.ndarray  # (dim A + dim L) x dim L
    module: LAlgebraModule

    @property
    def a_image(self) -> Subspace:
        return self.algebra.span(self.embed_a.T)

    @property
    def l_image(self) -> Subspace:
        return self.algebra.span(self.embed_l.T)


def semidirect_sum(m: LAlgebraModule, check: bool = True) -> SemidirectSum:
    """``A x| L`` on the basis (A-basis, L-basis) with ``(a1,x1)(a2,x2) = (x1.a2 - x2.a1 + a1a2, [x1,x2])``."""
    L, A, p = m.acting, m.carrier, m.p
    da, dl = A.dim, L.dim
    n = da + dl
    upper = np.zeros((n, n, n), dtype=np.int64)
    upper[:da, :da, :da] = A.sc
    # [(0, x_i), (a_s, 0)] = (x_i . a_s, 0)
    for i in range(dl):
        for s in range(da):
            col = m.action[i][:, s]
            upper[da + i, s, :da] = col
            upper[s, da + i, :da] = (-col) % p
    upper[da:, da:, da:] = L.sc
    S = LieAlgebra(p, n, upper, check=check)
    eye = np.eye(n, dtype=np.int64)
    return SemidirectSum(S, eye[:, :da].copy(), eye[:, da:].copy(), m)


# --------------------------------------------------------------------------
# submodules, homomorphisms, isomorphisms
# --------------------------------------------------------------------------


def submodule_closure(m: LAlgebraModule, gens) -> Subspace:
    """Span-and-act closure (the L-submodule generated by ``gens``)."""
    span = Subspace.span(m.p, m.dim, gens)
    while span.dim:
        img = np.einsum("ijk,ak->iaj", m.action, span.basis).reshape(-1, m.dim) % m.p
        if span.contains_all(img):
            return span
        span = Subspace.span(m.p, m.dim, np.vstack([span.basis, img]))
    return span


def is_irreducible(m: LAlgebraModule, budget: float | None = None) -> bool:
    if m.dim == 0:
        return False
    budget = budgets().vectors if budget is None else budget
    check_budget("irreducibility test", float(m.p) ** m.dim, budget)
    for v in projective_points(m.dim, m.p, budget=float("inf")):
        if submodule_closure(m, v).dim < m.dim:
            return False
    return True


def _spin(mats: np.ndarray, v, p: int) -> Subspace:
    n = mats.shape[1]
    span = Subspace.span(p, n, v)
    while span.dim:
        img = np.einsum("ijk,ak->iaj", mats, span.basis).reshape(-1, n) % p
        if span.contains_all(img):
            break
        span = Subspace.span(p, n, np.vstack([span.basis, img]))
    return span


def norton_irreducible(m: LAlgebraModule, tries: int = 200, seed: int = 0,
                       budget: float | None = None) -> Verdict:
    """Exact irreducibility test through a singular element ``a`` of the action algebra.

    A proper submodule ``S`` either meets ``ker a`` or its annihilator meets
    ``ker a^T``, so spinning every line of both kernels decides the question.
    Elements with small kernels are searched for first; Unknown only when the
    smallest kernel found still has too many lines.
    """
    n, p = m.dim, m.p
    if n == 0:
        return Verdict.no("zero module")
    if n == 1:
        return Verdict.yes(np.eye(1, dtype=np.int64))
    mats = m.action
    rng = np.random.default_rng(seed)
    eye = np.eye(n, dtype=np.int64)
    gens = list(mats) if len(mats) else [np.zeros((n, n), dtype=np.int64)]
    best = None
    for _ in range(tries):
        a = np.zeros((n, n), dtype=np.int64)
        for _ in range(3):
            word = eye.copy()
            for _ in range(int(rng.integers(1, 4))):
                word = word @ gens[int(rng.integers(len(gens)))] % p
            a = (a + int(rng.integers(1, p)) * word) % p
        for lam in range(p):
            b = (a - lam * eye) % p
            ker = nullspace(b, p)
            if ker.shape[0] and (best is None or ker.shape[0] < best[1].shape[0]):
                best = (b, ker)
        if best is not None and best[1].shape[0] == 1:
            break
    if best is None:
        best = (np.zeros((n, n), dtype=np.int64), eye.copy())
    b, ker = best
    budget = budgets().vectors if budget is None else budget
    k = ker.shape[0]
    if float(p) ** k > budget:
        return Verdict.unknown(f"smallest kernel found has dimension {k}")
    kt = nullspace(b.T, p)
    mats_t = np.transpose(mats, (0, 2, 1))
    for basis, acting in ((ker, mats), (kt, mats_t)):
        for c in projective_points(k, p, budget=float("inf")):
            if _spin(acting, c @ basis % p, p).dim < n:
                return Verdict.no("a kernel line spins to a proper submodule")
    return Verdict.yes(b, mode="witness")


def irreducible(m: LAlgebraModule, budget: float | None = None) -> Verdict:
    """Exhaustive over lines when affordable, otherwise the kernel test above."""
    try:
        flag = is_irreducible(m, budget)
    except EnumerationBudgetError:
        return norton_irreducible(m)
    return Verdict.of(flag, witness=True)


def hom_space(m1: LAlgebraModule, m2: LAlgebraModule) -> np.ndarray:
    """Basis of ``{phi : phi(x.a) = x.phi(a)}``; shape ``(h, dim2, dim1)``."""
    if m1.acting.key != m2.acting.key:
        raise LieAlgebraError("modules over different acting algebras")
    d1, d2, p = m1.dim, m2.dim, m1.p
    if d1 == 0 or d2 == 0:
        return np.zeros((0, d2, d1), dtype=np.int64)
    # row-major vec(phi): vec(phi T1) = (I kron T1^T) vec, vec(T2 phi) = (T2 kron I) vec
    eye1, eye2 = np.eye(d1, dtype=np.int64), np.eye(d2, dtype=np.int64)
    blocks = [
        (np.kron(eye2, t1.T) - np.kron(t2, eye1)) % p for t1, t2 in zip(m1.action, m2.action)
    ]
    if not blocks:
        return np.eye(d1 * d2, dtype=np.int64).reshape(-1, d2, d1)
    sol = nullspace(np.vstack(blocks), p)
    return sol.reshape(-1, d2, d1)


def is_multiplicative(phi: np.ndarray, A1: LieAlgebra, A2: LieAlgebra) -> bool:
    p = A1.p
    # phi([a_s, a_t]) vs [phi a_s, phi a_t]
    lhs = np.einsum("stk,jk->stj", A1.sc, phi) % p
    cols = phi.T  # cols[s] = phi(a_s)
    rhs = np.einsum("si,tj,ijk->stk", cols, cols, A2.sc) % p
    return bool(np.array_equal(lhs, rhs))


def is_intertwining(phi: np.ndarray, m1: LAlgebraModule, m2: LAlgebraModule) -> bool:
    p = m1.p
    return all(
        np.array_equal(phi @ t1 % p, t2 @ phi % p) for t1, t2 in zip(m1.action, m2.action)
    )


def is_l_isomorphism(phi: np.ndarray, m1: LAlgebraModule, m2: LAlgebraModule) -> bool:
    return (
        phi.shape == (m2.dim, m1.dim)
        and m1.dim == m2.dim
        and inverse(phi, m1.p) is not None
        and is_intertwining(phi, m1, m2)
        and is_multiplicative(phi, m1.carrier, m2.carrier)
    )


def l_isomorphism(m1: LAlgebraModule, m2: LAlgebraModule, budget: float | None = None) -> Verdict:
    """Search for an L-isomorphism ``m1 -> m2``; the witness is the matrix."""
    if m1.dim != m2.dim:
        return Verdict.no("dimensions differ")
    if m1.dim == 0:
        return Verdict.yes(np.zeros((0, 0), dtype=np.int64))
    if m1.is_abelian() != m2.is_abelian():
        return Verdict.no("only one carrier is abelian")
    homs = hom_space(m1, m2)
    h = homs.shape[0]
    if h == 0:
        return Verdict.no("no nonzero module homomorphism")
    budget = budgets().homs if budget is None else budget
    p = m1.p
    if float(p) ** h <= budget:
        for coeffs in itertools.product(range(p), repeat=h):
            if not any(coeffs):
                continue
            phi = np.einsum("t,tij->ij", np.array(coeffs, dtype=np.int64), homs) % p
            if is_l_isomorphism(phi, m1, m2):
                return Verdict.yes(phi)
        return Verdict.no("exhaustive search of the intertwiner space")
    for phi in homs:
        if is_l_isomorphism(phi, m1, m2):
            return Verdict.yes(phi, mode="witness")
    return Verdict.unknown(f"intertwiner space of dimension {h} too large to enumerate")


def irreducibility_and_homs(m1: LAlgebraModule, m2: LAlgebraModule) -> dict:
    return {
        "is_irreducible": is_irreducible(m1),
        "hom_space": hom_space(m1, m2),
        "l_isomorphism": l_isomorphism(m1, m2),
    }


def i_and_c(m: LAlgebraModule) -> dict:
    """``C_L(A)`` (kernel of the action) and ``I_L(A)`` (elements acting as inner derivations)."""
    L, A, p = m.acting, m.carrier, m.p
    da = A.dim
    theta_cols = m.action.reshape(L.dim, -1).T  # da^2 x dim L
    if da == 0:
        return {"C_L": L.whole(), "I_L": L.whole()}
    C = L.span(nullspace(theta_cols, p))
    ad_cols = A.ad_basis().reshape(da, -1).T  # da^2 x da
    # theta(x) - ad(a) = 0 in the unknowns (x, a)
    sol = nullspace(np.hstack([theta_cols, (-ad_cols) % p]), p)
    I = L.span(sol[:, : L.dim]) if sol.shape[0] else L.zero()
    return {"C_L": C, "I_L": I}


def carrier_center(m: LAlgebraModule) -> Subspace:
    return center(m.carrier)


__all__ = [
    "InvalidActionError",
    "LAlgebraModule",
    "SemidirectSum",
    "adjoint_module",
    "chief_factor_module",
    "hom_space",
    "i_and_c",
    "irreducibility_and_homs",
    "irreducible",
    "is_irreducible",
    "norton_irreducible",
    "is_l_isomorphism",
    "l_isomorphism",
    "make_module",
    "semidirect_sum",
    "submodule_closure",
    "trivial_module",
]
