"""Lie algebras given by structure constants over GF(p)."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .exactlinalg import PrimeField, SectionCoords, Subspace, nullspace


class LieAlgebraError(ValueError):
    pass


class AntisymmetryError(LieAlgebraError):
    def __init__(self, i: int, j: int):
        super().__init__(f"antisymmetry fails for basis pair ({i}, {j})")
        self.pair = (i, j)


class JacobiError(LieAlgebraError):
    def __init__(self, triple: tuple[int, int, int]):
        super().__init__(f"Jacobi identity fails on basis triple {triple}")
        self.triple = triple


class NotAnIdealError(LieAlgebraError):
    pass


class NotASectionError(LieAlgebraError):
    pass


def jacobi_defect(sc: np.ndarray, p: int) -> np.ndarray:
    """``J[i,j,k] = [e_i,[e_j,e_k]] + [e_j,[e_k,e_i]] + [e_k,[e_i,e_j]]``."""
    a = np.einsum("jkl,ilm->ijkm", sc, sc)
    b = np.einsum("kil,jlm->ijkm", sc, sc)
    c = np.einsum("ijl,klm->ijkm", sc, sc)
    return (a + b + c) % p


class LieAlgebra:
    """Finite-dimensional Lie algebra over GF(p).

    Only the brackets ``[e_i, e_j]`` with ``i < j`` are supplied; the full
    table is synthesised by antisymmetry. Jacobi is checked at construction.
    """

    def __init__(self, p: int, dim: int, upper: np.ndarray, names: Sequence[str] | None = None,
                 check: bool = True):
        self.field = PrimeField(p)
        self.p = p
        self.dim = dim
        sc = np.zeros((dim, dim, dim), dtype=np.int64)
        upper = np.asarray(upper, dtype=np.int64) % p
        iu, ju = np.triu_indices(dim, 1)
        sc[iu, ju] = upper[iu, ju]
        sc[ju, iu] = (-upper[iu, ju]) % p
        sc.setflags(write=False)
        self.sc = sc
        self.names = tuple(names) if names is not None else tuple(f"e{i}" for i in range(dim))
        self._ad = np.ascontiguousarray(np.transpose(sc, (0, 2, 1)))
        self._ad.setflags(write=False)
        self._memo: dict = {}
        if check:
            self.validate_jacobi()

    # -- construction ---------------------------------------------------

    @classmethod
    def from_tensor(cls, p: int, sc, names=None, check: bool = True) -> "LieAlgebra":
        sc = np.asarray(sc, dtype=np.int64) % p
        n = sc.shape[0]
        for i in range(n):
            if np.any(sc[i, i]):
                raise AntisymmetryError(i, i)
            for j in range(i + 1, n):
                if np.any((sc[i, j] + sc[j, i]) % p):
                    raise AntisymmetryError(i, j)
        return cls(p, n, sc, names, check)

    @classmethod
    def from_brackets(cls, p: int, dim: int, brackets: Mapping[tuple[int, int], Mapping[int, int]],
                      names=None, check: bool = True) -> "LieAlgebra":
        """``brackets[(i, j)] = {k: c}`` meaning ``[e_i, e_j] = sum c e_k``; any order of i, j."""
        upper = np.zeros((dim, dim, dim), dtype=np.int64)
        for (i, j), terms in brackets.items():
            if i == j:
                if any(c % p for c in terms.values()):
                    raise AntisymmetryError(i, j)
                continue
            sign = 1 if i < j else -1
            a, b = min(i, j), max(i, j)
            for k, c in terms.items():
                upper[a, b, k] = (upper[a, b, k] + sign * c) % p
        return cls(p, dim, upper, names, check)

    @classmethod
    def abelian(cls, dim: int, p: int) -> "LieAlgebra":
        return cls(p, dim, np.zeros((dim, dim, dim), dtype=np.int64))

    def validate_jacobi(self) -> None:
        bad = np.argwhere(jacobi_defect(self.sc, self.p).any(axis=3))
        for i, j, k in bad:
            if i < j < k:
                raise JacobiError((int(i), int(j), int(k)))
        if bad.size:
            i, j, k = bad[0]
            raise JacobiError((int(i), int(j), int(k)))

    # -- basic operations -------------------------------------------------

    @property
    def key(self) -> tuple:
        return (self.p, self.dim, self.sc.tobytes())

    def __eq__(self, other) -> bool:
        return isinstance(other, LieAlgebra) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        return f"LieAlgebra(p={self.p}, dim={self.dim})"

    def bracket(self, x, y) -> np.ndarray:
        x = np.asarray(x, dtype=np.int64)
        y = np.asarray(y, dtype=np.int64)
        return np.einsum("...i,...j,ijk->...k", x, y, self.sc) % self.p

    def ad(self, x) -> np.ndarray:
        """Matrix of ``ad x`` acting on column vectors."""
        return np.einsum("i,ikj->kj", np.asarray(x, dtype=np.int64), self._ad) % self.p

    def ad_basis(self) -> np.ndarray:
        """``ad_basis()[i]`` is the matrix of ``ad e_i``."""
        return self._ad

    def zero(self) -> Subspace:
        return Subspace.zero(self.p, self.dim)

    def whole(self) -> Subspace:
        return Subspace.full(self.p, self.dim)

    def span(self, vectors=()) -> Subspace:
        return Subspace.span(self.p, self.dim, vectors)

    def basis_vector(self, i: int) -> np.ndarray:
        v = np.zeros(self.dim, dtype=np.int64)
        v[i] = 1
        return v

    def product(self, u: Subspace, v: Subspace) -> Subspace:
        """``[U, V]``."""
        if u.dim == 0 or v.dim == 0:
            return self.zero()
        br = np.einsum("ai,bj,ijk->abk", u.basis, v.basis, self.sc) % self.p
        return self.span(br.reshape(-1, self.dim))

    def is_subalgebra(self, u: Subspace) -> bool:
        if u.dim <= 1:
            return True
        b = u.basis
        br = np.einsum("ai,bj,ijk->abk", b, b, self.sc).reshape(-1, self.dim) % self.p
        return not np.any(u.annihilator() @ br.T % self.p)

    def is_ideal(self, u: Subspace) -> bool:
        if u.dim == 0 or u.dim == self.dim:
            return True
        img = np.einsum("ikj,aj->iak", self._ad, u.basis).reshape(-1, self.dim) % self.p
        return not np.any(u.annihilator() @ img.T % self.p)

    def sub_info(self, u: Subspace) -> "SubInfo":
        return SubInfo(u, self.is_subalgebra(u), self.is_ideal(u))

    def is_abelian(self) -> bool:
        return not np.any(self.sc)


@dataclass(frozen=True)
class SubInfo:
    space: Subspace
    is_subalgebra: bool
    is_ideal: bool


def bracket(L: LieAlgebra, x, y) -> np.ndarray:
    return L.bracket(x, y)


def closure(L: LieAlgebra, gens, mode: str = "subalgebra") -> Subspace:
    """Smallest subalgebra (``mode="subalgebra"``) or ideal containing ``gens``."""
    if mode not in ("subalgebra", "ideal"):
        raise ValueError(f"unknown closure mode {mode!r}")
    if isinstance(gens, Subspace):
        span = gens
    else:
        span = L.span(np.asarray(gens, dtype=np.int64).reshape(-1, L.dim))
    return _close(L, span, mode)


def _close(L: LieAlgebra, span: Subspace, mode: str) -> Subspace:
    while True:
        if span.dim == 0:
            return span
        if mode == "ideal":
            img = np.einsum("ikj,aj->iak", L.ad_basis(), span.basis).reshape(-1, L.dim) % L.p
        else:
            b = span.basis
            img = np.einsum("ai,bj,ijk->abk", b, b, L.sc).reshape(-1, L.dim) % L.p
        if span.contains_all(img):
            return span
        span = L.span(np.vstack([span.basis, img]))


def close_subspace(L: LieAlgebra, span: Subspace, mode: str = "subalgebra") -> Subspace:
    return _close(L, span, mode)


def centralizer_of_section(L: LieAlgebra, a: Subspace, b: Subspace, check: bool = True) -> Subspace:
    """``C_L(a/b) = {x : [x, a] <= b}``."""
    if check and not (b <= a and L.is_ideal(a) and L.is_ideal(b)):
        raise NotASectionError("expected ideals b <= a")
    if a.dim == 0 or a == b:
        return L.whole()
    # [x, a_i] = -ad(a_i) x must lie in b
    ann = b.annihilator()
    rows = [ann @ L.ad(ai) % L.p for ai in a.basis]
    system = np.vstack(rows) if rows else np.zeros((0, L.dim), np.int64)
    return L.span(nullspace(system, L.p))


def idealizer_of_section(L: LieAlgebra, a: Subspace, b: Subspace) -> Subspace:
    """``I_L(a/b) = a + C_L(a/b)``."""
    return a + centralizer_of_section(L, a, b)


def centralizer(L: LieAlgebra, u: Subspace) -> Subspace:
    return centralizer_of_section(L, u, L.zero(), check=False) if u.dim else L.whole()


def center(L: LieAlgebra) -> Subspace:
    if L.dim == 0:
        return L.zero()
    return L.span(nullspace(np.vstack(list(L.ad_basis())), L.p))


def core(L: LieAlgebra, u: Subspace) -> Subspace:
    """Largest ideal of ``L`` contained in ``u``."""
    cur = u
    while cur.dim:
        ann = cur.annihilator()
        # x = c @ cur.basis with ann @ ad(e_i) @ x == 0 for all i
        rows = [ann @ adi @ cur.basis.T % L.p for adi in L.ad_basis()]
        if not rows or not np.any(np.vstack(rows)):
            return cur
        coeffs = nullspace(np.vstack(rows), L.p)
        nxt = L.span(coeffs @ cur.basis % L.p) if coeffs.shape[0] else L.zero()
        if nxt == cur:
            return cur
        cur = nxt
    return cur


def normalizer(L: LieAlgebra, u: Subspace) -> Subspace:
    """``N_L(u) = {x : [x, u] <= u}``."""
    if u.dim == 0:
        return L.whole()
    ann = u.annihilator()
    rows = [ann @ L.ad(ui) % L.p for ui in u.basis]
    return L.span(nullspace(np.vstack(rows), L.p))


@dataclass(frozen=True)
class QuotientMap:
    parent: LieAlgebra
    kernel: Subspace
    quotient: LieAlgebra
    section: np.ndarray  # parent.dim x quotient.dim; columns are coset representatives
    projection: np.ndarray  # quotient.dim x parent.dim

    def project(self, v) -> np.ndarray:
        return (np.asarray(v, dtype=np.int64) @ self.projection.T) % self.parent.p

    def lift(self, c) -> np.ndarray:
        return (np.asarray(c, dtype=np.int64) @ self.section.T) % self.parent.p

    def image(self, u: Subspace) -> Subspace:
        if u.dim == 0:
            return self.quotient.zero()
        return self.quotient.span(self.project(u.basis))

    def preimage(self, u: Subspace) -> Subspace:
        if u.dim == 0:
            return self.kernel
        return self.kernel + self.parent.span(self.lift(u.basis))


def quotient(L: LieAlgebra, ideal: Subspace, check: bool = True) -> QuotientMap:
    """``L / ideal`` with representatives on the non-pivot coordinates of the ideal."""
    if check and not L.is_ideal(ideal):
        raise NotAnIdealError("quotient by a subspace that is not an ideal")
    memo = L._memo.setdefault("quotients", {})
    hit = memo.get(ideal.key)
    if hit is not None:
        return hit
    sec = SectionCoords(L.whole(), ideal)
    reps = sec.reps
    k = sec.dim
    if k:
        br = np.einsum("ai,bj,ijk->abk", reps, reps, L.sc) % L.p
        upper = np.einsum("abk,ck->abc", br, sec.proj) % L.p
    else:
        upper = np.zeros((0, 0, 0), dtype=np.int64)
    Q = LieAlgebra(L.p, k, upper, check=False)
    qm = QuotientMap(L, ideal, Q, reps.T.copy(), sec.proj.copy())
    memo[ideal.key] = qm
    return qm


def derived_series(L: LieAlgebra) -> list[Subspace]:
    series = [L.whole()]
    while True:
        nxt = L.product(series[-1], series[-1])
        if nxt == series[-1]:
            return series
        series.append(nxt)


def lower_central_series(L: LieAlgebra) -> list[Subspace]:
    series = [L.whole()]
    while True:
        nxt = L.product(L.whole(), series[-1])
        if nxt == series[-1]:
            return series
        series.append(nxt)


def is_solvable(L: LieAlgebra) -> bool:
    return derived_series(L)[-1].dim == 0


def jacobi_ok(L: LieAlgebra) -> bool:
    return not np.any(jacobi_defect(L.sc, L.p))


def structure_predicates(L: LieAlgebra) -> dict:
    ds = derived_series(L)
    return {
        "center": center(L),
        "derived_series": ds,
        "is_solvable": ds[-1].dim == 0,
        "jacobi_ok": jacobi_ok(L),
    }


def subalgebra_restriction(L: LieAlgebra, u: Subspace) -> tuple[LieAlgebra, np.ndarray]:
    """The subalgebra ``u`` as a Lie algebra in the basis ``u.basis``; returns (algebra, embedding)."""
    if not L.is_subalgebra(u):
        raise LieAlgebraError("not a subalgebra")
    b = u.basis
    br = np.einsum("ai,bj,ijk->abk", b, b, L.sc) % L.p
    upper = u.coords(br)
    return LieAlgebra(L.p, u.dim, upper, check=False), b.T.copy()


def direct_sum(*algebras: LieAlgebra) -> LieAlgebra:
    p = algebras[0].p
    n = sum(a.dim for a in algebras)
    upper = np.zeros((n, n, n), dtype=np.int64)
    off = 0
    names = []
    for t, a in enumerate(algebras):
        d = a.dim
        upper[off:off + d, off:off + d, off:off + d] = a.sc
        names.extend(f"{nm}_{t}" if len(algebras) > 1 else nm for nm in a.names)
        off += d
    return LieAlgebra(p, n, upper, names)
