"""Built-in algebras, the 36-dimensional example, text I/O and random solvable algebras."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

import numpy as np

from .exactlinalg import Subspace, nullspace, rank, rref
from .liecore import LieAlgebra, LieAlgebraError, close_subspace, direct_sum


class UnsupportedCharacteristicError(ValueError):
    pass


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


# --------------------------------------------------------------------------
# small algebras
# --------------------------------------------------------------------------


def ab(n: int, p: int) -> LieAlgebra:
    return LieAlgebra(p, n, np.zeros((n, n, n), dtype=np.int64), [f"e{i + 1}" for i in range(n)])


def r2(p: int) -> LieAlgebra:
    """Two-dimensional nonabelian: ``[e1, e2] = e2``."""
    return LieAlgebra.from_brackets(p, 2, {(0, 1): {1: 1}}, ["e1", "e2"])


def h3(p: int) -> LieAlgebra:
    """Heisenberg: ``[e1, e2] = e3``."""
    return LieAlgebra.from_brackets(p, 3, {(0, 1): {2: 1}}, ["e1", "e2", "e3"])


def h3ab(p: int) -> LieAlgebra:
    """Heisenberg plus a one-dimensional abelian summand."""
    return LieAlgebra.from_brackets(p, 4, {(0, 1): {2: 1}}, ["e1", "e2", "e3", "e4"])


def sl2(p: int) -> LieAlgebra:
    """Basis ``e, h, f`` with ``[h,e] = 2e``, ``[h,f] = -2f``, ``[e,f] = h``."""
    if p < 3:
        raise UnsupportedCharacteristicError("sl2 needs p >= 3")
    return LieAlgebra.from_brackets(
        p, 3, {(1, 0): {0: 2}, (1, 2): {2: -2}, (0, 2): {1: 1}}, ["e", "h", "f"]
    )


def sl2sl2(p: int) -> LieAlgebra:
    """``sl2 + sl2``; the summands are coordinates 0-2 and 3-5."""
    L = direct_sum(sl2(p), sl2(p))
    return LieAlgebra(p, 6, L.sc, ["e", "h", "f", "e'", "h'", "f'"])


def sl2sl2_summands(L: LieAlgebra) -> tuple[Subspace, Subspace]:
    eye = np.eye(6, dtype=np.int64)
    return L.span(eye[:3]), L.span(eye[3:])


# --------------------------------------------------------------------------
# the 36-dimensional example (p = 7, one indeterminate)
# --------------------------------------------------------------------------


@dataclass
class Example1Bundle:
    L: LieAlgebra
    L0: LieAlgebra
    X: Subspace
    U: Subspace
    B: Subspace
    W: Subspace
    C: Subspace
    I: Subspace
    O1_derivation: np.ndarray  # d/dt on F_p[t]/(t^p)
    p: int = 7
    notes: dict = field(default_factory=dict)

    def w_to_b(self, v):
        """``(y, 0) -> (0, y)``."""
        return self._swap(v, sign_x=0, sign_u=1)

    def b_to_c(self, v):
        """``(0, y) -> (-y, y)``."""
        return self._swap(v, sign_x=-1, sign_u=1)

    def _swap(self, v, sign_x, sign_u):
        v = np.asarray(v, dtype=np.int64)
        y = self.notes["y_of"](v)
        return self.notes["embed"](sign_x * y, sign_u * y) % self.p

    def _u_isomorphism(self, src: Subspace, dst: Subspace, phi) -> bool:
        """``phi`` maps ``src`` onto ``dst``, preserves brackets and commutes with ``ad u`` for ``u`` in U."""
        L = self.L
        imgs = np.array([phi(v) for v in src.basis]) % self.p
        if L.span(imgs) != dst or L.span(imgs).dim != src.dim:
            return False
        for s, w1 in enumerate(src.basis):
            for t, w2 in enumerate(src.basis):
                if not np.array_equal(phi(L.bracket(w1, w2)), L.bracket(imgs[s], imgs[t])):
                    return False
            for u in self.U.basis:
                if not np.array_equal(phi(L.bracket(u, w1)), L.bracket(u, imgs[s])):
                    return False
        return True

    def identities(self) -> dict:
        """The listed identities of the construction, each evaluated exactly."""
        L, X, U, B, W, C, I = self.L, self.X, self.U, self.B, self.W, self.C, self.I
        return {
            "C ideal": L.is_ideal(C),
            "X & C = 0": (X & C).dim == 0,
            "I = X + B": I == X + B,
            "B = U & I": B == (U & I),
            "X & (B + C) = W": (X & (B + C)) == W,
            "B + W = B + C": B + W == B + C,
            "W ideal of C + U": W <= C + U and L.is_subalgebra(C + U)
            and W.contains_all([L.bracket(x, w) for x in (C + U).basis for w in W.basis]),
            "[W, C] = 0": not any(np.any(L.bracket(w, c)) for w in W.basis for c in C.basis),
            "W =U B": self._u_isomorphism(W, B, self.w_to_b),
            "B =U C": self._u_isomorphism(B, C, self.b_to_c),
        }

    def o1_invariant_ideals(self) -> list[Subspace]:
        """Proper nonzero ideals of ``F_p[t]/(t^p)`` stable under ``d/dt``.

        ``d/dt`` is one nilpotent Jordan block here, so its invariant subspaces
        are exactly the kernels of its powers; each is tested for closure under
        multiplication by ``t``.
        """
        d, p = self.O1_derivation, self.p
        m = d.shape[0]
        if rank(d, p) != m - 1 or np.any(np.linalg.matrix_power(d, m) % p):
            raise AssertionError("d/dt is not a single nilpotent Jordan block")
        shift = np.zeros((m, m), dtype=np.int64)  # multiplication by t on the monomial basis
        for k in range(m - 1):
            shift[k + 1, k] = 1
        out = []
        power = np.eye(m, dtype=np.int64)
        for j in range(1, m):
            power = power @ d % p
            ker = Subspace.span(p, m, nullspace(power, p))
            if ker.contains_all((shift @ ker.basis.T % p).T):
                out.append(ker)
        return out


def _ex1(p: int = 7) -> Example1Bundle:
    if p != 7:
        raise UnsupportedCharacteristicError("the example is built at p = 7 only")
    m = p  # dim O_1 = p
    s = sl2(p)
    # L0 basis: s_a (x) t^k at index 3*k + a (a in e,h,f), then d at index 21
    n0 = 3 * m + 1
    dvec = n0 - 1
    upper = np.zeros((n0, n0, n0), dtype=np.int64)

    def idx(a, k):
        return 3 * k + a

    for k1 in range(m):
        for k2 in range(m):
            if k1 + k2 >= m:
                continue
            for a in range(3):
                for b in range(3):
                    for c in range(3):
                        coef = s.sc[a, b, c]
                        if coef:
                            upper[idx(a, k1), idx(b, k2), idx(c, k1 + k2)] += coef
    for k in range(1, m):
        for a in range(3):
            upper[dvec, idx(a, k), idx(a, k - 1)] += k
            upper[idx(a, k), dvec, idx(a, k - 1)] -= k
    L0 = LieAlgebra.from_tensor(
        p, upper % p, [f"{'ehf'[a]}t{k}" for k in range(m) for a in range(3)] + ["d"]
    )
    eye0 = np.eye(n0, dtype=np.int64)
    x0_idx = list(range(3 * m))
    y0_idx = [idx(a, k) for a in (0, 1) for k in range(m)]  # (F e + F h) (x) O
    u0_idx = y0_idx + [dvec]
    nx, nu = len(x0_idx), len(u0_idx)
    X0 = eye0[x0_idx]
    U0 = eye0[u0_idx]
    n = nx + nu

    def embed(x, u):
        return np.concatenate([np.asarray(x, dtype=np.int64), np.asarray(u, dtype=np.int64)]) % p

    # semidirect product X0 x| U0: (x1,u1)(x2,u2) = ([u1,x2] - [u2,x1] + [x1,x2], [u1,u2])
    basis_l0 = np.vstack([X0, U0])
    full = np.zeros((n, n, n), dtype=np.int64)
    for i in range(n):
        for j in range(i + 1, n):
            xi_part = i < nx
            xj_part = j < nx
            vi, vj = basis_l0[i], basis_l0[j]
            br = L0.bracket(vi, vj)
            if xi_part and xj_part:
                out = embed(br[x0_idx], np.zeros(nu))
            elif xi_part and not xj_part:
                # (x,0)(0,u) = (-[u,x], 0) = ([x,u], 0)
                out = embed(br[x0_idx], np.zeros(nu))
            elif not xi_part and xj_part:
                out = embed(br[x0_idx], np.zeros(nu))
            else:
                out = embed(np.zeros(nx), br[u0_idx])
            full[i, j] = out
    names = [f"x:{L0.names[k]}" for k in x0_idx] + [f"u:{L0.names[k]}" for k in u0_idx]
    L = LieAlgebra(p, n, full, names)

    eye = np.eye(n, dtype=np.int64)
    X = L.span(eye[:nx])
    U = L.span(eye[nx:])
    ypos_x = [x0_idx.index(k) for k in y0_idx]
    ypos_u = list(range(len(y0_idx)))
    ny = len(y0_idx)
    B = L.span([embed(np.zeros(nx), eye[nx + t][nx:]) for t in ypos_u])
    W = L.span([eye[ypos_x[t]] for t in range(ny)])
    C = L.span([(eye[ypos_x[t]] - eye[nx + ypos_u[t]]) % p for t in range(ny)])
    I = X + C

    def y_of(v):
        # Y0 coordinates of v from its x-part if nonzero there, otherwise from its u-part
        v = np.asarray(v, dtype=np.int64)
        xs = v[ypos_x]
        if np.any(v[:nx]):
            return xs
        return v[[nx + t for t in ypos_u]]

    def embed_y(yx, yu):
        out = np.zeros(n, dtype=np.int64)
        out[ypos_x] = yx
        out[[nx + t for t in ypos_u]] = yu
        return out

    dmat = np.zeros((m, m), dtype=np.int64)
    for k in range(1, m):
        dmat[k - 1, k] = k % p
    bundle = Example1Bundle(L, L0, X, U, B, W, C, I, dmat, p)
    bundle.notes.update(y_of=y_of, embed=embed_y, x0_idx=x0_idx, u0_idx=u0_idx, y0_idx=y0_idx)
    return bundle


# --------------------------------------------------------------------------
# registry
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class AlgebraSpec:
    name: str
    build: Callable[[int], object]
    allowed: Callable[[int], bool]
    constraint: str


def _ab_spec(n: int) -> AlgebraSpec:
    return AlgebraSpec(f"ab{n}", lambda p: ab(n, p), lambda p: True, "any p")


REGISTRY: dict[str, AlgebraSpec] = {
    "ab1": _ab_spec(1),
    "ab2": _ab_spec(2),
    "ab3": _ab_spec(3),
    "r2": AlgebraSpec("r2", r2, lambda p: True, "any p"),
    "h3": AlgebraSpec("h3", h3, lambda p: True, "any p"),
    "h3ab": AlgebraSpec("h3ab", h3ab, lambda p: True, "any p"),
    "sl2": AlgebraSpec("sl2", sl2, lambda p: p >= 3, "p >= 3"),
    "sl2sl2": AlgebraSpec("sl2sl2", sl2sl2, lambda p: p >= 3, "p >= 3"),
    "ex1": AlgebraSpec("ex1", _ex1, lambda p: p == 7, "p = 7"),
}

_AB_RE = re.compile(r"^ab\(?(\d+)\)?$")


def _normalise(name: str) -> str:
    name = name.strip().lower()
    m = _AB_RE.match(name)
    if m:
        return f"ab{int(m.group(1))}"
    return name


def builtin(name: str, p: int):
    """A validated corpus algebra, or the :class:`Example1Bundle` for ``"ex1"``."""
    key = _normalise(name)
    if key not in REGISTRY:
        m = _AB_RE.match(key)
        if m:
            return ab(int(m.group(1)), p)
        raise KeyError(f"unknown algebra {name!r}")
    entry = REGISTRY[key]
    if not entry.allowed(p):
        raise UnsupportedCharacteristicError(f"{entry.name} requires {entry.constraint}, got p = {p}")
    return entry.build(p)


def corpus(fields=(2, 3, 5), max_dim: int = 6) -> list[tuple[str, int, LieAlgebra]]:
    """The desk-scale corpus (excluding the 36-dimensional example), sorted by name."""
    out = []
    for name in ("ab1", "ab2", "ab3", "r2", "h3", "h3ab"):
        for p in fields:
            if p in (2, 3):
                out.append((f"{name}({p})", p, builtin(name, p)))
    for name, p in (("sl2", 3), ("sl2", 5), ("sl2sl2", 5)):
        if p in fields:
            out.append((f"{name}({p})", p, builtin(name, p)))
    out = [entry for entry in out if entry[2].dim <= max_dim]
    return sorted(out, key=lambda e: e[0])


# --------------------------------------------------------------------------
# text format
# --------------------------------------------------------------------------

_HEADER_RE = re.compile(r"^\s*(field|dim)\s*:\s*(\S+)\s*$")
_BRACKET_RE = re.compile(r"^\s*\[\s*(-?\d+)\s*,\s*(-?\d+)\s*\]\s*=\s*(.*?)\s*$")
_TERM_RE = re.compile(r"^\s*(\d+)\s*(?:\*\s*(-?\d+))?\s*$")


def parse(text: str, check: bool = True) -> LieAlgebra:
    """Parse the structure-constant format; each term is ``k*c`` (basis index times coefficient)."""
    header: dict[str, int] = {}
    brackets: dict[tuple[int, int], dict[int, int]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        h = _HEADER_RE.match(line)
        if h:
            key, value = h.group(1), h.group(2)
            if key in header:
                raise ParseError(f"duplicate header {key!r}", lineno, line.index(key) + 1)
            try:
                header[key] = int(value)
            except ValueError:
                raise ParseError(f"{key} must be an integer", lineno, line.index(value) + 1) from None
            continue
        b = _BRACKET_RE.match(line)
        if not b:
            col = len(line) - len(line.lstrip()) + 1
            raise ParseError("expected 'field: p', 'dim: n' or '[i,j] = k*c + ...'", lineno, col)
        if "field" not in header or "dim" not in header:
            raise ParseError("bracket before the field/dim header", lineno, 1)
        n = header["dim"]
        i, j = int(b.group(1)), int(b.group(2))
        for val, grp in ((i, 1), (j, 2)):
            if not 0 <= val < n:
                raise ParseError(f"basis index {val} out of range", lineno, b.start(grp) + 1)
        if i > j:
            raise ParseError("brackets are listed for i < j only", lineno, b.start(1) + 1)
        if (i, j) in brackets:
            raise ParseError(f"duplicate bracket [{i},{j}]", lineno, b.start(1) + 1)
        terms: dict[int, int] = {}
        rhs = b.group(3)
        offset = b.start(3)
        if rhs.strip() not in ("", "0"):
            for piece in rhs.split("+"):
                t = _TERM_RE.match(piece)
                if not t:
                    raise ParseError(f"bad term {piece.strip()!r}", lineno, offset + 1)
                k = int(t.group(1))
                c = int(t.group(2)) if t.group(2) is not None else 1
                if not 0 <= k < n:
                    raise ParseError(f"basis index {k} out of range", lineno, offset + 1)
                terms[k] = terms.get(k, 0) + c
                offset += len(piece) + 1
        brackets[(i, j)] = terms
    for key in ("field", "dim"):
        if key not in header:
            raise ParseError(f"missing header {key!r}", max(1, len(text.splitlines())), 1)
    p, n = header["field"], header["dim"]
    try:
        return LieAlgebra.from_brackets(p, n, brackets, check=check)
    except LieAlgebraError:
        raise
    except ValueError as exc:
        raise ParseError(str(exc), 1, 1) from None


def serialize(L: LieAlgebra) -> str:
    lines = [f"field: {L.p}", f"dim: {L.dim}"]
    for i in range(L.dim):
        for j in range(i + 1, L.dim):
            row = L.sc[i, j]
            terms = [f"{k}*{int(row[k])}" for k in range(L.dim) if row[k]]
            if terms:
                lines.append(f"[{i},{j}] = " + " + ".join(terms))
    return "\n".join(lines) + "\n"


def load(path) -> LieAlgebra:
    return parse(Path(path).read_text(encoding="utf-8"))


def dump(L: LieAlgebra, path) -> None:
    Path(path).write_text(serialize(L), encoding="utf-8")


# --------------------------------------------------------------------------
# random solvable algebras
# --------------------------------------------------------------------------


def random_solvable(dim_bound: int, p: int, seed: int, diagonal: bool = False,
                    attempts: int = 24) -> LieAlgebra:
    """Commutator closure of random strictly upper-triangular matrices.

    With ``diagonal=True`` the matrices are upper-triangular instead; the
    closure is still solvable but no longer nilpotent in general.
    """
    if dim_bound < 1:
        raise ValueError("dim_bound must be positive")
    rng = np.random.default_rng(seed)
    k = 2
    while k * (k - 1) // 2 + (k if diagonal else 0) < dim_bound:
        k += 1
    k += 1
    mask = np.triu(np.ones((k, k), dtype=bool), 0 if diagonal else 1)
    target = int(rng.integers(1, dim_bound + 1))
    flat_dim = k * k

    def commutator_closure(mats: list[np.ndarray]) -> np.ndarray:
        basis = rref(np.array([m.ravel() for m in mats]), p)[0]
        while True:
            ms = basis.reshape(-1, k, k)
            comms = [(a @ b - b @ a) % p for a in ms for b in ms]
            new = rref(np.vstack([basis] + [c.reshape(1, -1) for c in comms]), p)[0]
            if new.shape[0] == basis.shape[0]:
                return basis
            basis = new

    chosen: list[np.ndarray] = []
    basis = np.zeros((0, flat_dim), dtype=np.int64)
    for _ in range(attempts):
        cand = np.where(mask, rng.integers(0, p, size=(k, k)), 0).astype(np.int64)
        if not cand.any():
            continue
        trial = commutator_closure(chosen + [cand])
        if trial.shape[0] > dim_bound or trial.shape[0] == basis.shape[0]:
            continue
        chosen.append(cand)
        basis = trial
        if basis.shape[0] >= target:
            break
    if basis.shape[0] == 0:
        cand = np.zeros((k, k), dtype=np.int64)
        cand[0, k - 1] = 1
        basis = commutator_closure([cand])
    d = basis.shape[0]
    sub = Subspace.span(p, flat_dim, basis)
    ms = sub.basis.reshape(-1, k, k)
    upper = np.zeros((d, d, d), dtype=np.int64)
    for i in range(d):
        for j in range(i + 1, d):
            comm = ((ms[i] @ ms[j] - ms[j] @ ms[i]) % p).ravel()
            upper[i, j] = sub.coords(comm)
    return LieAlgebra(p, d, upper)
