"""Exact linear algebra over GF(p).

Matrices are ``numpy.int64`` arrays with every entry reduced into ``[0, p)``.
A :class:`Subspace` is stored by the reduced row-echelon form of a basis, so
two subspaces are equal exactly when their basis matrices are identical.
"""

from __future__ import annotations

import heapq
import itertools
import os
from contextlib import contextmanager
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

MAX_PRIME = 1 << 20


class EnumerationBudgetError(RuntimeError):
    """Raised when an exhaustive search would exceed its configured budget."""

    def __init__(self, what: str, estimate: float, budget: float):
        super().__init__(f"{what}: estimated cost {estimate:.4g} exceeds budget {budget:.4g}")
        self.what = what
        self.estimate = estimate
        self.budget = budget


class DimensionMismatchError(ValueError):
    pass


# --------------------------------------------------------------------------
# budgets
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Budgets:
    subspaces: float = 2**23
    vectors: float = 2**16
    homs: float = 2**16
    cocycles: float = 2**24
    series: float = 10**4

    def scaled(self, factor: float) -> "Budgets":
        return Budgets(*(getattr(self, f) * factor for f in self.__dataclass_fields__))


def _env_scale() -> float:
    raw = os.environ.get("LIECROWN_BUDGET")
    if not raw:
        return 1.0
    try:
        return float(raw)
    except ValueError:
        return 1.0


_BUDGETS = Budgets().scaled(_env_scale())


def budgets() -> Budgets:
    return _BUDGETS


def set_budget_scale(factor: float) -> None:
    global _BUDGETS
    _BUDGETS = Budgets().scaled(factor)


@contextmanager
def budget_scale(factor: float):
    """Temporarily multiply every default budget by ``factor``."""
    global _BUDGETS
    saved = _BUDGETS
    _BUDGETS = saved.scaled(factor)
    try:
        yield _BUDGETS
    finally:
        _BUDGETS = saved


def check_budget(what: str, estimate: float, budget: float) -> None:
    if estimate > budget:
        raise EnumerationBudgetError(what, estimate, budget)


# --------------------------------------------------------------------------
# the field
# --------------------------------------------------------------------------


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        if not (2 <= self.p <= MAX_PRIME and is_prime(self.p)):
            raise ValueError(f"modulus must be a prime in [2, 2^20], got {self.p}")

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return pow(a, -1, self.p)

    def elements(self) -> range:
        return range(self.p)


def as_matrix(m, p: int, cols: int | None = None) -> np.ndarray:
    a = np.array(m, dtype=np.int64)
    if a.ndim == 1:
        a = a.reshape(1, -1) if a.size else np.zeros((0, cols or 0), dtype=np.int64)
    if a.ndim == 2 and a.shape[0] == 0 and cols is not None:
        a = np.zeros((0, cols), dtype=np.int64)
    return a % p


# --------------------------------------------------------------------------
# elimination
# --------------------------------------------------------------------------


def rref(m, p: int) -> tuple[np.ndarray, int, list[int]]:
    """Reduced row-echelon form of ``m`` over GF(p) with zero rows dropped."""
    a = np.array(m, dtype=np.int64) % p
    if a.ndim != 2:
        raise ValueError("rref expects a 2-d matrix")
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            a[[r, k]] = a[[k, r]]
        lead = int(a[r, c])
        if lead != 1:
            a[r] = a[r] * pow(lead, -1, p) % p
        col = a[:, c].copy()
        col[r] = 0
        others = np.flatnonzero(col)
        if others.size:
            a[others] = (a[others] - np.outer(col[others], a[r])) % p
        pivots.append(c)
        r += 1
    return a[:r].copy(), r, pivots


def rank(m, p: int) -> int:
    return rref(m, p)[1]


def nullspace(m, p: int) -> np.ndarray:
    """Basis (as rows) of ``{x : m @ x = 0}``, returned in RREF."""
    a = np.array(m, dtype=np.int64) % p
    cols = a.shape[1]
    if a.shape[0] == 0:
        return np.eye(cols, dtype=np.int64)
    r, k, piv = rref(a, p)
    free = [c for c in range(cols) if c not in set(piv)]
    out = np.zeros((len(free), cols), dtype=np.int64)
    for t, f in enumerate(free):
        out[t, f] = 1
        for i, pc in enumerate(piv):
            out[t, pc] = (-r[i, f]) % p
    if out.shape[0]:
        out = rref(out, p)[0]
    return out


def solve(m, b, p: int) -> np.ndarray | None:
    """One solution ``x`` of ``m @ x = b`` or ``None`` when inconsistent."""
    a = np.array(m, dtype=np.int64) % p
    b = np.array(b, dtype=np.int64).reshape(-1, 1) % p
    cols = a.shape[1]
    r, k, piv = rref(np.hstack([a, b]), p)
    if piv and piv[-1] == cols:
        return None
    x = np.zeros(cols, dtype=np.int64)
    for i, pc in enumerate(piv):
        x[pc] = r[i, cols]
    return x


def inverse(m, p: int) -> np.ndarray | None:
    a = np.array(m, dtype=np.int64) % p
    n = a.shape[0]
    if a.shape != (n, n):
        raise DimensionMismatchError("inverse of a non-square matrix")
    r, k, piv = rref(np.hstack([a, np.eye(n, dtype=np.int64)]), p)
    if k < n or piv[n - 1] != n - 1:
        return None
    return r[:, n:].copy()


def matmul(a, b, p: int) -> np.ndarray:
    return (np.asarray(a, dtype=np.int64) @ np.asarray(b, dtype=np.int64)) % p


# --------------------------------------------------------------------------
# subspaces
# --------------------------------------------------------------------------


class Subspace:
    """Subspace of GF(p)^n kept in canonical RREF."""

    __slots__ = ("p", "n", "basis", "pivots", "_key", "_ann")

    def __init__(self, p: int, n: int, basis: np.ndarray, pivots: Sequence[int]):
        self.p = p
        self.n = n
        self.basis = basis
        self.basis.setflags(write=False)
        self.pivots = tuple(pivots)
        self._key = None
        self._ann = None

    @classmethod
    def span(cls, p: int, n: int, vectors=()) -> "Subspace":
        vecs = np.array(vectors, dtype=np.int64)
        if vecs.size == 0:
            return cls.zero(p, n)
        vecs = vecs.reshape(-1, n)
        r, k, piv = rref(vecs, p)
        return cls(p, n, r, piv)

    @classmethod
    def zero(cls, p: int, n: int) -> "Subspace":
        return cls(p, n, np.zeros((0, n), dtype=np.int64), ())

    @classmethod
    def full(cls, p: int, n: int) -> "Subspace":
        return cls(p, n, np.eye(n, dtype=np.int64), range(n))

    @property
    def dim(self) -> int:
        return len(self.pivots)

    @property
    def key(self) -> tuple:
        if self._key is None:
            self._key = (self.n, self.dim, self.basis.tobytes())
        return self._key

    @property
    def sort_key(self) -> tuple:
        return (self.dim, tuple(self.basis.ravel().tolist()))

    def __eq__(self, other) -> bool:
        return isinstance(other, Subspace) and self.p == other.p and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        rows = self.basis.tolist()
        return f"Subspace(p={self.p}, n={self.n}, dim={self.dim}, basis={rows})"

    def _check(self, other: "Subspace") -> None:
        if self.n != other.n or self.p != other.p:
            raise DimensionMismatchError(
                f"subspaces of GF({self.p})^{self.n} and GF({other.p})^{other.n}"
            )

    def annihilator(self) -> np.ndarray:
        """Matrix ``N`` with ``v in self`` iff ``N @ v == 0``."""
        if self._ann is None:
            piv = set(self.pivots)
            free = [c for c in range(self.n) if c not in piv]
            ann = np.zeros((len(free), self.n), dtype=np.int64)
            for t, f in enumerate(free):
                ann[t, f] = 1
                for i, pc in enumerate(self.pivots):
                    ann[t, pc] = (-self.basis[i, f]) % self.p
            ann.setflags(write=False)
            self._ann = ann
        return self._ann

    def contains(self, v) -> bool:
        v = np.asarray(v, dtype=np.int64) % self.p
        return not np.any(self.annihilator() @ v % self.p)

    __contains__ = contains

    def contains_all(self, vectors) -> bool:
        vecs = np.asarray(vectors, dtype=np.int64).reshape(-1, self.n)
        if vecs.shape[0] == 0:
            return True
        return not np.any(self.annihilator() @ vecs.T % self.p)

    def __le__(self, other: "Subspace") -> bool:
        self._check(other)
        return self.dim <= other.dim and other.contains_all(self.basis)

    def __lt__(self, other: "Subspace") -> bool:
        return self.dim < other.dim and self <= other

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        if other.dim == 0 or other <= self:
            return self
        if self.dim == 0:
            return other
        return Subspace.span(self.p, self.n, np.vstack([self.basis, other.basis]))

    def __and__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        if self.dim == 0 or other.dim == self.n:
            return self
        if other.dim == 0 or self.dim == self.n:
            return other
        # x = c @ self.basis with other.annihilator() @ x == 0
        system = other.annihilator() @ self.basis.T % self.p
        coeffs = nullspace(system, self.p)
        if coeffs.shape[0] == 0:
            return Subspace.zero(self.p, self.n)
        return Subspace.span(self.p, self.n, coeffs @ self.basis % self.p)

    def coords(self, v) -> np.ndarray:
        """Coordinates of ``v`` (assumed inside) with respect to ``self.basis``."""
        v = np.asarray(v, dtype=np.int64) % self.p
        return v[..., list(self.pivots)].copy()

    def reduce(self, v) -> np.ndarray:
        """Canonical representative of ``v`` modulo this subspace."""
        v = np.asarray(v, dtype=np.int64) % self.p
        if self.dim == 0:
            return v
        return (v - v[..., list(self.pivots)] @ self.basis) % self.p

    def image(self, m) -> "Subspace":
        """Image of this subspace under the column-acting matrix ``m``."""
        m = np.asarray(m, dtype=np.int64)
        return Subspace.span(self.p, m.shape[0], (m @ self.basis.T % self.p).T)


def subspace_ops(u: Subspace, v: Subspace) -> dict:
    u._check(v)
    return {
        "sum": u + v,
        "intersection": u & v,
        "contains": u.contains,
        "equal": u == v,
    }


class SectionCoords:
    """Coordinates on ``upper / lower`` for subspaces ``lower <= upper``.

    Representatives are the rows of the RREF of ``upper`` reduced modulo
    ``lower``; for ``upper`` the whole space these are the unit vectors on the
    non-pivot columns of ``lower``.
    """

    def __init__(self, upper: Subspace, lower: Subspace):
        if not lower <= upper:
            raise ValueError("lower subspace is not contained in upper")
        self.upper = upper
        self.lower = lower
        p, n = upper.p, upper.n
        reduced = lower.reduce(upper.basis) if upper.dim else upper.basis
        reps, k, piv = rref(reduced, p) if reduced.shape[0] else (np.zeros((0, n), dtype=np.int64), 0, [])
        self.reps = reps
        self.rep_pivots = list(piv)
        self.dim = k
        eye = np.eye(n, dtype=np.int64)
        # proj @ v gives coordinates of v + lower for v in upper
        self.proj = lower.reduce(eye)[:, self.rep_pivots].T.copy() % p if k else np.zeros((0, n), dtype=np.int64)

    def __call__(self, v) -> np.ndarray:
        return (self.proj @ np.asarray(v, dtype=np.int64).T % self.upper.p).T

    def lift(self, c) -> np.ndarray:
        return np.asarray(c, dtype=np.int64) @ self.reps % self.upper.p


# --------------------------------------------------------------------------
# enumeration
# --------------------------------------------------------------------------


def gaussian_binomial(n: int, k: int, q: int) -> int:
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def count_subspaces(n: int, q: int, dims: Iterable[int] | None = None) -> int:
    dims = range(n + 1) if dims is None else dims
    return sum(gaussian_binomial(n, k, q) for k in dims)


def _pivot_stream(n: int, k: int, p: int, piv: tuple[int, ...]) -> Iterator[tuple[tuple, np.ndarray]]:
    pset = set(piv)
    free = [(r, c) for r, pc in enumerate(piv) for c in range(pc + 1, n) if c not in pset]
    base = np.zeros((k, n), dtype=np.int64)
    for r, pc in enumerate(piv):
        base[r, pc] = 1
    for values in itertools.product(range(p), repeat=len(free)):
        m = base.copy()
        for (r, c), val in zip(free, values):
            m[r, c] = val
        yield tuple(m.ravel().tolist()), m


def enumerate_subspaces(
    n: int, p: int | PrimeField, dims=None, budget: float | None = None
) -> Iterator[Subspace]:
    """Yield every subspace of GF(p)^n once, dimension by dimension.

    Within one dimension the order is lexicographic on the flattened RREF
    matrices. The cost model is ``count * n`` and is checked up front.
    """
    p = p.p if isinstance(p, PrimeField) else p
    if dims is None:
        dims = range(n + 1)
    elif isinstance(dims, int):
        dims = [dims]
    dims = sorted(set(d for d in dims if 0 <= d <= n))
    budget = budgets().subspaces if budget is None else budget
    count = count_subspaces(n, p, dims)
    check_budget(f"subspaces of GF({p})^{n}", count * max(n, 1), budget)
    return _enumerate(n, p, dims)


def _enumerate(n: int, p: int, dims) -> Iterator[Subspace]:
    for k in dims:
        streams = [_pivot_stream(n, k, p, piv) for piv in itertools.combinations(range(n), k)]
        for _, m in heapq.merge(*streams, key=lambda item: item[0]):
            m.setflags(write=False)
            yield Subspace(p, n, m, [int(np.flatnonzero(row)[0]) for row in m])


def projective_points(n: int, p: int, budget: float | None = None) -> Iterator[np.ndarray]:
    """One nonzero vector per line of GF(p)^n (first nonzero entry equal to 1)."""
    budget = budgets().subspaces if budget is None else budget
    count = (p**n - 1) // (p - 1)
    check_budget(f"points of GF({p})^{n}", count * max(n, 1), budget)
    return _points(n, p)


def _points(n: int, p: int) -> Iterator[np.ndarray]:
    for lead in range(n):
        for tail in itertools.product(range(p), repeat=n - lead - 1):
            v = np.zeros(n, dtype=np.int64)
            v[lead] = 1
            v[lead + 1 :] = tail
            yield v


def points_outside(sub: Subspace, ambient: Subspace | None = None, budget: float | None = None):
    """Representatives ``v`` of the lines of ``ambient / sub`` (lifted to the ambient space)."""
    p, n = sub.p, sub.n
    ambient = Subspace.full(p, n) if ambient is None else ambient
    sec = SectionCoords(ambient, sub)
    for c in projective_points(sec.dim, p, budget):
        yield sec.lift(c)


def all_vectors(n: int, p: int) -> np.ndarray:
    """Every vector of GF(p)^n as rows, in lexicographic order."""
    if n == 0:
        return np.zeros((1, 0), dtype=np.int64)
    grid = np.indices((p,) * n).reshape(n, -1).T
    return grid.astype(np.int64)
