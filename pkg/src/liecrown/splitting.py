"""Enumeration of homomorphic sections of ``E -> E/K`` by generator extension.

A section is fixed by its values on a generating set of ``E/K``; the values
on a basis of bracket words follow, and the candidate survives only if the
resulting linear map is a homomorphism on every basis pair. The images of
the surviving sections are exactly the subalgebra complements of ``K``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exactlinalg import Subspace, budgets, check_budget, inverse
from .liecore import LieAlgebra, _close, quotient

CHUNK = 4096
_GENERATORS: dict = {}


def generates(Q: LieAlgebra, gens) -> bool:
    if Q.dim == 0:
        return True
    if len(gens) == 0:
        return False
    return _close(Q, Q.span(np.asarray(gens)), "subalgebra").dim == Q.dim


def generating_set(Q: LieAlgebra) -> list[np.ndarray]:
    """Greedy generating set from basis vectors, then shrunk by dropping and merging."""
    hit = _GENERATORS.get(Q.key)
    if hit is not None:
        return hit
    gens: list[np.ndarray] = []
    span = Q.zero()
    for i in range(Q.dim):
        e = Q.basis_vector(i)
        if not span.contains(e):
            gens.append(e)
            span = _close(Q, Q.span(np.asarray(gens)), "subalgebra")
    improved = True
    while improved:
        improved = False
        for t in range(len(gens)):
            rest = gens[:t] + gens[t + 1:]
            if generates(Q, rest):
                gens = rest
                improved = True
                break
        if improved:
            continue
        for i in range(len(gens)):
            for j in range(i + 1, len(gens)):
                for c in range(1, Q.p):
                    merged = (gens[i] + c * gens[j]) % Q.p
                    trial = [g for t, g in enumerate(gens) if t not in (i, j)] + [merged]
                    if generates(Q, trial):
                        gens = trial
                        improved = True
                        break
                if improved:
                    break
            if improved:
                break
    _GENERATORS[Q.key] = gens
    return gens


@dataclass(frozen=True)
class WordBasis:
    """Basis of ``Q`` made of bracket words in the generators."""

    words: tuple  # ("gen", t) or ("br", i, j) meaning [w_i, w_j]
    values: np.ndarray  # len(words) x dim Q
    to_std: np.ndarray  # to_std[w, a]: q_a = sum_w to_std[w, a] * word_w


def word_basis(Q: LieAlgebra, gens) -> WordBasis:
    words: list[tuple] = []
    values: list[np.ndarray] = []
    span = Q.zero()
    for t, g in enumerate(gens):
        if not span.contains(g):
            words.append(("gen", t))
            values.append(np.asarray(g, dtype=np.int64) % Q.p)
            span = span + Q.span(g)
    i = 0
    while span.dim < Q.dim and i < len(words):
        for j in range(i):
            v = Q.bracket(values[j], values[i])
            if not span.contains(v):
                words.append(("br", j, i))
                values.append(v)
                span = span + Q.span(v)
        i += 1
    if span.dim < Q.dim:
        raise ValueError("generators do not generate the algebra")
    vals = np.array(values, dtype=np.int64).reshape(-1, Q.dim)
    inv = inverse(vals, Q.p)  # rows of vals are the words
    # q_a = sum_w inv[a, w] word_w  (since inv @ vals = I)
    return WordBasis(tuple(words), vals, inv.T.copy() if Q.dim else np.zeros((0, 0), np.int64))


@dataclass
class SplittingSearch:
    E: LieAlgebra
    K: Subspace
    sections: np.ndarray  # N x dim E x dim Q, columns are sigma(q_a)
    generators: int
    candidates: int

    def complements(self) -> list[Subspace]:
        out = []
        for s in self.sections:
            out.append(self.E.span(s.T) if s.shape[1] else self.E.zero())
        return out


def _digits(idx: np.ndarray, p: int, width: int) -> np.ndarray:
    pows = p ** np.arange(width - 1, -1, -1, dtype=np.int64)
    return (idx[:, None] // pows[None, :]) % p


def enumerate_splittings(E: LieAlgebra, K: Subspace, budget: float | None = None) -> SplittingSearch:
    """All homomorphisms ``sigma: E/K -> E`` with ``pi o sigma = id``, in lexicographic candidate order."""
    p = E.p
    qm = quotient(E, K)
    Q = qm.quotient
    dq, dk, ne = Q.dim, K.dim, E.dim
    if dq == 0:
        return SplittingSearch(E, K, np.zeros((1, ne, 0), dtype=np.int64), 0, 1)
    gens = generating_set(Q)
    g = len(gens)
    total = float(p) ** (g * dk)
    budget = budgets().cocycles if budget is None else budget
    check_budget(f"sections over {g} generators with kernel dim {dk}", total, budget)
    wb = word_basis(Q, gens)
    lifts = np.array([qm.lift(x) for x in gens], dtype=np.int64)  # g x ne
    kb = K.basis  # dk x ne
    qsc = Q.sc
    esc = E.sc
    found: list[np.ndarray] = []
    n_total = int(total)
    width = g * dk
    for start in range(0, n_total, CHUNK):
        idx = np.arange(start, min(start + CHUNK, n_total), dtype=np.int64)
        coeffs = _digits(idx, p, width).reshape(-1, g, dk) if width else np.zeros((len(idx), g, 0), np.int64)
        gen_vals = (lifts[None, :, :] + np.einsum("ngk,ke->nge", coeffs, kb)) % p
        n = len(idx)
        sw = np.zeros((n, len(wb.words), ne), dtype=np.int64)
        for w, word in enumerate(wb.words):
            if word[0] == "gen":
                sw[:, w] = gen_vals[:, word[1]]
            else:
                a, b = sw[:, word[1]], sw[:, word[2]]
                sw[:, w] = np.einsum("ni,nij->nj", a, np.einsum("nj,ijk->nik", b, esc)) % p
        sig = np.einsum("wa,nwe->nae", wb.to_std, sw) % p  # n x dq x ne
        lhs = np.einsum("abc,nce->nabe", qsc, sig) % p
        tmp = np.einsum("nai,ijk->najk", sig, esc) % p
        rhs = np.einsum("najk,nbj->nabk", tmp, sig) % p
        ok = np.all((lhs == rhs).reshape(n, -1), axis=1)
        if ok.any():
            found.append(np.transpose(sig[ok], (0, 2, 1)))
    sections = np.concatenate(found, axis=0) if found else np.zeros((0, ne, dq), dtype=np.int64)
    return SplittingSearch(E, K, sections, g, n_total)
