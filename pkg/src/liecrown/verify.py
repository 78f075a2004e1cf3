"""Property suites run by ``liecrown verify``.

Entries are described by small picklable tuples and rebuilt inside each worker,
so results do not depend on how the corpus is split across processes.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass

from .catalog import builtin, corpus, random_solvable
from .chief import all_chief_series, chief_factors, factor_complements, is_abelian_factor
from .classify import cc_type_and_variation, label_series, series_counts, series_permutation
from .cohomology import cocycle_space, coboundaries, is_cocycle
from .crowns import crown_data
from .exactlinalg import EnumerationBudgetError
from .liecore import LieAlgebra, is_solvable, jacobi_ok
from .lmodule import adjoint_module, chief_factor_module

SUITES = ("core", "cohomology", "crowns", "classify")

PASS, FAIL, UNKNOWN = "pass", "fail", "unknown"


@dataclass(frozen=True)
class CheckResult:
    suite: str
    entry: str
    check: str
    status: str
    detail: str = ""

    def line(self) -> str:
        tail = f"  ({self.detail})" if self.detail else ""
        return f"{self.status.upper():8s}{self.suite:11s}{self.entry:22s}{self.check}{tail}"

    def as_dict(self) -> dict:
        return asdict(self)


Entry = tuple  # ("builtin", name, p) or ("random", p, dim_bound, seed)


def entries(fields=(2, 3, 5), max_dim: int = 6, seeds: int = 0) -> list[Entry]:
    out: list[Entry] = []
    for label, p, _ in corpus(fields=fields, max_dim=max_dim):
        out.append(("builtin", label.split("(")[0], p))
    for p in fields:
        if p not in (2, 3):
            continue
        for seed in range(seeds):
            out.append(("random", p, min(4, max_dim), seed))
    return out


def entry_name(e: Entry) -> str:
    if e[0] == "builtin":
        return f"{e[1]}({e[2]})"
    return f"rand(p={e[1]},d<={e[2]},s={e[3]})"


def build(e: Entry) -> LieAlgebra:
    if e[0] == "builtin":
        return builtin(e[1], e[2])
    return random_solvable(e[2], e[1], seed=e[3])


def _status(flag: bool | None) -> str:
    return UNKNOWN if flag is None else (PASS if flag else FAIL)


def check_core(L: LieAlgebra, name: str) -> list[CheckResult]:
    out = [CheckResult("core", name, "jacobi", _status(jacobi_ok(L)))]
    series = all_chief_series(L)
    counts = [series_counts(label_series(L, s)) for s in series]
    for key in ("m", "frattini"):
        vals = {c[key] for c in counts}
        flag = None if None in vals else len(vals) == 1
        out.append(CheckResult("core", name, f"{key}-count invariant", _status(flag), f"{sorted(map(str, vals))}"))
    if is_solvable(L):
        bad, undecided = 0, 0
        for a, b in chief_factors(L):
            fc = factor_complements(L, a, b)
            if not (fc.is_c.decided and fc.is_frattini.decided):
                undecided += 1
            elif fc.is_c.is_yes == fc.is_frattini.is_yes:
                bad += 1
        flag = False if bad else (None if undecided else True)
        out.append(CheckResult("core", name, "frattini xor complemented", _status(flag), f"{bad} violations"))
    return out


def check_cohomology(L: LieAlgebra, name: str, sample: int = 64) -> list[CheckResult]:
    out = []
    mods = [("adjoint", adjoint_module(L))]
    seen = set()
    for a, b in chief_factors(L):
        m = chief_factor_module(L, a, b)
        if m.key not in seen:
            seen.add(m.key)
            mods.append((f"factor {a.dim}/{b.dim}", m))
    for label, m in mods:
        try:
            cs = cocycle_space(m)
        except EnumerationBudgetError as exc:
            out.append(CheckResult("cohomology", name, f"{label} cocycles", UNKNOWN, str(exc)))
            continue
        ok = True
        for k, beta in enumerate(cs.members()):
            if k >= sample:
                break
            ok &= is_cocycle(m, beta)
        if m.is_abelian():
            ok &= all(is_cocycle(m, beta) for beta in coboundaries(m))
        out.append(CheckResult("cohomology", name, f"{label} cocycles", _status(ok)))
    return out


def check_crowns(L: LieAlgebra, name: str) -> list[CheckResult]:
    out = []
    seen = set()
    for a, b in chief_factors(L):
        m = chief_factor_module(L, a, b)
        if m.key in seen:
            continue
        seen.add(m.key)
        cr = crown_data(L, m)
        label = f"factor {a.dim}/{b.dim}"
        if not all(cr.complete.values()):
            out.append(CheckResult("crowns", name, label, UNKNOWN, "incomplete crown data"))
        elif is_abelian_factor(L, a, b):
            out.append(CheckResult("crowns", name, f"{label} E = D", _status(cr.E_core == cr.D)))
        else:
            ok = (cr.J + cr.D) == cr.I and (cr.J & cr.D) == cr.E_core
            out.append(CheckResult("crowns", name, f"{label} I = J + D, J & D = E", _status(ok)))
    return out


def check_classify(L: LieAlgebra, name: str) -> list[CheckResult]:
    series = all_chief_series(L)
    bad, undecided, counts = [], 0, set()
    for i, s in enumerate(series):
        for j, t in enumerate(series):
            sm = series_permutation(L, s, t, checks=True)
            counts.add(sm.matching_count)
            hard = [f for f in sm.flags if "undecided" not in f]
            if hard:
                bad.append(f"{i}-{j}: {hard[0]}")
            elif sm.flags:
                undecided += 1
    flag = False if bad else (None if undecided else True)
    out = [CheckResult("classify", name, "m-related matching", _status(flag), bad[0] if bad else f"counts {sorted(counts)}")]
    rep = cc_type_and_variation(L, series)
    out.append(CheckResult("classify", name, "c-count spread <= v", _status(rep.spread_ok),
                           f"spread {rep.spread}, v {rep.v}..{rep.v_upper}"))
    return out


_CHECKS = {"core": check_core, "cohomology": check_cohomology, "crowns": check_crowns, "classify": check_classify}


def run_entry(args: tuple[str, Entry]) -> list[CheckResult]:
    suite, e = args
    name = entry_name(e)
    L = build(e)
    names = SUITES if suite == "all" else (suite,)
    out = []
    for s in names:
        try:
            out.extend(_CHECKS[s](L, name))
        except EnumerationBudgetError as exc:
            out.append(CheckResult(s, name, "budget", UNKNOWN, str(exc)))
    return out


def run(suite: str, ents: list[Entry], workers: int = 1) -> list[CheckResult]:
    if suite != "all" and suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}")
    jobs = [(suite, e) for e in ents]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(run_entry, jobs))
    else:
        chunks = [run_entry(j) for j in jobs]
    results = [r for chunk in chunks for r in chunk]
    return sorted(results, key=lambda r: (r.entry, SUITES.index(r.suite), r.check))


__all__ = [
    "CheckResult",
    "FAIL",
    "PASS",
    "SUITES",
    "UNKNOWN",
    "build",
    "check_classify",
    "check_cohomology",
    "check_core",
    "check_crowns",
    "entries",
    "entry_name",
    "run",
    "run_entry",
]
