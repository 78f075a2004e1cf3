"""``liecrown`` command-line interface.

Exit codes: 0 success, 1 a checked property fails, 2 bad input,
3 budget exhausted with undecided results.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass, field

import numpy as np

from . import catalog
from .catalog import ParseError
from .chief import (
    ChiefSeries,
    all_chief_series,
    chief_factors,
    ideal_closure,
    is_chief_factor,
    maximal_subalgebras_and_frattini,
    primitive_type,
    socle,
)
from .classify import cc_type_and_variation, label_series, series_counts
from .crowns import crown_data, factor_classes, l_connected
from .exactlinalg import EnumerationBudgetError, Subspace, budget_scale
from .liecore import LieAlgebra, LieAlgebraError, is_solvable
from .lmodule import chief_factor_module
from . import verify as verify_mod

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


def rows(s: Subspace) -> list[list[int]]:
    return [[int(x) for x in r] for r in s.basis]


def _tri(v) -> str:
    b = v.as_bool()
    return "unknown" if b is None else ("yes" if b else "no")


@dataclass
class AnalysisReport:
    field: int
    dim: int
    solvable: bool
    socle: list
    frattini: list
    frattini_certified: bool
    series: list = field(default_factory=list)  # [{"chain": [rows...], "labels": [...], "counts": {...}}]
    crowns: list = field(default_factory=list)
    primitive: str = "unknown"
    v: int | None = None
    v_upper: int | None = None
    c_counts: list = field(default_factory=list)
    spread: int | None = None
    spread_ok: bool | None = None
    complete: dict = field(default_factory=dict)
    violations: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=1)

    @classmethod
    def from_dict(cls, d: dict) -> "AnalysisReport":
        return cls(**d)

    @classmethod
    def from_json(cls, text: str) -> "AnalysisReport":
        return cls.from_dict(json.loads(text))

    @property
    def has_unknowns(self) -> bool:
        return not all(self.complete.values())


def _series_entry(L: LieAlgebra, s: ChiefSeries) -> dict:
    labels = label_series(L, s)
    return {
        "chain": [rows(x) for x in s.chain],
        "labels": [{"c": _tri(lb.c), "m": _tri(lb.m), "frattini": lb.frattini, "abelian": lb.abelian}
                   for lb in labels],
        "counts": series_counts(labels),
    }


def analyze(L: LieAlgebra, all_series: bool = False) -> AnalysisReport:
    complete: dict = {}
    mf = maximal_subalgebras_and_frattini(L)
    complete["frattini"] = mf.certified
    try:
        series = all_chief_series(L)
        complete["series"] = True
    except EnumerationBudgetError:
        series = []
        complete["series"] = False
    shown = series if all_series else series[:1]
    rep = AnalysisReport(
        field=L.p, dim=L.dim, solvable=is_solvable(L), socle=rows(socle(L)),
        frattini=rows(mf.frattini), frattini_certified=mf.certified,
        series=[_series_entry(L, s) for s in shown],
    )
    for e in rep.series:
        complete["labels"] = complete.get("labels", True) and None not in e["counts"].values()

    crowns, ok = [], True
    if series:
        for cls in factor_classes(L, series[0]):
            a, b = cls.representatives[0]
            cr = crown_data(L, chief_factor_module(L, a, b))
            ok &= all(cr.complete.values())
            crowns.append({
                "factor": [rows(a), rows(b)], "abelian": cls.abelian, "size": len(cls.representatives),
                "I": rows(cr.I), "C": rows(cr.C), "D": rows(cr.D), "E_core": rows(cr.E_core), "J": rows(cr.J),
                "complete": dict(sorted(cr.complete.items())),
            })
    rep.crowns = crowns
    complete["crowns"] = ok
    pt = primitive_type(L)
    rep.primitive = pt.kind.value
    complete["primitive"] = pt.kind.value != "unknown"

    violations = []
    if all_series and series:
        for key in ("m", "frattini"):
            vals = {e["counts"][key] for e in rep.series}
            if None not in vals and len(vals) > 1:
                violations.append(f"{key}-count differs across series")
        var = cc_type_and_variation(L, series)
        rep.v, rep.v_upper, rep.c_counts = var.v, var.v_upper, list(var.c_counts)
        rep.spread, rep.spread_ok = var.spread, var.spread_ok
        complete["variation"] = var.complete
        if var.spread_ok is False:
            violations.append("c-count spread exceeds v")
    rep.violations = violations
    rep.complete = dict(sorted(complete.items()))
    return rep


def render_text(rep: AnalysisReport) -> str:
    out = [f"field {rep.field}, dim {rep.dim}, solvable {rep.solvable}",
           f"socle dim {len(rep.socle)}, frattini dim {len(rep.frattini)}"
           + ("" if rep.frattini_certified else " (upper bound)"),
           f"primitive: {rep.primitive}"]
    for k, s in enumerate(rep.series):
        dims = [len(x) for x in s["chain"]]
        tags = []
        for lb in s["labels"]:
            c = {"yes": "c", "no": "c'", "unknown": "c?"}[lb["c"]]
            m = {"yes": "m", "no": "m'", "unknown": "m?"}[lb["m"]]
            tags.append(f"{c}/{m}" + ("/F" if lb["frattini"] else ""))
        out.append(f"series {k}: dims {dims}  labels {' '.join(tags)}  counts {s['counts']}")
    for cr in rep.crowns:
        dims = {k: len(cr[k]) for k in ("I", "C", "D", "E_core", "J")}
        kind = "abelian" if cr["abelian"] else "nonabelian"
        out.append(f"crown of {len(cr['factor'][0])}/{len(cr['factor'][1])} ({kind}, {cr['size']} in class): {dims}")
    if rep.v is not None:
        out.append(f"v = {rep.v} (upper {rep.v_upper}); c-counts {rep.c_counts}; spread {rep.spread} ok={rep.spread_ok}")
    for v in rep.violations:
        out.append(f"VIOLATION: {v}")
    if rep.has_unknowns:
        out.append("incomplete: " + ", ".join(k for k, v in rep.complete.items() if not v))
    return "\n".join(out)


# --------------------------------------------------------------------------
# argument handling
# --------------------------------------------------------------------------


class InputError(Exception):
    pass


def _load(path: str) -> LieAlgebra:
    try:
        with open(path, encoding="utf-8") as fh:
            return catalog.parse(fh.read())
    except OSError as exc:
        raise InputError(str(exc)) from None
    except (ParseError, LieAlgebraError) as exc:
        raise InputError(f"{path}: {exc}") from None


def _vectors(text: str, L: LieAlgebra) -> list[np.ndarray]:
    out = []
    for chunk in text.replace("/", " ").split():
        try:
            v = [int(x) for x in chunk.split(",")]
        except ValueError:
            raise InputError(f"bad vector {chunk!r}") from None
        if len(v) != L.dim:
            raise InputError(f"vector {chunk!r} has {len(v)} entries, expected {L.dim}")
        out.append(np.array(v, dtype=np.int64) % L.p)
    return out


def _factor(text: str, L: LieAlgebra):
    if ";" not in text:
        raise InputError("a factor is given as 'TOP_GENS;BOTTOM_GENS'")
    top, bottom = text.split(";", 1)
    b = ideal_closure(L, _vectors(bottom, L)) if bottom.strip() else L.zero()
    a = ideal_closure(L, _vectors(top, L)) + b
    if not is_chief_factor(L, a, b):
        raise InputError(f"{text!r} does not give a chief factor")
    return a, b


def _fields(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise InputError(f"bad field list {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="liecrown", description="Chief factors, crowns and complements of small Lie algebras over GF(p).")
    ap.add_argument("--budget", type=float, default=None, help="multiply every enumeration budget by this factor")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("validate", help="parse a structure-constant file and check the Lie axioms")
    p.add_argument("file")

    p = sub.add_parser("analyze", help="socle, Frattini ideal, series labels, crowns")
    p.add_argument("file")
    p.add_argument("--all-series", action="store_true")
    p.add_argument("--json", action="store_true")
    p.add_argument("--budget", type=float, default=None, dest="sub_budget")

    p = sub.add_parser("series", help="chief series")
    p.add_argument("file")
    p.add_argument("--enumerate", action="store_true", help="list every chief series (default: the first)")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("equiv", help="compare two chief factors")
    p.add_argument("file")
    p.add_argument("--factor", action="append", required=True, help="'TOP_GENS;BOTTOM_GENS', vectors like 1,0,0 separated by spaces")

    p = sub.add_parser("crowns", help="crown data for each class of chief factors")
    p.add_argument("file")

    p = sub.add_parser("catalog", help="built-in algebras")
    csub = p.add_subparsers(dest="action", required=True)
    csub.add_parser("list")
    e = csub.add_parser("emit")
    e.add_argument("name")
    e.add_argument("-p", type=int, required=True)

    p = sub.add_parser("verify", help="run property suites over the corpus")
    p.add_argument("--suite", default="all", choices=("all",) + verify_mod.SUITES)
    p.add_argument("--fields", default="2,3,5")
    p.add_argument("--max-dim", type=int, default=6)
    p.add_argument("--seeds", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--json", action="store_true")
    return ap


def _cmd_validate(args, out) -> int:
    L = _load(args.file)
    print(f"ok: field {L.p}, dim {L.dim}", file=out)
    return EXIT_OK


def _cmd_analyze(args, out) -> int:
    rep = analyze(_load(args.file), all_series=args.all_series)
    print(rep.to_json() if args.json else render_text(rep), file=out)
    if rep.violations:
        return EXIT_VIOLATION
    return EXIT_BUDGET if rep.has_unknowns else EXIT_OK


def _cmd_series(args, out) -> int:
    L = _load(args.file)
    series = all_chief_series(L)
    shown = series if args.enumerate else series[:1]
    if args.json:
        print(json.dumps([[rows(x) for x in s.chain] for s in shown], indent=1), file=out)
    else:
        for k, s in enumerate(shown):
            print(f"{k}: " + " < ".join(str(x.dim) for x in s.chain), file=out)
        if args.enumerate:
            print(f"{len(series)} chief series", file=out)
    return EXIT_OK


def _cmd_equiv(args, out) -> int:
    L = _load(args.file)
    if len(args.factor) != 2:
        raise InputError("give exactly two --factor options")
    f1, f2 = (_factor(t, L) for t in args.factor)
    c = l_connected(L, f1, f2)
    for name, v in (("isomorphic", c.isomorphic), ("equivalent", c.equivalent), ("connected", c.connected),
                    ("maximal common complement", c.maximal_common_complement),
                    ("common complement", c.common_complement)):
        print(f"{name}: {_tri(v)}", file=out)
    if not c.consistent:
        print("VIOLATION: the four equivalent conditions disagree", file=out)
        return EXIT_VIOLATION
    return EXIT_BUDGET if any(v.is_unknown for v in c.verdicts()) else EXIT_OK


def _cmd_crowns(args, out) -> int:
    L = _load(args.file)
    rep = analyze(L)
    for cr in rep.crowns:
        dims = {k: len(cr[k]) for k in ("I", "C", "D", "E_core", "J")}
        print(f"{len(cr['factor'][0])}/{len(cr['factor'][1])}: {dims} complete={cr['complete']}", file=out)
    return EXIT_OK if all(all(c["complete"].values()) for c in rep.crowns) else EXIT_BUDGET


def _cmd_catalog(args, out) -> int:
    if args.action == "list":
        for name, entry in sorted(catalog.REGISTRY.items()):
            print(f"{name:8s} {entry.constraint}", file=out)
        return EXIT_OK
    try:
        obj = catalog.builtin(args.name, args.p)
    except (KeyError, ValueError, LieAlgebraError) as exc:
        raise InputError(str(exc)) from None
    L = obj.L if isinstance(obj, catalog.Example1Bundle) else obj
    out.write(catalog.serialize(L))
    return EXIT_OK


def _cmd_verify(args, out) -> int:
    fields = _fields(args.fields)
    results = verify_mod.run(args.suite, verify_mod.entries(fields, args.max_dim, args.seeds), workers=args.workers)
    if args.json:
        print(json.dumps([r.as_dict() for r in results], indent=1, sort_keys=True), file=out)
    else:
        for r in results:
            print(r.line(), file=out)
    statuses = {r.status for r in results}
    n_fail = sum(r.status == verify_mod.FAIL for r in results)
    print(f"{len(results)} checks, {n_fail} failed", file=sys.stderr)
    if verify_mod.FAIL in statuses:
        return EXIT_VIOLATION
    return EXIT_BUDGET if verify_mod.UNKNOWN in statuses else EXIT_OK


_COMMANDS = {
    "validate": _cmd_validate,
    "analyze": _cmd_analyze,
    "series": _cmd_series,
    "equiv": _cmd_equiv,
    "crowns": _cmd_crowns,
    "catalog": _cmd_catalog,
    "verify": _cmd_verify,
}


def run(argv: list[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    scale = getattr(args, "sub_budget", None) or args.budget or 1.0
    try:
        with budget_scale(scale):
            return _COMMANDS[args.cmd](args, out)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except EnumerationBudgetError as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
