"""Command-line front end.

Exit codes: 0 success, 2 invalid arguments, 3 infeasible construction,
4 budget exceeded, 5 a construction failed its own postconditions.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys

from . import constructions, io, polytope_d
from .core import pick_stats
from .enumeration import census_table, enumerate_area, enumerate_cardinality
from .errors import AssemblyMismatch, BudgetExceeded, Infeasible, InvalidInput, SplitConditionUnmet

log = logging.getLogger("lattice_census")

EXIT_INVALID = 2
EXIT_INFEASIBLE = 3
EXIT_BUDGET = 4
EXIT_MISMATCH = 5

FAMILIES = ("lemma2", "mtau", "assemble-sym", "assemble-card", "pdwk", "theorem4")


def _budget(args) -> int:
    if args.budget is not None:
        return args.budget
    return polytope_d.default_budget()


def _emit(text: str, out: str | None) -> None:
    if out and out != "-":
        io.atomic_write(out, text)
    else:
        sys.stdout.write(text)


def _summary(results) -> None:
    print(f"{'param':>6} {'count':>8}", file=sys.stderr)
    for r in results:
        print(f"{r.parameter:>6} {r.count:>8}", file=sys.stderr)


def run_census(args) -> int:
    if not 1 <= args.min <= args.max:
        raise InvalidInput(f"need 1 <= min <= max, got {args.min}..{args.max}")
    results = census_table(args.mode, args.min, args.max, args.symmetric,
                           jobs=args.jobs, budget=_budget(args))
    csv = io.census_csv(results)
    catalog = io.catalog_lines(results) if args.catalog else None
    _emit(csv, args.out)
    if catalog is not None:
        io.atomic_write(args.catalog, catalog)
    _summary(results)
    return 0


def run_growth(args) -> int:
    first = 3 if args.mode == "cardinality" else 1
    if args.max < first:
        raise InvalidInput(f"max must be >= {first}")
    results = census_table(args.mode, first, args.max, jobs=args.jobs, budget=_budget(args))
    _emit(io.growth_csv(results), args.out)
    return 0


def run_catalog(args) -> int:
    run = enumerate_cardinality if args.mode == "cardinality" else enumerate_area
    result = run(args.param, symmetric_only=args.symmetric, jobs=args.jobs, budget=_budget(args))
    _emit(io.catalog_lines([result]), args.out)
    return 0


def _need(args, *names: str) -> None:
    missing = [f"--{n.replace('_', '-')}" for n in names if getattr(args, n) is None]
    if missing:
        raise InvalidInput(f"family {args.family} needs {', '.join(missing)}")


def _parse_choice(text: str | None) -> tuple[int, ...] | None:
    if text is None:
        return None
    try:
        return tuple(int(t) for t in text.replace(" ", "").split(",") if t)
    except ValueError:
        raise InvalidInput(f"bad choice vector {text!r}") from None


def _stats_json(P) -> dict:
    s = pick_stats(P)
    return {"area2": s.area2, "boundary": s.boundary, "interior": s.interior, "total": s.total}


def _assembly(args, assemble, family_fn, target: int, region: str) -> dict:
    u = _parse_choice(args.choice)
    if u is not None:
        items = [assemble(args.tau2, target, u)]
    else:
        cap = None if args.all else constructions.DEFAULT_CAP
        n = len(constructions.primitive_vectors(args.tau2, region)) - 1
        if cap is not None and 2 ** n > cap:
            raise InvalidInput(f"{2 ** n} assemblies exceed the cap {cap}; pass --all or --choice")
        items = family_fn(args.tau2, target, cap)
    return {"items": [{"u": list(tr.u), "polygon": P.to_json(), "stats": _stats_json(P),
                       "trace": tr.to_json()} for P, tr in items]}


def run_construct(args) -> int:
    fam = args.family
    doc: dict = {"family": fam}
    if fam == "lemma2":
        _need(args, "ell", "k")
        P = constructions.lemma2_polygon(args.ell, args.k)
        name, idx = constructions.lemma2_recipe(args.ell, args.k)
        doc.update(params={"ell": args.ell, "k": args.k}, polygon=P.to_json(),
                   stats=_stats_json(P), recipe={"name": name, "index": list(idx)})
    elif fam == "mtau":
        _need(args, "tau2")
        mode = args.region
        P = constructions.build_m_tau(args.tau2, mode)
        doc.update(params={"tau2": args.tau2, "mode": mode}, polygon=P.to_json(), stats=_stats_json(P))
    elif fam == "assemble-sym":
        _need(args, "tau2", "m")
        doc["params"] = {"tau2": args.tau2, "m": args.m}
        doc.update(_assembly(args, constructions.assemble_symmetric,
                             constructions.symmetric_family, args.m, "quarter"))
    elif fam == "assemble-card":
        _need(args, "tau2", "w")
        doc["params"] = {"tau2": args.tau2, "w": args.w}
        doc.update(_assembly(args, constructions.assemble_cardinality,
                             constructions.cardinality_family, args.w, "half"))
    elif fam == "pdwk":
        _need(args, "d", "w", "k")
        P = polytope_d.pdwk_vertices(args.d, args.w, args.k)
        vol = polytope_d.pdwk_volume(args.d, args.w, args.k)
        count = polytope_d.lattice_count_d(P, _budget(args))
        if count != args.w:
            raise AssemblyMismatch(f"P({args.d},{args.w},{args.k}) has {count} lattice points")
        doc.update(params={"d": args.d, "w": args.w, "k": args.k}, polytope=P.to_json(),
                   volume=str(vol), volume_num=vol.numerator, volume_den=vol.denominator,
                   count=count, interior_point=polytope_d.has_interior_point(P, _budget(args)))
    elif fam == "theorem4":
        _need(args, "d", "w")
        ws = polytope_d.theorem4_witnesses(args.d, args.w, args.n, _budget(args))
        rows = [(args.d, args.w, x.k, x.volume.numerator, x.volume.denominator, x.count) for x in ws]
        if args.out and args.out.endswith(".csv"):
            io.atomic_write(args.out, io.witness_csv(rows))
            return 0
        doc.update(params={"d": args.d, "w": args.w, "n": args.n},
                   witnesses=[{"k": x.k, "polytope": x.polytope.to_json(), "volume": str(x.volume),
                               "count": x.count} for x in ws])
    else:
        raise InvalidInput(f"unknown family {fam!r}")
    _emit(io.dumps(doc) + "\n", args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lattice-census", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--jobs", type=int, default=1, help="worker processes (0 = all cores)")
        p.add_argument("--budget", type=int, default=None,
                       help="work budget; defaults to $LATTICE_CENSUS_BUDGET or 10^7")
        p.add_argument("--out", default=None, help="output file (default: stdout)")

    p = sub.add_parser("census", help="count classes over a parameter range")
    p.add_argument("--mode", choices=("area", "cardinality"), required=True)
    p.add_argument("--min", type=int, required=True)
    p.add_argument("--max", type=int, required=True)
    p.add_argument("--symmetric", action="store_true",
                   help="only polygons symmetric about a lattice point")
    p.add_argument("--catalog", default=None, help="also write the class catalog (JSON lines)")
    common(p)
    p.set_defaults(func=run_census)

    p = sub.add_parser("growth", help="census counts with log-growth columns")
    p.add_argument("--mode", choices=("area", "cardinality"), required=True)
    p.add_argument("--max", type=int, required=True)
    common(p)
    p.set_defaults(func=run_growth)

    p = sub.add_parser("catalog", help="representatives of one census value")
    p.add_argument("--mode", choices=("area", "cardinality"), required=True)
    p.add_argument("--param", type=int, required=True)
    p.add_argument("--symmetric", action="store_true",
                   help="only polygons symmetric about a lattice point")
    common(p)
    p.set_defaults(func=run_catalog)

    p = sub.add_parser("construct", help="build an explicit family member")
    p.add_argument("--family", choices=FAMILIES, required=True)
    for name in ("ell", "k", "tau2", "m", "w", "d"):
        p.add_argument(f"--{name}", type=int, default=None)
    p.add_argument("--n", type=int, default=10, help="number of witnesses (theorem4)")
    p.add_argument("--region", choices=("quarter", "half"), default="quarter", help="mtau variant")
    p.add_argument("--choice", default=None, help="choice vector, e.g. 1,2,2")
    p.add_argument("--all", action="store_true", help="lift the cap on enumerated assemblies")
    common(p)
    p.set_defaults(func=run_construct)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if getattr(args, "jobs", 1) == 0:
        args.jobs = os.cpu_count() or 1
    try:
        return args.func(args)
    except (InvalidInput, SplitConditionUnmet) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except Infeasible as exc:
        extra = f" (minimal feasible: {exc.minimal})" if exc.minimal is not None else ""
        print(f"infeasible: {exc}{extra}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (AssemblyMismatch, AssertionError) as exc:
        print(f"assertion mismatch: {exc}", file=sys.stderr)
        return EXIT_MISMATCH


if __name__ == "__main__":
    sys.exit(main())
