"""Command-line front end: ``amalgam check | verify | spectrum | ideals``.

Exit codes: 0 success (verdicts are data), 1 theorem mismatch or hierarchy
violation, 2 usage, parse, cap or corpus-file errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Sequence

from .conditions import CHECKERS, HIERARCHY, gaussian_content_sampler, hierarchy_check
from .corpus import REPORT_FORMAT, default_corpus, load_corpus, run_corpus
from .descriptor import Amalgamation
from .errors import AmalgamError, ParseError
from .ideals import DEFAULT_MAX_IDEALS, all_ideals, set_max_ideals, spectrum
from .parser import parse_ring_expr, resolve
from .ring import DEFAULT_MAX_SIZE, FiniteRing
from .structure import amalgam_parts, is_total_ring_of_quotients

EXTRA_CONDITIONS = ("chained", "total_quotients")


def _dump(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=False, ensure_ascii=False)


def _ring(args) -> FiniteRing:
    desc = parse_ring_expr(args.expr)
    return resolve(desc, allow_improper=args.allow_improper, max_size=args.max_ring_size, cache=_cache(args))


def _cache(args):
    if not getattr(args, "cache_dir", None):
        return None
    from .constructions import TableCache

    return TableCache(args.cache_dir)


def _conditions(text: str | None) -> list[str]:
    if not text:
        return list(HIERARCHY)
    names = [c.strip() for c in text.split(",") if c.strip()]
    known = set(HIERARCHY) | set(EXTRA_CONDITIONS)
    bad = [c for c in names if c not in known]
    if bad:
        raise ValueError(f"unknown conditions: {', '.join(bad)} (known: {', '.join(sorted(known))})")
    return names


def _run_condition(R: FiniteRing, name: str):
    if name == "total_quotients":
        return is_total_ring_of_quotients(R)
    if name == "chained":
        from .conditions import check_chained

        return check_chained(R)
    return CHECKERS[name](R)


# -- commands -------------------------------------------------------------------------


def cmd_check(args) -> int:
    R = _ring(args)
    names = _conditions(args.conditions)
    verdicts = {name: _run_condition(R, name) for name in names}
    report: dict[str, Any] = {
        "format": REPORT_FORMAT,
        "ring": str(R.descriptor),
        "size": R.size,
        "degenerate": R.is_zero_ring,
        "entries": [v.to_dict(str(R.descriptor), R.size, args.timings) for v in verdicts.values()],
    }
    status = 0
    if set(HIERARCHY) <= set(names):
        res = hierarchy_check(R, strict=False, verdicts=verdicts)
        report["hierarchy"] = {"holds": res.monotone, "pattern": res.pattern(), "violations": [list(v) for v in res.violations]}
        status = 0 if res.monotone else 1
    if args.sample_degree:
        hit = gaussian_content_sampler(R, args.sample_degree, args.sample_budget, args.seed)
        report["content_sampler"] = {
            "max_degree": args.sample_degree,
            "budget": args.sample_budget,
            "seed": args.seed,
            "violation": None
            if hit is None
            else {
                "f": hit.f.text(),
                "g": hit.g.text(),
                "c(fg)": hit.content_of_product.gens_text(),
                "c(f)c(g)": hit.product_of_contents.gens_text(),
            },
        }
    if args.format == "json":
        print(_dump(report))
    else:
        print(f"ring {report['ring']}  size {R.size}" + ("  (zero ring)" if R.is_zero_ring else ""))
        width = max(len(n) for n in names)
        for e in report["entries"]:
            line = f"  {e['condition']:<{width}}  {'true ' if e['holds'] else 'false'}  {e['method']}"
            if e["witness"]:
                line += "  witness " + json.dumps(e["witness"], ensure_ascii=False)
            if e["elapsed_ms"] is not None:
                line += f"  {e['elapsed_ms']} ms"
            print(line)
        if "hierarchy" in report:
            h = report["hierarchy"]
            print(f"  hierarchy {h['pattern']}  {'monotone' if h['holds'] else 'VIOLATED ' + str(h['violations'])}")
        if "content_sampler" in report:
            v = report["content_sampler"]["violation"]
            print("  content sampler: " + ("no violation found" if v is None else json.dumps(v, ensure_ascii=False)))
    return status


def cmd_verify(args) -> int:
    try:
        spec = load_corpus(args.corpus) if args.corpus else default_corpus()
    except (OSError, ValueError, TypeError) as exc:
        print(f"error: cannot read corpus: {exc}", file=sys.stderr)
        return 2
    if args.seed is not None:
        spec.seed = args.seed
    if args.max_ring_size != DEFAULT_MAX_SIZE:
        spec.max_ring_size = args.max_ring_size
    if args.max_ideals is not None:
        spec.max_ideals = args.max_ideals
    report = run_corpus(spec, workers=args.workers, cache_dir=args.cache_dir)
    data = report.to_dict(timings=args.timings)
    if args.format == "json":
        print(_dump(data))
    else:
        s = data["summary"]
        for e in data["entries"]:
            mark = "ok  " if e["agree"] else "FAIL"
            pair = ",".join(e["pair"].values())
            line = f"{mark} {e['condition']:<16} {pair:<24} lhs={str(e['lhs']).lower():<5} rhs={str(e['rhs']).lower()}"
            if e["flags"]:
                line += "  [" + "; ".join(e["flags"]) + "]"
            if not e["agree"]:
                line += "  witness " + json.dumps(e["witness"], ensure_ascii=False)
            print(line)
        for h in data["hierarchy"]:
            if not h["holds"]:
                print(f"FAIL hierarchy {h['ring']} {h['pattern']} {h['violations']}")
        for err in data["errors"]:
            print(f"skip {err}")
        print(
            f"{s['checks']} checks, {s['mismatches']} mismatches, "
            f"{s['hierarchy_violations']} hierarchy violations over {s['hierarchy_rings']} rings, {s['errors']} errors"
        )
    return 0 if report.ok else 1


def _over(R: FiniteRing):
    """For ``A ⋈ I``: each prime of ``A`` with the primes of ``R`` contracting to it."""
    A, I = amalgam_parts(R)
    diag_ids = [R.pair_id(a, a) for a in range(A.size)]
    rows = []
    for P in spectrum(A).primes:
        over = [Q for Q in spectrum(R).primes if all(Q.mask[diag_ids[a]] == P.mask[a] for a in range(A.size))]
        rows.append((P, I <= P, over))
    return rows


def cmd_spectrum(args) -> int:
    R = _ring(args)
    spec = spectrum(R)
    data: dict[str, Any] = {
        "ring": str(R.descriptor),
        "size": R.size,
        "primes": [P.gens_text() for P in spec.primes],
        "maximal": [P.gens_text() for P in spec.maximals],
    }
    if isinstance(R.descriptor, Amalgamation):
        data["over"] = [
            {"prime": P.gens_text(), "contains_ideal": contains, "primes_over": [Q.gens_text() for Q in over]}
            for P, contains, over in _over(R)
        ]
    if args.format == "json":
        print(_dump(data))
    else:
        print(f"ring {data['ring']}  size {R.size}")
        print("primes:  " + " ".join(data["primes"]))
        print("maximal: " + " ".join(data["maximal"]))
        for row in data.get("over", []):
            print(f"  over {row['prime']}: " + " ".join(row["primes_over"]))
    return 0


def cmd_ideals(args) -> int:
    R = _ring(args)
    ideals = all_ideals(R)
    index = {J.bits: k for k, J in enumerate(ideals)}
    rows = []
    for k, J in enumerate(ideals):
        above = [K for K in ideals if J < K]
        covers = [K for K in above if not any(J < M < K for M in above)]
        rows.append({"index": k, "ideal": J.gens_text(), "size": J.size, "covered_by": [index[K.bits] for K in covers]})
    chain = all(len(r["covered_by"]) <= 1 for r in rows)
    data = {"ring": str(R.descriptor), "size": R.size, "count": len(rows), "chain": chain, "ideals": rows}
    if args.format == "json":
        print(_dump(data))
    else:
        print(f"ring {data['ring']}  size {R.size}  {len(rows)} ideals" + ("  (chain)" if chain else ""))
        for r in rows:
            print(f"  [{r['index']}] {r['ideal']:<24} size {r['size']:<5} below {r['covered_by']}")
    return 0


# -- argument parsing -----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-ring-size", type=int, default=DEFAULT_MAX_SIZE, help="largest ring to build")
    common.add_argument("--max-ideals", type=int, default=None, help="cap on the number of ideals enumerated")
    common.add_argument("--format", choices=("json", "plain"), default="json")
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--cache-dir", default=None, help="directory for cached operation tables")
    common.add_argument("--allow-improper", action="store_true", help="allow bowtie along the unit ideal")
    common.add_argument("--timings", action="store_true", help="report elapsed times (output is then not reproducible)")

    parser = argparse.ArgumentParser(prog="amalgam", description="Prüfer-type conditions on finite rings and amalgamated duplications.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="run condition checkers on one ring")
    p.add_argument("expr")
    p.add_argument("--conditions", default=None, help="comma-separated subset (default: all six)")
    p.add_argument("--sample-degree", type=int, default=0, help="also run the content sampler up to this degree")
    p.add_argument("--sample-budget", type=int, default=20000)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("verify", parents=[common], help="run the theorem checks over a corpus")
    p.add_argument("--corpus", default=None, help="corpus file (JSON); default corpus if omitted")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("spectrum", parents=[common], help="prime and maximal ideals")
    p.add_argument("expr")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("ideals", parents=[common], help="the ideal lattice")
    p.add_argument("expr")
    p.set_defaults(func=cmd_ideals)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    if args.seed is None and args.command == "check":
        args.seed = 0
    try:
        if args.max_ring_size < 1:
            raise ValueError("--max-ring-size must be positive")
        if args.max_ideals is not None:
            set_max_ideals(args.max_ideals)
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        if getattr(args, "expr", None):
            print(f"  {args.expr}\n  {' ' * exc.position}^", file=sys.stderr)
        return 2
    except (AmalgamError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    finally:
        set_max_ideals(DEFAULT_MAX_IDEALS)


if __name__ == "__main__":
    sys.exit(main())
