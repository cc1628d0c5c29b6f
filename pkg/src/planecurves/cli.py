"""Command-line interface: ``planecurves <command> ...``.

Exit codes: 0 success, 1 a check or verification failed (or primes
disagree), 2 input error, 3 resolution incomplete (extension bound).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import catalog as cat
from .arrangements import (arrangement_report, fermat_arrangement, finite_plane_lines,
                           parse_line_file)
from .cubic_group import INF, NodalCubic, verify_construction
from .field_arith import DEFAULT_EXT_BOUND, ExtensionBoundExceeded, Field, FieldError, parse_field
from .invariants import CurveReport, MultSeq, format_sequence, parse_sequence
from .polynomial import MultiPoly, PolySyntaxError, format_poly, implicitize, parse_poly
from .resolution import (CrossPrimeDisagreement, InfNearNode, ProjPoint, ResolutionDepthError,
                         SingularityRecord, analyze_curve)
from .sequences import (SearchConstraints, asymptotic_tables, cremona_transform,
                        enumerate_candidates, homaloidal_reduce, known_lookup)

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_INCOMPLETE = 0, 1, 2, 3


class InputError(ValueError):
    pass


# --- JSON encoding ----------------------------------------------------------

def jsonable(obj):
    """Plain JSON types only; rationals and field elements become strings."""
    if obj is None or isinstance(obj, (bool, int, str)):
        return obj
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, float):
        raise TypeError("floating point value in a report")
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = sorted(obj, key=str) if isinstance(obj, (set, frozenset)) else obj
        return [jsonable(v) for v in items]
    if isinstance(obj, MultSeq):
        return format_sequence(obj)
    if isinstance(obj, (ProjPoint, Field)):
        return str(obj)
    if isinstance(obj, MultiPoly):
        return format_poly(obj)
    if obj is INF:
        return "inf"
    return str(obj)


def tree_to_dict(node: InfNearNode) -> dict:
    return {
        "depth": node.depth,
        "multiplicity": node.multiplicity,
        "chart": node.chart_label,
        "equation": format_poly(node.local_equation) if node.local_equation is not None else None,
        "children": [tree_to_dict(c) for c in node.children],
    }


def record_to_dict(rec: SingularityRecord) -> dict:
    return {
        "point": str(rec.point),
        "field": str(rec.field_used),
        "multiplicity_sequence": list(rec.mult_sequence_at_point),
        "delta": rec.delta,
        "branches": rec.branches,
        "milnor": rec.milnor,
        "ordinary": rec.ordinary,
        "tree": tree_to_dict(rec.tree),
    }


def report_to_dict(rep: CurveReport, kind: str = "curve") -> dict:
    seq = rep.sequence
    doc = {
        "kind": kind,
        "sequence": format_sequence(seq),
        "d": seq.d,
        "r": seq.r,
        "multiplicities": seq.mults,
        "actual": [a for _, a in seq.entries],
        "components": seq.s,
        "H": rep.H,
        "H_actual": rep.H_actual,
        "sigma": rep.sigma,
        "sigma_actual": rep.sigma_actual,
        "delta_total": rep.delta_total,
        "mu_total": rep.mu_total,
        "genus_sum": rep.genus_sum,
        "euler_normalization": rep.euler_normalization,
        "euler_curve": rep.euler_curve,
        "checks": {name: {"status": c.status, "lhs": c.lhs, "rhs": c.rhs, "margin": c.margin,
                          "relation": c.relation, "detail": c.detail}
                   for name, c in rep.checks.items()},
        "info": rep.info,
        "field": rep.field_used,
        "points": [record_to_dict(r) for r in rep.records],
        "per_prime": rep.per_prime,
        "known": known_lookup(seq),
    }
    return jsonable(doc)


def _emit(args, doc: dict, human) -> None:
    doc = jsonable(doc)
    if args.json is not None:
        text = json.dumps(doc, indent=2, sort_keys=False)
        if args.json == "-":
            print(text)
        else:
            with open(args.json, "w") as fh:
                fh.write(text + "\n")
    if args.json != "-":
        human(doc)


def _print_report(doc: dict) -> None:
    print(f"sequence  {doc['sequence']}")
    print(f"field     {doc['field']}")
    print(f"H         {doc['H']}    H_actual {doc['H_actual']}")
    for k, v in doc["sigma"].items():
        print(f"sigma_{k:<4}{v}   actual {doc['sigma_actual'][k]}")
    for key in ("delta_total", "mu_total", "genus_sum", "euler_normalization"):
        if doc.get(key) is not None:
            print(f"{key:<20}{doc[key]}")
    for p in doc.get("points", []):
        print(f"  {p['point']:<28} m={p['multiplicity_sequence']} delta={p['delta']} "
              f"branches={p['branches']} mu={p['milnor']} ordinary={p['ordinary']}")
    for name, c in doc["checks"].items():
        extra = f" margin={c['margin']}" if c.get("margin") is not None else ""
        print(f"{name:<20}{c['status'].upper()}{extra}")
    for p, info in doc.get("per_prime", {}).items():
        print(f"  mod {p}: {info}")
    if doc.get("known", {}).get("status") == "realized":
        for e in doc["known"]["entries"]:
            print(f"known: {e['description']} (char {e['characteristic']})")


def _check_exit(doc: dict) -> int:
    failed = [n for n, c in doc["checks"].items() if c["status"] == "fail"]
    return EXIT_FAIL if failed else EXIT_OK


# --- input files ------------------------------------------------------------

def parse_curve_file(text: str):
    """``(declared factors, components, primes)`` from the curve file grammar."""
    field, factors, components, primes = None, [], None, None
    in_factors = False
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, val = line.partition(":")
        key = key.strip().lower()
        if sep and key in ("field", "factors", "components", "primes"):
            in_factors = key == "factors"
            val = val.strip()
            if key == "field":
                field = parse_field(val)
            elif key == "components":
                components = int(val)
            elif key == "primes":
                primes = [int(p) for p in val.replace(",", " ").split()]
            elif val:
                factors.append((n, val))
            continue
        if not in_factors:
            raise InputError(f"line {n}: unexpected text {raw.strip()!r}")
        factors.append((n, line))
    if field is None:
        raise InputError("curve file needs a 'field:' line")
    if not factors:
        raise InputError("curve file needs at least one factor")
    polys = []
    for n, src in factors:
        try:
            polys.append(parse_poly(src, field))
        except PolySyntaxError as exc:
            raise InputError(f"line {n}: {exc}") from None
    return polys, components, primes


def _int_list(text):
    if text is None:
        return None
    try:
        return [int(v) for v in text.replace(",", " ").split()]
    except ValueError:
        raise InputError(f"expected integers: {text!r}") from None


# --- commands ----------------------------------------------------------------

def cmd_analyze(args) -> int:
    if args.file:
        with open(args.file) as fh:
            polys, components, primes = parse_curve_file(fh.read())
    elif args.poly:
        K = parse_field(args.field)
        polys, components, primes = [parse_poly(args.poly, K)], None, None
    else:
        raise InputError("give a curve file or --poly")
    if args.components is not None:
        components = args.components
    primes = _int_list(args.primes) or primes
    rep = analyze_curve(declared_factors=polys, primes=primes, ext_bound=args.ext_bound,
                        seed=args.seed, components=components, ks=_int_list(args.sigma))
    doc = report_to_dict(rep)
    _emit(args, doc, _print_report)
    return _check_exit(doc)


def cmd_enumerate(args) -> int:
    c = SearchConstraints(d_max=args.d_max, d_min=args.d_min, mult_bound=args.mult_bound,
                          genus_bound=args.genus_bound, max_double_points=args.max_nodes,
                          only_multiplicity=args.only_mult, irreducible_only=args.irreducible,
                          s_min=args.components or 1, s_max=args.components)
    rows = []
    for cand in enumerate_candidates(c):
        rows.append({"sequence": format_sequence(cand.sequence), "feasible_s": cand.feasible_s,
                     "genus_sums": cand.genus_sums,
                     "known": known_lookup(cand.sequence)["status"]})
    doc = {"kind": "enumeration", "constraints": vars(c), "count": len(rows), "candidates": rows}

    def human(d):
        for row in d["candidates"]:
            mark = "  [known]" if row["known"] == "realized" else ""
            print(f"{row['sequence']:<24} s in {row['feasible_s']}{mark}")
        print(f"{d['count']} candidates")

    _emit(args, doc, human)
    return EXIT_OK


def cmd_cremona(args) -> int:
    seq = parse_sequence(args.sequence)
    if args.greedy:
        res = homaloidal_reduce(seq)
        doc = {"kind": "cremona", "input": format_sequence(seq), "greedy": True,
               "success": res.success, "chain": [format_sequence(s) for s in res.chain],
               "centers": res.centers, "reason": res.reason}

        def human(d):
            print(" -> ".join(d["chain"]))
            print("reaches a line" if d["success"] else f"stopped: {d['reason']}")

        _emit(args, doc, human)
        return EXIT_OK if res.success else EXIT_FAIL
    centers = _int_list(args.centers)
    if not centers:
        raise InputError("give --centers a,b,c or --greedy")
    out = cremona_transform(seq, centers)
    doc = {"kind": "cremona", "input": format_sequence(seq), "greedy": False,
           "centers": centers, "output": format_sequence(out)}
    _emit(args, doc, lambda d: print(f"{d['input']} -> {d['output']}"))
    return EXIT_OK


def cmd_arrangement(args) -> int:
    if args.finite_plane is not None:
        drop = tuple(_int_list(args.drop_through)) if args.drop_through else None
        ls = finite_plane_lines(args.finite_plane, drop_through=drop)
    elif args.fermat is not None:
        ls = fermat_arrangement(args.fermat, parse_field(args.field), args.ext_bound)
    elif args.file:
        with open(args.file) as fh:
            ls = parse_line_file(fh.read())
    else:
        raise InputError("give --finite-plane, --fermat or --file")
    rep = arrangement_report(ls, ks=_int_list(args.sigma))
    doc = report_to_dict(rep, kind="arrangement")
    doc["lines"] = len(ls)
    doc["t_vector"] = jsonable(rep.info["t_vector"])

    def human(d):
        print(f"lines     {d['lines']}    t-vector {d['t_vector']}")
        _print_report(d)

    _emit(args, doc, human)
    return _check_exit(doc)


def cmd_cubic(args) -> int:
    A = NodalCubic(parse_field(args.field))

    def both(t):
        return {"parameter": A.render(t), "point": str(A.param_to_point(t))}

    if args.construct:
        params = {}
        for tok in args.construct:
            k, sep, v = tok.partition("=")
            if not sep:
                raise InputError(f"expected name=value, got {tok!r}")
            params[k] = v
        derived, checks = verify_construction(params, A)
        doc = {"kind": "cubic", "op": "construct", "given": {k: both(A.coerce(v)) for k, v in params.items()},
               "derived": {k: both(v) for k, v in derived.items()},
               "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in checks]}

        def human(d):
            for k, v in d["derived"].items():
                print(f"{k} = {v['parameter']}   {v['point']}")
            for c in d["checks"]:
                print(f"{'PASS' if c['passed'] else 'FAIL'}  {c['name']}  {c['detail']}")

        _emit(args, doc, human)
        return EXIT_OK if all(c.passed for c in checks) else EXIT_FAIL
    if args.add:
        t = A.add(*args.add)
        doc = {"kind": "cubic", "op": "add", "args": list(args.add), "result": both(t)}
    elif args.neg is not None:
        doc = {"kind": "cubic", "op": "neg", "args": [args.neg], "result": both(A.neg(args.neg))}
    elif args.point is not None:
        doc = {"kind": "cubic", "op": "point", "args": [args.point], "result": both(A.coerce(args.point))}
    elif args.order is not None:
        doc = {"kind": "cubic", "op": "order", "args": [args.order], "result": A.order(args.order)}
    else:
        raise InputError("give --construct, --add, --neg, --point or --order")
    def human(d):
        res = d["result"]
        print(f"{res['parameter']}   {res['point']}" if isinstance(res, dict) else res)

    _emit(args, doc, human)
    return EXIT_OK


def cmd_implicitize(args) -> int:
    K = parse_field(args.field)
    if args.random is not None:
        F, rep, attempts = cat.random_nodal_curve(args.random, K, seed=args.seed,
                                                  retries=args.retries, ext_bound=args.ext_bound)
        doc = report_to_dict(rep)
        doc["kind"] = "implicitize"
        doc["equation"] = format_poly(F)
        doc["attempts"] = attempts
        doc["mapping_degree"] = 1
    elif args.forms:
        forms = [parse_poly(f, K, variables=("s", "t")) for f in args.forms]
        F, e = implicitize(*forms, seed=args.seed)
        doc = {"kind": "implicitize", "equation": format_poly(F), "mapping_degree": e}
        if args.analyze:
            rep = analyze_curve(F, primes=_int_list(args.primes), ext_bound=args.ext_bound,
                                seed=args.seed, components=1)
            doc.update(report_to_dict(rep))
            doc["kind"] = "implicitize"
    else:
        raise InputError("give --forms FX FY FZ or --random d")

    def human(d):
        print(f"equation  {d['equation']}")
        print(f"mapping degree {d['mapping_degree']}")
        if "checks" in d:
            _print_report(d)

    _emit(args, doc, human)
    return _check_exit(doc) if "checks" in doc and args.random is None else EXIT_OK


def cmd_verify_catalog(args) -> int:
    entries = cat.load_catalog(args.catalog)
    summary = cat.verify_all(entries, ext_bound=args.ext_bound, parallel=args.parallel,
                             seed=args.seed, only=args.only)
    doc = {"kind": "catalog", "total": summary.total, "failed": len(summary.failed),
           "results": [{"id": r.id, "passed": r.passed, "mismatches": r.mismatches,
                        "anchor": r.anchor} for r in summary.results]}

    def human(d):
        for r in d["results"]:
            print(f"{'PASS' if r['passed'] else 'FAIL'}  {r['id']}")
            if not r["passed"]:
                print(f"      anchor: {r['anchor']}")
                for m in r["mismatches"]:
                    print(f"      {m}")
        print(f"{d['total'] - d['failed']}/{d['total']} entries pass")

    _emit(args, doc, human)
    return EXIT_OK if summary.ok else EXIT_FAIL


def cmd_tables(args) -> int:
    rows = asymptotic_tables(args.d)
    doc = {"kind": "tables", "rows": rows}

    def human(d):
        print(f"{'d':>4} {'nodal r':>8} {'nodal H':>10} {'triple r':>9} {'triple H':>10}")
        for r in d["rows"]:
            print(f"{r['d']:>4} {r['nodal_r']:>8} {r['nodal_H']:>10} {r['triple_r']:>9} {r['triple_H']:>10}")

    _emit(args, doc, human)
    return EXIT_OK


# --- argument parsing ---------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", nargs="?", const="-", default=None, metavar="PATH",
                        help="write the JSON report to PATH (stdout when PATH is omitted)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--ext-bound", type=int, default=DEFAULT_EXT_BOUND,
                        help="maximum relative extension degree (default %(default)s)")
    common.add_argument("--primes", help="comma-separated primes for curves over Q")
    common.add_argument("--sigma", help="extra k values for sigma_k, comma-separated")

    p = argparse.ArgumentParser(prog="planecurves", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", parents=[common], help="resolve a curve and check invariants")
    a.add_argument("file", nargs="?", help="curve file")
    a.add_argument("--poly", help="curve equation instead of a file")
    a.add_argument("--field", default="Q", help="field for --poly (default Q)")
    a.add_argument("--components", type=int, help="number of irreducible components")
    a.set_defaults(func=cmd_analyze)

    e = sub.add_parser("enumerate", parents=[common], help="candidate multiplicity sequences")
    e.add_argument("--d-max", type=int, required=True)
    e.add_argument("--d-min", type=int, default=1)
    e.add_argument("--only-mult", type=int)
    e.add_argument("--mult-bound", type=int)
    e.add_argument("--genus-bound", type=int, default=0)
    e.add_argument("--max-nodes", type=int)
    e.add_argument("--components", type=int, help="fix the number of components")
    e.add_argument("--irreducible", action="store_true")
    e.set_defaults(func=cmd_enumerate)

    c = sub.add_parser("cremona", parents=[common], help="quadratic transforms of sequences")
    c.add_argument("--sequence", required=True)
    c.add_argument("--centers", help="three center multiplicities, e.g. 3,3,3")
    c.add_argument("--greedy", action="store_true", help="greedy homaloidal reduction")
    c.set_defaults(func=cmd_cremona)

    r = sub.add_parser("arrangement", parents=[common], help="line arrangements")
    r.add_argument("--finite-plane", type=int, metavar="Q")
    r.add_argument("--drop-through", metavar="A,B,C", help="remove lines through this point")
    r.add_argument("--fermat", type=int, metavar="N")
    r.add_argument("--field", default="Q")
    r.add_argument("--file", help="line file")
    r.set_defaults(func=cmd_arrangement)

    u = sub.add_parser("cubic", parents=[common], help="group law on the nodal cubic")
    u.add_argument("--field", default="Q")
    u.add_argument("--construct", nargs="+", metavar="NAME=T")
    u.add_argument("--add", nargs=2, metavar="T")
    u.add_argument("--neg", metavar="T")
    u.add_argument("--point", metavar="T")
    u.add_argument("--order", metavar="T")
    u.set_defaults(func=cmd_cubic)

    m = sub.add_parser("implicitize", parents=[common], help="image of a map P^1 -> P^2")
    m.add_argument("--field", default="GF(101)")
    m.add_argument("--forms", nargs=3, metavar="F", help="three binary forms in s, t")
    m.add_argument("--random", type=int, metavar="D", help="random degree-D map; retries for genericity")
    m.add_argument("--retries", type=int, default=5)
    m.add_argument("--analyze", action="store_true", help="also analyze the image")
    m.set_defaults(func=cmd_implicitize)

    v = sub.add_parser("verify-catalog", parents=[common], help="rerun the example catalog")
    v.add_argument("--catalog", help="catalog file (default: the shipped one)")
    v.add_argument("--only", nargs="+", metavar="ID")
    v.add_argument("--parallel", action="store_true")
    v.set_defaults(func=cmd_verify_catalog)

    t = sub.add_parser("tables", parents=[common], help="nodal and triple-point H tables")
    t.add_argument("--d", type=int, nargs="+", default=[4, 5, 6, 7, 8, 9, 10])
    t.set_defaults(func=cmd_tables)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ExtensionBoundExceeded, ResolutionDepthError) as exc:
        print(f"incomplete: {exc}", file=sys.stderr)
        return EXIT_INCOMPLETE
    except CrossPrimeDisagreement as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (InputError, FieldError, PolySyntaxError, cat.CatalogError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
