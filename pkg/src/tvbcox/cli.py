"""Command-line interface: analyze, region, cox, cauchy, gz, suite.

Exit codes: 0 success, 1 check failure, 2 usage or parse error,
3 cap exceeded.
"""

import argparse
import hashlib
import json
import math
import sys
import time

from . import __version__, bundle, cox, gz, poly, schur, suite
from .cache import GBCache
from .linalg import IntMatrix, RatMatrix, format_rational, parse_rational

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_CAP = 3


class InputError(ValueError):
    pass


def parse_bundle_file(text):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}")
    if not isinstance(data, dict):
        raise InputError("the bundle file must be a JSON object")
    for key in ("n", "s", "M", "D"):
        if key not in data:
            raise InputError(f"missing field {key!r}")
    n, s = data["n"], data["s"]
    try:
        if len(data["D"]) != n:
            raise InputError(f"D has {len(data['D'])} rows, declared n = {n}")
        for row in data["D"]:
            if len(row) != s:
                raise InputError(f"D row of length {len(row)}, declared s = {s}")
            for x in row:
                if not isinstance(x, int):
                    raise InputError(f"diagram entry {x!r} is not an integer")
        for row in data["M"]:
            if len(row) != s:
                raise InputError(f"M row of length {len(row)}, declared s = {s}")
    except TypeError:
        raise InputError("M and D must be arrays of rows")
    try:
        m = RatMatrix.from_rows(
            [[parse_rational(str(x)) for x in row] for row in data["M"]]
        )
        d = IntMatrix.from_rows([[int(x) for x in row] for row in data["D"]])
        return bundle.BundleData(m, d, label=data.get("label"))
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(str(exc))


def serialize_bundle(b):
    payload = {
        "n": b.n,
        "s": b.s,
        "M": [[format_rational(x) for x in b.m.row(i)] for i in range(b.m.rows)],
        "D": [list(b.diagram.row(i)) for i in range(b.diagram.rows)],
    }
    if b.label is not None:
        payload["label"] = b.label
    return json.dumps(payload, indent=2) + "\n"


def load_bundle(path):
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    return parse_bundle_file(text), text


def make_report(command, inputs_text, results, started):
    return {
        "command": command,
        "inputs_hash": hashlib.sha256(inputs_text.encode()).hexdigest(),
        "results": suite._plain(results),
        "seconds": round(time.monotonic() - started, 3),
        "version": __version__,
    }


def emit_report(report, path=None):
    text = json.dumps(report, indent=2, sort_keys=False) + "\n"
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _analysis(b):
    cls = bundle.classify(b)
    ci1 = bundle.is_complete_intersection(b, 1)
    results = {"label": b.label, "n": b.n, "s": b.s, "d": b.d, "rank": b.rank}
    results["class"] = cls.as_dict()
    results["complete_intersection"] = ci1
    if ci1:
        stab, witness = bundle.ci_stability(b, with_witness=True)
        results["ci_stability"] = "infinity" if stab is math.inf else stab
        results["ci_stability_methods"] = "iterative and closed form agree"
        if witness:
            results["witness"] = {"i": witness[0], "A": list(witness[1])}
    return results


def cmd_analyze(args):
    started = time.monotonic()
    b, text = load_bundle(args.path)
    report = make_report("analyze", text, _analysis(b), started)
    emit_report(report, args.report)
    return EXIT_OK


def cmd_ci_stability(args):
    started = time.monotonic()
    b, text = load_bundle(args.path)
    if not bundle.is_complete_intersection(b, 1):
        report = make_report(
            "ci-stability", text, {"complete_intersection": False}, started
        )
        emit_report(report, args.report)
        return EXIT_CHECK_FAILED
    stab, witness = bundle.ci_stability(b, with_witness=True)
    results = {
        "ci_stability": "infinity" if stab is math.inf else stab,
        "witness": {"i": witness[0], "A": list(witness[1])} if witness else None,
    }
    emit_report(make_report("ci-stability", text, results, started), args.report)
    return EXIT_OK


def cmd_region(args):
    started = time.monotonic()
    rows, lines = bundle.region_table(args.r_max, args.s_max)
    csv_text = bundle.region_csv(rows)
    if args.csv:
        with open(args.csv, "w", encoding="utf-8") as fh:
            fh.write(csv_text)
    else:
        sys.stdout.write(csv_text)
    if args.svg:
        with open(args.svg, "w", encoding="utf-8") as fh:
            fh.write(bundle.region_svg(rows, lines))
    if args.report:
        results = {
            "rows": rows,
            "boundary_lines": [
                {"l": ell, "slope": str(sl), "intercept": str(ic)}
                for ell, sl, ic in lines
            ],
        }
        emit_report(make_report("region", f"{args.r_max},{args.s_max}", results, started), args.report)
    return EXIT_OK


def cmd_cox_tangent(args):
    started = time.monotonic()
    spec = cox.tangent_cox_ideal(args.n, args.m)
    results = {
        "n": args.n,
        "m": args.m,
        "variables": list(spec.ring.names),
        "bidegrees": spec.check_bihomogeneous(),
    }
    order = poly.grevlex(spec.ring)
    if args.emit == "gb":
        cache = GBCache() if args.cache else None
        gens = spec.ideal().groebner(order, cache=cache)
    else:
        gens = spec.gens
    results["generators"] = [poly.poly_to_text(g, order) for g in gens]
    if args.verify_kernel:
        results["kernel"] = cox.verify_kernel(
            args.n, allow_large=args.allow_large, cache=GBCache() if args.cache else None
        )
        if not results["kernel"]["equal"]:
            emit_report(make_report("cox tangent", f"{args.n},{args.m}", results, started), args.report)
            return EXIT_CHECK_FAILED
    emit_report(make_report("cox tangent", f"{args.n},{args.m}", results, started), args.report)
    return EXIT_OK


def cmd_cox_quiver(args):
    started = time.monotonic()
    ideal = cox.quiver_ideal(args.n)
    order = poly.grevlex(ideal.ring)
    results = {
        "n": args.n,
        "generators": [poly.poly_to_text(g, order) for g in ideal.gens],
    }
    emit_report(make_report("cox quiver", str(args.n), results, started), args.report)
    return EXIT_OK


def cmd_cox_lemma(args):
    started = time.monotonic()
    subset = [int(x) for x in args.set.split(",") if x.strip()]
    results = cox.verify_lemma(args.n, subset)
    emit_report(make_report("cox lemma-js", f"{args.n},{subset}", results, started), args.report)
    ok = results["is_groebner_basis"] and results["dimension"] == results["expected_dimension"]
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def cmd_cox_pluecker(args):
    started = time.monotonic()
    results = cox.pluecker_match()
    emit_report(make_report("cox pluecker-match", "", results, started), args.report)
    return EXIT_OK if results.get("found") and results.get("ideal_equal") else EXIT_CHECK_FAILED


def cmd_cauchy(args):
    started = time.monotonic()
    rows = schur.cauchy_table(args.max_degree, args.dim_e, args.dim_v)
    lines = ["d,lhs,rhs,equal"]
    for d, lhs, rhs, equal in rows:
        lines.append(f"{d},{lhs},{rhs},{str(equal).lower()}")
    sys.stdout.write("\n".join(lines) + "\n")
    if args.report:
        emit_report(
            make_report(
                "cauchy",
                f"{args.dim_e},{args.dim_v},{args.max_degree}",
                {"rows": rows},
                started,
            ),
            args.report,
        )
    return EXIT_OK if all(r[3] for r in rows) else EXIT_CHECK_FAILED


def cmd_gz_verify(args):
    started = time.monotonic()
    n = args.n
    psi = gz.build_psi(n)
    for gen in gz.all_generators(n):
        gz.lead_pattern(gen, n, psi=psi, verify=n <= 4)
    relations = suite.gz_relation_check(n, psi)
    sweep = gz.confluence_sweep(n, args.max_word_length)
    results = {
        "n": n,
        "generators": len(gz.all_generators(n)),
        "relations": relations,
        "confluence": sweep,
    }
    emit_report(make_report("gz verify", str(n), results, started), args.report)
    return EXIT_OK if sweep["confluent"] else EXIT_CHECK_FAILED


def cmd_gz_subduct(args):
    started = time.monotonic()
    word1 = gz.parse_word(args.word1)
    word2 = gz.parse_word(args.word2)
    try:
        results = gz.subduct(word1, word2, args.n)
    except gz.SubductionError as exc:
        raise InputError(str(exc))
    emit_report(make_report("gz subduct", f"{args.word1}|{args.word2}", results, started), args.report)
    return EXIT_OK if results["success"] else EXIT_CHECK_FAILED


def cmd_suite(args):
    started = time.monotonic()
    results = suite.run_suite(args.level, jobs=args.jobs)
    if args.report:
        emit_report(make_report("suite", args.level, results, started), args.report)
    if results["passed"]:
        return EXIT_OK
    name, reason = results["first_failure"]
    print(f"first failing check: {name}: {reason}", file=sys.stderr)
    return EXIT_CHECK_FAILED


def build_parser():
    parser = argparse.ArgumentParser(
        prog="tvbcox",
        description="Exact toolkit for toric vector bundles given by (M, D) data",
    )
    parser.add_argument("--version", action="version", version=f"tvbcox {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="classify a bundle file and compute CI-stability")
    p.add_argument("path")
    p.add_argument("--report", help="write the JSON report here instead of stdout")
    p.set_defaults(fn=cmd_analyze)

    p = sub.add_parser("ci-stability", help="CI-stability of a bundle file")
    p.add_argument("path")
    p.add_argument("--report")
    p.set_defaults(fn=cmd_ci_stability)

    p = sub.add_parser("region", help="stability table of sparse uniform bundles")
    p.add_argument("--r-max", type=int, required=True)
    p.add_argument("--s-max", type=int, required=True)
    p.add_argument("--csv", help="write the CSV here instead of stdout")
    p.add_argument("--svg", help="also write an SVG scatter")
    p.add_argument("--report")
    p.set_defaults(fn=cmd_region)

    p_cox = sub.add_parser("cox", help="tangent-bundle presentations and checks")
    cox_sub = p_cox.add_subparsers(dest="cox_command", required=True)

    p = cox_sub.add_parser("tangent", help="presentation of P(T_n tensor K^m)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--verify-kernel", action="store_true")
    p.add_argument("--allow-large", action="store_true", help="enable n = 3 elimination")
    p.add_argument("--emit", choices=["generators", "gb"], default="generators")
    p.add_argument("--cache", action="store_true", help="use the Groebner basis disk cache")
    p.add_argument("--report")
    p.set_defaults(fn=cmd_cox_tangent)

    p = cox_sub.add_parser("quiver", help="Euler relations plus maximal minors")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--report")
    p.set_defaults(fn=cmd_cox_quiver)

    p = cox_sub.add_parser("lemma-js", help="row-sum/minors Groebner and dimension check")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--set", required=True, help="comma separated column subset, e.g. 1,2")
    p.add_argument("--report")
    p.set_defaults(fn=cmd_cox_lemma)

    p = cox_sub.add_parser("pluecker-match", help="signed match onto the Gr(2,5) quadrics")
    p.add_argument("--report")
    p.set_defaults(fn=cmd_cox_pluecker)

    p = sub.add_parser("cauchy", help="Cauchy identity table")
    p.add_argument("--dim-e", type=int, required=True)
    p.add_argument("--dim-v", type=int, required=True)
    p.add_argument("--max-degree", type=int, required=True)
    p.add_argument("--report")
    p.set_defaults(fn=cmd_cauchy)

    p_gz = sub.add_parser("gz", help="pattern semigroup checks and subduction")
    gz_sub = p_gz.add_subparsers(dest="gz_command", required=True)

    p = gz_sub.add_parser("verify", help="patterns, relations, confluence at one n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--max-word-length", type=int, default=3)
    p.add_argument("--report")
    p.set_defaults(fn=cmd_gz_verify)

    p = gz_sub.add_parser("subduct", help="rewrite two words to canonical form")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--word1", required=True, help='bracket syntax, e.g. "[-2],[{1,3},0]"')
    p.add_argument("--word2", required=True)
    p.add_argument("--report")
    p.set_defaults(fn=cmd_gz_subduct)

    p = sub.add_parser("suite", help="run the verification suite")
    p.add_argument("--level", choices=["fast", "full"], default="fast")
    p.add_argument("--jobs", type=int, default=1, help="size of the worker pool")
    p.add_argument("--report")
    p.set_defaults(fn=cmd_suite)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except poly.CapExceeded as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (InputError, FileNotFoundError, ValueError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
