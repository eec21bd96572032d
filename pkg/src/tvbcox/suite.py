"""Named verification checks behind the `suite` command.

Each check returns a result dict or raises AssertionError with a reason;
the runner prints one line per check and reports the first failure.
"""

import math
import time

from . import bundle, cox, gz, poly, schur


def check_example_514(level):
    b = bundle.example_514_bundle()
    assert bundle.is_complete_intersection(b, 1), "CI fails at one summand"
    assert not bundle.is_complete_intersection(b, 2), "CI unexpectedly holds at two summands"
    stab, witness = bundle.ci_stability(b, with_witness=True)
    assert stab == 1, f"stability {stab} != 1"
    assert witness[1] == (1, 2, 3), f"witness {witness}"
    return {"stability": stab, "witness": witness}


def check_tangent_stability(level):
    values = {}
    for n in range(2, 7):
        stab = bundle.ci_stability(bundle.tangent_bundle(n))
        assert stab == n - 1, f"tangent({n}) stability {stab} != {n - 1}"
        values[n] = stab
    return {"stability": values}


def check_uniform_sparse_region(level):
    assert bundle.uniform_sparse_stability(4, 6) == 2
    agreements = 0
    for d in range(1, 4):
        for s in range(d + 2, 9):
            closed = bundle.uniform_sparse_stability(s - d, s)
            b = bundle.uniform_sparse_bundle(d, s)
            iterated = bundle.ci_stability(b)
            assert closed == iterated, f"(d={d}, s={s}): closed {closed} != iterated {iterated}"
            agreements += 1
    return {"instances": agreements}


def check_kernel(level):
    report = cox.verify_kernel(2)
    assert report["equal"], "kernel does not match the claimed presentation"
    if level == "full":
        report3 = cox.verify_kernel(3, allow_large=True)
        assert report3["equal"], "kernel mismatch at n = 3"
        report = {"n2": report, "n3": report3}
    return report


def check_classical_presentation(level):
    """The classical five-generator form at n = 2 agrees up to renaming and
    a sign flip on the degree-(3,2) generator."""
    spec = cox.tangent_cox_ideal(2, 2)
    ring = spec.ring
    x = [ring.var(cox.x_name(j)) for j in range(3)]
    y = [ring.var(cox.y_name(1, j)) for j in range(3)]
    z = [ring.var(cox.y_name(2, j)) for j in range(3)]
    for w_sign in (1, -1):
        w = w_sign * ring.var(cox.w_name())
        classical = [
            y[2] * z[1] - y[1] * z[2] - x[0] * w,
            y[2] * z[0] - y[0] * z[2] + x[1] * w,
            y[1] * z[0] - y[0] * z[1] - x[2] * w,
            x[0] * z[0] + x[1] * z[1] + x[2] * z[2],
            x[0] * y[0] + x[1] * y[1] + x[2] * y[2],
        ]
        if poly.ideal_equal(poly.Ideal(ring, classical), spec.ideal()):
            return {"w_sign": w_sign}
    raise AssertionError("classical generators do not match for either sign of W")


def check_lemma(level):
    sizes = (2, 3) if level == "full" else (2,)
    results = []
    for n in sizes:
        for size in range(1, n + 1):
            from itertools import combinations

            for subset in combinations(range(1, n + 1), size):
                rep = cox.verify_lemma(n, subset)
                assert rep["is_groebner_basis"], f"not a GB: n={n}, S={subset}"
                assert rep["dimension"] == rep["expected_dimension"], (
                    f"dimension {rep['dimension']} != {rep['expected_dimension']}"
                    f" at n={n}, S={subset}"
                )
                results.append((n, subset))
    return {"verified": len(results)}


def check_initial_ideal(level):
    rep = cox.initial_comparison(2)
    assert rep["equal"], "delta-initial ideal does not match the quiver ideal"
    assert rep["dimension"] == rep["expected_dimension"], (
        f"dimension {rep['dimension']} != {rep['expected_dimension']}"
    )
    return rep


def check_pluecker(level):
    rep = cox.pluecker_match()
    assert rep["found"], "no signed bijection found"
    assert rep["ideal_equal"], "substituted ideal differs from the Plucker ideal"
    return rep


def check_cauchy(level):
    count = 0
    for d in range(0, 9):
        for e in range(1, 6):
            for v in range(1, 6):
                equal, lhs, rhs = schur.cauchy_verify(d, e, v)
                assert equal, f"Cauchy fails at d={d}, e={e}, v={v}: {lhs} != {rhs}"
                count += 1
    return {"instances": count}


def check_degrees(level):
    spec = cox.tangent_cox_ideal(2, 2)
    assert spec.degrees["W"] == (3, 2)
    assert spec.max_sym_degree() == 2
    only_w = [name for name, deg in spec.degrees.items() if deg[1] == 2]
    assert only_w == ["W"], f"Sym degree 2 carried by {only_w}"
    for g in spec.gens:
        spec.bidegree_of(g)
    assert schur.picard_degree("W_tau", 3) == (4, 3)
    for n in (2, 3):
        for m in range(1, n + 1):
            cox.tangent_cox_ideal(n, m).check_bihomogeneous()
    return {"w_degree": spec.degrees["W"], "max_sym_degree": spec.max_sym_degree()}


def gz_relation_check(n, psi=None):
    """Every emitted relation has image zero under the presentation map."""
    psi = psi or gz.build_psi(n)
    rels = gz.quadratic_plucker_relations(n, psi)
    from itertools import combinations

    for size in range(0, n - 1):
        for tau in combinations(range(1, n + 1), size):
            rels.append(gz.euler_flag_relation(n, tau))
    bad = [poly.poly_to_text(r) for r in rels if psi(r) != 0]
    if bad:
        raise AssertionError(f"relations with nonzero image: {bad[:3]}")
    return len(rels)


def check_gz(level):
    ns = (2, 3) if level == "full" else (2,)
    report = {}
    for n in ns:
        psi = gz.build_psi(n)
        for gen in gz.all_generators(n):
            gz.lead_pattern(gen, n, psi=psi, verify=True)
        relations = gz_relation_check(n, psi)
        sweep = gz.confluence_sweep(n, 3)
        assert sweep["confluent"], f"non-confluent at n={n}: {sweep['clashes'][:1]}"
        report[n] = {"relations": relations, "words": sweep["words"]}
    if level == "full":
        psi4 = gz.build_psi(4)
        for gen in gz.all_generators(4):
            gz.lead_pattern(gen, 4, psi=psi4, verify=True)
        report["initial_terms_checked_to"] = 4
    # lift property at n = 2
    psi = gz.build_psi(2)
    kernel = gz.psi_kernel(2)
    order = poly.grevlex(psi.source)
    gb = kernel.groebner(order)
    from itertools import combinations_with_replacement

    lifted = 0
    for size in range(1, 4):
        for combo in combinations_with_replacement(gz.all_generators(2), size):
            _, steps = gz.canonicalize(combo, 2)
            for step in steps:
                result = gz.lift_step_check(step, 2, gb, order, psi)
                if step["rule"] == "marking-exchange":
                    assert result is True, f"step fails to lift: {step}"
                    lifted += 1
                else:
                    assert result is None
    report["lifted_steps"] = lifted
    return report


CHECKS = [
    ("example-5.14", check_example_514),
    ("tangent-stability", check_tangent_stability),
    ("uniform-sparse-region", check_uniform_sparse_region),
    ("kernel", check_kernel),
    ("classical-presentation", check_classical_presentation),
    ("groebner-lemma", check_lemma),
    ("initial-ideal", check_initial_ideal),
    ("pluecker-match", check_pluecker),
    ("cauchy", check_cauchy),
    ("degrees", check_degrees),
    ("gz-patterns", check_gz),
]


def _run_check(fn, level):
    start = time.monotonic()
    try:
        detail = fn(level)
        status = "PASS"
    except AssertionError as exc:
        detail = {"error": str(exc)}
        status = "FAIL"
    return status, detail, time.monotonic() - start


def run_suite(level="fast", emit=print, jobs=None):
    """Run every check; results are aggregated in declaration order.

    Checks are independent pure computations, so they may run on a bounded
    worker pool; output order stays deterministic regardless.
    """
    if level not in ("fast", "full"):
        raise ValueError("level must be fast or full")
    if jobs is None:
        jobs = 1
    results = []
    first_failure = None
    if jobs > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=jobs) as pool:
            futures = [(name, pool.submit(_run_check, fn, level)) for name, fn in CHECKS]
            outcomes = [(name, future.result()) for name, future in futures]
    else:
        outcomes = [(name, _run_check(fn, level)) for name, fn in CHECKS]
    for name, (status, detail, elapsed) in outcomes:
        emit(f"{status} {name} ({elapsed:.2f}s)")
        if status == "FAIL" and first_failure is None:
            first_failure = (name, detail.get("error", ""))
        results.append(
            {"check": name, "status": status, "seconds": round(elapsed, 3), "detail": _plain(detail)}
        )
    return {
        "level": level,
        "passed": first_failure is None,
        "first_failure": first_failure,
        "checks": results,
    }


def _plain(value):
    """JSON-friendly copy of a result structure."""
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if value is math.inf:
        return "infinity"
    if isinstance(value, (int, float, str, bool)) or value is None:
        return value
    return str(value)
