"""Command-line front end.

Subcommands: sieve, witness46, census, verify, export, witness-general.
Exit codes: 0 success/verified, 1 mathematical failure (failed check,
non-qualifying prime, bound violation, empty search), 2 usage or input
error.  Every subcommand is deterministic given its flags; --jobs changes
wall time, never output bytes.
"""

from __future__ import annotations

import argparse
import hashlib
import itertools
import json
import math
import os
import sys
from pathlib import Path

from . import general, k46
from .graph import (
    ENUM_LIMIT,
    CENSUS_BUDGET,
    NormGraph,
    Vertex,
    make_graph,
    witness_to_json,
)
from .polys import find_root_in_ext
from .primes import primes_up_to

X3_MINUS_2 = k46.X3_MINUS_2


# -- cache ---------------------------------------------------------------------


def default_cache_dir() -> Path:
    env = os.environ.get("NORMGRAPH_CACHE")
    if env:
        return Path(env)
    return Path.home() / ".cache" / "normgraph"


def cache_path(cache_dir: Path, subcommand: str, params: dict) -> Path:
    key = json.dumps({"subcommand": subcommand, **params}, sort_keys=True)
    digest = hashlib.sha256(key.encode()).hexdigest()[:12]
    tag = "-".join(str(v) for _, v in sorted(params.items()))
    return cache_dir / f"{subcommand}-{tag}-{digest}.csv"


def _note(msg: str) -> None:
    print(msg, file=sys.stderr)


def _recheck_sieve_rows(res: k46.SieveResult) -> bool:
    """Cheap trust check on cached rows: the prime list must match a fresh
    sieve and every verdict must match the residue formulation (primality
    is already settled by the prime-list comparison)."""
    if [r.p for r in res.rows] != primes_up_to(res.limit):
        return False
    for r in res.rows:
        ok = (
            k46.PRODUCT_DISC % r.p != 0
            and k46.WITNESS_CUBIC_DISC % r.p != 0
            and k46._residue_formulation(r.p)
        )
        if ok != r.qualifying:
            return False
    return True


def sieve_with_cache(
    limit: int, jobs: int, cache_dir: Path | None
) -> k46.SieveResult:
    """Sieve, consulting the CSV cache when a directory is given.  Hits are
    re-verified, not trusted; misses and stale entries are recomputed and
    rewritten.  Stdout output never differs between the paths."""
    path = None
    if cache_dir is not None:
        path = cache_path(cache_dir, "sieve", {"limit": limit})
        if path.is_file():
            try:
                cached = k46.sieve_from_csv(path.read_text(encoding="utf-8"), limit)
            except ValueError as exc:
                _note(f"cache entry unreadable ({exc}); recomputing")
            else:
                if _recheck_sieve_rows(cached):
                    _note(f"cache hit: {path} (re-verified)")
                    return cached
                _note("cache entry failed re-verification; recomputing")
    res = k46.sieve_qualifying(limit, jobs=jobs)
    if path is not None:
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(".tmp")
        tmp.write_text(k46.sieve_to_csv(res), encoding="utf-8")
        os.replace(tmp, path)
        _note(f"cache write: {path}")
    return res


# -- output helpers ------------------------------------------------------------


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)


def _usage_error(msg: str) -> int:
    print(f"error: {msg}", file=sys.stderr)
    return 2


# -- sieve ----------------------------------------------------------------------


def cmd_sieve(args) -> int:
    if args.limit < 2:
        return _usage_error("--limit must be >= 2")
    cache_dir = None if args.no_cache else Path(args.cache_dir)
    res = sieve_with_cache(args.limit, args.jobs, cache_dir)
    if args.format == "csv":
        out = k46.sieve_to_csv(res)
        if args.output:
            Path(args.output).write_text(out, encoding="utf-8")
        else:
            sys.stdout.write(out)
    elif args.format == "json":
        _emit(json.dumps(k46.sieve_summary(res), indent=2), args.output)
    else:
        lines = [str(p) for p in res.qualifying]
        lines.append(
            f"{res.count} qualifying of {res.pi} primes up to {res.limit}; "
            f"ratio {res.ratio:.6f} (target {k46.DENSITY_TARGET:.6f})"
        )
        _emit("\n".join(lines), args.output)
    return 0


# -- witness46 -------------------------------------------------------------------


def _check_lines(report) -> list[str]:
    adj_failed = len(report.adjacency_failures)
    id_failed = len(report.identity_failures)
    lines = [
        f"adjacency checks: {report.adjacency_checked - adj_failed}"
        f"/{report.adjacency_checked} passed",
        f"identity checks: {report.identity_checked - id_failed}"
        f"/{report.identity_checked} passed",
    ]
    for uid, vid in report.adjacency_failures:
        lines.append(f"  adjacency failed: vertex ids {uid}, {vid}")
    for msg in report.identity_failures:
        lines.append(f"  identity failed: {msg}")
    lines.append(f"result: {'PASS' if report.passed else 'FAIL'}")
    return lines


def cmd_witness46(args) -> int:
    p = 7 if args.p is None else args.p
    cert = k46.is_qualifying_prime(p)
    if isinstance(cert, k46.Rejection):
        print(f"not qualifying: {cert.reason}")
        return 1
    try:
        w = k46.build_witness(cert)
    except k46.DegeneracyError as exc:
        print(f"degenerate witness: {exc}", file=sys.stderr)
        return 1
    report = k46.verify_witness(w)
    payload = json.dumps(
        witness_to_json(k46.witness_graph(w), w.A, w.B, report.passed), indent=2
    )
    lines = _check_lines(report)
    all_ok = report.passed
    if args.all_orderings:
        canonical = set(w.B)
        for order in itertools.permutations(range(3)):
            wo = k46.build_witness(cert, root_order=order)
            ro = k46.verify_witness(wo)
            all_ok = all_ok and ro.passed and set(wo.B) == canonical
            lines.append(
                f"root ordering {order}: "
                f"{'PASS' if ro.passed else 'FAIL'}, vertex set "
                f"{'identical' if set(wo.B) == canonical else 'DIFFERS'}"
            )
    if args.output:
        Path(args.output).write_text(payload + "\n", encoding="utf-8")
        print("\n".join(lines))
    elif args.format == "json":
        print(payload)
        for ln in lines:
            _note(ln)
    else:
        print(payload)
        print("\n".join(lines))
    return 0 if all_ok else 1


# -- census ----------------------------------------------------------------------


def _planted_subsets(G: NormGraph, args) -> tuple[tuple[int, ...], ...]:
    """The canonical witness left side, re-encoded in the census field.

    The census graph may use a different modulus than the witness pipeline,
    so the four elements {0, 1, 2, theta+1} are rebuilt around a cube root
    of 2 extracted deterministically inside the census field itself."""
    if args.t != 4 or args.k != 4 or not args.sample:
        return ()
    ok, _ = k46.qualifying_verdict(args.p)
    if not ok:
        return ()
    F = G.field
    theta = find_root_in_ext([(-2) % args.p, 0, 0, 1], F, seed=0)
    vertices = [
        Vertex(F.zero, 3),
        Vertex(F.from_base(1), 4),
        Vertex(F.from_base(2), 5),
        Vertex(F.add(theta, F.from_base(1)), 6),
    ]
    return (tuple(G.vertex_id(v) for v in vertices),)


def cmd_census(args) -> int:
    try:
        G = make_graph(args.p, args.t)
    except ValueError as exc:
        return _usage_error(str(exc))
    if not 1 <= args.k <= G.n:
        return _usage_error(f"--k must be between 1 and {G.n}")
    bound = math.factorial(args.t - 1)
    if args.sample:
        planted = _planted_subsets(G, args)
        mx, argmax = G.sample_max_common(
            args.k, args.trials, args.seed, jobs=args.jobs, planted=planted
        )
        mode = {
            "mode": "sample",
            "trials": args.trials,
            "seed": args.seed,
            "planted": bool(planted),
        }
    else:
        total = math.comb(G.n, args.k)
        if total > args.budget:
            return _usage_error(
                f"exhaustive census needs C({G.n},{args.k}) = {total} subsets, "
                f"over the budget of {args.budget}; rerun with --sample"
            )
        mx, argmax = G.census_max_common(args.k, budget=args.budget, jobs=args.jobs)
        mode = {"mode": "exhaustive", "subsets": total}
    bound_applies = args.k == args.t
    within = mx <= bound
    result = {
        "p": args.p,
        "t": args.t,
        "k": args.k,
        "n": G.n,
        **mode,
        "max_common": mx,
        "argmax": list(argmax),
        "bound": bound,
        "bound_applies": bound_applies,
        "within_bound": within,
    }
    if args.format == "json":
        _emit(json.dumps(result, indent=2), args.output)
    else:
        lines = [
            f"graph: p={args.p} t={args.t} n={G.n}",
            "mode: "
            + (
                f"sample trials={args.trials} seed={args.seed}"
                + (" planted=witness-quadruple" if mode.get("planted") else "")
                if args.sample
                else f"exhaustive subsets={mode['subsets']}"
            ),
            f"max common neighbors over {args.k}-subsets: {mx}",
            f"achieved by vertex ids: {' '.join(str(i) for i in argmax)}",
        ]
        if bound_applies:
            lines.append(
                f"bound (t-1)! = {bound}: "
                + ("within bound" if within else "VIOLATED")
            )
        _emit("\n".join(lines), args.output)
    return 0 if (within or not bound_applies) else 1


# -- verify ----------------------------------------------------------------------


def _schema_check_graph_witness(data: dict) -> None:
    for key in ("p", "t", "modulus", "L", "R", "verified"):
        if key not in data:
            raise ValueError(f"witness JSON is missing {key!r}")
    p, t = data["p"], data["t"]
    if not isinstance(p, int) or not isinstance(t, int) or p < 2 or t < 3:
        raise ValueError("p and t must be integers with p >= 2, t >= 3")
    mod = data["modulus"]
    if not isinstance(mod, list) or len(mod) != t or not all(
        isinstance(c, int) for c in mod
    ):
        raise ValueError(f"modulus must list {t} integer coefficients")
    for part in ("L", "R"):
        if not isinstance(data[part], list) or not data[part]:
            raise ValueError(f"{part} must be a nonempty vertex list")
        for v in data[part]:
            if (
                not isinstance(v, dict)
                or not isinstance(v.get("a"), int)
                or not isinstance(v.get("alpha"), list)
                or len(v["alpha"]) != t - 1
                or not all(isinstance(c, int) and 0 <= c < p for c in v["alpha"])
                or not 1 <= v["a"] < p
            ):
                raise ValueError(f"malformed vertex in {part}")


def _verify_graph_witness(data: dict) -> tuple[list[str], bool]:
    G = make_graph(data["p"], data["t"], list(data["modulus"]))
    L = [Vertex(tuple(v["alpha"]), v["a"]) for v in data["L"]]
    R = [Vertex(tuple(v["alpha"]), v["a"]) for v in data["R"]]

    # the closed-form identity layer only makes sense for the canonical
    # witness over x^3 - 2; anything else gets the graph layer alone
    if (
        data["t"] == 4
        and len(L) == 4
        and len(R) == 6
        and list(G.field.modulus) == [(-2) % G.p, 0, 0, 1]
    ):
        cert = k46.is_qualifying_prime(G.p)
        if not isinstance(cert, k46.Rejection):
            canonical = k46.build_witness(cert)
            if set(canonical.A) == set(L):
                report = k46.verify_witness(
                    k46.WitnessK46(certificate=cert, field=G.field, A=L, B=R)
                )
                return ["witness kind: canonical 4x6"] + _check_lines(report), report.passed

    biclique = G.verify_biclique(L, R)
    rep = biclique.report
    lines = [
        "witness kind: graph biclique",
        f"adjacency checks: {rep.pairs_checked - len(rep.failed_pairs)}"
        f"/{rep.pairs_checked} passed",
    ]
    if not rep.left_distinct:
        lines.append("  left side has duplicate vertices")
    if not rep.right_distinct:
        lines.append("  right side has duplicate vertices")
    if not rep.disjoint:
        lines.append("  sides are not disjoint")
    for uid, vid in rep.failed_pairs:
        lines.append(f"  adjacency failed: vertex ids {uid}, {vid}")
    lines.append(f"result: {'PASS' if rep.passed else 'FAIL'}")
    return lines, rep.passed


def _verify_general_witness_data(data: dict) -> tuple[list[str], bool]:
    w = general.general_witness_from_json(data)
    report = general.verify_general_witness(w)
    kind = f"general {data['t'] - 1}x{data['m']}"
    return [f"witness kind: {kind}"] + _check_lines(report), report.passed


def cmd_verify(args) -> int:
    try:
        text = Path(args.path).read_text(encoding="utf-8")
    except OSError as exc:
        return _usage_error(f"cannot read {args.path}: {exc}")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        return _usage_error(f"malformed JSON: {exc}")
    if not isinstance(data, dict):
        return _usage_error("witness JSON must be an object")

    general_keys = {"t", "m", "p", "r", "thetas", "zeta", "A", "B", "verified"}
    graph_keys = {"p", "t", "modulus", "L", "R", "verified"}
    try:
        if general_keys <= set(data):
            general.general_schema_check(data)
            checker = _verify_general_witness_data
        elif graph_keys <= set(data):
            _schema_check_graph_witness(data)
            checker = _verify_graph_witness
        else:
            return _usage_error(
                "unrecognized witness schema (expected L/R or A/B keys)"
            )
    except ValueError as exc:
        return _usage_error(str(exc))

    # schema is sound; everything after this point is mathematics
    try:
        lines, passed = checker(data)
    except (ValueError, AssertionError) as exc:
        print(f"witness invalid: {exc}")
        print("result: FAIL")
        return 1
    print("\n".join(lines))
    return 0 if passed else 1


# -- export ----------------------------------------------------------------------


def cmd_export(args) -> int:
    try:
        G = make_graph(args.p, args.t)
    except ValueError as exc:
        return _usage_error(str(exc))
    if G.n > ENUM_LIMIT:
        return _usage_error(
            f"graph has n = {G.n} vertices, over the export guard of {ENUM_LIMIT}"
        )
    count = 0
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            for line in G.edge_lines():
                fh.write(line + "\n")
                count += 1
        print(f"vertices: {G.n}")
        print(f"edges: {count}")
    else:
        for line in G.edge_lines():
            print(line)
            count += 1
        _note(f"vertices: {G.n}")
        _note(f"edges: {count}")
    return 0


# -- witness-general ---------------------------------------------------------------


def cmd_witness_general(args) -> int:
    try:
        found = general.find_parameters(
            args.t,
            args.m,
            args.limit,
            max_results=None if args.all else 1,
            jobs=args.jobs,
        )
    except ValueError as exc:
        return _usage_error(str(exc))
    if not found:
        print(
            f"no parameters found for t={args.t}, m={args.m} with p <= {args.limit}",
            file=sys.stderr,
        )
        return 1
    payloads = []
    all_ok = True
    for params in found:
        try:
            w = general.build_general_witness(params, seed=args.seed)
        except (ValueError, AssertionError) as exc:
            _note(f"build failed at p={params.p}, r={params.r}: {exc}")
            all_ok = False
            continue
        report = general.verify_general_witness(w)
        all_ok = all_ok and report.passed
        payloads.append(general.general_witness_to_json(w, report.passed))
    if not payloads:
        return 1
    body = payloads if args.all else payloads[0]
    if args.format == "text":
        lines = [
            f"t={d['t']} m={d['m']} p={d['p']} r={d['r']} "
            f"verified={d['verified']}"
            for d in payloads
        ]
        _emit("\n".join(lines), args.output)
    else:
        _emit(json.dumps(body, indent=2), args.output)
    return 0 if all_ok else 1


# -- parser ----------------------------------------------------------------------


def _add_common(sp, jobs=True, output=True) -> None:
    if jobs:
        sp.add_argument("--jobs", type=int, default=1, help="worker processes")
    if output:
        sp.add_argument("--output", help="write primary output to this file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="normgraph",
        description="Projective norm graphs: qualifying-prime sieves, "
        "biclique witnesses, and common-neighborhood censuses.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p_sieve = sub.add_parser("sieve", help="sieve qualifying primes up to a limit")
    p_sieve.add_argument("--limit", type=int, required=True)
    p_sieve.add_argument("--format", choices=("text", "csv", "json"), default="text")
    p_sieve.add_argument(
        "--cache-dir",
        default=str(default_cache_dir()),
        help="cache directory (env NORMGRAPH_CACHE overrides the default)",
    )
    p_sieve.add_argument("--no-cache", action="store_true")
    _add_common(p_sieve)
    p_sieve.set_defaults(fn=cmd_sieve)

    p_w46 = sub.add_parser(
        "witness46", help="build and verify the 4x6 witness for a qualifying prime"
    )
    p_w46.add_argument("--p", type=int, default=None, help="prime (default 7)")
    p_w46.add_argument(
        "--all-orderings",
        action="store_true",
        help="also build and verify all 3! cubic-root orderings",
    )
    p_w46.add_argument("--format", choices=("text", "json"), default="text")
    _add_common(p_w46, jobs=False)
    p_w46.set_defaults(fn=cmd_witness46)

    p_census = sub.add_parser(
        "census", help="max common neighborhood size over k-subsets"
    )
    p_census.add_argument("--p", type=int, required=True)
    p_census.add_argument("--t", type=int, required=True)
    p_census.add_argument("--k", type=int, required=True)
    p_census.add_argument("--budget", type=int, default=CENSUS_BUDGET)
    p_census.add_argument("--sample", action="store_true")
    p_census.add_argument("--trials", type=int, default=100000)
    p_census.add_argument("--seed", type=int, default=0)
    p_census.add_argument("--format", choices=("text", "json"), default="text")
    _add_common(p_census)
    p_census.set_defaults(fn=cmd_census)

    p_verify = sub.add_parser("verify", help="re-verify a stored witness JSON file")
    p_verify.add_argument("path")
    p_verify.set_defaults(fn=cmd_verify)

    p_export = sub.add_parser("export", help="write the edge list of P(p,t)")
    p_export.add_argument("--p", type=int, required=True)
    p_export.add_argument("--t", type=int, required=True)
    _add_common(p_export, jobs=False)
    p_export.set_defaults(fn=cmd_export)

    p_gen = sub.add_parser(
        "witness-general", help="search parameters and emit general witnesses"
    )
    p_gen.add_argument("--t", type=int, required=True)
    p_gen.add_argument("--m", type=int, required=True)
    p_gen.add_argument("--limit", type=int, required=True)
    p_gen.add_argument("--all", action="store_true", help="emit every parameter set")
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--format", choices=("json", "text"), default="json")
    _add_common(p_gen)
    p_gen.set_defaults(fn=cmd_witness_general)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
