"""Command line front end.

Subcommands: gen, hales, bw, radius, decomp, bramble, spectrum, oracle,
suite, table. Exit codes: 0 when everything checked out (or failures
are explicitly flagged as known), 1 on an identity failure, 2 on usage
or size-cap errors.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import sys

from . import bounds, decomp, graphs, hales, oracles, suites, widthcalc
from .errors import HypothesisError, ParameterError, SizeCapError, WidthLabError

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2


def _parse_range(text: str) -> range:
    """'4' -> 4..4, '1:6' -> 1..6 (inclusive)."""
    if ":" in text:
        lo, hi = text.split(":", 1)
        return range(int(lo), int(hi) + 1)
    v = int(text)
    return range(v, v + 1)


@contextlib.contextmanager
def _out_stream(path):
    if path is None:
        yield sys.stdout
    else:
        with open(path, "w") as fh:
            yield fh


def _single(rng: range, flag: str) -> int:
    if len(rng) != 1:
        raise ParameterError(f"--{flag} must be a single value here")
    return rng[0]


def _cmd_gen(args) -> int:
    spec = graphs.FamilySpec(
        args.family,
        t=_single(args.t, "t"),
        q=_single(args.q, "q"),
        n=_single(args.n, "n"),
        k=_single(args.k, "k"),
    )
    g = graphs.generate(spec)
    if args.out is None:
        graphs.dump_graph(g, sys.stdout)
    else:
        graphs.write_graph(g, args.out)
        print(f"wrote {g.n} vertices, {g.num_edges} edges to {args.out}")
    return EXIT_OK


def _cmd_hales(args) -> int:
    n = _single(args.n, "n")
    order = hales.hales_order(n)
    with _out_stream(args.out) as fh:
        fh.write("rank,vector\n")
        for i, row in enumerate(order.rows, start=1):
            vec = "".join(str(b) for b in hales.vector_of(int(row), n))
            fh.write(f"{i},{vec}\n")
    return EXIT_OK


def _cmd_bw(args) -> int:
    status = EXIT_OK
    for t in args.t:
        for n in args.n:
            closed = widthcalc.bw_closed(t, n)
            recursion = widthcalc.bw_recursion(t, n)
            line = f"t={t} n={n} closed={closed} recursion={recursion}"
            values = {closed, recursion}
            if n <= min(args.cap, widthcalc.FULL_MATRIX_MAX_N):
                direct = widthcalc.matrix_bandwidth(widthcalc.assemble_full(t, n))
                line += f" direct={direct}"
                values.add(direct)
            agree = len(values) == 1
            line += f" agree={agree}"
            print(line)
            if not agree:
                status = EXIT_MISMATCH
    return status


def _cmd_radius(args) -> int:
    t = _single(args.t, "t")
    n = _single(args.n, "n")
    k = _single(args.k, "k")
    s = _single(args.s, "s")
    closed = widthcalc.radius_closed(t, n, k, s)
    recursive = widthcalc.radius_recursive(t, n, k, t - 2 * s)
    direct = widthcalc.manhattan_radius(widthcalc.assemble_block(t, n, k, k + t - 2 * s))
    agree = closed == recursive == direct
    print(f"t={t} n={n} k={k} s={s} closed={closed} recursive={recursive} direct={direct} agree={agree}")
    return EXIT_OK if agree else EXIT_MISMATCH


def _cmd_decomp(args) -> int:
    if args.gr:
        g = graphs.read_graph(args.gr)
        if not args.td:
            raise ParameterError("--td is required together with --gr")
        d, declared_n = decomp.read_td(args.td)
        if declared_n != g.num_vertices:
            print(f"declared vertex count {declared_n} differs from graph ({g.num_vertices})")
            return EXIT_MISMATCH
        report = decomp.validate_decomposition(g, d)
    else:
        n = _single(args.n, "n")
        k = _single(args.k, "k")
        g = graphs.gen_petersen(n, k)
        d = decomp.petersen_pd(n, k, args.mode)
        report = decomp.validate_decomposition(g, d)
        if args.out:
            decomp.write_td(d, g.num_vertices, args.out)
    print(
        f"ok={report.ok} width={report.width} "
        f"missing={list(report.missing_vertices)} "
        f"uncovered={list(report.uncovered_edges)} "
        f"disconnected={list(report.disconnected_vertices)}"
    )
    return EXIT_OK if report.ok else EXIT_MISMATCH


def _cmd_bramble(args) -> int:
    n = _single(args.n, "n")
    k = _single(args.k, "k")
    g = graphs.gen_petersen(n, k)
    bramble = bounds.petersen_bramble(n, k)
    report = bounds.validate_bramble(g, bramble)
    h = bounds.bramble_hypergraph(g, bramble)
    payload = {
        "instance": f"petersen n={n} k={k}",
        "valid": report.ok,
        "first_disconnected": report.first_disconnected,
        "first_nontouching": report.first_nontouching,
        "set_size": len(bramble.sets[0]),
        "fraction_bound": str(bounds.transversal_fraction_bound(h)),
    }
    try:
        payload["order_lower_bound"] = bounds.petersen_order_lower_bound(n, k)
    except HypothesisError as exc:
        payload["order_lower_bound"] = None
        payload["order_bound_note"] = str(exc)
    with _out_stream(args.out) as fh:
        json.dump(payload, fh, indent=1)
        fh.write("\n")
    return EXIT_OK if report.ok else EXIT_MISMATCH


def _cmd_spectrum(args) -> int:
    k = _single(args.k, "k")
    spectrum = bounds.bk_spectrum(k)
    payload = {
        "k": k,
        "pairs": [list(p) for p in spectrum.pairs],
        "num_vertices": spectrum.num_vertices(),
        "spectral_lower_bound": bounds.bk_spectral_lb(k),
    }
    if spectrum.num_vertices() <= bounds.SPECTRUM_CAP:
        g = graphs.gen_bipartite_kneser(2 * k + 1, k)
        report = bounds.verify_spectrum_moments(g, spectrum, args.p_max)
        payload["moments_checked_to"] = args.p_max
        payload["moments_ok"] = report.ok
        if not report.ok:
            payload["failed_p"] = report.failed_p
    else:
        payload["moments_ok"] = None
        payload["note"] = "graph too large for the moment check; closed form only"
    with _out_stream(args.out) as fh:
        json.dump(payload, fh, indent=1)
        fh.write("\n")
    return EXIT_OK if payload["moments_ok"] in (True, None) else EXIT_MISMATCH


def _cmd_oracle(args) -> int:
    if args.gr:
        g = graphs.read_graph(args.gr)
        instance = args.gr
    else:
        spec = graphs.FamilySpec(
            args.family,
            t=_single(args.t, "t"),
            q=_single(args.q, "q"),
            n=_single(args.n, "n"),
            k=_single(args.k, "k"),
        )
        g = graphs.generate(spec)
        instance = f"{args.family} t={spec.t} q={spec.q} n={spec.n} k={spec.k}"
    what = args.what
    if what == "tw":
        value, cert = oracles.exact_treewidth(g, cap=args.cap)
    elif what == "pw":
        value, cert = oracles.exact_pathwidth(g, cap=args.cap)
    elif what == "bw":
        value, cert = oracles.exact_bandwidth(g, cap=min(args.cap, oracles.BW_CAP))
    elif what == "bv":
        table = oracles.bv_table(g, cap=min(args.cap, oracles.BV_CAP))
        value, cert = [int(x) for x in table], None
    elif what == "separator":
        tw, _ = oracles.exact_treewidth(g, cap=args.cap)
        found = oracles.min_balanced_separator(g, tw + 1, cap=min(args.cap, oracles.SEPARATOR_CAP))
        value = len(found[0]) if found else None
        cert = found
    else:
        raise ParameterError(f"unknown oracle {what!r}")
    payload = {"instance": instance, "oracle": what, "value": value, "certificate": cert}
    with _out_stream(args.out) as fh:
        json.dump(payload, fh, indent=1)
        fh.write("\n")
    return EXIT_OK


def _cmd_suite(args) -> int:
    params = {}
    for token in args.param:
        if "=" not in token:
            raise ParameterError(f"suite parameters look like name=value, got {token!r}")
        key, val = token.split("=", 1)
        params[key] = int(val)
    config = suites.SuiteConfig(args.name, params=params, fmt=args.format, out=args.out, workers=args.workers)
    records = suites.run_suite(config)
    with _out_stream(args.out) as fh:
        suites.write_report(config, records, fh)
    passed = suites.suite_passed(records)
    failures = [r for r in records if not (r.equal or r.flagged_known)]
    flagged = [r for r in records if r.flagged_known]
    print(
        f"suite {args.name}: {len(records)} records, "
        f"{len(failures)} failures, {len(flagged)} flagged-known",
        file=sys.stderr,
    )
    return EXIT_OK if passed else EXIT_MISMATCH


def _cmd_table(args) -> int:
    grid = {"t": list(args.t), "n": list(args.n), "k": list(args.k), "s": list(args.s)}
    with _out_stream(args.out) as fh:
        suites.emit_table(args.formula, grid, args.format, fh)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="widthlab", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, *, family=False, mode=False, what=False, formula=False, suite=False):
        p.add_argument("--t", type=_parse_range, default=range(1, 2))
        p.add_argument("--q", type=_parse_range, default=range(2, 3))
        p.add_argument("--n", type=_parse_range, default=range(1, 2))
        p.add_argument("--k", type=_parse_range, default=range(1, 2))
        p.add_argument("--s", type=_parse_range, default=range(0, 1))
        p.add_argument("--cap", type=int, default=25)
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--out", default=None)
        p.add_argument("--workers", type=int, default=1)
        if family:
            p.add_argument("--family", choices=("hamming", "johnson", "bipartite_kneser", "petersen"), default="hamming")
        if mode:
            p.add_argument("--mode", choices=("verbatim", "repaired"), default="repaired")
        if what:
            p.add_argument("--what", choices=("tw", "pw", "bw", "bv", "separator"), default="tw")

    p = sub.add_parser("gen", help="emit a family member in PACE .gr form")
    add_common(p, family=True)
    p.set_defaults(fn=_cmd_gen)

    p = sub.add_parser("hales", help="print the global binary order as CSV")
    add_common(p)
    p.set_defaults(fn=_cmd_hales)

    p = sub.add_parser("bw", help="closed/recursive/direct bandwidth values")
    add_common(p)
    p.set_defaults(fn=_cmd_bw)

    p = sub.add_parser("radius", help="closed/recursive/direct block radii")
    add_common(p)
    p.set_defaults(fn=_cmd_radius)

    p = sub.add_parser("decomp", help="build or validate path/tree decompositions")
    add_common(p, mode=True)
    p.add_argument("--gr", default=None, help="validate this .gr graph ...")
    p.add_argument("--td", default=None, help="... against this .td decomposition")
    p.set_defaults(fn=_cmd_decomp)

    p = sub.add_parser("bramble", help="build and validate the window bramble")
    add_common(p)
    p.set_defaults(fn=_cmd_bramble)

    p = sub.add_parser("spectrum", help="closed-form spectrum with moment certification")
    add_common(p)
    p.add_argument("--p-max", type=int, default=6)
    p.set_defaults(fn=_cmd_spectrum)

    p = sub.add_parser("oracle", help="exact brute-force values with certificates")
    add_common(p, family=True, what=True)
    p.add_argument("--gr", default=None, help="run on a .gr file instead of a family")
    p.set_defaults(fn=_cmd_oracle)

    p = sub.add_parser("suite", help="run a named verification suite")
    add_common(p)
    p.add_argument("--name", required=True, choices=sorted(suites.SUITES))
    p.add_argument("--param", action="append", default=[], metavar="NAME=VALUE", help="override a suite grid parameter")
    p.set_defaults(fn=_cmd_suite)

    p = sub.add_parser("table", help="emit a formula table over a grid")
    add_common(p)
    p.add_argument("--formula", required=True, choices=sorted(suites.TABLE_FORMULAS))
    p.set_defaults(fn=_cmd_table)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (ParameterError, SizeCapError, HypothesisError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except WidthLabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MISMATCH


if __name__ == "__main__":
    sys.exit(main())
