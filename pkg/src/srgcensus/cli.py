"""Command-line front end.

Exit codes: 0 success / verified, 1 verification mismatch, 2 invalid input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import time
from fractions import Fraction

from . import catalog as cat
from .census import available_workers, census, count_polygons
from .formulas import (
    FreeVars,
    check_bounds,
    check_integrality,
    evaluate_p,
    feasible_params,
    fit_and_verify,
    multiplicities,
)
from .graph import Graph, GraphError, as_host, emit_graph6, read_graph6_file
from .srg import construct, verify_srg

EXIT_OK, EXIT_MISMATCH, EXIT_INVALID = 0, 1, 2


def _readable_file(path: str) -> str:
    if not os.path.isfile(path) or not os.access(path, os.R_OK):
        raise argparse.ArgumentTypeError(f"cannot read host file {path!r}")
    return path


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="srgcensus",
        description="Hamiltonian 7-vertex subgraph census and counting identities for srg(n,k,1,2).",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def host_args(p, batch=True):
        p.add_argument("--host", required=True, type=_readable_file, help="graph6 file")
        if batch:
            p.add_argument("--all", action="store_true", help="process every record, one JSON line each")
        p.add_argument("-o", "--output", help="write to this file instead of stdout")

    p = sub.add_parser("catalog", help="list admissible subgraph classes")
    p.add_argument("--order", type=int, default=7, choices=range(3, 8), metavar="{3..7}")
    p.add_argument("--all-classes", action="store_true", help="drop the Hamiltonicity filter")
    p.add_argument("--format", choices=("json", "g6"), default="json")
    p.add_argument("-o", "--output")

    p = sub.add_parser("census", help="count induced catalog classes in a host")
    host_args(p)
    p.add_argument("--engine", choices=("auto", "subset", "extend"), default="auto")
    p.add_argument("--jobs", type=_positive_int, default=available_workers())
    p.add_argument("--format", choices=("json", "csv"), default="json")

    p = sub.add_parser("polygons", help="induced cycle counts vs closed forms")
    host_args(p)

    p = sub.add_parser("identities", help="fit and verify the class-count formulas")
    host_args(p)
    p.add_argument("--engine", choices=("auto", "subset", "extend"), default="auto")
    p.add_argument("--jobs", type=_positive_int, default=available_workers())

    p = sub.add_parser("verify-srg", help="check strong regularity")
    host_args(p)

    p = sub.add_parser("params", help="feasible srg(n,k,1,2) parameters")
    p.add_argument("--max-k", type=int, required=True)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("-o", "--output")

    p = sub.add_parser("construct", help="write a named graph as graph6")
    p.add_argument("--name", required=True, help="rook3x3, paley9, paley<p>, cycle<m>, path<m>, complete<m>")
    p.add_argument("-o", "--output")
    return parser


def parse_args(argv: list[str] | None = None) -> argparse.Namespace:
    args = build_parser().parse_args(argv)
    if args.command == "params" and args.max_k < 4:
        build_parser().error("--max-k must be >= 4")
    return args


# --------------------------------------------------------------------------
# subcommands; each returns (payload, exit code)


def _num(x: Fraction) -> int | str:
    return int(x) if x.denominator == 1 else str(x)


def _host_info(host: Graph) -> dict:
    return {"n": host.order, "g6": emit_graph6(host)}


def _run_census(host: Graph, args) -> tuple[dict, int]:
    catalog = cat.hamiltonian_catalog()
    classifier = cat.default_classifier()
    start = time.perf_counter()
    vec = census(host, classifier, args.engine, args.jobs)
    elapsed = (time.perf_counter() - start) * 1000
    payload = {
        "host": _host_info(host),
        "catalog_hash": classifier.catalog_hash,
        "engine": args.engine,
        "counts": [{"id": e.id, "g6": e.graph6, "count": vec[e.id]} for e in catalog],
        "elapsed_ms": round(elapsed, 3),
    }
    return payload, EXIT_OK


def _family_params(host: Graph):
    verdict = verify_srg(as_host(host))
    if verdict.is_srg and verdict.params.in_family:
        return verdict.params
    return None


def _run_polygons(host: Graph, args) -> tuple[dict, int]:
    measured = count_polygons(host)
    payload: dict = {"host": _host_info(host), "measured": measured.as_dict(), "formulas": None}
    params = _family_params(host) if host.order >= 2 else None
    if params is None:
        payload["note"] = "host is not srg(n,k,1,2); closed forms not applicable"
        return payload, EXIT_OK
    f = evaluate_p(params)
    m = measured.as_dict()
    checks = {
        "p3": m["p3"] == f["p3"],
        "p4": m["p4"] == f["p4"],
        "p5": m["p5"] == f["p5"],
        "p6_at_least_bound": m["p6"] >= f["p6_lower"],
        "p7_at_most_bound": m["p7"] <= f["p7_upper"],
    }
    conj = {
        "p6": "conjecture holds on this host" if m["p6"] == f["p6_lower"] else "bound strict on this host",
        "p7": "conjecture holds on this host" if m["p7"] == f["p7_upper"] else "bound strict on this host",
    }
    payload.update(
        params=params.as_dict(),
        formulas={k: _num(v) for k, v in f.items()},
        checks=checks,
        conjecture=conj,
    )
    return payload, EXIT_OK if all(checks.values()) else EXIT_MISMATCH


def _run_identities(host: Graph, args) -> tuple[dict, int]:
    params = _family_params(host)
    if params is None:
        raise GraphError("host is not srg(n,k,1,2); identities do not apply")
    catalog = cat.hamiltonian_catalog()
    classifier = cat.default_classifier()
    vec = census(host, classifier, args.engine, args.jobs)
    fit = fit_and_verify(vec, params, catalog.cycle_id())
    payload: dict = {
        "host": _host_info(host),
        "params": params.as_dict(),
        "catalog_hash": classifier.catalog_hash,
        "fitted": None if fit.n3 is None else {"n3": fit.n3, "h11": fit.h11},
        "matched": fit.matched,
        "candidates": [{"n3": c.n3, "h11": c.h11} for c in fit.candidates],
        "per_index": {
            f"h{row['index']}": {
                "predicted": row["predicted"],
                "measured": row["measured"],
                "catalog_id": row["catalog_id"],
            }
            for row in fit.per_index()
        },
        "measured_counts": list(vec.counts),
        "bounds_ok": None,
        "integrality_violations": [],
    }
    if fit.n3 is not None:
        fv = FreeVars(fit.n3, fit.h11)
        payload["bounds_ok"] = check_bounds(fv)
        payload["integrality_violations"] = [
            {"formula": v.formula, "value": str(v.value)} for v in check_integrality(params, fv)
        ]
        payload["residual"] = _num(Fraction(fit.residual))
    return payload, EXIT_OK if fit.matched else EXIT_MISMATCH


def _run_verify(host: Graph, args) -> tuple[dict, int]:
    verdict = verify_srg(as_host(host))
    payload = {"host": _host_info(host), **verdict.as_dict()}
    return payload, EXIT_OK if verdict.is_srg else EXIT_MISMATCH


_HOST_COMMANDS = {
    "census": _run_census,
    "polygons": _run_polygons,
    "identities": _run_identities,
    "verify-srg": _run_verify,
}


def _emit(text: str, output: str | None) -> None:
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _census_csv(payload: dict) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["id", "g6", "count"])
    for row in payload["counts"]:
        writer.writerow([row["id"], row["g6"], row["count"]])
    return buf.getvalue()


def _run_host_command(args) -> int:
    hosts = read_graph6_file(args.host, all_records=args.all)
    handler = _HOST_COMMANDS[args.command]
    lines = []
    code = EXIT_OK
    for host in hosts:
        payload, rc = handler(host, args)
        code = max(code, rc)
        if args.command == "census" and args.format == "csv":
            lines.append(_census_csv(payload))
        elif args.all:
            lines.append(json.dumps(payload, sort_keys=True) + "\n")
        else:
            lines.append(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    _emit("".join(lines), args.output)
    return code


def run(args: argparse.Namespace) -> int:
    try:
        if args.command in _HOST_COMMANDS:
            return _run_host_command(args)
        if args.command == "catalog":
            catalog = cat.generate_catalog(args.order, not args.all_classes)
            if args.format == "g6":
                text = "".join(e.graph6 + "\n" for e in catalog)
            else:
                text = json.dumps(catalog.to_json(), indent=2) + "\n"
            _emit(text, args.output)
            return EXIT_OK
        if args.command == "params":
            rows = []
            for p in feasible_params(args.max_k):
                f, g = multiplicities(p.n, p.k, math.isqrt(4 * p.k - 7))
                rows.append({**p.as_dict(), "multiplicities": [int(f), int(g)]})
            if args.format == "csv":
                text = "n,k,lambda,mu\n" + "".join(
                    f"{r['n']},{r['k']},{r['lambda']},{r['mu']}\n" for r in rows
                )
            else:
                text = json.dumps(rows, indent=2) + "\n"
            _emit(text, args.output)
            return EXIT_OK
        if args.command == "construct":
            _emit(emit_graph6(construct(args.name)) + "\n", args.output)
            return EXIT_OK
    except (GraphError, ValueError, OSError, OverflowError) as exc:
        print(f"srgcensus: error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    raise AssertionError(f"unhandled command {args.command}")


def main(argv: list[str] | None = None) -> int:
    return run(parse_args(argv))


if __name__ == "__main__":
    sys.exit(main())
