"""Command-line front end.

Exit codes: 0 when every requested check holds, 1 when a disagreement
witness is found, 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .analysis import SchmidtReport, is_schmidt, schmidt_structure_report, verify_theorem
from .catalog import build, default_catalog, load_catalog, verify_catalog, write_reports
from .constructors import DEFAULT_MAX_ORDER
from .core import GroupTable, format_cayley, parse_cayley, phi_report
from .errors import DescriptorError, GroupError
from .lattice import DEFAULT_MAX_LATTICE, all_subgroups, lattice_to_dot, lattice_to_json, phi_annotations

log = logging.getLogger("phigroups")

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT = 0, 1, 2


def load_group(spec: str, max_order: int = DEFAULT_MAX_ORDER) -> GroupTable:
    """A group from an inline JSON descriptor, a .json descriptor file, or a Cayley table file."""
    if spec.lstrip().startswith("{"):
        try:
            return build(json.loads(spec), max_order=max_order)
        except json.JSONDecodeError as exc:
            raise DescriptorError(f"inline descriptor is not valid JSON: {exc}") from None
    path = Path(spec)
    try:
        text = path.read_text()
    except OSError as exc:
        raise DescriptorError(f"cannot read {path}: {exc.strerror}") from None
    if text.lstrip().startswith("{"):
        try:
            desc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise DescriptorError(f"{path} is not valid JSON: {exc}") from None
        return build(desc, base_dir=path.parent, max_order=max_order)
    return parse_cayley(text)


def cmd_build(args) -> int:
    G = load_group(args.descriptor, args.max_order)
    Path(args.out).write_text(format_cayley(G))
    print(f"wrote group of order {G.order} to {args.out}")
    return EXIT_OK


def cmd_analyze(args) -> int:
    G = load_group(args.group, args.max_order)
    out: dict = {"order": G.order, **phi_report(G).to_dict()}
    status = EXIT_OK
    L = None
    if args.verdict or args.schmidt or args.dot or args.json:
        L = all_subgroups(G, max_lattice=args.max_lattice)
    if args.verdict:
        v = verify_theorem(G, L)
        out["verdict"] = v.to_dict()
        if not v.agrees:
            status = EXIT_VIOLATION
    if args.schmidt:
        if is_schmidt(G, L):
            rep = schmidt_structure_report(G, L)
            if not rep.all_clauses:
                status = EXIT_VIOLATION
        else:
            rep = SchmidtReport(False)
        out["schmidt"] = rep.to_dict()
    if args.dot:
        Path(args.dot).write_text(lattice_to_dot(L, phi_annotations(L)))
    if args.json:
        payload = dict(out)
        payload["lattice"] = lattice_to_json(L)
        Path(args.json).write_text(json.dumps(payload, indent=2) + "\n")
    print(json.dumps(out, indent=2))
    return status


def cmd_verify_catalog(args) -> int:
    spec = default_catalog() if args.catalog == "default" else load_catalog(args.catalog)
    if args.max_order is not None:
        spec.max_order = args.max_order
    if args.max_lattice is not None:
        spec.max_lattice = args.max_lattice
    results = verify_catalog(spec, parallel=args.parallel)
    write_reports(results, args.out_dir)
    bad = [p for r in results for p in r.problems]
    for r in results:
        log.info("%s: %s", r.name, "ok" if r.ok else "FAIL")
    print(f"verified {len(results)} groups, {len(results) - sum(not r.ok for r in results)} ok; reports in {args.out_dir}")
    if bad:
        for p in bad:
            print(f"VIOLATION {p}", file=sys.stderr)
        return EXIT_VIOLATION
    return EXIT_OK


def _budget_flags(p: argparse.ArgumentParser, default_order, default_lattice) -> None:
    p.add_argument("--max-order", type=int, default=default_order, help="largest group order to construct")
    p.add_argument("--max-lattice", type=int, default=default_lattice, help="largest order for lattice enumeration")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="phigroups", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="write the canonical Cayley table of a described group")
    p.add_argument("descriptor", help="descriptor JSON file, inline JSON, or Cayley table file")
    p.add_argument("out")
    _budget_flags(p, DEFAULT_MAX_ORDER, DEFAULT_MAX_LATTICE)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("analyze", help="print exponent, phi and spectrum; optionally verdicts")
    p.add_argument("group", help="descriptor JSON file, inline JSON, or Cayley table file")
    p.add_argument("--verdict", action="store_true", help="evaluate conditions (1), (2) and the classification")
    p.add_argument("--schmidt", action="store_true", help="evaluate the Schmidt-group structure clauses")
    p.add_argument("--dot", metavar="PATH", help="write the annotated subgroup lattice as DOT")
    p.add_argument("--json", metavar="PATH", help="write the report and lattice as JSON")
    _budget_flags(p, DEFAULT_MAX_ORDER, DEFAULT_MAX_LATTICE)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("verify-catalog", help="run every check over a catalog")
    p.add_argument("catalog", help="catalog JSON file, or 'default' for the shipped catalog")
    p.add_argument("out_dir")
    p.add_argument("--parallel", type=int, default=1)
    _budget_flags(p, None, None)
    p.set_defaults(func=cmd_verify_catalog)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    if getattr(args, "parallel", 1) < 1:
        print("error: --parallel must be >= 1", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except GroupError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
