"""Command-line surface: inspect groups, emit graphs, compute kappa,
classify, and run catalog or table-file sweeps.

Exit codes: 0 success, 1 audit disagreement, 2 input error, 3 resource
cap exceeded.  Group specs resolve as a catalog label first, then as a
file path by extension (.json multiplication tables, .gens permutation
generators, .pres presentation); an ambiguous spec is an error.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from multiprocessing import Pool

from . import catalog
from .classify import audit as classify_audit
from .errors import CapExceeded, ValidationError
from .graphs import (
    build_graph,
    graph_to_json,
    kappa as compute_kappa,
    minimum_separator_witness,
    to_dot,
)
from .groups import (
    FiniteGroup,
    factorize,
    from_permutation_generators,
    group_from_dict,
    parse_permutation_file_text,
)
from .lattice import (
    LATTICE_CAP,
    all_subgroups,
    center,
    frattini,
    is_nilpotent,
    is_solvable,
    is_supersolvable,
    lattice_to_json,
    order_length,
)
from .presentations import parse_presentation_text, todd_coxeter

EXIT_OK = 0
EXIT_DISAGREE = 1
EXIT_INPUT = 2
EXIT_CAP = 3

CSV_COLUMNS = (
    "label",
    "order",
    "solvable",
    "nilpotent",
    "kappa",
    "caseA",
    "caseB",
    "caseC",
    "agreeA",
    "agreeB",
    "agreeC",
)
CSV_FORMAT_VERSION = 1


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise ValidationError(f"environment variable {name} must be an integer") from None


def resolve_group(spec: str) -> FiniteGroup:
    """Resolve a group spec: catalog label first, then a file by extension."""
    is_label = spec in catalog.labels()
    is_path = os.path.exists(spec)
    if is_label and is_path:
        raise ValidationError(f"{spec!r} is both a catalog label and a file; rename one")
    if is_label:
        return catalog.get_group(spec)
    if is_path:
        if spec.endswith(".json"):
            groups = catalog.ingest_tables(spec)
            if len(groups) != 1:
                raise ValidationError(
                    f"{spec} holds {len(groups)} groups; single-group commands need exactly one"
                )
            return groups[0]
        if spec.endswith(".gens"):
            with open(spec, "r", encoding="utf-8") as fh:
                degree, gens = parse_permutation_file_text(fh.read())
            return from_permutation_generators(degree, gens, label=os.path.basename(spec))
        if spec.endswith(".pres"):
            with open(spec, "r", encoding="utf-8") as fh:
                pres = parse_presentation_text(fh.read())
            G = todd_coxeter(pres)
            G.label = os.path.basename(spec)
            return G
        raise ValidationError(f"{spec}: unknown file extension (expected .json, .gens, or .pres)")
    raise ValidationError(f"{spec!r} is neither a catalog label nor an existing file")


def _bool_str(v) -> str:
    if v is None:
        return ""
    return "true" if v else "false"


def _report_row(rep: dict) -> dict:
    return {
        "label": rep["label"],
        "order": rep["order"],
        "solvable": _bool_str(rep["solvable"]),
        "nilpotent": _bool_str(rep["nilpotent"]),
        "kappa": rep["kappa"],
        "caseA": rep["case_a"] or "",
        "caseB": rep["case_b"] or "",
        "caseC": rep["case_c"] or "",
        "agreeA": _bool_str(rep["agree_a"]),
        "agreeB": _bool_str(rep["agree_b"]),
        "agreeC": _bool_str(rep["agree_c"]),
    }


# -- subcommands -----------------------------------------------------------


def cmd_info(args) -> int:
    G = resolve_group(args.spec)
    L = all_subgroups(G, max_subgroups=args.max_lattice)
    g = build_graph(L)
    phi_order = frattini(G, L).order if G.order > 1 else 1
    info = {
        "label": G.label or args.spec,
        "order": G.order,
        "order_length": order_length(G),
        "solvable": is_solvable(G),
        "nilpotent": is_nilpotent(G, L),
        "supersolvable": is_supersolvable(G, L),
        "simple": not any(L.normal_flags()[i] for i in L.proper_nontrivial)
        and factorize(G.order) != {G.order: 1}
        and G.order > 1,
        "vertex_count": g.n,
        "minimal_subgroups": len(L.minimal_indices),
        "maximal_subgroups": len(L.maximal_indices),
        "frattini_order": phi_order,
        "center_order": center(G).order,
        "kappa": compute_kappa(G, L, g),
    }
    if args.format == "json":
        print(json.dumps(info))
    else:
        for key, value in info.items():
            print(f"{key} = {value}")
    return EXIT_OK


def cmd_kappa(args) -> int:
    G = resolve_group(args.spec)
    if G.order == 1 or factorize(G.order) == {G.order: 1}:
        value = -2 if G.order == 1 else -1
        payload = {"label": G.label or args.spec, "kappa": value}
        if args.witness:
            payload["witness"] = None
        print(json.dumps(payload) if args.format == "json" else f"kappa = {value}")
        return EXIT_OK
    L = all_subgroups(G, max_subgroups=args.max_lattice)
    g = build_graph(L)
    value = compute_kappa(G, L, g)
    payload = {"label": G.label or args.spec, "kappa": value}
    witness_lines = []
    if args.witness:
        if g.is_complete() and g.n == 2:
            # either vertex of the two-vertex complete graph counts as a
            # cut vertex by convention; report the upward-closed one
            s = g.vertices[1]
            payload["witness"] = [{"order": s.order, "members": list(s.members)}]
            witness_lines.append("witness cut vertex (two-vertex convention):")
            witness_lines.append(f"  order={s.order} members={list(s.members)}")
        elif g.is_complete():
            payload["witness"] = None
            witness_lines.append("graph is complete: no separating set exists")
        else:
            size, cut = minimum_separator_witness(g)
            subs = [g.vertices[i] for i in cut]
            payload["witness"] = [
                {"order": s.order, "members": list(s.members)} for s in subs
            ]
            witness_lines.append(f"witness separating set (size {size}):")
            for s in subs:
                witness_lines.append(f"  order={s.order} members={list(s.members)}")
    if args.format == "json":
        print(json.dumps(payload))
    else:
        print(f"kappa = {value}")
        for line in witness_lines:
            print(line)
    return EXIT_OK


def cmd_graph(args) -> int:
    G = resolve_group(args.spec)
    L = all_subgroups(G, max_subgroups=args.max_lattice)
    g = build_graph(L)
    if args.format == "json":
        print(json.dumps(graph_to_json(g)))
    else:
        sys.stdout.write(to_dot(g))
    return EXIT_OK


def cmd_lattice(args) -> int:
    G = resolve_group(args.spec)
    L = all_subgroups(G, max_subgroups=args.max_lattice)
    print(json.dumps(lattice_to_json(L)))
    return EXIT_OK


def _audit_one(payload) -> dict:
    kind, data, max_lattice = payload
    if kind == "label":
        G = catalog.get_group(data)
    else:
        G = group_from_dict(data)
    L = all_subgroups(G, max_subgroups=max_lattice)
    g = build_graph(L)
    k = compute_kappa(G, L, g)
    return classify_audit(G, L, g, k).to_dict()


def cmd_audit(args) -> int:
    if args.tables:
        groups = catalog.ingest_tables(args.tables)
        oversized = [g.label or g.order for g in groups if g.order > args.max_order]
        if oversized:
            raise CapExceeded(
                f"table groups exceed --max-order={args.max_order}: {oversized}"
            )
        payloads = [
            ("table", {"label": g.label, "order": g.order, "table": g.table.tolist()}, args.max_lattice)
            for g in groups
        ]
    else:
        entries = catalog.default_entries(max_order=args.max_order)
        payloads = [("label", e.label, args.max_lattice) for e in entries]

    if args.jobs > 1:
        with Pool(args.jobs) as pool:
            reports = pool.map(_audit_one, payloads)
    else:
        reports = [_audit_one(p) for p in payloads]

    rows = [_report_row(rep) for rep in reports]
    if args.csv:
        with open(args.csv, "w", encoding="utf-8", newline="") as fh:
            fh.write(f"# intgraph-audit-format {CSV_FORMAT_VERSION}\n")
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(CSV_COLUMNS)
            for row in rows:
                writer.writerow([row[c] for c in CSV_COLUMNS])

    disagreements = []
    for rep in reports:
        for key, case_key in (("agree_a", "case_a"), ("agree_b", "case_b"), ("agree_c", "case_c")):
            if rep[key] is False:
                disagreements.append(
                    {
                        "label": rep["label"],
                        "classification": case_key[-1].upper(),
                        "kappa": rep["kappa"],
                        "case": rep[case_key],
                    }
                )

    if args.format == "json":
        for rep in reports:
            print(json.dumps(rep))
    else:
        for row, rep in zip(rows, reports):
            bad = any(rep[k] is False for k in ("agree_a", "agree_b", "agree_c"))
            print(
                f"{row['label']:>16}  order={row['order']:<5} kappa={row['kappa']:<3} "
                f"caseA={row['caseA'] or '-':<2} caseB={row['caseB'] or '-':<3} "
                f"caseC={row['caseC'] or '-':<3}{' DISAGREE' if bad else ''}"
            )
    agree_count = sum(
        1 for rep in reports for key in ("agree_a", "agree_b", "agree_c") if rep[key] is True
    )
    print(
        f"# {len(reports)} groups audited, {agree_count} agreements, "
        f"{len(disagreements)} disagreements",
        file=sys.stderr,
    )
    if disagreements:
        for rec in disagreements:
            print(json.dumps({"disagreement": rec}))
        return EXIT_DISAGREE
    return EXIT_OK


def cmd_catalog(args) -> int:
    sys.stdout.write(catalog.manifest_text())
    return EXIT_OK


# -- entry point ------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="intgraph",
        description="Intersection graphs of subgroups: build, measure connectivity, classify.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument(
            "--max-lattice",
            type=int,
            default=None,
            help="cap on the number of subgroups (default: INTGRAPH_MAX_LATTICE or %d)"
            % LATTICE_CAP,
        )

    p_info = sub.add_parser("info", help="structural summary of a group")
    p_info.add_argument("spec")
    p_info.add_argument("--format", choices=("text", "json"), default="text")
    add_common(p_info)
    p_info.set_defaults(func=cmd_info)

    p_kappa = sub.add_parser("kappa", help="vertex connectivity of the intersection graph")
    p_kappa.add_argument("spec")
    p_kappa.add_argument("--witness", action="store_true", help="also print a minimum separating set")
    p_kappa.add_argument("--format", choices=("text", "json"), default="text")
    add_common(p_kappa)
    p_kappa.set_defaults(func=cmd_kappa)

    p_graph = sub.add_parser("graph", help="emit the intersection graph")
    p_graph.add_argument("spec")
    p_graph.add_argument("--format", choices=("dot", "json"), default="dot")
    add_common(p_graph)
    p_graph.set_defaults(func=cmd_graph)

    p_lat = sub.add_parser("lattice", help="emit the subgroup lattice as JSON")
    p_lat.add_argument("spec")
    add_common(p_lat)
    p_lat.set_defaults(func=cmd_lattice)

    p_audit = sub.add_parser("audit", help="audit classifications against computed kappa")
    src = p_audit.add_mutually_exclusive_group()
    src.add_argument("--catalog", action="store_true", help="audit the built-in catalog (default)")
    src.add_argument("--tables", metavar="PATH", help="audit groups from a table file")
    p_audit.add_argument("--csv", metavar="OUT", help="also write a CSV report")
    p_audit.add_argument("--format", choices=("text", "json"), default="text")
    p_audit.add_argument("--jobs", type=int, default=1, help="parallel workers")
    p_audit.add_argument("--max-order", type=int, default=None)
    add_common(p_audit)
    p_audit.set_defaults(func=cmd_audit)

    p_cat = sub.add_parser("catalog", help="print the catalog manifest")
    p_cat.set_defaults(func=cmd_catalog)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if hasattr(args, "max_lattice"):
        if args.max_lattice is None or args.max_lattice < 0:
            args.max_lattice = _env_int("INTGRAPH_MAX_LATTICE", LATTICE_CAP)
    if getattr(args, "max_order", None) is None and args.command == "audit":
        args.max_order = _env_int("INTGRAPH_MAX_ORDER", catalog.DEFAULT_SWEEP_MAX_ORDER)
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except CapExceeded as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return EXIT_CAP


def entry() -> None:
    sys.exit(main())
