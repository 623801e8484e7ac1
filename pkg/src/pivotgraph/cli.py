"""Command-line harness: reproducible verification runs over graph6 or
edge-list inputs, with machine-readable JSON reports.

Exit codes: 0 all accepted, 1 any rejection/absence, 2 input error,
3 budget exhausted anywhere (checked in the order 2, 1, 3).  Reports
are byte-stable for identical inputs; wall times are only included
behind --timing so the default output stays reproducible.
"""
from __future__ import annotations

import argparse
import json
import re
import sys
import time
from fractions import Fraction

from . import __version__
from .canon import DEFAULT_CANONICAL_MAX_N, enumerate_graphs
from .codec import decode_edge_list, decode_graph6, encode_graph6
from .coherence import check_coherent, check_focused, check_r_coherent, eh_ratio
from .errors import (BudgetExhausted, InvalidPlan, InvalidSet, MalformedGraph6,
                     MissingVertex, NotAnEdge, Oversize, PivotGraphError)
from .graphs import Graph
from .mass import MassedGraph, massed_graph_from_json
from .pivots import (apply_witness, find_pivot_minor, format_witness, parse_witness,
                     pivot, verify_witness)
from .subdivide import build_pfos, fillet, path_replacement, plan_from_json, uniform_subdivision
from .universal import UniversalKind, default_pfos_plan, universal_host_and_witness

_EDGE_LIST_HEAD = re.compile(r"^\d+\s+\d+$")


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _parse_graphs(text: str) -> list[Graph]:
    lines = [ln for ln in (raw.strip() for raw in text.splitlines()) if ln]
    if lines and _EDGE_LIST_HEAD.match(lines[0]):
        return [decode_edge_list(text)]
    return [decode_graph6(ln) for ln in lines]


def _read_graphs(path: str) -> list[Graph]:
    return _parse_graphs(_read_text(path))


def _read_one_graph(path: str) -> Graph:
    graphs = _read_graphs(path)
    if len(graphs) != 1:
        raise ValueError(f"expected exactly one graph, got {len(graphs)}")
    return graphs[0]


def _fraction(text: str) -> Fraction:
    return Fraction(text)


def _emit_report(report: dict, out_path: str | None) -> None:
    blob = json.dumps(report, sort_keys=True, indent=2) + "\n"
    if out_path in (None, "-"):
        sys.stdout.write(blob)
    else:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(blob)


def _report_skeleton(args: argparse.Namespace, command: str) -> dict:
    echo = [command] + [f"{k}={v}" for k, v in sorted(vars(args).items())
                        if k not in ("func", "json_out", "timing", "cmd") and v is not None]
    return {"tool": "pivotgraph", "version": __version__, "command": echo, "items": []}


def _exit_code(any_reject: bool, any_budget: bool) -> int:
    if any_reject:
        return 1
    if any_budget:
        return 3
    return 0


# -- verify-lemmas --------------------------------------------------------

_KIND_NAMES = {k.value: k for k in UniversalKind}


def cmd_verify_lemmas(args: argparse.Namespace) -> int:
    kinds = list(UniversalKind) if args.kinds is None else [
        _KIND_NAMES[name.strip()] for name in args.kinds.split(",") if name.strip()]
    report = _report_skeleton(args, "verify-lemmas")
    any_reject = False
    any_budget = False
    patterns = []
    for n in range(1, args.r_max + 1):
        patterns.extend(enumerate_graphs(n))
    for pat in patterns:
        pat_g6 = encode_graph6(pat)
        for kind in kinds:
            t0 = time.perf_counter()
            plan = default_pfos_plan(pat.n) if kind is UniversalKind.FUZZY_ODD_CLIQUE_SUB else None
            host, witness = universal_host_and_witness(pat, kind, plan=plan, max_r=args.r_max)
            verdict = verify_witness(host, pat, witness)
            item = {
                "pattern": pat_g6,
                "n": pat.n,
                "kind": kind.value,
                "host": encode_graph6(host),
                "witness": format_witness(witness),
                "accepted": verdict.accepted,
            }
            if not verdict.accepted:
                item["reason"] = verdict.reason
                any_reject = True
            if args.budget > 0 and host.n <= args.canon_max:
                try:
                    found = find_pivot_minor(host, pat, budget=args.budget,
                                             max_n=args.canon_max)
                    item["confirm"] = "confirmed" if found is not None else "absent"
                    if found is None:
                        any_reject = True
                except BudgetExhausted:
                    item["confirm"] = "budget-exhausted"
                    any_budget = True
            else:
                item["confirm"] = "skipped"
            if args.timing:
                item["wall_ms"] = round(1000 * (time.perf_counter() - t0), 3)
            report["items"].append(item)
    accepted = sum(1 for it in report["items"] if it["accepted"])
    report["summary"] = {"patterns": len(patterns), "kinds": [k.value for k in kinds],
                         "accepted": accepted, "rejected": len(report["items"]) - accepted}
    _emit_report(report, args.json_out)
    return _exit_code(any_reject, any_budget)


# -- survey ---------------------------------------------------------------


def cmd_survey(args: argparse.Namespace) -> int:
    graphs = _read_graphs(args.input)
    report = _report_skeleton(args, "survey")
    any_reject = False
    any_budget = False
    eh_values = []
    for idx, g in enumerate(graphs):
        t0 = time.perf_counter()
        item: dict = {"index": idx, "graph": encode_graph6(g), "n": g.n}
        try:
            mg = MassedGraph.uniform(g)
            eh = eh_ratio(g)
            eh_values.append(eh.value)
            item["eh_ratio"] = str(eh.value)
            item["eh_polarity"] = eh.polarity.value
            item["eh_pair"] = [sorted(eh.a), sorted(eh.b)]
            verdict = check_coherent(mg, args.epsilon)
            item["coherent"] = verdict.coherent
            if not verdict.coherent:
                item["violation"] = verdict.violation.kind
            if args.r is not None:
                v_r = check_r_coherent(mg, args.epsilon, args.r)
                item["r_coherent"] = v_r.coherent
            if args.delta is not None and args.r is not None:
                v_f = check_focused(mg, args.delta, args.r)
                item["focused"] = v_f.coherent
                if not v_f.coherent:
                    item["focus_witness"] = sorted(v_f.violation.witness)
        except Oversize as e:
            item["error"] = f"oversize: {e}"
            any_reject = True
        if args.timing:
            item["wall_ms"] = round(1000 * (time.perf_counter() - t0), 3)
        report["items"].append(item)
    summary: dict = {"graphs": len(graphs)}
    if eh_values:
        ordered = sorted(eh_values)
        mid = len(ordered) // 2
        median = ordered[mid] if len(ordered) % 2 else (ordered[mid - 1] + ordered[mid]) / 2
        summary["eh_min"] = str(min(eh_values))
        summary["eh_median"] = str(median)
    report["summary"] = summary
    _emit_report(report, args.json_out)
    return _exit_code(any_reject, any_budget)


# -- coherence ------------------------------------------------------------


def cmd_coherence(args: argparse.Namespace) -> int:
    mg = massed_graph_from_json(_read_text(args.input))
    report = _report_skeleton(args, "coherence")
    item: dict = {"graph": encode_graph6(mg.g), "kind": mg.kind.value}
    coherent_all = True
    if args.epsilon is not None:
        verdict = check_coherent(mg, args.epsilon)
        item["coherent"] = verdict.coherent
        if not verdict.coherent:
            item["violation"] = verdict.violation.kind
            coherent_all = False
        if args.r is not None:
            v_r = check_r_coherent(mg, args.epsilon, args.r)
            item["r_coherent"] = v_r.coherent
            coherent_all = coherent_all and v_r.coherent
    if args.delta is not None:
        if args.r is None:
            raise ValueError("--delta needs --r")
        v_f = check_focused(mg, args.delta, args.r)
        item["focused"] = v_f.coherent
        if not v_f.coherent:
            item["focus_witness"] = sorted(v_f.violation.witness)
            coherent_all = False
    report["items"].append(item)
    report["summary"] = {"all_hold": coherent_all}
    _emit_report(report, args.json_out)
    return 0 if coherent_all else 1


# -- pass-through commands -------------------------------------------------


def cmd_pivot(args: argparse.Namespace) -> int:
    g = _read_one_graph(args.input)
    if (args.edge is None) == (args.witness is None):
        raise ValueError("pivot needs exactly one of --edge or --witness")
    if args.edge is not None:
        u, v = (int(t) for t in args.edge.split(","))
        result = pivot(g, u, v)
    else:
        witness = parse_witness(_read_text(args.witness))
        result = apply_witness(g, witness).graph
    if args.target is not None:
        target = _read_one_graph(args.target)
        witness = (parse_witness(_read_text(args.witness)) if args.witness is not None
                   else None)
        if witness is None:
            raise ValueError("--target verification needs --witness")
        verdict = verify_witness(g, target, witness)
        _emit_report({"tool": "pivotgraph", "version": __version__,
                      "accepted": verdict.accepted, "reason": verdict.reason,
                      "failing_step": verdict.failing_step}, args.json_out)
        return 0 if verdict.accepted else 1
    sys.stdout.write(encode_graph6(result) + "\n")
    return 0


def cmd_search(args: argparse.Namespace) -> int:
    host = _read_one_graph(args.host)
    pattern = _read_one_graph(args.pattern)
    witness = find_pivot_minor(host, pattern, budget=args.budget, max_n=args.canon_max)
    if witness is None:
        sys.stdout.write("ABSENT\n")
        return 1
    sys.stdout.write(format_witness(witness))
    return 0


def _parse_edge_set(text: str) -> set[tuple[int, int]]:
    out = set()
    for part in text.split(";"):
        part = part.strip()
        if not part:
            continue
        u, v = (int(t) for t in part.split(","))
        out.add((u, v))
    return out


def cmd_construct(args: argparse.Namespace) -> int:
    if args.what == "subdivision":
        g = _read_one_graph(args.input)
        result = uniform_subdivision(g, args.t)
    elif args.what == "replace":
        plan = plan_from_json(_read_text(args.plan))
        result = path_replacement(plan.base, plan)
    elif args.what == "pfos":
        result = build_pfos(plan_from_json(_read_text(args.plan)))
    elif args.what == "fillet":
        g = _read_one_graph(args.input)
        keep = _parse_edge_set(args.keep) if args.keep else set()
        counts: dict[tuple[int, int], int] = {}
        if args.counts:
            for part in args.counts.split(";"):
                part = part.strip()
                if not part:
                    continue
                edge, c = part.split("=")
                u, v = (int(t) for t in edge.split(","))
                counts[(u, v)] = int(c)
        for u, v in g.edges():
            key = (u, v)
            if key not in keep and key not in counts:
                counts[key] = args.default_count
        result = fillet(g, keep, counts)
    else:
        raise ValueError(f"unknown construct target {args.what!r}")
    sys.stdout.write(encode_graph6(result) + "\n")
    return 0


# -- argument parsing ------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pivotgraph",
                                     description="pivot-minor certificates, coherence sweeps, and proof-object checks")
    parser.add_argument("--version", action="version", version=f"pivotgraph {__version__}")
    sub = parser.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("verify-lemmas", help="emit and check universal-host witnesses")
    p.add_argument("--r-max", type=int, default=3, dest="r_max")
    p.add_argument("--kinds", default=None,
                   help=f"comma list from {sorted(_KIND_NAMES)} (default: all)")
    p.add_argument("--budget", type=int, default=0,
                   help="independent containment-search confirmation budget (0 = skip)")
    p.add_argument("--canon-max", type=int, default=DEFAULT_CANONICAL_MAX_N, dest="canon_max")
    p.add_argument("--json-out", default=None, dest="json_out")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--timing", action="store_true")
    p.set_defaults(func=cmd_verify_lemmas)

    p = sub.add_parser("survey", help="eh ratios and coherence verdicts over a corpus")
    p.add_argument("--input", required=True)
    p.add_argument("--epsilon", type=_fraction, required=True)
    p.add_argument("--r", type=int, default=None)
    p.add_argument("--delta", type=_fraction, default=None)
    p.add_argument("--json-out", default=None, dest="json_out")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--timing", action="store_true")
    p.set_defaults(func=cmd_survey)

    p = sub.add_parser("coherence", help="check one massed graph (JSON)")
    p.add_argument("--input", required=True)
    p.add_argument("--epsilon", type=_fraction, default=None)
    p.add_argument("--r", type=int, default=None)
    p.add_argument("--delta", type=_fraction, default=None)
    p.add_argument("--json-out", default=None, dest="json_out")
    p.set_defaults(func=cmd_coherence)

    p = sub.add_parser("pivot", help="apply one pivot or a whole witness")
    p.add_argument("--input", required=True)
    p.add_argument("--edge", default=None, help="u,v")
    p.add_argument("--witness", default=None, help="witness file ('-' for stdin)")
    p.add_argument("--target", default=None, help="verify against this graph")
    p.add_argument("--json-out", default=None, dest="json_out")
    p.set_defaults(func=cmd_pivot)

    p = sub.add_parser("search", help="exhaustive pivot-minor containment")
    p.add_argument("--host", required=True)
    p.add_argument("--pattern", required=True)
    p.add_argument("--budget", type=int, default=200_000)
    p.add_argument("--canon-max", type=int, default=DEFAULT_CANONICAL_MAX_N, dest="canon_max")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("construct", help="subdivision / replacement / pfos / fillet builders")
    p.add_argument("what", choices=["subdivision", "replace", "pfos", "fillet"])
    p.add_argument("--input", default=None)
    p.add_argument("--t", type=int, default=1)
    p.add_argument("--plan", default=None)
    p.add_argument("--keep", default=None, help="edges to keep, 'u,v;u,v'")
    p.add_argument("--counts", default=None, help="per-edge subdivision counts, 'u,v=2;...'")
    p.add_argument("--default-count", type=int, default=1, dest="default_count")
    p.set_defaults(func=cmd_construct)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BudgetExhausted as e:
        print(f"error: {e}", file=sys.stderr)
        return 3
    except (MalformedGraph6, Oversize, InvalidPlan, InvalidSet, NotAnEdge, MissingVertex,
            PivotGraphError, ValueError, OSError, json.JSONDecodeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
