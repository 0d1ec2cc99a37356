"""Command-line entry points.

Exit codes follow lint conventions so CI can gate on dangers:
0 = analysis ran and found no dangers, 2 = at least one danger,
1 = bad usage, parse failure, or an engine error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import RefdError
from .graph import build_graph, dump_graph
from .jsub import load_project
from .refactoring import (
    COMBINE_METHODS_INTO_CLASS,
    MOVE_METHOD,
    PULL_UP_METHOD,
    analyze,
    build_combine_methods_into_class,
    build_move_method,
    build_pull_up_method,
)
from .report import report_to_text, serialize_report
from .templates import ClassTemplate, parse_method_selector

REFACTORING_PARAMS = {
    PULL_UP_METHOD: {
        "method": "one Class.name(type,...) selector",
        "destination": "ancestor class to receive the method",
    },
    MOVE_METHOD: {
        "method": "one Class.name(type,...) selector",
        "destination": "unrelated class to receive the method",
    },
    COMBINE_METHODS_INTO_CLASS: {
        "method": "one or more Class.name(type,...) selectors",
        "destination": "name of the class to create",
    },
}


def build_refactoring(name, selectors, destination, graph, strict_verdict=False):
    """Construct a refactoring from CLI-level arguments."""
    templates = [parse_method_selector(s) for s in selectors]
    dest = ClassTemplate(destination)
    if name == PULL_UP_METHOD:
        if len(templates) != 1:
            raise ValueError("pull-up-method takes exactly one --method")
        return build_pull_up_method(templates[0], dest, graph, strict_verdict=strict_verdict)
    if name == MOVE_METHOD:
        if len(templates) != 1:
            raise ValueError("move-method takes exactly one --method")
        return build_move_method(templates[0], dest, graph)
    if name == COMBINE_METHODS_INTO_CLASS:
        if not templates:
            raise ValueError("combine-methods-into-class needs at least one --method")
        return build_combine_methods_into_class(templates, dest, graph)
    raise ValueError(f"unknown refactoring: {name}")


def cmd_analyze(args) -> int:
    try:
        project = load_project(args.project)
        graph = build_graph(project)
        refactoring = build_refactoring(
            args.refactoring,
            args.method,
            args.destination,
            graph,
            strict_verdict=args.strict_paper_verdict,
        )
    except (RefdError, ValueError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    report = analyze(refactoring, graph)
    if args.format == "json":
        sys.stdout.write(serialize_report(report))
    else:
        sys.stdout.write(report_to_text(report))
    return 2 if report.dangers else 0


def cmd_list_refactorings(args) -> int:
    listing = [
        {"name": name, "params": REFACTORING_PARAMS[name]}
        for name in (PULL_UP_METHOD, MOVE_METHOD, COMBINE_METHODS_INTO_CLASS)
    ]
    sys.stdout.write(json.dumps(listing, indent=2, sort_keys=True) + "\n")
    return 0


def cmd_graph(args) -> int:
    try:
        project = load_project(args.project)
        graph = build_graph(project)
    except (RefdError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    payload = dump_graph(graph)
    if args.dump:
        sys.stdout.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")
    else:
        sys.stdout.write(f"{len(payload['nodes'])} nodes, {len(payload['edges'])} edges\n")
    return 0


def cmd_serve(args) -> int:
    from .service import serve

    try:
        serve(args.project, port=args.port, ui_dir=args.ui_dir)
    except (RefdError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="refd", description="Diagnose the dangers of a requested refactoring."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_analyze = sub.add_parser("analyze", help="run a danger analysis")
    p_analyze.add_argument("--project", required=True, help="project root directory")
    p_analyze.add_argument(
        "--refactoring",
        required=True,
        choices=[PULL_UP_METHOD, MOVE_METHOD, COMBINE_METHODS_INTO_CLASS],
    )
    p_analyze.add_argument(
        "--method",
        action="append",
        default=[],
        help="Class.name(type,...) selector; repeat for combine",
    )
    p_analyze.add_argument("--destination", required=True, help="destination class name")
    p_analyze.add_argument("--format", choices=["json", "text"], default="json")
    p_analyze.add_argument(
        "--strict-paper-verdict",
        action="store_true",
        help="restrict the pull-up verdict to the direct-superclass rule only "
        "(keeps subclass-specification findings on the relocated method)",
    )
    p_analyze.set_defaults(fn=cmd_analyze)

    p_list = sub.add_parser("list-refactorings", help="show supported refactorings")
    p_list.set_defaults(fn=cmd_list_refactorings)

    p_graph = sub.add_parser("graph", help="build and inspect the program graph")
    p_graph.add_argument("--project", required=True)
    p_graph.add_argument("--dump", action="store_true", help="emit the graph as JSON")
    p_graph.set_defaults(fn=cmd_graph)

    p_serve = sub.add_parser("serve", help="serve the analysis API and UI")
    p_serve.add_argument("--project", required=True)
    p_serve.add_argument("--port", type=int, default=None, help="default $REFD_PORT or 7878")
    p_serve.add_argument("--ui-dir", default=None, help="static UI directory to serve at /")
    p_serve.set_defaults(fn=cmd_serve)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = make_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
