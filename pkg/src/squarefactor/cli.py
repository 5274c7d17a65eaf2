"""Command-line front end.

Subcommands: square, classify, build, lemma, verify, oracle, gen-cx, ham,
report.  Graphs travel as edge-list text ('#' comments allowed), factors
and reports as JSON, so the subcommands compose over pipes:

    squarefactor gen-cx --s 1 | squarefactor oracle --s 1
    squarefactor build -i host.txt | squarefactor verify

Exit codes: 0 success/pass, 1 verification failure or "no", 2 precondition
violation, 3 format error, 4 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import (
    ArgumentError,
    BudgetExceededError,
    FormatError,
    PreconditionError,
)
from .factor import (
    FactorCertificate,
    build_factor,
    certificate_from_json,
    check_lemma_preconditions,
    check_theorem_preconditions,
    lemma_factor,
)
from .graph import (
    Graph,
    graph_to_json,
    is_connected,
    parse_edge_list,
    serialize_edge_list,
    square,
    to_dot,
)
from .hamilton import constrained_hamiltonian_cycle, make_problem
from .structure import classify, decompose, order_blocks, strip
from .verify import (
    SearchBudget,
    counting_certificate,
    descriptor_from_json,
    exists_factor,
    gen_counterexample,
    verify_certificate,
    verify_factor,
)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_PRECONDITION = 2
EXIT_FORMAT = 3
EXIT_BUDGET = 4


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _write_output(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _load_graph(path: str, require_connected: bool = True) -> Graph:
    g = parse_edge_list(_read_input(path))
    if require_connected and not is_connected(g):
        raise PreconditionError("input graph is not connected")
    return g


def _resolve_vertex(g: Graph, label: int) -> int:
    """Map a vertex name from the input file to its dense id."""
    try:
        return g.labels.index(label)
    except ValueError:
        raise ArgumentError(f"vertex {label} does not appear in the input") from None


def _emit_graph(g: Graph, fmt: str, out: str | None, dashed=()) -> None:
    if fmt == "edgelist":
        _write_output(serialize_edge_list(g), out)
    elif fmt == "json":
        _write_output(graph_to_json(g), out)
    elif fmt == "dot":
        _write_output(to_dot(g, dashed_edges=dashed), out)
    else:
        raise ArgumentError(f"unknown format {fmt!r}")


def _emit_certificate(cert: FactorCertificate, fmt: str, out: str | None) -> None:
    if fmt == "json":
        _write_output(cert.to_json(), out)
    elif fmt == "edgelist":
        lines = [f"{u} {v}" for u, v in sorted(cert.edges)]
        _write_output("\n".join(lines) + "\n", out)
    elif fmt == "dot":
        factor_graph = Graph(cert.host.n, sorted(cert.edges))
        _write_output(
            to_dot(factor_graph, dashed_edges=cert.square_only_edges), out
        )
    else:
        raise ArgumentError(f"unknown format {fmt!r}")


def cmd_square(args) -> int:
    g = _load_graph(args.input, require_connected=False)
    sq = square(g)
    dashed = set(sq.edges()) - set(g.edges())
    _emit_graph(sq, args.format, args.out, dashed=dashed)
    return EXIT_OK


def cmd_classify(args) -> int:
    g = _load_graph(args.input)
    bct = decompose(g)
    cls = classify(g, bct)
    payload = cls.to_json_dict()
    block_order = None
    removal = set()
    for leaves in cls.leaf_sets.values():
        removal.update(leaves)
    stripped = strip(g, removal)
    if stripped.graph.edge_count:
        try:
            ordering = order_blocks(stripped.graph, decompose(stripped.graph))
            block_order = [
                sorted(stripped.to_host[v] for v in ordering.bct.blocks[b].vertices)
                for b in ordering.sequence
            ]
        except PreconditionError:
            block_order = None
    payload["blockOrder"] = block_order
    _write_output(json.dumps(payload), args.out)
    return EXIT_OK


def _precondition_payload(exc: PreconditionError) -> str:
    return json.dumps(
        {
            "error": "precondition",
            "message": str(exc),
            "violations": [
                {
                    "kind": kind,
                    "subject": list(subject) if isinstance(subject, tuple) else subject,
                }
                for kind, subject in exc.violations
            ],
        }
    )


def cmd_build(args) -> int:
    g = _load_graph(args.input)
    try:
        cert = build_factor(g, budget_nodes=args.budget_nodes)
    except PreconditionError as exc:
        _write_output(_precondition_payload(exc), args.out)
        return EXIT_PRECONDITION
    _emit_certificate(cert, args.format, args.out)
    return EXIT_OK


def cmd_lemma(args) -> int:
    g = _load_graph(args.input)
    u = _resolve_vertex(g, args.u) if args.u is not None else None
    try:
        cert = lemma_factor(g, u=u, budget_nodes=args.budget_nodes)
    except PreconditionError as exc:
        _write_output(_precondition_payload(exc), args.out)
        return EXIT_PRECONDITION
    _emit_certificate(cert, args.format, args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    cert = certificate_from_json(_read_input(args.input))
    if cert.lemma_grade:
        report = verify_certificate(cert.host, cert)
    else:
        report = verify_factor(
            cert.host, set(cert.edges), s=args.s, original_tags=set(cert.original_edges)
        )
    _write_output(report.to_json(), args.out)
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_oracle(args) -> int:
    g = _load_graph(args.input)
    budget = SearchBudget()
    if args.budget_nodes is not None:
        budget = SearchBudget(max_nodes=args.budget_nodes, explicit=True)
    result = exists_factor(g, args.s, budget)
    payload = {
        "result": result.status,
        "witness": None if result.witness is None else [list(e) for e in result.witness],
    }
    _write_output(json.dumps(payload), args.out)
    if result.status == "yes":
        return EXIT_OK
    if result.status == "no":
        return EXIT_FAIL
    return EXIT_BUDGET


def cmd_gen_cx(args) -> int:
    g, descriptor = gen_counterexample(args.s)
    text = serialize_edge_list(g) + "# descriptor " + descriptor.to_json() + "\n"
    _write_output(text, None)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(descriptor.to_json() + "\n")
    return EXIT_OK


def cmd_ham(args) -> int:
    g = _load_graph(args.input)
    v1 = _resolve_vertex(g, args.u) if args.u is not None else 0
    try:
        witness = constrained_hamiltonian_cycle(
            make_problem(g, v1), budget_nodes=args.budget_nodes
        )
    except PreconditionError as exc:
        _write_output(_precondition_payload(exc), args.out)
        return EXIT_PRECONDITION
    payload = {
        "cycle": [g.labels[v] for v in witness.vertices],
        "originalEdges": [list(e) for e in sorted(witness.original_edges)],
        "squareOnlyEdges": [list(e) for e in sorted(witness.square_only_edges)],
    }
    _write_output(json.dumps(payload), args.out)
    return EXIT_OK


def cmd_report(args) -> int:
    from .report import generate_report

    paths = generate_report(out_dir=args.out or "report", seed=args.seed, s=args.s)
    for p in paths:
        sys.stdout.write(f"{p}\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="squarefactor",
        description="Connected even factors with degrees 2 or 4 in graph squares.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, fmt_default="edgelist"):
        p.add_argument("--input", "-i", default="-", help="edge-list path or '-' for stdin")
        p.add_argument(
            "--format", "-f", choices=("edgelist", "dot", "json"), default=fmt_default
        )
        p.add_argument("--out", "-o", default=None, help="output path (default stdout)")
        p.add_argument("--budget-nodes", type=int, default=None)

    p = sub.add_parser("square", help="emit the square of the input graph")
    common(p)
    p.set_defaults(func=cmd_square)

    p = sub.add_parser("classify", help="taxonomy and block order as JSON")
    common(p, fmt_default="json")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("build", help="build a degree-[2,4] factor of the square")
    common(p, fmt_default="json")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("lemma", help="certified factor for hosts without bad leaves")
    common(p, fmt_default="json")
    p.add_argument("--u", type=int, default=None, help="tracked non-cut non-leaf vertex")
    p.set_defaults(func=cmd_lemma)

    p = sub.add_parser("verify", help="check a factor/certificate JSON file")
    common(p, fmt_default="json")
    p.add_argument("--s", type=int, default=2, help="degree bound 2s for plain factors")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", help="exact existence decision in the square")
    common(p, fmt_default="json")
    p.add_argument("--s", type=int, default=2)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("gen-cx", help="generate a hostile family member")
    p.add_argument("--s", type=int, default=1)
    p.add_argument("--out", "-o", default=None, help="also write descriptor JSON here")
    p.set_defaults(func=cmd_gen_cx)

    p = sub.add_parser("ham", help="constrained Hamiltonian cycle of a 2-connected graph")
    common(p, fmt_default="json")
    p.add_argument("--u", type=int, default=None, help="anchor vertex (default 0)")
    p.set_defaults(func=cmd_ham)

    p = sub.add_parser("report", help="run seeded suites; write CSV and figures")
    p.add_argument("--out", "-o", default="report", help="output directory")
    p.add_argument("--seed", type=int, default=2024)
    p.add_argument("--s", type=int, default=2)
    p.set_defaults(func=cmd_report)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FormatError as exc:
        sys.stderr.write(f"format error: {exc}\n")
        return EXIT_FORMAT
    except BudgetExceededError as exc:
        sys.stderr.write(f"budget exceeded: {exc}\n")
        return EXIT_BUDGET
    except PreconditionError as exc:
        sys.stderr.write(f"precondition violation: {exc}\n")
        return EXIT_PRECONDITION
    except ArgumentError as exc:
        sys.stderr.write(f"argument error: {exc}\n")
        return EXIT_FORMAT


if __name__ == "__main__":
    sys.exit(main())
