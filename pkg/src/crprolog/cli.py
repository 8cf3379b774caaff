"""Command-line front end.

Exit codes: 0 success, 1 inconsistent program (``solve``), 2 parse or usage
error, 3 antichain property fails, 4 fuzzing found a counterexample,
5 the analysis does not apply to the input (e.g. cyclic input to ``shift``).
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from . import antichain, depgraph, proofs
from .ap_semantics import SemanticsError
from .cr_semantics import CrSolution, applied_program, cr_answer_sets, distinct_answer_sets
from .model import Program, format_context, sorted_context
from .parser import ParseError, parse_literal, parse_program, render_program
from .transform import shift

EXIT_OK = 0
EXIT_INCONSISTENT = 1
EXIT_PARSE = 2
EXIT_CHAIN = 3
EXIT_COUNTEREXAMPLE = 4
EXIT_NOT_APPLICABLE = 5


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def load(path: str) -> Program:
    try:
        src = _read(path)
    except OSError as exc:
        raise CliError(f"{path}: {exc.strerror}", EXIT_PARSE)
    try:
        return parse_program(src)
    except ParseError as exc:
        raise CliError(f"{path}:{exc.line}:{exc.column}: {exc.kind.value} error: {exc.message}",
                       EXIT_PARSE)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _lits(x) -> List[str]:
    return [str(l) for l in sorted_context(x)]


def _support_json(p: Program, s: CrSolution) -> List[dict]:
    return [{"id": r.id, "rule": str(r)} for r in s.support.rules(p)]


def cmd_solve(p: Program, fmt: str, max_universe: Optional[int]):
    solutions = cr_answer_sets(p, max_universe)
    code = EXIT_OK if solutions else EXIT_INCONSISTENT
    if fmt == "json":
        return _dump({
            "consistent": bool(solutions),
            "solutions": [
                {"answer_set": _lits(s.answer_set), "support": _support_json(p, s)}
                for s in solutions
            ],
        }), code
    if not solutions:
        return "inconsistent\n", code
    lines = []
    for n, s in enumerate(solutions, 1):
        support = ", ".join(str(r) for r in s.support.rules(p)) or "none"
        lines.append(f"Answer {n}: {format_context(s.answer_set)} [support: {support}]")
    return "\n".join(lines) + "\n", code


def analyze(p: Program) -> dict:
    g = depgraph.build_graph(p)
    acyclic = depgraph.is_acyclic(g)
    cr_independent = depgraph.is_cr_independent(p)
    return {
        "acyclic": acyclic,
        "hcf": not depgraph.has_head_cycle(p, g),
        "cr_independent": cr_independent,
        "nondisjunctive": p.is_nondisjunctive,
        "antichain_guaranteed": acyclic and cr_independent,
    }


def cmd_analyze(p: Program, fmt: str):
    report = analyze(p)
    if fmt == "json":
        return _dump(report), EXIT_OK
    return "".join(f"{k}: {str(v).lower()}\n" for k, v in report.items()), EXIT_OK


def cmd_antichain(p: Program, fmt: str, max_universe: Optional[int]):
    report = antichain.check_antichain(p, max_universe)
    code = EXIT_OK if report.holds else EXIT_CHAIN
    if fmt == "json":
        return _dump(report.to_json()), code
    found = distinct_answer_sets(report.solutions)
    lines = [f"answer sets: {len(found)}"]
    lines += [f"  {format_context(x)}" for x in found]
    if report.holds:
        lines.append("antichain: holds")
    else:
        small, big = report.witness
        lines.append(f"antichain: fails, witness {format_context(small)} < {format_context(big)}")
    return "\n".join(lines) + "\n", code


def cmd_graph(p: Program, fmt: str):
    g = depgraph.build_graph(p)
    if fmt == "json":
        return _dump(g.to_json()), EXIT_OK
    if fmt == "dot":
        return g.to_dot(), EXIT_OK
    lines = ["vertices: " + " ".join(_lits(g.vertices))]
    lines += [f"  {frm} -> {to}" for to, frm in sorted(g.edges)]
    return "\n".join(lines) + "\n", EXIT_OK


def cmd_proofs(p: Program, literal: Optional[str], fmt: str, max_universe: Optional[int]):
    if depgraph.has_head_cycle(p):
        raise CliError("proofs require a head-cycle-free program", EXIT_NOT_APPLICABLE)
    target = None
    if literal is not None:
        try:
            target = parse_literal(literal)
        except ParseError as exc:
            raise CliError(f"--literal: {exc.message}", EXIT_PARSE)
    solutions = cr_answer_sets(p, max_universe)
    if not solutions:
        raise CliError("program is inconsistent", EXIT_INCONSISTENT)
    results = []
    for s in solutions:
        rules = applied_program(p, s.support)
        x = s.answer_set
        ranks = proofs.ranking_function(rules, x)
        entries = []
        for lit in sorted_context(x):
            if target is not None and lit != target:
                continue
            r, minimal = proofs.minimal_proofs(rules, x, lit)
            entries.append((lit, r, minimal))
        results.append((s, rules, ranks, entries))
    if fmt == "json":
        return _dump([
            {
                "answer_set": _lits(s.answer_set),
                "support": _support_json(p, s),
                "ranks": {str(l): v for l, v in ranks.items()},
                "literals": [
                    {
                        "literal": str(lit),
                        "rank": r,
                        "minimal_proofs": [pr.to_json() for pr in minimal],
                    }
                    for lit, r, minimal in entries
                ],
            }
            for s, rules, ranks, entries in results
        ]), EXIT_OK
    lines = []
    for s, rules, ranks, entries in results:
        lines.append(f"Answer set {format_context(s.answer_set)}")
        for lit, r, minimal in entries:
            lines.append(f" {lit}: rank {r}, {len(minimal)} minimal proof(s)")
            for n, pr in enumerate(minimal, 1):
                lines.append(f"  proof {n}: <{', '.join(map(str, pr.rule_ids))}>")
                lines.append(pr.render(rules))
        if target is not None and not entries:
            lines.append(f" {target} is not in this answer set")
    return "\n".join(lines) + "\n", EXIT_OK


def cmd_shift(p: Program):
    try:
        return render_program(shift(p)), EXIT_OK
    except SemanticsError as exc:
        raise CliError(str(exc), EXIT_NOT_APPLICABLE)


def cmd_fuzz(args) -> tuple:
    require = frozenset(antichain.Requirement(r) for r in args.require or ())
    cfg = antichain.GenConfig(
        seed=args.seed,
        atoms=args.atoms,
        regular_rules=args.regular_rules,
        cr_rules=args.cr_rules,
        max_head=args.max_head,
        max_body=args.max_body,
        neg_prob=args.neg_prob,
        strong_neg_prob=args.strong_neg_prob,
        constraint_prob=args.constraint_prob,
        require=require,
    )
    report = antichain.falsify(cfg, args.trials, antichain.Target(args.target), args.max_universe)
    code = EXIT_OK if report.counterexample is None else EXIT_COUNTEREXAMPLE
    if args.format == "json":
        data = report.to_json()
        # timing varies between runs; keep json output reproducible
        data.pop("elapsed_seconds")
        return _dump(data), code
    lines = [
        f"target: {report.target.value}",
        f"trials: {report.trials} (discarded {report.discarded})",
        f"elapsed: {report.elapsed:.2f}s",
    ]
    ce = report.counterexample
    if ce is None:
        lines.append("no counterexample found")
    else:
        lines.append(f"counterexample at trial {ce.trial} (seed {ce.config.seed}):")
        lines.append(str(ce.program).rstrip())
        lines.append(antichain.describe_witness(ce.report))
    return "\n".join(lines) + "\n", code


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="crprolog", description=(
        "Brute-force answer sets, dependency-graph analysis and antichain checks "
        "for ground CR-Prolog programs."))
    sub = ap.add_subparsers(dest="command", required=True)

    def with_file(name, help, formats=("text", "json")):
        sp = sub.add_parser(name, help=help)
        sp.add_argument("path", help="program file, or - for standard input")
        sp.add_argument("--format", choices=formats, default="text")
        sp.add_argument("--max-universe", type=int, default=None,
                        help="override the enumeration size guard (default 24 literals)")
        return sp

    with_file("solve", "print answer sets with their abductive supports")
    with_file("analyze", "report acyclicity, head-cycle-freedom and cr-independence")
    with_file("antichain", "decide the antichain property")
    with_file("graph", "print the dependency graph", ("text", "json", "dot"))
    sp = with_file("proofs", "ranks and minimal proofs of answer-set literals")
    sp.add_argument("--literal", help="only this literal, e.g. a or -a")
    with_file("shift", "print the equivalent nondisjunctive program", ("text",))

    fz = sub.add_parser("fuzz", help="search random programs for answer-set chains")
    fz.add_argument("--target", choices=[t.value for t in antichain.Target], default="theorem")
    fz.add_argument("--trials", type=int, default=500)
    fz.add_argument("--seed", type=int, default=0)
    fz.add_argument("--atoms", type=int, default=6)
    fz.add_argument("--regular-rules", type=int, default=6)
    fz.add_argument("--cr-rules", type=int, default=3)
    fz.add_argument("--max-head", type=int, default=2)
    fz.add_argument("--max-body", type=int, default=2)
    fz.add_argument("--neg-prob", type=float, default=0.5)
    fz.add_argument("--strong-neg-prob", type=float, default=0.2)
    fz.add_argument("--constraint-prob", type=float, default=0.3,
                    help="chance a single-head rule gets its own head under not")
    fz.add_argument("--require", action="append",
                    choices=[r.value for r in antichain.Requirement])
    fz.add_argument("--max-universe", type=int, default=None)
    fz.add_argument("--format", choices=("text", "json"), default="text")
    return ap


def run(argv: Optional[List[str]] = None) -> tuple:
    """Execute a command; returns ``(stdout text, exit code)``."""
    args = build_parser().parse_args(argv)
    if args.command == "fuzz":
        return cmd_fuzz(args)
    p = load(args.path)
    mu = args.max_universe
    if args.command == "solve":
        return cmd_solve(p, args.format, mu)
    if args.command == "analyze":
        return cmd_analyze(p, args.format)
    if args.command == "antichain":
        return cmd_antichain(p, args.format, mu)
    if args.command == "graph":
        return cmd_graph(p, args.format)
    if args.command == "proofs":
        return cmd_proofs(p, args.literal, args.format, mu)
    return cmd_shift(p)


def main(argv: Optional[List[str]] = None) -> int:
    try:
        out, code = run(argv)
    except CliError as exc:
        print(f"crprolog: {exc}", file=sys.stderr)
        return exc.code
    except SemanticsError as exc:
        print(f"crprolog: {exc}", file=sys.stderr)
        return EXIT_NOT_APPLICABLE
    sys.stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
