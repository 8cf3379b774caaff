"""Positive dependency graphs and the syntactic properties built on them."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Tuple

import networkx as nx

from .model import Literal, Program, RuleSet, as_rules, literal_universe, sorted_context

Edge = Tuple[Literal, Literal]


@dataclass(frozen=True)
class DepGraph:
    """Literal vertices; an edge ``(to, from)`` per head literal and positive premise."""

    vertices: FrozenSet[Literal]
    edges: FrozenSet[Edge]

    def successors(self) -> Dict[Literal, List[Literal]]:
        """Adjacency oriented from premise to head."""
        out: Dict[Literal, List[Literal]] = {v: [] for v in sorted(self.vertices)}
        for to, frm in sorted(self.edges):
            out[frm].append(to)
        return out

    def to_networkx(self) -> nx.DiGraph:
        g = nx.DiGraph()
        g.add_nodes_from(sorted(self.vertices))
        g.add_edges_from((frm, to) for to, frm in sorted(self.edges))
        return g

    def to_json(self) -> dict:
        return {
            "vertices": [str(v) for v in sorted_context(self.vertices)],
            "edges": [[str(to), str(frm)] for to, frm in sorted(self.edges)],
        }

    def to_dot(self) -> str:
        lines = ["digraph dependency {"]
        for v in sorted(self.vertices):
            lines.append(f'  "{v}";')
        for to, frm in sorted(self.edges):
            lines.append(f'  "{frm}" -> "{to}";')
        lines.append("}")
        return "\n".join(lines) + "\n"


def build_graph(p: RuleSet) -> DepGraph:
    rules = as_rules(p)
    edges = {(h, b) for r in rules for h in r.head for b in r.pos_body}
    return DepGraph(literal_universe(rules), frozenset(edges))


def is_acyclic(g: DepGraph) -> bool:
    # self-loops make the graph cyclic as well
    return nx.is_directed_acyclic_graph(g.to_networkx())


def depends(g: DepGraph, l1: Literal, l2: Literal) -> bool:
    """True iff a path of length at least one leads from ``l2`` to ``l1``."""
    succ = g.successors()
    seen = set()
    queue = deque(succ.get(l2, ()))
    while queue:
        v = queue.popleft()
        if v == l1:
            return True
        if v in seen:
            continue
        seen.add(v)
        queue.extend(succ.get(v, ()))
    return False


def has_head_cycle(p: RuleSet, g: DepGraph = None) -> bool:
    """True iff two distinct head literals of one rule share a strongly connected component."""
    rules = as_rules(p)
    if g is None:
        g = build_graph(rules)
    component: Dict[Literal, int] = {}
    for i, scc in enumerate(nx.strongly_connected_components(g.to_networkx())):
        for v in scc:
            component[v] = i
    for r in rules:
        comps = [component[l] for l in r.head]
        if len(set(comps)) < len(comps):
            return True
    return False


def is_hcf(p: RuleSet) -> bool:
    return not has_head_cycle(p)


def is_cr_independent(p: Program) -> bool:
    g = build_graph(p)
    cr_lits = sorted(p.cr_literals())
    return not any(depends(g, l1, l2) for l1 in cr_lits for l2 in cr_lits)


def is_program_acyclic(p: RuleSet) -> bool:
    return is_acyclic(build_graph(p))
