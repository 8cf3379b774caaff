"""Shifting: replace each disjunctive rule by single-head rules."""

from __future__ import annotations

from dataclasses import replace

from .ap_semantics import SemanticsError
from .depgraph import build_graph, is_acyclic
from .model import Program


def shift(p: Program) -> Program:
    """Equivalent nondisjunctive program for an acyclic ``p``.

    ``l1 | ... | lk :- body.`` becomes, for each i, ``li :- body, not lj...``
    over every j != i, placed where the original rule stood. Rule ids are
    renumbered.
    """
    if not is_acyclic(build_graph(p)):
        raise SemanticsError("shifting is only supported for acyclic programs")
    out = []
    for r in p:
        if r.is_cr or not r.is_disjunctive:
            out.append(r)
            continue
        for i, lit in enumerate(r.head):
            others = r.head[:i] + r.head[i + 1:]
            out.append(replace(r, head=(lit,), neg_body=r.neg_body + others))
    return Program.of(out)
