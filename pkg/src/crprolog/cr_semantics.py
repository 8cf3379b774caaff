"""CR-Prolog answer sets via cardinality-minimal abductive supports."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, replace
from typing import FrozenSet, Iterable, List, Optional, Tuple

from .ap_semantics import SemanticsError, answer_sets, check_enumeration_limit
from .model import Context, Literal, Program, Rule, RuleKind, context_key, literal_universe


@dataclass(frozen=True)
class AbductiveSupport:
    cr_rule_ids: FrozenSet[int]

    def sort_key(self) -> Tuple[int, Tuple[int, ...]]:
        return (len(self.cr_rule_ids), tuple(sorted(self.cr_rule_ids)))

    def rules(self, p: Program) -> Tuple[Rule, ...]:
        return tuple(p[i] for i in sorted(self.cr_rule_ids))

    def heads(self, p: Program) -> FrozenSet[Literal]:
        return frozenset(p[i].head[0] for i in self.cr_rule_ids)


@dataclass(frozen=True)
class CrSolution:
    answer_set: Context
    support: AbductiveSupport


def apply(r: Rule) -> Rule:
    """Turn a cr-rule into the regular rule with the same head and body."""
    if not r.is_cr:
        raise SemanticsError(f"rule {r.id} ({r}) is not a cr-rule")
    return replace(r, kind=RuleKind.REGULAR)


def apply_all(rules: Iterable[Rule]) -> Tuple[Rule, ...]:
    return tuple(apply(r) for r in rules)


def factify(rules: Iterable[Rule]) -> Tuple[Rule, ...]:
    out = []
    for r in rules:
        if r.is_cr:
            raise SemanticsError(f"rule {r.id} ({r}) is a cr-rule; apply it first")
        out.append(replace(r, pos_body=(), neg_body=()))
    return tuple(out)


def applied_program(p: Program, support: AbductiveSupport) -> Tuple[Rule, ...]:
    """Regular part of ``p`` plus the applications of the support's cr-rules, ids kept."""
    chosen = support.cr_rule_ids
    return tuple(apply(r) if r.is_cr else r for r in p if not r.is_cr or r.id in chosen)


def _solve(p: Program, max_universe: Optional[int]) -> List[Tuple[AbductiveSupport, List[Context]]]:
    check_enumeration_limit(len(literal_universe(p)), max_universe)
    cr_ids = [r.id for r in p.cr_part]
    for size in range(len(cr_ids) + 1):
        level = []
        for ids in itertools.combinations(cr_ids, size):
            support = AbductiveSupport(frozenset(ids))
            found = answer_sets(applied_program(p, support), max_universe)
            if found:
                level.append((support, found))
        if level:
            return level
    return []


def abductive_supports(p: Program, max_universe: Optional[int] = None) -> List[AbductiveSupport]:
    """All cardinality-minimal sets of cr-rules whose application restores consistency."""
    return [support for support, _ in _solve(p, max_universe)]


def cr_answer_sets(p: Program, max_universe: Optional[int] = None) -> List[CrSolution]:
    """Every (answer set, support) pair, ordered by support then context."""
    return [
        CrSolution(x, support)
        for support, found in _solve(p, max_universe)
        for x in found
    ]


def distinct_answer_sets(solutions: Iterable[CrSolution]) -> List[Context]:
    return sorted({s.answer_set for s in solutions}, key=context_key)
