"""Reference answer-set semantics for A-Prolog (regular-only) programs.

Everything here is brute force on purpose: answer sets are found by
enumerating every consistent context over the program's literals and
checking minimality against every subset. Internally contexts and rule
parts are encoded as bit masks over a fixed literal ordering.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, replace
from typing import AbstractSet, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from .depgraph import build_graph, is_acyclic
from .model import (
    Context,
    Literal,
    Rule,
    RuleSet,
    as_rules,
    context_key,
    literal_universe,
    require_consistent,
)

DEFAULT_MAX_UNIVERSE = 24


class SemanticsError(ValueError):
    """Raised when an operation is applied outside its domain."""


class EnumerationLimitError(SemanticsError):
    """Raised when brute-force enumeration would exceed the size guard."""


def _require_regular(rules: Iterable[Rule]) -> None:
    for r in rules:
        if r.is_cr:
            raise SemanticsError(f"cr-rule {r.id} ({r}) in an A-Prolog program")


class Encoding:
    """Bit assignment for a fixed set of literals, in canonical order."""

    def __init__(self, literals: Iterable[Literal]):
        self.literals: Tuple[Literal, ...] = tuple(sorted(set(literals)))
        self.bit: Dict[Literal, int] = {l: 1 << i for i, l in enumerate(self.literals)}

    def mask(self, lits: Iterable[Literal]) -> int:
        m = 0
        for l in lits:
            m |= self.bit[l]
        return m

    def decode(self, m: int) -> Context:
        return frozenset(l for l in self.literals if self.bit[l] & m)

    def consistent_masks(self) -> Iterator[int]:
        """Every consistent context over the encoded literals."""
        by_atom: Dict[str, List[int]] = {}
        for l in self.literals:
            by_atom.setdefault(l.atom, [0]).append(self.bit[l])
        for choice in itertools.product(*by_atom.values()):
            m = 0
            for b in choice:
                m |= b
            yield m


# compiled rule: (head, pos_body, neg_body) masks
Compiled = Tuple[int, int, int]


def compile_rules(enc: Encoding, rules: Sequence[Rule]) -> List[Compiled]:
    return [(enc.mask(r.head), enc.mask(r.pos_body), enc.mask(r.neg_body)) for r in rules]


def _satisfies_positive(x: int, rules: Sequence[Tuple[int, int]]) -> bool:
    for head, pos in rules:
        if pos & ~x == 0 and head & x == 0:
            return False
    return True


def _reduct_masks(x: int, rules: Sequence[Compiled]) -> List[Tuple[int, int]]:
    return [(h, p) for h, p, n in rules if n & x == 0]


def _is_minimal_model(x: int, red: Sequence[Tuple[int, int]]) -> bool:
    # proper submasks of x, largest first
    s = (x - 1) & x
    while True:
        if s != x and _satisfies_positive(s, red):
            return False
        if s == 0:
            return True
        s = (s - 1) & x


def _is_answer_set_mask(x: int, rules: Sequence[Compiled]) -> bool:
    red = _reduct_masks(x, rules)
    if not _satisfies_positive(x, red):
        return False
    heads = 0
    for h, _ in red:
        heads |= h
    # a literal outside every reduct head can be dropped while staying a model
    if x & ~heads:
        return False
    return _is_minimal_model(x, red)


def fires(x: AbstractSet[Literal], r: Rule) -> bool:
    require_consistent(x)
    _require_regular((r,))
    return _fires(x, r)


def _fires(x: AbstractSet[Literal], r: Rule) -> bool:
    return all(l in x for l in r.pos_body) and not any(l in x for l in r.neg_body)


def satisfies_rule(x: AbstractSet[Literal], r: Rule) -> bool:
    require_consistent(x)
    _require_regular((r,))
    return not _fires(x, r) or any(l in x for l in r.head)


def supports(x: AbstractSet[Literal], r: Rule) -> Optional[Literal]:
    """The literal ``r`` supports wrt ``x``, or None.

    A rule supports ``l`` when it fires and ``l`` is its only head literal
    in ``x``.
    """
    require_consistent(x)
    _require_regular((r,))
    return _supports(x, r)


def _supports(x: AbstractSet[Literal], r: Rule) -> Optional[Literal]:
    if not _fires(x, r):
        return None
    hits = [l for l in r.head if l in x]
    return hits[0] if len(hits) == 1 else None


@dataclass(frozen=True)
class ReductProgram:
    """Naf-free rules; each keeps the id of the rule it came from."""

    rules: Tuple[Rule, ...]

    def __iter__(self):
        return iter(self.rules)

    def __len__(self):
        return len(self.rules)

    def origin_ids(self) -> Tuple[int, ...]:
        return tuple(r.id for r in self.rules)


def reduct(p: RuleSet, x: AbstractSet[Literal]) -> ReductProgram:
    rules = as_rules(p)
    _require_regular(rules)
    require_consistent(x)
    kept = []
    for r in rules:
        if any(l in x for l in r.neg_body):
            continue
        kept.append(r if not r.neg_body else replace(r, neg_body=()))
    return ReductProgram(tuple(kept))


def satisfies_program(x: AbstractSet[Literal], p: RuleSet) -> bool:
    rules = as_rules(p)
    _require_regular(rules)
    require_consistent(x)
    return all(not _fires(x, r) or any(l in x for l in r.head) for r in rules)


def is_answer_set(p: RuleSet, x: AbstractSet[Literal]) -> bool:
    """Decide whether ``x`` minimally satisfies the reduct of ``p`` wrt ``x``.

    ``x`` may contain literals that do not occur in ``p``.
    """
    rules = as_rules(p)
    _require_regular(rules)
    require_consistent(x)
    enc = Encoding(literal_universe(rules) | frozenset(x))
    return _is_answer_set_mask(enc.mask(x), compile_rules(enc, rules))


def check_enumeration_limit(n: int, max_universe: Optional[int]) -> None:
    limit = DEFAULT_MAX_UNIVERSE if max_universe is None else max_universe
    if n > limit:
        raise EnumerationLimitError(
            f"literal universe has {n} literals, above the enumeration limit of {limit}"
        )


def answer_sets(p: RuleSet, max_universe: Optional[int] = None) -> List[Context]:
    """All answer sets of a regular program, by cardinality then literal order."""
    rules = as_rules(p)
    _require_regular(rules)
    universe = literal_universe(rules)
    check_enumeration_limit(len(universe), max_universe)
    enc = Encoding(universe)
    compiled = compile_rules(enc, rules)
    found = [enc.decode(m) for m in enc.consistent_masks() if _is_answer_set_mask(m, compiled)]
    return sorted(found, key=context_key)


def has_answer_set(p: RuleSet, max_universe: Optional[int] = None) -> bool:
    """Early-exit consistency check; agrees with ``bool(answer_sets(p))``."""
    rules = as_rules(p)
    _require_regular(rules)
    universe = literal_universe(rules)
    check_enumeration_limit(len(universe), max_universe)
    enc = Encoding(universe)
    compiled = compile_rules(enc, rules)
    return any(_is_answer_set_mask(m, compiled) for m in enc.consistent_masks())


def is_answer_set_acyclic(p: RuleSet, x: AbstractSet[Literal]) -> bool:
    """Answer-set test for acyclic programs: ``x`` is a model and supported."""
    rules = as_rules(p)
    _require_regular(rules)
    require_consistent(x)
    if not is_acyclic(build_graph(rules)):
        raise SemanticsError("supported-model characterization needs an acyclic program")
    if not satisfies_program(x, rules):
        return False
    supported = {_supports(x, r) for r in rules}
    return all(l in supported for l in x)
