"""Immutable domain types for finite ground CR-Prolog programs."""

from __future__ import annotations

import enum
import re
from functools import total_ordering
from dataclasses import dataclass, field, replace
from typing import AbstractSet, FrozenSet, Iterable, Iterator, Tuple, Union

ATOM_PATTERN = re.compile(r"[a-z][a-zA-Z0-9_]*\Z")


class ModelError(ValueError):
    """Raised when a domain value violates its structural invariants."""


class InconsistentContextError(ValueError):
    """Raised when a semantic entry point receives an inconsistent context."""


@total_ordering
@dataclass(frozen=True)
class Literal:
    """An atom, optionally under strong negation (``-a``)."""

    atom: str
    negated: bool = False

    def __post_init__(self):
        if not isinstance(self.atom, str) or not ATOM_PATTERN.match(self.atom):
            raise ModelError(f"invalid atom name: {self.atom!r}")

    @property
    def sort_key(self) -> Tuple[bool, str]:
        return (self.negated, self.atom)

    def __lt__(self, other: "Literal") -> bool:
        if not isinstance(other, Literal):
            return NotImplemented
        return self.sort_key < other.sort_key

    def __str__(self) -> str:
        return f"-{self.atom}" if self.negated else self.atom

    def __repr__(self) -> str:
        return f"Literal({str(self)!r})"

    @classmethod
    def parse(cls, text: str) -> "Literal":
        """Build a literal from ``a`` or ``-a``."""
        text = text.strip()
        if text.startswith("-"):
            return cls(text[1:].strip(), True)
        return cls(text)


def complement(lit: Literal) -> Literal:
    return Literal(lit.atom, not lit.negated)


@dataclass(frozen=True)
class ExtendedLiteral:
    """A literal, or its default negation ``not l`` when ``naf`` is set."""

    literal: Literal
    naf: bool = False

    def __str__(self) -> str:
        return f"not {self.literal}" if self.naf else str(self.literal)


class RuleKind(enum.Enum):
    REGULAR = "regular"
    CR = "cr"


def _dedup(lits: Iterable[Literal]) -> Tuple[Literal, ...]:
    seen = dict.fromkeys(lits)
    for lit in seen:
        if not isinstance(lit, Literal):
            raise ModelError(f"expected Literal, got {lit!r}")
    return tuple(seen)


@dataclass(frozen=True)
class Rule:
    """A regular rule or cr-rule.

    ``head`` holds the disjuncts; ``neg_body`` holds the literals that appear
    under ``not``. Duplicates are dropped on construction, keeping first
    occurrences in order.
    """

    head: Tuple[Literal, ...]
    pos_body: Tuple[Literal, ...] = ()
    neg_body: Tuple[Literal, ...] = ()
    kind: RuleKind = RuleKind.REGULAR
    id: int = 0

    def __post_init__(self):
        object.__setattr__(self, "head", _dedup(self.head))
        object.__setattr__(self, "pos_body", _dedup(self.pos_body))
        object.__setattr__(self, "neg_body", _dedup(self.neg_body))
        if not self.head:
            raise ModelError("rule head must be non-empty")
        if self.kind is RuleKind.CR and len(self.head) != 1:
            raise ModelError("cr-rule head must have exactly one literal")

    @property
    def is_cr(self) -> bool:
        return self.kind is RuleKind.CR

    @property
    def is_fact(self) -> bool:
        return not self.pos_body and not self.neg_body

    @property
    def is_disjunctive(self) -> bool:
        return len(self.head) > 1

    @property
    def body(self) -> Tuple[ExtendedLiteral, ...]:
        return tuple(ExtendedLiteral(l) for l in self.pos_body) + tuple(
            ExtendedLiteral(l, naf=True) for l in self.neg_body
        )

    def literals(self) -> FrozenSet[Literal]:
        return frozenset(self.head) | frozenset(self.pos_body) | frozenset(self.neg_body)

    def with_id(self, rule_id: int) -> "Rule":
        return replace(self, id=rule_id)

    def __str__(self) -> str:
        head = " | ".join(map(str, self.head))
        body = ", ".join(map(str, self.body))
        if self.is_cr:
            return f"{head} :+ {body}." if body else f"{head} :+."
        return f"{head} :- {body}." if body else f"{head}."


RuleSet = Union["Program", Iterable[Rule]]


@dataclass(frozen=True)
class Program:
    """An ordered collection of rules whose ids are ``0..len-1`` in order.

    Use :meth:`of` to build a program from rules carrying arbitrary ids.
    """

    rules: Tuple[Rule, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "rules", tuple(self.rules))
        for index, rule in enumerate(self.rules):
            if rule.id != index:
                raise ModelError(f"rule at position {index} has id {rule.id}")

    @classmethod
    def of(cls, rules: Iterable[Rule]) -> "Program":
        return cls(tuple(r.with_id(i) for i, r in enumerate(rules)))

    def __len__(self) -> int:
        return len(self.rules)

    def __iter__(self) -> Iterator[Rule]:
        return iter(self.rules)

    def __getitem__(self, rule_id: int) -> Rule:
        return self.rules[rule_id]

    @property
    def regular_part(self) -> Tuple[Rule, ...]:
        return tuple(r for r in self.rules if not r.is_cr)

    @property
    def cr_part(self) -> Tuple[Rule, ...]:
        return tuple(r for r in self.rules if r.is_cr)

    @property
    def is_regular(self) -> bool:
        return not any(r.is_cr for r in self.rules)

    @property
    def is_nondisjunctive(self) -> bool:
        return not any(r.is_disjunctive for r in self.rules)

    def cr_literals(self) -> FrozenSet[Literal]:
        return frozenset(r.head[0] for r in self.cr_part)

    def __str__(self) -> str:
        return "".join(f"{r}\n" for r in self.rules)


def as_rules(p: RuleSet) -> Tuple[Rule, ...]:
    if isinstance(p, Program):
        return p.rules
    return tuple(p)


def literal_universe(p: RuleSet) -> FrozenSet[Literal]:
    """Every literal occurring in a head or body of ``p``."""
    out: set = set()
    for rule in as_rules(p):
        out |= rule.literals()
    return frozenset(out)


Context = FrozenSet[Literal]


def context(lits: Iterable[Union[Literal, str]] = ()) -> Context:
    """Build a context from literals or their textual forms (``"-a"``)."""
    return frozenset(l if isinstance(l, Literal) else Literal.parse(l) for l in lits)


def is_consistent(c: AbstractSet[Literal]) -> bool:
    return not any(complement(l) in c for l in c if not l.negated)


def require_consistent(c: AbstractSet[Literal]) -> None:
    if not is_consistent(c):
        raise InconsistentContextError(f"inconsistent context: {format_context(c)}")


def sorted_context(c: AbstractSet[Literal]) -> Tuple[Literal, ...]:
    return tuple(sorted(c))


def context_key(c: AbstractSet[Literal]) -> Tuple[int, Tuple[Tuple[bool, str], ...]]:
    """Canonical ordering: cardinality first, then literal order."""
    return (len(c), tuple(l.sort_key for l in sorted(c)))


def format_context(c: AbstractSet[Literal]) -> str:
    return "{" + ", ".join(map(str, sorted_context(c))) + "}"


def head_literals(rules: Iterable[Rule]) -> FrozenSet[Literal]:
    out: set = set()
    for rule in rules:
        out.update(rule.head)
    return frozenset(out)


def fact(lit: Union[Literal, str], rule_id: int = 0) -> Rule:
    if isinstance(lit, str):
        lit = Literal.parse(lit)
    return Rule((lit,), id=rule_id)
