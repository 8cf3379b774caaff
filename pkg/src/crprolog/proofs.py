"""Proofs of literals wrt a context, ranks, and normal proofs.

A proof is a sequence of distinct rules, each supporting exactly one
literal of the context, where the first rule has an empty positive body
(it need not be a fact) and every positive premise of a step is supported
by an earlier step.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import AbstractSet, Dict, FrozenSet, Iterator, List, Mapping, Optional, Sequence, Tuple

from .ap_semantics import SemanticsError, _supports, is_answer_set
from .depgraph import has_head_cycle
from .model import Context, Literal, Rule, RuleSet, as_rules, require_consistent

Step = Tuple[int, Literal]


class ProofError(SemanticsError):
    pass


@dataclass(frozen=True)
class Proof:
    """Ordered ``(rule id, supported literal)`` steps proving ``target`` wrt ``context``."""

    steps: Tuple[Step, ...]
    context: Context
    target: Literal

    def __post_init__(self):
        ids = self.rule_ids
        if not ids:
            raise ProofError("a proof has at least one step")
        if len(set(ids)) != len(ids):
            raise ProofError("rules in a proof must be pairwise distinct")
        if self.steps[-1][1] != self.target:
            raise ProofError("the last step must support the target")

    @property
    def rule_ids(self) -> Tuple[int, ...]:
        return tuple(i for i, _ in self.steps)

    @property
    def supported(self) -> FrozenSet[Literal]:
        return frozenset(l for _, l in self.steps)

    def __len__(self) -> int:
        return len(self.steps)

    def to_json(self) -> dict:
        return {
            "target": str(self.target),
            "steps": [{"rule": i, "supports": str(l)} for i, l in self.steps],
        }

    def render(self, p: RuleSet) -> str:
        by_id = {r.id: r for r in as_rules(p)}
        return "\n".join(
            f"  {n}. [{i}] {by_id[i]}   => {l}" for n, (i, l) in enumerate(self.steps, 1)
        )


RankingFunction = Dict[Literal, int]


def _index(p: RuleSet) -> Dict[int, Rule]:
    rules = as_rules(p)
    by_id = {}
    for r in rules:
        if r.is_cr:
            raise ProofError(f"cr-rule {r.id} ({r}) cannot occur in a proof; apply it first")
        by_id[r.id] = r
    return by_id


def is_proof(p: RuleSet, x: AbstractSet[Literal], lit: Literal, steps: Sequence[int]) -> bool:
    by_id = _index(p)
    require_consistent(x)
    if not steps:
        raise ProofError("a proof has at least one step")
    for i in steps:
        if i not in by_id:
            raise ProofError(f"unknown rule id {i}")
    if len(set(steps)) != len(steps):
        return False
    established: set = set()
    for i in steps:
        r = by_id[i]
        h = _supports(x, r)
        if h is None:
            return False
        # for the first step this demands an empty positive body
        if not all(l in established for l in r.pos_body):
            return False
        established.add(h)
    return _supports(x, by_id[steps[-1]]) == lit


def make_proof(p: RuleSet, x: AbstractSet[Literal], lit: Literal, steps: Sequence[int]) -> Proof:
    if not is_proof(p, x, lit, steps):
        raise ProofError(f"{list(steps)} is not a proof of {lit}")
    by_id = _index(p)
    return Proof(tuple((i, _supports(x, by_id[i])) for i in steps), frozenset(x), lit)


def _supporting(p: RuleSet, x: AbstractSet[Literal]) -> List[Tuple[Rule, Literal]]:
    out = []
    for r in sorted(_index(p).values(), key=lambda r: r.id):
        h = _supports(x, r)
        if h is not None:
            out.append((r, h))
    return out


def iter_proofs(
    p: RuleSet, x: AbstractSet[Literal], lit: Literal, max_len: int
) -> Iterator[Proof]:
    """Depth-first generation of every proof of ``lit`` with at most ``max_len`` steps."""
    if max_len < 1:
        raise ProofError("max_len must be positive")
    require_consistent(x)
    cands = _supporting(p, x)
    ctx = frozenset(x)
    steps: List[Step] = []
    used: set = set()
    established: Dict[Literal, int] = {}

    def extend() -> Iterator[Proof]:
        if steps and steps[-1][1] == lit:
            yield Proof(tuple(steps), ctx, lit)
        if len(steps) == max_len:
            return
        for r, h in cands:
            if r.id in used or not all(l in established for l in r.pos_body):
                continue
            steps.append((r.id, h))
            used.add(r.id)
            established[h] = established.get(h, 0) + 1
            yield from extend()
            established[h] -= 1
            if not established[h]:
                del established[h]
            used.discard(r.id)
            steps.pop()

    yield from extend()


def enumerate_proofs(
    p: RuleSet, x: AbstractSet[Literal], lit: Literal, max_len: int
) -> List[Proof]:
    """All proofs up to ``max_len`` steps, by length then rule ids."""
    return sorted(iter_proofs(p, x, lit, max_len), key=lambda pr: (len(pr), pr.rule_ids))


def shortest_proof_length(p: RuleSet, x: AbstractSet[Literal], lit: Literal) -> Optional[int]:
    """Length of a shortest proof of ``lit`` wrt ``x``, or None if there is none.

    Breadth-first over sets of used rules: the literals a partial proof has
    established depend only on which rules it used, not on their order.
    """
    require_consistent(x)
    cands = _supporting(p, x)
    frontier = {frozenset()}
    for length in range(1, len(cands) + 1):
        nxt = set()
        for used in frontier:
            established = {h for r, h in cands if r.id in used}
            for r, h in cands:
                if r.id in used or not all(l in established for l in r.pos_body):
                    continue
                if h == lit:
                    return length
                nxt.add(used | {r.id})
        if not nxt:
            return None
        frontier = nxt
    return None


def _check_rank_domain(p: RuleSet, x: AbstractSet[Literal]) -> None:
    rules = as_rules(p)
    _index(rules)
    require_consistent(x)
    if has_head_cycle(rules):
        raise ProofError("ranks are only defined for head-cycle-free programs")
    if not is_answer_set(rules, x):
        raise ProofError("ranks are only defined wrt an answer set")


def rank(p: RuleSet, x: AbstractSet[Literal], lit: Literal) -> int:
    _check_rank_domain(p, x)
    return _rank(p, x, lit)


def _rank(p: RuleSet, x: AbstractSet[Literal], lit: Literal) -> int:
    if lit not in x:
        raise ProofError(f"{lit} is not in the answer set")
    n = shortest_proof_length(p, x, lit)
    if n is None:
        # cannot happen for head-cycle-free programs
        raise ProofError(f"no proof of {lit} exists")
    return n


def ranking_function(p: RuleSet, x: AbstractSet[Literal]) -> RankingFunction:
    _check_rank_domain(p, x)
    return {l: _rank(p, x, l) for l in sorted(x)}


def is_normal_proof(
    p: RuleSet, x: AbstractSet[Literal], pr: Proof, ranks: Optional[Mapping[Literal, int]] = None
) -> bool:
    """Every step's literal out-ranks each positive premise of its rule."""
    if not is_proof(p, x, pr.target, pr.rule_ids) or pr.context != frozenset(x):
        raise ProofError("not a valid proof wrt this program and context")
    if ranks is None:
        ranks = ranking_function(p, x)
    by_id = _index(p)
    return all(ranks[h] > ranks[l] for i, h in pr.steps for l in by_id[i].pos_body)


def subproof(pr: Proof, i: int) -> Proof:
    """The first ``i`` steps (1-based), proving the literal supported at step ``i``."""
    if not 1 <= i <= len(pr):
        raise ProofError(f"step index {i} outside 1..{len(pr)}")
    steps = pr.steps[:i]
    return Proof(steps, pr.context, steps[-1][1])


def minimal_proofs(p: RuleSet, x: AbstractSet[Literal], lit: Literal) -> Tuple[int, List[Proof]]:
    """The rank of ``lit`` and every proof of exactly that length."""
    r = rank(p, x, lit)
    return r, [pr for pr in enumerate_proofs(p, x, lit, r) if len(pr) == r]


def needed_subproof(p: RuleSet, pr: Proof, lit: Literal) -> Proof:
    """The steps of ``pr`` that deriving ``lit`` actually uses, in their original order.

    Starts at the first step supporting ``lit`` and walks back through the
    earliest earlier step supporting each positive premise.
    """
    by_id = _index(p)
    first: Dict[Literal, int] = {}
    for n, (_, h) in enumerate(pr.steps):
        first.setdefault(h, n)
    if lit not in first:
        raise ProofError(f"{lit} is not supported by any step")
    keep = set()
    todo = [first[lit]]
    while todo:
        n = todo.pop()
        if n in keep:
            continue
        keep.add(n)
        todo.extend(first[l] for l in by_id[pr.steps[n][0]].pos_body)
    return Proof(tuple(pr.steps[n] for n in sorted(keep)), pr.context, lit)
