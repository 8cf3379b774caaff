"""Antichain checks and a random-program falsification harness."""

from __future__ import annotations

import enum
import random
import time
from dataclasses import asdict, dataclass, field, replace
from typing import FrozenSet, List, Optional, Tuple

from .ap_semantics import EnumerationLimitError, is_answer_set
from .cr_semantics import CrSolution, applied_program, cr_answer_sets, distinct_answer_sets
from .depgraph import build_graph, has_head_cycle, is_acyclic, is_cr_independent
from .model import Context, Literal, Program, Rule, RuleKind, format_context


@dataclass(frozen=True)
class AntichainReport:
    holds: bool
    witness: Optional[Tuple[Context, Context]]
    solutions: Tuple[CrSolution, ...]

    def to_json(self) -> dict:
        return {
            "holds": self.holds,
            "witness": None
            if self.witness is None
            else [sorted(map(str, self.witness[0])), sorted(map(str, self.witness[1]))],
            "answer_sets": [sorted(map(str, x)) for x in distinct_answer_sets(self.solutions)],
        }


def check_antichain(p: Program, max_universe: Optional[int] = None) -> AntichainReport:
    solutions = tuple(cr_answer_sets(p, max_universe))
    found = distinct_answer_sets(solutions)
    for small in found:
        for big in found:
            if small < big:
                return AntichainReport(False, (small, big), solutions)
    return AntichainReport(True, None, solutions)


def verify_witness(p: Program, report: AntichainReport) -> bool:
    """Re-check that both witness contexts are answer sets, one strictly inside the other."""
    if report.witness is None:
        return False
    small, big = report.witness
    if not small < big:
        return False

    def certified(x: Context) -> bool:
        return any(
            s.answer_set == x and is_answer_set(applied_program(p, s.support), x)
            for s in report.solutions
        )

    return certified(small) and certified(big)


class Requirement(enum.Enum):
    ACYCLIC = "acyclic"
    CR_INDEPENDENT = "cr_independent"
    NONDISJUNCTIVE = "nondisjunctive"
    HCF = "hcf"


class GenerationError(RuntimeError):
    """The rejection budget ran out before a conforming program was drawn."""


@dataclass(frozen=True)
class GenConfig:
    seed: int = 0
    atoms: int = 4
    regular_rules: int = 5
    cr_rules: int = 2
    max_head: int = 2
    max_body: int = 2
    neg_prob: float = 0.5
    strong_neg_prob: float = 0.2
    constraint_prob: float = 0.3
    cr_head_bias: float = 0.7
    require: FrozenSet[Requirement] = frozenset()
    max_attempts: int = 2000

    def __post_init__(self):
        object.__setattr__(self, "require", frozenset(Requirement(r) for r in self.require))
        if self.atoms < 1:
            raise ValueError("atoms must be positive")
        if self.regular_rules < 0 or self.cr_rules < 0:
            raise ValueError("rule counts must be non-negative")
        if self.max_head < 1:
            raise ValueError("max_head must be positive")
        if self.max_body < 0:
            raise ValueError("max_body must be non-negative")
        if self.max_attempts < 1:
            raise ValueError("max_attempts must be positive")
        for name in ("neg_prob", "strong_neg_prob", "constraint_prob", "cr_head_bias"):
            if not 0.0 <= getattr(self, name) <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1]")

    def to_json(self) -> dict:
        d = asdict(self)
        d["require"] = sorted(r.value for r in self.require)
        return d


def _atom_names(n: int) -> List[str]:
    return [chr(ord("a") + i) if n <= 26 else f"p{i}" for i in range(n)]


def _draw(cfg: GenConfig, rng: random.Random) -> Program:
    names = _atom_names(cfg.atoms)
    universe = [Literal(a, neg) for a in names for neg in (False, True)]
    acyclic = Requirement.ACYCLIC in cfg.require
    max_head = 1 if Requirement.NONDISJUNCTIVE in cfg.require else cfg.max_head
    # random strata: positive premises must sit strictly below every head literal
    level = {l: rng.random() for l in universe}

    def literal() -> Literal:
        return Literal(rng.choice(names), rng.random() < cfg.strong_neg_prob)

    def rule(kind: RuleKind, naf_pool=()) -> Rule:
        k = 1 if kind is RuleKind.CR else rng.randint(1, max_head)
        if naf_pool and rng.random() < cfg.cr_head_bias:
            head = [rng.choice(naf_pool)]
        else:
            head = [literal() for _ in range(k)]
        floor = min(level[l] for l in head)
        pos, neg = [], []
        for _ in range(rng.randint(0, cfg.max_body)):
            if rng.random() < cfg.neg_prob:
                neg.append(literal())
                continue
            lit = literal()
            if acyclic and level[lit] >= floor:
                below = [l for l in universe if level[l] < floor]
                if not below:
                    continue
                lit = rng.choice(below)
            pos.append(lit)
        if kind is RuleKind.REGULAR and k == 1 and rng.random() < cfg.constraint_prob:
            # "h :- body, not h." behaves as the constraint ":- body."
            neg.append(head[0])
        return Rule(tuple(head), tuple(pos), tuple(neg), kind)

    rules = [rule(RuleKind.REGULAR) for _ in range(cfg.regular_rules)]
    # cr-rules restore consistency by defeating default-negated premises
    naf_pool = sorted({l for r in rules for l in r.neg_body})
    rules += [rule(RuleKind.CR, naf_pool) for _ in range(cfg.cr_rules)]
    return Program.of(rules)


def satisfies_requirements(p: Program, require: FrozenSet[Requirement]) -> bool:
    g = build_graph(p)
    if Requirement.ACYCLIC in require and not is_acyclic(g):
        return False
    if Requirement.NONDISJUNCTIVE in require and not p.is_nondisjunctive:
        return False
    if Requirement.HCF in require and has_head_cycle(p, g):
        return False
    if Requirement.CR_INDEPENDENT in require and not is_cr_independent(p):
        return False
    return True


def random_program(cfg: GenConfig) -> Program:
    """A program determined entirely by ``cfg``, meeting every requirement in it."""
    rng = random.Random(cfg.seed)
    for _ in range(cfg.max_attempts):
        p = _draw(cfg, rng)
        if satisfies_requirements(p, cfg.require):
            return p
    raise GenerationError(
        f"no program meeting {sorted(r.value for r in cfg.require)} "
        f"after {cfg.max_attempts} attempts (seed {cfg.seed})"
    )


class Target(enum.Enum):
    PROPOSITION_ANTICHAIN_AP = "proposition"
    THEOREM_ACYCLIC_CR_INDEPENDENT = "theorem"
    CONJECTURE_CR_INDEPENDENT_ONLY = "conjecture"


_TARGET_REQUIRE = {
    Target.PROPOSITION_ANTICHAIN_AP: frozenset(),
    Target.THEOREM_ACYCLIC_CR_INDEPENDENT: frozenset({Requirement.ACYCLIC, Requirement.CR_INDEPENDENT}),
    Target.CONJECTURE_CR_INDEPENDENT_ONLY: frozenset({Requirement.CR_INDEPENDENT}),
}


def meets_target(p: Program, target: Target) -> bool:
    if target is Target.PROPOSITION_ANTICHAIN_AP and not p.is_regular:
        return False
    return satisfies_requirements(p, _TARGET_REQUIRE[target])


@dataclass(frozen=True)
class Counterexample:
    trial: int
    config: GenConfig
    program: Program
    report: AntichainReport

    def to_json(self) -> dict:
        return {
            "trial": self.trial,
            "config": self.config.to_json(),
            "program": str(self.program),
            "report": self.report.to_json(),
        }


@dataclass(frozen=True)
class FalsifyReport:
    target: Target
    trials: int
    discarded: int
    counterexample: Optional[Counterexample]
    elapsed: float = field(compare=False)

    def to_json(self) -> dict:
        return {
            "target": self.target.value,
            "trials": self.trials,
            "discarded": self.discarded,
            "counterexample": None if self.counterexample is None else self.counterexample.to_json(),
            "elapsed_seconds": round(self.elapsed, 3),
        }


def trial_config(cfg: GenConfig, target: Target, trial: int, rng: random.Random) -> GenConfig:
    """Per-trial config: sizes drawn up to ``cfg``'s counts, requirements from the target.

    Atom and regular-rule counts come from the upper half of their range;
    tiny programs are almost always trivially consistent.
    """
    cr_rules = 0 if target is Target.PROPOSITION_ANTICHAIN_AP else rng.randint(0, cfg.cr_rules)
    return replace(
        cfg,
        seed=rng.getrandbits(64),
        atoms=rng.randint((cfg.atoms + 1) // 2, cfg.atoms),
        regular_rules=rng.randint((cfg.regular_rules + 1) // 2, max(1, cfg.regular_rules)),
        cr_rules=cr_rules,
        require=cfg.require | _TARGET_REQUIRE[target],
    )


def falsify(
    cfg: GenConfig,
    trials: int,
    target: Target,
    max_universe: Optional[int] = None,
) -> FalsifyReport:
    """Search random programs meeting the target's hypotheses for an answer-set chain.

    Trials whose generation or enumeration fails are counted as discarded.
    The first counterexample stops the search; it replays from its config
    via :func:`random_program`.
    """
    target = Target(target)
    start = time.perf_counter()
    rng = random.Random(cfg.seed)
    discarded = 0
    for trial in range(trials):
        tcfg = trial_config(cfg, target, trial, rng)
        try:
            p = random_program(tcfg)
        except GenerationError:
            discarded += 1
            continue
        if not meets_target(p, target):
            discarded += 1
            continue
        try:
            report = check_antichain(p, max_universe)
        except EnumerationLimitError:
            discarded += 1
            continue
        if not report.holds:
            ce = Counterexample(trial, tcfg, p, report)
            return FalsifyReport(target, trial + 1, discarded, ce, time.perf_counter() - start)
    return FalsifyReport(target, trials, discarded, None, time.perf_counter() - start)


def describe_witness(report: AntichainReport) -> str:
    if report.witness is None:
        return "antichain property holds"
    small, big = report.witness
    return f"{format_context(small)} is a proper subset of {format_context(big)}"
