import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from crprolog.antichain import (
    GenConfig,
    GenerationError,
    Requirement,
    Target,
    check_antichain,
    describe_witness,
    falsify,
    meets_target,
    random_program,
    satisfies_requirements,
    verify_witness,
)
from crprolog.depgraph import build_graph, is_acyclic, is_cr_independent
from crprolog.model import context
from crprolog.parser import parse_program


def test_chain_program_witness(chain_program):
    report = check_antichain(chain_program)
    assert not report.holds
    assert report.witness == (context(["a", "b"]), context(["a", "b", "c"]))
    assert verify_witness(chain_program, report)
    assert describe_witness(report) == "{a, b} is a proper subset of {a, b, c}"


def test_incomparable_answer_sets():
    p = parse_program("a :- not b. b :- not a.")
    report = check_antichain(p)
    assert report.holds and report.witness is None
    assert not verify_witness(p, report)
    assert report.to_json()["answer_sets"] == [["a"], ["b"]]


def test_inconsistent_program_holds_vacuously():
    assert check_antichain(parse_program("a. -a.")).holds


def test_gen_config_validation():
    with pytest.raises(ValueError):
        GenConfig(atoms=0)
    with pytest.raises(ValueError):
        GenConfig(neg_prob=1.5)
    with pytest.raises(ValueError):
        GenConfig(regular_rules=-1)
    assert GenConfig(require={"acyclic"}).require == frozenset({Requirement.ACYCLIC})


def test_generation_is_deterministic():
    cfg = GenConfig(seed=7, atoms=5, regular_rules=6, cr_rules=3)
    assert random_program(cfg) == random_program(cfg)
    assert random_program(cfg) != random_program(GenConfig(seed=8, atoms=5, regular_rules=6, cr_rules=3))


def test_structural_counts():
    p = random_program(GenConfig(seed=3, regular_rules=6, cr_rules=2))
    assert len(p.regular_part) == 6 and len(p.cr_part) == 2
    assert random_program(GenConfig(seed=3, cr_rules=0)).is_regular


@settings(max_examples=100, deadline=None)
@given(
    st.integers(0, 2**64 - 1),
    st.sets(st.sampled_from(list(Requirement))),
)
def test_requirements_hold(seed, require):
    cfg = GenConfig(seed=seed, atoms=4, regular_rules=4, cr_rules=2, require=frozenset(require))
    try:
        p = random_program(cfg)
    except GenerationError:
        return
    assert satisfies_requirements(p, cfg.require)
    if Requirement.ACYCLIC in require:
        assert is_acyclic(build_graph(p))
    if Requirement.CR_INDEPENDENT in require:
        assert is_cr_independent(p)


def test_rejection_budget_exhausted():
    # one atom, every body positive: "a :- a." makes the cr-literal a depend on itself
    cfg = GenConfig(seed=0, atoms=1, regular_rules=20, cr_rules=2, neg_prob=0.0,
                    strong_neg_prob=0.0, constraint_prob=0.0,
                    require={Requirement.CR_INDEPENDENT}, max_attempts=5)
    with pytest.raises(GenerationError, match="cr_independent"):
        random_program(cfg)


def test_targets_filter_programs(chain_program):
    assert not meets_target(chain_program, Target.PROPOSITION_ANTICHAIN_AP)
    assert not meets_target(chain_program, Target.THEOREM_ACYCLIC_CR_INDEPENDENT)
    assert meets_target(parse_program("a :- not b."), Target.PROPOSITION_ANTICHAIN_AP)


def test_falsify_theorem_target_clean():
    report = falsify(GenConfig(seed=1, atoms=4, regular_rules=5, cr_rules=3), 300,
                     Target.THEOREM_ACYCLIC_CR_INDEPENDENT)
    assert report.counterexample is None
    assert report.trials == 300


def test_falsify_is_deterministic():
    cfg = GenConfig(seed=5, atoms=4, regular_rules=4, cr_rules=2)
    a = falsify(cfg, 50, Target.CONJECTURE_CR_INDEPENDENT_ONLY)
    b = falsify(cfg, 50, Target.CONJECTURE_CR_INDEPENDENT_ONLY)
    assert a == b


def test_conjecture_mode_runs():
    # exploration only: the outcome is not asserted
    report = falsify(GenConfig(seed=2, atoms=4, regular_rules=5, cr_rules=3), 200,
                     Target.CONJECTURE_CR_INDEPENDENT_ONLY)
    assert report.trials <= 200
    if report.counterexample is not None:
        assert verify_witness(report.counterexample.program, report.counterexample.report)


def first_chain(limit=20000):
    for seed in range(limit):
        p = random_program(GenConfig(seed=seed, atoms=4, regular_rules=5, cr_rules=3))
        report = check_antichain(p)
        if not report.holds:
            return seed, p, report
    return None


def test_harness_finds_chains_without_hypotheses():
    found = first_chain()
    assert found is not None
    seed, p, report = found
    assert verify_witness(p, report)
    # a chain forces cr-dependence in acyclic programs
    if is_acyclic(build_graph(p)):
        assert not is_cr_independent(p)


def test_counterexample_replays(monkeypatch):
    import crprolog.antichain as mod

    # relax the target filter so the chain above counts as a counterexample
    monkeypatch.setitem(mod._TARGET_REQUIRE, Target.CONJECTURE_CR_INDEPENDENT_ONLY, frozenset())
    monkeypatch.setattr(mod, "meets_target", lambda prog, target: True)
    rep = falsify(GenConfig(seed=0, atoms=4, regular_rules=5, cr_rules=3), 5000,
                  Target.CONJECTURE_CR_INDEPENDENT_ONLY)
    ce = rep.counterexample
    assert ce is not None
    assert random_program(ce.config) == ce.program
    assert check_antichain(ce.program) == ce.report
    assert rep.to_json()["counterexample"]["trial"] == ce.trial
