import pytest
from hypothesis import given, settings

from crprolog.ap_semantics import answer_sets
from crprolog.depgraph import build_graph, depends, has_head_cycle
from crprolog.model import context
from crprolog.parser import parse_program
from crprolog.proofs import (
    Proof,
    ProofError,
    enumerate_proofs,
    is_normal_proof,
    is_proof,
    make_proof,
    minimal_proofs,
    needed_subproof,
    rank,
    ranking_function,
    shortest_proof_length,
    subproof,
)

import oracles
from conftest import L
from strategies import programs

# rule ids are 0-based: (1) in the source listing is id 0
A_PROOFS = [(4, 3, 1, 2, 0), (4, 3, 2, 1, 0)]


def test_is_proof_subproof_program(subproof_program, subproof_answer):
    assert is_proof(subproof_program, subproof_answer, L("a"), [4, 3, 2, 1, 0])
    assert is_proof(subproof_program, subproof_answer, L("a"), [4, 3, 1, 2, 0])
    assert not is_proof(subproof_program, subproof_answer, L("a"), [0])
    # wrong target
    assert not is_proof(subproof_program, subproof_answer, L("b"), [4, 3, 2])


def test_first_rule_may_have_naf_body():
    p = parse_program("l :- not b.")
    assert is_proof(p, context(["l"]), L("l"), [0])
    assert rank(p, context(["l"]), L("l")) == 1


def test_repeated_rule_is_not_a_proof(subproof_program, subproof_answer):
    assert not is_proof(subproof_program, subproof_answer, L("c1y"), [4, 4])


def test_is_proof_errors(subproof_program, subproof_answer, chain_program):
    with pytest.raises(ProofError):
        is_proof(subproof_program, subproof_answer, L("a"), [])
    with pytest.raises(ProofError):
        is_proof(subproof_program, subproof_answer, L("a"), [99])
    with pytest.raises(ProofError):
        is_proof(chain_program, context(["a", "b"]), L("a"), [0])


def test_enumerate_proofs_subproof_program(subproof_program, subproof_answer):
    found = enumerate_proofs(subproof_program, subproof_answer, L("a"), 5)
    assert [pr.rule_ids for pr in found] == A_PROOFS
    facts = enumerate_proofs(subproof_program, subproof_answer, L("c1y"), 1)
    assert [pr.rule_ids for pr in facts] == [(4,)]
    assert [pr.rule_ids for pr in enumerate_proofs(subproof_program, subproof_answer, L("c"), 2)] == [(6, 5)]


def test_ranks_subproof_program(subproof_program, subproof_answer):
    assert rank(subproof_program, subproof_answer, L("a")) == 5
    assert rank(subproof_program, subproof_answer, L("c")) == 2
    assert ranking_function(subproof_program, subproof_answer) == {
        L("c1y"): 1, L("c2"): 1, L("c1x"): 2, L("c"): 2, L("b"): 3, L("a"): 5,
    }
    assert ranking_function(parse_program("a. b :- a."), context(["a", "b"])) == {
        L("a"): 1, L("b"): 2,
    }


def test_minimal_proofs_subproof_program(subproof_program, subproof_answer):
    r, found = minimal_proofs(subproof_program, subproof_answer, L("a"))
    assert r == 5
    assert [pr.rule_ids for pr in found] == A_PROOFS


def test_subproof_subproof_program(subproof_program, subproof_answer):
    pr = make_proof(subproof_program, subproof_answer, L("a"), A_PROOFS[1])
    sub = subproof(pr, 3)
    assert sub.rule_ids == (4, 3, 2) and sub.target == L("c")
    assert len(sub) > rank(subproof_program, subproof_answer, L("c"))
    assert subproof(pr, 1).rule_ids == (4,)
    with pytest.raises(ProofError):
        subproof(pr, 6)


def test_minimal_proofs_of_a_are_not_normal(subproof_program, subproof_answer):
    # c :- c1x is used with rk(c) = rk(c1x) = 2
    for ids in A_PROOFS:
        pr = make_proof(subproof_program, subproof_answer, L("a"), ids)
        assert not is_normal_proof(subproof_program, subproof_answer, pr)
        sub = needed_subproof(subproof_program, pr, L("c"))
        assert sub.rule_ids == (4, 3, 2)
        assert not is_normal_proof(subproof_program, subproof_answer, sub)


def test_needed_subproof_drops_unused_steps(subproof_program, subproof_answer):
    pr = make_proof(subproof_program, subproof_answer, L("a"), (6, 5, 4, 3, 1, 0))
    assert needed_subproof(subproof_program, pr, L("b")).rule_ids == (4, 3, 1)
    assert needed_subproof(subproof_program, pr, L("a")) == pr
    with pytest.raises(ProofError):
        needed_subproof(subproof_program, pr, L("-a"))


def test_normal_proof_of_a_exists(subproof_program, subproof_answer):
    pr = make_proof(subproof_program, subproof_answer, L("a"), (6, 5, 4, 3, 1, 0))
    assert is_normal_proof(subproof_program, subproof_answer, pr)
    assert len(pr) == 6


def test_single_step_proofs_are_normal(subproof_program, subproof_answer):
    pr = make_proof(subproof_program, subproof_answer, L("c2"), (6,))
    assert is_normal_proof(subproof_program, subproof_answer, pr)


def test_normal_proof_need_not_show_dependence():
    p = parse_program("a. b.")
    x = context(["a", "b"])
    pr = make_proof(p, x, L("b"), (0, 1))
    assert is_normal_proof(p, x, pr)
    assert not depends(build_graph(p), L("b"), L("a"))


def test_proof_type_validation():
    with pytest.raises(ProofError):
        Proof((), context(), L("a"))
    with pytest.raises(ProofError):
        Proof(((0, L("a")), (0, L("a"))), context(["a"]), L("a"))
    with pytest.raises(ProofError):
        Proof(((0, L("a")),), context(["a"]), L("b"))


def test_rank_domain_checks(subproof_program, subproof_answer):
    with pytest.raises(ProofError):
        rank(subproof_program, context(["a"]), L("a"))
    with pytest.raises(ProofError):
        rank(subproof_program, subproof_answer, L("-a"))
    cyc = parse_program("p | q. p :- q. q :- p.")
    with pytest.raises(ProofError):
        ranking_function(cyc, context(["p", "q"]))


def test_proof_rendering(subproof_program, subproof_answer):
    pr = make_proof(subproof_program, subproof_answer, L("c"), (6, 5))
    assert pr.to_json() == {
        "target": "c",
        "steps": [{"rule": 6, "supports": "c2"}, {"rule": 5, "supports": "c"}],
    }
    assert pr.render(subproof_program).splitlines()[1].strip() == "2. [5] c :- c2.   => c"


hcf_programs = programs(atoms=["a", "b", "c"], max_rules=5, max_head=2)


def solved(p):
    if has_head_cycle(p):
        return []
    return answer_sets(p)


@settings(max_examples=150, deadline=None)
@given(hcf_programs)
def test_every_answer_set_literal_has_a_proof(p):
    for x in solved(p):
        for lit in x:
            assert enumerate_proofs(p, x, lit, max(1, len(p)))


@settings(max_examples=150, deadline=None)
@given(programs(atoms=["a", "b", "c"], max_rules=4, max_head=2))
def test_rank_matches_brute_force(p):
    for x in solved(p):
        ranks = ranking_function(p, x)
        for lit in x:
            shortest = min(len(pr) for pr in enumerate_proofs(p, x, lit, len(p)))
            assert ranks[lit] == shortest == oracles.brute_rank(p.rules, x, lit)


@settings(max_examples=150, deadline=None)
@given(hcf_programs)
def test_prefixes_of_normal_proofs_are_normal(p):
    for x in solved(p):
        ranks = ranking_function(p, x)
        for lit in x:
            for pr in enumerate_proofs(p, x, lit, len(p)):
                if is_normal_proof(p, x, pr, ranks):
                    for i in range(1, len(pr) + 1):
                        assert is_normal_proof(p, x, subproof(pr, i), ranks)


@settings(max_examples=150, deadline=None)
@given(hcf_programs)
def test_target_of_minimal_proof_depends_on_earlier_steps(p):
    g = build_graph(p)
    for x in solved(p):
        for lit in x:
            _, found = minimal_proofs(p, x, lit)
            for pr in found:
                for _, earlier in pr.steps[:-1]:
                    assert depends(g, lit, earlier)


@settings(max_examples=150, deadline=None)
@given(hcf_programs)
def test_no_proofs_outside_context(p):
    for x in solved(p):
        for lit in x:
            assert shortest_proof_length(p, x, lit) is not None


@settings(max_examples=100, deadline=None)
@given(hcf_programs)
def test_needed_subproofs_are_proofs(p):
    for x in solved(p):
        for lit in x:
            for pr in enumerate_proofs(p, x, lit, min(len(p), 4)):
                for _, h in pr.steps:
                    sub = needed_subproof(p, pr, h)
                    assert is_proof(p, x, h, sub.rule_ids)
