from __future__ import annotations

import json

import pytest

from braceforge.brace import is_trivial
from braceforge.harness import (
    COUNTEREXAMPLE,
    INFINITE_CLAIMS,
    OUT_OF_SCOPE,
    REGISTRY,
    VACUOUS,
    VERIFIED,
    Claim,
    all_in_scope_verified,
    check_problem_answers,
    format_table,
    ideal_lemma_failures,
    replay,
    run_claim,
    run_claims,
)

FINITE = [c.claim_id for c in REGISTRY if c.claim_id not in INFINITE_CLAIMS]


@pytest.fixture(scope="module")
def everything(corpus8_braces, examples):
    return list(corpus8_braces) + [B for _, B in examples]


@pytest.fixture(scope="module")
def results(everything):
    return {r.claim_id: r for r in run_claims(everything)}


def test_registry_ids():
    assert [c.claim_id for c in REGISTRY] == [
        "finnil", "multab", "nill", "mgener", "two-sided-solvable", "simple-corollary", "ideal-lemmas",
        "problem-answers", "thm-fg-nilpotent", "thm-fg-residually-nilpotent", "thm-fg-residually-finite",
    ]


@pytest.mark.parametrize("claim_id", FINITE)
def test_claim_verified(results, claim_id):
    r = results[claim_id]
    assert r.status == VERIFIED, r.witness
    assert r.stats["checked"] > 0


def test_scope_sizes(results):
    checked = {k: r.stats["checked"] for k, r in results.items()}
    assert checked["finnil"] == 337
    assert checked["multab"] == checked["nill"] == 166
    assert checked["mgener"] == 250
    assert checked["two-sided-solvable"] == checked["simple-corollary"] == 252
    assert checked["ideal-lemmas"] == 348
    assert results["ideal-lemmas"].stats["two_sided"] == 252


def test_infinite_claims_out_of_scope(results):
    for cid in INFINITE_CLAIMS:
        assert results[cid].status == OUT_OF_SCOPE
    assert all_in_scope_verified(list(results.values()))


def test_problem_answers_measured():
    r = check_problem_answers()
    assert r.status == VERIFIED
    assert r.stats["measured"]["derived_length"] == {"2": 1, "3": 2, "4": 2}


def test_false_claim_gives_replayable_witness(everything):
    bogus = Claim("all-trivial", "every brace is trivial", lambda B: True,
                  lambda B: None if is_trivial(B) else ("not trivial",))
    r = run_claim(bogus, everything)
    assert r.status == COUNTEREXAMPLE
    B = everything[r.witness["brace"]]
    assert not is_trivial(B) and r.witness["order"] == B.order
    assert bogus.check(B) == ("not trivial",)
    json.dumps(r.as_dict())


def test_replay_registered_claim(everything):
    assert replay("finnil", everything, {"brace": 5}) is None


def test_empty_scope_is_vacuous():
    r = run_claim(REGISTRY[0], [])
    assert r.status == VACUOUS
    results = run_claims([])
    assert not all_in_scope_verified(results)
    assert {r.status for r in results if r.claim_id in FINITE[:-1]} == {VACUOUS}


def test_ideal_lemmas_vacuous_without_two_sided(examples):
    non_two_sided = [B for name, B in examples if name.startswith("example3")]
    r = run_claim(next(c for c in REGISTRY if c.claim_id == "ideal-lemmas"), non_two_sided)
    assert r.status == VACUOUS


def test_ideal_lemmas_on_examples(examples):
    for name, B in examples:
        assert ideal_lemma_failures(B) is None, name


def test_format_table(results):
    text = format_table(list(results.values()))
    assert text.splitlines()[0].startswith("claim")
    assert "ideal-lemmas" in text and "out-of-scope: infinite" in text
