"""Vulnerability/criticality scoring against independent counting oracles."""

from __future__ import annotations

import random
from dataclasses import replace
from fractions import Fraction

import pytest
from hypothesis import given, settings

from charter_deps.metrics import (
    criticality,
    format_vm,
    format_vm_exact,
    hotspots,
    metrics_table,
    parse_vm_exact,
    vulnerability,
)
from charter_deps.model import Actor, Dependency, Dependum, ModelError, SDModel

from conftest import random_model, sd_models
from test_model import brute_profile

# Expected staff scores for the case-study fixture, frozen from the published
# measurement tables: actor -> (out, dependees, vm, in, dependers, cm).
STAFF_EXPECTED = {
    "registration-officer-i": (4, 1, Fraction(4), 5, 2, 10),
    "registration-officer-ii": (4, 2, Fraction(2), 3, 2, 6),
    "registration-officer-iii": (3, 2, Fraction(3, 2), 2, 1, 2),
    "assistant-registration-officer": (2, 2, Fraction(1), 2, 1, 2),
    "registration-verifier": (4, 1, Fraction(4), 1, 1, 1),
    "registration-clerk-window-23": (6, 3, Fraction(2), 2, 1, 2),
    "registration-clerk-window-24": (3, 2, Fraction(3, 2), 2, 1, 2),
    "registration-clerk-window-25": (2, 1, Fraction(2), 1, 1, 1),
    "registration-clerk-window-26": (1, 1, Fraction(1), 1, 1, 1),
}


def oracle_vm(model: SDModel, actor_id: str) -> Fraction:
    out, dependees, _, _ = brute_profile(model, actor_id)
    return Fraction(out, dependees) if out else Fraction(0)


def oracle_cm(model: SDModel, actor_id: str) -> int:
    _, _, in_deps, dependers = brute_profile(model, actor_id)
    return in_deps * dependers


def test_case_study_vulnerability_values(registry_document):
    model = registry_document.model
    assert vulnerability(model, "registration-officer-i") == 4
    assert vulnerability(model, "registration-officer-iii") == Fraction(3, 2)


def test_case_study_criticality_values(registry_document):
    model = registry_document.model
    assert criticality(model, "registration-officer-i") == 10
    assert criticality(model, "registration-officer-ii") == 6


def test_zero_outgoing_scores_zero_vulnerability():
    model = SDModel(name="m", actors=(Actor(id="a", name="A"),))
    assert vulnerability(model, "a") == 0
    assert criticality(model, "a") == 0


def test_unknown_actor_raises():
    model = SDModel(name="m", actors=(Actor(id="a", name="A"),))
    with pytest.raises(ModelError):
        vulnerability(model, "ghost")
    with pytest.raises(ModelError):
        criticality(model, "ghost")


def test_staff_table_matches_expected(registry_document, staff_scope):
    rows = metrics_table(registry_document.model, staff_scope)
    assert [row.actor for row in rows] == sorted(STAFF_EXPECTED)
    for row in rows:
        out, dependees, vm, in_deps, dependers, cm = STAFF_EXPECTED[row.actor]
        assert (row.out_deps, row.dependees, row.vm, row.in_deps, row.dependers, row.cm) == (
            out,
            dependees,
            vm,
            in_deps,
            dependers,
            cm,
        )


def test_single_actor_scope_zero_row():
    model = SDModel(name="m", actors=(Actor(id="a", name="A"),))
    rows = metrics_table(model, ["a"])
    assert len(rows) == 1
    row = rows[0]
    assert (row.out_deps, row.dependees, row.vm, row.in_deps, row.dependers, row.cm) == (
        0,
        0,
        Fraction(0),
        0,
        0,
        0,
    )


def test_empty_scope_rejected(registry_document):
    with pytest.raises(ModelError):
        metrics_table(registry_document.model, [])


@given(sd_models())
@settings(max_examples=150, deadline=None)
def test_scores_match_oracle(model: SDModel):
    for actor in model.actors:
        assert vulnerability(model, actor.id) == oracle_vm(model, actor.id)
        assert criticality(model, actor.id) == oracle_cm(model, actor.id)


@given(sd_models())
@settings(max_examples=80, deadline=None)
def test_vm_at_least_one_when_delegating(model: SDModel):
    for actor in model.actors:
        vm = vulnerability(model, actor.id)
        out = sum(1 for d in model.dependencies if d.depender == actor.id)
        if out > 0:
            assert vm >= 1
        else:
            assert vm == 0


@given(sd_models())
@settings(max_examples=80, deadline=None)
def test_subscope_table_is_filtered_full_table(model: SDModel):
    everyone = sorted(model.actor_ids)
    full = {row.actor: row for row in metrics_table(model, everyone)}
    subset = everyone[: max(1, len(everyone) // 2)]
    for row in metrics_table(model, subset):
        assert row == full[row.actor]


def test_scores_invariant_under_rename_and_reorder():
    rng = random.Random(13)
    model = random_model(rng)
    deps = list(model.dependencies)
    rng.shuffle(deps)
    shuffled = SDModel(name=model.name, actors=model.actors, dependencies=tuple(deps))
    renamed = SDModel(
        name=model.name,
        actors=tuple(replace(a, name="x " + a.name) for a in model.actors),
        dependencies=model.dependencies,
    )
    for actor in model.actors:
        assert vulnerability(model, actor.id) == vulnerability(shuffled, actor.id)
        assert vulnerability(model, actor.id) == vulnerability(renamed, actor.id)
        assert criticality(model, actor.id) == criticality(shuffled, actor.id)


def _chain_model(edges: list[tuple[str, str]]) -> SDModel:
    ids = sorted({a for e in edges for a in e})
    return SDModel(
        name="m",
        actors=tuple(Actor(id=i, name=i.upper()) for i in ids),
        dependencies=tuple(
            Dependency(id=f"d{k}", depender=a, dependee=b, dependum=Dependum(f"n{k}", "task"))
            for k, (a, b) in enumerate(edges)
        ),
    )


def test_extra_edge_to_existing_dependee_raises_vm():
    base = _chain_model([("a", "b"), ("a", "b")])
    more = _chain_model([("a", "b"), ("a", "b"), ("a", "b")])
    assert vulnerability(more, "a") > vulnerability(base, "a")


def test_extra_edge_to_new_dependee_moves_vm_toward_one():
    concentrated = _chain_model([("a", "b"), ("a", "b")])  # vm 2.0
    widened = _chain_model([("a", "b"), ("a", "b"), ("a", "c")])  # vm 1.5
    assert vulnerability(widened, "a") < vulnerability(concentrated, "a")
    assert vulnerability(widened, "a") >= 1


def test_cm_monotone_in_edges_and_dependers():
    base = _chain_model([("b", "a")])
    more_edges = _chain_model([("b", "a"), ("b", "a")])
    more_dependers = _chain_model([("b", "a"), ("c", "a")])
    assert criticality(more_edges, "a") >= criticality(base, "a")
    assert criticality(more_dependers, "a") >= criticality(base, "a")


def test_hotspots_case_study(registry_document, staff_scope):
    spots = hotspots(registry_document.model, staff_scope)
    assert set(spots.most_vulnerable) == {"registration-officer-i", "registration-verifier"}
    assert set(spots.most_critical) == {"registration-officer-i"}


def test_hotspots_total_tie_returns_whole_scope():
    model = _chain_model([("a", "b"), ("b", "c"), ("c", "a")])
    spots = hotspots(model, ["a", "b", "c"])
    assert set(spots.most_vulnerable) == {"a", "b", "c"}
    assert set(spots.most_critical) == {"a", "b", "c"}


def test_hotspots_after_rebalance(rebalanced_document, staff_scope):
    spots = hotspots(rebalanced_document.model, staff_scope)
    assert set(spots.most_critical) == {"registration-officer-ii"}
    assert set(spots.most_vulnerable) == {"registration-officer-i"}


def test_vm_formatting_one_decimal():
    assert format_vm(Fraction(4)) == "4.0"
    assert format_vm(Fraction(3, 2)) == "1.5"
    assert format_vm(Fraction(5, 3)) == "1.7"
    assert format_vm(Fraction(0)) == "0.0"


def test_vm_exact_round_trip():
    for vm in (Fraction(4), Fraction(3, 2), Fraction(5, 3), Fraction(0)):
        assert parse_vm_exact(format_vm_exact(vm)) == vm
