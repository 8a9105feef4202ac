"""Structural validation and degree-profile queries."""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import replace

import pytest
from hypothesis import given, settings

from charter_deps.model import (
    Actor,
    DecompositionLink,
    Dependency,
    Dependum,
    MeansEndLink,
    ModelDocument,
    ModelError,
    SDModel,
    ScopeDef,
    SRBoundary,
    SRElement,
    degree_profile,
    resolve_scope,
    validate_model,
)

from conftest import random_model, sd_models


def brute_profile(model: SDModel, actor_id: str) -> tuple[int, int, int, int]:
    """Independent oracle: raw scan over the edge list."""
    out_edges = [d for d in model.dependencies if d.depender == actor_id]
    in_edges = [d for d in model.dependencies if d.dependee == actor_id]
    return (
        len(out_edges),
        len({d.dependee for d in out_edges}),
        len(in_edges),
        len({d.depender for d in in_edges}),
    )


def simple_model(**overrides) -> SDModel:
    base = dict(
        name="m",
        actors=(
            Actor(id="a", name="A"),
            Actor(id="b", name="B"),
        ),
        dependencies=(
            Dependency(id="d1", depender="a", dependee="b", dependum=Dependum("thing", "task")),
        ),
    )
    base.update(overrides)
    return SDModel(**base)


def test_valid_fixtures_have_no_violations(registry_document, birth_document):
    for document in (registry_document, birth_document):
        assert validate_model(document.model, document.boundaries, document.scopes) == []


def test_unknown_actor_violation():
    model = simple_model(
        dependencies=(
            Dependency(id="d1", depender="a", dependee="ghost", dependum=Dependum("x", "goal")),
        )
    )
    codes = [v.code for v in validate_model(model)]
    assert "UNKNOWN_ACTOR" in codes


def test_self_dependency_rejected():
    model = simple_model(
        dependencies=(
            Dependency(id="d1", depender="a", dependee="a", dependum=Dependum("x", "goal")),
        )
    )
    codes = [v.code for v in validate_model(model)]
    assert "SELF_DEPENDENCY" in codes


def test_duplicate_ids_and_empty_names_flagged():
    model = SDModel(
        name="m",
        actors=(Actor(id="a", name="A"), Actor(id="a", name=""), Actor(id="b", name="B", kind="nope")),
        dependencies=(
            Dependency(id="d", depender="a", dependee="b", dependum=Dependum("x", "task")),
            Dependency(id="d", depender="b", dependee="a", dependum=Dependum("", "blob")),
        ),
    )
    codes = Counter(v.code for v in validate_model(model))
    assert codes["DUPLICATE_ACTOR_ID"] == 1
    assert codes["DUPLICATE_DEPENDENCY_ID"] == 1
    assert codes["EMPTY_NAME"] == 2
    assert codes["BAD_KIND"] == 2


def test_bad_decomposition_parent_flagged():
    boundary = SRBoundary(
        actor="a",
        elements=(SRElement("checklist", "resource"), SRElement("step", "task")),
        decompositions=(DecompositionLink(parent="checklist", child="step"),),
    )
    codes = [v.code for v in validate_model(simple_model(), [boundary])]
    assert "BAD_DECOMPOSITION_PARENT" in codes


def test_bad_means_end_flagged():
    boundary = SRBoundary(
        actor="a",
        elements=(SRElement("g", "goal"), SRElement("s", "softgoal")),
        means_ends=(MeansEndLink(means="g", end="s"),),
    )
    codes = [v.code for v in validate_model(simple_model(), [boundary])]
    assert codes.count("BAD_MEANS_END") == 2  # bad means kind and bad end kind


def test_sr_cycle_flagged():
    boundary = SRBoundary(
        actor="a",
        elements=(SRElement("t1", "task"), SRElement("t2", "task")),
        decompositions=(
            DecompositionLink(parent="t1", child="t2"),
            DecompositionLink(parent="t2", child="t1"),
        ),
    )
    codes = [v.code for v in validate_model(simple_model(), [boundary])]
    assert "SR_LINK_CYCLE" in codes


def test_unknown_sr_element_flagged():
    boundary = SRBoundary(
        actor="a",
        elements=(SRElement("t1", "task"),),
        decompositions=(DecompositionLink(parent="t1", child="missing"),),
    )
    codes = [v.code for v in validate_model(simple_model(), [boundary])]
    assert "UNKNOWN_SR_ELEMENT" in codes


def test_degree_profile_case_study_clerk(registry_document):
    profile = degree_profile(registry_document.model, "registration-clerk-window-23")
    assert (profile.out_deps, profile.dependees) == (6, 3)
    assert (profile.in_deps, profile.dependers) == (2, 1)


def test_degree_profile_isolated_actor():
    model = simple_model(actors=(Actor(id="a", name="A"),), dependencies=())
    assert degree_profile(model, "a") == degree_profile(model, "a")
    profile = degree_profile(model, "a")
    assert (profile.out_deps, profile.dependees, profile.in_deps, profile.dependers) == (0, 0, 0, 0)


def test_degree_profile_unknown_actor():
    with pytest.raises(ModelError):
        degree_profile(simple_model(), "ghost")


@given(sd_models())
@settings(max_examples=150, deadline=None)
def test_degree_profile_matches_brute_force(model: SDModel):
    for actor in model.actors:
        profile = degree_profile(model, actor.id)
        assert (
            profile.out_deps,
            profile.dependees,
            profile.in_deps,
            profile.dependers,
        ) == brute_profile(model, actor.id)
        assert profile.dependees <= profile.out_deps
        assert profile.dependers <= profile.in_deps


@given(sd_models())
@settings(max_examples=100, deadline=None)
def test_degree_sums_equal_edge_count(model: SDModel):
    profiles = [degree_profile(model, actor.id) for actor in model.actors]
    assert sum(p.out_deps for p in profiles) == len(model.dependencies)
    assert sum(p.in_deps for p in profiles) == len(model.dependencies)


def test_profile_invariant_under_edge_reorder_and_rename():
    rng = random.Random(7)
    model = random_model(rng)
    shuffled_deps = list(model.dependencies)
    rng.shuffle(shuffled_deps)
    shuffled = SDModel(name=model.name, actors=model.actors, dependencies=tuple(shuffled_deps))
    renamed = SDModel(
        name=model.name,
        actors=tuple(replace(a, name=a.name.upper() + "!") for a in model.actors),
        dependencies=model.dependencies,
    )
    for actor in model.actors:
        assert degree_profile(model, actor.id) == degree_profile(shuffled, actor.id)
        assert degree_profile(model, actor.id) == degree_profile(renamed, actor.id)


def test_resolve_scope_variants(registry_document):
    all_ids = resolve_scope(registry_document, None)
    assert len(all_ids) == 16
    assert resolve_scope(registry_document, "all") == all_ids
    staff = resolve_scope(registry_document, "staff")
    assert len(staff) == 9
    explicit = resolve_scope(registry_document, ["customer", "registration-verifier"])
    assert explicit == ("customer", "registration-verifier")
    with pytest.raises(ModelError):
        resolve_scope(registry_document, "night-shift")
    with pytest.raises(ModelError):
        resolve_scope(registry_document, ["ghost"])
    with pytest.raises(ModelError):
        resolve_scope(registry_document, [])


def test_scope_validation_violations():
    document = ModelDocument(
        model=simple_model(),
        scopes=(ScopeDef(name="s", actors=("ghost",)), ScopeDef(name="empty", actors=())),
    )
    codes = [v.code for v in validate_model(document.model, (), document.scopes)]
    assert "UNKNOWN_SCOPE_ACTOR" in codes
    assert "EMPTY_SCOPE" in codes
