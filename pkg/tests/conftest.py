"""Shared fixtures: case-study files, random model generators, plan loading."""

from __future__ import annotations

import json
import random
from pathlib import Path

import pytest
from hypothesis import strategies as st

from charter_deps.delegation import DelegationMove
from charter_deps.dsl import parse_model
from charter_deps.model import (
    Actor,
    DecompositionLink,
    Dependency,
    Dependum,
    MeansEndLink,
    ModelDocument,
    SDModel,
    ScopeDef,
    SRBoundary,
    SRElement,
)

REPO = Path(__file__).resolve().parent.parent
FIXTURES = REPO / "fixtures"

ACTOR_KIND_CHOICES = ("agent", "role", "position", "generic")
DEPENDUM_KIND_CHOICES = ("goal", "softgoal", "task", "resource")
TAG_POOL = ("fees", "records", "permits", "archives", "licenses")


@pytest.fixture(scope="session")
def registry_document() -> ModelDocument:
    return parse_model((FIXTURES / "civil-registry.istar").read_text(encoding="utf-8")).unwrap()


@pytest.fixture(scope="session")
def rebalanced_document() -> ModelDocument:
    return parse_model(
        (FIXTURES / "civil-registry-rebalanced.istar").read_text(encoding="utf-8")
    ).unwrap()


@pytest.fixture(scope="session")
def birth_document() -> ModelDocument:
    return parse_model((FIXTURES / "birth-registration.istar").read_text(encoding="utf-8")).unwrap()


@pytest.fixture(scope="session")
def rebalance_moves() -> list[DelegationMove]:
    payload = json.loads((FIXTURES / "rebalance-plan.json").read_text(encoding="utf-8"))
    return [
        DelegationMove(m["dependency"], m["endpoint"], m["new_actor"], m.get("rationale"))
        for m in payload["moves"]
    ]


@pytest.fixture(scope="session")
def staff_scope(registry_document: ModelDocument) -> tuple[str, ...]:
    return registry_document.scopes_by_name["staff"].actors


# ---------------------------------------------------------------------------
# Seeded random generator (fast, used for bulk oracle sweeps)
# ---------------------------------------------------------------------------


def random_model(rng: random.Random, max_actors: int = 12, max_edges: int = 40) -> SDModel:
    actor_count = rng.randint(1, max_actors)
    actors = tuple(
        Actor(
            id=f"a{i}",
            name=f"Actor {i}",
            kind=rng.choice(ACTOR_KIND_CHOICES),
            tags=frozenset(rng.sample(TAG_POOL, rng.randint(0, 2))),
        )
        for i in range(actor_count)
    )
    deps = []
    if actor_count >= 2:
        for j in range(rng.randint(0, max_edges)):
            depender, dependee = rng.sample(range(actor_count), 2)
            deps.append(
                Dependency(
                    id=f"d{j}",
                    depender=f"a{depender}",
                    dependee=f"a{dependee}",
                    dependum=Dependum(
                        name=f"item {j}",
                        kind=rng.choice(DEPENDUM_KIND_CHOICES),
                        tags=frozenset(rng.sample(TAG_POOL, rng.randint(0, 2))),
                    ),
                )
            )
    return SDModel(name=f"random {rng.randint(0, 10**6)}", actors=actors, dependencies=tuple(deps))


def random_valid_move(rng: random.Random, model: SDModel) -> DelegationMove | None:
    """A structurally valid move on the model, or None if none exists."""
    deps = list(model.dependencies)
    rng.shuffle(deps)
    actor_ids = sorted(model.actor_ids)
    for dep in deps:
        endpoints = ["depender", "dependee"]
        rng.shuffle(endpoints)
        for endpoint in endpoints:
            current = dep.endpoint(endpoint)
            other = dep.dependee if endpoint == "depender" else dep.depender
            choices = [a for a in actor_ids if a not in (current, other)]
            if choices:
                return DelegationMove(dep.id, endpoint, rng.choice(choices))
    return None


# ---------------------------------------------------------------------------
# Hypothesis strategies
# ---------------------------------------------------------------------------

name_text = st.text(
    alphabet=st.characters(
        codec="utf-8", categories=("L", "N", "P", "S", "Zs"), exclude_characters="\r"
    ),
    min_size=1,
    max_size=16,
)


@st.composite
def sd_models(draw, max_actors: int = 8, max_edges: int = 16) -> SDModel:
    actor_count = draw(st.integers(min_value=1, max_value=max_actors))
    actors = tuple(
        Actor(
            id=f"a{i}",
            name=draw(name_text),
            kind=draw(st.sampled_from(ACTOR_KIND_CHOICES)),
            tags=frozenset(draw(st.sets(st.sampled_from(TAG_POOL), max_size=2))),
        )
        for i in range(actor_count)
    )
    deps: list[Dependency] = []
    if actor_count >= 2:
        edge_count = draw(st.integers(min_value=0, max_value=max_edges))
        for j in range(edge_count):
            depender = draw(st.integers(min_value=0, max_value=actor_count - 1))
            dependee = draw(
                st.integers(min_value=0, max_value=actor_count - 1).filter(lambda x: x != depender)
            )
            deps.append(
                Dependency(
                    id=f"d{j}",
                    depender=f"a{depender}",
                    dependee=f"a{dependee}",
                    dependum=Dependum(
                        name=draw(name_text),
                        kind=draw(st.sampled_from(DEPENDUM_KIND_CHOICES)),
                        tags=frozenset(draw(st.sets(st.sampled_from(TAG_POOL), max_size=2))),
                    ),
                )
            )
    return SDModel(name=draw(name_text), actors=actors, dependencies=tuple(deps))


@st.composite
def sd_documents(draw) -> ModelDocument:
    """Model plus optional SR boundaries and a named scope, for round-trips."""
    model = draw(sd_models())
    boundaries: list[SRBoundary] = []
    for actor in model.actors:
        if not draw(st.booleans()):
            continue
        element_count = draw(st.integers(min_value=1, max_value=5))
        elements = tuple(
            SRElement(
                name=f"e{i} " + draw(name_text),
                kind=draw(st.sampled_from(DEPENDUM_KIND_CHOICES)),
            )
            for i in range(element_count)
        )
        tasks = [e for e in elements if e.kind == "task"]
        goals = [e for e in elements if e.kind == "goal"]
        sources = [e for e in elements if e.kind in ("task", "resource")]
        decompositions = []
        means_ends = []
        # Link later elements from earlier ones only, keeping the graph acyclic.
        for parent in tasks:
            for child in elements:
                if child.name <= parent.name or not draw(st.booleans()):
                    continue
                decompositions.append(DecompositionLink(parent=parent.name, child=child.name))
        for means in sources:
            for end in goals:
                if end.name <= means.name or not draw(st.booleans()):
                    continue
                means_ends.append(MeansEndLink(means=means.name, end=end.name))
        boundaries.append(
            SRBoundary(
                actor=actor.id,
                elements=elements,
                decompositions=tuple(decompositions),
                means_ends=tuple(means_ends),
            )
        )
    scopes: tuple[ScopeDef, ...] = ()
    if draw(st.booleans()):
        member_count = draw(st.integers(min_value=1, max_value=len(model.actors)))
        members = tuple(sorted(a.id for a in model.actors[:member_count]))
        scopes = (ScopeDef(name="focus", actors=members),)
    return ModelDocument(model=model, boundaries=tuple(boundaries), scopes=scopes)
