"""Core domain types for strategic dependency (SD) and rationale (SR) models.

An SD model is a directed multigraph: actors are nodes, and each dependency
is one edge from a depender (the actor who relies) through a dependum (the
goal, softgoal, task, or resource at stake) to a dependee (the actor relied
upon).  Multiple edges between the same actor pair are legal and count
individually.

Everything in this module is an immutable value.  Queries never mutate;
"editing" a model means building a new one (see :mod:`charter_deps.delegation`).
"""

from __future__ import annotations

import re
import unicodedata
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Optional, Sequence

ACTOR_KINDS = frozenset({"agent", "role", "position", "generic"})
DEPENDUM_KINDS = frozenset({"goal", "softgoal", "task", "resource"})

DEFAULT_MODEL_NAME = "untitled"

_SLUG_RE = re.compile(r"[^a-z0-9]+")


class ModelError(Exception):
    """Domain-level failure: unknown ids, empty scopes, invalid moves."""


def slugify(name: str) -> str:
    """Derive a stable id from a display name ("Window 23" -> "window-23")."""
    normalized = unicodedata.normalize("NFKD", name)
    ascii_name = normalized.encode("ascii", "ignore").decode("ascii").lower()
    slug = _SLUG_RE.sub("-", ascii_name).strip("-")
    return slug or "item"


@dataclass(frozen=True)
class Actor:
    """An intentional entity: a person, role, office, or organisation."""

    id: str
    name: str
    kind: str = "role"
    tags: frozenset[str] = frozenset()


@dataclass(frozen=True)
class Dependum:
    """The object of a dependency: what the depender needs from the dependee."""

    name: str
    kind: str
    tags: frozenset[str] = frozenset()


@dataclass(frozen=True)
class Dependency:
    """One directed edge: ``depender`` relies on ``dependee`` for ``dependum``."""

    id: str
    depender: str
    dependee: str
    dependum: Dependum

    def endpoint(self, which: str) -> str:
        if which == "depender":
            return self.depender
        if which == "dependee":
            return self.dependee
        raise ModelError(f"unknown endpoint {which!r} (expected depender/dependee)")


@dataclass(frozen=True)
class DegreeProfile:
    """Edge-count summary for one actor.

    ``out_deps`` counts edges where the actor is the depender, ``dependees``
    the distinct actors on the other end of those; ``in_deps``/``dependers``
    are the symmetric incoming counts.
    """

    out_deps: int
    dependees: int
    in_deps: int
    dependers: int


@dataclass(frozen=True)
class SRElement:
    """An element inside one actor's rationale boundary."""

    name: str
    kind: str
    tags: frozenset[str] = frozenset()


@dataclass(frozen=True)
class DecompositionLink:
    """Hierarchical refinement: a parent task itemised into a child element."""

    parent: str
    child: str


@dataclass(frozen=True)
class MeansEndLink:
    """A task or resource (the means) offered as a way to achieve a goal."""

    means: str
    end: str


@dataclass(frozen=True)
class SRBoundary:
    """Internal rationale of a single actor: elements plus their links."""

    actor: str
    elements: tuple[SRElement, ...] = ()
    decompositions: tuple[DecompositionLink, ...] = ()
    means_ends: tuple[MeansEndLink, ...] = ()

    def element_map(self) -> dict[str, SRElement]:
        return {element.name: element for element in self.elements}


@dataclass(frozen=True)
class SDModel:
    """Named actor set plus a multiset of directed dependencies."""

    name: str = DEFAULT_MODEL_NAME
    actors: tuple[Actor, ...] = ()
    dependencies: tuple[Dependency, ...] = ()

    @cached_property
    def actors_by_id(self) -> Mapping[str, Actor]:
        return {actor.id: actor for actor in self.actors}

    @cached_property
    def dependencies_by_id(self) -> Mapping[str, Dependency]:
        return {dep.id: dep for dep in self.dependencies}

    @cached_property
    def actor_ids(self) -> frozenset[str]:
        return frozenset(actor.id for actor in self.actors)

    def actor(self, actor_id: str) -> Actor:
        try:
            return self.actors_by_id[actor_id]
        except KeyError:
            raise ModelError(f"unknown actor id {actor_id!r}") from None

    def dependency(self, dependency_id: str) -> Dependency:
        try:
            return self.dependencies_by_id[dependency_id]
        except KeyError:
            raise ModelError(f"unknown dependency id {dependency_id!r}") from None

    def outgoing(self, actor_id: str) -> tuple[Dependency, ...]:
        return tuple(d for d in self.dependencies if d.depender == actor_id)

    def incoming(self, actor_id: str) -> tuple[Dependency, ...]:
        return tuple(d for d in self.dependencies if d.dependee == actor_id)

    def with_dependency_replaced(self, replacement: Dependency) -> "SDModel":
        """New model with the dependency of the same id swapped out."""
        if replacement.id not in self.dependencies_by_id:
            raise ModelError(f"unknown dependency id {replacement.id!r}")
        deps = tuple(
            replacement if dep.id == replacement.id else dep
            for dep in self.dependencies
        )
        return SDModel(name=self.name, actors=self.actors, dependencies=deps)


@dataclass(frozen=True)
class ScopeDef:
    """A named actor subset used to filter metric tables and rankings."""

    name: str
    actors: tuple[str, ...]


@dataclass(frozen=True)
class ModelDocument:
    """Everything one model file carries: SD graph, SR boundaries, named scopes."""

    model: SDModel = SDModel()
    boundaries: tuple[SRBoundary, ...] = ()
    scopes: tuple[ScopeDef, ...] = ()

    @cached_property
    def scopes_by_name(self) -> Mapping[str, ScopeDef]:
        return {scope.name: scope for scope in self.scopes}


@dataclass(frozen=True)
class Violation:
    """One structural rule breach found by :func:`validate_model`."""

    code: str
    message: str
    subject: str


# Violation codes, grouped by the rule family they enforce.
DUPLICATE_ACTOR_ID = "DUPLICATE_ACTOR_ID"
DUPLICATE_DEPENDENCY_ID = "DUPLICATE_DEPENDENCY_ID"
EMPTY_NAME = "EMPTY_NAME"
BAD_KIND = "BAD_KIND"
UNKNOWN_ACTOR = "UNKNOWN_ACTOR"
SELF_DEPENDENCY = "SELF_DEPENDENCY"
DUPLICATE_SR_BOUNDARY = "DUPLICATE_SR_BOUNDARY"
DUPLICATE_SR_ELEMENT = "DUPLICATE_SR_ELEMENT"
UNKNOWN_SR_ELEMENT = "UNKNOWN_SR_ELEMENT"
BAD_DECOMPOSITION_PARENT = "BAD_DECOMPOSITION_PARENT"
BAD_MEANS_END = "BAD_MEANS_END"
SR_LINK_CYCLE = "SR_LINK_CYCLE"
UNKNOWN_SCOPE_ACTOR = "UNKNOWN_SCOPE_ACTOR"
EMPTY_SCOPE = "EMPTY_SCOPE"


def validate_model(
    model: SDModel,
    boundaries: Sequence[SRBoundary] = (),
    scopes: Sequence[ScopeDef] = (),
) -> list[Violation]:
    """Check every structural invariant; an empty list means the model is sound.

    Violations are data, not exceptions: callers render them (CLI) or ship
    them over the wire (service) without a try/except dance.
    """
    violations: list[Violation] = []

    seen_actor_ids: set[str] = set()
    for actor in model.actors:
        if actor.id in seen_actor_ids:
            violations.append(
                Violation(DUPLICATE_ACTOR_ID, f"actor id {actor.id!r} declared twice", actor.id)
            )
        seen_actor_ids.add(actor.id)
        if not actor.name:
            violations.append(Violation(EMPTY_NAME, f"actor {actor.id!r} has an empty name", actor.id))
        if actor.kind not in ACTOR_KINDS:
            violations.append(
                Violation(
                    BAD_KIND,
                    f"actor {actor.id!r} has kind {actor.kind!r}; expected one of {sorted(ACTOR_KINDS)}",
                    actor.id,
                )
            )

    seen_dep_ids: set[str] = set()
    for dep in model.dependencies:
        if dep.id in seen_dep_ids:
            violations.append(
                Violation(DUPLICATE_DEPENDENCY_ID, f"dependency id {dep.id!r} declared twice", dep.id)
            )
        seen_dep_ids.add(dep.id)
        if not dep.dependum.name:
            violations.append(
                Violation(EMPTY_NAME, f"dependency {dep.id!r} has an empty dependum name", dep.id)
            )
        if dep.dependum.kind not in DEPENDUM_KINDS:
            violations.append(
                Violation(
                    BAD_KIND,
                    f"dependency {dep.id!r} has dependum kind {dep.dependum.kind!r}; "
                    f"expected one of {sorted(DEPENDUM_KINDS)}",
                    dep.id,
                )
            )
        for role in ("depender", "dependee"):
            endpoint = dep.endpoint(role)
            if endpoint not in model.actor_ids:
                violations.append(
                    Violation(
                        UNKNOWN_ACTOR,
                        f"dependency {dep.id!r} references unknown {role} {endpoint!r}",
                        dep.id,
                    )
                )
        if dep.depender == dep.dependee:
            violations.append(
                Violation(
                    SELF_DEPENDENCY,
                    f"dependency {dep.id!r} has the same actor {dep.depender!r} on both ends",
                    dep.id,
                )
            )

    violations.extend(_validate_boundaries(model, boundaries))

    seen_scope_names: set[str] = set()
    for scope in scopes:
        if scope.name in seen_scope_names:
            violations.append(
                Violation(EMPTY_SCOPE, f"scope {scope.name!r} declared twice", scope.name)
            )
        seen_scope_names.add(scope.name)
        if not scope.actors:
            violations.append(Violation(EMPTY_SCOPE, f"scope {scope.name!r} lists no actors", scope.name))
        for actor_id in scope.actors:
            if actor_id not in model.actor_ids:
                violations.append(
                    Violation(
                        UNKNOWN_SCOPE_ACTOR,
                        f"scope {scope.name!r} references unknown actor {actor_id!r}",
                        scope.name,
                    )
                )

    return violations


def _validate_boundaries(model: SDModel, boundaries: Sequence[SRBoundary]) -> list[Violation]:
    violations: list[Violation] = []
    seen_boundary_actors: set[str] = set()
    for boundary in boundaries:
        subject = boundary.actor
        if boundary.actor in seen_boundary_actors:
            violations.append(
                Violation(
                    DUPLICATE_SR_BOUNDARY,
                    f"actor {boundary.actor!r} has more than one rationale boundary",
                    subject,
                )
            )
        seen_boundary_actors.add(boundary.actor)
        if boundary.actor not in model.actor_ids:
            violations.append(
                Violation(UNKNOWN_ACTOR, f"boundary references unknown actor {boundary.actor!r}", subject)
            )

        elements: dict[str, SRElement] = {}
        for element in boundary.elements:
            if element.name in elements:
                violations.append(
                    Violation(
                        DUPLICATE_SR_ELEMENT,
                        f"element {element.name!r} declared twice in boundary {boundary.actor!r}",
                        subject,
                    )
                )
            elements[element.name] = element
            if not element.name:
                violations.append(Violation(EMPTY_NAME, "boundary element has an empty name", subject))
            if element.kind not in DEPENDUM_KINDS:
                violations.append(
                    Violation(
                        BAD_KIND,
                        f"element {element.name!r} has kind {element.kind!r}; "
                        f"expected one of {sorted(DEPENDUM_KINDS)}",
                        subject,
                    )
                )

        edges: list[tuple[str, str]] = []
        for link in boundary.decompositions:
            parent = elements.get(link.parent)
            child = elements.get(link.child)
            if parent is None or child is None:
                missing = link.parent if parent is None else link.child
                violations.append(
                    Violation(
                        UNKNOWN_SR_ELEMENT,
                        f"decomposition in boundary {boundary.actor!r} references "
                        f"undeclared element {missing!r}",
                        subject,
                    )
                )
                continue
            if parent.kind != "task":
                violations.append(
                    Violation(
                        BAD_DECOMPOSITION_PARENT,
                        f"decomposition parent {link.parent!r} in boundary {boundary.actor!r} "
                        f"is a {parent.kind}, not a task",
                        subject,
                    )
                )
            edges.append((link.parent, link.child))
        for link in boundary.means_ends:
            means = elements.get(link.means)
            end = elements.get(link.end)
            if means is None or end is None:
                missing = link.means if means is None else link.end
                violations.append(
                    Violation(
                        UNKNOWN_SR_ELEMENT,
                        f"means-end link in boundary {boundary.actor!r} references "
                        f"undeclared element {missing!r}",
                        subject,
                    )
                )
                continue
            if means.kind not in ("task", "resource"):
                violations.append(
                    Violation(
                        BAD_MEANS_END,
                        f"means {link.means!r} in boundary {boundary.actor!r} is a "
                        f"{means.kind}; only tasks and resources can be means",
                        subject,
                    )
                )
            if end.kind != "goal":
                violations.append(
                    Violation(
                        BAD_MEANS_END,
                        f"means-end target {link.end!r} in boundary {boundary.actor!r} "
                        f"is a {end.kind}, not a goal",
                        subject,
                    )
                )
            edges.append((link.means, link.end))

        if _has_cycle(edges):
            violations.append(
                Violation(
                    SR_LINK_CYCLE,
                    f"decomposition/means-end links in boundary {boundary.actor!r} form a cycle",
                    subject,
                )
            )
    return violations


def _has_cycle(edges: Iterable[tuple[str, str]]) -> bool:
    adjacency: dict[str, list[str]] = {}
    for head, tail in edges:
        adjacency.setdefault(head, []).append(tail)

    WHITE, GREY, BLACK = 0, 1, 2
    color: dict[str, int] = {}

    def visit(node: str) -> bool:
        color[node] = GREY
        for successor in adjacency.get(node, ()):
            state = color.get(successor, WHITE)
            if state == GREY:
                return True
            if state == WHITE and visit(successor):
                return True
        color[node] = BLACK
        return False

    return any(color.get(node, WHITE) == WHITE and visit(node) for node in list(adjacency))


def degree_profile(model: SDModel, actor_id: str) -> DegreeProfile:
    """Count outgoing/incoming edges and the distinct partners behind them."""
    if actor_id not in model.actor_ids:
        raise ModelError(f"unknown actor id {actor_id!r}")
    out_deps = 0
    in_deps = 0
    dependees: set[str] = set()
    dependers: set[str] = set()
    for dep in model.dependencies:
        if dep.depender == actor_id:
            out_deps += 1
            dependees.add(dep.dependee)
        if dep.dependee == actor_id:
            in_deps += 1
            dependers.add(dep.depender)
    return DegreeProfile(
        out_deps=out_deps,
        dependees=len(dependees),
        in_deps=in_deps,
        dependers=len(dependers),
    )


def resolve_scope(
    document: ModelDocument,
    scope: "str | Sequence[str] | None",
) -> tuple[str, ...]:
    """Turn a scope argument (named scope, id list, or None/"all") into sorted ids.

    Raises :class:`ModelError` for unknown names, unknown actors, and empty
    results; the returned tuple is always a non-empty sorted id sequence.
    """
    model = document.model
    if scope is None or scope == "all":
        ids: Sequence[str] = sorted(model.actor_ids)
    elif isinstance(scope, str):
        scope_def = document.scopes_by_name.get(scope)
        if scope_def is None:
            known = ", ".join(sorted(document.scopes_by_name)) or "none defined"
            raise ModelError(f"unknown scope {scope!r} (named scopes: {known})")
        ids = scope_def.actors
    else:
        ids = tuple(scope)
    unknown = sorted(set(ids) - model.actor_ids)
    if unknown:
        raise ModelError(f"scope references unknown actors: {', '.join(unknown)}")
    if not ids:
        raise ModelError("scope is empty")
    return tuple(sorted(set(ids)))
