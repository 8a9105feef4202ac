"""Structured-document form of a model: the JSON shape used on the wire.

A document is plain data::

    {
      "format_version": 1,
      "name": "...",
      "actors": [{"id", "name", "kind", "tags"}],
      "dependencies": [{"id", "depender", "dependee",
                        "dependum": {"name", "kind", "tags"}}],
      "sr": [{"actor", "elements", "decompositions", "means_ends"}],
      "scopes": [{"name", "actors"}]
    }

Loading is lossless against the DSL form and produces the same canonical
:class:`~charter_deps.model.ModelDocument`.  Shape problems are reported as
:class:`ParseError` values whose ``path`` names the offending field
(``$.dependencies[3].dependum.kind``); like the DSL parser, loading collects
every error it can rather than stopping at the first.
"""

from __future__ import annotations

import json
from typing import Any, Optional

from .dsl import DUPLICATE_ID, SYNTAX, ParseError, ParseResult, canonical_document
from .model import (
    DEFAULT_MODEL_NAME,
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
    slugify,
    validate_model,
)

FORMAT_VERSION = 1


def canonical_json(payload: Any) -> str:
    """The one JSON rendering used everywhere output must be byte-stable."""
    return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"


def to_document(document: ModelDocument) -> dict[str, Any]:
    """Render a model as the versioned wire document (collections sorted)."""
    doc = canonical_document(document)
    return {
        "format_version": FORMAT_VERSION,
        "name": doc.model.name,
        "actors": [
            {
                "id": actor.id,
                "name": actor.name,
                "kind": actor.kind,
                "tags": sorted(actor.tags),
            }
            for actor in doc.model.actors
        ],
        "dependencies": [
            {
                "id": dep.id,
                "depender": dep.depender,
                "dependee": dep.dependee,
                "dependum": {
                    "name": dep.dependum.name,
                    "kind": dep.dependum.kind,
                    "tags": sorted(dep.dependum.tags),
                },
            }
            for dep in doc.model.dependencies
        ],
        "sr": [
            {
                "actor": boundary.actor,
                "elements": [
                    {"name": e.name, "kind": e.kind, "tags": sorted(e.tags)}
                    for e in boundary.elements
                ],
                "decompositions": [
                    {"parent": link.parent, "child": link.child}
                    for link in boundary.decompositions
                ],
                "means_ends": [
                    {"means": link.means, "end": link.end} for link in boundary.means_ends
                ],
            }
            for boundary in doc.boundaries
        ],
        "scopes": [
            {"name": scope.name, "actors": list(scope.actors)} for scope in doc.scopes
        ],
    }


class _DocReader:
    """Shape checks with JSONPath-style locations; collects every error."""

    def __init__(self) -> None:
        self.errors: list[ParseError] = []

    def err(self, code: str, path: str, message: str) -> None:
        self.errors.append(ParseError(code, message, path=path))

    def string(self, obj: dict, key: str, path: str, default: Optional[str] = None) -> Optional[str]:
        if key not in obj:
            if default is not None:
                return default
            self.err(SYNTAX, f"{path}.{key}", "missing required field")
            return None
        value = obj[key]
        if not isinstance(value, str):
            self.err(SYNTAX, f"{path}.{key}", f"expected a string, got {type(value).__name__}")
            return None
        return value

    def tags(self, obj: dict, path: str) -> frozenset[str]:
        value = obj.get("tags", [])
        if not isinstance(value, list) or not all(isinstance(t, str) for t in value):
            self.err(SYNTAX, f"{path}.tags", "expected a list of strings")
            return frozenset()
        return frozenset(value)

    def array(self, obj: dict, key: str, path: str, required: bool = False) -> list:
        if key not in obj:
            if required:
                self.err(SYNTAX, f"{path}.{key}", "missing required field")
            return []
        value = obj[key]
        if not isinstance(value, list):
            self.err(SYNTAX, f"{path}.{key}", f"expected an array, got {type(value).__name__}")
            return []
        return value

    def objects(self, obj: dict, key: str, path: str, required: bool = False) -> list[tuple[str, dict]]:
        items: list[tuple[str, dict]] = []
        for index, item in enumerate(self.array(obj, key, path, required)):
            item_path = f"{path}.{key}[{index}]"
            if not isinstance(item, dict):
                self.err(SYNTAX, item_path, f"expected an object, got {type(item).__name__}")
                continue
            items.append((item_path, item))
        return items


def from_document(payload: Any) -> ParseResult:
    """Load a structured document; mirrors :func:`charter_deps.dsl.parse_model`."""
    reader = _DocReader()
    if not isinstance(payload, dict):
        reader.err(SYNTAX, "$", f"expected a document object, got {type(payload).__name__}")
        return ParseResult(document=None, errors=tuple(reader.errors))

    version = payload.get("format_version", FORMAT_VERSION)
    if version != FORMAT_VERSION:
        reader.err(SYNTAX, "$.format_version", f"unsupported format version {version!r}")

    name = reader.string(payload, "name", "$", default=DEFAULT_MODEL_NAME) or DEFAULT_MODEL_NAME

    actors: list[Actor] = []
    actor_ids: set[str] = set()
    for path, item in reader.objects(payload, "actors", "$", required=True):
        actor_name = reader.string(item, "name", path)
        if actor_name is None:
            continue
        actor_id = reader.string(item, "id", path, default=slugify(actor_name))
        kind = reader.string(item, "kind", path, default="role")
        if None in (actor_id, kind):
            continue
        if actor_id in actor_ids:
            reader.err(DUPLICATE_ID, f"{path}.id", f"actor id {actor_id!r} already declared")
            continue
        actor_ids.add(actor_id)
        actors.append(Actor(id=actor_id, name=actor_name, kind=kind, tags=reader.tags(item, path)))

    deps: list[Dependency] = []
    dep_ids: set[str] = set()
    for path, item in reader.objects(payload, "dependencies", "$"):
        depender = reader.string(item, "depender", path)
        dependee = reader.string(item, "dependee", path)
        dependum_obj = item.get("dependum")
        if not isinstance(dependum_obj, dict):
            reader.err(SYNTAX, f"{path}.dependum", "missing or non-object dependum")
            continue
        dep_name = reader.string(dependum_obj, "name", f"{path}.dependum")
        dep_kind = reader.string(dependum_obj, "kind", f"{path}.dependum")
        if None in (depender, dependee, dep_name, dep_kind):
            continue
        dep_id = reader.string(item, "id", path, default=slugify(dep_name))
        if dep_id in dep_ids:
            reader.err(DUPLICATE_ID, f"{path}.id", f"dependency id {dep_id!r} already declared")
            continue
        dep_ids.add(dep_id)
        deps.append(
            Dependency(
                id=dep_id,
                depender=depender,
                dependee=dependee,
                dependum=Dependum(
                    name=dep_name,
                    kind=dep_kind,
                    tags=reader.tags(dependum_obj, f"{path}.dependum"),
                ),
            )
        )

    boundaries: list[SRBoundary] = []
    for path, item in reader.objects(payload, "sr", "$"):
        actor_ref = reader.string(item, "actor", path)
        if actor_ref is None:
            continue
        elements: list[SRElement] = []
        for elem_path, elem in reader.objects(item, "elements", path):
            elem_name = reader.string(elem, "name", elem_path)
            elem_kind = reader.string(elem, "kind", elem_path)
            if None in (elem_name, elem_kind):
                continue
            elements.append(SRElement(name=elem_name, kind=elem_kind, tags=reader.tags(elem, elem_path)))
        decompositions: list[DecompositionLink] = []
        for link_path, link in reader.objects(item, "decompositions", path):
            parent = reader.string(link, "parent", link_path)
            child = reader.string(link, "child", link_path)
            if None not in (parent, child):
                decompositions.append(DecompositionLink(parent=parent, child=child))
        means_ends: list[MeansEndLink] = []
        for link_path, link in reader.objects(item, "means_ends", path):
            means = reader.string(link, "means", link_path)
            end = reader.string(link, "end", link_path)
            if None not in (means, end):
                means_ends.append(MeansEndLink(means=means, end=end))
        boundaries.append(
            SRBoundary(
                actor=actor_ref,
                elements=tuple(elements),
                decompositions=tuple(decompositions),
                means_ends=tuple(means_ends),
            )
        )

    scopes: list[ScopeDef] = []
    for path, item in reader.objects(payload, "scopes", "$"):
        scope_name = reader.string(item, "name", path)
        listed = reader.array(item, "actors", path, required=True)
        if scope_name is None:
            continue
        if not all(isinstance(a, str) for a in listed):
            reader.err(SYNTAX, f"{path}.actors", "expected a list of actor ids")
            continue
        scopes.append(ScopeDef(name=scope_name, actors=tuple(sorted(set(listed)))))

    model = SDModel(name=name, actors=tuple(actors), dependencies=tuple(deps))
    document = ModelDocument(model=model, boundaries=tuple(boundaries), scopes=tuple(scopes))
    if reader.errors:
        return ParseResult(document=None, errors=tuple(reader.errors))
    # Unlike the DSL parser, structural rule breaches (self-dependencies, SR
    # cycles, ...) are left in the document for validate_model to report, so
    # a validation service can echo them back as data rather than failing.
    return ParseResult(document=canonical_document(document))


def loads(text: str) -> ParseResult:
    """Parse structured-document JSON text; empty text is an empty model."""
    if not text.strip():
        return ParseResult(document=canonical_document(ModelDocument()))
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        error = ParseError(SYNTAX, f"invalid JSON: {exc.msg}", path=f"$ (offset {exc.pos})")
        return ParseResult(document=None, errors=(error,))
    return from_document(payload)


def dumps(document: ModelDocument) -> str:
    """Serialize to canonical JSON text (the exact bytes the service emits)."""
    violations = validate_model(document.model, document.boundaries, document.scopes)
    if violations:
        raise ModelError(
            "cannot serialize an invalid model: " + "; ".join(v.message for v in violations)
        )
    return canonical_json(to_document(document))
