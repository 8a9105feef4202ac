"""Deterministic renderings: Graphviz DOT for diagrams, CSV for spreadsheets.

Every export is a pure function of its inputs and emits nodes, edges, and
rows in sorted-id order, so repeated runs are byte-identical.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Optional, Sequence

from .metrics import MetricsRow, format_vm, metrics_table
from .model import ModelDocument, ModelError, SDModel, SRBoundary, validate_model

CSV_HEADER = ("actor", "out_deps", "dependees", "vm", "in_deps", "dependers", "cm")

EXPORT_FORMATS = ("dot", "csv", "structured")


@dataclass(frozen=True)
class ExportOptions:
    """What to render and how; ``scope`` limits actors (and CSV rows)."""

    format: str = "dot"
    include_sr: bool = False
    compact: bool = False
    scope: Optional[Sequence[str]] = None


def render_export(document: ModelDocument, options: ExportOptions) -> str:
    """Dispatch to the requested renderer; pure and byte-stable."""
    if options.format == "dot":
        return to_dot(
            document,
            compact=options.compact,
            include_sr=options.include_sr,
            scope=options.scope,
        )
    if options.format == "csv":
        scope = options.scope if options.scope is not None else sorted(document.model.actor_ids)
        return metrics_csv(metrics_table(document.model, scope))
    if options.format == "structured":
        from .structured import dumps

        return dumps(document)
    raise ModelError(f"unknown export format {options.format!r}; expected one of {EXPORT_FORMATS}")


def _dot_quote(value: str) -> str:
    escaped = value.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n")
    return f'"{escaped}"'


def to_dot(
    document: ModelDocument,
    *,
    compact: bool = False,
    include_sr: bool = False,
    scope: Optional[Sequence[str]] = None,
) -> str:
    """Render the SD graph as a DOT digraph.

    Actors are ellipses; dependums are boxes labelled ``kind: name`` sitting
    between two half-edges (depender -> dependum -> dependee), matching the
    usual diagram convention.  ``compact`` collapses each dependency into a
    single labelled edge instead.  ``scope`` keeps only the listed actors and
    the dependencies running entirely between them.
    """
    model = document.model
    violations = validate_model(model, document.boundaries, document.scopes)
    if violations:
        raise ModelError(
            "cannot export an invalid model: " + "; ".join(v.message for v in violations)
        )
    if scope is not None:
        keep = set(scope)
        unknown = sorted(keep - model.actor_ids)
        if unknown:
            raise ModelError(f"scope references unknown actors: {', '.join(unknown)}")
    else:
        keep = set(model.actor_ids)

    lines = [f"digraph {_dot_quote(model.name)} {{", "  rankdir=LR;"]
    for actor in sorted(model.actors, key=lambda a: a.id):
        if actor.id not in keep:
            continue
        lines.append(
            f"  {_dot_quote('actor:' + actor.id)} "
            f"[label={_dot_quote(actor.name)}, shape=ellipse];"
        )
    for dep in sorted(model.dependencies, key=lambda d: d.id):
        if dep.depender not in keep or dep.dependee not in keep:
            continue
        label = f"{dep.dependum.kind}: {dep.dependum.name}"
        if compact:
            lines.append(
                f"  {_dot_quote('actor:' + dep.depender)} -> "
                f"{_dot_quote('actor:' + dep.dependee)} [label={_dot_quote(label)}];"
            )
        else:
            node = "dep:" + dep.id
            lines.append(f"  {_dot_quote(node)} [label={_dot_quote(label)}, shape=box];")
            lines.append(f"  {_dot_quote('actor:' + dep.depender)} -> {_dot_quote(node)};")
            lines.append(f"  {_dot_quote(node)} -> {_dot_quote('actor:' + dep.dependee)};")
    if include_sr:
        for boundary in sorted(document.boundaries, key=lambda b: b.actor):
            if boundary.actor in keep:
                lines.extend(_boundary_lines(boundary))
    lines.append("}")
    return "\n".join(lines) + "\n"


def _boundary_lines(boundary: SRBoundary) -> list[str]:
    prefix = f"sr:{boundary.actor}:"
    lines = [
        f"  subgraph {_dot_quote('cluster_' + boundary.actor)} {{",
        f"    label={_dot_quote(boundary.actor)};",
        "    style=dashed;",
    ]
    for element in sorted(boundary.elements, key=lambda e: e.name):
        lines.append(
            f"    {_dot_quote(prefix + element.name)} "
            f"[label={_dot_quote(element.kind + ': ' + element.name)}, shape=box];"
        )
    for link in sorted(boundary.decompositions, key=lambda l: (l.parent, l.child)):
        lines.append(
            f"    {_dot_quote(prefix + link.parent)} -> "
            f"{_dot_quote(prefix + link.child)} [style=solid];"
        )
    for link in sorted(boundary.means_ends, key=lambda l: (l.means, l.end)):
        lines.append(
            f"    {_dot_quote(prefix + link.means)} -> "
            f"{_dot_quote(prefix + link.end)} [style=dotted];"
        )
    lines.append("  }")
    return lines


def metrics_csv(rows: Sequence[MetricsRow]) -> str:
    """CSV with one line per row, vulnerability rendered to one decimal."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in rows:
        writer.writerow(
            (
                row.actor,
                row.out_deps,
                row.dependees,
                format_vm(row.vm),
                row.in_deps,
                row.dependers,
                row.cm,
            )
        )
    return buffer.getvalue()
