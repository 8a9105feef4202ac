"""Wire/report payloads shared by the CLI and the HTTP service.

Both front ends must emit byte-identical documents for the same request, so
every payload is built here and rendered through
:func:`charter_deps.structured.canonical_json`.  Vulnerability scores travel
as decimal strings (one-decimal display plus an exact ``p/q`` field) so no
consumer ever sees float drift.
"""

from __future__ import annotations

from typing import Any, Optional, Sequence

from .delegation import DelegationMove, FeasibilityVerdict, MetricSnapshot, Plan
from .dsl import ParseError
from .metrics import Hotspots, MetricsRow, format_vm, format_vm_exact
from .model import Violation

PLAN_FORMAT_VERSION = 1


def row_payload(row: MetricsRow) -> dict[str, Any]:
    return {
        "actor": row.actor,
        "out_deps": row.out_deps,
        "dependees": row.dependees,
        "vm": format_vm(row.vm),
        "vm_exact": format_vm_exact(row.vm),
        "in_deps": row.in_deps,
        "dependers": row.dependers,
        "cm": row.cm,
    }


def hotspots_payload(spots: Hotspots) -> dict[str, Any]:
    return {
        "most_vulnerable": list(spots.most_vulnerable),
        "most_critical": list(spots.most_critical),
    }


def analysis_payload(
    scope: Sequence[str], rows: Sequence[MetricsRow], spots: Hotspots
) -> dict[str, Any]:
    return {
        "scope": list(scope),
        "rows": [row_payload(row) for row in rows],
        "hotspots": hotspots_payload(spots),
    }


def _snapshot_payload(snapshot: Optional[MetricSnapshot]) -> Optional[dict[str, Any]]:
    if snapshot is None:
        return None
    return {
        "vm": format_vm(snapshot.vm),
        "vm_exact": format_vm_exact(snapshot.vm),
        "cm": snapshot.cm,
    }


def verdict_payload(verdict: FeasibilityVerdict) -> dict[str, Any]:
    return {
        "feasible": verdict.feasible,
        "reasons": [{"code": r.code, "message": r.message} for r in verdict.reasons],
        "receiver_before": _snapshot_payload(verdict.receiver_before),
        "receiver_after": _snapshot_payload(verdict.receiver_after),
    }


def move_payload(move: DelegationMove) -> dict[str, Any]:
    payload: dict[str, Any] = {
        "dependency": move.dependency,
        "endpoint": move.endpoint,
        "new_actor": move.new_actor,
    }
    if move.rationale is not None:
        payload["rationale"] = move.rationale
    return payload


def plan_payload(plan: Plan) -> dict[str, Any]:
    return {
        "moves": [move_payload(move) for move in plan.moves],
        "verdicts": [verdict_payload(verdict) for verdict in plan.verdicts],
        "advisories": [
            {"actor": advisory.actor, "reason": advisory.reason}
            for advisory in plan.advisories
        ],
        "table_before": [row_payload(row) for row in plan.table_before],
        "table_after": [row_payload(row) for row in plan.table_after],
        "changes": [
            {
                "dependency": change.dependency,
                "endpoint": change.endpoint,
                "old_actor": change.old_actor,
                "new_actor": change.new_actor,
            }
            for change in plan.changes
        ],
    }


def plan_file_payload(moves: Sequence[DelegationMove]) -> dict[str, Any]:
    """The on-disk plan shape the `whatif` command accepts."""
    return {
        "format_version": PLAN_FORMAT_VERSION,
        "moves": [move_payload(move) for move in moves],
    }


def parse_error_payload(error: ParseError) -> dict[str, Any]:
    payload: dict[str, Any] = {"code": error.code, "message": error.message}
    if error.span is not None:
        payload["span"] = {
            "line": error.span.line,
            "column": error.span.column,
            "length": error.span.length,
        }
    if error.path is not None:
        payload["path"] = error.path
    return payload


def violation_payload(violation: Violation) -> dict[str, Any]:
    return {
        "code": violation.code,
        "message": violation.message,
        "subject": violation.subject,
    }


def load_plan_moves(payload: Any) -> tuple[list[DelegationMove], list[str]]:
    """Read a plan document; returns (moves, problems) with path-style messages."""
    problems: list[str] = []
    if not isinstance(payload, dict):
        return [], [f"$: expected a plan object, got {type(payload).__name__}"]
    version = payload.get("format_version", PLAN_FORMAT_VERSION)
    if version != PLAN_FORMAT_VERSION:
        problems.append(f"$.format_version: unsupported plan version {version!r}")
    raw_moves = payload.get("moves")
    if not isinstance(raw_moves, list):
        problems.append("$.moves: missing or non-array field")
        return [], problems
    moves: list[DelegationMove] = []
    for index, item in enumerate(raw_moves):
        path = f"$.moves[{index}]"
        if not isinstance(item, dict):
            problems.append(f"{path}: expected an object")
            continue
        dependency = item.get("dependency")
        endpoint = item.get("endpoint")
        new_actor = item.get("new_actor")
        rationale = item.get("rationale")
        if not isinstance(dependency, str):
            problems.append(f"{path}.dependency: expected a string")
            continue
        if endpoint not in ("depender", "dependee"):
            problems.append(f"{path}.endpoint: expected 'depender' or 'dependee'")
            continue
        if not isinstance(new_actor, str):
            problems.append(f"{path}.new_actor: expected a string")
            continue
        if rationale is not None and not isinstance(rationale, str):
            problems.append(f"{path}.rationale: expected a string")
            continue
        moves.append(
            DelegationMove(
                dependency=dependency,
                endpoint=endpoint,
                new_actor=new_actor,
                rationale=rationale,
            )
        )
    return moves, problems
