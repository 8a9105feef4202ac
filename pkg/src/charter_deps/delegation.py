"""Delegation engine: endpoint reassignments, feasibility rules, plans.

A delegation move hands one endpoint of one existing dependency to another
actor.  Reassigning the dependee endpoint transfers responsibility (the
receiver now owes the dependum: criticality relief for the old dependee);
reassigning the depender endpoint transfers the reliance itself
(vulnerability relief for the old depender).  Edges are never created or
destroyed, so every plan conserves the dependency count.

A move is infeasible when the receiver is not knowledgeable of the dependum
(no shared service tag), or when applying it would push some in-scope actor
up into the most-vulnerable or most-critical set it was not already in.
The guard watches every scoped actor whose score *rises* into the top set,
not only the receiver: a delegation can overload third parties, e.g. a
depender whose remaining reliance concentrates on fewer actors.  Actors that
top a ranking merely because the relieved hotspot dropped below them are not
counted - otherwise no rebalancing move would ever be legal.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .metrics import Hotspots, MetricsRow, hotspots, metrics_table
from .model import Dependency, ModelError, SDModel

ENDPOINTS = ("depender", "dependee")

# Feasibility reason codes.
INVALID_MOVE = "INVALID_MOVE"
NOT_KNOWLEDGEABLE = "NOT_KNOWLEDGEABLE"
CREATES_MOST_VULNERABLE = "CREATES_MOST_VULNERABLE"
CREATES_MOST_CRITICAL = "CREATES_MOST_CRITICAL"


@dataclass(frozen=True)
class DelegationMove:
    """Reassign ``endpoint`` of ``dependency`` to ``new_actor``."""

    dependency: str
    endpoint: str  # "depender" | "dependee"
    new_actor: str
    rationale: Optional[str] = None


@dataclass(frozen=True)
class Policy:
    """Knobs for feasibility checking and plan evaluation."""

    skip_infeasible: bool = True
    override_knowledge: bool = False
    strict_argmax: bool = False


@dataclass(frozen=True)
class RecommendConfig:
    max_moves: int = 10


@dataclass(frozen=True)
class VerdictReason:
    code: str
    message: str


@dataclass(frozen=True)
class MetricSnapshot:
    vm: Fraction
    cm: int


@dataclass(frozen=True)
class FeasibilityVerdict:
    """Outcome of checking one move; feasible iff no reasons."""

    feasible: bool
    reasons: tuple[VerdictReason, ...] = ()
    receiver_before: Optional[MetricSnapshot] = None
    receiver_after: Optional[MetricSnapshot] = None

    @property
    def reason_codes(self) -> tuple[str, ...]:
        return tuple(reason.code for reason in self.reasons)


@dataclass(frozen=True)
class EndpointChange:
    dependency: str
    endpoint: str
    old_actor: str
    new_actor: str


@dataclass(frozen=True)
class AddActorAdvisory:
    """Suggestion to add staff when no delegation can relieve a hotspot."""

    actor: str
    reason: str


@dataclass(frozen=True)
class Plan:
    """Moves with verdicts plus the metric tables around them."""

    moves: tuple[DelegationMove, ...]
    verdicts: tuple[FeasibilityVerdict, ...]
    advisories: tuple[AddActorAdvisory, ...]
    table_before: tuple[MetricsRow, ...]
    table_after: tuple[MetricsRow, ...]
    changes: tuple[EndpointChange, ...]

    @property
    def applied_count(self) -> int:
        return len(self.changes)


class PlanError(ModelError):
    """A structurally invalid move aborted plan evaluation."""

    def __init__(self, move_index: int, message: str):
        super().__init__(f"move {move_index}: {message}")
        self.move_index = move_index


def _structural_error(model: SDModel, move: DelegationMove) -> Optional[str]:
    if move.endpoint not in ENDPOINTS:
        return f"unknown endpoint {move.endpoint!r} (expected depender/dependee)"
    if move.dependency not in model.dependencies_by_id:
        return f"unknown dependency id {move.dependency!r}"
    if move.new_actor not in model.actor_ids:
        return f"unknown actor id {move.new_actor!r}"
    dep = model.dependencies_by_id[move.dependency]
    current = dep.endpoint(move.endpoint)
    if move.new_actor == current:
        return f"{move.endpoint} of {move.dependency!r} is already {current!r}"
    other = dep.dependee if move.endpoint == "depender" else dep.depender
    if move.new_actor == other:
        return f"reassigning {move.endpoint} of {move.dependency!r} to {move.new_actor!r} would create a self-dependency"
    return None


def apply_move(model: SDModel, move: DelegationMove) -> SDModel:
    """Return a new model with the one endpoint reassigned; the input is untouched."""
    problem = _structural_error(model, move)
    if problem is not None:
        raise ModelError(problem)
    dep = model.dependencies_by_id[move.dependency]
    if move.endpoint == "depender":
        new_dep = replace(dep, depender=move.new_actor)
    else:
        new_dep = replace(dep, dependee=move.new_actor)
    return model.with_dependency_replaced(new_dep)


def _argmax(values: dict[str, Fraction | int], strict: bool) -> frozenset[str]:
    top = max(values.values())
    winners = frozenset(actor for actor, value in values.items() if value == top)
    if strict and len(winners) != 1:
        return frozenset()
    return winners


def _rising_entrants(
    pre: dict[str, Fraction | int],
    post: dict[str, Fraction | int],
    strict: bool,
) -> list[str]:
    """Actors that moved up into the top set: in the post argmax, not the pre
    argmax, and with a strictly higher score than before.  Actors whose score
    did not change only "enter" because the previous maximum fell away; they
    are deliberately excluded."""
    pre_top = _argmax(pre, strict)
    post_top = _argmax(post, strict)
    return sorted(
        actor for actor in post_top if actor not in pre_top and post[actor] > pre[actor]
    )


def check_feasibility(
    model: SDModel,
    scope: Sequence[str],
    move: DelegationMove,
    policy: Policy = Policy(),
) -> FeasibilityVerdict:
    """Judge one move against the knowledge rule and the hotspot guard."""
    reasons: list[VerdictReason] = []

    problem = _structural_error(model, move)
    receiver_before: Optional[MetricSnapshot] = None
    if move.new_actor in model.actor_ids:
        rows = {row.actor: row for row in metrics_table(model, [move.new_actor])}
        row = rows[move.new_actor]
        receiver_before = MetricSnapshot(vm=row.vm, cm=row.cm)
    if problem is not None:
        reasons.append(VerdictReason(INVALID_MOVE, problem))
        return FeasibilityVerdict(
            feasible=False, reasons=tuple(reasons), receiver_before=receiver_before
        )

    dep = model.dependencies_by_id[move.dependency]
    receiver = model.actor(move.new_actor)
    if not policy.override_knowledge and not (dep.dependum.tags & receiver.tags):
        shared = ", ".join(sorted(dep.dependum.tags)) or "none"
        reasons.append(
            VerdictReason(
                NOT_KNOWLEDGEABLE,
                f"{receiver.name!r} shares no service tag with the dependum "
                f"(dependum tags: {shared})",
            )
        )

    moved = apply_move(model, move)
    scope_ids = tuple(sorted(set(scope)))
    pre_rows = {row.actor: row for row in metrics_table(model, scope_ids)}
    post_rows = {row.actor: row for row in metrics_table(moved, scope_ids)}

    pre_vm = {a: r.vm for a, r in pre_rows.items()}
    post_vm = {a: r.vm for a, r in post_rows.items()}
    vm_entrants = _rising_entrants(pre_vm, post_vm, policy.strict_argmax)
    if vm_entrants:
        names = ", ".join(model.actor(a).name for a in vm_entrants)
        reasons.append(
            VerdictReason(
                CREATES_MOST_VULNERABLE,
                f"the move would make {names} the most vulnerable in scope",
            )
        )

    pre_cm = {a: r.cm for a, r in pre_rows.items()}
    post_cm = {a: r.cm for a, r in post_rows.items()}
    cm_entrants = _rising_entrants(pre_cm, post_cm, policy.strict_argmax)
    if cm_entrants:
        names = ", ".join(model.actor(a).name for a in cm_entrants)
        reasons.append(
            VerdictReason(
                CREATES_MOST_CRITICAL,
                f"the move would make {names} the most critical in scope",
            )
        )

    after_rows = {row.actor: row for row in metrics_table(moved, [move.new_actor])}
    after = after_rows[move.new_actor]
    return FeasibilityVerdict(
        feasible=not reasons,
        reasons=tuple(reasons),
        receiver_before=receiver_before,
        receiver_after=MetricSnapshot(vm=after.vm, cm=after.cm),
    )


def diff(before: SDModel, after: SDModel) -> tuple[EndpointChange, ...]:
    """Endpoint changes between two models over the same actors and edges."""
    if before.actor_ids != after.actor_ids:
        raise ModelError("models have different actor sets; nothing to compare")
    if set(before.dependencies_by_id) != set(after.dependencies_by_id):
        raise ModelError("models have different dependency ids; nothing to compare")
    changes: list[EndpointChange] = []
    for dep_id in sorted(before.dependencies_by_id):
        old = before.dependencies_by_id[dep_id]
        new = after.dependencies_by_id[dep_id]
        for endpoint in ENDPOINTS:
            if old.endpoint(endpoint) != new.endpoint(endpoint):
                changes.append(
                    EndpointChange(
                        dependency=dep_id,
                        endpoint=endpoint,
                        old_actor=old.endpoint(endpoint),
                        new_actor=new.endpoint(endpoint),
                    )
                )
    return tuple(changes)


def evaluate_plan(
    model: SDModel,
    scope: Sequence[str],
    moves: Sequence[DelegationMove],
    policy: Policy = Policy(),
) -> Plan:
    """Fold the moves over the model, judging each against the state at its turn.

    Structurally invalid moves abort with :class:`PlanError`.  Infeasible
    moves are recorded and, under ``policy.skip_infeasible`` (the default),
    left unapplied; with the flag off they are applied anyway, verdict and
    all.  ``table_after`` always reflects exactly the applied moves.
    """
    scope_ids = tuple(sorted(set(scope)))
    table_before = tuple(metrics_table(model, scope_ids))
    current = model
    verdicts: list[FeasibilityVerdict] = []
    for index, move in enumerate(moves):
        problem = _structural_error(current, move)
        if problem is not None:
            raise PlanError(index, problem)
        verdict = check_feasibility(current, scope_ids, move, policy)
        verdicts.append(verdict)
        if verdict.feasible or not policy.skip_infeasible:
            current = apply_move(current, move)
    return Plan(
        moves=tuple(moves),
        verdicts=tuple(verdicts),
        advisories=(),
        table_before=table_before,
        table_after=tuple(metrics_table(current, scope_ids)),
        changes=diff(model, current),
    )


# ---------------------------------------------------------------------------
# Recommendation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class _Objective:
    """Lexicographic balance score: lower is better."""

    max_vm: Fraction
    max_cm: int
    vm_spread: Fraction

    def as_tuple(self) -> tuple[Fraction, int, Fraction]:
        return (self.max_vm, self.max_cm, self.vm_spread)


def _objective(model: SDModel, scope_ids: Sequence[str]) -> _Objective:
    rows = metrics_table(model, scope_ids)
    vms = [row.vm for row in rows]
    return _Objective(
        max_vm=max(vms),
        max_cm=max(row.cm for row in rows),
        vm_spread=max(vms) - min(vms),
    )


def _candidate_moves(
    model: SDModel,
    scope_ids: Sequence[str],
    hotspot_actors: Iterable[str],
    policy: Policy,
) -> dict[str, list[tuple[DelegationMove, FeasibilityVerdict]]]:
    """Feasible relieving moves per hotspot actor.

    A relieving move takes the endpoint the hotspot itself holds and hands it
    to another actor; receivers are filtered by the knowledge rule before the
    hotspot guard runs.
    """
    feasible: dict[str, list[tuple[DelegationMove, FeasibilityVerdict]]] = {}
    receivers = sorted(model.actor_ids)
    for actor_id in hotspot_actors:
        found: list[tuple[DelegationMove, FeasibilityVerdict]] = []
        for dep in sorted(model.dependencies, key=lambda d: d.id):
            for endpoint in ENDPOINTS:
                if dep.endpoint(endpoint) != actor_id:
                    continue
                other = dep.dependee if endpoint == "depender" else dep.depender
                for receiver in receivers:
                    if receiver == actor_id or receiver == other:
                        continue
                    if not policy.override_knowledge and not (
                        dep.dependum.tags & model.actor(receiver).tags
                    ):
                        continue
                    move = DelegationMove(dependency=dep.id, endpoint=endpoint, new_actor=receiver)
                    verdict = check_feasibility(model, scope_ids, move, policy)
                    if verdict.feasible:
                        found.append((move, verdict))
        feasible[actor_id] = found
    return feasible


def recommend(
    model: SDModel,
    scope: Sequence[str],
    config: RecommendConfig = RecommendConfig(),
    policy: Policy = Policy(),
) -> Plan:
    """Greedy rebalancing: repeatedly apply the best strictly-improving move.

    Each round ranks feasible relieving moves from the current hotspot actors
    by the post-move objective (max vulnerability, then max criticality, then
    vulnerability spread); a move is applied only if it improves that
    objective without worsening either maximum.  Hotspots left with no
    feasible move at the end earn an add-staff advisory instead.
    """
    scope_ids = tuple(sorted(set(scope)))
    table_before = tuple(metrics_table(model, scope_ids))
    current = model
    chosen: list[DelegationMove] = []
    verdicts: list[FeasibilityVerdict] = []

    for _ in range(config.max_moves):
        spots = hotspots(current, scope_ids)
        hotspot_actors = sorted(set(spots.most_vulnerable) | set(spots.most_critical))
        feasible = _candidate_moves(current, scope_ids, hotspot_actors, policy)
        baseline = _objective(current, scope_ids)

        best: Optional[tuple] = None
        for actor_id in hotspot_actors:
            for move, verdict in feasible[actor_id]:
                outcome = _objective(apply_move(current, move), scope_ids)
                if outcome.max_vm > baseline.max_vm or outcome.max_cm > baseline.max_cm:
                    continue
                if outcome.as_tuple() >= baseline.as_tuple():
                    continue
                receiver_row = next(
                    row for row in metrics_table(current, [move.new_actor])
                )
                rank = (
                    outcome.as_tuple(),
                    receiver_row.vm,
                    receiver_row.cm,
                    move.new_actor,
                    move.dependency,
                    move.endpoint,
                )
                if best is None or rank < best[0]:
                    best = (rank, move, verdict)
        if best is None:
            break
        _, move, verdict = best
        chosen.append(move)
        verdicts.append(verdict)
        current = apply_move(current, move)

    final_spots = hotspots(current, scope_ids)
    final_rows = metrics_table(current, scope_ids)
    vm_values = [row.vm for row in final_rows]
    cm_values = [row.cm for row in final_rows]
    final_feasible = _candidate_moves(
        current,
        scope_ids,
        sorted(set(final_spots.most_vulnerable) | set(final_spots.most_critical)),
        policy,
    )
    advisories: list[AddActorAdvisory] = []
    for actor_id in sorted(final_feasible):
        if final_feasible[actor_id]:
            continue
        roles: list[str] = []
        if actor_id in final_spots.most_vulnerable and max(vm_values) > min(vm_values):
            roles.append("most vulnerable")
        if actor_id in final_spots.most_critical and max(cm_values) > min(cm_values):
            roles.append("most critical")
        if not roles:
            continue  # a flat ranking is balance, not overload
        name = current.actor(actor_id).name
        advisories.append(
            AddActorAdvisory(
                actor=actor_id,
                reason=(
                    f"{name} remains the {' and '.join(roles)} actor in scope and no "
                    "knowledgeable receiver can feasibly take over any of its "
                    "dependencies; add staff for its service areas, and monitor its "
                    "performance indicators until then."
                ),
            )
        )

    return Plan(
        moves=tuple(chosen),
        verdicts=tuple(verdicts),
        advisories=tuple(advisories),
        table_before=table_before,
        table_after=tuple(final_rows),
        changes=diff(model, current),
    )
