"""Per-actor vulnerability and criticality scoring over an SD model.

Vulnerability divides an actor's outgoing dependency count by the number of
distinct dependees: relying on few actors for many needs scores high.
Criticality multiplies incoming dependencies by distinct dependers: many
obligations converging from many actors scores high.

Both scores are computed over the *whole* graph; a scope only selects which
rows appear in tables and which actors compete in rankings.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from fractions import Fraction
from typing import Sequence

from .model import ModelError, SDModel, degree_profile


@dataclass(frozen=True)
class MetricsRow:
    """One actor's degree counts plus both scores, exact."""

    actor: str
    out_deps: int
    dependees: int
    in_deps: int
    dependers: int
    vm: Fraction
    cm: int


@dataclass(frozen=True)
class Hotspots:
    """Argmax sets over a scope; ties are preserved, never broken arbitrarily."""

    most_vulnerable: tuple[str, ...]
    most_critical: tuple[str, ...]


def vulnerability(model: SDModel, actor_id: str) -> Fraction:
    """Outgoing dependencies over distinct dependees; 0 for an actor with none.

    The score is an exact rational so that table rendering and tie detection
    never depend on float rounding.
    """
    profile = degree_profile(model, actor_id)
    if profile.out_deps == 0:
        return Fraction(0)
    return Fraction(profile.out_deps, profile.dependees)


def criticality(model: SDModel, actor_id: str) -> int:
    """Incoming dependencies times distinct dependers."""
    profile = degree_profile(model, actor_id)
    return profile.in_deps * profile.dependers


def metrics_row(model: SDModel, actor_id: str) -> MetricsRow:
    profile = degree_profile(model, actor_id)
    vm = Fraction(profile.out_deps, profile.dependees) if profile.out_deps else Fraction(0)
    return MetricsRow(
        actor=actor_id,
        out_deps=profile.out_deps,
        dependees=profile.dependees,
        in_deps=profile.in_deps,
        dependers=profile.dependers,
        vm=vm,
        cm=profile.in_deps * profile.dependers,
    )


def metrics_table(model: SDModel, scope: Sequence[str]) -> list[MetricsRow]:
    """One row per scoped actor, sorted by actor id for stable output."""
    if not scope:
        raise ModelError("metrics table requires a non-empty scope")
    unknown = sorted(set(scope) - model.actor_ids)
    if unknown:
        raise ModelError(f"scope references unknown actors: {', '.join(unknown)}")
    return [metrics_row(model, actor_id) for actor_id in sorted(set(scope))]


def hotspots(model: SDModel, scope: Sequence[str]) -> Hotspots:
    """Full argmax sets of both scores over the scope."""
    rows = metrics_table(model, scope)
    max_vm = max(row.vm for row in rows)
    max_cm = max(row.cm for row in rows)
    return Hotspots(
        most_vulnerable=tuple(row.actor for row in rows if row.vm == max_vm),
        most_critical=tuple(row.actor for row in rows if row.cm == max_cm),
    )


def format_vm(vm: Fraction) -> str:
    """Render a vulnerability score with one decimal place (half-up)."""
    value = Decimal(vm.numerator) / Decimal(vm.denominator)
    return str(value.quantize(Decimal("0.1"), rounding=ROUND_HALF_UP))


def format_vm_exact(vm: Fraction) -> str:
    """Lossless rational rendering, always numerator/denominator."""
    return f"{vm.numerator}/{vm.denominator}"


def parse_vm_exact(text: str) -> Fraction:
    numerator, _, denominator = text.partition("/")
    return Fraction(int(numerator), int(denominator or "1"))
