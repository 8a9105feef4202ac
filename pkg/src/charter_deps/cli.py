"""Command-line front end: validate, score, rank, what-if, recommend, export, serve.

Exit codes: 0 success; 1 domain failure (structural violations, an infeasible
move under ``--strict``); 2 usage or parse errors.  Machine output goes to
stdout, diagnostics to stderr, and identical invocations on identical files
produce byte-identical stdout.  Honours ``CHARTER_DEPS_COLOR=auto|never|always``
for hotspot highlighting in table output.
"""

from __future__ import annotations

import json
import os
import sys
from pathlib import Path
from typing import Optional, Sequence

import click

from . import delegation
from .delegation import DelegationMove, Plan, PlanError, Policy, RecommendConfig
from .dsl import parse_model, serialize_model
from .export import ExportOptions, metrics_csv, render_export, to_dot
from .metrics import MetricsRow, format_vm, hotspots, metrics_table
from .model import ModelDocument, ModelError, resolve_scope, validate_model
from .reporting import (
    analysis_payload,
    load_plan_moves,
    plan_file_payload,
    plan_payload,
    row_payload,
)
from .structured import canonical_json, dumps, loads

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_USAGE = 2


def _fail(code: int, message: str) -> "click.exceptions.Exit":
    click.echo(message, err=True)
    return click.exceptions.Exit(code)


def _color_enabled() -> bool:
    mode = os.environ.get("CHARTER_DEPS_COLOR", "auto")
    if mode == "always":
        return True
    if mode == "never":
        return False
    return sys.stdout.isatty()


def load_document(path: str) -> ModelDocument:
    """Read a model file (.istar DSL or .json structured) or die with exit 2."""
    file_path = Path(path)
    try:
        text = file_path.read_text(encoding="utf-8")
    except OSError as exc:
        raise _fail(EXIT_USAGE, f"cannot read {path}: {exc}")
    if file_path.suffix == ".json":
        result = loads(text)
    else:
        result = parse_model(text)
    if not result.ok:
        for error in result.errors:
            click.echo(f"{path}: {error.render()}", err=True)
        raise click.exceptions.Exit(EXIT_USAGE)
    return result.document


def _scope_ids(document: ModelDocument, scope: str) -> tuple[str, ...]:
    try:
        return resolve_scope(document, None if scope == "all" else scope)
    except ModelError as exc:
        raise _fail(EXIT_USAGE, f"error: {exc}")


def _write_atomic(path: str, content: str) -> None:
    """Write whole files via a temp sibling so failures never leave partial output."""
    target = Path(path)
    temp = target.with_name(target.name + ".tmp")
    temp.write_text(content, encoding="utf-8")
    os.replace(temp, target)


def _render_table(rows: Sequence[MetricsRow], highlight: frozenset[str]) -> str:
    header = ("actor", "out", "dependees", "vm", "in", "dependers", "cm")
    body = [
        (
            row.actor,
            str(row.out_deps),
            str(row.dependees),
            format_vm(row.vm),
            str(row.in_deps),
            str(row.dependers),
            str(row.cm),
        )
        for row in rows
    ]
    widths = [
        max(len(header[col]), *(len(line[col]) for line in body)) if body else len(header[col])
        for col in range(len(header))
    ]
    use_color = _color_enabled()
    lines = ["  ".join(header[col].ljust(widths[col]) for col in range(len(header)))]
    lines.append("  ".join("-" * widths[col] for col in range(len(header))))
    for row, line in zip(rows, body):
        cells = [line[col].ljust(widths[col]) for col in range(len(header))]
        rendered = "  ".join(cells)
        if use_color and row.actor in highlight:
            rendered = f"\x1b[1;31m{rendered}\x1b[0m"
        lines.append(rendered)
    return "\n".join(lines) + "\n"


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.version_option(package_name="charter-deps")
def main() -> None:
    """Model an organisation's service dependencies, score actors, and rebalance."""


@main.command()
@click.argument("model_file", type=click.Path())
def validate(model_file: str) -> None:
    """Check a model file; OK plus counts, or one line per violation."""
    document = load_document(model_file)
    violations = validate_model(document.model, document.boundaries, document.scopes)
    if violations:
        for violation in violations:
            click.echo(f"{violation.code}: {violation.message}", err=True)
        raise click.exceptions.Exit(EXIT_DOMAIN)
    model = document.model
    click.echo(f"OK: {len(model.actors)} actors, {len(model.dependencies)} dependencies")


@main.command()
@click.argument("model_file", type=click.Path())
@click.option("--scope", default="all", show_default=True, help="Named scope from the model file, or 'all'.")
@click.option(
    "--format", "fmt", type=click.Choice(["table", "csv", "structured"]), default="table", show_default=True
)
def metrics(model_file: str, scope: str, fmt: str) -> None:
    """Vulnerability/criticality table for the scoped actors."""
    document = load_document(model_file)
    scope_ids = _scope_ids(document, scope)
    rows = metrics_table(document.model, scope_ids)
    spots = hotspots(document.model, scope_ids)
    if fmt == "csv":
        click.echo(metrics_csv(rows), nl=False)
    elif fmt == "structured":
        click.echo(canonical_json(analysis_payload(scope_ids, rows, spots)), nl=False)
    else:
        highlight = frozenset(spots.most_vulnerable) | frozenset(spots.most_critical)
        click.echo(_render_table(rows, highlight), nl=False, color=_color_enabled())


@main.command()
@click.argument("model_file", type=click.Path())
@click.option("--scope", default="all", show_default=True)
@click.option("--format", "fmt", type=click.Choice(["table", "structured"]), default="table", show_default=True)
def rank(model_file: str, scope: str, fmt: str) -> None:
    """Show the most vulnerable and most critical actors in scope."""
    document = load_document(model_file)
    scope_ids = _scope_ids(document, scope)
    spots = hotspots(document.model, scope_ids)
    rows = {row.actor: row for row in metrics_table(document.model, scope_ids)}
    if fmt == "structured":
        click.echo(
            canonical_json(
                {
                    "most_vulnerable": list(spots.most_vulnerable),
                    "most_critical": list(spots.most_critical),
                }
            ),
            nl=False,
        )
        return
    vulnerable = ", ".join(
        f"{actor} (vm {format_vm(rows[actor].vm)})" for actor in spots.most_vulnerable
    )
    critical = ", ".join(f"{actor} (cm {rows[actor].cm})" for actor in spots.most_critical)
    click.echo(f"most vulnerable: {vulnerable}")
    click.echo(f"most critical:   {critical}")


def _echo_plan(plan: Plan, fmt: str) -> None:
    if fmt == "structured":
        click.echo(canonical_json(plan_payload(plan)), nl=False)
        return
    for index, (move, verdict) in enumerate(zip(plan.moves, plan.verdicts), start=1):
        status = "ok" if verdict.feasible else "INFEASIBLE"
        click.echo(f"move {index}: {move.dependency} {move.endpoint} -> {move.new_actor}: {status}")
        for reason in verdict.reasons:
            click.echo(f"  - {reason.code}: {reason.message}")
    for advisory in plan.advisories:
        click.echo(f"advisory: {advisory.actor}: {advisory.reason}")
    click.echo(f"applied {plan.applied_count} endpoint changes")
    click.echo("")
    click.echo("before:")
    click.echo(_render_table(plan.table_before, frozenset()), nl=False)
    click.echo("")
    click.echo("after:")
    click.echo(_render_table(plan.table_after, frozenset()), nl=False)


@main.command()
@click.argument("model_file", type=click.Path())
@click.argument("plan_file", type=click.Path())
@click.option("--scope", default="all", show_default=True)
@click.option("--format", "fmt", type=click.Choice(["table", "structured"]), default="table", show_default=True)
@click.option("--strict", is_flag=True, help="Exit 1 if any move is infeasible.")
@click.option("--no-skip-infeasible", is_flag=True, help="Apply infeasible moves instead of skipping them.")
@click.option("--override-knowledge", is_flag=True, help="Ignore the knowledgeable-receiver rule.")
@click.option("--strict-argmax", is_flag=True, help="Guard only against becoming the unique maximum.")
def whatif(
    model_file: str,
    plan_file: str,
    scope: str,
    fmt: str,
    strict: bool,
    no_skip_infeasible: bool,
    override_knowledge: bool,
    strict_argmax: bool,
) -> None:
    """Evaluate a delegation plan file against a model."""
    document = load_document(model_file)
    scope_ids = _scope_ids(document, scope)
    try:
        payload = json.loads(Path(plan_file).read_text(encoding="utf-8"))
    except OSError as exc:
        raise _fail(EXIT_USAGE, f"cannot read {plan_file}: {exc}")
    except json.JSONDecodeError as exc:
        raise _fail(EXIT_USAGE, f"{plan_file}: invalid JSON: {exc.msg}")
    moves, problems = load_plan_moves(payload)
    if problems:
        for problem in problems:
            click.echo(f"{plan_file}: {problem}", err=True)
        raise click.exceptions.Exit(EXIT_USAGE)
    policy = Policy(
        skip_infeasible=not no_skip_infeasible,
        override_knowledge=override_knowledge,
        strict_argmax=strict_argmax,
    )
    try:
        plan = delegation.evaluate_plan(document.model, scope_ids, moves, policy)
    except PlanError as exc:
        raise _fail(EXIT_DOMAIN, f"error: {exc}")
    _echo_plan(plan, fmt)
    if strict and any(not verdict.feasible for verdict in plan.verdicts):
        click.echo("strict mode: plan contains infeasible moves", err=True)
        raise click.exceptions.Exit(EXIT_DOMAIN)


@main.command()
@click.argument("model_file", type=click.Path())
@click.option("--scope", default="all", show_default=True)
@click.option("--format", "fmt", type=click.Choice(["table", "structured"]), default="table", show_default=True)
@click.option("--max-moves", default=10, show_default=True)
@click.option("--emit-plan", type=click.Path(), default=None, help="Write the chosen moves as a plan file.")
def recommend(model_file: str, scope: str, fmt: str, max_moves: int, emit_plan: Optional[str]) -> None:
    """Search for a rebalancing plan and report stand-down advisories."""
    document = load_document(model_file)
    scope_ids = _scope_ids(document, scope)
    plan = delegation.recommend(document.model, scope_ids, RecommendConfig(max_moves=max_moves))
    _echo_plan(plan, fmt)
    if emit_plan is not None:
        _write_atomic(emit_plan, canonical_json(plan_file_payload(plan.moves)))


@main.command()
@click.argument("model_file", type=click.Path())
@click.option(
    "--format", "fmt", type=click.Choice(["dot", "csv", "structured"]), default="dot", show_default=True
)
@click.option("--scope", default="all", show_default=True)
@click.option("--compact", is_flag=True, help="DOT: one labelled edge per dependency.")
@click.option("--include-sr", is_flag=True, help="DOT: render rationale boundaries as clusters.")
@click.option("-o", "--output", type=click.Path(), default=None, help="Write to a file instead of stdout.")
def export(
    model_file: str, fmt: str, scope: str, compact: bool, include_sr: bool, output: Optional[str]
) -> None:
    """Render the model as DOT, the metric table as CSV, or the wire document."""
    document = load_document(model_file)
    scope_arg = None if (scope == "all" and fmt == "dot") else _scope_ids(document, scope)
    content = render_export(
        document,
        ExportOptions(format=fmt, include_sr=include_sr, compact=compact, scope=scope_arg),
    )
    if output is None:
        click.echo(content, nl=False)
    else:
        _write_atomic(output, content)


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8000, show_default=True)
@click.option("--static", "static_dir", type=click.Path(), default=None, help="Serve a built workbench from this directory.")
@click.option("--cors-origin", "cors_origins", multiple=True, help="Allowed CORS origin (repeatable; default *).")
@click.option("--max-body-bytes", default=2_000_000, show_default=True)
def serve(host: str, port: int, static_dir: Optional[str], cors_origins: tuple[str, ...], max_body_bytes: int) -> None:
    """Run the stateless HTTP analysis service."""
    import uvicorn

    from .service import ServiceConfig, create_app

    app = create_app(
        ServiceConfig(
            max_body_bytes=max_body_bytes,
            cors_origins=cors_origins or ("*",),
            static_dir=static_dir,
        )
    )
    uvicorn.run(app, host=host, port=port, log_level="info")


# Round-trip helper for DSL editing workflows; exposed mainly for scripts.
@main.command("fmt")
@click.argument("model_file", type=click.Path())
@click.option("-o", "--output", type=click.Path(), default=None)
def format_cmd(model_file: str, output: Optional[str]) -> None:
    """Canonicalise a model file (sorted, explicit ids, LF endings)."""
    document = load_document(model_file)
    content = serialize_model(document)
    if output is None:
        click.echo(content, nl=False)
    else:
        _write_atomic(output, content)


if __name__ == "__main__":
    main()
