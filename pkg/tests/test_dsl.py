"""DSL parsing, error reporting, and round-trip fidelity for both formats."""

from __future__ import annotations

import json

from hypothesis import example, given, settings
from hypothesis import strategies as st

from charter_deps.dsl import parse_model, serialize_model
from charter_deps.metrics import vulnerability
from charter_deps.model import degree_profile, validate_model
from charter_deps.structured import dumps, from_document, loads, to_document

from conftest import sd_documents

BIRTH_SNIPPET = """
model "Birth Registration Service"
actor "Customer"
actor "Registration Officer"
actor "Cashier"
dep resource "birth registration requirements" from "Registration Officer" to "Customer"
dep task "present registration fee payment" from "Registration Officer" to "Customer"
dep goal "processed on time birth registration" from "Customer" to "Registration Officer"
dep resource "official receipt" from "Customer" to "Cashier"
"""


def test_birth_snippet_parses_with_expected_shape():
    document = parse_model(BIRTH_SNIPPET).unwrap()
    model = document.model
    assert len(model.actors) == 3
    assert len(model.dependencies) >= 3
    profile = degree_profile(model, "registration-officer")
    assert (profile.out_deps, profile.dependees) == (2, 1)
    assert vulnerability(model, "registration-officer") == 2


def test_empty_input_is_empty_untitled_model():
    document = parse_model("").unwrap()
    assert document.model.name == "untitled"
    assert document.model.actors == ()
    assert document.model.dependencies == ()


def test_undeclared_actor_is_reported():
    result = parse_model('dep goal "g" from "A" to "A"')
    assert not result.ok
    assert any(e.code == "UNKNOWN_ACTOR" for e in result.errors)


def test_self_dependency_is_reported():
    result = parse_model('actor "A"\ndep goal "g" from "A" to "A"')
    assert not result.ok
    assert result.errors[0].span.line == 2


def test_all_errors_collected_in_one_pass():
    source = "\n".join(
        [
            'actor "A" kind wizard',  # bad kind
            'dep goal "g" from "A" to "B"',  # unknown actors
            'actor "C" id "c"',
            'actor "D" id "c"',  # duplicate id
            'dep goal "unterminated from "C"',  # stray token after string
        ]
    )
    result = parse_model(source)
    assert not result.ok
    assert len(result.errors) >= 4
    codes = {e.code for e in result.errors}
    assert {"BAD_KIND", "UNKNOWN_ACTOR", "DUPLICATE_ID"} <= codes


def test_error_spans_point_inside_input():
    source = 'actor "A"\nactor "B" kind payphone\ndep goal "g" from "A" to "Z"'
    result = parse_model(source)
    lines = source.split("\n")
    assert not result.ok
    for error in result.errors:
        assert 1 <= error.span.line <= len(lines)
        assert 1 <= error.span.column <= max(1, len(lines[error.span.line - 1]))


def test_unterminated_string_reported_as_bad_string():
    result = parse_model('actor "A\n')
    assert not result.ok
    assert result.errors[0].code == "BAD_STRING"


def test_bad_escape_reported_as_bad_string():
    result = parse_model('actor "A\\q"')
    assert not result.ok
    assert result.errors[0].code == "BAD_STRING"


def test_duplicate_dep_lines_are_distinct_edges():
    source = """
    actor "A"
    actor "B"
    dep task "file papers" from "A" to "B"
    dep task "file papers" from "A" to "B"
    """
    document = parse_model(source).unwrap()
    assert len(document.model.dependencies) == 2
    assert len({d.id for d in document.model.dependencies}) == 2


def test_crlf_input_accepted_lf_emitted():
    source = 'model "M"\r\nactor "A"\r\n'
    document = parse_model(source).unwrap()
    assert document.model.name == "M"
    assert "\r" not in serialize_model(document)


def test_actor_reference_by_id_and_name():
    source = """
    actor "Front Desk" id "fd"
    actor "Back Office"
    dep task "route mail" from "fd" to "Back Office"
    """
    document = parse_model(source).unwrap()
    dep = document.model.dependencies[0]
    assert dep.depender == "fd"
    assert dep.dependee == "back-office"


def test_ambiguous_name_reference_rejected():
    source = """
    actor "Clerk" id "c1"
    actor "Clerk" id "c2"
    dep task "sort" from "Clerk" to "c1"
    """
    result = parse_model(source)
    assert not result.ok
    assert any("ambiguous" in e.message for e in result.errors)


def test_sr_cycle_is_a_parse_error():
    source = """
    actor "A"
    sr "A" {
      task "t1"
      task "t2"
      decompose "t1" -> task "t2"
      decompose "t2" -> task "t1"
    }
    """
    result = parse_model(source)
    assert not result.ok
    assert any("cycle" in e.message for e in result.errors)


def test_unclosed_boundary_reported():
    result = parse_model('actor "A"\nsr "A" {\n  task "t"')
    assert not result.ok
    assert any("never closed" in e.message for e in result.errors)


@given(sd_documents())
@settings(max_examples=120, deadline=None)
def test_dsl_round_trip_identity(document):
    text = serialize_model(document)
    reparsed = parse_model(text)
    assert reparsed.ok, [e.render() for e in reparsed.errors]
    assert reparsed.document == parse_model(serialize_model(reparsed.document)).document
    # Canonical text is a fixed point: serialize(parse(serialize(d))) == serialize(d).
    assert serialize_model(reparsed.document) == text


@given(sd_documents())
@settings(max_examples=120, deadline=None)
def test_structured_round_trip_identity(document):
    text = serialize_model(document)
    canonical = parse_model(text).unwrap()
    payload = to_document(canonical)
    reloaded = from_document(payload)
    assert reloaded.ok, [e.render() for e in reloaded.errors]
    assert reloaded.document == canonical
    assert to_document(reloaded.document) == payload


def test_quotes_and_unicode_survive_round_trip():
    source = (
        'model "Ünïcode \\"quoted\\" model"\n'
        'actor "Ms. \\"Smith\\" Ünicode ✓" id "smith"\n'
        'actor "Tab\\tand\\nnewline" id "tn"\n'
        'dep task "say \\"hi\\" ✓" from "smith" to "tn"\n'
    )
    document = parse_model(source).unwrap()
    assert document.model.name == 'Ünïcode "quoted" model'
    assert document.model.actors[0].name == 'Ms. "Smith" Ünicode ✓'
    assert document.model.actors[1].name == "Tab\tand\nnewline"
    round_tripped = parse_model(serialize_model(document)).unwrap()
    assert round_tripped == document


def test_dsl_to_structured_to_dsl_byte_identical(registry_document):
    canonical_text = serialize_model(registry_document)
    via_structured = from_document(to_document(registry_document)).unwrap()
    assert serialize_model(via_structured) == canonical_text


def test_structured_missing_actors_field_names_path():
    result = loads('{"name": "m"}')
    assert not result.ok
    assert any(e.path == "$.actors" for e in result.errors)


def test_structured_bad_kind_left_to_validation():
    payload = {
        "name": "m",
        "actors": [{"id": "a", "name": "A", "kind": "sorcerer"}],
        "dependencies": [],
    }
    result = from_document(payload)
    assert result.ok
    codes = [v.code for v in validate_model(result.document.model)]
    assert "BAD_KIND" in codes


def test_structured_invalid_json_reported():
    result = loads("{nope")
    assert not result.ok
    assert "invalid JSON" in result.errors[0].message


def test_structured_wrong_types_name_paths():
    payload = {"name": 5, "actors": [{"id": "a", "name": 7}], "dependencies": "x"}
    result = from_document(payload)
    assert not result.ok
    paths = {e.path for e in result.errors}
    assert "$.name" in paths
    assert "$.actors[0].name" in paths
    assert "$.dependencies" in paths


def test_fixture_file_is_canonical(registry_document):
    from pathlib import Path

    frozen = (Path(__file__).resolve().parent.parent / "fixtures" / "civil-registry.istar").read_text(
        encoding="utf-8"
    )
    assert serialize_model(registry_document) == frozen


@given(st.text(max_size=400))
@example('dep goal "g" from "A" to "A"')
@example('actor "x" tags [a, b')
@example("sr { }")
@example('model "m" model "m"')
@settings(max_examples=300, deadline=None)
def test_parsing_is_total(text):
    result = parse_model(text)
    if result.ok:
        document = result.document
        assert validate_model(document.model, document.boundaries, document.scopes) == []
        assert parse_model(serialize_model(document)).document == document
    else:
        assert result.errors
        lines = text.split("\n")
        for error in result.errors:
            assert 1 <= error.span.line <= len(lines)
            assert error.span.column >= 1


def test_plan_file_round_trip_via_json(rebalance_moves):
    from charter_deps.reporting import load_plan_moves, plan_file_payload

    payload = plan_file_payload(rebalance_moves)
    reloaded, problems = load_plan_moves(json.loads(json.dumps(payload)))
    assert problems == []
    assert reloaded == rebalance_moves
