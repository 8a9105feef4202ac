"""Text format for SD/SR models: a line-oriented DSL with `.istar` files.

One statement per line::

    # comment
    model "City Civil Registry Office"
    actor "Customer" id "customer" kind role tags [citizen]
    dep task "present fee payment" from "clerk" to "customer" id "d-fee" tags [fees]
    scope "staff" [clerk, officer]
    sr "officer" {
      task "process registration"
      resource "requirement checklist"
      goal "registration processed"
      decompose "process registration" -> resource "requirement checklist"
      means task "process registration" -> goal "registration processed"
    }

`from` names the depender, `to` the dependee.  Actor references accept an id
or a unique display name; actors must be declared before any line that uses
them.  Parsing is total: every input yields either a document that passes
:func:`charter_deps.model.validate_model` cleanly, or a non-empty error list
with line/column spans - never both, never an exception.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from .model import (
    ACTOR_KINDS,
    DEFAULT_MODEL_NAME,
    DEPENDUM_KINDS,
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
    Violation,
    slugify,
    validate_model,
)

# ParseError codes.
SYNTAX = "SYNTAX"
UNKNOWN_ACTOR = "UNKNOWN_ACTOR"
DUPLICATE_ID = "DUPLICATE_ID"
BAD_KIND = "BAD_KIND"
BAD_STRING = "BAD_STRING"


@dataclass(frozen=True)
class SourceSpan:
    """1-based position of a token or construct in the source text."""

    line: int
    column: int
    length: int = 1


@dataclass(frozen=True)
class ParseError:
    """One diagnostic: DSL errors carry a span, document errors carry a path."""

    code: str
    message: str
    span: Optional[SourceSpan] = None
    path: Optional[str] = None

    def render(self) -> str:
        where = ""
        if self.span is not None:
            where = f"line {self.span.line}, column {self.span.column}: "
        elif self.path is not None:
            where = f"{self.path}: "
        return f"{where}{self.message} [{self.code}]"


@dataclass(frozen=True)
class ParseResult:
    """Either a document (errors empty) or errors (document None)."""

    document: Optional[ModelDocument]
    errors: tuple[ParseError, ...] = ()

    @property
    def ok(self) -> bool:
        return self.document is not None

    def unwrap(self) -> ModelDocument:
        if self.document is None:
            rendered = "; ".join(err.render() for err in self.errors)
            raise ModelError(f"model text did not parse: {rendered}")
        return self.document


# ---------------------------------------------------------------------------
# Tokenizer
# ---------------------------------------------------------------------------

_PUNCT = {"[": "LBRACK", "]": "RBRACK", "{": "LBRACE", "}": "RBRACE", ",": "COMMA"}
_WORD_STOP = set(' \t[]{},"#')

_ESCAPES = {'"': '"', "\\": "\\", "n": "\n", "t": "\t", "r": "\r"}
_ESCAPES_OUT = {'"': '\\"', "\\": "\\\\", "\n": "\\n", "\t": "\\t", "\r": "\\r"}


@dataclass(frozen=True)
class Token:
    type: str  # WORD | STRING | LBRACK | RBRACK | LBRACE | RBRACE | COMMA | ARROW
    value: str
    column: int
    length: int


class _TokenError(Exception):
    def __init__(self, error: ParseError):
        super().__init__(error.message)
        self.error = error


def _tokenize_line(text: str, line_no: int) -> list[Token]:
    tokens: list[Token] = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch in " \t":
            i += 1
            continue
        if ch == "#":
            break
        if text.startswith("->", i):
            tokens.append(Token("ARROW", "->", i + 1, 2))
            i += 2
            continue
        if ch in _PUNCT:
            tokens.append(Token(_PUNCT[ch], ch, i + 1, 1))
            i += 1
            continue
        if ch == '"':
            value, end = _scan_string(text, i, line_no)
            tokens.append(Token("STRING", value, i + 1, end - i))
            i = end
            continue
        start = i
        while i < len(text) and text[i] not in _WORD_STOP and not text.startswith("->", i):
            i += 1
        tokens.append(Token("WORD", text[start:i], start + 1, i - start))
    return tokens


def _scan_string(text: str, start: int, line_no: int) -> tuple[str, int]:
    parts: list[str] = []
    i = start + 1
    while i < len(text):
        ch = text[i]
        if ch == '"':
            return "".join(parts), i + 1
        if ch == "\\":
            if i + 1 >= len(text):
                break
            esc = text[i + 1]
            if esc in _ESCAPES:
                parts.append(_ESCAPES[esc])
                i += 2
                continue
            if esc == "u":
                hex_digits = text[i + 2 : i + 6]
                if len(hex_digits) == 4 and all(c in "0123456789abcdefABCDEF" for c in hex_digits):
                    parts.append(chr(int(hex_digits, 16)))
                    i += 6
                    continue
            raise _TokenError(
                ParseError(
                    BAD_STRING,
                    f"invalid escape sequence \\{esc}",
                    SourceSpan(line_no, i + 1, 2),
                )
            )
        parts.append(ch)
        i += 1
    raise _TokenError(
        ParseError(BAD_STRING, "unterminated string", SourceSpan(line_no, start + 1, max(1, len(text) - start)))
    )


def _quote(value: str) -> str:
    out = ['"']
    for ch in value:
        if ch in _ESCAPES_OUT:
            out.append(_ESCAPES_OUT[ch])
        elif ord(ch) < 0x20:
            out.append(f"\\u{ord(ch):04x}")
        else:
            out.append(ch)
    out.append('"')
    return "".join(out)


def _bare_ok(value: str) -> bool:
    return bool(value) and not any(c in _WORD_STOP or c.isspace() for c in value) and "->" not in value


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


class _Cursor:
    """Token stream over one line with span-aware error reporting."""

    def __init__(self, tokens: list[Token], line_no: int, line_text: str):
        self.tokens = tokens
        self.pos = 0
        self.line_no = line_no
        self.line_text = line_text

    def peek(self) -> Optional[Token]:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def next(self) -> Optional[Token]:
        token = self.peek()
        if token is not None:
            self.pos += 1
        return token

    def at_end(self) -> bool:
        return self.pos >= len(self.tokens)

    def span_here(self) -> SourceSpan:
        token = self.peek()
        if token is not None:
            return SourceSpan(self.line_no, token.column, token.length)
        column = max(1, len(self.line_text.rstrip()) or 1)
        return SourceSpan(self.line_no, column, 1)

    def fail(self, code: str, message: str) -> "_ParseAbort":
        return _ParseAbort(ParseError(code, message, self.span_here()))

    def expect_string(self, what: str) -> str:
        token = self.peek()
        if token is None or token.type != "STRING":
            raise self.fail(SYNTAX, f"expected {what} as a quoted string")
        self.next()
        return token.value

    def expect_word(self, what: str, *choices: str) -> Token:
        token = self.peek()
        if token is None or token.type != "WORD" or (choices and token.value not in choices):
            expected = f"one of {'/'.join(choices)}" if choices else what
            raise self.fail(SYNTAX, f"expected {expected}")
        self.next()
        return token

    def expect_type(self, token_type: str, what: str) -> Token:
        token = self.peek()
        if token is None or token.type != token_type:
            raise self.fail(SYNTAX, f"expected {what}")
        self.next()
        return token

    def expect_done(self) -> None:
        if not self.at_end():
            raise self.fail(SYNTAX, "unexpected trailing input")


class _ParseAbort(Exception):
    def __init__(self, error: ParseError):
        super().__init__(error.message)
        self.error = error


@dataclass
class _BoundaryDraft:
    actor: str
    opened_at: SourceSpan
    elements: list[SRElement] = field(default_factory=list)
    element_kinds: dict[str, str] = field(default_factory=dict)
    decompositions: list[DecompositionLink] = field(default_factory=list)
    means_ends: list[MeansEndLink] = field(default_factory=list)


class _Parser:
    def __init__(self) -> None:
        self.errors: list[ParseError] = []
        self.model_name: Optional[str] = None
        self.actors: list[Actor] = []
        self.actor_ids: set[str] = set()
        self.actor_names: dict[str, list[str]] = {}
        self.deps: list[Dependency] = []
        self.dep_ids: set[str] = set()
        self.scopes: list[ScopeDef] = []
        self.scope_names: set[str] = set()
        self.boundaries: list[SRBoundary] = []
        self.boundary_actors: set[str] = set()
        self.open_boundary: Optional[_BoundaryDraft] = None
        self.spans: dict[str, SourceSpan] = {}

    # -- helpers ------------------------------------------------------------

    def err(self, error: ParseError) -> None:
        self.errors.append(error)

    def unique_id(self, base: str, taken: set[str]) -> str:
        if base not in taken:
            return base
        counter = 2
        while f"{base}-{counter}" in taken:
            counter += 1
        return f"{base}-{counter}"

    def resolve_actor(self, ref: str, cursor: _Cursor) -> str:
        if ref in self.actor_ids:
            return ref
        matches = self.actor_names.get(ref, [])
        if len(matches) == 1:
            return matches[0]
        if len(matches) > 1:
            raise cursor.fail(
                UNKNOWN_ACTOR,
                f"actor name {ref!r} is ambiguous (ids: {', '.join(sorted(matches))}); use an id",
            )
        raise cursor.fail(UNKNOWN_ACTOR, f"unknown actor {ref!r} (actors must be declared first)")

    def read_actor_ref(self, cursor: _Cursor, what: str) -> str:
        token = cursor.peek()
        if token is None or token.type not in ("STRING", "WORD"):
            raise cursor.fail(SYNTAX, f"expected {what} (actor id or name)")
        cursor.next()
        return self.resolve_actor(token.value, cursor)

    def read_tag_list(self, cursor: _Cursor) -> frozenset[str]:
        cursor.expect_type("LBRACK", "'[' to open the tag list")
        tags: set[str] = set()
        if cursor.peek() is not None and cursor.peek().type == "RBRACK":
            cursor.next()
            return frozenset()
        while True:
            token = cursor.peek()
            if token is None or token.type not in ("WORD", "STRING"):
                raise cursor.fail(SYNTAX, "expected a tag")
            cursor.next()
            tags.add(token.value)
            token = cursor.next()
            if token is None:
                raise cursor.fail(SYNTAX, "expected ',' or ']' in tag list")
            if token.type == "RBRACK":
                return frozenset(tags)
            if token.type != "COMMA":
                raise _ParseAbort(
                    ParseError(SYNTAX, "expected ',' or ']' in tag list", SourceSpan(cursor.line_no, token.column, token.length))
                )

    def read_clauses(self, cursor: _Cursor, allowed: Sequence[str]) -> dict[str, object]:
        """Trailing `id "..."` / `kind word` / `tags [...]` clauses, any order."""
        clauses: dict[str, object] = {}
        while not cursor.at_end():
            token = cursor.expect_word("a clause", *allowed)
            if token.value in clauses:
                raise cursor.fail(SYNTAX, f"duplicate {token.value} clause")
            if token.value == "id":
                clauses["id"] = cursor.expect_string("an id")
            elif token.value == "kind":
                clauses["kind"] = cursor.expect_word("a kind word").value
            elif token.value == "tags":
                clauses["tags"] = self.read_tag_list(cursor)
        return clauses

    # -- statements ----------------------------------------------------------

    def parse_line(self, line_no: int, text: str) -> None:
        try:
            tokens = _tokenize_line(text, line_no)
        except _TokenError as exc:
            self.err(exc.error)
            return
        if not tokens:
            return
        cursor = _Cursor(tokens, line_no, text)
        try:
            if self.open_boundary is not None:
                self.parse_boundary_line(cursor)
            else:
                self.parse_statement(cursor)
        except _ParseAbort as exc:
            self.err(exc.error)

    def parse_statement(self, cursor: _Cursor) -> None:
        keyword = cursor.expect_word("a statement keyword", "model", "actor", "dep", "scope", "sr")
        if keyword.value == "model":
            name = cursor.expect_string("the model name")
            cursor.expect_done()
            if self.model_name is not None:
                raise _ParseAbort(
                    ParseError(SYNTAX, "model name declared twice", SourceSpan(cursor.line_no, keyword.column, keyword.length))
                )
            self.model_name = name
        elif keyword.value == "actor":
            self.parse_actor(cursor, keyword)
        elif keyword.value == "dep":
            self.parse_dep(cursor, keyword)
        elif keyword.value == "scope":
            self.parse_scope(cursor, keyword)
        else:
            self.parse_sr_open(cursor, keyword)

    def parse_actor(self, cursor: _Cursor, keyword: Token) -> None:
        name = cursor.expect_string("the actor name")
        clauses = self.read_clauses(cursor, ("id", "kind", "tags"))
        kind = clauses.get("kind", "role")
        if kind not in ACTOR_KINDS:
            raise _ParseAbort(
                ParseError(
                    BAD_KIND,
                    f"unknown actor kind {kind!r}; expected one of {', '.join(sorted(ACTOR_KINDS))}",
                    SourceSpan(cursor.line_no, keyword.column, keyword.length),
                )
            )
        if not name:
            raise _ParseAbort(
                ParseError(SYNTAX, "actor name must not be empty", SourceSpan(cursor.line_no, keyword.column, keyword.length))
            )
        explicit_id = clauses.get("id")
        if explicit_id is not None:
            if explicit_id in self.actor_ids:
                raise _ParseAbort(
                    ParseError(DUPLICATE_ID, f"actor id {explicit_id!r} already declared", SourceSpan(cursor.line_no, keyword.column, keyword.length))
                )
            actor_id = str(explicit_id)
        else:
            actor_id = self.unique_id(slugify(name), self.actor_ids)
        actor = Actor(id=actor_id, name=name, kind=str(kind), tags=clauses.get("tags", frozenset()))
        self.actors.append(actor)
        self.actor_ids.add(actor_id)
        self.actor_names.setdefault(name, []).append(actor_id)
        self.spans[f"actor:{actor_id}"] = SourceSpan(cursor.line_no, keyword.column, keyword.length)

    def parse_dep(self, cursor: _Cursor, keyword: Token) -> None:
        kind = cursor.expect_word("a dependum kind").value
        if kind not in DEPENDUM_KINDS:
            raise _ParseAbort(
                ParseError(
                    BAD_KIND,
                    f"unknown dependum kind {kind!r}; expected one of {', '.join(sorted(DEPENDUM_KINDS))}",
                    SourceSpan(cursor.line_no, keyword.column, keyword.length),
                )
            )
        name = cursor.expect_string("the dependum name")
        cursor.expect_word("'from'", "from")
        depender = self.read_actor_ref(cursor, "the depender")
        cursor.expect_word("'to'", "to")
        dependee_span = cursor.span_here()
        dependee = self.read_actor_ref(cursor, "the dependee")
        clauses = self.read_clauses(cursor, ("id", "tags"))
        if depender == dependee:
            raise _ParseAbort(
                ParseError(
                    SYNTAX,
                    f"dependency from {depender!r} to itself is not allowed",
                    dependee_span,
                )
            )
        explicit_id = clauses.get("id")
        if explicit_id is not None:
            if explicit_id in self.dep_ids:
                raise _ParseAbort(
                    ParseError(DUPLICATE_ID, f"dependency id {explicit_id!r} already declared", SourceSpan(cursor.line_no, keyword.column, keyword.length))
                )
            dep_id = str(explicit_id)
        else:
            dep_id = self.unique_id(slugify(name), self.dep_ids)
        dependum = Dependum(name=name, kind=kind, tags=clauses.get("tags", frozenset()))
        self.deps.append(Dependency(id=dep_id, depender=depender, dependee=dependee, dependum=dependum))
        self.dep_ids.add(dep_id)
        self.spans[f"dep:{dep_id}"] = SourceSpan(cursor.line_no, keyword.column, keyword.length)

    def parse_scope(self, cursor: _Cursor, keyword: Token) -> None:
        name = cursor.expect_string("the scope name")
        cursor.expect_type("LBRACK", "'[' to open the actor list")
        actors: list[str] = []
        token = cursor.peek()
        if token is not None and token.type == "RBRACK":
            cursor.next()
        else:
            while True:
                actors.append(self.read_actor_ref(cursor, "a scoped actor"))
                token = cursor.next()
                if token is None:
                    raise cursor.fail(SYNTAX, "expected ',' or ']' in scope actor list")
                if token.type == "RBRACK":
                    break
                if token.type != "COMMA":
                    raise _ParseAbort(
                        ParseError(SYNTAX, "expected ',' or ']' in scope actor list", SourceSpan(cursor.line_no, token.column, token.length))
                    )
        cursor.expect_done()
        if name in self.scope_names:
            raise _ParseAbort(
                ParseError(DUPLICATE_ID, f"scope {name!r} already declared", SourceSpan(cursor.line_no, keyword.column, keyword.length))
            )
        if not actors:
            raise _ParseAbort(
                ParseError(SYNTAX, f"scope {name!r} lists no actors", SourceSpan(cursor.line_no, keyword.column, keyword.length))
            )
        self.scope_names.add(name)
        self.scopes.append(ScopeDef(name=name, actors=tuple(sorted(set(actors)))))

    def parse_sr_open(self, cursor: _Cursor, keyword: Token) -> None:
        actor_id = self.read_actor_ref(cursor, "the boundary actor")
        cursor.expect_type("LBRACE", "'{' to open the boundary")
        cursor.expect_done()
        span = SourceSpan(cursor.line_no, keyword.column, keyword.length)
        if actor_id in self.boundary_actors:
            raise _ParseAbort(
                ParseError(DUPLICATE_ID, f"actor {actor_id!r} already has a boundary", span)
            )
        self.boundary_actors.add(actor_id)
        self.open_boundary = _BoundaryDraft(actor=actor_id, opened_at=span)
        self.spans[f"sr:{actor_id}"] = span

    def parse_boundary_line(self, cursor: _Cursor) -> None:
        draft = self.open_boundary
        assert draft is not None
        token = cursor.peek()
        if token is not None and token.type == "RBRACE":
            cursor.next()
            cursor.expect_done()
            self.boundaries.append(
                SRBoundary(
                    actor=draft.actor,
                    elements=tuple(draft.elements),
                    decompositions=tuple(draft.decompositions),
                    means_ends=tuple(draft.means_ends),
                )
            )
            self.open_boundary = None
            return
        keyword = cursor.expect_word(
            "an element kind, 'decompose', 'means', or '}'",
            "goal", "softgoal", "task", "resource", "decompose", "means",
        )
        if keyword.value == "decompose":
            parent = cursor.expect_string("the parent task name")
            cursor.expect_type("ARROW", "'->'")
            child_kind = cursor.expect_word("the child kind", *sorted(DEPENDUM_KINDS)).value
            child = cursor.expect_string("the child element name")
            cursor.expect_done()
            self.check_element(cursor, draft, parent, keyword)
            self.check_element(cursor, draft, child, keyword, expected_kind=child_kind)
            draft.decompositions.append(DecompositionLink(parent=parent, child=child))
        elif keyword.value == "means":
            means_kind = cursor.expect_word("the means kind", "task", "resource").value
            means = cursor.expect_string("the means element name")
            cursor.expect_type("ARROW", "'->'")
            cursor.expect_word("'goal'", "goal")
            end = cursor.expect_string("the end goal name")
            cursor.expect_done()
            self.check_element(cursor, draft, means, keyword, expected_kind=means_kind)
            self.check_element(cursor, draft, end, keyword, expected_kind="goal")
            draft.means_ends.append(MeansEndLink(means=means, end=end))
        else:
            name = cursor.expect_string("the element name")
            tags: frozenset[str] = frozenset()
            if not cursor.at_end():
                cursor.expect_word("'tags'", "tags")
                tags = self.read_tag_list(cursor)
                cursor.expect_done()
            if name in draft.element_kinds:
                raise _ParseAbort(
                    ParseError(
                        DUPLICATE_ID,
                        f"element {name!r} already declared in this boundary",
                        SourceSpan(cursor.line_no, keyword.column, keyword.length),
                    )
                )
            draft.element_kinds[name] = keyword.value
            draft.elements.append(SRElement(name=name, kind=keyword.value, tags=tags))

    def check_element(
        self,
        cursor: _Cursor,
        draft: _BoundaryDraft,
        name: str,
        keyword: Token,
        expected_kind: Optional[str] = None,
    ) -> None:
        declared = draft.element_kinds.get(name)
        span = SourceSpan(cursor.line_no, keyword.column, keyword.length)
        if declared is None:
            raise _ParseAbort(
                ParseError(SYNTAX, f"element {name!r} is not declared in this boundary", span)
            )
        if expected_kind is not None and declared != expected_kind:
            raise _ParseAbort(
                ParseError(
                    BAD_KIND,
                    f"element {name!r} is a {declared}, not a {expected_kind}",
                    span,
                )
            )

    # -- assembly -----------------------------------------------------------

    def finish(self, line_count: int) -> ParseResult:
        if self.open_boundary is not None:
            self.err(
                ParseError(
                    SYNTAX,
                    f"boundary for {self.open_boundary.actor!r} is never closed with '}}'",
                    self.open_boundary.opened_at,
                )
            )
        model = SDModel(
            name=self.model_name if self.model_name is not None else DEFAULT_MODEL_NAME,
            actors=tuple(self.actors),
            dependencies=tuple(self.deps),
        )
        document = ModelDocument(
            model=model,
            boundaries=tuple(self.boundaries),
            scopes=tuple(self.scopes),
        )
        # Safety net for rules not caught line-by-line (e.g. SR link cycles):
        # recheck the finished document and surface violations as parse errors.
        if not self.errors:
            for violation in validate_model(model, document.boundaries, document.scopes):
                self.err(_violation_error(violation, self.spans, line_count))
        if self.errors:
            return ParseResult(document=None, errors=tuple(self.errors))
        return ParseResult(document=canonical_document(document))


def _violation_error(violation: Violation, spans: dict[str, SourceSpan], line_count: int) -> ParseError:
    span = (
        spans.get(f"sr:{violation.subject}")
        or spans.get(f"dep:{violation.subject}")
        or spans.get(f"actor:{violation.subject}")
        or SourceSpan(max(1, line_count), 1, 1)
    )
    return ParseError(SYNTAX, violation.message, span)


def parse_model(text: str) -> ParseResult:
    """Parse DSL source; collects every error instead of stopping at the first."""
    parser = _Parser()
    lines = text.split("\n")
    for line_no, raw in enumerate(lines, start=1):
        parser.parse_line(line_no, raw.rstrip("\r"))
    return parser.finish(len(lines))


# ---------------------------------------------------------------------------
# Serializer
# ---------------------------------------------------------------------------


def canonical_document(document: ModelDocument) -> ModelDocument:
    """Normal form: every collection sorted, so equality means structural equality."""
    model = document.model
    return ModelDocument(
        model=SDModel(
            name=model.name,
            actors=tuple(sorted(model.actors, key=lambda a: a.id)),
            dependencies=tuple(sorted(model.dependencies, key=lambda d: d.id)),
        ),
        boundaries=tuple(
            SRBoundary(
                actor=b.actor,
                elements=tuple(sorted(b.elements, key=lambda e: e.name)),
                decompositions=tuple(sorted(b.decompositions, key=lambda l: (l.parent, l.child))),
                means_ends=tuple(sorted(b.means_ends, key=lambda l: (l.means, l.end))),
            )
            for b in sorted(document.boundaries, key=lambda b: b.actor)
        ),
        scopes=tuple(
            ScopeDef(name=s.name, actors=tuple(sorted(s.actors)))
            for s in sorted(document.scopes, key=lambda s: s.name)
        ),
    )


def _format_tags(tags: frozenset[str]) -> str:
    rendered = ", ".join(tag if _bare_ok(tag) else _quote(tag) for tag in sorted(tags))
    return f" tags [{rendered}]"


def serialize_model(document: ModelDocument) -> str:
    """Emit canonical DSL text (LF line endings, everything sorted by id)."""
    violations = validate_model(document.model, document.boundaries, document.scopes)
    if violations:
        raise ModelError(
            "cannot serialize an invalid model: " + "; ".join(v.message for v in violations)
        )
    doc = canonical_document(document)
    lines: list[str] = [f"model {_quote(doc.model.name)}"]

    if doc.model.actors:
        lines.append("")
    for actor in doc.model.actors:
        line = f"actor {_quote(actor.name)} id {_quote(actor.id)} kind {actor.kind}"
        if actor.tags:
            line += _format_tags(actor.tags)
        lines.append(line)

    if doc.model.dependencies:
        lines.append("")
    for dep in doc.model.dependencies:
        line = (
            f"dep {dep.dependum.kind} {_quote(dep.dependum.name)} "
            f"from {_quote(dep.depender)} to {_quote(dep.dependee)} id {_quote(dep.id)}"
        )
        if dep.dependum.tags:
            line += _format_tags(dep.dependum.tags)
        lines.append(line)

    if doc.scopes:
        lines.append("")
    for scope in doc.scopes:
        actor_list = ", ".join(a if _bare_ok(a) else _quote(a) for a in scope.actors)
        lines.append(f"scope {_quote(scope.name)} [{actor_list}]")

    for boundary in doc.boundaries:
        lines.append("")
        lines.append(f"sr {_quote(boundary.actor)} {{")
        for element in boundary.elements:
            line = f"  {element.kind} {_quote(element.name)}"
            if element.tags:
                line += _format_tags(element.tags)
            lines.append(line)
        kinds = boundary.element_map()
        for link in boundary.decompositions:
            child_kind = kinds[link.child].kind
            lines.append(f"  decompose {_quote(link.parent)} -> {child_kind} {_quote(link.child)}")
        for link in boundary.means_ends:
            means_kind = kinds[link.means].kind
            lines.append(f"  means {means_kind} {_quote(link.means)} -> goal {_quote(link.end)}")
        lines.append("}")

    return "\n".join(lines) + "\n"
