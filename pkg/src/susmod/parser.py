"""Recursive-descent parser for models (.susm), patterns (.susp),
catalogues (.susc) and binding files.

Parse functions return the parsed object and raise ``DSLError`` carrying
all diagnostics when any of them is an error. Warnings (such as dimension
alias notes) are appended to the optional ``diagnostics`` list.
"""

from __future__ import annotations

import os
from pathlib import Path

from .catalogue import Catalogue, CatalogueError
from .diagnostics import Diagnostic, SourceSpan, error, has_errors, sort_diagnostics, warning
from .lexer import LexError, Token, tokenize
from .model import (
    DIMENSION_ALIASES,
    Dimension,
    Element,
    ElementKind,
    Fragment,
    Link,
    LinkKind,
    MissingDimension,
    Model,
    Strategy,
    auto_link_id,
    check_dimensions,
)
from .patterns import Archetype, Existing, Fresh, PatternDoc, Role
from .validator import validate_pattern

KINDS = {k.value: k for k in ElementKind}
LINK_KINDS = {k.value: k for k in LinkKind}
STRATEGIES = {s.value: s for s in Strategy}
CANONICAL_DIMENSIONS = ", ".join(d.value for d in Dimension)


class DSLError(Exception):
    def __init__(self, diagnostics: list[Diagnostic]) -> None:
        self.diagnostics = sort_diagnostics(diagnostics)
        first = next((d for d in self.diagnostics if d.is_error), None)
        super().__init__(first.format() if first else "parse failed")


class _Abort(Exception):
    pass


class _ModelBuilder:
    """Collects declarations, reporting duplicates instead of overwriting."""

    def __init__(self, parser: "Parser", name: str) -> None:
        self.p = parser
        self.name = name
        self.elements: dict[str, Element] = {}
        self.links: dict[str, Link] = {}
        self.fragments: dict[str, Fragment] = {}
        self.inline_fragments: dict[str, tuple[list[Token], str | None, SourceSpan]] = {}
        self.meta: dict[str, str] = {}
        self.refs: list[Token] = []

    def add_element(self, el: Element) -> None:
        if el.id in self.elements or el.id in self.links:
            self.p.diag(error("V1", f"duplicate id '{el.id}'", el.span))
            return
        self.elements[el.id] = el

    def add_link(self, ln: Link) -> None:
        if ln.id in self.links or ln.id in self.elements:
            hint = "" if ln.id != auto_link_id(ln.kind, ln.source, ln.target) else " (name it with 'as <id>')"
            self.p.diag(error("V1", f"duplicate link id '{ln.id}'{hint}", ln.span))
            return
        self.links[ln.id] = ln

    def fragment_name_free(self, name: str, span: SourceSpan) -> bool:
        if name in self.fragments or name in self.inline_fragments:
            self.p.diag(error("V1", f"duplicate fragment '{name}'", span))
            return False
        return True

    def build(self) -> Model:
        for tok in self.refs:
            if tok.value not in self.elements:
                self.p.diag(error("V1", f"unknown element '{tok.value}'", tok.span))
        fragments = dict(self.fragments)
        for name, (members, anchor, span) in self.inline_fragments.items():
            ids = frozenset(t.value for t in members)
            elements = frozenset(i for i in ids if i in self.elements)
            for t in members:
                if t.value not in self.elements:
                    self.p.diag(error("V1", f"fragment '{name}' refers to unknown element '{t.value}'", t.span))
            links = frozenset(
                lid for lid, ln in self.links.items() if ln.source in elements and ln.target in elements
            )
            fragments[name] = Fragment(name, elements, links, anchor, span=span)
        return Model(self.name, self.elements, self.links, dict(sorted(fragments.items())), self.meta)


class Parser:
    def __init__(self, text: str, file: str | os.PathLike = "<input>", base_dir: str | os.PathLike | None = None) -> None:
        self.file = str(file)
        if base_dir is None:
            base_dir = Path(self.file).parent if self.file != "<input>" else Path.cwd()
        self.base_dir = Path(base_dir)
        self.diagnostics: list[Diagnostic] = []
        self.pos = 0
        try:
            self.tokens = tokenize(text, self.file)
        except LexError as exc:
            self.tokens = []
            self.diagnostics.append(error("S1", str(exc), exc.span))

    # token helpers

    def diag(self, d: Diagnostic) -> None:
        self.diagnostics.append(d)

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def peek(self, kind: str, value: str | None = None, offset: int = 0) -> bool:
        t = self.tokens[min(self.pos + offset, len(self.tokens) - 1)]
        return t.kind == kind and (value is None or t.value == value)

    def peek_word(self, value: str) -> bool:
        return self.peek("IDENT", value)

    def advance(self) -> Token:
        t = self.tokens[self.pos]
        if t.kind != "EOF":
            self.pos += 1
        return t

    def fail(self, message: str, tok: Token | None = None) -> None:
        tok = tok or self.tok
        self.diag(error("S1", message, tok.span))
        raise _Abort

    def describe(self, tok: Token) -> str:
        if tok.kind == "EOF":
            return "end of file"
        if tok.kind == "STRING":
            return "string"
        return f"'{tok.value}'"

    def missing_at(self) -> SourceSpan:
        """Where a missing token belongs: right after the previous token when
        the next one sits on a later line, otherwise at the next token."""
        cur = self.tok.span
        if self.pos == 0:
            return cur
        prev = self.tokens[self.pos - 1].span
        if prev.line < cur.line:
            return SourceSpan(prev.file, prev.line, prev.column + prev.length)
        return cur

    def expect(self, kind: str, what: str | None = None) -> Token:
        if not self.peek(kind):
            self.diag(error("S1", f"expected {what or repr(kind)}, found {self.describe(self.tok)}", self.missing_at()))
            raise _Abort
        return self.advance()

    def expect_word(self, value: str) -> Token:
        if not self.peek_word(value):
            self.fail(f"expected '{value}', found {self.describe(self.tok)}")
        return self.advance()

    def skip_semis(self) -> None:
        while self.peek(";"):
            self.advance()

    def name(self) -> Token:
        """Identifier or quoted string used as a name."""
        if self.peek("IDENT") or self.peek("STRING"):
            return self.advance()
        self.fail(f"expected a name, found {self.describe(self.tok)}")

    def _run(self, method):
        if not self.tokens:
            raise DSLError(self.diagnostics)
        try:
            result = method()
        except _Abort:
            result = None
        if result is None or has_errors(self.diagnostics):
            raise DSLError(self.diagnostics)
        return result

    # shared pieces

    def dim_list(self) -> frozenset[Dimension]:
        self.expect("[", "'['")
        dims: set[Dimension] = set()
        while not self.peek("]"):
            t = self.expect("IDENT", "a dimension name")
            word = t.value.lower()
            if word in DIMENSION_ALIASES:
                canonical = DIMENSION_ALIASES[word]
                self.diag(warning("W1", f"dimension '{t.value}' is an alias of '{canonical.value}'", t.span))
                dims.add(canonical)
            else:
                try:
                    dims.add(Dimension(word))
                except ValueError:
                    self.diag(error(
                        "S2", f"unknown dimension '{t.value}'; expected one of {CANONICAL_DIMENSIONS}", t.span
                    ))
            if not self.peek("]"):
                self.expect(",", "',' or ']'")
        self.advance()
        return frozenset(dims)

    def string_list(self) -> list[str]:
        self.expect("[", "'['")
        out = []
        while not self.peek("]"):
            out.append(self.name().value)
            if not self.peek("]"):
                self.expect(",", "',' or ']'")
        self.advance()
        return out

    def attr_block(self) -> dict[str, str]:
        self.expect("{", "'{'")
        attrs: dict[str, str] = {}
        while not self.peek("}"):
            key = self.expect("IDENT", "an attribute name")
            self.expect("=", "'='")
            value = self.expect("STRING", "a quoted value")
            if key.value in attrs:
                self.diag(error("S5", f"duplicate attribute '{key.value}'", key.span))
            attrs[key.value] = value.value
            if self.peek(","):
                self.advance()
        self.advance()
        return attrs

    def element_kind(self, tok: Token) -> ElementKind:
        return KINDS[tok.value]

    # models

    def model_items(self, b: _ModelBuilder, *, roles: dict[str, Role] | None = None,
                    allow_fragments: bool = True) -> None:
        while not self.peek("}"):
            if self.peek("EOF"):
                self.fail("expected '}', found end of file")
            t = self.tok
            if t.kind != "IDENT":
                self.fail(f"expected a declaration, found {self.describe(t)}")
            if t.value in KINDS:
                self.element_decl(b, archetype=roles is not None)
            elif t.value == "link":
                self.link_decl(b, roles)
            elif t.value == "fragment" and allow_fragments:
                self.fragment_decl(b)
            elif t.value == "meta" and roles is None:
                self.advance()
                key = self.expect("IDENT", "a meta key")
                self.expect("=", "'='")
                value = self.expect("STRING", "a quoted value")
                if key.value in b.meta:
                    self.diag(error("S5", f"duplicate meta key '{key.value}'", key.span))
                b.meta[key.value] = value.value
            elif t.value == "role" and roles is not None:
                self.role_decl(b, roles)
            else:
                self.fail(f"unknown declaration '{t.value}'")
            self.skip_semis()

    def element_decl(self, b: _ModelBuilder, archetype: bool = False) -> None:
        kind = self.element_kind(self.advance())
        ident = self.expect("IDENT", "an element id")
        dims: frozenset[Dimension] = frozenset()
        tagged = False
        label = ""
        attrs: dict[str, str] = {}
        seen: set[str] = set()
        while True:
            if self.peek_word("dims") and "dims" not in seen:
                self.advance()
                reported = len(self.diagnostics)
                dims = self.dim_list()
                seen.add("dims")
                if has_errors(self.diagnostics[reported:]):
                    seen.add("bad-dims")
            elif self.peek_word("tagged") and "tagged" not in seen:
                self.advance()
                tagged = True
                seen.add("tagged")
            elif self.peek("STRING") and "label" not in seen:
                label = self.advance().value
                seen.add("label")
            elif self.peek("{") and "attrs" not in seen:
                attrs = self.attr_block()
                seen.add("attrs")
            else:
                break
        el = Element(ident.value, kind, label, dims, tagged, attrs, span=ident.span)
        if not archetype and "bad-dims" not in seen:
            try:
                check_dimensions(el)
            except MissingDimension as exc:
                self.diag(error("S3", str(exc), ident.span))
        b.add_element(el)

    def endpoint(self, b: _ModelBuilder, roles: dict[str, Role] | None) -> str:
        if self.peek("ROLE"):
            t = self.advance()
            if roles is None:
                self.fail(f"role reference '{t.value}' outside a pattern archetype", t)
            role = roles.get(t.value[1:])
            if role is None:
                self.diag(error("V1", f"undeclared role '{t.value}'", t.span))
                return t.value
            if t.value not in b.elements:
                b.elements[t.value] = Element(t.value, role.kind, t.value, span=role.span)
            return t.value
        t = self.expect("IDENT", "an element id")
        b.refs.append(t)
        return t.value

    def link_decl(self, b: _ModelBuilder, roles: dict[str, Role] | None = None) -> None:
        self.advance()
        kt = self.expect("IDENT", "a link kind")
        if kt.value not in LINK_KINDS:
            self.diag(error("S2", f"unknown link kind '{kt.value}'; expected one of {', '.join(LINK_KINDS)}", kt.span))
            raise _Abort
        kind = LINK_KINDS[kt.value]
        self.expect("(", "'('")
        src = self.endpoint(b, roles)
        self.expect("ARROW", "'->'")
        dst = self.endpoint(b, roles)
        self.expect(")", "')'")
        strategy = None
        if self.peek_word("strategy"):
            self.advance()
            self.expect("=", "'='")
            st = self.expect("IDENT", "a mitigation strategy")
            if st.value not in STRATEGIES:
                self.diag(error("S2", f"unknown strategy '{st.value}'; expected one of {', '.join(STRATEGIES)}", st.span))
            else:
                strategy = STRATEGIES[st.value]
                if kind is not LinkKind.MITIGATES:
                    self.diag(error("V2", f"strategy is only allowed on mitigates links, not {kind.value}", st.span))
        link_id = auto_link_id(kind, src, dst)
        if self.peek_word("as"):
            self.advance()
            link_id = self.expect("IDENT", "a link id").value
        b.add_link(Link(link_id, kind, src, dst, strategy, span=kt.span))

    def fragment_decl(self, b: _ModelBuilder) -> None:
        self.advance()
        name = self.expect("IDENT", "a fragment name")
        anchor = None
        if self.peek_word("at"):
            self.advance()
            at = self.expect("IDENT", "an anchor element id")
            b.refs.append(at)
            anchor = at.value
        if self.peek_word("from"):
            self.advance()
            path_tok = self.expect("STRING", "a quoted path")
            if b.fragment_name_free(name.value, name.span):
                self.external_fragment(b, name, anchor, path_tok)
            return
        self.expect("{", "'{' or 'from'")
        members: list[Token] = []
        while not self.peek("}"):
            members.append(self.expect("IDENT", "an element id"))
            if not self.peek("}"):
                self.expect(",", "',' or '}'")
        self.advance()
        if b.fragment_name_free(name.value, name.span):
            b.inline_fragments[name.value] = (members, anchor, name.span)

    def external_fragment(self, b: _ModelBuilder, name: Token, anchor: str | None, path_tok: Token) -> None:
        path = self.base_dir / path_tok.value
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            self.diag(error("S4", f"cannot read fragment file '{path_tok.value}': {exc.strerror}", path_tok.span))
            return
        sub = Parser(text, path)
        try:
            model = sub.parse_model()
        except DSLError:
            model = None
        self.diagnostics.extend(sub.diagnostics)
        if model is None:
            self.diag(error("S4", f"fragment file '{path_tok.value}' has errors", path_tok.span))
            return
        if model.fragments:
            self.diag(error("S4", f"fragment file '{path_tok.value}' may not declare fragments itself", path_tok.span))
            return
        for el in model.elements.values():
            b.add_element(el)
        for ln in model.links.values():
            b.add_link(ln)
        b.fragments[name.value] = Fragment(
            name.value,
            frozenset(model.elements),
            frozenset(model.links),
            anchor,
            source=path_tok.value,
            span=name.span,
        )

    def _model(self) -> Model:
        self.expect_word("model")
        name = self.expect("STRING", "a quoted model name")
        self.expect("{", "'{'")
        b = _ModelBuilder(self, name.value)
        self.model_items(b)
        self.advance()
        self.skip_semis()
        self.expect("EOF", "end of file")
        return b.build()

    def parse_model(self) -> Model:
        return self._run(self._model)

    # patterns

    def role_decl(self, b: _ModelBuilder, roles: dict[str, Role]) -> None:
        self.advance()
        name = self.expect("IDENT", "a role name")
        self.expect(":", "':'")
        kt = self.expect("IDENT", "an element kind")
        if kt.value not in KINDS:
            self.diag(error("S2", f"unknown element kind '{kt.value}'", kt.span))
            return
        if name.value in roles:
            self.diag(error("S5", f"duplicate role '{name.value}'", name.span))
            return
        roles[name.value] = Role(name.value, KINDS[kt.value], span=name.span)

    def archetype_block(self) -> Archetype:
        start = self.advance()
        description = self.advance().value if self.peek("STRING") else ""
        self.expect("{", "'{'")
        b = _ModelBuilder(self, "archetype")
        roles: dict[str, Role] = {}
        self.model_items(b, roles=roles, allow_fragments=False)
        self.advance()
        body = b.build()
        return Archetype(tuple(roles.values()), body, description, span=start.span)

    def pattern_block(self, source: str | None = None) -> PatternDoc:
        head = self.expect_word("pattern")
        name = self.expect("STRING", "a quoted pattern name")
        self.expect("{", "'{'")
        fields: dict[str, object] = {}
        attrs: dict[str, str] = {}
        text_fields = ("summary", "applicability", "content", "example", "discussion")
        while not self.peek("}"):
            t = self.expect("IDENT", "a template field")
            key = t.value
            if key in fields and key != "attr":
                self.diag(error("S5", f"field '{key}' given twice", t.span))
            if key in text_fields:
                fields[key] = self.expect("STRING", f"quoted {key} text").value
            elif key == "category":
                fields[key] = self.name().value
                if self.peek_word("secondary"):
                    self.advance()
                    fields["secondary"] = self.name().value
            elif key == "dimensions":
                fields[key] = self.dim_list()
            elif key == "archetype":
                self.pos -= 1
                fields[key] = self.archetype_block()
            elif key == "related":
                fields[key] = tuple(self.string_list())
            elif key == "attr":
                k = self.expect("IDENT", "an attribute name")
                self.expect("=", "'='")
                if k.value in attrs:
                    self.diag(error("S5", f"duplicate attribute '{k.value}'", k.span))
                attrs[k.value] = self.expect("STRING", "a quoted value").value
            else:
                self.fail(f"unknown pattern field '{key}'", t)
            self.skip_semis()
        self.advance()
        pattern = PatternDoc(
            name=name.value,
            summary=fields.get("summary", ""),
            category_primary=fields.get("category", ""),
            category_secondary=fields.get("secondary"),
            dimensions=fields.get("dimensions", frozenset()),
            applicability=fields.get("applicability", ""),
            content=fields.get("content", ""),
            archetype=fields.get("archetype", Archetype()),
            example=fields.get("example", ""),
            discussion=fields.get("discussion"),
            related=fields.get("related", ()),
            attrs=attrs,
            source=source,
            span=SourceSpan(head.span.file, head.span.line, head.span.column, len("pattern")),
        )
        for d in validate_pattern(pattern):
            if d.code == "P1":
                self.diag(d)
        return pattern

    def _pattern(self) -> PatternDoc:
        p = self.pattern_block()
        self.skip_semis()
        self.expect("EOF", "end of file")
        return p

    def parse_pattern(self) -> PatternDoc:
        return self._run(self._pattern)

    # catalogues

    def _catalogue(self) -> Catalogue:
        head = self.expect_word("catalogue")
        name = self.expect("STRING", "a quoted catalogue name")
        self.expect("{", "'{'")
        cycle: list[Token] | None = None
        center: Token | None = None
        patterns: list[PatternDoc] = []
        while not self.peek("}"):
            t = self.tok
            if self.peek_word("cycle"):
                self.advance()
                if cycle is not None:
                    self.diag(error("S5", "cycle given twice", t.span))
                self.expect("[", "'['")
                cycle = []
                while not self.peek("]"):
                    cycle.append(self.name())
                    if not self.peek("]"):
                        self.expect(",", "',' or ']'")
                self.advance()
            elif self.peek_word("center"):
                self.advance()
                if center is not None:
                    self.diag(error("S5", "center given twice", t.span))
                center = self.name()
            elif self.peek_word("use"):
                self.advance()
                path_tok = self.expect("STRING", "a quoted pattern path")
                p = self.load_pattern(path_tok)
                if p is not None:
                    patterns.append(p)
            elif self.peek_word("pattern"):
                patterns.append(self.pattern_block())
            elif self.peek_word("stub"):
                patterns.append(self.stub_decl())
            else:
                self.fail(f"unknown catalogue declaration {self.describe(t)}")
            self.skip_semis()
        self.advance()
        self.skip_semis()
        self.expect("EOF", "end of file")

        if cycle is None or center is None:
            self.diag(error("S1", "catalogue needs both 'cycle' and 'center'", head.span))
            return None
        names = [c.value for c in cycle] + [center.value]
        seen: set[str] = set()
        for tok in cycle + [center]:
            if tok.value in seen:
                self.diag(error("S5", f"duplicate category '{tok.value}'", tok.span))
            seen.add(tok.value)
        if len(cycle) < 3:
            self.diag(error("S1", "a catalogue cycle needs at least 3 categories", head.span))
        pnames: set[str] = set()
        for p in patterns:
            if p.slug in pnames:
                self.diag(error("S5", f"duplicate pattern '{p.name}'", p.span))
            pnames.add(p.slug)
            for cat in p.categories:
                if cat not in names:
                    self.diag(error("C2", f"pattern '{p.name}' references unknown category '{cat}'", p.span))
        if has_errors(self.diagnostics):
            return None
        try:
            return Catalogue(
                name.value,
                tuple(c.value for c in cycle),
                center.value,
                tuple(sorted(patterns, key=lambda p: p.name)),
                span=head.span,
            )
        except CatalogueError as exc:
            self.diag(error("S1", str(exc), head.span))
            return None

    def load_pattern(self, path_tok: Token) -> PatternDoc | None:
        path = self.base_dir / path_tok.value
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            self.diag(error("S4", f"cannot read pattern file '{path_tok.value}': {exc.strerror}", path_tok.span))
            return None
        sub = Parser(text, path)
        try:
            p = sub.parse_pattern()
        except DSLError:
            p = None
        self.diagnostics.extend(sub.diagnostics)
        if p is None:
            self.diag(error("S4", f"pattern file '{path_tok.value}' has errors", path_tok.span))
            return None
        from .patterns import with_source

        return with_source(p, path_tok.value)

    def stub_decl(self) -> PatternDoc:
        head = self.advance()
        name = self.expect("STRING", "a quoted pattern name")
        self.expect_word("category")
        primary = self.name().value
        secondary = None
        related: tuple[str, ...] = ()
        if self.peek_word("secondary"):
            self.advance()
            secondary = self.name().value
        if self.peek_word("related"):
            self.advance()
            related = tuple(self.string_list())
        return PatternDoc(
            name=name.value,
            category_primary=primary,
            category_secondary=secondary,
            related=related,
            attrs={"provenance": "reconstructed-stub"},
            is_stub=True,
            span=head.span,
        )

    def parse_catalogue(self) -> Catalogue:
        return self._run(self._catalogue)

    # bindings

    def _binding(self) -> dict:
        entries: dict[str, Existing | Fresh] = {}
        while not self.peek("EOF"):
            role = self.expect("IDENT", "a role name")
            self.expect("=", "'='")
            mode = self.expect("IDENT", "'existing' or 'fresh'")
            self.expect(":", "':'")
            if mode.value == "existing":
                value: Existing | Fresh = Existing(self.expect("IDENT", "an element id").value)
            elif mode.value == "fresh":
                label = self.expect("STRING", "a quoted label").value
                kind = None
                dims: frozenset[Dimension] = frozenset()
                tagged = False
                while True:
                    if self.peek_word("kind") and self.peek("=", offset=1):
                        self.advance()
                        self.advance()
                        kt = self.expect("IDENT", "an element kind")
                        if kt.value not in KINDS:
                            self.diag(error("S2", f"unknown element kind '{kt.value}'", kt.span))
                        else:
                            kind = KINDS[kt.value]
                    elif self.peek_word("dims") and self.peek("=", offset=1):
                        self.advance()
                        self.advance()
                        dims = self.dim_list()
                    elif self.peek_word("tagged") and not self.peek("=", offset=1):
                        self.advance()
                        tagged = True
                    else:
                        break
                value = Fresh(label, kind, dims, tagged)
            else:
                self.fail(f"expected 'existing' or 'fresh', found '{mode.value}'", mode)
            if role.value in entries:
                self.diag(error("S5", f"role '{role.value}' bound twice", role.span))
            entries[role.value] = value
            self.skip_semis()
        return entries

    def parse_binding(self) -> dict:
        return self._run(self._binding)


def _parser(text: str, path, base_dir) -> Parser:
    return Parser(text, path if path is not None else "<input>", base_dir)


def _finish(parser: Parser, method, diagnostics: list | None):
    try:
        return method()
    finally:
        if diagnostics is not None:
            diagnostics.extend(sort_diagnostics(parser.diagnostics))


def parse_model(text: str, path=None, *, base_dir=None, diagnostics: list | None = None) -> Model:
    p = _parser(text, path, base_dir)
    return _finish(p, p.parse_model, diagnostics)


def parse_pattern(text: str, path=None, *, base_dir=None, diagnostics: list | None = None) -> PatternDoc:
    p = _parser(text, path, base_dir)
    return _finish(p, p.parse_pattern, diagnostics)


def parse_catalogue(text: str, path=None, *, base_dir=None, diagnostics: list | None = None) -> Catalogue:
    p = _parser(text, path, base_dir)
    return _finish(p, p.parse_catalogue, diagnostics)


def parse_binding(text: str, path=None, *, diagnostics: list | None = None) -> dict:
    p = _parser(text, path, None)
    return _finish(p, p.parse_binding, diagnostics)


EXTENSIONS = {".susm": "model", ".susp": "pattern", ".susc": "catalogue"}


def kind_for_path(path) -> str:
    suffix = Path(path).suffix
    if suffix not in EXTENSIONS:
        raise ValueError(f"unrecognised file extension '{suffix}' (expected .susm, .susp or .susc)")
    return EXTENSIONS[suffix]


def load(path, *, diagnostics: list | None = None):
    """Parse a file, choosing the grammar from its extension."""
    path = Path(path)
    kind = kind_for_path(path)
    text = path.read_text(encoding="utf-8")
    parse = {"model": parse_model, "pattern": parse_pattern, "catalogue": parse_catalogue}[kind]
    return parse(text, path, diagnostics=diagnostics)
