"""Canonical text form for models, patterns and catalogues.

Canonical output sorts declarations by (kind, id), indents by two spaces,
writes normalized dimension names and ends with a single LF.
"""

from __future__ import annotations

import os
from functools import singledispatch

from .catalogue import Catalogue
from .lexer import is_identifier, quote
from .model import KIND_ORDER, LINK_ORDER, DIMENSION_ORDER, Element, Link, Model, auto_link_id
from .patterns import PatternDoc

INDENT = "  "


def _name(text: str) -> str:
    return text if is_identifier(text) else quote(text)


def _dims(dims) -> str:
    return "[" + ", ".join(d.value for d in sorted(dims, key=DIMENSION_ORDER.__getitem__)) + "]"


def _attrs(attrs) -> str:
    if not attrs:
        return ""
    inner = ", ".join(f"{k} = {quote(v)}" for k, v in sorted(attrs.items()))
    return " { " + inner + " }"


def element_line(el: Element) -> str:
    parts = [el.kind.value, el.id]
    if el.dimensions:
        parts += ["dims", _dims(el.dimensions)]
    if el.is_tagged:
        parts.append("tagged")
    if el.label:
        parts.append(quote(el.label))
    return " ".join(parts) + _attrs(el.attrs)


def link_line(ln: Link) -> str:
    out = f"link {ln.kind.value}({ln.source} -> {ln.target})"
    if ln.strategy is not None:
        out += f" strategy={ln.strategy.value}"
    if ln.id != auto_link_id(ln.kind, ln.source, ln.target):
        out += f" as {ln.id}"
    return out


def _body_lines(model: Model, indent: str, *, roles=(), relocate=None) -> list[str]:
    sourced = [f for f in model.fragments.values() if f.source is not None]
    skip_elements = set().union(*(f.elements for f in sourced)) if sourced else set()
    skip_links = set().union(*(f.links for f in sourced)) if sourced else set()

    sections: list[list[str]] = []
    if model.meta:
        sections.append([f"meta {k} = {quote(v)}" for k, v in sorted(model.meta.items())])
    if roles:
        sections.append([f"role {r.name} : {r.kind.value}" for r in roles])
    elements = [
        el for el in model.elements.values()
        if el.id not in skip_elements and not el.is_placeholder
    ]
    elements.sort(key=lambda el: (KIND_ORDER[el.kind], el.id))
    if elements:
        sections.append([element_line(el) for el in elements])
    links = [ln for ln in model.links.values() if ln.id not in skip_links]
    links.sort(key=lambda ln: (LINK_ORDER[ln.kind], ln.id))
    if links:
        sections.append([link_line(ln) for ln in links])
    frags = []
    for name in sorted(model.fragments):
        f = model.fragments[name]
        head = f"fragment {f.name}"
        if f.anchor is not None:
            head += f" at {f.anchor}"
        if f.source is not None:
            path = f.source
            if relocate is not None:
                source_dir, target_dir = relocate
                path = os.path.relpath(os.path.join(source_dir, f.source), target_dir)
                path = path.replace(os.sep, "/")
            frags.append(f"{head} from {quote(path)}")
        else:
            frags.append(f"{head} {{ {', '.join(sorted(f.elements))} }}" if f.elements else f"{head} {{ }}")
    if frags:
        sections.append(frags)

    out: list[str] = []
    for i, sec in enumerate(sections):
        if i:
            out.append("")
        out += [indent + line for line in sec]
    return out


def serialize_model(model: Model, *, relocate: tuple[str, str] | None = None) -> str:
    """``relocate=(source_dir, target_dir)`` rewrites external fragment paths
    for output written to another directory; they are otherwise kept as written."""
    lines = [f"model {quote(model.name)} {{"]
    lines += _body_lines(model, INDENT, relocate=relocate)
    lines.append("}")
    return "\n".join(lines) + "\n"


def _pattern_lines(p: PatternDoc, indent: str) -> list[str]:
    inner = indent + INDENT
    lines = [f"{indent}pattern {quote(p.name)} {{"]
    if p.summary:
        lines.append(f"{inner}summary {quote(p.summary)}")
    if p.category_primary:
        cat = f"{inner}category {_name(p.category_primary)}"
        if p.category_secondary:
            cat += f" secondary {_name(p.category_secondary)}"
        lines.append(cat)
    if p.dimensions:
        lines.append(f"{inner}dimensions {_dims(p.dimensions)}")
    if p.applicability:
        lines.append(f"{inner}applicability {quote(p.applicability)}")
    if p.content:
        lines.append(f"{inner}content {quote(p.content)}")
    arch = p.archetype
    if arch.is_present():
        head = f"{inner}archetype"
        if arch.description:
            head += f" {quote(arch.description)}"
        body = _body_lines(arch.body, inner + INDENT, roles=arch.roles)
        if body:
            lines.append(head + " {")
            lines += body
            lines.append(inner + "}")
        else:
            lines.append(head + " { }")
    if p.example:
        lines.append(f"{inner}example {quote(p.example)}")
    if p.discussion is not None:
        lines.append(f"{inner}discussion {quote(p.discussion)}")
    if p.related:
        lines.append(f"{inner}related [{', '.join(quote(r) for r in p.related)}]")
    for k, v in sorted(p.attrs.items()):
        lines.append(f"{inner}attr {k} = {quote(v)}")
    lines.append(indent + "}")
    return lines


def serialize_pattern(pattern: PatternDoc) -> str:
    return "\n".join(_pattern_lines(pattern, "")) + "\n"


def _stub_line(p: PatternDoc) -> str:
    line = f"stub {quote(p.name)} category {_name(p.category_primary)}"
    if p.category_secondary:
        line += f" secondary {_name(p.category_secondary)}"
    if p.related:
        line += f" related [{', '.join(quote(r) for r in p.related)}]"
    return line


def serialize_catalogue(cat: Catalogue) -> str:
    lines = [f"catalogue {quote(cat.name)} {{"]
    lines.append(f"{INDENT}cycle [{', '.join(_name(c) for c in cat.cycle)}]")
    lines.append(f"{INDENT}center {_name(cat.center)}")
    ordered = sorted(cat.patterns, key=lambda p: p.name)
    used = [p for p in ordered if p.source is not None and not p.is_stub]
    inline = [p for p in ordered if p.source is None and not p.is_stub]
    stubs = [p for p in ordered if p.is_stub]
    if used:
        lines.append("")
        lines += [f"{INDENT}use {quote(p.source)}" for p in used]
    for p in inline:
        lines.append("")
        lines += _pattern_lines(p, INDENT)
    if stubs:
        lines.append("")
        lines += [INDENT + _stub_line(p) for p in stubs]
    lines.append("}")
    return "\n".join(lines) + "\n"


@singledispatch
def serialize(obj) -> str:
    raise TypeError(f"cannot serialize {type(obj).__name__}")


serialize.register(Model, serialize_model)
serialize.register(PatternDoc, serialize_pattern)
serialize.register(Catalogue, serialize_catalogue)


def leading_comments(text: str) -> list[str]:
    """The ``//`` comment lines heading a file; the formatter keeps them."""
    out = []
    for line in text.splitlines():
        stripped = line.strip()
        if stripped.startswith("//"):
            out.append(stripped)
        elif stripped:
            break
    return out


def format_source(text: str, path) -> str:
    """Canonical form of a source file: its leading comments, then the serialized object.

    Comments elsewhere in the file are not preserved.
    """
    from .parser import kind_for_path, parse_catalogue, parse_model, parse_pattern

    parse = {"model": parse_model, "pattern": parse_pattern, "catalogue": parse_catalogue}[kind_for_path(path)]
    body = serialize(parse(text, path))
    header = leading_comments(text)
    return "\n".join(header) + "\n" + body if header else body
