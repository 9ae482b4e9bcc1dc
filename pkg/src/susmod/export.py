"""DOT rendering for models and catalogues, Markdown sheets for patterns."""

from __future__ import annotations

from dataclasses import dataclass

from .catalogue import Catalogue, anchor, placements, related_pairs
from .model import DIMENSION_ORDER, ElementKind, LinkKind, Model
from .patterns import PatternDoc
from .validator import validate_model

SHAPES = {
    ElementKind.VALUE: "ellipse",
    ElementKind.GOAL: "house",
    ElementKind.ACTIVITY: "box",
    ElementKind.OBSTACLE: "doubleoctagon",  # stands in for the explosion icon
    ElementKind.ASSUMPTION: "note",
    ElementKind.REGULATION: "component",
    ElementKind.RESOURCE: "cylinder",
    ElementKind.INDICATOR: "diamond",
    ElementKind.STAKEHOLDER: "plaintext",
}
IS_FILL = "gray25"
CATALOGUE_SCALE = 5.0

TEMPLATE_ORDER = (
    "Summary",
    "Category",
    "Dimensions",
    "Applicability",
    "Content",
    "Archetype",
    "Example",
    "Discussion",
    "Related Patterns",
)


class InvalidModel(Exception):
    pass


def dot_id(text: str) -> str:
    escaped = text.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n")
    return f'"{escaped}"'


def _attr_list(attrs: list[tuple[str, str]]) -> str:
    return "[" + ", ".join(f"{k}={v}" for k, v in attrs) + "]"


@dataclass(frozen=True)
class DotOptions:
    rankdir: str | None = None
    anchor_edges: bool = True


def export_model_dot(model: Model, options: DotOptions | None = None) -> str:
    options = options or DotOptions()
    errors = [d for d in validate_model(model) if d.is_error]
    if errors:
        raise InvalidModel("; ".join(d.format() for d in errors))

    lines = [f"digraph {dot_id(model.name)} {{"]
    anchored = [f for f in model.fragments.values() if f.anchor is not None and f.elements]
    if options.rankdir:
        lines.append(f"  rankdir={options.rankdir};")
    if anchored and options.anchor_edges:
        lines.append("  compound=true;")

    for eid in sorted(model.elements):
        el = model.elements[eid]
        attrs = [("shape", SHAPES[el.kind]), ("label", dot_id(el.display))]
        styles = []
        if el.is_tagged:
            styles.append("filled")
            attrs += [("fillcolor", IS_FILL), ("fontcolor", "white")]
        if el.is_placeholder:
            styles.append("dashed")
        if styles:
            attrs.append(("style", dot_id(",".join(styles))))
        lines.append(f"  {dot_id(eid)} {_attr_list(attrs)};")

    for lid in sorted(model.links):
        ln = model.links[lid]
        label = ln.kind.value
        attrs = []
        if ln.kind is LinkKind.MITIGATES and ln.strategy is not None:
            label = f"{label} ({ln.strategy.value})"
        if ln.kind is LinkKind.OBSTRUCTS:
            attrs.append(("color", "red"))
        attrs.insert(0, ("label", dot_id(label)))
        lines.append(f"  {dot_id(ln.source)} -> {dot_id(ln.target)} {_attr_list(attrs)};")

    for i, name in enumerate(sorted(model.fragments)):
        frag = model.fragments[name]
        lines.append(f"  subgraph cluster_{i} {{")
        lines.append(f"    label={dot_id(name)};")
        lines.append("    style=rounded;")
        for eid in sorted(frag.elements):
            lines.append(f"    {dot_id(eid)};")
        lines.append("  }")
        if frag.anchor is not None and frag.elements and options.anchor_edges:
            first = min(frag.elements)
            attrs = [
                ("style", "dotted"),
                ("arrowhead", "odot"),
                ("lhead", f"cluster_{i}"),
                ("label", dot_id(f"fragment {name}")),
            ]
            lines.append(f"  {dot_id(frag.anchor)} -> {dot_id(first)} {_attr_list(attrs)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _pos(x: float, y: float) -> str:
    def fmt(v: float) -> str:
        s = f"{v * CATALOGUE_SCALE:.4f}"
        return "0.0000" if s == "-0.0000" else s

    return dot_id(f"{fmt(x)},{fmt(y)}!")


def export_catalogue_dot(catalogue: Catalogue, weights=None) -> str:
    pos = placements(catalogue, weights) if weights else catalogue.placements
    lines = [f"graph {dot_id(catalogue.name)} {{", "  layout=neato;"]
    for cat in catalogue.categories:
        x, y = anchor(catalogue, cat)
        attrs = [("shape", "doublecircle"), ("label", dot_id(cat)), ("pos", _pos(x, y)), ("color", "gray50")]
        lines.append(f"  {dot_id('category:' + cat)} {_attr_list(attrs)};")
    for name, (x, y) in pos.items():
        p = catalogue.find(name)
        attrs = [("shape", "hexagon"), ("label", dot_id(name)), ("pos", _pos(x, y))]
        if p.is_stub:
            attrs.append(("style", "dashed"))
        lines.append(f"  {dot_id(name)} {_attr_list(attrs)};")

    pairs, _ = related_pairs(catalogue)
    for a, b in pairs:
        lines.append(f"  {dot_id(a.name)} -- {dot_id(b.name)} [style=dashed];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def md_escape(text: str) -> str:
    return text.replace("\\", "\\\\").replace("#", "\\#")


def export_pattern_markdown(pattern: PatternDoc) -> str:
    sections: list[tuple[str, str]] = []
    if pattern.summary:
        sections.append(("Summary", md_escape(pattern.summary)))
    if pattern.category_primary:
        cat = f"{md_escape(pattern.category_primary)} (primary)"
        if pattern.category_secondary:
            cat += f", {md_escape(pattern.category_secondary)} (secondary)"
        sections.append(("Category", cat))
    if pattern.dimensions:
        dims = sorted(pattern.dimensions, key=DIMENSION_ORDER.__getitem__)
        sections.append(("Dimensions", ", ".join(d.value for d in dims)))
    if pattern.applicability:
        sections.append(("Applicability", md_escape(pattern.applicability)))
    if pattern.content:
        sections.append(("Content", md_escape(pattern.content)))
    arch = pattern.archetype
    if arch.is_present():
        parts = []
        if arch.description:
            parts.append(md_escape(arch.description))
        if arch.roles:
            roles = ", ".join(f"`{r.name}` ({r.kind.value})" for r in arch.roles)
            parts.append(f"Roles: {roles}")
        if arch.body.elements:
            parts.append("```dot\n" + export_model_dot(arch.body).rstrip("\n") + "\n```")
        sections.append(("Archetype", "\n\n".join(parts)))
    if pattern.example:
        sections.append(("Example", md_escape(pattern.example)))
    if pattern.discussion is not None:
        sections.append(("Discussion", md_escape(pattern.discussion)))
    if pattern.related:
        sections.append(("Related Patterns", "\n".join(f"- {md_escape(r)}" for r in pattern.related)))

    out = [f"# {md_escape(pattern.name)}"]
    for title, body in sections:
        out.append(f"## {title}")
        if body:
            out.append(body)
    return "\n\n".join(out) + "\n"
