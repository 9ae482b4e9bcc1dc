"""Well-formedness rules for models (V1-V8) and patterns (P1-P3).

Every check returns a sorted list of diagnostics; nothing here raises.
"""

from __future__ import annotations

from typing import TYPE_CHECKING

import networkx as nx

from .diagnostics import Diagnostic, error, sort_diagnostics, warning
from .model import ElementKind, LinkKind, Model, link_admissible, undirected_components

if TYPE_CHECKING:
    from .patterns import PatternDoc

RULE_SEVERITY = {
    "V1": "error",
    "V2": "error",
    "V3": "error",
    "V4": "error",
    "V5": "error",
    "V6": "warning",
    "V7": "warning",
    "V8": "warning",
    "P1": "error",
    "P2": "error",
    "P3": "warning",
    "S1": "error",
    "S2": "error",
    "S3": "error",
    "S4": "error",
    "S5": "error",
    "W1": "warning",
    "C0": "error",
    "C1": "warning",
    "C2": "error",
}

GOAL_LIKE = (ElementKind.VALUE, ElementKind.GOAL)


def _check_ids(model: Model) -> list[Diagnostic]:
    out = []
    for key, el in model.elements.items():
        if key != el.id:
            out.append(error("V1", f"element stored under '{key}' has id '{el.id}'", el.span))
    for key, ln in model.links.items():
        if key != ln.id:
            out.append(error("V1", f"link stored under '{key}' has id '{ln.id}'", ln.span))
        if key in model.elements:
            out.append(error("V1", f"id '{key}' is used by both an element and a link", ln.span))
        for end in (ln.source, ln.target):
            if end not in model.elements:
                out.append(error("V1", f"link '{ln.id}' refers to unknown element '{end}'", ln.span))
    for frag in model.fragments.values():
        for eid in sorted(frag.elements):
            if eid not in model.elements:
                out.append(error("V1", f"fragment '{frag.name}' refers to unknown element '{eid}'", frag.span))
        for lid in sorted(frag.links):
            if lid not in model.links:
                out.append(error("V1", f"fragment '{frag.name}' refers to unknown link '{lid}'", frag.span))
    return out


def _check_endpoint_kinds(model: Model) -> list[Diagnostic]:
    out = []
    for ln in model.links.values():
        src, dst = model.elements.get(ln.source), model.elements.get(ln.target)
        if src is None or dst is None:
            continue
        if not link_admissible(ln.kind, src.kind, dst.kind):
            out.append(error(
                "V2",
                f"{ln.kind.value} link may not go from {src.kind.value} '{src.id}' to {dst.kind.value} '{dst.id}'",
                ln.span,
            ))
        if ln.strategy is not None and ln.kind is not LinkKind.MITIGATES:
            out.append(error("V2", f"strategy is only allowed on mitigates links, found on {ln.kind.value} link '{ln.id}'", ln.span))
    return out


def refinement_cycles(model: Model) -> list[list[str]]:
    """Strongly connected components of the value/goal refines graph that contain a cycle."""
    graph = nx.DiGraph()
    graph.add_edges_from(
        (ln.source, ln.target) for ln in model.links.values()
        if ln.kind is LinkKind.REFINES
        and model.kind_of(ln.source) in GOAL_LIKE and model.kind_of(ln.target) in GOAL_LIKE
    )
    cyclic = [
        sorted(comp) for comp in nx.strongly_connected_components(graph)
        if len(comp) > 1 or graph.has_edge(next(iter(comp)), next(iter(comp)))
    ]
    return sorted(cyclic)


def _check_refinement_cycles(model: Model) -> list[Diagnostic]:
    out = []
    for comp in refinement_cycles(model):
        members = set(comp)
        spans = sorted(
            (ln for ln in model.links.values()
             if ln.kind is LinkKind.REFINES and ln.source in members and ln.target in members),
            key=lambda ln: ln.id,
        )
        span = spans[0].span if spans else None
        out.append(error("V3", f"refinement cycle through {', '.join(comp)}", span))
    return out


def _check_fragments(model: Model) -> list[Diagnostic]:
    out = []
    for name in sorted(model.fragments):
        frag = model.fragments[name]
        known = [e for e in frag.elements if e in model.elements]
        if len(known) != len(frag.elements):
            continue  # reported under V1
        for lid in sorted(frag.links):
            ln = model.links.get(lid)
            if ln is not None and (ln.source not in frag.elements or ln.target not in frag.elements):
                out.append(error("V4", f"fragment '{name}' contains link '{lid}' leaving the fragment", frag.span))
        if not known:
            out.append(error("V4", f"fragment '{name}' is empty", frag.span))
            continue
        comps = undirected_components(model, known)
        if len(comps) > 1:
            listing = "; ".join("{" + ", ".join(c) + "}" for c in comps)
            out.append(error("V4", f"fragment '{name}' is not connected: {len(comps)} components {listing}", frag.span))
    return out


def _check_anchors(model: Model) -> list[Diagnostic]:
    out = []
    for name in sorted(model.fragments):
        frag = model.fragments[name]
        if frag.anchor is None:
            continue
        if frag.anchor not in model.elements:
            out.append(error("V5", f"fragment '{name}' anchor '{frag.anchor}' does not exist", frag.span))
        elif frag.anchor in frag.elements:
            out.append(error("V5", f"fragment '{name}' is anchored at its own member '{frag.anchor}'", frag.span))
    return out


def _check_mitigation(model: Model) -> list[Diagnostic]:
    mitigated = {
        ln.target for ln in model.links.values()
        if ln.kind is LinkKind.MITIGATES and model.kind_of(ln.source) is ElementKind.ACTIVITY
    }
    return [
        warning("V6", f"obstacle '{el.id}' has no mitigating activity", el.span)
        for el in model.elements.values()
        if el.kind is ElementKind.OBSTACLE and el.id not in mitigated
    ]


def _check_contribution(model: Model) -> list[Diagnostic]:
    succ: dict[str, list[str]] = {}
    for ln in model.links.values():
        if ln.kind in (LinkKind.CONTRIBUTES, LinkKind.REFINES):
            succ.setdefault(ln.source, []).append(ln.target)
    reached: set[str] = set()
    frontier = [e.id for e in model.elements.values() if e.kind is ElementKind.ACTIVITY]
    while frontier:
        node = frontier.pop()
        for nxt in succ.get(node, ()):
            if nxt not in reached:
                reached.add(nxt)
                frontier.append(nxt)
    return [
        warning("V7", f"{el.kind.value} '{el.id}' is not supported by any contributing activity", el.span)
        for el in model.elements.values()
        if el.kind in GOAL_LIKE and el.id not in reached
    ]


def _check_strategies(model: Model) -> list[Diagnostic]:
    return [
        warning("V8", f"mitigates link '{ln.id}' has no strategy", ln.span)
        for ln in model.links.values()
        if ln.kind is LinkKind.MITIGATES and ln.strategy is None
    ]


STRUCTURAL_CHECKS = (_check_ids, _check_endpoint_kinds, _check_refinement_cycles, _check_fragments, _check_anchors)
ADVISORY_CHECKS = (_check_mitigation, _check_contribution, _check_strategies)


def validate_model(model: Model) -> list[Diagnostic]:
    diags: list[Diagnostic] = []
    for check in STRUCTURAL_CHECKS + ADVISORY_CHECKS:
        diags.extend(check(model))
    return sort_diagnostics(diags)


MANDATORY_FIELDS = ("summary", "category", "dimensions", "applicability", "content", "archetype", "example")


def validate_pattern(pattern: "PatternDoc") -> list[Diagnostic]:
    """P1 mandatory template fields, P2 archetype well-formedness, P3 unused roles.

    Catalogue stubs are placeholders without template content and are exempt.
    """
    if pattern.is_stub:
        return []
    diags: list[Diagnostic] = []
    where = pattern.span
    for name in MANDATORY_FIELDS:
        if not pattern.has_field(name):
            diags.append(error("P1", f"pattern '{pattern.name}' is missing mandatory field '{name}'", where))

    arch = pattern.archetype
    body = arch.body
    if arch.is_present():
        if not body.elements:
            diags.append(error("P2", f"archetype of '{pattern.name}' has no elements", arch.span or where))
        else:
            for d in validate_model(body):
                if d.is_error:
                    diags.append(error("P2", f"archetype: {d.message}", d.span or arch.span or where))
            comps = undirected_components(body, list(body.elements))
            if len(comps) > 1:
                listing = "; ".join("{" + ", ".join(c) + "}" for c in comps)
                diags.append(error("P2", f"archetype of '{pattern.name}' is not connected: {listing}", arch.span or where))

    used = arch.used_roles()
    for role in arch.roles:
        if role.name not in used:
            diags.append(warning("P3", f"role '{role.name}' is never used in the archetype", role.span or where))
    return sort_diagnostics(diags)
