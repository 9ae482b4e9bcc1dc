"""Random model generators shared by property tests and the acceptance suite."""

from __future__ import annotations

import random

from susmod.diagnostics import SourceSpan
from susmod.model import Dimension, Element, ElementKind, Fragment, Link, LinkKind, Model, Strategy

KINDS = list(ElementKind)
LINK_KINDS = list(LinkKind)

# Written out independently of the library's table.
ADMISSIBLE_TEXT = """
refines          value      value
refines          goal       goal
refines          goal       value
contributes      activity   value
contributes      activity   goal
contributes      assumption value
contributes      assumption goal
contributes      regulation value
contributes      regulation goal
obstructs        obstacle   value
obstructs        obstacle   goal
obstructs        obstacle   activity
mitigates        activity   obstacle
monitors         indicator  value
monitors         indicator  goal
monitors         indicator  activity
monitors         indicator  resource
uses_resource    activity   resource
responsible_for  stakeholder activity
"""
ADMISSIBLE = {tuple(line.split()) for line in ADMISSIBLE_TEXT.strip().splitlines()}


def admissible(kind: str, src: str, dst: str) -> bool:
    return (kind, src, dst) in ADMISSIBLE


def element(eid: str, kind: ElementKind, line: int = 1) -> Element:
    return Element(eid, kind, dimensions={Dimension.SOCIAL}, span=SourceSpan("gen", line, 1))


def random_model(rng: random.Random, max_elements: int = 12, max_links: int | None = None,
                 kinds=None, link_kinds=None) -> Model:
    """Elements of random kinds joined by links of random kind, legal or not.

    Link ``i`` carries a span on line ``i + 1`` so diagnostics can be traced
    back to the link that caused them.
    """
    kinds = kinds or KINDS
    link_kinds = link_kinds or LINK_KINDS
    n = rng.randint(1, max_elements)
    elements = {f"e{i}": element(f"e{i}", rng.choice(kinds)) for i in range(n)}
    ids = sorted(elements)
    links = {}
    for i in range(rng.randint(0, max_links if max_links is not None else 2 * n)):
        kind = rng.choice(link_kinds)
        src, dst = rng.choice(ids), rng.choice(ids)
        strategy = rng.choice(list(Strategy)) if kind is LinkKind.MITIGATES and rng.random() < 0.5 else None
        lid = f"l{i}"
        links[lid] = Link(lid, kind, src, dst, strategy, span=SourceSpan("gen", i + 1, 1))
    return Model("random", elements, links)


def random_refines_model(rng: random.Random, max_elements: int = 8) -> Model:
    """Mostly goals and values joined mostly by refines links, so cycles are common."""
    return random_model(
        rng, max_elements,
        kinds=[ElementKind.GOAL, ElementKind.GOAL, ElementKind.VALUE, ElementKind.ACTIVITY],
        link_kinds=[LinkKind.REFINES] * 4 + [LinkKind.CONTRIBUTES, LinkKind.MITIGATES],
    )


def random_fragment_model(rng: random.Random, max_elements: int = 10) -> Model:
    """A model whose single fragment covers every element, joined by random goal refinements."""
    n = rng.randint(1, max_elements)
    elements = {f"e{i}": element(f"e{i}", ElementKind.GOAL) for i in range(n)}
    ids = sorted(elements)
    links = {}
    density = rng.random()
    for a in range(n):
        for b in range(a + 1, n):
            if rng.random() < density * 0.5:
                src, dst = (ids[a], ids[b]) if rng.random() < 0.5 else (ids[b], ids[a])
                lid = f"l{a}_{b}"
                links[lid] = Link(lid, LinkKind.REFINES, src, dst)
    frag = Fragment("F", frozenset(ids), frozenset(links))
    return Model("frag", elements, links, {"F": frag})
