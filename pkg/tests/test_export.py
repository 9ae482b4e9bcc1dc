from __future__ import annotations

import random
import re

import pytest
from conftest import CORPUS
from oracles import check_dot, dot_is_valid, walk_model_file
from susmod import (
    Catalogue,
    PatternDoc,
    export_catalogue_dot,
    export_model_dot,
    export_pattern_markdown,
    load,
)
from susmod.export import InvalidModel
from susmod.model import Dimension, Element, ElementKind, Link, LinkKind, Model
from susmod.patterns import Archetype

TEMPLATE = ["Summary", "Category", "Dimensions", "Applicability", "Content", "Archetype",
            "Example", "Discussion", "Related Patterns"]


def test_checker_rejects_bad_dot():
    assert dot_is_valid('digraph "g" { a -> b; }')
    assert not dot_is_valid('digraph "g" { a -- b; }')
    assert not dot_is_valid('graph "g" { a -> b; }')
    assert not dot_is_valid('digraph "g" { a -> ; }')
    assert not dot_is_valid('digraph "g" { a [label=] }')
    assert not dot_is_valid('digraph "g" { a')


def test_covid_clusters_and_fills(covid):
    dot = export_model_dot(covid)
    check_dot(dot)
    assert dot.count("subgraph cluster_") == len(covid.fragments) == 2
    filled = re.findall(r'^  "([^"]+)" \[[^\n]*fillcolor=gray25', dot, re.MULTILINE)
    tagged = sorted(e.id for e in covid.elements.values() if e.is_tagged)
    assert sorted(filled) == tagged
    # independent count from the source text
    assert len(filled) == walk_model_file(CORPUS / "covid" / "covid.susm")["tagged"]


def test_obstacle_and_strategy_rendering(covid):
    dot = export_model_dot(covid)
    node = next(line for line in dot.splitlines() if line.startswith('  "HospitalOverload" ['))
    assert "shape=doubleoctagon" in node
    assert "mitigates (anticipation)" in dot


def test_empty_model_dot():
    dot = export_model_dot(Model("M"))
    assert dot == 'digraph "M" {\n}\n'
    check_dot(dot)


def test_invalid_model_not_exported():
    m = Model("M", {"o": Element("o", ElementKind.OBSTACLE, dimensions={Dimension.SOCIAL}),
                    "g": Element("g", ElementKind.GOAL, dimensions={Dimension.SOCIAL})},
              {"x": Link("x", LinkKind.MITIGATES, "g", "o")})
    with pytest.raises(InvalidModel):
        export_model_dot(m)


def test_awkward_labels_stay_valid():
    label = 'quote " backslash \\ newline \n brace } ->'
    m = Model("a \"model\"", {"x": Element("x", ElementKind.ASSUMPTION, label)})
    check_dot(export_model_dot(m))


def test_catalogue_hexagons(fairness, circular):
    for cat, count in ((fairness, 12), (circular, 14)):
        dot = export_catalogue_dot(cat)
        check_dot(dot)
        assert dot.count("shape=hexagon") == count


def test_single_pattern_at_anchor_times_five():
    cat = Catalogue("C", ("N", "E", "S", "W"), "Hub", (PatternDoc("Only", category_primary="E", is_stub=True),))
    dot = export_catalogue_dot(cat)
    assert '"Only" [shape=hexagon, label="Only", pos="5.0000,0.0000!"' in dot


def test_exports_are_deterministic(covid, circular, va_pattern):
    assert export_model_dot(covid) == export_model_dot(covid)
    assert export_catalogue_dot(circular) == export_catalogue_dot(circular)
    assert export_pattern_markdown(va_pattern) == export_pattern_markdown(va_pattern)


def _sections(md):
    return re.findall(r"^## (.+)$", md, re.MULTILINE)


def test_violation_anticipation_markdown(va_pattern):
    md = export_pattern_markdown(va_pattern)
    example = md.split("## Example", 1)[1].split("##", 1)[0]
    assert "Hospital capacity management" in example
    assert "Discussion" not in _sections(md)
    assert _sections(md) == [s for s in TEMPLATE if s != "Discussion"]
    block = md.split("```dot\n", 1)[1].split("\n```", 1)[0]
    check_dot(block)


def test_hash_is_escaped():
    p = PatternDoc("P # 1", summary="# not a heading\n# still not", category_primary="A")
    md = export_pattern_markdown(p)
    assert _sections(md) == ["Summary", "Category"]
    assert re.findall(r"^#", md, re.MULTILINE) == ["#", "#", "#"]


_FIELDS = {
    "summary": "S", "category_primary": "A", "dimensions": {Dimension.SOCIAL}, "applicability": "Ap",
    "content": "Co", "example": "Ex", "discussion": "Di", "related": ("R",),
}


def test_markdown_order_over_random_field_subsets():
    rng = random.Random(7)
    body = Model("b", {"x": Element("x", ElementKind.ASSUMPTION, "X")})
    for _ in range(100):
        keys = list(_FIELDS)
        rng.shuffle(keys)
        chosen = keys[: rng.randint(0, len(keys))]
        kwargs = {k: _FIELDS[k] for k in chosen}
        if rng.random() < 0.5:
            kwargs["archetype"] = Archetype(body=body, description="d")
        md = export_pattern_markdown(PatternDoc("P", **kwargs))
        got = _sections(md)
        assert got == [s for s in TEMPLATE if s in got]
        assert len(got) == len(kwargs)


@pytest.mark.parametrize("path", sorted(CORPUS.rglob("*.susm")), ids=lambda p: p.name)
def test_every_corpus_model_exports_valid_dot(path):
    check_dot(export_model_dot(load(path)))
