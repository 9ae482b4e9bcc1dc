from __future__ import annotations

import math
from collections import deque

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import FIXTURES
from susmod import (
    Catalogue,
    PatternDoc,
    catalogue_stats,
    compose_chain,
    lint_related_distance,
    load,
    placement,
    placements,
)
from susmod.catalogue import CatalogueError, UnknownCategory, anchor, category_distance

LONG_LOOP = ["design-for-reuse", "green-procurement", "renovation-built", "preventive-maintenance", "easy-dismantling"]


def stub(name, primary, secondary=None, related=()):
    return PatternDoc(name, category_primary=primary, category_secondary=secondary, related=related, is_stub=True)


def four(patterns=()):
    return Catalogue("C", ("N", "E", "S", "W"), "Hub", tuple(patterns))


def test_single_anchor_placement():
    p = stub("P", "N")
    assert placement(p, four([p])) == (0.0, 1.0)


def test_weighted_pull_worked_value():
    p = stub("P", "N", "E")
    assert placement(p, four([p])) == (0.3, 0.7)


def test_center_secondary_pulls_toward_origin(fairness):
    co = fairness.find("Co-innovation")
    assert (co.category_primary, co.category_secondary) == ("Evolution", "Governance")
    ax, ay = anchor(fairness, "Evolution")
    x, y = placement(co, fairness)
    assert math.isclose(x, 0.7 * ax, abs_tol=1e-12) and math.isclose(y, 0.7 * ay, abs_tol=1e-12)


def test_weights_override():
    p = stub("P", "N", "E")
    x, y = placements(four([p]), (0.5, 0.5))["P"]
    assert (x, y) == (0.5, 0.5)


def test_collisions_are_separated(circular):
    pos = list(circular.placements.values())
    rounded = {(round(x, 9), round(y, 9)) for x, y in pos}
    assert len(rounded) == len(pos)


def test_unknown_category_rejected():
    with pytest.raises(UnknownCategory):
        four([stub("P", "Nowhere")])
    with pytest.raises(CatalogueError):
        Catalogue("C", ("A", "B"), "Hub")


def _wheel_distance(cycle, center, a, b):
    """BFS on the wheel graph: cycle neighbours plus spokes to the center."""
    adj = {c: set() for c in list(cycle) + [center]}
    n = len(cycle)
    for i, c in enumerate(cycle):
        for nb in (cycle[(i + 1) % n], cycle[i - 1], center):
            adj[c].add(nb)
            adj[nb].add(c)
    dist = {a: 0}
    queue = deque([a])
    while queue:
        x = queue.popleft()
        for y in adj[x]:
            if y not in dist:
                dist[y] = dist[x] + 1
                queue.append(y)
    return dist[b]


@given(st.integers(3, 8))
def test_distance_is_a_metric(n):
    cycle = tuple(f"c{i}" for i in range(n))
    cat = Catalogue("C", cycle, "Hub")
    cats = cat.categories
    for a in cats:
        for b in cats:
            d = category_distance(cat, a, b)
            assert d == category_distance(cat, b, a)
            assert (d == 0) == (a == b)
            assert d == _wheel_distance(cycle, "Hub", a, b)
            for c in cats:
                assert category_distance(cat, a, c) <= d + category_distance(cat, b, c)


def test_distance_worked_values(circular):
    assert category_distance(circular, "Design", "Procurement") == 1
    assert category_distance(circular, "Design", "Dismantling") == 1
    assert category_distance(circular, "Design", "Usage") == 2
    assert category_distance(circular, "Usage", "Governance") == 1


def test_corpus_catalogues_lint_clean(fairness, circular):
    assert lint_related_distance(fairness) == []
    assert lint_related_distance(circular) == []


def test_violation_anticipation_related_is_neighbour(fairness):
    va, ra = fairness.find("Violation Anticipation"), fairness.find("Rule Acceptance")
    assert category_distance(fairness, va.category_primary, ra.category_primary) == 1


def test_distance_two_fixture_gives_one_c1():
    diags = lint_related_distance(load(FIXTURES / "distant_related.susc"))
    assert [d.code for d in diags] == ["C1"]


def test_unknown_related_is_c0():
    cat = four([stub("P", "N", related=("Ghost",))])
    (d,) = lint_related_distance(cat)
    assert d.code == "C0" and d.is_error


def test_long_loop_is_coherent(circular):
    report = compose_chain(circular, LONG_LOOP)
    assert report.verdict == "coherent loop"
    assert report.closed and report.jumps == 0


def test_identical_pair_is_smooth_and_closed(circular):
    report = compose_chain(circular, ["design-for-reuse", "design-for-reuse"])
    assert report.jumps == 0 and report.closed


def test_design_to_usage_jump(circular):
    report = compose_chain(circular, ["design-for-reuse", "preventive-maintenance"])
    assert report.jumps == 1
    assert report.steps[0].distance == 2
    assert report.verdict.startswith("broken chain")


def test_chain_needs_two_patterns(circular):
    with pytest.raises(ValueError):
        compose_chain(circular, ["design-for-reuse"])


@settings(max_examples=100)
@given(n=st.integers(3, 8), picks=st.lists(st.integers(0, 8), min_size=2, max_size=6))
def test_lint_and_chain_agree(n, picks):
    cycle = tuple(f"c{i}" for i in range(n))
    cats = list(cycle) + ["Hub"]
    names = [f"p{i}" for i in range(len(picks))]
    patterns = [
        stub(name, cats[k % len(cats)], related=(names[i + 1],) if i + 1 < len(names) else ())
        for i, (name, k) in enumerate(zip(names, picks))
    ]
    cat = Catalogue("C", cycle, "Hub", tuple(patterns))
    report = compose_chain(cat, names)
    c1 = [d for d in lint_related_distance(cat) if d.code == "C1"]
    assert (report.jumps == 0) == (not c1)


def test_stats(fairness, circular):
    assert catalogue_stats(fairness).total == 12
    assert catalogue_stats(circular).total == 14
    s = catalogue_stats(fairness)
    assert sum(s.per_category.values()) == 12
    assert s.lines()[0] == "patterns: 12"


def test_empty_catalogue_stats():
    s = catalogue_stats(four())
    assert s.total == 0 and s.related_edges == 0 and s.stubs == 0
    assert set(s.per_category.values()) == {0}


def _rotate(x, y, deg):
    t = math.radians(deg)
    return (x * math.cos(t) - y * math.sin(t), x * math.sin(t) + y * math.cos(t))


@given(st.integers(3, 8), st.lists(st.tuples(st.integers(0, 8), st.integers(-1, 8)), max_size=12))
def test_placement_bound_and_rotation(n, specs):
    cycle = tuple(f"c{i}" for i in range(n))
    cats = list(cycle) + ["Hub"]
    pats = []
    for i, (a, b) in enumerate(specs):
        prim = cats[a % len(cats)]
        sec = cats[b % len(cats)] if b >= 0 and cats[b % len(cats)] != prim else None
        pats.append(stub(f"p{i}", prim, sec))
    cat = Catalogue("C", cycle, "Hub", tuple(pats))
    pos = cat.placements
    for x, y in pos.values():
        assert math.hypot(x, y) <= 1 + 0.04 * len(pats) + 1e-12
    turned = Catalogue("C", cycle[1:] + cycle[:1], "Hub", tuple(pats)).placements
    for name, (x, y) in pos.items():
        rx, ry = _rotate(x, y, 360.0 / n)
        assert math.isclose(turned[name][0], rx, abs_tol=1e-9)
        assert math.isclose(turned[name][1], ry, abs_tol=1e-9)
