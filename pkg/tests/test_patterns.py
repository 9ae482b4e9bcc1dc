from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import COVID
from susmod import (
    Existing,
    Fresh,
    diff_instantiation,
    free_roles,
    instantiate,
    parse_model,
    parse_pattern,
    serialize,
    validate_model,
)
from susmod.model import ElementKind
from susmod.patterns import PatternDoc, AnchorUnknown, KindMismatch, UnboundRole, slugify

ANCHOR = "ManageHospitalCapacity"


def test_free_roles(va_pattern):
    assert free_roles(va_pattern) == ["MonitoredCondition", "PredictiveModel", "LoadData", "AugmentAction", "DivertAction"]


def test_free_roles_empty_and_declaration_order():
    assert free_roles(PatternDoc("Empty")) == []
    p = _bare("role Zeta : goal\n role Alpha : activity\n link contributes($Alpha -> $Zeta)")
    assert free_roles(p) == ["Zeta", "Alpha"]


def _bare(body: str):
    return parse_pattern('pattern "Bare" { summary "s" category A dimensions [social] applicability "a" '
                         f'content "c" archetype {{ {body} }} example "e" }}')


def test_slugify():
    assert slugify("Violation Anticipation") == "violation-anticipation"
    assert slugify("Design for Reuse") == "design-for-reuse"


def test_splice_into_covid(covid, va_pattern, va_binding):
    after = instantiate(va_pattern, va_binding, covid, ANCHOR)
    (name,) = set(after.fragments) - set(covid.fragments)
    frag = after.fragments[name]
    assert name == "violation-anticipation" and frag.anchor == ANCHOR
    new = [after.elements[e] for e in frag.elements if e not in covid.elements]
    activities = [e for e in new if e.kind is ElementKind.ACTIVITY]
    assert len(activities) == 3  # one detection step, two management steps
    assert any("Anticipate violation" in e.label for e in activities)
    assert "FairAccessToCare" in frag.elements
    # role references in labels are replaced by the bound element's label
    detect = next(e for e in activities if "Anticipate" in e.label)
    assert "$" not in detect.label
    assert covid.elements["FairAccessToCare"].display in detect.label
    assert not [d for d in validate_model(after) if d.is_error]


def test_diff_counts(covid, va_pattern, va_binding):
    after = instantiate(va_pattern, va_binding, covid, ANCHOR)
    summary = diff_instantiation(covid, after, va_pattern)
    body = va_pattern.archetype.body
    existing = sum(isinstance(v, Existing) for v in va_binding.values())
    assert len(summary.added_elements) == len(body.elements) - existing == 6
    assert len(summary.added_links) == len(body.links) == 9
    assert len(summary.added_fragments) == 1


def test_two_instantiations_have_disjoint_fresh_ids(covid, va_pattern, va_binding):
    once = instantiate(va_pattern, va_binding, covid, ANCHOR)
    twice = instantiate(va_pattern, va_binding, once, ANCHOR)
    first = set(once.elements) - set(covid.elements)
    second = set(twice.elements) - set(once.elements)
    assert first and second and not first & second
    assert set(twice.fragments) - set(once.fragments) == {"violation-anticipation-2"}


def test_frame_property(covid, va_pattern, va_binding):
    after = instantiate(va_pattern, va_binding, covid, ANCHOR)
    for k, v in covid.elements.items():
        assert after.elements[k] == v
    for k, v in covid.links.items():
        assert after.links[k] == v
    for k, v in covid.fragments.items():
        assert after.fragments[k].elements == v.elements
        assert after.fragments[k].links >= v.links


def test_new_link_inside_inline_fragment_joins_it(covid):
    p = _bare("role G : goal\n role A : activity\n link contributes($A -> $G)")
    binding = {"G": Existing("ProportionateProtection"), "A": Existing("AssessVulnerability")}
    after = instantiate(p, binding, covid)
    (new_link,) = set(after.links) - set(covid.links)
    assert new_link in after.fragments["ProtectiveMeasures"].links
    assert parse_model(serialize(after), COVID) == after


def test_determinism_and_reparse(covid, va_pattern, va_binding):
    a = instantiate(va_pattern, va_binding, covid, ANCHOR)
    b = instantiate(va_pattern, dict(reversed(list(va_binding.items()))), covid, ANCHOR)
    assert a == b
    assert serialize(a) == serialize(b)
    assert parse_model(serialize(a), COVID) == a


def test_kind_mismatch(covid, va_pattern, va_binding):
    binding = dict(va_binding, MonitoredCondition=Existing("HospitalOverload"))
    with pytest.raises(KindMismatch):
        instantiate(va_pattern, binding, covid)


def test_unbound_role(covid, va_pattern, va_binding):
    binding = {k: v for k, v in va_binding.items() if k != "LoadData"}
    with pytest.raises(UnboundRole):
        instantiate(va_pattern, binding, covid)


def test_unknown_anchor(covid, va_pattern, va_binding):
    with pytest.raises(AnchorUnknown):
        instantiate(va_pattern, va_binding, covid, "NoSuchElement")


def test_identity_case(covid):
    p = _bare("role G : goal\n role A : activity\n link contributes($A -> $G)")
    binding = {"G": Existing("FairAccessToCare"), "A": Existing("ProvideCare")}
    after = instantiate(p, binding, covid)
    summary = diff_instantiation(covid, after, p)
    assert summary.added_elements == ()
    assert len(summary.added_fragments) == 1


def test_fresh_ids_skip_taken_names(covid, va_pattern, va_binding):
    taken = parse_model(serialize(covid).replace(
        "  goal ", '  goal violation-anticipation.1 dims [social] "taken"\n  goal ', 1), COVID)
    after = instantiate(va_pattern, va_binding, taken, ANCHOR)
    assert after.elements["violation-anticipation.1"].label == "taken"


_FRESH_ROLES = ["PredictiveModel", "LoadData", "AugmentAction", "DivertAction"]


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32))
def test_validity_preserved_for_random_bindings(covid, va_pattern, seed):
    rng = random.Random(seed)
    goals = sorted(e.id for e in covid.elements.values() if e.kind is ElementKind.GOAL)
    activities = sorted(e.id for e in covid.elements.values() if e.kind is ElementKind.ACTIVITY)
    binding = {"MonitoredCondition": Existing(rng.choice(goals))}
    for role in _FRESH_ROLES:
        kind = va_pattern.archetype.role(role).kind
        if kind is ElementKind.ACTIVITY and rng.random() < 0.5:
            binding[role] = Existing(rng.choice(activities))
        else:
            binding[role] = Fresh(f"fresh {role}")
    bound = {v.id for v in binding.values() if isinstance(v, Existing)}
    anchor = rng.choice([None] + [a for a in activities if a not in bound])
    after = instantiate(va_pattern, binding, covid, anchor)
    assert not [d for d in validate_model(after) if d.is_error]
    assert parse_model(serialize(after), COVID) == after
