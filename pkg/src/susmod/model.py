"""In-memory sustainability meta-model: elements, kinded links, fragments, models.

Models are immutable values. ``add_element`` and ``add_link`` return a new
model and leave the input untouched.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum
from types import MappingProxyType
from typing import Iterable, Mapping

import networkx as nx

from .diagnostics import SourceSpan


class Dimension(str, Enum):
    ENVIRONMENTAL = "environmental"
    ECONOMIC = "economic"
    SOCIAL = "social"
    PERSONAL = "personal"
    TECHNICAL = "technical"


DIMENSION_ALIASES = {"financial": Dimension.ECONOMIC, "individual": Dimension.PERSONAL}


class ElementKind(str, Enum):
    VALUE = "value"
    GOAL = "goal"
    ACTIVITY = "activity"
    OBSTACLE = "obstacle"
    ASSUMPTION = "assumption"
    REGULATION = "regulation"
    RESOURCE = "resource"
    INDICATOR = "indicator"
    STAKEHOLDER = "stakeholder"


# kinds that may be declared without any sustainability dimension
DIMENSIONLESS_KINDS = frozenset(
    {ElementKind.ASSUMPTION, ElementKind.REGULATION, ElementKind.INDICATOR, ElementKind.STAKEHOLDER}
)


class LinkKind(str, Enum):
    REFINES = "refines"
    CONTRIBUTES = "contributes"
    OBSTRUCTS = "obstructs"
    MITIGATES = "mitigates"
    MONITORS = "monitors"
    USES_RESOURCE = "uses_resource"
    RESPONSIBLE_FOR = "responsible_for"


class Strategy(str, Enum):
    AVOIDANCE = "avoidance"
    ANTICIPATION = "anticipation"
    REPAIR = "repair"
    DEGRADED_MODE = "degraded_mode"


def _ordered(enum_cls) -> dict:
    return {member: i for i, member in enumerate(enum_cls)}


DIMENSION_ORDER = _ordered(Dimension)
KIND_ORDER = _ordered(ElementKind)
LINK_ORDER = _ordered(LinkKind)


def _rows(kind: LinkKind, sources: Iterable[str], targets: Iterable[str]):
    return {(kind, ElementKind(s), ElementKind(t)) for s in sources for t in targets}


V, G = ElementKind.VALUE, ElementKind.GOAL

ENDPOINT_TABLE: frozenset[tuple[LinkKind, ElementKind, ElementKind]] = frozenset(
    {(LinkKind.REFINES, V, V), (LinkKind.REFINES, G, G), (LinkKind.REFINES, G, V)}
    | _rows(LinkKind.CONTRIBUTES, ["activity", "assumption", "regulation"], ["value", "goal"])
    | _rows(LinkKind.OBSTRUCTS, ["obstacle"], ["value", "goal", "activity"])
    | _rows(LinkKind.MITIGATES, ["activity"], ["obstacle"])
    | _rows(LinkKind.MONITORS, ["indicator"], ["value", "goal", "activity", "resource"])
    | _rows(LinkKind.USES_RESOURCE, ["activity"], ["resource"])
    | _rows(LinkKind.RESPONSIBLE_FOR, ["stakeholder"], ["activity"])
)


def link_admissible(kind: LinkKind, source: ElementKind, target: ElementKind) -> bool:
    return (kind, source, target) in ENDPOINT_TABLE


class ModelError(Exception):
    """Base class for model construction errors."""


class DuplicateId(ModelError):
    pass


class UnknownId(ModelError):
    pass


class DanglingEndpoint(ModelError):
    pass


class IllegalEndpointKinds(ModelError):
    pass


class StrategyOnNonMitigation(ModelError):
    pass


class MissingDimension(ModelError):
    pass


def _frozen_map(data: Mapping | None) -> Mapping:
    return MappingProxyType(dict(data or {}))


@dataclass(frozen=True)
class Element:
    id: str
    kind: ElementKind
    label: str = ""
    dimensions: frozenset[Dimension] = frozenset()
    is_tagged: bool = False
    attrs: Mapping[str, str] = field(default_factory=dict)
    span: SourceSpan | None = field(default=None, compare=False, repr=False)

    def __post_init__(self) -> None:
        if not self.id:
            raise ModelError("element id must be non-empty")
        object.__setattr__(self, "kind", ElementKind(self.kind))
        object.__setattr__(self, "dimensions", frozenset(Dimension(d) for d in self.dimensions))
        object.__setattr__(self, "attrs", _frozen_map(self.attrs))

    @property
    def is_placeholder(self) -> bool:
        """Role placeholders inside a pattern archetype are written ``$Role``."""
        return self.id.startswith("$")

    @property
    def display(self) -> str:
        return self.label or self.id

    def sorted_dimensions(self) -> list[Dimension]:
        return sorted(self.dimensions, key=DIMENSION_ORDER.__getitem__)


def check_dimensions(element: Element) -> None:
    if not element.dimensions and element.kind not in DIMENSIONLESS_KINDS and not element.is_placeholder:
        raise MissingDimension(f"{element.kind.value} '{element.id}' must carry at least one dimension")


def auto_link_id(kind: LinkKind, source: str, target: str) -> str:
    return f"{LinkKind(kind).value}({source}->{target})"


@dataclass(frozen=True)
class Link:
    id: str
    kind: LinkKind
    source: str
    target: str
    strategy: Strategy | None = None
    span: SourceSpan | None = field(default=None, compare=False, repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", LinkKind(self.kind))
        if self.strategy is not None:
            object.__setattr__(self, "strategy", Strategy(self.strategy))

    @classmethod
    def auto(cls, kind, source: str, target: str, strategy=None, span=None) -> "Link":
        return cls(auto_link_id(kind, source, target), kind, source, target, strategy, span)


@dataclass(frozen=True)
class Fragment:
    """A named connected sub-model, optionally anchored at a parent element.

    ``source`` records the external file the fragment was loaded from, if any;
    it does not take part in equality.
    """

    name: str
    elements: frozenset[str] = frozenset()
    links: frozenset[str] = frozenset()
    anchor: str | None = None
    source: str | None = field(default=None, compare=False)
    span: SourceSpan | None = field(default=None, compare=False, repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "elements", frozenset(self.elements))
        object.__setattr__(self, "links", frozenset(self.links))


@dataclass(frozen=True)
class Model:
    name: str = ""
    elements: Mapping[str, Element] = field(default_factory=dict)
    links: Mapping[str, Link] = field(default_factory=dict)
    fragments: Mapping[str, Fragment] = field(default_factory=dict)
    meta: Mapping[str, str] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for name in ("elements", "links", "fragments", "meta"):
            object.__setattr__(self, name, _frozen_map(getattr(self, name)))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Model):
            return NotImplemented
        return (
            self.name == other.name
            and dict(self.elements) == dict(other.elements)
            and dict(self.links) == dict(other.links)
            and dict(self.fragments) == dict(other.fragments)
            and dict(self.meta) == dict(other.meta)
        )

    __hash__ = None  # type: ignore[assignment]

    def kind_of(self, element_id: str) -> ElementKind | None:
        el = self.elements.get(element_id)
        return el.kind if el else None

    def induced_links(self, subset: Iterable[str]) -> frozenset[str]:
        members = set(subset)
        return frozenset(
            lid for lid, ln in self.links.items() if ln.source in members and ln.target in members
        )

    def with_fragment(self, fragment: Fragment) -> "Model":
        if fragment.name in self.fragments:
            raise DuplicateId(f"fragment '{fragment.name}' already exists")
        fragments = dict(self.fragments)
        fragments[fragment.name] = fragment
        return replace(self, fragments=fragments)


def add_element(model: Model, element: Element) -> Model:
    if element.id in model.elements or element.id in model.links:
        raise DuplicateId(f"id '{element.id}' already exists")
    check_dimensions(element)
    elements = dict(model.elements)
    elements[element.id] = element
    return replace(model, elements=elements)


def check_link(model: Model, link: Link) -> None:
    """Raise the matching ``ModelError`` if ``link`` cannot be added to ``model``."""
    for end in (link.source, link.target):
        if end not in model.elements:
            raise DanglingEndpoint(f"link '{link.id}' endpoint '{end}' does not exist")
    src, dst = model.elements[link.source].kind, model.elements[link.target].kind
    if not link_admissible(link.kind, src, dst):
        raise IllegalEndpointKinds(
            f"{link.kind.value} link may not go from {src.value} '{link.source}' to {dst.value} '{link.target}'"
        )
    if link.strategy is not None and link.kind is not LinkKind.MITIGATES:
        raise StrategyOnNonMitigation(f"strategy given on {link.kind.value} link '{link.id}'")


def add_link(model: Model, link: Link) -> Model:
    if link.id in model.links or link.id in model.elements:
        raise DuplicateId(f"id '{link.id}' already exists")
    check_link(model, link)
    links = dict(model.links)
    links[link.id] = link
    return replace(model, links=links)


def undirected_components(model: Model, subset: Iterable[str]) -> list[list[str]]:
    """Connected components of ``subset`` under the model's links, ignoring direction.

    Each component is sorted; components are ordered by their smallest member.
    """
    members = set(subset)
    for m in members:
        if m not in model.elements:
            raise UnknownId(f"unknown element '{m}'")
    graph = nx.Graph()
    graph.add_nodes_from(members)
    graph.add_edges_from(
        (ln.source, ln.target) for ln in model.links.values()
        if ln.source in members and ln.target in members
    )
    return sorted((sorted(c) for c in nx.connected_components(graph)), key=lambda c: c[0])
