"""Pattern documents, role-parameterized archetypes, and instantiation into models."""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from types import MappingProxyType
from typing import Mapping

from .diagnostics import SourceSpan
from .model import (
    Dimension,
    Element,
    ElementKind,
    Fragment,
    Link,
    Model,
    ModelError,
    add_element,
    add_link,
)
from .validator import validate_model

ROLE_REF = re.compile(r"\$([A-Za-z_][A-Za-z0-9_]*)")
MAX_SUFFIX_ATTEMPTS = 10**6


def slugify(name: str) -> str:
    return re.sub(r"[^a-z0-9]+", "-", name.lower()).strip("-")


@dataclass(frozen=True)
class Role:
    name: str
    kind: ElementKind
    span: SourceSpan | None = field(default=None, compare=False, repr=False)

    @property
    def placeholder(self) -> str:
        return "$" + self.name


@dataclass(frozen=True)
class Archetype:
    roles: tuple[Role, ...] = ()
    body: Model = field(default_factory=Model)
    description: str = ""
    span: SourceSpan | None = field(default=None, compare=False, repr=False)

    def is_present(self) -> bool:
        return bool(self.body.elements or self.description or self.roles)

    def role(self, name: str) -> Role | None:
        for r in self.roles:
            if r.name == name:
                return r
        return None

    def used_roles(self) -> set[str]:
        used = {eid[1:] for eid in self.body.elements if eid.startswith("$")}
        for el in self.body.elements.values():
            used.update(ROLE_REF.findall(el.label))
        return used


@dataclass(frozen=True)
class PatternDoc:
    name: str
    summary: str = ""
    category_primary: str = ""
    category_secondary: str | None = None
    dimensions: frozenset[Dimension] = frozenset()
    applicability: str = ""
    content: str = ""
    archetype: Archetype = field(default_factory=Archetype)
    example: str = ""
    discussion: str | None = None
    related: tuple[str, ...] = ()
    attrs: Mapping[str, str] = field(default_factory=dict)
    is_stub: bool = False
    source: str | None = field(default=None, compare=False, repr=False)
    span: SourceSpan | None = field(default=None, compare=False, repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "dimensions", frozenset(Dimension(d) for d in self.dimensions))
        object.__setattr__(self, "related", tuple(self.related))
        object.__setattr__(self, "attrs", MappingProxyType(dict(self.attrs)))

    @property
    def slug(self) -> str:
        return slugify(self.name)

    @property
    def categories(self) -> tuple[str, ...]:
        if self.category_secondary:
            return (self.category_primary, self.category_secondary)
        return (self.category_primary,)

    def has_field(self, name: str) -> bool:
        if name == "category":
            return bool(self.category_primary)
        if name == "archetype":
            return self.archetype.is_present()
        value = getattr(self, name)
        if isinstance(value, str):
            return bool(value.strip())
        return bool(value)


def free_roles(pattern: PatternDoc) -> list[str]:
    return [r.name for r in pattern.archetype.roles]


@dataclass(frozen=True)
class Existing:
    id: str


@dataclass(frozen=True)
class Fresh:
    label: str
    kind: ElementKind | None = None
    dimensions: frozenset[Dimension] = frozenset()
    is_tagged: bool = False


Binding = Mapping[str, "Existing | Fresh"]


class InstantiationError(ModelError):
    pass


class UnboundRole(InstantiationError):
    pass


class KindMismatch(InstantiationError):
    pass


class AnchorUnknown(InstantiationError):
    pass


class CollisionExhausted(InstantiationError):
    pass


class InvalidTarget(InstantiationError):
    pass


class _IdAllocator:
    def __init__(self, prefix: str, taken) -> None:
        self.prefix = prefix
        self.taken = set(taken)
        self.counter = 0

    def next(self) -> str:
        for _ in range(MAX_SUFFIX_ATTEMPTS):
            self.counter += 1
            candidate = f"{self.prefix}.{self.counter}"
            if candidate not in self.taken:
                self.taken.add(candidate)
                return candidate
        raise CollisionExhausted(f"no free id with prefix '{self.prefix}' after {MAX_SUFFIX_ATTEMPTS} attempts")


def _fresh_fragment_name(model: Model, base: str) -> str:
    if base not in model.fragments:
        return base
    for n in range(2, MAX_SUFFIX_ATTEMPTS):
        name = f"{base}-{n}"
        if name not in model.fragments:
            return name
    raise CollisionExhausted(f"no free fragment name for '{base}'")


def _error_keys(model: Model) -> set[tuple[str, str]]:
    return {(d.code, d.message) for d in validate_model(model) if d.is_error}


def _extend_inline_fragments(model: Model, new_links: set[str]) -> Model:
    """Inline fragments own every link between their members, so a new link
    joining two members belongs to that fragment as well. Fragments loaded
    from a file keep the file's own link set."""
    fragments = {}
    for name, frag in model.fragments.items():
        if frag.source is None:
            extra = {
                lid for lid in new_links
                if model.links[lid].source in frag.elements and model.links[lid].target in frag.elements
            }
            if extra:
                frag = replace(frag, links=frag.links | extra)
        fragments[name] = frag
    return replace(model, fragments=fragments)


def instantiate(
    pattern: PatternDoc,
    binding: Binding,
    target: Model,
    anchor: str | None = None,
) -> Model:
    """Splice the pattern's archetype into ``target``.

    Roles bound to existing elements reuse them; everything else is added
    under fresh ids ``<pattern-slug>.<n>``. The spliced elements form a new
    fragment named after the pattern. ``target`` itself is never modified.
    """
    arch = pattern.archetype
    before_errors = _error_keys(target)
    if before_errors:
        raise InvalidTarget(f"target model '{target.name}' has validation errors")

    role_names = {r.name for r in arch.roles}
    for role in arch.roles:
        if role.name not in binding:
            raise UnboundRole(f"role '{role.name}' of pattern '{pattern.name}' is not bound")
    for name in binding:
        if name not in role_names:
            raise UnboundRole(f"binding names '{name}', which is not a role of pattern '{pattern.name}'")
    if anchor is not None and anchor not in target.elements:
        raise AnchorUnknown(f"anchor '{anchor}' does not exist in model '{target.name}'")

    for role in arch.roles:
        bound = binding[role.name]
        if isinstance(bound, Existing):
            el = target.elements.get(bound.id)
            if el is None:
                raise UnboundRole(f"role '{role.name}' is bound to unknown element '{bound.id}'")
            if el.kind is not role.kind:
                raise KindMismatch(
                    f"role '{role.name}' expects {role.kind.value}, '{el.id}' is {el.kind.value}"
                )
        elif bound.kind is not None and ElementKind(bound.kind) is not role.kind:
            raise KindMismatch(f"role '{role.name}' expects {role.kind.value}, fresh element is {bound.kind.value}")

    prefix = pattern.slug
    ids = _IdAllocator(prefix, set(target.elements) | set(target.links))
    mapping: dict[str, str] = {}
    new_elements: list[Element] = []
    role_display: dict[str, str] = {}

    for role in arch.roles:
        bound = binding[role.name]
        if isinstance(bound, Existing):
            role_display[role.name] = target.elements[bound.id].display
        else:
            role_display[role.name] = bound.label

    def substitute(text: str) -> str:
        return ROLE_REF.sub(lambda m: role_display.get(m.group(1), m.group(0)), text)

    trace = {"instance_of": pattern.name}
    for role in arch.roles:
        if role.placeholder not in arch.body.elements:
            continue
        bound = binding[role.name]
        if isinstance(bound, Existing):
            mapping[role.placeholder] = bound.id
            continue
        new_id = ids.next()
        mapping[role.placeholder] = new_id
        new_elements.append(Element(
            new_id,
            role.kind,
            bound.label,
            bound.dimensions or pattern.dimensions,
            bound.is_tagged,
            trace,
        ))
    for eid in sorted(e for e in arch.body.elements if not e.startswith("$")):
        el = arch.body.elements[eid]
        new_id = ids.next()
        mapping[eid] = new_id
        attrs = dict(el.attrs)
        attrs.update(trace)
        new_elements.append(Element(
            new_id,
            el.kind,
            substitute(el.label),
            el.dimensions or pattern.dimensions,
            el.is_tagged,
            attrs,
        ))

    result = target
    for el in new_elements:
        result = add_element(result, el)
    for lid in sorted(arch.body.links):
        ln = arch.body.links[lid]
        result = add_link(result, Link(ids.next(), ln.kind, mapping[ln.source], mapping[ln.target], ln.strategy))

    result = _extend_inline_fragments(result, set(result.links) - set(target.links))

    members = frozenset(mapping.values())
    frag = Fragment(
        _fresh_fragment_name(result, prefix),
        members,
        result.induced_links(members),
        anchor,
    )
    result = result.with_fragment(frag)

    new_errors = _error_keys(result) - before_errors
    if new_errors:
        detail = "; ".join(f"[{c}] {m}" for c, m in sorted(new_errors))
        raise InstantiationError(f"instantiating '{pattern.name}' would introduce errors: {detail}")
    return result


@dataclass(frozen=True)
class InstantiationSummary:
    pattern: str
    added_elements: tuple[str, ...]
    added_links: tuple[str, ...]
    added_fragments: tuple[str, ...]

    def lines(self) -> list[str]:
        out = [f"pattern: {self.pattern}"]
        out.append(f"added elements ({len(self.added_elements)}): {', '.join(self.added_elements)}")
        out.append(f"added links ({len(self.added_links)}): {', '.join(self.added_links)}")
        out.append(f"added fragments ({len(self.added_fragments)}): {', '.join(self.added_fragments)}")
        return out

    def __str__(self) -> str:
        return "\n".join(self.lines())


def _natural_key(text: str) -> list:
    return [int(part) if part.isdigit() else part for part in re.split(r"(\d+)", text)]


def diff_instantiation(before: Model, after: Model, pattern: PatternDoc) -> InstantiationSummary:
    def added(a, b) -> tuple[str, ...]:
        return tuple(sorted(set(b) - set(a), key=_natural_key))

    return InstantiationSummary(
        pattern.name,
        added(before.elements, after.elements),
        added(before.links, after.links),
        added(before.fragments, after.fragments),
    )


def expected_added_elements(pattern: PatternDoc, binding: Binding) -> int:
    """Body size minus the roles bound to existing elements."""
    body = pattern.archetype.body
    bound_existing = sum(
        1 for r in pattern.archetype.roles
        if r.placeholder in body.elements and isinstance(binding.get(r.name), Existing)
    )
    return len(body.elements) - bound_existing


def with_source(pattern: PatternDoc, source: str | None) -> PatternDoc:
    return replace(pattern, source=source)
