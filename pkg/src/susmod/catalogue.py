"""Pattern catalogues: a ring of categories around a central one, pattern
placement on the unit disc, related-pattern distance lint and chain checks."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property

from .diagnostics import Diagnostic, SourceSpan, error, sort_diagnostics, warning
from .patterns import PatternDoc, slugify

DEFAULT_WEIGHTS = (0.7, 0.3)
JITTER_STEP = 0.04


class CatalogueError(Exception):
    pass


class UnknownCategory(CatalogueError):
    pass


class UnknownPattern(CatalogueError):
    pass


@dataclass(frozen=True)
class Catalogue:
    name: str
    cycle: tuple[str, ...]
    center: str
    patterns: tuple[PatternDoc, ...] = ()
    weights: tuple[float, float] = field(default=DEFAULT_WEIGHTS, compare=False)
    span: SourceSpan | None = field(default=None, compare=False, repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "cycle", tuple(self.cycle))
        object.__setattr__(self, "patterns", tuple(self.patterns))
        if len(self.cycle) < 3:
            raise CatalogueError(f"catalogue '{self.name}' needs at least 3 cycle categories")
        names = list(self.cycle) + [self.center]
        if len(set(names)) != len(names):
            raise CatalogueError(f"catalogue '{self.name}' has duplicate category names")
        seen: set[str] = set()
        for p in self.patterns:
            if p.name in seen:
                raise CatalogueError(f"catalogue '{self.name}' lists pattern '{p.name}' twice")
            seen.add(p.name)
            for cat in p.categories:
                if cat not in names:
                    raise UnknownCategory(f"pattern '{p.name}' uses unknown category '{cat}'")

    @property
    def categories(self) -> tuple[str, ...]:
        return self.cycle + (self.center,)

    def find(self, name: str) -> PatternDoc:
        """Look a pattern up by display name or slug."""
        key = slugify(name)
        for p in self.patterns:
            if p.name == name or p.slug == key:
                return p
        raise UnknownPattern(f"no pattern '{name}' in catalogue '{self.name}'")

    @cached_property
    def placements(self) -> dict[str, tuple[float, float]]:
        return placements(self, self.weights)


def _snap(v: float) -> float:
    for target in (-1.0, 0.0, 1.0):
        if abs(v - target) < 1e-12:
            return target
    return v


def anchor(catalogue: Catalogue, category: str) -> tuple[float, float]:
    """Cycle category i of n sits at angle 90 - i*360/n degrees; the center at the origin."""
    if category == catalogue.center:
        return (0.0, 0.0)
    try:
        i = catalogue.cycle.index(category)
    except ValueError:
        raise UnknownCategory(f"unknown category '{category}' in catalogue '{catalogue.name}'") from None
    theta = math.radians(90.0 - i * 360.0 / len(catalogue.cycle))
    return (_snap(math.cos(theta)), _snap(math.sin(theta)))


def base_position(pattern: PatternDoc, catalogue: Catalogue, weights=DEFAULT_WEIGHTS) -> tuple[float, float]:
    primary = anchor(catalogue, pattern.category_primary)
    if not pattern.category_secondary:
        return primary
    secondary = anchor(catalogue, pattern.category_secondary)
    wp, ws = weights
    return (wp * primary[0] + ws * secondary[0], wp * primary[1] + ws * secondary[1])


def _origin_direction(catalogue: Catalogue) -> tuple[float, float]:
    # tie to a named category so the direction rotates with the cycle
    return anchor(catalogue, min(catalogue.cycle))


def placements(catalogue: Catalogue, weights=DEFAULT_WEIGHTS) -> dict[str, tuple[float, float]]:
    """Positions for every pattern; coincident ones are pushed radially apart
    by ``0.04 * k`` for the k-th collider in name order."""
    base = {p.name: base_position(p, catalogue, weights) for p in catalogue.patterns}
    groups: dict[tuple[float, float], list[str]] = {}
    for name, (x, y) in base.items():
        groups.setdefault((round(x, 9), round(y, 9)), []).append(name)
    out: dict[str, tuple[float, float]] = {}
    for names in groups.values():
        for k, name in enumerate(sorted(names)):
            x, y = base[name]
            if k:
                norm = math.hypot(x, y)
                ux, uy = (x / norm, y / norm) if norm > 1e-12 else _origin_direction(catalogue)
                x, y = x + JITTER_STEP * k * ux, y + JITTER_STEP * k * uy
            out[name] = (x, y)
    return dict(sorted(out.items()))


def placement(pattern: PatternDoc, catalogue: Catalogue, weights=DEFAULT_WEIGHTS) -> tuple[float, float]:
    if any(p.name == pattern.name for p in catalogue.patterns):
        return placements(catalogue, weights)[pattern.name]
    return base_position(pattern, catalogue, weights)


def category_distance(catalogue: Catalogue, a: str, b: str) -> int:
    """Hop distance on the wheel formed by the cycle plus the center hub."""
    for c in (a, b):
        if c not in catalogue.categories:
            raise UnknownCategory(f"unknown category '{c}' in catalogue '{catalogue.name}'")
    if a == b:
        return 0
    if catalogue.center in (a, b):
        return 1
    n = len(catalogue.cycle)
    hops = abs(catalogue.cycle.index(a) - catalogue.cycle.index(b))
    return min(hops, n - hops, 2)


def pattern_distance(catalogue: Catalogue, a: PatternDoc, b: PatternDoc) -> int:
    return category_distance(catalogue, a.category_primary, b.category_primary)


def related_pairs(catalogue: Catalogue) -> tuple[list[tuple[PatternDoc, PatternDoc]], list[tuple[PatternDoc, str]]]:
    """Unique undirected related pairs, plus (pattern, name) references that do not resolve."""
    seen: set[tuple[str, str]] = set()
    pairs = []
    missing = []
    for p in sorted(catalogue.patterns, key=lambda p: p.name):
        for ref in p.related:
            try:
                q = catalogue.find(ref)
            except UnknownPattern:
                missing.append((p, ref))
                continue
            key = tuple(sorted((p.name, q.name)))
            if key not in seen:
                seen.add(key)
                pairs.append((p, q) if p.name <= q.name else (q, p))
    return pairs, missing


def lint_related_distance(catalogue: Catalogue) -> list[Diagnostic]:
    pairs, missing = related_pairs(catalogue)
    diags = [
        error("C0", f"pattern '{p.name}' refers to unknown related pattern '{ref}'", p.span)
        for p, ref in missing
    ]
    for a, b in pairs:
        d = pattern_distance(catalogue, a, b)
        if d > 1:
            diags.append(warning(
                "C1",
                f"related patterns '{a.name}' ({a.category_primary}) and '{b.name}' ({b.category_primary}) "
                f"are {d} categories apart",
                a.span,
            ))
    return sort_diagnostics(diags)


@dataclass(frozen=True)
class ChainStep:
    source: str
    target: str
    distance: int

    @property
    def smooth(self) -> bool:
        return self.distance <= 1

    @property
    def status(self) -> str:
        return "smooth" if self.smooth else "jump"


@dataclass(frozen=True)
class ChainReport:
    steps: tuple[ChainStep, ...]
    closing: ChainStep

    @property
    def closed(self) -> bool:
        return self.closing.smooth

    @property
    def jumps(self) -> int:
        return sum(1 for s in self.steps if not s.smooth)

    @property
    def verdict(self) -> str:
        if self.jumps:
            return f"broken chain ({self.jumps} jump{'s' if self.jumps > 1 else ''})"
        return "coherent loop" if self.closed else "coherent open chain"

    def lines(self) -> list[str]:
        out = [f"{s.source} -> {s.target}: {s.status} (distance {s.distance})" for s in self.steps]
        c = self.closing
        out.append(f"closing {c.source} -> {c.target}: {'closed' if self.closed else 'open'} (distance {c.distance})")
        out.append(f"verdict: {self.verdict}")
        return out

    def as_dict(self) -> dict:
        return {
            "version": "1",
            "steps": [
                {"from": s.source, "to": s.target, "distance": s.distance, "status": s.status}
                for s in self.steps
            ],
            "closed": self.closed,
            "verdict": self.verdict,
        }


def compose_chain(catalogue: Catalogue, names: list[str]) -> ChainReport:
    if len(names) < 2:
        raise ValueError("a chain needs at least two patterns")
    pats = [catalogue.find(n) for n in names]

    def step(a: PatternDoc, b: PatternDoc) -> ChainStep:
        return ChainStep(a.name, b.name, pattern_distance(catalogue, a, b))

    steps = tuple(step(a, b) for a, b in zip(pats, pats[1:]))
    return ChainReport(steps, step(pats[-1], pats[0]))


@dataclass(frozen=True)
class CatalogueStats:
    per_category: dict[str, int]
    total: int
    related_edges: int
    stubs: int = 0

    def lines(self) -> list[str]:
        out = [f"patterns: {self.total}", f"related edges: {self.related_edges}", f"stubs: {self.stubs}"]
        out += [f"category {name}: {count}" for name, count in self.per_category.items()]
        return out

    def as_dict(self) -> dict:
        return {
            "version": "1",
            "patterns": self.total,
            "related_edges": self.related_edges,
            "stubs": self.stubs,
            "categories": dict(self.per_category),
        }


def catalogue_stats(catalogue: Catalogue) -> CatalogueStats:
    counts = {c: 0 for c in catalogue.categories}
    for p in catalogue.patterns:
        counts[p.category_primary] += 1
    pairs, _ = related_pairs(catalogue)
    return CatalogueStats(
        counts,
        len(catalogue.patterns),
        len(pairs),
        sum(1 for p in catalogue.patterns if p.is_stub),
    )
