"""Manifest-driven check of the reconstructed corpus under ``corpus/``."""

from __future__ import annotations

import operator
import re
from dataclasses import dataclass, field
from pathlib import Path

from .catalogue import Catalogue, catalogue_stats, lint_related_distance
from .model import ElementKind, LinkKind, Model, Strategy
from .parser import DSLError, parse_binding, parse_catalogue, parse_model, parse_pattern
from .patterns import PatternDoc
from .validator import validate_model, validate_pattern

KINDS = ("model", "pattern", "catalogue", "binding")
PROVENANCES = ("paper-named", "reconstructed-stub")
SUFFIXES = {".susm", ".susp", ".susc", ".bind"}
_EXPECT = re.compile(r"^([a-z0-9_]+)(>=|=)(\d+)$")
_OPS = {"=": operator.eq, ">=": operator.ge}


def default_root() -> Path:
    return Path(__file__).resolve().parents[2] / "corpus"


class ManifestError(Exception):
    pass


@dataclass(frozen=True)
class ManifestEntry:
    path: str
    kind: str
    provenance: str
    expect: dict[str, tuple[str, int]] = field(default_factory=dict)


def read_manifest(path: Path) -> list[ManifestEntry]:
    entries = []
    for lineno, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        cols = line.split()
        if len(cols) < 3:
            raise ManifestError(f"{path}:{lineno}: expected 'path kind provenance [expectations]'")
        rel, kind, prov, *rest = cols
        if kind not in KINDS:
            raise ManifestError(f"{path}:{lineno}: unknown kind '{kind}'")
        if prov not in PROVENANCES:
            raise ManifestError(f"{path}:{lineno}: unknown provenance '{prov}'")
        expect = {}
        for item in rest:
            m = _EXPECT.match(item)
            if not m:
                raise ManifestError(f"{path}:{lineno}: bad expectation '{item}'")
            expect[m.group(1)] = (m.group(2), int(m.group(3)))
        entries.append(ManifestEntry(rel, kind, prov, expect))
    return entries


def _model_facts(model: Model) -> dict[str, int]:
    diags = validate_model(model)
    return {
        "elements": len(model.elements),
        "links": len(model.links),
        "fragments": len(model.fragments),
        "tagged": sum(1 for e in model.elements.values() if e.is_tagged),
        "anticipation": sum(
            1 for ln in model.links.values()
            if ln.kind is LinkKind.MITIGATES
            and ln.strategy is Strategy.ANTICIPATION
            and model.kind_of(ln.target) is ElementKind.OBSTACLE
        ),
        "errors": sum(1 for d in diags if d.is_error),
        "warnings": sum(1 for d in diags if not d.is_error),
    }


def _pattern_facts(pattern: PatternDoc) -> dict[str, int]:
    diags = validate_pattern(pattern)
    return {
        "roles": len(pattern.archetype.roles),
        "body": len(pattern.archetype.body.elements),
        "errors": sum(1 for d in diags if d.is_error),
        "warnings": sum(1 for d in diags if not d.is_error),
    }


def _catalogue_facts(cat: Catalogue) -> dict[str, int]:
    stats = catalogue_stats(cat)
    lint = lint_related_distance(cat)
    pattern_errors = sum(
        1 for p in cat.patterns for d in validate_pattern(p) if d.is_error
    )
    return {
        "patterns": stats.total,
        "stubs": stats.stubs,
        "categories": len(cat.categories),
        "related": stats.related_edges,
        "c0": sum(1 for d in lint if d.code == "C0"),
        "c1": sum(1 for d in lint if d.code == "C1"),
        "errors": pattern_errors,
    }


@dataclass
class EntryResult:
    entry: ManifestEntry
    problems: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.problems


@dataclass
class CorpusReport:
    results: list[EntryResult]
    unlisted: list[str]

    @property
    def ok(self) -> bool:
        return not self.unlisted and all(r.ok for r in self.results)

    def lines(self) -> list[str]:
        out = []
        for r in self.results:
            status = "ok" if r.ok else "FAIL"
            out.append(f"{status} {r.entry.path} ({r.entry.kind}, {r.entry.provenance})")
            out += [f"  - {p}" for p in r.problems]
        for path in self.unlisted:
            out.append(f"FAIL {path}: not listed in manifest")
        out.append("corpus check " + ("passed" if self.ok else "failed"))
        return out


def _check_entry(root: Path, entry: ManifestEntry) -> EntryResult:
    result = EntryResult(entry)
    path = root / entry.path
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        result.problems.append(f"cannot read: {exc.strerror}")
        return result
    try:
        if entry.kind == "model":
            facts = _model_facts(parse_model(text, path))
        elif entry.kind == "pattern":
            facts = _pattern_facts(parse_pattern(text, path))
        elif entry.kind == "catalogue":
            facts = _catalogue_facts(parse_catalogue(text, path))
        else:
            facts = {"roles": len(parse_binding(text, path))}
    except DSLError as exc:
        result.problems += [d.format() for d in exc.diagnostics if d.is_error]
        return result
    for key, (op, want) in entry.expect.items():
        if key not in facts:
            result.problems.append(f"unknown expectation '{key}' for {entry.kind}")
        elif not _OPS[op](facts[key], want):
            result.problems.append(f"{key}: expected {op}{want}, found {facts[key]}")
    return result


def corpus_check(root: Path | str | None = None) -> CorpusReport:
    """Parse, validate and count every manifest entry."""
    root = Path(root) if root is not None else default_root()
    entries = read_manifest(root / "manifest")
    results = [_check_entry(root, e) for e in entries]
    listed = {e.path for e in entries}
    present = sorted(
        p.relative_to(root).as_posix()
        for p in root.rglob("*")
        if p.is_file() and p.suffix in SUFFIXES
    )
    return CorpusReport(results, [p for p in present if p not in listed])
