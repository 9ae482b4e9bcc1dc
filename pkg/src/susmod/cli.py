"""``susmod`` command line: validate, instantiate, catalogue, render, fmt.

Exit codes: 0 clean, 1 warnings (or non-canonical files under ``fmt --check``),
2 errors, 3 I/O failures. Diagnostics go to stderr, data to stdout.
"""

from __future__ import annotations

import argparse
import configparser
import json
import os
import sys
from pathlib import Path

from . import __version__
from .catalogue import (
    DEFAULT_WEIGHTS,
    Catalogue,
    CatalogueError,
    anchor,
    catalogue_stats,
    compose_chain,
    lint_related_distance,
    placements,
)
from .corpus import corpus_check
from .diagnostics import Diagnostic, sort_diagnostics
from .export import InvalidModel, export_catalogue_dot, export_model_dot, export_pattern_markdown
from .model import Model, ModelError
from .parser import DSLError, kind_for_path, load, parse_binding
from .patterns import PatternDoc, diff_instantiation, instantiate
from .serializer import format_source, serialize_model
from .validator import validate_model, validate_pattern

OK, WARNINGS, ERRORS, IO_FAILURE = 0, 1, 2, 3


class UsageError(Exception):
    """Bad input that argparse could not catch; maps to exit code 2."""


class _Output:
    def __init__(self, color: bool) -> None:
        self.color = color

    def diagnostic(self, d: Diagnostic, file: str | None = None) -> None:
        text = d.format(file)
        if self.color:
            code = "31" if d.is_error else "33"
            text = f"\x1b[{code}m{text}\x1b[0m"
        print(text, file=sys.stderr)

    def note(self, text: str) -> None:
        print(text, file=sys.stderr)


def _use_color(args) -> bool:
    if args.no_color or os.environ.get("SUSMOD_NO_COLOR"):
        return False
    return sys.stderr.isatty()


def _parse_weights(text: str | None) -> tuple[float, float]:
    if text is None:
        return DEFAULT_WEIGHTS
    try:
        primary, secondary = (float(x) for x in str(text).split(","))
    except ValueError:
        raise UsageError(f"--weights expects two comma-separated numbers, got '{text}'") from None
    return (primary, secondary)


BOOLEAN_KEYS = ("no_color", "strict", "json", "check")


def read_config(path: Path) -> dict[str, object]:
    """Flag defaults from the ``[susmod]`` section of an INI file."""
    parser = configparser.ConfigParser()
    try:
        with open(path, encoding="utf-8") as fh:
            parser.read_file(fh)
    except configparser.Error as exc:
        raise UsageError(f"{path}: {exc}") from None
    if not parser.has_section("susmod"):
        raise UsageError(f"{path}: missing [susmod] section")
    section = parser["susmod"]
    out: dict[str, object] = {}
    for key in section:
        name = key.replace("-", "_")
        try:
            out[name] = section.getboolean(key) if name in BOOLEAN_KEYS else section[key]
        except ValueError:
            raise UsageError(f"{path}: '{key}' must be true or false") from None
    return out


def _load(path: str, out: _Output, expect: str | None = None):
    diags: list[Diagnostic] = []
    try:
        kind = kind_for_path(path)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if expect is not None and kind != expect:
        raise UsageError(f"{path}: expected a {expect} file")
    try:
        obj = load(path, diagnostics=diags)
    except DSLError as exc:
        exc.reported = True
        raise
    finally:
        for d in diags:
            out.diagnostic(d, path)
    return obj


def _severity_code(diags: list[Diagnostic], warnings_fail: bool = True) -> int:
    if any(d.is_error for d in diags):
        return ERRORS
    if diags and warnings_fail:
        return WARNINGS
    return OK


# commands

def cmd_validate(args, out: _Output) -> int:
    status = OK
    for path in args.paths:
        diags: list[Diagnostic] = []
        try:
            kind = kind_for_path(path)
            obj = load(path, diagnostics=diags)
        except OSError as exc:
            out.note(f"{path}: cannot read: {exc.strerror or exc}")
            status = max(status, IO_FAILURE)
            continue
        except ValueError as exc:
            out.note(f"{path}: {exc}")
            status = max(status, ERRORS)
            continue
        except DSLError as exc:
            for d in exc.diagnostics:
                out.diagnostic(d, path)
            status = max(status, ERRORS)
            continue
        if kind == "model":
            diags += validate_model(obj)
        elif kind == "pattern":
            diags += validate_pattern(obj)
        else:
            for p in obj.patterns:
                diags += validate_pattern(p)
            diags += lint_related_distance(obj)
        diags = sort_diagnostics(diags)
        for d in diags:
            out.diagnostic(d, path)
        status = max(status, _severity_code(diags, warnings_fail=args.strict))
    return status


def cmd_instantiate(args, out: _Output) -> int:
    pattern = _load(args.pattern, out, "pattern")
    model = _load(args.model, out, "model")
    binding_text = Path(args.binding).read_text(encoding="utf-8")
    binding = parse_binding(binding_text, args.binding)
    result = instantiate(pattern, binding, model, args.anchor)
    target_dir = Path(args.out).parent if args.out and args.out != "-" else Path.cwd()
    text = serialize_model(result, relocate=(str(Path(args.model).parent), str(target_dir)))
    if args.out and args.out != "-":
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    for line in diff_instantiation(model, result, pattern).lines():
        out.note(line)
    return OK


def _catalogue_index(cat: Catalogue, weights) -> list[str]:
    pos = placements(cat, weights)
    lines = []
    for category in cat.categories:
        role = "center" if category == cat.center else "cycle"
        ax, ay = anchor(cat, category)
        lines.append(f"{category} ({role}, anchor {ax:.3f}, {ay:.3f})")
        for p in cat.patterns:
            if p.category_primary == category:
                x, y = pos[p.name]
                extra = f", secondary {p.category_secondary}" if p.category_secondary else ""
                stub = " [stub]" if p.is_stub else ""
                lines.append(f"  - {p.name}{stub} at ({x:.3f}, {y:.3f}){extra}")
    return lines


def cmd_catalogue(args, out: _Output) -> int:
    cat = _load(args.path, out, "catalogue")
    weights = _parse_weights(args.weights)
    if args.action == "stats":
        stats = catalogue_stats(cat)
        if args.json:
            print(json.dumps(stats.as_dict(), indent=2, sort_keys=True))
        else:
            print("\n".join(stats.lines()))
        return OK
    if args.action == "lint":
        diags = lint_related_distance(cat)
        for d in diags:
            out.diagnostic(d, args.path)
        if args.json:
            doc = {
                "version": "1",
                "diagnostics": [
                    {"severity": d.severity.value, "code": d.code, "message": d.message} for d in diags
                ],
            }
            print(json.dumps(doc, indent=2, sort_keys=True))
        return _severity_code(diags)
    if args.action == "chain":
        report = compose_chain(cat, args.names)
        if args.json:
            print(json.dumps(report.as_dict(), indent=2, sort_keys=True))
        else:
            print("\n".join(report.lines()))
        return OK
    if args.json:
        pos = placements(cat, weights)
        doc = {
            "version": "1",
            "cycle": list(cat.cycle),
            "center": cat.center,
            "placements": {name: [x, y] for name, (x, y) in pos.items()},
        }
        print(json.dumps(doc, indent=2, sort_keys=True))
    else:
        print("\n".join(_catalogue_index(cat, weights)))
    return OK


def _render_text(obj, fmt: str, weights) -> str:
    if isinstance(obj, Model):
        if fmt != "dot":
            raise UsageError("models can only be rendered as dot")
        return export_model_dot(obj)
    if isinstance(obj, PatternDoc):
        return export_pattern_markdown(obj) if fmt == "md" else export_model_dot(obj.archetype.body)
    if fmt != "dot":
        raise UsageError("catalogues can only be rendered as dot")
    return export_catalogue_dot(obj, weights)


def cmd_render(args, out: _Output) -> int:
    weights = _parse_weights(args.weights)
    status = OK
    for path in args.paths:
        obj = _load(path, out)
        fmt = args.format or ("md" if isinstance(obj, PatternDoc) else "dot")
        text = _render_text(obj, fmt, weights)
        if args.out == "-":
            sys.stdout.write(text)
            continue
        target_dir = Path(args.out) if args.out else Path(path).parent
        target_dir.mkdir(parents=True, exist_ok=True)
        target = target_dir / (Path(path).stem + "." + fmt)
        target.write_text(text, encoding="utf-8")
        out.note(f"wrote {target}")
    return status


def cmd_fmt(args, out: _Output) -> int:
    status = OK
    for path in args.paths:
        text = Path(path).read_text(encoding="utf-8")
        try:
            canonical = format_source(text, path)
        except DSLError as exc:
            for d in exc.diagnostics:
                out.diagnostic(d, path)
            status = max(status, ERRORS)
            continue
        except ValueError as exc:
            out.note(f"{path}: {exc}")
            status = max(status, ERRORS)
            continue
        if canonical == text:
            continue
        if args.check:
            out.note(f"{path}: not in canonical form")
            status = max(status, WARNINGS)
        else:
            Path(path).write_text(canonical, encoding="utf-8")
            out.note(f"formatted {path}")
    return status


def cmd_corpus(args, out: _Output) -> int:
    report = corpus_check(args.root)
    print("\n".join(report.lines()))
    return OK if report.ok else ERRORS


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="susmod", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"susmod {__version__}")
    parser.add_argument("--no-color", action="store_true", default=None, help="disable ANSI colours")
    parser.add_argument("--config", help="INI file whose [susmod] section provides flag defaults")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="parse and validate models, patterns or catalogues")
    p.add_argument("paths", nargs="+")
    p.add_argument("--strict", action="store_true", default=None, help="exit 1 on warnings")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("instantiate", help="splice a pattern archetype into a model")
    p.add_argument("pattern")
    p.add_argument("binding")
    p.add_argument("model")
    p.add_argument("--anchor")
    p.add_argument("--out", help="output file (default: stdout)")
    p.set_defaults(func=cmd_instantiate)

    p = sub.add_parser("catalogue", help="catalogue index, lint, stats and chain checks")
    p.add_argument("action", choices=["index", "lint", "stats", "chain"])
    p.add_argument("path")
    p.add_argument("names", nargs="*", help="pattern names for 'chain'")
    p.add_argument("--json", action="store_true", default=None)
    p.add_argument("--weights", help="primary,secondary placement weights (default 0.7,0.3)")
    p.set_defaults(func=cmd_catalogue)

    p = sub.add_parser("render", help="export DOT or Markdown")
    p.add_argument("paths", nargs="+")
    p.add_argument("--format", choices=["dot", "md"])
    p.add_argument("--out", help="output directory, or '-' for stdout")
    p.add_argument("--weights", help="primary,secondary placement weights (default 0.7,0.3)")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("fmt", help="rewrite files in canonical form")
    p.add_argument("paths", nargs="+")
    p.add_argument("--check", action="store_true", default=None, help="only report non-canonical files")
    p.set_defaults(func=cmd_fmt)

    p = sub.add_parser("corpus", help="check the bundled corpus against its manifest")
    p.add_argument("root", nargs="?")
    p.set_defaults(func=cmd_corpus)
    return parser


FLAG_DEFAULTS = {"no_color": False, "strict": False, "json": False, "check": False}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = _Output(False)
    try:
        if args.config:
            for key, value in read_config(Path(args.config)).items():
                if getattr(args, key, None) is None and (hasattr(args, key) or key == "no_color"):
                    setattr(args, key, value)
        for key, value in FLAG_DEFAULTS.items():
            if getattr(args, key, False) is None:
                setattr(args, key, value)
        out = _Output(_use_color(args))
        if getattr(args, "command", None) == "catalogue" and args.action == "chain" and len(args.names) < 2:
            raise UsageError("chain needs at least two pattern names")
        return args.func(args, out)
    except DSLError as exc:
        if not getattr(exc, "reported", False):
            for d in exc.diagnostics:
                out.diagnostic(d)
        return ERRORS
    except (ModelError, CatalogueError, InvalidModel, UsageError, ValueError) as exc:
        out.note(f"error: {type(exc).__name__}: {exc}")
        return ERRORS
    except OSError as exc:
        out.note(f"error: {exc.strerror or exc}: {exc.filename or ''}".rstrip(": "))
        return IO_FAILURE


if __name__ == "__main__":
    sys.exit(main())
