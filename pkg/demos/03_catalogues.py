"""Catalogue geometry: placements on the cycle, related-pattern lint and chains.

Run from the repository root:  python demos/03_catalogues.py
"""

from __future__ import annotations

from pathlib import Path

from susmod import catalogue_stats, compose_chain, lint_related_distance, load

CORPUS = Path(__file__).resolve().parents[1] / "corpus"


def show(path: Path) -> None:
    cat = load(path)
    stats = catalogue_stats(cat)
    print(f"{cat.name}: cycle {' > '.join(cat.cycle)}, center {cat.center}")
    print(f"  {stats.total} patterns ({stats.stubs} stubs), {stats.related_edges} related pairs")
    for name, (x, y) in cat.placements.items():
        p = cat.find(name)
        if not p.is_stub:
            print(f"  {name:24} ({x:+.3f}, {y:+.3f})  {p.category_primary}")
    print("  lint:", [d.format() for d in lint_related_distance(cat)] or "clean")


def main() -> None:
    show(CORPUS / "fairness" / "fairness.susc")
    print()
    circular = CORPUS / "circular" / "circular.susc"
    show(circular)

    cat = load(circular)
    loop = ["design-for-reuse", "green-procurement", "renovation-built", "preventive-maintenance", "easy-dismantling"]
    print()
    print("\n".join(compose_chain(cat, loop).lines()))
    print()
    print("\n".join(compose_chain(cat, ["design-for-reuse", "preventive-maintenance"]).lines()))


if __name__ == "__main__":
    main()
