"""Load the COVID management model, validate it and render it as DOT.

Run from the repository root:  python demos/01_covid_model.py
"""

from __future__ import annotations

from pathlib import Path

from susmod import export_model_dot, load, validate_model

CORPUS = Path(__file__).resolve().parents[1] / "corpus"


def main() -> None:
    model = load(CORPUS / "covid" / "covid.susm")
    print(f"{model.name}: {len(model.elements)} elements, {len(model.links)} links")

    # Elements tagged as part of the information system are drawn dark grey.
    tagged = sorted(e.id for e in model.elements.values() if e.is_tagged)
    print("IS-tagged:", ", ".join(tagged))

    # The capacity obstacle is countered by an anticipation activity.
    for ln in model.links.values():
        if ln.kind.value == "mitigates":
            print(f"{ln.source} mitigates {ln.target} ({ln.strategy.value})")

    for name, frag in model.fragments.items():
        origin = f" loaded from {frag.source}" if frag.source else ""
        print(f"fragment {name} at {frag.anchor}: {len(frag.elements)} elements{origin}")

    diags = validate_model(model)
    print("diagnostics:", [d.format() for d in diags] or "none")

    dot = export_model_dot(model)
    print(f"DOT output: {len(dot.splitlines())} lines, first line {dot.splitlines()[0]!r}")


if __name__ == "__main__":
    main()
