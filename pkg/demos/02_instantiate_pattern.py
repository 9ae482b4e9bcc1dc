"""Splice the violation-anticipation pattern into the COVID model.

The monitored condition is bound to the existing fair-access goal; the
simulator, the load indicator and the two management activities are created
fresh. Run from the repository root:  python demos/02_instantiate_pattern.py
"""

from __future__ import annotations

from pathlib import Path

from susmod import Existing, diff_instantiation, free_roles, instantiate, load, parse_binding, validate_model

CORPUS = Path(__file__).resolve().parents[1] / "corpus"


def main() -> None:
    model = load(CORPUS / "covid" / "covid.susm")
    pattern = load(CORPUS / "fairness" / "violation_anticipation.susp")
    print(f"pattern {pattern.name!r} roles:", ", ".join(free_roles(pattern)))

    bind_path = CORPUS / "covid" / "violation_anticipation.bind"
    binding = parse_binding(bind_path.read_text(encoding="utf-8"), bind_path)
    for role, value in binding.items():
        target = f"existing {value.id}" if isinstance(value, Existing) else f"fresh {value.label!r}"
        print(f"  {role} -> {target}")

    result = instantiate(pattern, binding, model, anchor="ManageHospitalCapacity")
    print()
    print(diff_instantiation(model, result, pattern))

    fragment = result.fragments["violation-anticipation"]
    print()
    for eid in sorted(fragment.elements):
        el = result.elements[eid]
        print(f"  {el.kind.value:9} {eid:28} {el.label}")

    errors = [d for d in validate_model(result) if d.is_error]
    print("\nerrors after splice:", len(errors))

    # A second splice gets its own ids and a suffixed fragment name.
    again = instantiate(pattern, binding, result, anchor="ManageHospitalCapacity")
    print("second fragment:", sorted(set(again.fragments) - set(result.fragments)))


if __name__ == "__main__":
    main()
