"""Rewrite the generated ``.dsys`` fixtures from their generators.

Intersection ideals are recomputed with the Groebner module; the parametrized
families are written for the sizes the test suite uses.
"""

import sys

from diffelim.frontend import fixtures
from diffelim.frontend.parser import parse, render

HEADERS = {
    "sharp_d1_D2": "intersection of the two components listed in fixtures.SHARP_D1_D2",
    "dep_5_1": "intersection of the two components listed in fixtures.DEP_COUNTEREXAMPLE",
    "strong_nss_M3": "s(x) = x + 1/3 with x*(y*(x - 1) - 1) = 0",
    "full_elim_M3": "strong_nss_M3 plus z = y*(x - 1) - 1, keeping z",
}


def main(argv) -> int:
    check = "--check" in argv
    stale = []
    for name, make in sorted(fixtures.GENERATED.items()):
        system = make()
        note = HEADERS.get(name, f"generated by fixtures.{name.rsplit('_D', 1)[0]}")
        text = f"# {note}\n# regenerate with scripts/regen_fixtures.py\n" + render(system)
        target = fixtures.fixture_dir() / f"{name}.dsys"
        if parse(text).equations != system.equations:
            raise SystemExit(f"{name}: rendering does not round-trip")
        if check:
            if not target.exists() or parse(target.read_text()).equations != system.equations:
                stale.append(name)
            continue
        target.write_text(text, encoding="utf-8")
        print(f"wrote {target}")
    if stale:
        print("stale fixtures: " + ", ".join(stale))
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv[1:]))
