"""Example systems shipped with the package, and generators for the
parametrized families.

Checked-in ``.dsys`` files live in ``diffelim/fixtures``.  Systems defined
as an intersection of two ideals are regenerated with
:func:`intersection_system`; ``scripts/regen_fixtures.py`` rewrites the
cached files.
"""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

from ..arith import QQ
from ..diffring import DiffSystem, flatten, unflatten
from ..groebner import buchberger, ideal_intersection
from .parser import parse, parse_expr

# generators of the two components of the sharp example with d = 1, D = 2
SHARP_D1_D2 = (
    ["x", "s(x) + s(y) - 1", "y + 2*s(y) - 1"],
    ["s(x)", "y", "x + 3*s(y) - 1"],
)

# components of the system that passes the one-step projection test
# yet has no solution
DEP_COUNTEREXAMPLE = (
    ["s(y)*z - 1", "x", "s(x) - y"],
    ["s(x)", "s(y) - 1", "(y - 1)*z - 1", "(x - 1)*w - 1"],
)


def fixture_dir() -> Path:
    return Path(__file__).resolve().parent.parent / "fixtures"


def names() -> list[str]:
    return sorted(p.stem for p in fixture_dir().glob("*.dsys"))


def path(name: str) -> Path:
    p = fixture_dir() / f"{name}.dsys"
    if not p.exists():
        raise KeyError(f"no fixture named {name!r}; known: {', '.join(names())}")
    return p


def load(name: str) -> DiffSystem:
    return parse(path(name).read_text(encoding="utf-8"))


def sharp_d0(D: int) -> DiffSystem:
    """``x(x-1)...(x-D+1) = 0, s(x) = x + 1``: needs exactly ``D + 1`` transforms."""
    if D < 1:
        raise ValueError("D must be positive")
    product = " * ".join(f"(x - {i})" for i in range(D))
    return parse(f"eliminate: x;\n{product};\ns(x) - x - 1;\n")


def strong_nss(M: int, with_z: bool = False) -> DiffSystem:
    """The family ``s(x) = x + 1/M, x*(y*(x - 1) - 1) = 0``.

    With ``with_z`` the extra equation ``z = y*(x - 1) - 1`` is added and
    ``z`` becomes the kept unknown.
    """
    if M < 1:
        raise ValueError("M must be positive")
    if with_z:
        return parse(f"keep: z;\neliminate: x, y;\ns(x) - x - 1/{M};\nx*(y*(x - 1) - 1);\n"
                     f"z - y*(x - 1) + 1;\n")
    return parse(f"eliminate: x, y;\ns(x) - x - 1/{M};\nx*(y*(x - 1) - 1);\n")


def _component(texts: Sequence[str], template: DiffSystem):
    return [parse_expr(t, template) for t in texts]


def intersection_system(first: Sequence[str], second: Sequence[str], unknowns: Sequence[str]) -> DiffSystem:
    """Difference system generated by the ideal ``I1 ∩ I2``.

    Both components are read as ordinary polynomials in the transforms
    they mention; the intersection is a reduced Groebner basis.
    """
    template = DiffSystem([], (), tuple(unknowns), (), QQ)
    f1 = _component(first, template)
    f2 = _component(second, template)
    emb = flatten(f1 + f2, (), tuple(unknowns), "consistency", QQ)
    ring = emb.ring
    p1, p2 = emb.equations[:len(f1)], emb.equations[len(f1):]
    inter = buchberger(ideal_intersection(p1, p2, ring=ring), ring=ring).generators
    return DiffSystem([unflatten(g, QQ) for g in inter], (), tuple(unknowns), (), QQ)


def sharp_d1_d2() -> DiffSystem:
    return intersection_system(*SHARP_D1_D2, ("x", "y"))


def dep_counterexample() -> DiffSystem:
    return intersection_system(*DEP_COUNTEREXAMPLE, ("x", "y", "z", "w"))


GENERATED = {
    "sharp_d1_D2": sharp_d1_d2,
    "dep_5_1": dep_counterexample,
    **{f"sharp_d0_D{D}": (lambda D=D: sharp_d0(D)) for D in range(1, 5)},
    "strong_nss_M3": lambda: strong_nss(3),
    "full_elim_M3": lambda: strong_nss(3, with_z=True),
}
