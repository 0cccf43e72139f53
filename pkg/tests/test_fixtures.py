from flint import fmpq
import pytest

from diffelim.arith import QQ
from diffelim.diffring import DiffVar, flatten, partial_solution_check, prolong
from diffelim.engine import consistency_at
from diffelim.frontend import fixtures
from diffelim.frontend.parser import parse_expr
from diffelim.groebner import buchberger, contains_one, elimination_ideal, ideal_equal, radical_membership


def _flat(polys, unknowns):
    emb = flatten(polys, (), unknowns, "consistency", QQ)
    return emb.ring, emb.equations


def _component_polys(texts, system):
    return [parse_expr(t, system) for t in texts]


def test_sharp_d1_intersection_is_correct():
    system = fixtures.sharp_d1_d2()
    first = _component_polys(fixtures.SHARP_D1_D2[0], system)
    second = _component_polys(fixtures.SHARP_D1_D2[1], system)
    ring, flat = _flat(system.equations + first + second, system.unknowns)
    n = len(system.equations)
    gens, g1, g2 = flat[:n], flat[n:n + len(first)], flat[n + len(first):]
    b1, b2, inter = (buchberger(g, ring=ring) for g in (g1, g2, gens))
    for g in gens:
        assert b1.contains(g) and b2.contains(g)
    for p in g1:
        for q in g2:
            assert inter.contains(p * q)


def test_sharp_d1_points_of_components():
    system = fixtures.sharp_d1_d2()
    def at(x, sx, y, sy):
        return {DiffVar("x", 0): x, DiffVar("x", 1): sx, DiffVar("y", 0): y, DiffVar("y", 1): sy}

    on_first = at(0, fmpq(2, 3), fmpq(1, 3), fmpq(1, 3))
    on_second = at(1, 0, 0, 0)
    off_both = at(1, 1, 1, 1)
    for point in (on_first, on_second):
        assert all(not f.evaluate(point) for f in system.equations)
    assert any(f.evaluate(off_both) for f in system.equations)


def test_sharp_d1_needs_seven_copies():
    system = fixtures.load("sharp_d1_D2")
    assert not consistency_at(system, 6)[0]
    assert consistency_at(system, 7)[0]


def test_dep_example_needs_five_copies():
    system = fixtures.load("dep_5_1")
    assert not consistency_at(system, 4)[0]
    assert consistency_at(system, 5)[0]


def _dep_two_copies():
    system = fixtures.load("dep_5_1")
    eqs = prolong(system.nonzero(), 2)
    emb = flatten(eqs, (), system.unknowns, "consistency", QQ)
    n = len(system.nonzero())
    return emb.ring, emb.equations[:n], emb.equations[n:], emb.equations


def test_dep_projection_onto_first_copy():
    ring, first, _, both = _dep_two_copies()
    later = [v for v in ring.names if v.endswith("@2") or v in ("z@1", "w@1")]
    assert later
    projected = elimination_ideal(both, later, ring=ring)
    assert ideal_equal(projected, first, ring=ring)


def test_dep_projection_onto_second_copy():
    ring, _, second, both = _dep_two_copies()
    earlier = [v for v in ring.names if v.endswith("@0")]
    projected = elimination_ideal(both, earlier, ring=ring)
    assert ideal_equal(projected, second, ring=ring)


# -- strong non-solution-sufficiency family ------------------------------

def _nss_values():
    xs = [fmpq(k, 3) for k in range(4)]
    ys = [fmpq(0)] + [fmpq(3, k - 3) for k in (1, 2)] + [fmpq(0)]
    return {"x": xs, "y": ys}


def test_strong_nss_substitution_annihilates_generators():
    system = fixtures.strong_nss(3)
    values = _nss_values()
    assert partial_solution_check(system, values, 3)
    f = parse_expr("y*(x - 1) - 1", system)
    point = {DiffVar(b, i): v for b, seq in values.items() for i, v in enumerate(seq)}
    assert f.evaluate(point) == -1


def test_strong_nss_target_not_in_radical():
    system = fixtures.strong_nss(3)
    f = parse_expr("y*(x - 1) - 1", system)
    eqs = prolong(system.nonzero(), 3)
    emb = flatten(eqs + [f], (), system.unknowns, "consistency", QQ)
    assert not radical_membership(emb.equations[-1], emb.equations[:-1], ring=emb.ring)


def test_strong_nss_is_consistent_at_its_bound():
    system = fixtures.strong_nss(3)
    assert not consistency_at(system, 14)[0]


@pytest.mark.parametrize("D", [1, 2, 3, 4])
def test_sharp_d0_orbit_is_partial_solution(D):
    system = fixtures.sharp_d0(D)
    values = {"x": list(range(D + 1))}
    assert partial_solution_check(system, values, D)
    assert not partial_solution_check(system, {"x": list(range(D + 2))}, D + 1)


def test_unit_ideal_helpers_agree():
    system = fixtures.load("sharp_d0_D2")
    emb = flatten(prolong(system.nonzero(), 3), (), system.unknowns, "consistency", QQ)
    assert contains_one(emb.equations, ring=emb.ring)
