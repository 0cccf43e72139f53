import pytest
from flint import fmpq
from hypothesis import given
from hypothesis import strategies as st

from diffelim.arith import QQ
from diffelim.diffring import (DiffPoly, DiffSystem, DiffVar, PartialSolutionError, flatten, partial_solution_check,
                               prolong, to_poly, unflatten)
from diffelim.frontend import fixtures

from strategies import diff_polys, dvar

shifts = st.integers(0, 4)


@given(diff_polys(), diff_polys(), shifts)
def test_shift_is_ring_homomorphism(f, g, k):
    assert (f + g).sigma(k) == f.sigma(k) + g.sigma(k)
    assert (f * g).sigma(k) == f.sigma(k) * g.sigma(k)
    assert (f - g).sigma(k) == f.sigma(k) - g.sigma(k)


@given(diff_polys(), shifts, shifts)
def test_shifts_compose(f, a, b):
    assert f.sigma(a).sigma(b) == f.sigma(a + b)
    assert f.sigma(0) == f


@given(diff_polys(), shifts)
def test_shift_raises_order(f, k):
    if f.variables():
        assert f.sigma(k).ord() == f.ord() + k
    else:
        assert f.sigma(k) == f and f.ord() == -1


@given(diff_polys())
def test_shift_fixes_constants_and_degree(f):
    c = DiffPoly.constant(QQ, 3)
    assert c.sigma(5) == c
    assert f.sigma(2).total_degree() == f.total_degree()


def test_negative_shift_rejected():
    with pytest.raises(ValueError):
        dvar("x").sigma(-1)
    with pytest.raises(ValueError):
        DiffVar("x", -2)


def test_rendering():
    x, sx, s2y = dvar("x"), dvar("x", 1), dvar("y", 2)
    assert str(sx * x - 1) == "x*s(x) - 1"
    assert str(s2y) == "s^2(y)"
    assert DiffVar.from_flat(DiffVar("ab", 3).flat_name) == DiffVar("ab", 3)


@given(st.lists(diff_polys(), min_size=1, max_size=4))
def test_flatten_then_unflatten_is_identity(fs):
    emb = flatten(fs, ("x",), ("y",), "elimination", QQ)
    nonzero = [f for f in fs if f]
    assert [unflatten(p, QQ) for p in emb.equations] == nonzero
    assert [to_poly(f, emb.ring) for f in nonzero] == emb.equations


@given(st.lists(diff_polys(), min_size=1, max_size=4))
def test_flat_blocks(fs):
    emb = flatten(fs, ("x",), ("y",), "elimination", QQ)
    assert all(n.startswith("y@") for n in emb.eliminated)
    assert all(n.startswith("x@") for n in emb.kept)
    assert emb.H == len(emb.eliminated)
    y_ord = max(f.ord("y") for f in fs)
    assert emb.H == y_ord + 1
    if emb.eliminated and emb.kept:
        # eliminated block is greater than every kept monomial
        ring = emb.ring
        u = ring.gen(emb.eliminated[-1])
        big = ring.one()
        for name in emb.kept:
            big = big * ring.gen(name) ** 3
        assert ring.key(u.leading_monomial()) > ring.key(big.leading_monomial())


def test_flatten_counts_missing_intermediate_shifts():
    emb = flatten([dvar("u", 3) - 1], (), ("u",), "elimination", QQ)
    assert emb.H == 4 and emb.h == {"u": 3}


def test_prolong_orders_and_counts():
    f, g = dvar("x", 1) - dvar("x"), dvar("x") ** 2
    eqs = prolong([f, g], 3)
    assert eqs == [f, g, f.sigma(1), g.sigma(1), f.sigma(2), g.sigma(2)]
    assert max(e.ord() for e in eqs) == 3
    with pytest.raises(ValueError):
        prolong([f], 0)


def test_system_validation():
    with pytest.raises(ValueError):
        DiffSystem([dvar("z")], ("x",), ("y",))
    with pytest.raises(ValueError):
        DiffSystem([], ("x",), ("x",))


# -- partial solutions ------------------------------------------------

def _nss_values():
    xs = [fmpq(k, 3) for k in range(5)]
    ys = [fmpq(0), fmpq(-3, 2), fmpq(-3), fmpq(0), fmpq(0)]
    return {"x": xs, "y": ys}


def test_strong_nss_partial_solution_stops_at_three():
    system = fixtures.strong_nss(3)
    values = _nss_values()
    assert partial_solution_check(system, {k: v[:4] for k, v in values.items()}, 3)
    # at x = 1 the second equation reads -1 = 0
    assert not partial_solution_check(system, values, 4)


def test_partial_solution_needs_enough_values():
    with pytest.raises(PartialSolutionError):
        partial_solution_check(fixtures.strong_nss(3), {"x": [0, 1], "y": [0, 0]}, 3)


@given(st.integers(1, 4), st.integers(0, 6))
def test_partial_solution_check_is_monotone(length, extra):
    system = fixtures.strong_nss(3)
    values = _nss_values()
    short = length
    long = min(length + extra, 4)
    if long < short:
        return
    if partial_solution_check(system, values, long):
        assert partial_solution_check(system, values, short)


def test_fibonacci_numbers_satisfy_fibonacci_system():
    fib = [0, 1]
    while len(fib) < 70:
        fib.append(fib[-1] + fib[-2])
    values = {"A": [fib[2 ** n] for n in range(6)], "B": [fib[2 ** n + 1] for n in range(6)]}
    assert partial_solution_check(fixtures.load("fibonacci"), values, 5)
    values["B"][2] += 1
    assert not partial_solution_check(fixtures.load("fibonacci"), values, 5)
