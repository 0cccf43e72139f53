"""Acceptance gate: one PASS/FAIL line per criterion.

Run ``pytest tests/test_acceptance.py -s`` to see the lines as they are
produced; they are also collected in the terminal summary.  Criterion 11
is informational and can be deselected with ``-m "not long_running"``;
``DIFFELIM_LONG_HOURS`` sets its wall-clock cap.
"""

import os
import random
import time
from contextlib import contextmanager

import pytest
from flint import fmpq

from conftest import ACCEPTANCE_LINES
from diffelim.arith import QQ
from diffelim.diffring import DiffVar, flatten, partial_solution_check, prolong
from diffelim.engine import (EngineOptions, check_consistency, compute_bound, consistency_at, eliminate,
                             probabilistic_eliminable)
from diffelim.frontend import fixtures
from diffelim.frontend.parser import parse_expr
from diffelim.groebner import (Limits, buchberger, contains_one, elimination_ideal, ideal_equal,
                               membership_certificate, radical_membership)
from diffelim.poly import GREVLEX, LEX, PolyRing, block_order

from macaulay import in_span
from strategies import dvar, random_poly


@contextmanager
def criterion(number: int, title: str):
    start = time.monotonic()
    notes: list[str] = []
    try:
        yield notes
    except pytest.skip.Exception as e:
        _emit(f"criterion {number}: SKIP {title} ({e.msg})")
        raise
    except BaseException as e:
        _emit(f"criterion {number}: FAIL {title} [{time.monotonic() - start:.2f}s] {type(e).__name__}: {e}")
        raise
    extra = f" ({'; '.join(notes)})" if notes else ""
    _emit(f"criterion {number}: PASS {title} [{time.monotonic() - start:.2f}s]{extra}")


def _emit(line: str) -> None:
    ACCEPTANCE_LINES.append(line)
    print(line)


def _fib(n: int) -> int:
    a, b = 0, 1
    for _ in range(n):
        a, b = b, a + b
    return a


# ---------------------------------------------------------------------------

def test_criterion_01_bound_table():
    with criterion(1, "bound table") as notes:
        start = time.perf_counter()
        table = [[compute_bound(d, D) - 1 for D in range(1, 6)] for d in (0, 1)]
        b22 = compute_bound(2, 2)
        elapsed = time.perf_counter() - start
        assert table == [[1, 2, 3, 4, 5], [2, 6, 13, 24, 40]]
        assert b22 == 135 and b22 - 1 == 134
        assert elapsed < 1e-3, f"{elapsed * 1e3:.3f} ms"
        notes.append(f"{elapsed * 1e6:.0f} us")


def test_criterion_02_fibonacci():
    with criterion(2, "Fibonacci elimination") as notes:
        start = time.monotonic()
        system = fixtures.load("fibonacci")
        r = eliminate(system)
        elapsed = time.monotonic() - start
        assert (r.stats.d_hat, r.stats.D_hat) == (0, 2)
        assert r.bound.value == 3
        assert r.verdict == "eliminable"
        expected = parse_expr("5*A^4*s(A) - 2*A^2*s^2(A) + s(A)^3", system)
        assert r.witness in (expected, -expected)
        assert r.certificate.verify()
        for n in (1, 2, 3):
            point = {DiffVar("A", k): _fib(2 ** (n + k)) for k in range(3)}
            assert r.witness.evaluate(point) == 0
        assert elapsed < 60
        notes.append(f"witness {r.witness}")


def _incremental(system, opts=None):
    r = eliminate(system, opts)
    return r, [(p.transforms - 1, p.success) for p in r.probes]


def test_criterion_03_ml2_sharpness():
    with criterion(3, "ML2 needs exactly one transform") as notes:
        start = time.monotonic()
        r, probes = _incremental(fixtures.load("ml2"))
        assert r.verdict == "eliminable"
        assert probes == [(0, False), (1, True)]
        assert r.shifts_applied == 1
        assert r.witness.bases() == {"x"} and r.certificate.verify()
        assert time.monotonic() - start < 300
        notes.append("exact parameters")


def test_criterion_04_leslie_gower():
    with criterion(4, "Leslie-Gower") as notes:
        start = time.monotonic()
        system = fixtures.load("leslie_gower")
        r, probes = _incremental(system)
        assert (r.stats.d_hat, r.stats.D_hat) == (0, 1)
        assert r.bound.value == 2
        assert r.verdict == "eliminable"
        assert probes == [(0, False), (1, True)]
        assert r.witness.bases() <= {"a", "A"} and r.certificate.verify()
        assert time.monotonic() - start < 600
        notes.append("exact parameters")


def test_criterion_05_ml3():
    with criterion(5, "ML3 needs exactly two transforms") as notes:
        start = time.monotonic()
        system = fixtures.load("ml3")
        opts = EngineOptions(deg_mode="user", user_d=1, user_D=3, param_mode="specialize", seed=0)
        r, probes = _incremental(system, opts)
        assert r.bound.value == 14
        assert r.verdict == "eliminable"
        assert probes == [(0, False), (1, False), (2, True)]
        assert r.witness.bases() == {"x"} and r.certificate.verify()
        exact_part = time.monotonic() - start
        assert exact_part < 600
        p = probabilistic_eliminable(system, 0.99, seed=0, transforms=13)
        assert p.verdict == "likely_eliminable"
        assert time.monotonic() - start < 1800
        notes.append(f"parameters specialized to {r.param_values}")
        notes.append(f"incremental {exact_part:.0f}s")


@pytest.mark.parametrize("D", [1, 2, 3, 4])
def test_criterion_06_sharp_d0(D):
    with criterion(6, f"sharp d=0 family, D={D}"):
        start = time.monotonic()
        system = fixtures.sharp_d0(D)
        r = check_consistency(system)
        assert r.verdict == "inconsistent"
        assert r.transforms_used == D + 1 == compute_bound(0, D)
        assert [p.success for p in r.probes] == [False] * D + [True]
        assert partial_solution_check(system, {"x": list(range(D + 1))}, D)
        assert time.monotonic() - start < 60


def test_criterion_07_sharp_d1():
    with criterion(7, "sharp d=1, D=2 ideal"):
        start = time.monotonic()
        system = fixtures.load("sharp_d1_D2")
        assert consistency_at(system, 7)[0]
        assert not consistency_at(system, 6)[0]
        assert time.monotonic() - start < 600


def test_criterion_08_dep_fixture():
    with criterion(8, "projection-test counterexample"):
        start = time.monotonic()
        system = fixtures.load("dep_5_1")
        emb5 = flatten(prolong(system.nonzero(), 5), (), system.unknowns, "consistency", QQ)
        assert contains_one(emb5.equations, ring=emb5.ring)
        emb2 = flatten(prolong(system.nonzero(), 2), (), system.unknowns, "consistency", QQ)
        n = len(system.nonzero())
        ring, both = emb2.ring, emb2.equations
        first, second = both[:n], both[n:]
        later = [v for v in ring.names if v.endswith("@2") or v in ("z@1", "w@1")]
        earlier = [v for v in ring.names if v.endswith("@0")]
        assert ideal_equal(elimination_ideal(both, later, ring=ring), first, ring=ring)
        assert ideal_equal(elimination_ideal(both, earlier, ring=ring), second, ring=ring)
        assert time.monotonic() - start < 600


def test_criterion_09_strong_nss():
    with criterion(9, "strong-NSS family at M=3"):
        start = time.monotonic()
        system = fixtures.strong_nss(3)
        f = parse_expr("y*(x - 1) - 1", system)
        emb = flatten(prolong(system.nonzero(), 3) + [f], (), system.unknowns, "consistency", QQ)
        assert not radical_membership(emb.equations[-1], emb.equations[:-1], ring=emb.ring)
        values = {"x": [fmpq(k, 3) for k in range(4)], "y": [fmpq(0), fmpq(3, -2), fmpq(3, -1), fmpq(0)]}
        assert partial_solution_check(system, values, 3)
        point = {DiffVar(b, i): v for b, seq in values.items() for i, v in enumerate(seq)}
        assert f.evaluate(point) != 0
        assert time.monotonic() - start < 300


def test_criterion_10_property_suites():
    with criterion(10, "property suites") as notes:
        start = time.monotonic()
        rng = random.Random(2024)
        # shift laws
        x, y = dvar("x"), dvar("y")
        for _ in range(50):
            f = sum((rng.randint(-3, 3) * x.sigma(rng.randint(0, 2)) ** rng.randint(0, 2)
                     * y.sigma(rng.randint(0, 2)) for _ in range(3)), x * 0)
            g = x.sigma(rng.randint(0, 2)) - rng.randint(-3, 3)
            k = rng.randint(0, 3)
            assert (f * g + f).sigma(k) == f.sigma(k) * g.sigma(k) + f.sigma(k)
            assert f.sigma(1).sigma(k) == f.sigma(k + 1)
        # monomial order axioms
        for order, blocks in ((GREVLEX, None), (LEX, None), (block_order("grevlex", "grevlex"), (0, 1, 1))):
            ring = PolyRing.make(("a", "b", "c"), order, blocks=blocks)
            mons = [tuple(rng.randint(0, 3) for _ in range(3)) for _ in range(60)]
            keys = [ring.key(m) for m in mons]
            for m, km in zip(mons, keys):
                assert km > ring.key((0, 0, 0)) or m == (0, 0, 0)
                shift = tuple(rng.randint(0, 2) for _ in range(3))
                for n, kn in zip(mons[:10], keys[:10]):
                    if km < kn:
                        assert ring.key(tuple(a + b for a, b in zip(m, shift))) < \
                            ring.key(tuple(a + b for a, b in zip(n, shift)))
        # S-polynomials reduce to zero and oracle agreement
        agree = 0
        for seed in range(200):
            r2 = random.Random(seed)
            n = r2.randint(2, 4)
            ring = PolyRing.make(tuple("xyzw"[:n]))
            gens = [g for g in (random_poly(r2, ring, r2.randint(1, 3), r2.randint(1, 3))
                                for _ in range(r2.randint(1, 4))) if g] or [ring.gen("x")]
            gb = buchberger(gens, ring=ring, limits=Limits(seconds=30))
            assert gb.is_groebner()
            p = random_poly(r2, ring, 3, 3)
            member = membership_certificate(p, gens, ring=ring)
            oracle = in_span(p, gens, 6)
            assert not oracle or member is not None
            assert member is None or member.verify()
            agree += 1
        notes.append(f"{agree} oracle instances")
        # every eliminate run re-verifies its certificate
        for name in ("fibonacci", "ml2"):
            assert eliminate(fixtures.load(name)).certificate.verify()
        assert time.monotonic() - start < 600


@pytest.mark.long_running
def test_criterion_11_si_long_run():
    with criterion(11, "SI keep S at 134 transforms (not gating)") as notes:
        hours = float(os.environ.get("DIFFELIM_LONG_HOURS", "1"))
        opts = EngineOptions(limits=Limits(seconds=hours * 3600))
        r = probabilistic_eliminable(fixtures.load("si_keep_S"), 0.99, seed=0, transforms=134, opts=opts)
        assert r.verdict == "likely_eliminable"
        assert r.transforms_used == 135
        notes.append(f"{r.elapsed:.0f}s")
