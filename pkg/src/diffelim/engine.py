"""Decision procedures for difference systems.

Everything here reduces to Groebner computations on a finite prolongation
``F, s(F), ..., s^(L-1)(F)`` of the input system.  ``L`` is called the
number of transforms used; ``L - 1`` is the highest shift applied.  The
bound ``compute_bound(d, D)`` is a value of ``L`` that always suffices,
where ``d`` and ``D`` bound the dimension and degree of the variety cut
out by ``F`` itself.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import mpmath
from flint import fmpq, fmpz

from .arith import QQ, RatFunc, RatFuncField, Rng
from .diffring import DiffPoly, DiffSystem, flatten, prolong, unflatten
from .groebner import (Certificate, ChainCertificate, GroebnerBasis, Limits, ResourceLimitExceeded, buchberger,
                       dimension, elimination_basis, hilbert_degree, resultant_eliminant)
from .poly import GREVLEX, NEG_INF, Poly, PolyRing, VarTable

DEG_MODES = ("bezout", "hilbert", "user")
DIM_MODES = ("specialized", "exact_groebner")
PARAM_MODES = ("exact", "specialize")

# largest bound we are willing to write down as an integer
MAX_BOUND_BITS = 1 << 20
# sampling range for specializations used by the statistics
SPECIALIZE_RANGE = 10007


class BoundTooLarge(OverflowError):
    """``B(d, D)`` does not fit in memory as an exact integer."""


class EngineInputError(ValueError):
    """A system does not meet the preconditions of an engine operation."""


# ---------------------------------------------------------------------------
# the bound

def _check_bound_args(d: int, D: int) -> None:
    if isinstance(d, bool) or isinstance(D, bool) or not isinstance(d, int) or not isinstance(D, int):
        raise TypeError("d and D must be integers")
    if d < 0:
        raise ValueError(f"d must be non-negative, got {d}")
    if D < 1:
        raise ValueError(f"D must be at least 1, got {D}")


def compute_bound(d: int, D: int) -> int:
    """Exact number of transforms that suffices for dimension ``d``, degree ``D``.

    >>> [compute_bound(1, D) - 1 for D in range(1, 6)]
    [2, 6, 13, 24, 40]
    """
    _check_bound_args(d, D)
    if d == 0:
        return D + 1
    if d == 1:
        value = Fraction(D ** 3, 6) + Fraction(D ** 2, 2) + Fraction(4 * D, 3) + 1
        assert value.denominator == 1, f"non-integral bound at D={D}"
        return int(value)
    prev = compute_bound(d - 1, D)
    if D > 1 and prev > MAX_BOUND_BITS / math.log2(D):
        raise BoundTooLarge(f"B({d}, {D}) has more than {MAX_BOUND_BITS} bits")
    return prev + D ** prev


def _pow2(x: mpmath.mpf) -> mpmath.mpf:
    n = int(mpmath.floor(x))
    return mpmath.ldexp(mpmath.power(2, x - n), n)


def bound_log2(d: int, D: int) -> mpmath.mpf:
    """``log2 B(d, D)`` as a float with arbitrary exponent range.

    Exact bounds are used while they fit; beyond that the recursion is
    followed on logarithms, where ``log2(b + D^b)`` equals ``b*log2(D)`` to
    far better than working precision.
    """
    _check_bound_args(d, D)
    try:
        return mpmath.log(mpmath.mpf(compute_bound(d, D)), 2)
    except BoundTooLarge:
        pass
    prev_log = bound_log2(d - 1, D)
    if prev_log > 1 and mpmath.log(prev_log, 2) > MAX_BOUND_BITS:
        raise BoundTooLarge(f"log2 B({d}, {D}) is itself too large to represent")
    return _pow2(prev_log) * mpmath.log(D, 2)


@dataclass(frozen=True)
class BoundReport:
    d: int
    D: int
    value: Optional[int]
    log2: str  # decimal text, since it can exceed the float range

    @classmethod
    def of(cls, d: int, D: int) -> "BoundReport":
        try:
            value = compute_bound(d, D)
        except BoundTooLarge:
            value = None
        return cls(d, D, value, mpmath.nstr(bound_log2(d, D), 12))

    def as_dict(self) -> dict:
        return {"d": self.d, "D": self.D, "value": self.value, "log2": self.log2}


# ---------------------------------------------------------------------------
# options and reports

@dataclass
class EngineOptions:
    deg_mode: str = "bezout"
    dim_mode: str = "specialized"
    param_mode: str = "exact"
    user_d: Optional[int] = None
    user_D: Optional[int] = None
    seed: int = 0
    strict_bound: bool = False
    certificate: bool = True
    limits: Limits = field(default_factory=Limits)
    # cap on the scan when B(d, D) is too large to exhaust
    max_transforms: int = 64
    # time allowed for replacing a resultant witness by the minimal one
    refine_seconds: float = 20.0

    def __post_init__(self):
        if self.deg_mode not in DEG_MODES:
            raise ValueError(f"deg_mode must be one of {DEG_MODES}")
        if self.dim_mode not in DIM_MODES:
            raise ValueError(f"dim_mode must be one of {DIM_MODES}")
        if self.param_mode not in PARAM_MODES:
            raise ValueError(f"param_mode must be one of {PARAM_MODES}")
        if self.deg_mode == "user" and self.user_d is None and self.user_D is None:
            raise ValueError("deg_mode 'user' needs d and/or D")


@dataclass(frozen=True)
class VarietyStats:
    H: int
    d_hat: int
    D_hat: int
    dim_mode: str
    deg_mode: str
    seed: Optional[int] = None
    unit_ideal: bool = False
    orders: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.d_hat < 0 or self.D_hat < 1 or self.d_hat > max(self.H, 0):
            raise ValueError(f"inconsistent statistics d={self.d_hat}, D={self.D_hat}, H={self.H}")

    def as_dict(self) -> dict:
        return {"H": self.H, "d": self.d_hat, "D": self.D_hat, "dim_mode": self.dim_mode,
                "deg_mode": self.deg_mode, "seed": self.seed, "unit_ideal": self.unit_ideal,
                "orders": dict(self.orders)}


@dataclass
class Probe:
    transforms: int
    success: bool
    seconds: float
    # how the outcome was decided: groebner, resultant or leading_terms
    method: Optional[str] = None


@dataclass
class ConsistencyReport:
    verdict: str
    stats: VarietyStats
    bound: BoundReport
    transforms_used: int
    gb_size: int
    elapsed: float
    probes: list[Probe] = field(default_factory=list)

    @property
    def shifts_applied(self) -> int:
        return self.transforms_used - 1


@dataclass
class EliminationReport:
    verdict: str
    witness: Optional[DiffPoly]
    certificate: Optional[Certificate]
    stats: VarietyStats
    bound: BoundReport
    transforms_used: int
    gb_size: int
    elapsed: float
    probes: list[Probe] = field(default_factory=list)
    param_values: Optional[dict] = None
    method: Optional[str] = None

    @property
    def shifts_applied(self) -> int:
        return self.transforms_used - 1


@dataclass
class ProbabilisticReport:
    verdict: str
    p: float
    seed: int
    transforms_used: int
    degree_bound: int
    sample_range: int
    substitution: dict
    param_values: dict
    gb_size: int
    elapsed: float

    @property
    def shifts_applied(self) -> int:
        return self.transforms_used - 1


# ---------------------------------------------------------------------------
# helpers

def _require_system(sys: DiffSystem) -> DiffSystem:
    if not isinstance(sys, DiffSystem):
        raise TypeError("expected a DiffSystem")
    return sys


def specialize_params(sys: DiffSystem, values: dict) -> DiffSystem:
    """Substitute numbers for every parameter; the result is over QQ."""
    if not sys.params:
        return sys
    eqs = []
    for f in sys.equations:
        terms = {}
        for m, c in f.terms.items():
            v = c.subs(values) if isinstance(c, RatFunc) else c
            v = v.constant_value() if isinstance(v, RatFunc) else QQ.convert(v)
            if v:
                terms[m] = v
        eqs.append(DiffPoly(QQ, terms))
    return DiffSystem(eqs, sys.keep_vars, sys.elim_vars, (), QQ)


def _random_param_values(sys: DiffSystem, rng: Rng, size: int = SPECIALIZE_RANGE) -> dict:
    """Random values for the parameters avoiding zero denominators."""
    for _ in range(32):
        vals = {p: fmpq(1 + rng.randrange(size)) for p in sys.params}
        try:
            specialize_params(sys, vals)
            return vals
        except ArithmeticError:
            continue
    raise EngineInputError("could not find parameter values avoiding all denominators")


def _bezout(polys: list[Poly], block: Optional[int], H: int) -> int:
    degs = sorted((p.total_degree(block) for p in polys), reverse=True)
    degs = [int(e) for e in degs if e != NEG_INF and e > 0]
    out = 1
    for e in degs[:H + 1]:
        out *= e
    return out


def _specialized_u_polys(emb, values: dict) -> tuple[list[Poly], PolyRing]:
    """Substitute ``values`` for the kept coordinates; return polys in u only."""
    u_ring = PolyRing(VarTable(emb.eliminated), GREVLEX, emb.ring.field)
    out = []
    for p in emb.equations:
        q = u_ring.convert(p.evaluate(values))
        if q:
            out.append(q)
    return out, u_ring


def _exact_u_polys(emb) -> tuple[list[Poly], PolyRing]:
    """Kept coordinates become parameters of the coefficient field."""
    base = emb.ring.field
    params = tuple(base.params) + tuple(emb.kept)
    field_ = RatFuncField(params)
    u_ring = PolyRing(VarTable(emb.eliminated), GREVLEX, field_)
    kept_pos = {n: emb.ring.vars.index(n) for n in emb.kept}
    u_pos = [emb.ring.vars.index(n) for n in emb.eliminated]
    xs = {n: field_.gen(n) for n in emb.kept}
    out = []
    for p in emb.equations:
        terms: dict = {}
        for m, c in p.terms.items():
            coef = field_.convert(c)
            for n, k in kept_pos.items():
                if m[k]:
                    coef = coef * xs[n] ** m[k]
            um = tuple(m[k] for k in u_pos)
            terms[um] = terms[um] + coef if um in terms else coef
        q = Poly(u_ring, {m: c for m, c in terms.items() if c})
        if q:
            out.append(q)
    return out, u_ring


def _stats_from_gb(gb: GroebnerBasis, bezout: int, H: int, opts: EngineOptions,
                   dim_mode: str, orders: dict, seed) -> VarietyStats:
    d_hat = dimension(gb)
    D_hat = max(1, hilbert_degree(gb)) if opts.deg_mode == "hilbert" else bezout
    if opts.deg_mode == "user":
        d_hat = opts.user_d if opts.user_d is not None else d_hat
        D_hat = opts.user_D if opts.user_D is not None else bezout
    return VarietyStats(H, d_hat, D_hat, dim_mode, opts.deg_mode, seed, False, orders)


def _unit_stats(H: int, opts: EngineOptions, dim_mode: str, orders: dict, seed) -> VarietyStats:
    return VarietyStats(H, 0, 1, dim_mode, opts.deg_mode, seed, True, orders)


# ---------------------------------------------------------------------------
# variety statistics

def variety_stats(sys: DiffSystem, role: str = "elimination", opts: Optional[EngineOptions] = None) -> VarietyStats:
    """Upper bounds ``(d, D)`` for the dimension and degree of the variety of ``F``.

    For ``role="elimination"`` the variety lives over the fraction field of
    the kept variables.  In ``specialized`` mode the kept coordinates are
    replaced by random rationals (a fiber of at least the generic
    dimension); the sample is redrawn up to three times if it empties the
    variety, after which the exact computation is used.
    """
    opts = opts or EngineOptions()
    sys = _require_system(sys)
    if role not in ("consistency", "elimination"):
        raise ValueError(f"unknown role {role!r}")
    eqs = sys.nonzero()
    if role == "elimination" and not sys.elim_vars:
        raise EngineInputError("elimination needs at least one eliminated unknown")
    keep = () if role == "consistency" else sys.keep_vars
    elim = sys.unknowns if role == "consistency" else sys.elim_vars
    emb = flatten(eqs, keep, elim, "elimination", sys.field)
    orders = dict(emb.h)
    H = emb.H
    if not emb.equations:
        return VarietyStats(H, H, 1, opts.dim_mode, opts.deg_mode, None, False, orders) \
            if opts.deg_mode != "user" else _stats_user_only(H, opts, orders)
    lim = opts.limits.start()
    bezout = _bezout(emb.equations, 0 if emb.kept and emb.eliminated else None, H)

    if role == "consistency" or not emb.kept:
        ring = emb.ring.with_order(GREVLEX)
        gb = buchberger([ring.convert(p) for p in emb.equations], ring=ring, limits=lim)
        if gb.is_unit():
            return _unit_stats(H, opts, "exact_groebner", orders, None)
        return _stats_from_gb(gb, bezout, H, opts, "exact_groebner", orders, None)

    if opts.dim_mode == "specialized":
        rng = Rng(opts.seed)
        for _ in range(4):
            values = {n: fmpq(1 + rng.randrange(SPECIALIZE_RANGE)) for n in emb.kept}
            polys, u_ring = _specialized_u_polys(emb, values)
            gb = buchberger(polys, ring=u_ring, limits=lim)
            if not gb.is_unit():
                return _stats_from_gb(gb, bezout, H, opts, "specialized", orders, opts.seed)
    polys, u_ring = _exact_u_polys(emb)
    gb = buchberger(polys, ring=u_ring, limits=lim)
    if gb.is_unit():
        return _unit_stats(H, opts, "exact_groebner", orders, None)
    return _stats_from_gb(gb, bezout, H, opts, "exact_groebner", orders, None)


def _stats_user_only(H: int, opts: EngineOptions, orders: dict) -> VarietyStats:
    d = opts.user_d if opts.user_d is not None else H
    D = opts.user_D if opts.user_D is not None else 1
    return VarietyStats(H, d, D, opts.dim_mode, "user", None, False, orders)


# ---------------------------------------------------------------------------
# consistency

def _probe_lengths(bound: BoundReport, opts: EngineOptions) -> range:
    if opts.strict_bound:
        if bound.value is None:
            raise BoundTooLarge(f"B({bound.d}, {bound.D}) is too large to prolong by")
        return range(bound.value, bound.value + 1)
    top = bound.value if bound.value is not None else max(opts.max_transforms, 1)
    # lazy: the bound may be far too large to list
    return range(1, top + 1)


def prolonged_flat(sys: DiffSystem, length: int, role: str = "elimination"):
    """Flattened ``F, s(F), ..., s^(length-1)(F)``."""
    eqs = prolong(sys.nonzero(), length)
    return flatten(eqs, sys.keep_vars, sys.elim_vars, role, sys.field)


def consistency_at(sys: DiffSystem, length: int, limits: Optional[Limits] = None) -> tuple[bool, int]:
    """``(1 in <prolongation>, basis size)`` for a prolongation of ``length`` transforms."""
    emb = prolonged_flat(sys.as_consistency(), length, "consistency")
    if not emb.equations:
        return False, 0
    gb = buchberger(emb.equations, GREVLEX, ring=emb.ring, limits=limits, stop_on_unit=True)
    return gb.is_unit(), len(gb)


def check_consistency(sys: DiffSystem, opts: Optional[EngineOptions] = None) -> ConsistencyReport:
    """Decide whether ``F = 0`` has a solution in some difference ring.

    ``F`` is consistent iff its prolongation by ``B(d, D)`` transforms does
    not generate the unit ideal.  Without ``strict_bound`` the lengths
    ``1, 2, ...`` are tried in turn and the first inconsistent one reported.
    """
    opts = opts or EngineOptions()
    sys = _require_system(sys)
    if sys.keep_vars:
        raise EngineInputError("consistency checks take a system without kept variables; "
                               "use as_consistency()")
    t0 = time.monotonic()
    opts.limits.start()
    stats = variety_stats(sys, "consistency", opts)
    if not sys.nonzero():
        bound = BoundReport.of(0, 1)
        return ConsistencyReport("consistent", stats, bound, 0, 0, time.monotonic() - t0)
    bound = BoundReport.of(stats.d_hat, stats.D_hat)
    if stats.unit_ideal:
        return ConsistencyReport("inconsistent", stats, bound, 1, 1, time.monotonic() - t0,
                                 [Probe(1, True, 0.0)])
    probes = []
    lengths = _probe_lengths(bound, opts)
    size = 0
    for L in lengths:
        s0 = time.monotonic()
        unit, size = consistency_at(sys, L, opts.limits)
        probes.append(Probe(L, unit, time.monotonic() - s0))
        if unit:
            return ConsistencyReport("inconsistent", stats, bound, L, size, time.monotonic() - t0, probes)
    if bound.value is None or lengths[-1] < bound.value:
        raise ResourceLimitExceeded(
            f"no contradiction within {lengths[-1]} transforms and the bound is out of reach")
    return ConsistencyReport("consistent", stats, bound, lengths[-1], size, time.monotonic() - t0, probes)


# ---------------------------------------------------------------------------
# elimination

def _lcm_poly(a, b):
    return a * b / a.gcd(b) if not (a.is_one() or b.is_one()) else (b if a.is_one() else a)


def _integer_scale(coeffs: list[fmpq]) -> fmpq:
    """Factor turning rationals into coprime integers."""
    den = fmpz(1)
    for c in coeffs:
        den = den * c.q // den.gcd(c.q) if c.q != 1 else den
    nums = [int(c * den) for c in coeffs]
    g = 0
    for n in nums:
        g = math.gcd(g, n)
    return fmpq(den) / (g or 1)


def normalize_witness(p: Poly) -> tuple[Poly, object]:
    """Scale ``p`` to coprime integer (or integer-polynomial) coefficients.

    Returns the scaled polynomial and the factor applied.  The leading
    coefficient ends up positive.
    """
    coeffs = list(p.terms.values())
    field_ = p.ring.field
    if isinstance(field_, RatFuncField):
        den = field_.one.den
        for c in coeffs:
            den = _lcm_poly(den, c.den)
        nums = [c.num * (den / c.den) for c in coeffs]
        g = nums[0]
        for n in nums[1:]:
            g = g.gcd(n)
        nums = [n / g for n in nums]
        flat = [c for n in nums for c in n.to_dict().values()]
        k = _integer_scale(flat)
        factor = RatFunc(field_, den * k, g)
    else:
        factor = _integer_scale(coeffs)
    q = p.scale(factor)
    lc = q.leading_coefficient()
    sign_of = lc.num.leading_coefficient() if isinstance(lc, RatFunc) else lc
    if sign_of < 0:
        q = -q
        factor = -factor
    return q, factor


def _elimination_ring_system(sys: DiffSystem, opts: EngineOptions, rng: Rng):
    if opts.param_mode == "specialize" and sys.params:
        values = _random_param_values(sys, rng)
        return specialize_params(sys, values), {k: str(v) for k, v in values.items()}
    return sys, None


@dataclass
class Attempt:
    """Outcome of one elimination probe on the flat prolongation."""

    witness: Optional[Poly]
    basis: Optional[GroebnerBasis]
    embedding: object
    method: str
    chain: Optional[ChainCertificate] = None

    @property
    def basis_size(self) -> int:
        return len(self.basis) if self.basis is not None else 0


def _sub_limits(limits: Optional[Limits], seconds: float) -> Limits:
    sub = Limits(seconds=seconds, max_basis=limits.max_basis if limits else None).start()
    if limits is not None and limits.deadline is not None:
        sub.deadline = min(sub.deadline, limits.deadline)
    return sub


def _pure_in(m, allowed: set) -> bool:
    return all(not e or i in allowed for i, e in enumerate(m))


def elimination_at(sys: DiffSystem, length: int, *, track: bool = True,
                   limits: Optional[Limits] = None, refine_seconds: float = 20.0) -> Attempt:
    """Decide elimination on a prolongation of ``length`` transforms.

    A cheap resultant search runs first; when it finds a consequence, a
    block-order basis is attempted within ``refine_seconds`` so that the
    reported witness is the minimal one and carries a certificate.  When
    it finds nothing, a grevlex basis settles the question if none of its
    leading monomials lies in the kept coordinates alone, and the full
    block-order basis decides otherwise.
    """
    emb = prolonged_flat(sys, length, "elimination")
    if not emb.equations:
        return Attempt(None, None, emb, "groebner")
    if not emb.kept or not emb.eliminated:
        gb = buchberger(emb.equations, ring=emb.ring, track=track, limits=limits,
                        stop_on_unit=not emb.kept)
        free = [0] if gb.is_unit() or (emb.kept and len(gb)) else []
        return Attempt(gb.generators[0] if free else None, gb, emb, "groebner")
    chain = resultant_eliminant(emb.equations, emb.eliminated, ring=emb.ring, limits=limits)
    if chain is not None:
        try:
            gb, free = elimination_basis(emb.equations, emb.eliminated, ring=emb.ring, track=track,
                                         limits=_sub_limits(limits, refine_seconds))
        except ResourceLimitExceeded:
            if limits is not None:
                limits.check()
            return Attempt(chain.target, None, emb, "resultant", chain)
        if not free:
            raise AssertionError("internal error: block basis misses a known consequence")
        return Attempt(gb.generators[free[0]], gb, emb, "groebner")
    grev = buchberger(emb.equations, GREVLEX, ring=emb.ring, track=track, limits=limits, stop_on_unit=True)
    if grev.is_unit():
        return Attempt(grev.generators[0], grev, emb, "groebner")
    kept = {emb.ring.vars.index(n) for n in emb.kept}
    if not any(_pure_in(m, kept) for m in grev.leading_monomials()):
        return Attempt(None, grev, emb, "leading_terms")
    gb, free = elimination_basis(emb.equations, emb.eliminated, ring=emb.ring, track=track, limits=limits)
    return Attempt(gb.generators[free[0]] if free else None, gb, emb, "groebner")


def eliminate(sys: DiffSystem, opts: Optional[EngineOptions] = None) -> EliminationReport:
    """Find a nonzero consequence of ``F`` in the kept unknowns alone.

    One exists iff the ideal of the ``B(d, D)``-fold prolongation meets the
    polynomial ring of kept coordinates.  The witness comes with a
    verified membership certificate against the prolonged equations.
    """
    opts = opts or EngineOptions()
    sys = _require_system(sys)
    if not sys.keep_vars or not sys.elim_vars:
        raise EngineInputError("elimination needs both kept and eliminated unknowns")
    t0 = time.monotonic()
    opts.limits.start()
    work, param_values = _elimination_ring_system(sys, opts, Rng(opts.seed))
    if not work.nonzero():
        stats = VarietyStats(0, 0, 1, opts.dim_mode, opts.deg_mode, None)
        return EliminationReport("not_eliminable", None, None, stats, BoundReport.of(0, 1), 0, 0,
                                 time.monotonic() - t0, [], param_values)
    stats = variety_stats(work, "elimination", opts)
    bound = BoundReport.of(stats.d_hat, stats.D_hat)
    lengths = range(1, 2) if stats.unit_ideal and not opts.strict_bound else _probe_lengths(bound, opts)
    probes = []
    size = 0
    for L in lengths:
        s0 = time.monotonic()
        att = elimination_at(work, L, track=opts.certificate, limits=opts.limits,
                             refine_seconds=opts.refine_seconds)
        size = att.basis_size
        probes.append(Probe(L, att.witness is not None, time.monotonic() - s0, att.method))
        if att.witness is None:
            continue
        gb, emb = att.basis, att.embedding
        witness, factor = normalize_witness(att.witness)
        cert = None
        if opts.certificate and att.chain is not None:
            cert = att.chain.scaled(factor)
            if not cert.verify():
                raise AssertionError("internal error: witness certificate failed to verify")
        elif opts.certificate and gb is not None:
            cert = gb.certificate(witness)
            if cert is None or not cert.verify():
                raise AssertionError("internal error: witness certificate failed to verify")
            cert = Certificate(emb.ring.convert(cert.target), [emb.ring.convert(g) for g in cert.generators],
                               {j: emb.ring.convert(q) for j, q in cert.cofactors.items()})
        wpoly = unflatten(witness, work.field)
        return EliminationReport("eliminable", wpoly, cert, stats, bound, L, size,
                                 time.monotonic() - t0, probes, param_values, att.method)
    if bound.value is None or lengths[-1] < bound.value:
        raise ResourceLimitExceeded(
            f"no consequence within {lengths[-1]} transforms and the bound is out of reach")
    return EliminationReport("not_eliminable", None, None, stats, bound, lengths[-1], size,
                             time.monotonic() - t0, probes, param_values)


# ---------------------------------------------------------------------------
# randomized test

def probabilistic_eliminable(sys: DiffSystem, p: float = 0.99, seed: int = 0,
                             transforms: Optional[int] = None,
                             opts: Optional[EngineOptions] = None) -> ProbabilisticReport:
    """Randomized elimination test.

    Prolong, replace every kept coordinate and every parameter by a random
    integer from ``{0, ..., R-1}`` with ``R = ceil(Delta / (1 - p))``, and
    report ``likely_eliminable`` iff the remaining system is inconsistent.
    ``Delta`` is the sum over prolonged equations of their total degree in
    the kept coordinates (at least 1).  ``transforms`` is the highest shift
    applied; by default the bound is used.
    """
    if not 0 < p < 1:
        raise ValueError("p must lie strictly between 0 and 1")
    opts = opts or EngineOptions(seed=seed)
    sys = _require_system(sys)
    if not sys.keep_vars:
        raise EngineInputError("the randomized test needs kept unknowns")
    t0 = time.monotonic()
    opts.limits.start()
    if transforms is None:
        stats = variety_stats(sys, "elimination", opts) if sys.elim_vars else None
        if stats is None:
            length = 1
        else:
            b = BoundReport.of(stats.d_hat, stats.D_hat)
            if b.value is None:
                raise BoundTooLarge(f"B({b.d}, {b.D}) is too large to prolong by")
            length = b.value
    else:
        if transforms < 0:
            raise ValueError("transforms must be non-negative")
        length = transforms + 1
    rng = Rng(seed)
    emb = prolonged_flat(sys, length, "elimination")
    kept_block = 1 if emb.eliminated else 0
    delta = 0
    for q in emb.equations:
        deg = q.total_degree(kept_block) if emb.eliminated and emb.kept else \
            (q.total_degree() if emb.kept else 0)
        if deg != NEG_INF:
            delta += int(deg)
    delta = max(1, delta)
    size = math.ceil(Fraction(delta) / (1 - Fraction(p).limit_denominator(10 ** 12)))
    param_values = {}
    if sys.params:
        for _ in range(32):
            param_values = {k: fmpq(rng.randrange(size)) for k in sys.params}
            try:
                work = specialize_params(sys, param_values)
                break
            except ArithmeticError:
                continue
        else:
            raise EngineInputError("could not avoid zero denominators when sampling parameters")
        emb = prolonged_flat(work, length, "elimination")
    values = {n: fmpq(rng.randrange(size)) for n in emb.kept}
    polys, u_ring = _specialized_u_polys(emb, values)
    nonzero_const = any(q.is_constant() for q in polys)
    if nonzero_const:
        unit, gb_size = True, 1
    elif not polys:
        unit, gb_size = False, 0
    else:
        gb = buchberger(polys, GREVLEX, ring=u_ring, limits=opts.limits, stop_on_unit=True)
        unit, gb_size = gb.is_unit(), len(gb)
    verdict = "likely_eliminable" if unit else "likely_not_eliminable"
    return ProbabilisticReport(verdict, p, seed, length, delta, size,
                               {k: str(v) for k, v in values.items()},
                               {k: str(v) for k, v in param_values.items()}, gb_size,
                               time.monotonic() - t0)


__all__ = [
    "BoundReport", "BoundTooLarge", "ConsistencyReport", "EliminationReport", "EngineInputError",
    "EngineOptions", "Probe", "ProbabilisticReport", "VarietyStats", "bound_log2", "check_consistency",
    "compute_bound", "consistency_at", "eliminate", "elimination_at", "normalize_witness",
    "probabilistic_eliminable", "prolonged_flat", "specialize_params", "variety_stats",
]
