"""Buchberger Groebner bases and the ideal operations built on them.

The main entry point is :func:`buchberger`, which returns a reduced,
monic :class:`GroebnerBasis`.  Pair management follows Gebauer--Moeller
(which subsumes the coprime and chain criteria); pairs are selected by
sugar degree, then by the order of their lcm, then by index.

With ``track=True`` every new basis element records how it was obtained
from earlier ones, so that cofactors with respect to the input
generators can be expanded on demand (see :class:`Certificate`).
"""

from __future__ import annotations

import heapq
import time
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from flint import fmpq, fmpq_mpoly_ctx

from .poly import GREVLEX, MonomialOrder, Poly, PolyRing, VarTable, block_order


class ResourceLimitExceeded(RuntimeError):
    """A Groebner computation hit its wall-clock or basis-size cap."""


@dataclass
class Limits:
    """Optional caps on a computation; ``None`` means unlimited."""

    seconds: Optional[float] = None
    max_basis: Optional[int] = None
    deadline: Optional[float] = field(default=None, repr=False)

    def start(self) -> "Limits":
        if self.seconds is not None and self.deadline is None:
            self.deadline = time.monotonic() + self.seconds
        return self

    def check(self, basis_size: int = 0) -> None:
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise ResourceLimitExceeded(f"time limit of {self.seconds}s exceeded")
        if self.max_basis is not None and basis_size > self.max_basis:
            raise ResourceLimitExceeded(f"basis size limit of {self.max_basis} exceeded")


# ---------------------------------------------------------------------------
# monomial helpers (exponent tuples)

def _divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def _mask(m) -> int:
    r = 0
    for i, e in enumerate(m):
        if e:
            r |= 1 << i
    return r


# ---------------------------------------------------------------------------
# packed monomials

FIELD_BITS = 16


class Packing:
    """Exponent vectors packed into one integer for a given monomial order.

    Fields are laid out most significant first in the order the monomial
    order compares them: for a grevlex block a degree field followed by
    the block's exponents in reverse, for a lex block the exponents in
    order.  Then products are sums, ``key(m) = m ^ neg`` compares like the
    order (grevlex exponent fields are stored plainly and flipped by the
    XOR), and every field keeps a zero guard bit so divisibility is one
    subtraction.
    """

    def __init__(self, ring: PolyRing):
        n = ring.nvars
        order = ring.order
        if order.kind == "lex":
            segments = [("lex", list(range(n)))]
        elif order.kind == "grevlex":
            segments = [("grevlex", list(range(n)))]
        else:
            segments = []
            for b, sl in enumerate(ring.vars.block_slices()):
                kind = order.inner[b] if b < len(order.inner) else "grevlex"
                segments.append((kind, list(range(sl.start, sl.stop))))
        fields = []  # (kind, payload) most significant first
        for kind, idx in segments:
            if kind == "grevlex":
                fields.append(("deg", idx))
                fields.extend(("neg", i) for i in reversed(idx))
            else:
                fields.extend(("var", i) for i in idx)
        W = FIELD_BITS
        nf = len(fields)
        self.n = n
        self.field_mask = (1 << (W - 1)) - 1
        self.var_shift = [0] * n
        mult = [0] * n
        neg = guard = 0
        for k, (kind, payload) in enumerate(fields):
            shift = (nf - 1 - k) * W
            guard |= 1 << (shift + W - 1)
            if kind == "deg":
                for i in payload:
                    mult[i] += 1 << shift
            else:
                self.var_shift[payload] = shift
                mult[payload] += 1 << shift
                if kind == "neg":
                    neg |= self.field_mask << shift
        self.mult = mult
        self.neg = neg
        self.guard = guard

    def pack(self, e) -> int:
        v = 0
        for x, k in zip(e, self.mult):
            if x:
                if x > self.field_mask:
                    raise ResourceLimitExceeded("exponent too large for packed monomials")
                v += x * k
        return v

    def unpack(self, v: int) -> tuple:
        fm = self.field_mask
        return tuple((v >> s) & fm for s in self.var_shift)

    def key(self, v: int) -> int:
        return v ^ self.neg

    def divides(self, a: int, b: int) -> bool:
        g = self.guard
        return ((b | g) - a) & g == g

    def lcm(self, a: int, b: int) -> int:
        return self.pack(_lcm(self.unpack(a), self.unpack(b)))

    def degree(self, v: int) -> int:
        return sum(self.unpack(v))

    def support(self, v: int) -> int:
        return _mask(self.unpack(v))

    def pack_terms(self, terms: dict) -> dict:
        return {self.pack(m): c for m, c in terms.items()}

    def unpack_terms(self, terms: dict) -> dict:
        return {self.unpack(m): c for m, c in terms.items()}

    def overflowed(self, terms) -> bool:
        g = self.guard
        return any(m & g for m in terms)


class _Elt:
    __slots__ = ("idx", "lm", "supp", "tail", "terms", "sugar", "recipe")

    def __init__(self, idx, lm, supp, terms, sugar, recipe):
        self.idx = idx
        self.lm = lm
        self.supp = supp
        self.terms = terms
        self.tail = [(m, c) for m, c in terms.items() if m != lm]
        self.sugar = sugar
        # ("input", k, scale) or (scale, [(coef, shift, j), ...])
        self.recipe = recipe


class _Engine:
    """Working state of one Groebner computation."""

    def __init__(self, ring: PolyRing, track: bool, limits: Optional[Limits]):
        self.ring = ring
        self.pk = Packing(ring)
        self.track = track
        self.limits = limits
        self.elts: list[_Elt] = []

    def lm_of(self, terms: dict) -> int:
        neg = self.pk.neg
        return max(terms, key=lambda m: m ^ neg)

    def reduce(self, p: dict, reducers: Sequence[_Elt], trace: Optional[list] = None) -> dict:
        """Full normal form of ``p`` (consumed) modulo monic ``reducers``."""
        neg = self.pk.neg
        guard = self.pk.guard
        reducers = sorted(reducers, key=lambda g: len(g.tail))
        lms = [(g.lm, g) for g in reducers]
        heap = [-(m ^ neg) for m in p]
        heapq.heapify(heap)
        rem = {}
        pop, push = heapq.heappop, heapq.heappush
        while heap:
            m = (-pop(heap)) ^ neg
            c = p.pop(m, None)
            if c is None:
                continue
            mg = m | guard
            for lm, g in lms:
                if (mg - lm) & guard == guard:
                    break
            else:
                rem[m] = c
                continue
            q = m - lm
            for gm, gc in g.tail:
                t = q + gm
                v = p.get(t)
                if v is None:
                    p[t] = -(c * gc)
                    push(heap, -(t ^ neg))
                else:
                    v = v - c * gc
                    if v:
                        p[t] = v
                    else:
                        del p[t]
            if trace is not None:
                trace.append((-c, q, g.idx))
        return rem

    def new_elt(self, terms: dict, sugar: int, recipe) -> _Elt:
        if self.pk.overflowed(terms):
            raise ResourceLimitExceeded("exponent too large for packed monomials")
        lm = self.lm_of(terms)
        lc = terms[lm]
        if lc != 1:
            inv = 1 / lc
            terms = {m: c * inv for m, c in terms.items()}
            if recipe is not None and isinstance(recipe[0], str):
                recipe = ("input", recipe[1], recipe[2] * inv)
            elif recipe is not None:
                recipe = (recipe[0] * inv, recipe[1])
        e = _Elt(len(self.elts), lm, self.pk.support(lm), terms, sugar, recipe)
        self.elts.append(e)
        return e

    # -- cofactor expansion ---------------------------------------------
    def cofactors(self, idx: int, memo: dict) -> dict:
        """``{input index: packed terms}`` with ``elt[idx] = sum cof_k * input_k``."""
        if idx in memo:
            return memo[idx]
        rec = self.elts[idx].recipe
        if rec is None:
            raise RuntimeError("computation was not tracked")
        if isinstance(rec[0], str):
            out = {rec[1]: {0: rec[2]}}
        else:
            scale, entries = rec
            out = {}
            for coef, shift, j in entries:
                _accumulate(out, self.cofactors(j, memo), coef * scale, shift)
        memo[idx] = out
        return out


def _accumulate(out: dict, cof: dict, coef, shift: int) -> None:
    for k, terms in cof.items():
        acc = out.setdefault(k, {})
        for m, c in terms.items():
            t = m + shift
            v = acc.get(t)
            v = coef * c if v is None else v + coef * c
            if v:
                acc[t] = v
            else:
                acc.pop(t, None)
    for k in [k for k, v in out.items() if not v]:
        del out[k]


def _stops(eng: _Engine, e: _Elt, stop_mask: Optional[int]) -> bool:
    if stop_mask is None or e.supp & stop_mask:
        return False
    support = eng.pk.support
    return not any(support(m) & stop_mask for m, _ in e.tail)


def _run(eng: _Engine, gens: Sequence[Poly], stop_mask: Optional[int]) -> tuple[list[_Elt], bool]:
    """Basis elements, and whether the run stopped early on ``stop_mask``."""
    track = eng.track
    pk = eng.pk
    key = pk.key
    divides = pk.divides
    elts = eng.elts
    G: list[int] = []
    pairs: list = []
    alive: dict = {}
    limits = eng.limits

    def update(h: _Elt) -> None:
        hlm = h.lm
        cand = [(g, pk.lcm(hlm, elts[g].lm)) for g in G]
        kept = []
        for n, (g1, l1) in enumerate(cand):
            if not (h.supp & elts[g1].supp):
                kept.append((g1, l1))
                continue
            if any(divides(l2, l1) for _, l2 in cand[n + 1:]) or any(divides(l2, l1) for _, l2 in kept):
                continue
            kept.append((g1, l1))
        for pkey, (i, j, l) in list(alive.items()):
            if divides(hlm, l) and pk.lcm(elts[i].lm, hlm) != l and pk.lcm(elts[j].lm, hlm) != l:
                del alive[pkey]
        for g, l in kept:
            if not (h.supp & elts[g].supp):
                continue
            gi = elts[g]
            dl = pk.degree(l)
            sugar = max(gi.sugar + dl - pk.degree(gi.lm), h.sugar + dl - pk.degree(hlm))
            alive[(g, h.idx)] = (g, h.idx, l)
            heapq.heappush(pairs, (sugar, key(l), g, h.idx))
        G[:] = [g for g in G if not divides(hlm, elts[g].lm)] + [h.idx]

    for k, p in enumerate(gens):
        if not p.terms:
            continue
        terms = pk.pack_terms(p.terms)
        e = eng.new_elt(terms, max(sum(m) for m in p.terms), ("input", k, 1) if track else None)
        if _stops(eng, e, stop_mask):
            return [e], True
        update(e)

    while pairs:
        sugar, _, i, j = heapq.heappop(pairs)
        pkey = (i, j)
        if pkey not in alive:
            continue
        _, _, l = alive.pop(pkey)
        if limits is not None:
            limits.check(len(G))
        gi, gj = elts[i], elts[j]
        qi = l - gi.lm
        qj = l - gj.lm
        s: dict = {}
        for m, c in gi.tail:
            s[m + qi] = c
        for m, c in gj.tail:
            t = m + qj
            v = s.get(t)
            if v is None:
                s[t] = -c
            else:
                v = v - c
                if v:
                    s[t] = v
                else:
                    del s[t]
        trace = [(1, qi, i), (-1, qj, j)] if track else None
        rem = eng.reduce(s, [elts[g] for g in G], trace)
        if not rem:
            continue
        e = eng.new_elt(rem, sugar, (1, trace) if track else None)
        if _stops(eng, e, stop_mask):
            return [e], True
        update(e)

    # inputs are added unreduced, so G may not be minimal yet
    minimal: list[int] = []
    for g in sorted(G, key=lambda g: key(elts[g].lm)):
        if not any(divides(elts[h].lm, elts[g].lm) for h in minimal):
            minimal.append(g)
    G = sorted(minimal)
    out = []
    for g in G:
        others = [elts[h] for h in G if h != g]
        trace = [(1, 0, g)] if track else None
        rem = eng.reduce(dict(elts[g].terms), others, trace)
        if rem == elts[g].terms:
            e = elts[g]
        else:
            e = eng.new_elt(rem, elts[g].sugar, (1, trace) if track else None)
        out.append(e)
    out.sort(key=lambda e: key(e.lm))
    return out, False


def _common_ring(gens: Sequence[Poly], ring: Optional[PolyRing]) -> PolyRing:
    if ring is None:
        if not gens:
            raise ValueError("need a ring for an empty generator list")
        ring = gens[0].ring
    return ring


class GroebnerBasis:
    """Reduced monic Groebner basis of the ideal generated by ``provenance``."""

    def __init__(self, ring: PolyRing, generators: list[Poly], provenance: list[Poly],
                 engine: Optional[_Engine] = None, elts: Optional[list[_Elt]] = None,
                 complete: bool = True):
        self.ring = ring
        # False when the computation stopped early on request
        self.complete = complete
        self.order = ring.order
        self.generators = generators
        self.provenance = provenance
        self._engine = engine
        self._elts = elts
        self._memo: dict = {}

    def __len__(self) -> int:
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def __repr__(self) -> str:
        return f"GroebnerBasis([{', '.join(map(str, self.generators))}])"

    @property
    def tracked(self) -> bool:
        return self._engine is not None and self._engine.track

    def is_unit(self) -> bool:
        return len(self.generators) == 1 and self.generators[0].is_constant()

    def is_zero_ideal(self) -> bool:
        return not self.generators

    def leading_monomials(self) -> list[tuple]:
        return [g.leading_monomial() for g in self.generators]

    def _reducers(self) -> list[_Elt]:
        if self._elts is not None:
            return self._elts
        eng = _Engine(self.ring, False, None)
        self._elts = [eng.new_elt(eng.pk.pack_terms(g.terms), 0, None) for g in self.generators]
        self._engine = self._engine or eng
        return self._elts

    def _engine_for_reduction(self) -> _Engine:
        self._reducers()
        return self._engine

    def normal_form(self, p: Poly) -> Poly:
        p = self.ring.convert(p)
        eng = self._engine_for_reduction()
        rem = eng.reduce(eng.pk.pack_terms(p.terms), self._reducers())
        return Poly(self.ring, eng.pk.unpack_terms(rem))

    def contains(self, p: Poly) -> bool:
        return not self.normal_form(p)

    def cofactors_of(self, i: int) -> dict[int, Poly]:
        """Cofactors expressing ``generators[i]`` in the input generators."""
        if not self.tracked:
            raise RuntimeError("basis was computed without tracking")
        raw = self._engine.cofactors(self._elts[i].idx, self._memo)
        unpack = self._engine.pk.unpack_terms
        return {k: Poly(self.ring, unpack(t)) for k, t in raw.items()}

    def certificate(self, p: Poly) -> Optional["Certificate"]:
        """Cofactors writing ``p`` in terms of the input generators, or None."""
        if not self.tracked:
            raise RuntimeError("basis was computed without tracking")
        p = self.ring.convert(p)
        eng = self._engine
        trace: list = []
        rem = eng.reduce(eng.pk.pack_terms(p.terms), self._elts, trace)
        if rem:
            return None
        out: dict = {}
        for coef, shift, j in trace:
            _accumulate(out, eng.cofactors(j, self._memo), -coef, shift)
        cofs = {k: Poly(self.ring, eng.pk.unpack_terms(t)) for k, t in out.items()}
        cert = Certificate(p, list(self.provenance), cofs)
        if not cert.verify():
            raise AssertionError("internal error: certificate does not verify")
        return cert

    def is_groebner(self) -> bool:
        """Buchberger's criterion: every S-polynomial reduces to zero."""
        gens = self.generators
        for a in range(len(gens)):
            for b in range(a + 1, len(gens)):
                if spoly(gens[a], gens[b]):
                    if self.normal_form(spoly(gens[a], gens[b])):
                        return False
        return True

    def is_reduced(self) -> bool:
        lms = self.leading_monomials()
        for g, lm in zip(self.generators, lms):
            if g.leading_coefficient() != 1:
                return False
            for h, hlm in zip(self.generators, lms):
                if h is g:
                    continue
                if any(_divides(hlm, m) for m in g.terms):
                    return False
        return True


def spoly(f: Poly, g: Poly) -> Poly:
    """S-polynomial of two nonzero polynomials."""
    mf, cf = f.leading_term()
    mg, cg = g.leading_term()
    l = _lcm(mf, mg)
    return f.mul_monomial(tuple(a - b for a, b in zip(l, mf)), 1 / cf) - \
        g.mul_monomial(tuple(a - b for a, b in zip(l, mg)), 1 / cg)


def buchberger(gens: Sequence[Poly], order: Optional[MonomialOrder] = None, *,
               ring: Optional[PolyRing] = None, track: bool = False,
               limits: Optional[Limits] = None, stop_on_unit: bool = False,
               stop_when_free_of: Optional[Iterable[str]] = None) -> GroebnerBasis:
    """Reduced Groebner basis of ``<gens>``.

    ``order`` overrides the ring's monomial order.  With ``stop_on_unit`` the
    computation returns ``[1]`` as soon as a nonzero constant appears.  With
    ``stop_when_free_of`` it returns the first element found that involves
    none of the given variables; such a result has ``complete`` False
    unless that element is a constant.
    """
    ring = _common_ring(gens, ring)
    if order is not None:
        ring = ring.with_order(order)
    gens = [ring.convert(g) for g in gens]
    if limits is not None:
        limits.start()
    eng = _Engine(ring, track, limits)
    stop_mask = None
    if stop_on_unit:
        stop_mask = (1 << ring.nvars) - 1
    elif stop_when_free_of is not None:
        stop_mask = sum(1 << ring.vars.index(n) for n in set(stop_when_free_of))
    elts, stopped = _run(eng, gens, stop_mask)
    polys = [Poly(ring, eng.pk.unpack_terms(e.terms)) for e in elts]
    complete = not stopped or not elts[0].lm
    return GroebnerBasis(ring, polys, gens, eng, elts, complete)


def normal_form(p: Poly, gb: GroebnerBasis) -> Poly:
    return gb.normal_form(p)


def contains_one(gens: Sequence[Poly], *, ring: Optional[PolyRing] = None,
                 limits: Optional[Limits] = None) -> bool:
    """True iff 1 lies in the ideal (computed with a grevlex basis)."""
    if not gens:
        return False
    gb = buchberger(gens, GREVLEX, ring=ring, limits=limits, stop_on_unit=True)
    return gb.is_unit()


# ---------------------------------------------------------------------------
# elimination

def elimination_ring(ring: PolyRing, eliminate: Iterable[str]) -> PolyRing:
    """Same variables with ``eliminate`` moved into block 0 (block order)."""
    eliminate = set(eliminate)
    unknown = eliminate - set(ring.names)
    if unknown:
        raise KeyError(f"unknown variables {sorted(unknown)}")
    first = [n for n in ring.names if n in eliminate]
    rest = [n for n in ring.names if n not in eliminate]
    if not first or not rest:
        return PolyRing(VarTable(tuple(first + rest)), GREVLEX, ring.field)
    blocks = [0] * len(first) + [1] * len(rest)
    return PolyRing(VarTable(tuple(first + rest), tuple(blocks)), block_order("grevlex", "grevlex"), ring.field)


def elimination_basis(gens: Sequence[Poly], eliminate: Iterable[str], *, ring: Optional[PolyRing] = None,
                      track: bool = False, limits: Optional[Limits] = None) -> tuple[GroebnerBasis, list[int]]:
    """Block-order basis plus the indices of its elements free of ``eliminate``."""
    ring = _common_ring(gens, ring)
    eliminate = set(eliminate)
    ering = elimination_ring(ring, eliminate)
    gb = buchberger([ering.convert(g) for g in gens], ring=ering, track=track, limits=limits)
    idx = [ering.vars.index(n) for n in eliminate]
    free = [i for i, g in enumerate(gb.generators) if not any(m[k] for m in g.terms for k in idx)]
    return gb, free


def elimination_ideal(gens: Sequence[Poly], eliminate: Iterable[str], *, ring: Optional[PolyRing] = None,
                      limits: Optional[Limits] = None) -> list[Poly]:
    """Generators of ``<gens>`` intersected with the ring of the other variables.

    Results are returned in the ring of the inputs.
    """
    ring = _common_ring(gens, ring)
    eliminate = set(eliminate)
    if not eliminate:
        return buchberger(gens, ring=ring, limits=limits).generators
    gb, free = elimination_basis(gens, eliminate, ring=ring, limits=limits)
    return [ring.convert(gb.generators[i]) for i in free]


def _to_flint(polys: Sequence[Poly], ring: PolyRing):
    """Clear denominators and move ``polys`` into one flint ring.

    Parameters of a rational-function field become extra variables placed
    after the ring's own.
    """
    params = tuple(getattr(ring.field, "params", ()))
    names = ring.names + params
    ctx = fmpq_mpoly_ctx.get(names, "lex")
    out = []
    for p in polys:
        if not params:
            out.append(ctx.from_dict({m: fmpq(c) for m, c in p.terms.items()}))
            continue
        den = None
        for c in p.terms.values():
            den = c.den if den is None else den * c.den / den.gcd(c.den)
        acc = {}
        for m, c in p.terms.items():
            for pe, pc in (c.num * (den / c.den)).to_dict().items():
                acc[m + tuple(pe)] = pc
        out.append(ctx.from_dict(acc))
    return ctx, out


def _from_flint(q, ring: PolyRing) -> Poly:
    n = ring.nvars
    field_ = ring.field
    params = tuple(getattr(field_, "params", ()))
    if not params:
        return Poly(ring, {tuple(m): c for m, c in q.to_dict().items()})
    groups: dict = {}
    for m, c in q.to_dict().items():
        groups.setdefault(tuple(m[:n]), {})[tuple(m[n:])] = c
    one = field_.one.den
    return Poly(ring, {m: field_.from_fraction(field_.ctx.from_dict(d), one, params)
                       for m, d in groups.items()})


def _coefficients_in(p, var: str, pos: int) -> list:
    """Coefficients of ``p`` as a polynomial in ``var`` (index ``pos``)."""
    ctx = p.context()
    parts: dict = {}
    for m, c in p.to_dict().items():
        k = m[pos]
        e = list(m)
        e[pos] = 0
        parts.setdefault(k, {})[tuple(e)] = c
    top = max(parts)
    return [ctx.from_dict(parts.get(k, {})) for k in range(top + 1)]


def _linear_resultant(p, pivot, var: str, pos: int):
    """``(r, left, right)`` with ``r = left*p - right*pivot`` free of ``var``.

    ``pivot = a*var + b`` has degree one in ``var``; ``r`` is ``p`` evaluated
    at ``var = -b/a`` with denominators cleared by ``a^n``, i.e. the
    resultant of the two up to sign.
    """
    a = pivot.derivative(var)
    b = pivot - a * pivot.context().gens()[pos]
    coeffs = _coefficients_in(p, var, pos)
    n = len(coeffs) - 1
    acc = coeffs[n]
    apow = a
    for k in range(n - 1, -1, -1):
        acc = acc * (-b) + coeffs[k] * apow
        apow = apow * a
    left = apow / a
    right = (left * p - acc) / pivot
    return acc, left, right


def _det(rows: list[list], one):
    """Determinant of a square matrix of polynomials (Bareiss, exact)."""
    m = [r[:] for r in rows]
    n = len(m)
    if not n:
        return one
    sign, prev = 1, one
    for k in range(n - 1):
        if m[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not m[i][k].is_zero()), None)
            if swap is None:
                return one - one
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev
        prev = m[k][k]
    return m[n - 1][n - 1] if sign > 0 else -m[n - 1][n - 1]


def _sylvester_resultant(p, q, var: str, pos: int):
    """``(r, left, right)`` with ``r = left*p - right*q`` the resultant in ``var``.

    The cofactors are the last row of the adjugate of the Sylvester matrix.
    """
    ctx = p.context()
    one = ctx.from_dict({(0,) * len(ctx.names()): 1})
    zero = one - one
    pc, qc = _coefficients_in(p, var, pos), _coefficients_in(q, var, pos)
    m, n = len(pc) - 1, len(qc) - 1
    size = m + n

    def entry(coeffs, shift, col):
        k = size - 1 - col - shift
        return coeffs[k] if 0 <= k < len(coeffs) else zero

    rows = [[entry(pc, n - 1 - k, c) for c in range(size)] for k in range(n)]
    rows += [[entry(qc, m - 1 - k, c) for c in range(size)] for k in range(m)]
    minor = [r[:-1] for r in rows]
    cof = []
    for k in range(size):
        d = _det(minor[:k] + minor[k + 1:], one)
        cof.append(d if (k + size - 1) % 2 == 0 else -d)
    v = ctx.gens()[pos]
    left = zero
    for k in range(n):
        left = left + cof[k] * v ** (n - 1 - k)
    right = zero
    for k in range(m):
        right = right + cof[n + k] * v ** (m - 1 - k)
    r = left * p + right * q
    if not r.is_zero() and r.degrees()[pos]:
        raise AssertionError("internal error: resultant still involves the variable")
    return r, left, -right


@dataclass
class ChainStep:
    """New item ``left_factor * items[left] - right_factor * items[right]``."""

    left: int
    right: int
    left_factor: object
    right_factor: object


@dataclass
class ChainCertificate:
    """Straight-line proof that ``target`` lies in ``<generators>``.

    Items start as the generators (denominators cleared); every step
    appends one combination of two earlier items, and ``target`` equals
    ``factor`` times the last item.
    """

    ring: PolyRing
    generators: list[Poly]
    steps: list[ChainStep]
    target: Poly
    factor: object = 1

    def final_item(self):
        _, items = _to_flint(self.generators, self.ring)
        for st in self.steps:
            items.append(st.left_factor * items[st.left] - st.right_factor * items[st.right])
        return items[-1]

    def verify(self) -> bool:
        got = _from_flint(self.final_item(), self.ring).scale(self.ring.field(self.factor))
        return bool(got) and got == self.ring.convert(self.target)

    def step_factors(self) -> list[tuple[Poly, Poly]]:
        """``(left_factor, right_factor)`` of every step as ring polynomials."""
        return [(_from_flint(st.left_factor, self.ring), _from_flint(st.right_factor, self.ring))
                for st in self.steps]

    def scaled(self, c) -> "ChainCertificate":
        return ChainCertificate(self.ring, self.generators, self.steps,
                                self.target.scale(c), self.factor * c)


def resultant_eliminant(gens: Sequence[Poly], eliminate: Iterable[str], *,
                        ring: Optional[PolyRing] = None, max_terms: int = 200_000,
                        max_sylvester: int = 8, limits: Optional[Limits] = None) -> Optional[ChainCertificate]:
    """A nonzero element of ``<gens>`` free of ``eliminate``, with its proof.

    Variables are removed one at a time, preferring one that occurs
    linearly somewhere.  The polynomial of lowest degree in it becomes the
    pivot; every other polynomial involving it is replaced by its resultant
    with the pivot, which lies in the ideal of the two, and the pivot is
    dropped.  Returns None when the search is inconclusive (every survivor
    vanished or a size cap was hit); that proves nothing about the ideal.
    """
    ring = _common_ring(gens, ring)
    gens = [ring.convert(g) for g in gens if g]
    todo = set(eliminate)
    ctx, items = _to_flint(gens, ring)
    pos = {name: i for i, name in enumerate(ctx.names())}
    n = ring.nvars
    live = list(range(len(items)))
    made: dict[int, ChainStep] = {}

    def deg(i, v):
        return items[i].degrees()[pos[v]]

    while todo:
        if limits is not None:
            limits.check()
        for v in [v for v in todo if not any(deg(i, v) for i in live)]:
            todo.discard(v)
        choices = []
        for v in todo:
            hits = [i for i in live if deg(i, v)]
            pivot = min(hits, key=lambda i: (deg(i, v), len(items[i])))
            top = max(deg(i, v) for i in hits)
            if deg(pivot, v) + top > max_sylvester:
                continue
            choices.append((deg(pivot, v) > 1, len(hits), len(items[pivot]), v, pivot, hits))
        if not choices:
            if todo:
                return None
            break
        *_, var, pivot, hits = min(choices, key=lambda t: t[:4])
        todo.discard(var)
        survivors = [i for i in live if i not in hits]
        for i in hits:
            if i == pivot:
                continue
            if deg(pivot, var) == 1:
                r, left, right = _linear_resultant(items[i], items[pivot], var, pos[var])
            else:
                r, left, right = _sylvester_resultant(items[i], items[pivot], var, pos[var])
            if r.is_zero():
                continue
            if len(r) > max_terms:
                return None
            items.append(r)
            made[len(items) - 1] = ChainStep(i, pivot, left, right)
            survivors.append(len(items) - 1)
        live = survivors
    if not live:
        return None

    def weight(i):
        return max((sum(m[:n]) for m in items[i].monoms()), default=0)

    best = min(live, key=lambda i: (weight(i), len(items[i]), i))
    return _chain_for(best, items, made, gens, ring)


def _chain_for(best: int, items: list, made: dict, gens: list[Poly], ring: PolyRing) -> ChainCertificate:
    need: set[int] = set()
    stack = [best]
    while stack:
        i = stack.pop()
        if i in need or i not in made:
            continue
        need.add(i)
        stack += [made[i].left, made[i].right]
    base = len(gens)
    renum = {i: i for i in range(base)}
    steps = []
    for i in sorted(need):
        st = made[i]
        steps.append(ChainStep(renum[st.left], renum[st.right], st.left_factor, st.right_factor))
        renum[i] = base + len(steps) - 1
    if not steps:
        # a generator is already free of the eliminated variables
        one = items[best].context().from_dict({(0,) * len(items[best].context().names()): 1})
        zero = one - one
        steps.append(ChainStep(best, best, one, zero))
    return ChainCertificate(ring, gens, steps, _from_flint(items[best], ring))


def ideal_intersection(first: Sequence[Poly], second: Sequence[Poly], *,
                       ring: Optional[PolyRing] = None, tvar: str = "_t") -> list[Poly]:
    """Generators of ``I1 ∩ I2`` via ``<t*I1, (1-t)*I2>`` eliminating ``t``."""
    ring = _common_ring(list(first) + list(second), ring)
    big = PolyRing(VarTable((tvar,) + ring.names), GREVLEX, ring.field)
    t = big.gen(tvar)
    gens = [t * big.convert(f) for f in first] + [(1 - t) * big.convert(g) for g in second]
    return [ring.convert(g) for g in elimination_ideal(gens, [tvar], ring=big)]


def ideal_equal(first: Sequence[Poly], second: Sequence[Poly], ring: Optional[PolyRing] = None) -> bool:
    """Mutual membership of two generating sets."""
    ring = _common_ring(list(first) + list(second), ring)
    g1 = buchberger(first, GREVLEX, ring=ring)
    g2 = buchberger(second, GREVLEX, ring=ring)
    return all(g2.contains(f) for f in first) and all(g1.contains(g) for g in second)


# ---------------------------------------------------------------------------
# dimension and degree

def _min_transversal(sets: list[int]) -> int:
    """Size of the smallest set of bits meeting every bitmask in ``sets``."""
    sets = sorted(set(sets), key=lambda s: bin(s).count("1"))
    minimal = []
    for s in sets:
        if not any(t & s == t for t in minimal):
            minimal.append(s)
    best = [len(minimal)]

    def search(remaining: list[int], chosen: int) -> None:
        if chosen >= best[0]:
            return
        if not remaining:
            best[0] = chosen
            return
        pivot = min(remaining, key=lambda s: bin(s).count("1"))
        bit = pivot
        while bit:
            low = bit & -bit
            bit ^= low
            search([s for s in remaining if not s & low], chosen + 1)

    search(minimal, 0)
    return best[0]


def dimension(gb: GroebnerBasis) -> int:
    """Krull dimension from the leading-term ideal."""
    if gb.is_unit():
        raise ValueError("the unit ideal defines the empty variety")
    masks = [_mask(m) for m in gb.leading_monomials()]
    return gb.ring.nvars - _min_transversal(masks)


def _minimalize(mons: list[tuple]) -> list[tuple]:
    mons = sorted(set(mons), key=sum)
    out: list[tuple] = []
    for m in mons:
        if not any(_divides(g, m) for g in out):
            out.append(m)
    return out


def _poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_add(a: list[int], b: list[int]) -> list[int]:
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]


def hilbert_numerator(mons: Sequence[tuple], nvars: int) -> list[int]:
    """Numerator ``N(t)`` of the Hilbert series ``N(t)/(1-t)^n`` of ``k[x]/<mons>``."""
    gens = _minimalize([tuple(m) for m in mons])
    if not gens:
        return [1]
    if any(not any(m) for m in gens):
        return [0]
    masks = [_mask(m) for m in gens]
    if all(masks[i] & masks[j] == 0 for i in range(len(gens)) for j in range(i)):
        out = [1]
        for m in gens:
            f = [0] * (sum(m) + 1)
            f[0], f[-1] = 1, -1
            out = _poly_mul(out, f)
        return out
    counts = [0] * nvars
    for m in gens:
        if sum(1 for e in m if e) > 1:
            for i, e in enumerate(m):
                if e:
                    counts[i] += 1
    v = max(range(nvars), key=lambda i: counts[i])
    pivot = tuple(1 if i == v else 0 for i in range(nvars))
    plus = [m for m in gens if not m[v]] + [pivot]
    quot = [tuple(e - 1 if i == v and e else e for i, e in enumerate(m)) for m in gens]
    return _poly_add(hilbert_numerator(plus, nvars), [0] + hilbert_numerator(quot, nvars))


def hilbert_degree(gb: GroebnerBasis) -> int:
    """Degree read off the Hilbert series of the leading-term ideal.

    Computed from a graded (grevlex) basis; other orders are recomputed.
    """
    if gb.is_unit():
        raise ValueError("the unit ideal defines the empty variety")
    if not gb.order.is_graded(gb.ring.vars):
        gb = buchberger(gb.generators, GREVLEX, ring=gb.ring)
    num = hilbert_numerator(gb.leading_monomials(), gb.ring.nvars)
    # divide by (1 - t) as long as possible
    while len(num) > 1 and sum(num) == 0:
        q = []
        acc = 0
        for c in num[:-1]:
            acc += c
            q.append(acc)
        num = q
    return sum(num)


def radical_membership(p: Poly, gens: Sequence[Poly], *, ring: Optional[PolyRing] = None,
                       limits: Optional[Limits] = None) -> bool:
    """``p`` in the radical of ``<gens>``, via ``1 in <gens, 1 - t*p>``."""
    ring = _common_ring(list(gens) + [p], ring)
    tname = "_t"
    while tname in ring.names:
        tname += "_"
    big = PolyRing(VarTable(ring.names + (tname,)), GREVLEX, ring.field)
    t = big.gen(tname)
    ext = [big.convert(g) for g in gens] + [1 - t * big.convert(p)]
    return contains_one(ext, ring=big, limits=limits)


# ---------------------------------------------------------------------------
# certificates

@dataclass
class Certificate:
    """``target == sum(cofactors[j] * generators[j])``."""

    target: Poly
    generators: list[Poly]
    cofactors: dict[int, Poly]

    def expand(self) -> Poly:
        ring = self.target.ring
        total = ring.zero()
        for j, c in self.cofactors.items():
            total = total + c * ring.convert(self.generators[j])
        return total

    def verify(self) -> bool:
        return self.expand() == self.target

    def scaled(self, c) -> "Certificate":
        return Certificate(self.target.scale(c), self.generators,
                           {j: q.scale(c) for j, q in self.cofactors.items()})


def membership_certificate(p: Poly, gens: Sequence[Poly], *, ring: Optional[PolyRing] = None,
                           limits: Optional[Limits] = None) -> Optional[Certificate]:
    """Cofactors for ``p`` in ``<gens>`` if it is a member, else None."""
    ring = _common_ring(list(gens) + [p], ring)
    p = ring.convert(p)
    if not p:
        return Certificate(p, list(gens), {})
    if not gens:
        return None
    gb = buchberger(gens, GREVLEX, ring=ring, track=True, limits=limits)
    cert = gb.certificate(p)
    if cert is None:
        return None
    cofs = {j: ring.convert(q) for j, q in cert.cofactors.items()}
    out = Certificate(p, list(gens), cofs)
    if not out.verify():
        raise AssertionError("internal error: certificate does not verify")
    return out
