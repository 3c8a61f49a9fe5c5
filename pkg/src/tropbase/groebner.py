"""Buchberger engine with block elimination and Rabinowitsch saturation.

The reduced Groebner basis produced for a fixed monomial order is
canonical (monic, auto-reduced, sorted), so identical inputs give
byte-identical bases regardless of reduction choices along the way.

Internally the engine runs fraction-free over the integers whenever the
coefficient field is Q (denominators are cleared up front and reduction
uses cross-multiplication), with Gebauer-Moeller pair pruning and a
degree-graded normal selection queue.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Iterable, Optional, Sequence

from .arith import PAdicField
from .poly import (GREVLEX, Block, MonomialOrder, PolyRing, Polynomial,
                   RingMismatchError, fresh_names)


class WorkBudgetError(RuntimeError):
    """A Groebner run exceeded its deterministic step budget."""


class _Budget:
    __slots__ = ("left", "max_bits")

    def __init__(self, steps, max_bits=32768):
        self.left = steps
        self.max_bits = max_bits

    def charge(self):
        if self.left is not None:
            self.left -= 1
            if self.left < 0:
                raise WorkBudgetError("reduction step budget exhausted")

    def check_bits(self, terms: dict):
        if self.max_bits is None:
            return
        for c in terms.values():
            if c.bit_length() > self.max_bits:
                raise WorkBudgetError("coefficient size budget exhausted")


def _divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _quotient(a, b):
    return tuple(x - y for x, y in zip(a, b)) if _divides(b, a) else None


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _content_normalize(f: Polynomial, order: MonomialOrder) -> Polynomial:
    """Scale to integer coefficients with content 1 (positive leading
    coefficient), or to a monic polynomial over non-rational fields."""
    if not f:
        return f
    lead = f.leading(order)[1]
    if isinstance(lead, (Fraction, int)):
        den = 1
        num = 0
        for c in f.terms.values():
            c = Fraction(c)
            den = den * c.denominator // gcd(den, c.denominator)
        for c in f.terms.values():
            c = Fraction(c)
            num = gcd(num, abs(c.numerator * (den // c.denominator)))
        factor = Fraction(den, num)
        if lead < 0:
            factor = -factor
        return f.scale(factor)
    return f.scale(f.ring.field.inv(lead))


def _monic(f: Polynomial, order: MonomialOrder) -> Polynomial:
    lead = f.leading(order)[1]
    return f.scale(f.ring.field.inv(lead))


def normal_form(f: Polynomial, basis: Sequence[Polynomial],
                order: MonomialOrder = GREVLEX,
                divisor_order: Optional[Sequence[int]] = None) -> Polynomial:
    """Remainder of multivariate division of f by `basis` (exact field
    arithmetic; canonical for a Groebner basis)."""
    basis = [g for g in basis if g]
    if not basis:
        raise ValueError("division by an empty basis")
    for g in basis:
        if g.ring != f.ring:
            raise RingMismatchError("basis polynomial from a different ring")
        if g.laurent or f.laurent:
            raise ValueError("division requires cleared (non-Laurent) input")
    lts = [g.leading(order) for g in basis]
    idxs = list(divisor_order) if divisor_order is not None \
        else list(range(len(basis)))
    p = dict(f.terms)
    rem = {}
    while p:
        lexp = max(p, key=order.key)
        lc = p.pop(lexp)
        hit = None
        for i in idxs:
            q = _quotient(lexp, lts[i][0])
            if q is not None:
                hit = (i, q)
                break
        if hit is None:
            cur = rem.get(lexp)
            val = lc if cur is None else cur + lc
            if val:
                rem[lexp] = val
            elif cur is not None:
                del rem[lexp]
            continue
        i, q = hit
        factor = lc / lts[i][1]
        for e2, c2 in basis[i].terms.items():
            if e2 == lts[i][0]:
                continue
            exp = tuple(a + b for a, b in zip(e2, q))
            cur = p.get(exp)
            val = -factor * c2 if cur is None else cur - factor * c2
            if val:
                p[exp] = val
            elif cur is not None:
                del p[exp]
    return Polynomial(f.ring, rem)


def s_polynomial(f: Polynomial, g: Polynomial,
                 order: MonomialOrder = GREVLEX) -> Polynomial:
    ef, cf = f.leading(order)
    eg, cg = g.leading(order)
    l = _lcm(ef, eg)
    inv = f.ring.field.inv
    a = f.mul_monomial(tuple(x - y for x, y in zip(l, ef)), inv(cf))
    b = g.mul_monomial(tuple(x - y for x, y in zip(l, eg)), inv(cg))
    return a - b


# ---------------------------------------------------------------------------
# engine internals: raw term dicts, integer mode for Q coefficients

class _NKey:
    """Negated order key, so that a min-heap pops the largest monomial."""

    def __init__(self, order: MonomialOrder):
        self.order = order
        sig = order.signature()
        if sig[0] == "lex":
            self.nkey = lambda e: tuple(-x for x in e)
        elif sig[0] == "grevlex":
            self.nkey = lambda e: (-sum(e), tuple(reversed(e)))
        else:
            front = sig[1]
            rest_idx = None

            def nkey(e, front=front):
                fr = tuple(e[i] for i in front)
                rs = tuple(x for i, x in enumerate(e) if i not in front)
                return ((-sum(fr), tuple(reversed(fr))),
                        (-sum(rs), tuple(reversed(rs))))
            self.nkey = nkey


def _int_content(terms: dict) -> dict:
    g = 0
    for c in terms.values():
        g = gcd(g, abs(c))
        if g == 1:
            return terms
    if g > 1:
        return {e: c // g for e, c in terms.items()}
    return terms


def _pseudo_reduce(terms: dict, basis: list, lts: list, nk,
                   budget=None) -> dict:
    """Full reduction with integer cross-multiplication.  The result spans
    the same remainder as exact division, up to a positive integer factor;
    it is content-stripped before being returned."""
    p = dict(terms)
    rem: dict = {}
    heap = [(nk(e), e) for e in p]
    heapq.heapify(heap)
    steps = 0
    while heap:
        _, lexp = heapq.heappop(heap)
        cp = p.get(lexp)
        if cp is None:
            continue
        if budget is not None:
            budget.charge()
        hit = None
        for i, (eg, cg) in enumerate(lts):
            q = _quotient(lexp, eg)
            if q is not None:
                hit = (i, q, cg)
                break
        if hit is None:
            val = rem.get(lexp, 0) + cp
            if val:
                rem[lexp] = val
            else:
                rem.pop(lexp, None)
            del p[lexp]
            continue
        i, q, cg = hit
        if cp % cg == 0:
            scale_p = 1
            scale_g = cp // cg
        else:
            g0 = gcd(cp, cg)
            scale_p = cg // g0
            scale_g = cp // g0
        if scale_p != 1:
            for e in p:
                p[e] *= scale_p
            if rem:
                for e in rem:
                    rem[e] *= scale_p
        for e2, c2 in basis[i].items():
            if e2 == lts[i][0]:
                continue
            exp = tuple(a + b for a, b in zip(e2, q))
            cur = p.get(exp)
            if cur is None:
                p[exp] = -scale_g * c2
                heapq.heappush(heap, (nk(exp), exp))
            else:
                val = cur - scale_g * c2
                if val:
                    p[exp] = val
                else:
                    del p[exp]
        del p[lexp]
        steps += 1
        if steps % 16 == 0 and budget is not None:
            budget.check_bits(p)
        if steps % 64 == 0 and p:
            g = 0
            for c in p.values():
                g = gcd(g, abs(c))
                if g == 1:
                    break
            if g != 1:
                for c in rem.values():
                    g = gcd(g, abs(c))
                    if g == 1:
                        break
            if g > 1:
                for e in p:
                    p[e] //= g
                for e in rem:
                    rem[e] //= g
    return _int_content(rem)


def _field_reduce(terms: dict, basis: list, lts: list, nk, field,
                  budget=None) -> dict:
    """Full reduction with exact field division (non-rational fields)."""
    p = dict(terms)
    rem: dict = {}
    heap = [(nk(e), e) for e in p]
    heapq.heapify(heap)
    while heap:
        _, lexp = heapq.heappop(heap)
        cp = p.get(lexp)
        if cp is None:
            continue
        if budget is not None:
            budget.charge()
        hit = None
        for i, (eg, cg) in enumerate(lts):
            q = _quotient(lexp, eg)
            if q is not None:
                hit = (i, q, cg)
                break
        if hit is None:
            cur = rem.get(lexp)
            val = cp if cur is None else cur + cp
            if val:
                rem[lexp] = val
            elif cur is not None:
                del rem[lexp]
            del p[lexp]
            continue
        i, q, cg = hit
        factor = cp * field.inv(cg)
        for e2, c2 in basis[i].items():
            if e2 == lts[i][0]:
                continue
            exp = tuple(a + b for a, b in zip(e2, q))
            cur = p.get(exp)
            if cur is None:
                p[exp] = -factor * c2
                heapq.heappush(heap, (nk(exp), exp))
            else:
                val = cur - factor * c2
                if val:
                    p[exp] = val
                else:
                    del p[exp]
        del p[lexp]
    return rem


def _to_int_terms(f: Polynomial) -> dict:
    den = 1
    for c in f.terms.values():
        c = Fraction(c)
        den = den * c.denominator // gcd(den, c.denominator)
    terms = {}
    for e, c in f.terms.items():
        c = Fraction(c)
        terms[e] = c.numerator * (den // c.denominator)
    return _int_content(terms)


def buchberger(gens: Iterable[Polynomial],
               order: MonomialOrder = GREVLEX,
               max_steps: Optional[int] = None) -> tuple:
    """Reduced Groebner basis (canonical: monic, auto-reduced, sorted by
    ascending leading monomial).  `max_steps` bounds the number of
    reduction steps; exceeding it raises WorkBudgetError."""
    budget = _Budget(max_steps) if max_steps is not None else None
    gens = [g for g in gens if g]
    if not gens:
        return ()
    ring = gens[0].ring
    for g in gens:
        if g.ring != ring:
            raise RingMismatchError("generators from different rings")
        if g.laurent:
            raise ValueError("Groebner input must be cleared of negative exponents")

    int_mode = isinstance(ring.field, PAdicField)
    field = ring.field
    nk = _NKey(order).nkey
    key = order.key

    G: list = []          # raw term dicts
    lts: list = []        # (exponent, coefficient) with the order's leader
    pairs: dict = {}      # (i, j) -> selection key

    def leading(terms):
        e = max(terms, key=key)
        return e, terms[e]

    def normalize(terms):
        if int_mode:
            terms = _int_content(terms)
            if terms[max(terms, key=key)] < 0:
                terms = {e: -c for e, c in terms.items()}
            return terms
        lead = terms[max(terms, key=key)]
        inv = field.inv(lead)
        return {e: c * inv for e, c in terms.items()}

    def update(terms):
        """Gebauer-Moeller pair update for a new basis element."""
        j = len(G)
        lmf = leading(terms)[0]
        # drop old pairs strictly dominated by the newcomer
        for (a, b) in list(pairs):
            lab = _lcm(lts[a][0], lts[b][0])
            if _divides(lmf, lab) and lab != _lcm(lts[a][0], lmf) \
                    and lab != _lcm(lts[b][0], lmf):
                del pairs[(a, b)]
        # group candidate pairs by their lcm and keep minimal ones
        lcm_groups: dict = {}
        for i in range(j):
            lcm_groups.setdefault(_lcm(lts[i][0], lmf), []).append(i)
        minimal = []
        for L in sorted(lcm_groups, key=key):
            if not any(_divides(M, L) for M in minimal):
                minimal.append(L)
        for L in minimal:
            group = lcm_groups[L]
            coprime = any(
                L == tuple(a + b for a, b in zip(lts[i][0], lmf))
                for i in group)
            if not coprime:
                i = min(group)
                pairs[(i, j)] = (sum(L), key(L), i, j)
        G.append(terms)
        lts.append(leading(terms))

    for g in gens:
        terms = _to_int_terms(g) if int_mode else dict(g.terms)
        update(normalize(terms))

    while pairs:
        (i, j) = min(pairs, key=lambda p: pairs[p])
        del pairs[(i, j)]
        ei, ci = lts[i]
        ej, cj = lts[j]
        L = _lcm(ei, ej)
        qi = tuple(a - b for a, b in zip(L, ei))
        qj = tuple(a - b for a, b in zip(L, ej))
        if int_mode:
            g0 = gcd(ci, cj)
            fi, fj = cj // g0, ci // g0
            s: dict = {}
            for e, c in G[i].items():
                s[tuple(a + b for a, b in zip(e, qi))] = fi * c
            for e, c in G[j].items():
                exp = tuple(a + b for a, b in zip(e, qj))
                cur = s.get(exp)
                val = -fj * c if cur is None else cur - fj * c
                if val:
                    s[exp] = val
                elif cur is not None:
                    del s[exp]
            if s:
                r = _pseudo_reduce(s, G, lts, nk, budget)
            else:
                r = {}
        else:
            inv_i = field.inv(ci)
            inv_j = field.inv(cj)
            s = {}
            for e, c in G[i].items():
                s[tuple(a + b for a, b in zip(e, qi))] = c * inv_i
            for e, c in G[j].items():
                exp = tuple(a + b for a, b in zip(e, qj))
                cur = s.get(exp)
                val = -c * inv_j if cur is None else cur - c * inv_j
                if val:
                    s[exp] = val
                elif cur is not None:
                    del s[exp]
            r = _field_reduce(s, G, lts, nk, field, budget) if s else {}
        if r:
            update(normalize(r))

    # minimal basis: ascending leading monomials, drop dominated ones
    idx = sorted(range(len(G)), key=lambda i: key(lts[i][0]))
    kept: list = []
    for i in idx:
        if not any(_divides(lts[k][0], lts[i][0]) for k in kept):
            kept.append(i)

    def to_poly(terms) -> Polynomial:
        if int_mode:
            return Polynomial(ring, {e: Fraction(c) for e, c in terms.items()})
        return Polynomial(ring, dict(terms))

    minimal = [to_poly(G[i]) for i in kept]
    reduced = []
    for i, g in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1:]
        r = normal_form(g, others, order) if others else g
        reduced.append(_monic(r, order))
    reduced.sort(key=lambda g: key(g.leading(order)[0]))
    return tuple(reduced)


class Ideal:
    """A generator list with cached reduced Groebner bases per order."""

    def __init__(self, ring: PolyRing, gens: Iterable[Polynomial]):
        gens = tuple(g for g in gens if g)
        for g in gens:
            if g.ring != ring:
                raise RingMismatchError("generator from a different ring")
        self.ring = ring
        self.gens = gens
        self._gb: dict = {}

    @classmethod
    def of(cls, gens: Sequence[Polynomial]) -> "Ideal":
        if not gens:
            raise ValueError("cannot infer the ring of an empty ideal")
        return cls(gens[0].ring, gens)

    def groebner_basis(self, order: MonomialOrder = GREVLEX,
                       max_steps: Optional[int] = None) -> tuple:
        sig = order.signature()
        if sig not in self._gb:
            self._gb[sig] = buchberger(self.gens, order, max_steps)
        return self._gb[sig]

    def __repr__(self):
        return f"Ideal({len(self.gens)} gens over {self.ring.variables})"


def eliminate(ideal: Ideal, front,
              max_steps: Optional[int] = None) -> Ideal:
    """Intersection with the subring omitting the `front` variables."""
    ring = ideal.ring
    front_idx = sorted(ring.index(v) if isinstance(v, str) else int(v)
                       for v in front)
    keep = [i for i in range(ring.arity) if i not in front_idx]
    sub = ring.restrict(keep)
    if not front_idx:
        return Ideal(ring, ideal.gens)
    if not ideal.gens:
        return Ideal(sub, ())
    gb = ideal.groebner_basis(Block(front_idx), max_steps)
    out = []
    for g in gb:
        if all(all(e[i] == 0 for i in front_idx) for e in g.terms):
            terms = {tuple(e[i] for i in keep): c for e, c in g.terms.items()}
            out.append(Polynomial(sub, terms))
    return Ideal(sub, out)


def saturate(ideal: Ideal, h: Polynomial,
             max_steps: Optional[int] = None) -> Ideal:
    """I : h^infinity via the Rabinowitsch trick (1 - w*h, eliminate w)."""
    if not h:
        raise ValueError("cannot saturate at zero")
    ring = ideal.ring
    if h.ring != ring:
        raise RingMismatchError("saturating polynomial from a different ring")
    (wname,) = fresh_names(ring.variables, 1, base="w")
    ext = ring.extend([wname])
    n = ring.arity

    def lift(p):
        return Polynomial(ext, {e + (0,): c for e, c in p.terms.items()})

    w = ext.variable(n)
    gens = [lift(g) for g in ideal.gens]
    gens.append(ext.one() - w * lift(h))
    sat = eliminate(Ideal(ext, gens), [n], max_steps)
    # the restricted ring equals the original ring
    return Ideal(ring, [Polynomial(ring, g.terms) for g in sat.gens])


def ideal_membership(f: Polynomial, ideal: Ideal,
                     order: MonomialOrder = GREVLEX) -> bool:
    if f.ring != ideal.ring:
        raise RingMismatchError("membership test across rings")
    if not ideal.gens:
        return not f
    if not f:
        return True
    gb = ideal.groebner_basis(order)
    return not normal_form(f, gb, order)


def ideal_dimension(ideal: Ideal) -> int:
    """Krull dimension by exhaustive independent-variable-set search."""
    n = ideal.ring.arity
    if not ideal.gens:
        return n
    gb = ideal.groebner_basis(GREVLEX)
    lt_supports = []
    for g in gb:
        exp = g.leading(GREVLEX)[0]
        supp = frozenset(i for i, e in enumerate(exp) if e)
        if not supp:
            raise ValueError("the unit ideal has no dimension")
        lt_supports.append(supp)
    for size in range(n, -1, -1):
        for S in combinations(range(n), size):
            s = set(S)
            if not any(supp <= s for supp in lt_supports):
                return size
    raise AssertionError("unreachable")
