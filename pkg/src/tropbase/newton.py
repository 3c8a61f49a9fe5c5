"""Sylvester resultants, Newton polytopes, and the lattice-point bound on
the resultant's exponents for pairs of linear forms with staggered powers
of the eliminated variable."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Optional, Sequence

from . import linalg
from .poly import Polynomial


class DegreeError(ValueError):
    pass


class ShapeError(ValueError):
    pass


def _row_content(entries) -> Fraction:
    """Positive rational content of a row of polynomials over Q."""
    den = 1
    num = 0
    for p in entries:
        for c in p.terms.values():
            c = Fraction(c)
            den = den * c.denominator // gcd(den, c.denominator)
    for p in entries:
        for c in p.terms.values():
            c = Fraction(c)
            num = gcd(num, abs(c.numerator * (den // c.denominator)))
    if num == 0:
        return Fraction(1)
    return Fraction(num, den)


def sylvester_resultant(f: Polynomial, g: Polynomial, var) -> Polynomial:
    """Determinant of the Sylvester matrix of f and g w.r.t. `var`,
    expanded exactly by minors (entries are polynomials in the remaining
    variables)."""
    ring = f.ring
    if g.ring != ring:
        raise ValueError("resultant arguments from different rings")
    v = ring.index(var) if isinstance(var, str) else int(var)
    d = f.degree_in(v)
    e = g.degree_in(v)
    if d <= 0 or e <= 0:
        raise DegreeError("both arguments must have positive degree "
                          "in the eliminated variable")
    fc = f.coefficients_in(v)
    gc = g.coefficients_in(v)
    zero = ring.zero()
    size = d + e
    rows = []
    for i in range(e):
        row = [zero] * size
        for k in range(d + 1):
            row[i + k] = fc.get(d - k, zero)
        rows.append(row)
    for j in range(d):
        row = [zero] * size
        for k in range(e + 1):
            row[j + k] = gc.get(e - k, zero)
        rows.append(row)
    # strip the rational content per row; multiply it back at the end
    rational = isinstance(ring.field.zero(), Fraction)
    scale = Fraction(1)
    if rational:
        for i, row in enumerate(rows):
            c = _row_content(row)
            if c != 1:
                inv = 1 / c
                rows[i] = [p.scale(inv) for p in row]
                scale *= c

    memo = {}
    full_mask = (1 << size) - 1

    def minor(r: int, mask: int) -> Polynomial:
        if r == size:
            return ring.one()
        key = mask
        cached = memo.get(key)
        if cached is not None:
            return cached
        total = ring.zero()
        sign = 1
        for c in range(size):
            bit = 1 << c
            if not mask & bit:
                continue
            entry = rows[r][c]
            if entry:
                sub = minor(r + 1, mask & ~bit)
                if sub:
                    term = entry * sub
                    total = total + term if sign > 0 else total - term
            sign = -sign
        memo[key] = total
        return total

    det = minor(0, full_mask)
    if rational and scale != 1:
        det = det.scale(scale)
    return det


@dataclass(frozen=True)
class NewtonPolytope:
    points: frozenset
    vertices: frozenset


def newton_polytope(f: Polynomial) -> NewtonPolytope:
    """Lattice points are the support; vertices by exact extreme-point
    tests (a point is a vertex iff it is not a convex combination of the
    others)."""
    if not f:
        raise ValueError("zero polynomial has no Newton polytope")
    points = sorted(f.support())
    vertices = []
    for i, p in enumerate(points):
        others = points[:i] + points[i + 1:]
        if not linalg.point_in_hull(p, others):
            vertices.append(p)
    return NewtonPolytope(frozenset(points), frozenset(vertices))


@dataclass(frozen=True)
class QnPoint:
    p: tuple
    q: tuple


def enumerate_Qn(v: Sequence[int]) -> list:
    """All nonnegative integer (p, q) with coordinate sums v1, weighted sums
    v1^2, and the staircase inequalities >= i*j for 0 <= i, j <= v1."""
    v = [int(x) for x in v]
    if not v or any(x <= 0 for x in v) or any(a <= b for a, b in zip(v, v[1:])):
        raise ValueError("exponent vector must be strictly decreasing "
                         "and positive")
    n = len(v)
    vfull = v + [0]
    v1 = v[0]

    def compositions(total, parts):
        if parts == 1:
            yield (total,)
            return
        for head in range(total + 1):
            for tail in compositions(total - head, parts - 1):
                yield (head,) + tail

    def staircase(i, vec):
        return sum((i - v1 + vfull[k]) * vec[k]
                   for k in range(n) if v1 - vfull[k] <= i)

    out = []
    candidates = list(compositions(v1, n + 1))
    for p in candidates:
        wp = sum(vfull[k] * p[k] for k in range(n + 1))
        for q in candidates:
            wq = sum(vfull[k] * q[k] for k in range(n + 1))
            if wp + wq != v1 * v1:
                continue
            ok = True
            for i in range(v1 + 1):
                sp = staircase(i, p)
                for j in range(v1 + 1):
                    if sp + staircase(j, q) < i * j:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                out.append(QnPoint(p, q))
    return out


def qn_image(points: Sequence[QnPoint], n: int) -> set:
    """Image under (p, q) -> (p_1 + q_1, ..., p_n + q_n)."""
    return {tuple(pt.p[i] + pt.q[i] for i in range(n)) for pt in points}


def _staggered_shape(f: Polynomial, var: int) -> tuple:
    """Check f = a_1 x_1 var^{v_1} + ... + a_n x_n var^{v_n} + a_{n+1} and
    return the exponent vector v (one entry per ring variable)."""
    ring = f.ring
    xs = [i for i in range(ring.arity) if i != var]
    v = {}
    constant_seen = False
    for exp, _ in f.terms.items():
        xpart = [(i, exp[i]) for i in xs if exp[i]]
        if not xpart:
            if exp[var] != 0:
                raise ShapeError("constant term must not involve the "
                                 "eliminated variable")
            constant_seen = True
            continue
        if len(xpart) != 1 or xpart[0][1] != 1:
            raise ShapeError("terms must be linear in the x variables")
        i = xpart[0][0]
        if i in v:
            raise ShapeError(f"variable {ring.variables[i]} appears twice")
        v[i] = exp[var]
    if not constant_seen:
        raise ShapeError("missing constant term")
    if sorted(v) != xs:
        raise ShapeError("every x variable must appear exactly once")
    return tuple(v[i] for i in xs)


@dataclass(frozen=True)
class QnReport:
    ok: bool
    v: tuple
    resultant_support: tuple
    image: tuple
    violations: tuple


def qn_containment(f: Polynomial, g: Polynomial, var) -> QnReport:
    """Check that every lattice point of the resultant's Newton polytope is
    covered by the projected lattice-point set for the common exponent
    vector of f and g."""
    ring = f.ring
    v_idx = ring.index(var) if isinstance(var, str) else int(var)
    vf = _staggered_shape(f, v_idx)
    vg = _staggered_shape(g, v_idx)
    if vf != vg:
        raise ShapeError("the two polynomials carry different exponent "
                         "vectors")
    res = sylvester_resultant(f, g, v_idx)
    if not res:
        raise ShapeError("resultant vanishes identically; "
                         "inputs share a factor")
    xs = [i for i in range(ring.arity) if i != v_idx]
    support = sorted(tuple(exp[i] for i in xs) for exp in res.support())
    points = enumerate_Qn(vf)
    image = qn_image(points, len(xs))
    violations = tuple(pt for pt in support if pt not in image)
    return QnReport(not violations, vf, tuple(support),
                    tuple(sorted(image)), violations)
