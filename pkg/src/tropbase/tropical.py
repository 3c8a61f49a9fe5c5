"""Min-plus forms, hypersurface membership, polyhedral cells, the circuits
oracle for linear ideals, and the one-variable extension solver.

All geometry is exact: membership is a rational min-attained-twice test,
cells are rational constraint systems checked by Fourier-Motzkin, and no
epsilon appears anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, List, Optional, Sequence

from . import linalg
from .groebner import _content_normalize
from .linalg import EQ, LE, LT
from .poly import LEX, Polynomial


class UnsupportedDimensionError(ValueError):
    pass


@dataclass(frozen=True)
class TropicalForm:
    """The min-plus data of a polynomial: (weight, exponent) pairs."""

    pairs: tuple
    arity: int

    def values(self, w: Sequence[Fraction]) -> list:
        return [weight + sum(e * x for e, x in zip(exp, w))
                for weight, exp in self.pairs]


def tropicalize(f: Polynomial) -> TropicalForm:
    """One (ord(coefficient), exponent) pair per term."""
    if not f:
        raise ValueError("cannot tropicalize the zero polynomial")
    ordf = f.ring.field.ord
    pairs = tuple(sorted((ordf(c), exp) for exp, c in f.terms.items()))
    return TropicalForm(pairs, f.ring.arity)


def in_hypersurface(form: TropicalForm, w: Sequence) -> bool:
    """Whether the minimum of the form is attained at least twice at w."""
    w = [Fraction(x) for x in w]
    if len(w) != form.arity:
        raise ValueError("point arity mismatch")
    values = form.values(w)
    m = min(values)
    return sum(1 for v in values if v == m) >= 2


def member_of_intersection(forms: Iterable[TropicalForm], w: Sequence) -> bool:
    return all(in_hypersurface(form, w) for form in forms)


# ---------------------------------------------------------------------------
# cells and complexes

@dataclass(frozen=True)
class Cell:
    """A closed polyhedron where a chosen set of terms ties for the minimum.

    `defining_pairs` lists (form_index, alpha, beta); for cells of a single
    hypersurface there is exactly one entry.  Constraints are linalg-style
    triples over the ambient coordinates.
    """

    defining_pairs: tuple
    equalities: tuple
    inequalities: tuple
    dim: int
    arity: int

    def constraints(self) -> list:
        return list(self.equalities) + list(self.inequalities)

    def contains_point(self, w: Sequence) -> bool:
        w = [Fraction(x) for x in w]
        for coeffs, rhs, rel in self.constraints():
            v = sum(c * x for c, x in zip(coeffs, w))
            if rel == EQ and v != rhs:
                return False
            if rel == LE and v > rhs:
                return False
            if rel == LT and v >= rhs:
                return False
        return True


@dataclass(frozen=True)
class TropicalComplex:
    cells: tuple
    arity: int

    def by_dim(self, d: int) -> list:
        return [c for c in self.cells if c.dim == d]


def _pair_constraints(form: TropicalForm, i: int, j: int, form_index: int):
    """Equality tying terms i and j at the minimum, inequalities against
    every other term of the form."""
    wi, ei = form.pairs[i]
    wj, ej = form.pairs[j]
    eq = (tuple(Fraction(a - b) for a, b in zip(ei, ej)), wj - wi, EQ)
    ineqs = []
    for k, (wk, ek) in enumerate(form.pairs):
        if k in (i, j):
            continue
        ineqs.append((tuple(Fraction(a - b) for a, b in zip(ei, ek)),
                      wk - wi, LE))
    pair = (form_index, ei, ej)
    return pair, eq, ineqs


def _make_cell(pairs, eqs, ineqs, arity) -> Optional[Cell]:
    cons = list(eqs) + list(ineqs)
    if not linalg.feasible(cons, arity):
        return None
    rows = linalg.implied_equalities(cons, arity)
    dim = arity - linalg.rank([list(c) for c, _ in rows])
    return Cell(tuple(pairs), tuple(eqs), tuple(ineqs), dim, arity)


def hypersurface_cells(form: TropicalForm) -> TropicalComplex:
    """One candidate cell per unordered pair of terms; empty ones dropped."""
    if form.arity > 3:
        raise UnsupportedDimensionError(
            f"cell enumeration supports arity <= 3, got {form.arity}")
    if len(form.pairs) < 2:
        return TropicalComplex((), form.arity)
    cells = []
    for i, j in combinations(range(len(form.pairs)), 2):
        pair, eq, ineqs = _pair_constraints(form, i, j, 0)
        cell = _make_cell([pair], [eq], ineqs, form.arity)
        if cell is not None:
            cells.append(cell)
    return TropicalComplex(tuple(cells), form.arity)


def _cell_signature(cell: Cell):
    eqs = sorted(linalg._scale_canonical(c) for c in cell.equalities)
    ineqs = sorted(linalg._scale_canonical(c) for c in cell.inequalities)
    return (cell.dim, tuple(eqs), tuple(ineqs))


def _same_cell(a: Cell, b: Cell) -> bool:
    if a.dim != b.dim:
        return False
    return (linalg.contains(a.constraints(), b.constraints(), a.arity)
            and linalg.contains(b.constraints(), a.constraints(), a.arity))


def _dedupe(cells: List[Cell]) -> List[Cell]:
    out: List[Cell] = []
    for cell in sorted(cells, key=_cell_signature):
        if not any(_same_cell(cell, c) for c in out if c.dim == cell.dim):
            out.append(cell)
    return out


def intersection_complex(forms: Sequence[TropicalForm],
                         with_faces: bool = True) -> TropicalComplex:
    """Cells of the intersection of the given tropical hypersurfaces.

    Built incrementally from per-form term-pair cells with exact
    feasibility pruning; optionally closed under taking faces.
    """
    if not forms:
        raise ValueError("need at least one form")
    arity = forms[0].arity
    if arity > 3:
        raise UnsupportedDimensionError(
            f"cell enumeration supports arity <= 3, got {arity}")
    partials = [([], [], [])]  # (pairs, eqs, ineqs)
    for fi, form in enumerate(forms):
        if form.arity != arity:
            raise ValueError("forms of mixed arity")
        nxt = []
        for i, j in combinations(range(len(form.pairs)), 2):
            pair, eq, ineqs = _pair_constraints(form, i, j, fi)
            for pairs0, eqs0, ineqs0 in partials:
                eqs = eqs0 + [eq]
                ins = ineqs0 + ineqs
                if linalg.feasible(eqs + ins, arity):
                    nxt.append((pairs0 + [pair], eqs, ins))
        partials = nxt
    cells = []
    for pairs, eqs, ineqs in partials:
        cell = _make_cell(pairs, eqs, ineqs, arity)
        if cell is not None:
            cells.append(cell)
    cells = _dedupe(cells)
    # drop any cell strictly inside another of larger dimension
    maximal = []
    for cell in cells:
        covered = any(other is not cell and other.dim > cell.dim
                      and linalg.contains(other.constraints(),
                                          cell.constraints(), arity)
                      for other in cells)
        if not covered:
            maximal.append(cell)
    if not with_faces:
        return TropicalComplex(tuple(_dedupe(maximal)), arity)
    closed = list(maximal)
    queue = list(maximal)
    while queue:
        cell = queue.pop()
        for k in range(len(cell.inequalities)):
            coeffs, rhs, _ = cell.inequalities[k]
            eqs = list(cell.equalities) + [(coeffs, rhs, EQ)]
            ineqs = [c for m, c in enumerate(cell.inequalities) if m != k]
            face = _make_cell(cell.defining_pairs, eqs, ineqs, arity)
            if face is None or face.dim >= cell.dim:
                continue
            if not any(_same_cell(face, c) for c in closed):
                closed.append(face)
                queue.append(face)
    return TropicalComplex(tuple(_dedupe(closed)), arity)


def cell_intersection_points(complex_: TropicalComplex) -> list:
    """Zero-dimensional intersections of cell pairs, as rational points."""
    points = set()
    for a, b in combinations(complex_.cells, 2):
        cons = a.constraints() + b.constraints()
        if not linalg.feasible(cons, complex_.arity):
            continue
        point, dirs = linalg.affine_hull(cons, complex_.arity)
        if point is not None and not dirs:
            points.add(tuple(point))
    return sorted(points)


# ---------------------------------------------------------------------------
# one-dimensional skeleton extraction (figure data)

def one_skeleton(complex_: TropicalComplex) -> list:
    """Points, segments, rays and lines for every cell of dimension <= 1."""
    out = []
    for cell in complex_.cells:
        if cell.dim > 1:
            continue
        cons = cell.constraints()
        point, dirs = linalg.affine_hull(cons, complex_.arity)
        if cell.dim == 0:
            out.append({"type": "point", "at": list(point)})
            continue
        d = dirs[0]
        lo, hi = None, None
        for coeffs, rhs, rel in cons:
            if rel == EQ:
                continue
            slope = sum(c * x for c, x in zip(coeffs, d))
            offset = rhs - sum(c * x for c, x in zip(coeffs, point))
            if slope == 0:
                continue
            bound = offset / slope
            if slope > 0:
                hi = bound if hi is None else min(hi, bound)
            else:
                lo = bound if lo is None else max(lo, bound)

        def at(t):
            return [p + t * x for p, x in zip(point, d)]

        if lo is None and hi is None:
            out.append({"type": "line", "base": list(point), "dir": list(d)})
        elif lo is None:
            out.append({"type": "ray", "base": at(hi),
                        "dir": [-x for x in d]})
        elif hi is None:
            out.append({"type": "ray", "base": at(lo), "dir": list(d)})
        else:
            out.append({"type": "segment", "ends": [at(lo), at(hi)]})
    return out


# ---------------------------------------------------------------------------
# circuits of a linear ideal (independent oracle)

def circuits_linear(gens: Sequence[Polynomial]) -> list:
    """Support-minimal linear combinations of affine-linear generators,
    computed over all slot subsets after homogenizing with a constant slot.
    The input generators are kept in the output; for a prime linear ideal
    the result is a tropical basis."""
    if not gens:
        raise ValueError("no generators")
    ring = gens[0].ring
    n = ring.arity
    rows = []
    for g in gens:
        if not g:
            raise ValueError("zero generator")
        if g.total_degree() > 1:
            raise ValueError(f"nonlinear generator: {g!r}")
        row = [Fraction(0)] * (n + 1)
        for exp, c in g.terms.items():
            if sum(exp) == 0:
                row[n] = Fraction(c)
            else:
                row[exp.index(1)] = Fraction(c)
        rows.append(row)
    red, _ = linalg.rref(rows)
    r = len(red)
    slots = n + 1
    circuit_vectors = []
    circuit_supports: List[frozenset] = []
    for size in range(1, min(r + 1, slots) + 1):
        for S in combinations(range(slots), size):
            s = frozenset(S)
            if any(supp <= s for supp in circuit_supports):
                continue
            # combinations of the reduced rows vanishing outside S
            outside = [i for i in range(slots) if i not in s]
            mat = [[red[k][i] for k in range(r)] for i in outside]
            kernel = linalg.nullspace(mat, r)
            if len(kernel) != 1:
                continue
            coeffs = kernel[0]
            vec = [sum(coeffs[k] * red[k][i] for k in range(r))
                   for i in range(slots)]
            supp = frozenset(i for i, x in enumerate(vec) if x)
            if supp != s:
                continue
            circuit_vectors.append(linalg.primitive(vec))
            circuit_supports.append(supp)

    def to_poly(vec) -> Polynomial:
        terms = {}
        for i in range(n):
            if vec[i]:
                exp = tuple(1 if j == i else 0 for j in range(n))
                terms[exp] = ring.field.from_int(vec[i])
        if vec[n]:
            terms[(0,) * n] = ring.field.from_int(vec[n])
        return Polynomial(ring, terms)

    out = [_content_normalize(g, LEX) for g in gens]
    seen = {p.canonical_terms() for p in out}
    for vec in sorted(circuit_vectors):
        p = to_poly(vec)  # primitive integer vectors are already canonical
        key = p.canonical_terms()
        if key not in seen:
            seen.add(key)
            out.append(p)
    return out


# ---------------------------------------------------------------------------
# interval sets and the extension solver

@dataclass(frozen=True)
class Interval:
    """A closed interval; None means unbounded on that side."""

    lo: Optional[Fraction]
    hi: Optional[Fraction]

    def is_point(self) -> bool:
        return self.lo is not None and self.lo == self.hi

    def contains(self, x) -> bool:
        x = Fraction(x)
        if self.lo is not None and x < self.lo:
            return False
        if self.hi is not None and x > self.hi:
            return False
        return True


class IntervalSet:
    """A finite union of closed intervals, kept sorted and disjoint."""

    def __init__(self, intervals: Iterable[Interval] = ()):
        items = [iv for iv in intervals
                 if iv.lo is None or iv.hi is None or iv.lo <= iv.hi]
        items.sort(key=lambda iv: (iv.lo is not None,
                                   iv.lo if iv.lo is not None else 0))
        merged: List[Interval] = []
        for iv in items:
            if merged:
                last = merged[-1]
                touching = (last.hi is None or iv.lo is None
                            or iv.lo <= last.hi)
                if touching:
                    if last.hi is None or iv.hi is None:
                        hi = None
                    else:
                        hi = max(last.hi, iv.hi)
                    merged[-1] = Interval(last.lo, hi)
                    continue
            merged.append(iv)
        self.intervals = tuple(merged)

    def is_empty(self) -> bool:
        return not self.intervals

    def contains(self, x) -> bool:
        return any(iv.contains(x) for iv in self.intervals)

    def intersect(self, other: "IntervalSet") -> "IntervalSet":
        out = []
        for a in self.intervals:
            for b in other.intervals:
                lo = a.lo if b.lo is None else (b.lo if a.lo is None
                                                else max(a.lo, b.lo))
                hi = a.hi if b.hi is None else (b.hi if a.hi is None
                                                else min(a.hi, b.hi))
                if lo is None or hi is None or lo <= hi:
                    out.append(Interval(lo, hi))
        return IntervalSet(out)

    def sample_points(self) -> list:
        """A few exact representatives per interval (ends and a midpoint)."""
        pts = []
        for iv in self.intervals:
            if iv.lo is not None and iv.hi is not None:
                pts.extend([iv.lo, (iv.lo + iv.hi) / 2, iv.hi])
            elif iv.lo is not None:
                pts.extend([iv.lo, iv.lo + 1])
            elif iv.hi is not None:
                pts.extend([iv.hi - 1, iv.hi])
            else:
                pts.append(Fraction(0))
        return sorted(set(pts))

    @staticmethod
    def whole_line() -> "IntervalSet":
        return IntervalSet([Interval(None, None)])

    def __eq__(self, other):
        return isinstance(other, IntervalSet) \
            and other.intervals == self.intervals

    def __repr__(self):
        def fmt(iv):
            lo = "-inf" if iv.lo is None else str(iv.lo)
            hi = "+inf" if iv.hi is None else str(iv.hi)
            return f"[{lo}, {hi}]"
        return "IntervalSet(" + ", ".join(fmt(iv) for iv in self.intervals) + ")"


def _form_feasible_set(form: TropicalForm, w: Sequence[Fraction]) -> IntervalSet:
    """Values of the first coordinate making the minimum tie at (t, w)."""
    lines = []
    for weight, exp in form.pairs:
        slope = exp[0]
        intercept = weight + sum(e * x for e, x in zip(exp[1:], w))
        lines.append((Fraction(slope), Fraction(intercept)))
    distinct: dict = {}
    for line in lines:
        distinct[line] = distinct.get(line, 0) + 1
    uniq = sorted(distinct)
    pieces: List[Interval] = []
    # duplicated lines are feasible wherever they lie on the lower envelope
    for line, count in sorted(distinct.items()):
        if count < 2:
            continue
        m, b = line
        lo, hi = None, None
        ok = True
        for m2, b2 in uniq:
            if (m2, b2) == line:
                continue
            if m2 == m:
                if b > b2:
                    ok = False
                    break
                continue
            bound = (b2 - b) / (m - m2)
            if m - m2 > 0:
                hi = bound if hi is None else min(hi, bound)
            else:
                lo = bound if lo is None else max(lo, bound)
        if ok:
            pieces.append(Interval(lo, hi))
    # envelope crossings of distinct lines
    for (m1, b1), (m2, b2) in combinations(uniq, 2):
        if m1 == m2:
            continue
        t = (b2 - b1) / (m1 - m2)
        v = m1 * t + b1
        if all(m * t + b >= v for m, b in uniq):
            pieces.append(Interval(t, t))
    return IntervalSet(pieces)


def extend_point(forms: Sequence[TropicalForm], w: Sequence) -> IntervalSet:
    """Feasible first coordinates extending w into every hypersurface.

    Each form restricted to the line {(t, w) : t real} is a family of
    affine functions of t; the tie-twice condition is solved exactly and
    the per-form sets are intersected."""
    if not forms:
        raise ValueError("need at least one form")
    w = [Fraction(x) for x in w]
    out = IntervalSet.whole_line()
    for form in forms:
        if len(w) != form.arity - 1:
            raise ValueError("point arity must be form arity minus one")
        out = out.intersect(_form_feasible_set(form, w))
        if out.is_empty():
            break
    return out
