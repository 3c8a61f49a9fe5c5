"""Exact rational linear algebra and small polyhedral feasibility engines.

Everything here works over `fractions.Fraction`; no floating point and
no tolerances anywhere.  The Fourier-Motzkin machinery is meant for very
low dimensions (<= 3 geometric variables) and modest constraint counts;
the simplex routine handles convex-combination feasibility with many
nonnegative unknowns.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Optional, Sequence


Vector = tuple


def _frac_rows(rows) -> list:
    return [[Fraction(x) for x in row] for row in rows]


def rref(rows: Sequence[Sequence]) -> tuple:
    """Reduced row echelon form.  Returns (rows, pivot column indices)."""
    mat = _frac_rows(rows)
    if not mat:
        return [], []
    ncols = len(mat[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(mat)) if mat[i][c]), None)
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        lead = mat[r][c]
        mat[r] = [x / lead for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return mat[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[0])


def nullspace(rows: Sequence[Sequence], ncols: int) -> list:
    """Basis of {v : rows . v = 0}, one vector per free column of the RREF."""
    red, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, p in enumerate(pivots):
            v[p] = -red[r][f]
        basis.append(tuple(v))
    return basis


def solve_affine(rows: Sequence[Sequence], rhs: Sequence) -> Optional[tuple]:
    """A particular solution of rows . x = rhs, or None if inconsistent."""
    if not rows:
        return ()
    ncols = len(rows[0])
    aug = [list(row) + [b] for row, b in zip(rows, rhs)]
    red, pivots = rref(aug)
    for row in red:
        if all(x == 0 for x in row[:ncols]) and row[ncols]:
            return None
    x = [Fraction(0)] * ncols
    for r, p in enumerate(pivots):
        if p == ncols:
            return None
        x[p] = red[r][ncols]
    return tuple(x)


def primitive(vec: Iterable) -> tuple:
    """Scale a rational vector to coprime integers, first nonzero positive."""
    vec = [Fraction(x) for x in vec]
    den = 1
    for x in vec:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in vec]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    if g:
        ints = [x // g for x in ints]
    lead = next((x for x in ints if x), 0)
    if lead < 0:
        ints = [-x for x in ints]
    return tuple(ints)


# ---------------------------------------------------------------------------
# linear constraints and Fourier-Motzkin elimination

EQ = "eq"
LE = "le"
LT = "lt"

# A constraint is (coeffs, rhs, rel) meaning  coeffs . x  <rel>  rhs.


def constraint(coeffs, rhs, rel) -> tuple:
    return (tuple(Fraction(c) for c in coeffs), Fraction(rhs), rel)


def _scale_canonical(con):
    """Integer-coprime scaling; preserves the relation's direction."""
    coeffs, rhs, rel = con
    den = rhs.denominator
    for c in coeffs:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    r = int(rhs * den)
    g = abs(r)
    for x in ints:
        g = gcd(g, abs(x))
    if g > 1:
        ints = [x // g for x in ints]
        r //= g
    return (tuple(Fraction(x) for x in ints), Fraction(r), rel)


def _prune(cons):
    """Drop duplicate/dominated inequality constraints (same normal)."""
    best = {}
    equalities = []
    for con in cons:
        con = _scale_canonical(con)
        coeffs, rhs, rel = con
        if rel == EQ:
            equalities.append(con)
            continue
        cur = best.get(coeffs)
        if cur is None:
            best[coeffs] = (rhs, rel)
        else:
            crhs, crel = cur
            # smaller rhs is stronger; on ties a strict relation is stronger
            if rhs < crhs or (rhs == crhs and rel == LT):
                best[coeffs] = (rhs, rel)
    out = list(dict.fromkeys(equalities))
    out.extend((coeffs, rhs, rel) for coeffs, (rhs, rel) in best.items())
    return out


def feasible(cons: Sequence[tuple], nvars: int) -> bool:
    """Exact feasibility of a system of eq/le/lt constraints over R^nvars."""
    cons = [constraint(*c) for c in cons]
    live = list(range(nvars))
    while live:
        cons = _prune(cons)
        # substitution step: use an equality when one mentions a live var
        pick = None
        for con in cons:
            if con[2] != EQ:
                continue
            for v in live:
                if con[0][v]:
                    pick = (con, v)
                    break
            if pick:
                break
        if pick:
            (coeffs, rhs, _), v = pick
            cons.remove(pick[0])
            pivot = coeffs[v]
            new = []
            for c2, r2, rel2 in cons:
                if c2[v]:
                    f = c2[v] / pivot
                    c2 = tuple(a - f * b for a, b in zip(c2, coeffs))
                    r2 = r2 - f * rhs
                new.append((c2, r2, rel2))
            cons = new
            live.remove(v)
            continue
        # Fourier-Motzkin on the first live variable appearing anywhere
        v = next((v for v in live
                  for con in cons if con[0][v]), None)
        if v is None:
            break
        lowers, uppers, rest = [], [], []
        for c2, r2, rel2 in cons:
            if c2[v] > 0:
                uppers.append((c2, r2, rel2))
            elif c2[v] < 0:
                lowers.append((c2, r2, rel2))
            else:
                rest.append((c2, r2, rel2))
        new = rest
        for cl, rl, pl in lowers:
            for cu, ru, pu in uppers:
                a, b = -cl[v], cu[v]
                comb = tuple(b * x + a * y for x, y in zip(cl, cu))
                rhs = b * rl + a * ru
                rel = LT if LT in (pl, pu) else LE
                new.append((comb, rhs, rel))
        cons = new
        live.remove(v)
    for coeffs, rhs, rel in cons:
        if any(coeffs):
            continue
        if rel == EQ and rhs != 0:
            return False
        if rel == LE and rhs < 0:
            return False
        if rel == LT and rhs <= 0:
            return False
    return True


def negation(con) -> list:
    """Constraints describing the complement of `con` (a list of systems)."""
    coeffs, rhs, rel = con
    neg = tuple(-c for c in coeffs)
    if rel == EQ:
        return [[(coeffs, rhs, LT)], [(neg, -rhs, LT)]]
    # not(a.x <= b)  <=>  -a.x < -b ; not(a.x < b) <=> -a.x <= -b
    return [[(neg, -rhs, LT if rel == LE else LE)]]


def contains(outer: Sequence[tuple], inner: Sequence[tuple], nvars: int) -> bool:
    """Whether every point satisfying `inner` satisfies `outer`."""
    for con in outer:
        for neg_system in negation(con):
            if feasible(list(inner) + neg_system, nvars):
                return False
    return True


def implied_equalities(cons: Sequence[tuple], nvars: int) -> list:
    """Equality rows (coeffs, rhs) valid on the whole feasible set."""
    rows = [(c, r) for c, r, rel in cons if rel == EQ]
    for c, r, rel in cons:
        if rel == EQ:
            continue
        if not feasible(list(cons) + [(c, r, LT)], nvars):
            rows.append((c, r))
    return rows


def affine_hull(cons: Sequence[tuple], nvars: int):
    """(point, direction basis) of the affine hull of a nonempty system."""
    rows = implied_equalities(cons, nvars)
    mat = [list(c) for c, _ in rows]
    rhs = [r for _, r in rows]
    point = solve_affine(mat, rhs) if mat else tuple([Fraction(0)] * nvars)
    dirs = nullspace(mat, nvars) if mat else [
        tuple(Fraction(1 if j == i else 0) for j in range(nvars))
        for i in range(nvars)]
    return point, dirs


def project_constraints(cons: Sequence[tuple], nvars: int,
                        keep: Sequence[int]) -> list:
    """Eliminate all variables outside `keep`; result is over the kept
    variables, in their given order."""
    cons = [constraint(*c) for c in cons]
    drop = [v for v in range(nvars) if v not in keep]
    for v in drop:
        cons = _prune(cons)
        eq = next((con for con in cons if con[2] == EQ and con[0][v]), None)
        if eq is not None:
            coeffs, rhs, _ = eq
            cons.remove(eq)
            pivot = coeffs[v]
            new = []
            for c2, r2, rel2 in cons:
                if c2[v]:
                    f = c2[v] / pivot
                    c2 = tuple(a - f * b for a, b in zip(c2, coeffs))
                    r2 = r2 - f * rhs
                new.append((c2, r2, rel2))
            cons = new
            continue
        lowers, uppers, rest = [], [], []
        for c2, r2, rel2 in cons:
            if c2[v] > 0:
                uppers.append((c2, r2, rel2))
            elif c2[v] < 0:
                lowers.append((c2, r2, rel2))
            else:
                rest.append((c2, r2, rel2))
        new = rest
        for cl, rl, pl in lowers:
            for cu, ru, pu in uppers:
                a, b = -cl[v], cu[v]
                comb = tuple(b * x + a * y for x, y in zip(cl, cu))
                rel = LT if LT in (pl, pu) else LE
                new.append((comb, b * rl + a * ru, rel))
        cons = new
    out = []
    for c2, r2, rel2 in _prune(cons):
        kept = tuple(c2[v] for v in keep)
        if any(kept):
            out.append((kept, r2, rel2))
        elif rel2 == EQ:
            if r2 != 0:
                out.append((kept, r2, rel2))  # infeasibility marker
        elif r2 < 0 or (rel2 == LT and r2 == 0):
            out.append((kept, r2, rel2))  # infeasibility marker
    return out


# ---------------------------------------------------------------------------
# exact LP feasibility (phase-1 simplex, Bland's rule)

def lp_feasible(A: Sequence[Sequence], b: Sequence) -> bool:
    """Whether {x >= 0 : A x = b} is nonempty.  Exact simplex phase 1."""
    m = len(A)
    if m == 0:
        return True
    n = len(A[0])
    rows = []
    rhs = []
    for i in range(m):
        r = [Fraction(x) for x in A[i]]
        bi = Fraction(b[i])
        if bi < 0:
            r = [-x for x in r]
            bi = -bi
        rows.append(r)
        rhs.append(bi)
    # tableau with artificial variables n..n+m-1
    tab = [rows[i] + [Fraction(1 if j == i else 0) for j in range(m)] + [rhs[i]]
           for i in range(m)]
    basis = [n + i for i in range(m)]
    total = n + m

    def objective_row():
        # cost = sum of artificial variables, expressed via the basis
        z = [Fraction(0)] * (total + 1)
        for i, bv in enumerate(basis):
            if bv >= n:
                for j in range(total + 1):
                    z[j] += tab[i][j]
        return z

    z = objective_row()
    while True:
        # artificials never re-enter; Bland's rule on the real columns
        enter = next((j for j in range(n)
                      if j not in basis and z[j] > 0), None)
        if enter is None:
            break
        ratios = [(tab[i][total] / tab[i][enter], basis[i], i)
                  for i in range(m) if tab[i][enter] > 0]
        if not ratios:
            break  # unbounded phase-1 cannot happen; guard anyway
        _, _, pivot_row = min(ratios)
        piv = tab[pivot_row][enter]
        tab[pivot_row] = [x / piv for x in tab[pivot_row]]
        for i in range(m):
            if i != pivot_row and tab[i][enter]:
                f = tab[i][enter]
                tab[i] = [a - f * c for a, c in zip(tab[i], tab[pivot_row])]
        basis[pivot_row] = enter
        z = objective_row()
    return z[total] == 0


def point_in_hull(point: Sequence, points: Sequence[Sequence]) -> bool:
    """Exact test whether `point` is a convex combination of `points`."""
    pts = list(points)
    if not pts:
        return False
    dim = len(point)
    A = [[Fraction(q[d]) for q in pts] for d in range(dim)]
    A.append([Fraction(1)] * len(pts))
    b = [Fraction(point[d]) for d in range(dim)] + [Fraction(1)]
    return lp_feasible(A, b)
