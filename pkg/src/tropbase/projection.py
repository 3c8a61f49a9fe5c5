"""Regular projections: kernel choice, the substituted ideal, elimination
to a single hypersurface polynomial, and the short-basis driver."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from . import linalg
from .groebner import (Ideal, WorkBudgetError, eliminate, ideal_dimension,
                       ideal_membership, saturate)
from .poly import (Polynomial, PolyRing, clear_laurent, extend_exponents,
                   fresh_names, strip_monomial_content)
from .tropical import TropicalComplex

# per-attempt reduction budget on the randomized search path; a kernel whose
# elimination exceeds it is treated like any other elimination anomaly
RANDOM_PATH_WORK_BUDGET = 200_000


class EliminationError(RuntimeError):
    """The eliminated ideal is not principal (or vanished entirely)."""


class RetryBudgetError(RuntimeError):
    """No regular kernel was found within the retry cap."""


class Lcg64:
    """64-bit linear congruential generator (Knuth's MMIX multiplier).

    state <- (6364136223846793005 * state + 1442695040888963407) mod 2^64,
    with the top 53 bits used per draw.  Fixed seeds give fixed streams on
    every platform.
    """

    MULT = 6364136223846793005
    INC = 1442695040888963407
    MASK = (1 << 64) - 1

    def __init__(self, seed: int):
        self.state = (int(seed) ^ 0x9E3779B97F4A7C15) & self.MASK
        self._step()

    def _step(self) -> int:
        self.state = (self.MULT * self.state + self.INC) & self.MASK
        return self.state >> 11

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in [lo, hi], by rejection on the top 53 bits."""
        span = hi - lo + 1
        limit = ((1 << 53) // span) * span
        v = self._step()
        while v >= limit:
            v = self._step()
        return lo + v % span


@dataclass(frozen=True)
class ProjectionSpec:
    """A rational projection given by an integer basis of its kernel."""

    kernel: tuple
    arity: int
    matrix: Optional[tuple] = None

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in row) for row in self.kernel)
        object.__setattr__(self, "kernel", rows)
        for row in rows:
            if len(row) != self.arity:
                raise ValueError("kernel row arity mismatch")
        if rows and linalg.rank(rows) != len(rows):
            raise ValueError("kernel rows are not independent")
        if self.matrix is not None:
            mat = tuple(tuple(Fraction(x) for x in row) for row in self.matrix)
            object.__setattr__(self, "matrix", mat)
            if linalg.rank(mat) != len(mat):
                raise ValueError("projection matrix is rank-deficient")
            if len(mat) != self.arity - len(rows):
                raise ValueError("projection matrix has the wrong row count")
            for a in mat:
                for u in rows:
                    if sum(x * y for x, y in zip(a, u)):
                        raise ValueError("matrix rows must annihilate the kernel")

    @property
    def kernel_rank(self) -> int:
        return len(self.kernel)

    def image_matrix(self) -> tuple:
        """Rows spanning the orthogonal complement of the kernel."""
        if self.matrix is not None:
            return self.matrix
        if not self.kernel:
            rows = [tuple(Fraction(1 if j == i else 0)
                          for j in range(self.arity))
                    for i in range(self.arity)]
            return tuple(rows)
        basis = linalg.nullspace(self.kernel, self.arity)
        return tuple(tuple(x) for x in basis)


def random_kernel(n: int, m: int, seed: int, bound: int = 10) -> ProjectionSpec:
    """Deterministic random integer kernel basis of rank n-(m+1)."""
    if not 0 <= m <= n - 1:
        raise ValueError("need 0 <= m <= n-1")
    if bound < 1:
        raise ValueError("bound must be positive")
    rng = Lcg64(seed)
    return _draw_kernel(rng, n, n - (m + 1), bound)


def _draw_kernel(rng: Lcg64, n: int, l: int, bound: int) -> ProjectionSpec:
    if l == 0:
        return ProjectionSpec((), n)
    while True:
        rows = tuple(tuple(rng.randint(-bound, bound) for _ in range(n))
                     for _ in range(l))
        if linalg.rank(rows) == l:
            return ProjectionSpec(rows, n)


@dataclass(frozen=True)
class RegularityWitness:
    generator_index: int
    kernel_row: int
    alpha: tuple
    beta: tuple


@dataclass(frozen=True)
class RegularityReport:
    ok: bool
    witness: Optional[RegularityWitness] = None


def check_algebraic_regularity(gens: Sequence[Polynomial],
                               spec: ProjectionSpec) -> RegularityReport:
    """Per kernel row, the exponent dot products of each generator must be
    pairwise distinct; a collision is returned as the witness."""
    for gi, g in enumerate(gens):
        if not g:
            raise ValueError("zero generator")
        support = sorted(g.support())
        for ri, row in enumerate(spec.kernel):
            seen = {}
            for exp in support:
                d = sum(u * e for u, e in zip(row, exp))
                if d in seen:
                    return RegularityReport(
                        False, RegularityWitness(gi, ri, seen[d], exp))
                seen[d] = exp
    return RegularityReport(True)


def build_J(gens: Sequence[Polynomial], spec: ProjectionSpec) -> Ideal:
    """The substituted ideal over the ring enlarged by one variable per
    kernel row, Laurent-cleared."""
    if not gens:
        raise ValueError("no generators")
    ring = gens[0].ring
    if not spec.kernel:
        return Ideal(ring, gens)
    names = fresh_names(ring.variables, len(spec.kernel))
    out = [clear_laurent(extend_exponents(g, spec.kernel, names))
           for g in gens]
    return Ideal(out[0].ring, out)


def project_hypersurface(gens: Sequence[Polynomial],
                         spec: ProjectionSpec,
                         max_steps: Optional[int] = None) -> Polynomial:
    """Substitute, saturate at the product of all variables, eliminate the
    new variables, and return the principal generator in normalized form.

    Computed as one block elimination of the new variables together with
    the saturation variable, followed by saturation at the coordinate
    product inside the small ring; this yields the same ideal as
    saturating everything upfront, at a fraction of the cost.
    """
    ring = gens[0].ring
    n = ring.arity
    l = spec.kernel_rank
    if l:
        J = build_J(gens, spec)
        small = None
        if check_algebraic_regularity(gens, spec).ok:
            # With distinct dot products the substituted generators reduce
            # to single monomials on the locus where the new variables
            # vanish, so all unsaturated junk sits inside coordinate
            # hyperplanes and plain elimination already returns the target
            # generator times a monomial.
            direct = eliminate(J, list(range(n, n + l)), max_steps)
            if len(direct.gens) == 1:
                small = Ideal(ring, [Polynomial(ring, g.terms)
                                     for g in direct.gens])
        if small is None:
            mid = J.ring
            (wname,) = fresh_names(mid.variables, 1, base="w")
            ext = mid.extend([wname])
            lifted = [Polynomial(ext, {e + (0,): c
                                       for e, c in g.terms.items()})
                      for g in J.gens]
            lam_w = ext.monomial((0,) * n + (1,) * l + (1,))
            lifted.append(ext.one() - lam_w)
            front = list(range(n, n + l + 1))
            elim = eliminate(Ideal(ext, lifted), front, max_steps)
            small = Ideal(ring, [Polynomial(ring, g.terms)
                                 for g in elim.gens])
    else:
        small = Ideal(ring, list(gens))
    sat = saturate(small, ring.monomial((1,) * n), max_steps)
    basis = sat.gens
    if not basis:
        raise EliminationError("elimination ideal is zero; "
                               "is the input of the expected dimension?")
    if len(basis) > 1:
        raise EliminationError(
            f"elimination ideal is not principal ({len(basis)} generators); "
            "the projection is not regular enough")
    return strip_monomial_content(basis[0])


@dataclass(frozen=True)
class ProjectionOutcome:
    spec: ProjectionSpec
    generator: Polynomial
    membership_ok: bool
    homogeneity_ok: bool
    homogeneity_values: tuple
    regularity: RegularityReport
    regularity_enforced: bool
    attempts: int


@dataclass(frozen=True)
class BasisReport:
    ring: PolyRing
    generators: tuple
    dimension: int
    codimension: int
    outcomes: tuple
    seed: Optional[int]
    bound: Optional[int]
    warnings: tuple = field(default=())

    @property
    def basis(self) -> tuple:
        return self.generators + tuple(o.generator for o in self.outcomes)

    @property
    def cardinality(self) -> int:
        return len(self.basis)


def kernel_homogeneity(g: Polynomial, spec: ProjectionSpec):
    """(ok, common dot product per kernel row); membership along the kernel
    direction is translation invariant exactly when this holds."""
    values = []
    for row in spec.kernel:
        dots = {sum(u * e for u, e in zip(row, exp)) for exp in g.support()}
        if len(dots) != 1:
            return False, tuple(values)
        values.append(dots.pop())
    return True, tuple(values)


def _outcome(gens, ideal, spec, regularity, enforced, attempts,
             max_steps=None):
    g = project_hypersurface(gens, spec, max_steps)
    member = ideal_membership(g, ideal)
    homog_ok, homog_vals = kernel_homogeneity(g, spec)
    return ProjectionOutcome(spec, g, member, homog_ok, homog_vals,
                             regularity, enforced, attempts)


def compute_tropical_basis(gens: Sequence[Polynomial],
                           kernels: Optional[Sequence] = None,
                           seed: int = 0,
                           bound: int = 10,
                           retry_cap: int = 32,
                           dimension: Optional[int] = None) -> BasisReport:
    """Augment the generators with one eliminant per projection so that the
    tropical hypersurfaces of the result cut out the tropical variety.

    The input must generate a prime ideal (not verified).  Kernels are
    either user-supplied (the per-row regularity check is advisory then)
    or drawn deterministically from `seed`, redrawing on a failed check
    or a non-principal elimination up to `retry_cap` attempts.
    """
    gens = [g for g in gens if g]
    if not gens:
        raise ValueError("no generators")
    ring = gens[0].ring
    n = ring.arity
    ideal = Ideal(ring, gens)
    m = ideal_dimension(ideal) if dimension is None else dimension
    if not 0 <= m <= n - 1:
        raise ValueError(f"dimension {m} out of range for {n} variables")
    codim = n - m
    count = codim + 1
    l = n - (m + 1)
    warnings = []
    outcomes = []

    if kernels is not None:
        specs = [k if isinstance(k, ProjectionSpec)
                 else ProjectionSpec(tuple(tuple(r) for r in k), n)
                 for k in kernels]
        if len(specs) != count:
            raise ValueError(
                f"need exactly codim+1 = {count} kernels, got {len(specs)}")
        for spec in specs:
            if spec.kernel_rank != l:
                raise ValueError(
                    f"kernel must have {l} rows, got {spec.kernel_rank}")
            reg = check_algebraic_regularity(gens, spec)
            if not reg.ok:
                warnings.append(
                    f"kernel {spec.kernel} fails the per-row regularity "
                    f"check (advisory for user-supplied kernels)")
            outcomes.append(_outcome(gens, ideal, spec, reg, False, 1))
        return BasisReport(ring, tuple(gens), m, codim, tuple(outcomes),
                           None, None, tuple(warnings))

    rng = Lcg64(seed)
    used = set()
    for _ in range(count):
        attempts = 0
        cur_bound = bound
        while True:
            attempts += 1
            if attempts > retry_cap:
                raise RetryBudgetError(
                    f"no regular kernel found in {retry_cap} attempts")
            if attempts % 8 == 0:
                cur_bound *= 2  # widen the search box periodically
            spec = _draw_kernel(rng, n, l, cur_bound)
            if spec.kernel in used:
                continue
            reg = check_algebraic_regularity(gens, spec)
            if not reg.ok:
                continue
            try:
                outcome = _outcome(gens, ideal, spec, reg, True, attempts,
                                   RANDOM_PATH_WORK_BUDGET)
            except (EliminationError, WorkBudgetError):
                continue
            used.add(spec.kernel)
            outcomes.append(outcome)
            break
    return BasisReport(ring, tuple(gens), m, codim, tuple(outcomes),
                       seed, bound, tuple(warnings))


# ---------------------------------------------------------------------------
# geometric regularity of a projection w.r.t. a polyhedral complex

@dataclass(frozen=True)
class GeometricWitness:
    condition: int
    cell_index: int
    other_index: Optional[int] = None


@dataclass(frozen=True)
class GeometricReport:
    ok: bool
    witness: Optional[GeometricWitness] = None


def _projected_constraints(cell, matrix, arity):
    """H-representation of the cell's image under w -> matrix . w."""
    m = len(matrix)
    total = arity + m
    cons = []
    for coeffs, rhs, rel in cell.constraints():
        cons.append((tuple(coeffs) + (Fraction(0),) * m, rhs, rel))
    for j, row in enumerate(matrix):
        coeffs = tuple(-x for x in row) + tuple(
            Fraction(1 if k == j else 0) for k in range(m))
        cons.append((coeffs, Fraction(0), linalg.EQ))
    return linalg.project_constraints(cons, total, list(range(arity, total)))


def check_geometric_regularity(complex_: TropicalComplex,
                               spec: ProjectionSpec) -> GeometricReport:
    """Exact check that (1) no cell loses dimension under the projection
    and (2) image containment implies cell containment."""
    if complex_.arity != spec.arity:
        raise ValueError("complex and projection arity differ")
    matrix = spec.image_matrix()
    arity = complex_.arity
    hulls = []
    for idx, cell in enumerate(complex_.cells):
        _, dirs = linalg.affine_hull(cell.constraints(), arity)
        hulls.append(dirs)
        image_rows = [[sum(a * d for a, d in zip(row, direction))
                       for row in matrix] for direction in dirs]
        if linalg.rank(image_rows) != cell.dim:
            return GeometricReport(False, GeometricWitness(1, idx))
    images = [_projected_constraints(cell, matrix, arity)
              for cell in complex_.cells]
    mdim = len(matrix)
    for i, a in enumerate(complex_.cells):
        for j, b in enumerate(complex_.cells):
            if i == j:
                continue
            if linalg.contains(images[j], images[i], mdim) \
                    and not linalg.contains(b.constraints(),
                                            a.constraints(), arity):
                return GeometricReport(False, GeometricWitness(2, i, j))
    return GeometricReport(True)
