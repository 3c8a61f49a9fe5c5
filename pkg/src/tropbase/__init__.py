"""Exact-arithmetic tropical bases of prime ideals via regular projections,
with min-plus geometry utilities and a batch CLI."""

from .arith import (INFINITY, PAdicField, RatFunc, RationalFunctionField,
                    ValuedField)
from .groebner import (Ideal, WorkBudgetError, buchberger, eliminate,
                       ideal_dimension, ideal_membership, normal_form,
                       s_polynomial, saturate)
from .newton import (DegreeError, NewtonPolytope, QnPoint, QnReport,
                     ShapeError, enumerate_Qn, newton_polytope, qn_containment,
                     qn_image, sylvester_resultant)
from .poly import (GREVLEX, LEX, Block, Grevlex, Lex, MonomialOrder,
                   ParseError, PolyRing, Polynomial, RingMismatchError,
                   clear_laurent, extend_exponents, parse_polynomial,
                   parse_scalar, strip_monomial_content, support, to_str)
from .projection import (BasisReport, EliminationError, GeometricReport,
                         Lcg64, ProjectionOutcome, ProjectionSpec,
                         RegularityReport, RetryBudgetError,
                         check_algebraic_regularity,
                         check_geometric_regularity, compute_tropical_basis,
                         build_J, kernel_homogeneity, project_hypersurface,
                         random_kernel)
from .tropical import (Cell, Interval, IntervalSet, TropicalComplex,
                       TropicalForm, UnsupportedDimensionError,
                       cell_intersection_points, circuits_linear,
                       extend_point, hypersurface_cells, in_hypersurface,
                       intersection_complex, member_of_intersection,
                       one_skeleton, tropicalize)

__version__ = "0.1.0"
