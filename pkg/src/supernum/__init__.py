"""Supernumber arithmetic, graded linear algebra, super Lie algebras,
BCH flows and matrix super Lie groups over a finite Grassmann budget."""

from .backend import backend_name
from .errors import (DependentBasis, HeadroomViolation, IncompatibleOperands,
                     InvalidStructureConstants, NotASubalgebra, NotInvertible,
                     NumericalFailure, OutOfDomain, ParseError, SeriesDivergence,
                     SupernumError)
from .expbch import (FlowConfig, bch_flow, bch_rhs, bch_series_oracle, bernoulli,
                     eta, exp_matrix, log_matrix, matrix_series, zeta)
from .grassmann import (Parity, Supernumber, Tolerance, body_soul, even_part,
                        invert, mul, norm, odd_part, parity_project)
from .linalg import (SuperMatrix, SuperVector, even_coords, from_even_coords,
                     mat_mul, mat_norm, right_action, vec_norm)
from .superdiff import (SampledMap, check_g_multilinear, frechet_directional,
                        g1_coefficients)
from .supergroup import (Ad, Chart, GroupElement, chart_apply, chart_inverse,
                         group_inv, group_mul, group_op_chart_residual,
                         livf_bracket_check, transition)
from .superlie import (SuperLieAlgebra, ad_matrix, bracket_bound_constant,
                       bracket_coords, check_graded_jacobi, grassmann_shell,
                       is_conventional, structure_constants, super_bracket)

__version__ = "0.1.0"
