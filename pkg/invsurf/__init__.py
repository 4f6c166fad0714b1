'''
INVSURF is a toolkit for invariant algebraic surfaces of polynomial vector fields

Invsurf (INVariant SURFace analysis) works in exact arithmetic over the
rationals and multiquadratic number fields Q(sqrt d1, ..., sqrt dk).  It
computes Poincare transforms and stationary points at infinity, decides
property E from the eigenvalues there, evaluates degree bounds, verifies and
searches semi-invariants (Darboux polynomials) and Jacobi multipliers, and
constructs distinguished quadratic vector fields from prescribed idempotents.
The command line entry point is invsurf.cli.

'''

__authors__ = ['invsurf developers']

__version__ = '0.1.0'


from .exact import FieldTower, FieldElem, QuadExt, QuadElem, create_tower, \
                   sqrt_in_field, rational_kernel, rank, RATIONALS
from .poly import MPoly, PolyVectorField, variables, lie_derivative, \
                  divergence, exact_divide, sylvester_resultant, char_poly
from .parse_io import ParseContext, parse_poly, print_poly, \
                      load_field_spec, load_gamma_spec, load_lines
from .transform import make_chart, homogenize, poincare_poly, poincare_field, \
                       reduce_dim, reduce_dim_alpha, reduction_infinity_free
from .infinity import verify_invariant_line, infinity_spectrum, \
                      classify_conditions, property_e_report
from .distinguished import GammaSpec, construct_distinguished, theta_vector, \
                           seventh_idempotent, sample_genericity
from .darboux import verify_semi_invariant, search_semi_invariants, \
                     verify_jacobi_multiplier, bounds_report
from .errors import InvsurfError
