"""Numerical geometry of Hermitian matrix spaces.

Subpackages cover the invariant bracket algebra (``hermitian``), the
linear Poisson/Jordan tensor pair and the momentum map (``tensors``),
charts and tangency for the rank strata of positive matrices
(``strata``), the Kahler calculus of unitary conjugation orbits
(``kahler``), and bipartite separability with a convex-roof entanglement
bound (``composite``, ``roof``).  The ``qsg`` command line exposes all of
it on JSON matrices.
"""

from .errors import (
    ChartDomainError,
    DimensionMismatchError,
    EigensolverError,
    FormatError,
    HermiticityError,
    InputError,
    OptimizerError,
    QsgError,
    SingularOperatorError,
    StateError,
)
from .hermitian import (
    Signature,
    SpectralData,
    default_rank_tol,
    hermitian,
    hermitian_basis,
    hs_inner,
    hs_norm,
    jordan_bracket,
    lie_bracket,
    rank_signature,
    spectral,
)
from .tensors import (
    QuadraticFunction,
    bracket_of_quadratics,
    complex_tensor_eval,
    gram_matrix,
    lambda_eval,
    momentum_map,
    numerical_rank,
    quadratic_eval,
    r_eval,
    two_level_basis,
    two_level_point,
)
from .strata import (
    ChartCoordinates,
    ChartPhi,
    CurveTangencyReport,
    Face,
    IndexSet,
    TangencyResult,
    chart_forward,
    chart_inverse,
    curve_tangency_report,
    face_at,
    gl_action,
    gl_orbit_factor,
    reconstruct_from_rows,
    stratum_dim,
    tangent_test,
)
from .kahler import (
    OrbitPoint,
    TangentPair,
    complex_structure,
    distribution_basis,
    distribution_dim,
    jordan_generator,
    jordan_tangent,
    jtilde,
    lie_generator,
    lie_tangent,
    orbit_metric,
    orbit_symplectic,
    partial_sigma,
    product_structure,
    rank_one_structure,
    rtilde,
)
from .composite import (
    ProductSpace,
    PureDecomposition,
    caratheodory_reduce,
    partial_trace,
    partial_transpose,
    ppt_test,
    sample_separable,
    seed_function,
    segre,
)
from .roof import BACKEND as ROOF_BACKEND
from .roof import OptimizerTrace, RoofConfig, RoofEstimate, convex_roof

__version__ = "0.1.0"
