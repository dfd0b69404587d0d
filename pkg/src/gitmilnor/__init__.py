"""Gradient points, Milnor algebras, associated forms and GIT stability over Q."""
from .errors import (
    CapExceeded,
    DegenerateGradient,
    DimensionMismatch,
    GitMilnorError,
    MultipleMissing,
    NotHomogeneous,
    NotRegular,
    ParseError,
    PreconditionFailed,
)
from .kernel import BACKEND
from .linalg import GradedSubspace, PivotSet, hm_weight, pivot_set, reduce_under_order, span_of_multiples
from .milnor import (
    associated_form,
    gradient_point,
    hilbert_function,
    hilbert_point,
    is_regular_sequence,
    socle_monomial_report,
)
from .oneps import FramedOnePS, OnePS
from .polycore import DualPoly, Poly, UpperTriangularChange, format_poly, parse_poly, polar_pair
from .stability import (
    SearchConfig,
    align_initials,
    binary_oracle,
    disjoint_decomposition,
    find_destabilizer,
    form_state,
    grassmannian_state,
    torus_verdict,
    transfer_form_to_grad,
    transfer_grad_to_form,
)

__version__ = "0.1.0"
