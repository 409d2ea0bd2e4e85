"""Separable states in commutative simplices of bipartite quantum states.

Pencil thresholds for positive partial transpose, explicit product-state
decompositions from diagonal-phase twirls, the hull of those separable
points inside a commutative simplex, and its volume.
"""

__version__ = "0.1.0"

from .constructions import (
    SeparableDecomposition,
    TwirlSchedule,
    a_block,
    complement_decomposition,
    product_seed_projector,
    rho_p_closed_form,
    sidon_exponents,
    threshold_decomposition,
    twirl_average,
    verify_decomposition,
)
from .linalg import hermitian_spectrum, jacobi_eigh, kron, partial_transpose
from .pencil import SchmidtDecomposition, ppt_boundary_scan, ppt_threshold, schmidt_decompose
from .states import (
    DensityMatrix,
    PureState,
    is_ppt,
    maximally_mixed,
    pencil_state,
    validate_density,
)
