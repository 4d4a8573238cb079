"""Exact sparse simulation of embezzlement of entanglement.

The shift-and-swap protocol on the dyadic resource space embezzles a Bell
pair exactly; everything here is built to check that claim symbolically
and to compare it with finite-dimensional catalysts.
"""
from .basis import Adic, CompositeLabel, Dyadic, ResourceLabel, bit, dyadic, set_bit
from .exact_scalar import (
    EPS_F, ExactScalar, FloatScalar, QSqrt2, Rational, exact_add, exact_inv, exact_mul, exact_neg,
    exact_to_float,
)
from .games import (
    Strategy, build_phi, finite_strategy, perfect_strategy, play, reduction_output,
    reduction_to_embezzlement, vdh_strategy,
)
from .kernel import Kernel
from .linalg import DenseState, coisometry_check, polar_decompose, schmidt_decompose, schmidt_invariance_demo
from .protocol import (
    Protocol, commutation_check, explicit_protocol, extract_block, general_protocol, identity_protocol,
    isometry_witness, naive_swap_protocol, run_protocol, state_functional, target_state, verify,
)
from .sparse_state import SparseState, add, equal, inner, scale
from .vdh import VdhProtocol, vdh_as_protocol, vdh_fidelity, vdh_sweep

__version__ = "0.1.0"
