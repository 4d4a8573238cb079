"""Finite-dimensional side: the van Dam-Hayden family and dense decompositions, in one namespace."""
import numpy as np

from .linalg import (  # noqa: F401
    DenseState, InvarianceReport, Polar, Schmidt, apply_local, coisometry_check, is_unitary,
    polar_decompose, random_unitary, schmidt_coefficients, schmidt_decompose,
    schmidt_invariance_demo, singular_values, svd,
)
from .vdh import (  # noqa: F401
    CSV_HEADER, SweepRow, VdhProtocol, catalyst_amplitudes, catalyst_entropy, doubling,
    functional_deviations, harmonic, is_nondecreasing, vdh_as_protocol, vdh_fidelity, vdh_sweep,
)

DenseOperator = np.ndarray
