"""
Other target states
===================

The same construction with radix-d labels embezzles any d x d state.
Here the state functional recovers the target coefficients.
"""

import numpy as np

from embezzle import general_protocol
from embezzle.protocol import functional_matrix

alpha = [np.sqrt(1 / 3), 0, 0, np.sqrt(2 / 3)]
m = np.array(functional_matrix(general_protocol(2, alpha)), dtype=complex)
print("d = 2 target:\n", np.reshape(alpha, (2, 2)))
print("functional:\n", m.real.round(12))

m3 = np.array(functional_matrix(general_protocol(3, np.full(9, 1 / 3))), dtype=complex)
print("d = 3 uniform:\n", m3.real.round(12))
