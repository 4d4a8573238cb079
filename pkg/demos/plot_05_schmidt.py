"""
Schmidt coefficients do not move under local unitaries
======================================================

This is the reason a finite catalyst can never embezzle perfectly: local
operations leave the Schmidt coefficients of the shared state unchanged.
"""

import numpy as np

from embezzle import DenseState, schmidt_decompose, schmidt_invariance_demo
from embezzle.linalg import random_unitary

bell = DenseState((2, 2), np.array([1, 0, 0, 1]) / np.sqrt(2))
print("Bell:", schmidt_decompose(bell, [0]).coefficients)

rng = np.random.default_rng(0)
x = rng.standard_normal(12) + 1j * rng.standard_normal(12)
s = DenseState((3, 4), x / np.linalg.norm(x))
rep = schmidt_invariance_demo(s, [0], random_unitary(3, rng), random_unitary(4, rng))
print("before:", rep.before)
print("after :", rep.after)
print("max difference:", rep.max_difference)
