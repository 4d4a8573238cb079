"""
Embezzling a Bell pair exactly
==============================

Alice and Bob share the infinite resource state psi and start from |0>|0>.
Each applies one local unitary.  Afterwards the registers hold a Bell pair
and the resource is back to psi, with no error at all.
"""

from embezzle import explicit_protocol, run_protocol, target_state
from embezzle.protocol import initial_state

p = explicit_protocol()
print("catalyst psi:", p.catalyst)

start = initial_state(p)
out = run_protocol(p)

# every amplitude is an element of Q(sqrt 2), so == is exact equality
print("input :", start)
print("output:", out)
print("equals 1/sqrt2 |0>psi|0> + 1/sqrt2 |1>psi|1>:", out == target_state(p))

# the float embedding gives the same state up to rounding
pf = explicit_protocol("float")
print("float mode agrees:", run_protocol(pf).equal(out.to_float()))
