"""
Why the swap has to be conjugated
=================================

Alice's swap only commutes with Bob's operations once it is conjugated by
the change of basis C.  Swapping the plain register with the leading
resource bit gives a protocol whose two halves no longer commute, and the
sampled check finds a label showing it.
"""

from embezzle import commutation_check, explicit_protocol, naive_swap_protocol

good = commutation_check(explicit_protocol(), seed=42, samples=200)
print(f"explicit protocol : passed={good.passed} after {good.checked} checks")

bad = commutation_check(naive_swap_protocol(), seed=42, samples=200)
print(f"naive swap        : passed={bad.passed}")
print("witness:", bad.witness)
