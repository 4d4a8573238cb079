"""
A block that is an isometry but not unitary
===========================================

The orbit U00*^n psi is orthonormal, so U00* is an isometry with infinite
dimensional range complement.  No finite truncation can reproduce this,
which is what makes exact embezzlement need an infinite resource.
"""

from embezzle import explicit_protocol, isometry_witness

rep = isometry_witness(explicit_protocol(), N=8)
print("Gram matrix of {U00*^n psi}, n = 0..8:")
for row in rep.gram:
    print("  " + " ".join(str(int(v == 1)) for v in row))
print("Gram is identity:", rep.gram_is_identity)
for name, ok in rep.relations.items():
    print(f"  {name}: {ok}")
print("||U00 psi||^2 =", rep.u00_psi_norm2)
