"""
Finite catalysts only get close
===============================

The van Dam-Hayden catalyst with n levels embezzles a Bell pair with
fidelity below one.  The fidelity creeps up as n doubles, slowly.
"""

from embezzle.vdh import CSV_HEADER, catalyst_entropy, doubling, vdh_sweep

rows = vdh_sweep(doubling(1, 4096))
print(CSV_HEADER)
for r in rows:
    print(r.csv())

print()
print(f"{'n':>5}  {'fidelity':>10}  {'catalyst entropy (bits)':>24}")
for r in rows:
    print(f"{r.n:>5}  {r.fidelity:10.6f}  {catalyst_entropy(r.n):24.4f}")
