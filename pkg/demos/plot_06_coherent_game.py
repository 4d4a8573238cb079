"""
The coherent embezzlement game
==============================

Given phi_c, Alice and Bob must output bits with a xor b = c.  The exact
embezzling strategy wins every time; strategies built on a finite catalyst
fall short, approaching one as the catalyst grows.
"""

from embezzle import explicit_protocol, perfect_strategy, play, reduction_output, run_protocol, vdh_strategy
from embezzle.games import embezzled_factor

st = perfect_strategy()
for c in (0, 1):
    res = play(st, c)
    print(f"perfect, c={c}: win = {res.win_probability}, distribution = {res.distribution}")

# running the strategy through the reduction circuit gives back embezzlement
print("reduction reproduces the protocol:",
      embezzled_factor(reduction_output(st)) == run_protocol(explicit_protocol()))

for n in (1, 4, 16, 64, 256, 1024):
    w = complex(play(vdh_strategy(n), 0).win_probability).real
    print(f"vdH n={n:>4}: win = {w:.6f}")
