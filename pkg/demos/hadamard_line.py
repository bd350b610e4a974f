"""
Hadamard walk on a line
=======================

The coin has two levels, so the coin-walker entropy can never pass log 2.
The source-target cut has no such limit.
"""

import math

from qwalknet.hadamard import hadamard_line_walk

h = hadamard_line_walk(203, 100)
for t in (0, 1, 10, 50, 100):
    print(f"t={t:3d}  S_cw={h.coin_walker[t]:.4f}  S_st={h.source_target[t]:.4f}")
print("log 2 =", round(math.log(2), 4))
