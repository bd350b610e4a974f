"""
Matching states on a cycle
==========================

On a cycle every node can send the walker to its clockwise neighbour, so the
double cover has a perfect matching and the capacity is log N. The two
equal-weight states below both reach it.
"""

import math

from qwalknet import matching_state, source_target_entropy, symmetric_digraph
from qwalknet.arcs import bipartite_double_cover
from qwalknet.graphs import generate_cycle
from qwalknet.matching import count_maximum_matchings

for n in (4, 5, 8):
    sp = symmetric_digraph(generate_cycle(n))
    clockwise = matching_state(sp, [sp.arc_of(i, (i + 1) % n) for i in range(n)])
    line = f"C_{n}: clockwise {source_target_entropy(clockwise):.4f}"
    if n % 2 == 0:
        pairs = [sp.arc_of(i, i + 1) for i in range(0, n, 2)] + [sp.arc_of(i + 1, i) for i in range(0, n, 2)]
        line += f", local back-and-forth {source_target_entropy(matching_state(sp, pairs)):.4f}"
    print(line, f"(log N = {math.log(n):.4f})")

# odd cycles only have the two rotations; C_4 adds the two local pairings
for n in (4, 5):
    print(f"maximum matchings of B(C_{n}):", count_maximum_matchings(bipartite_double_cover(generate_cycle(n))))
