"""
A Grover walk on a small graph
==============================

Build the arc space of the triangular prism, start on one arc and watch the
source-target entropy grow towards the graph's capacity.
"""

import numpy as np

from qwalknet import entanglement_capacity, evolve, grover_coin, source_target_entropy, symmetric_digraph
from qwalknet.graphs import prism_graph
from qwalknet.walk import basis_state

g = prism_graph()
space = symmetric_digraph(g)
print(space.arc_table().splitlines()[:4])

# one arc n->m is a product of a source and a target: zero entropy
start = basis_state(space, space.arc_of(0, 1))
traj = evolve(start, grover_coin(space), 30, observer=lambda t, s: source_target_entropy(s))

cap = entanglement_capacity(g).capacity
print("capacity log|M*| =", round(cap, 4))
print("S_st(t):", np.round(traj.observations[:10], 3))
print("never above capacity:", max(traj.observations) <= cap + 1e-12)
