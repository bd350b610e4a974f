"""
Coin labels change one entropy but not the other
================================================

On a 3-regular graph each node may label its three outgoing arcs in 3! ways.
The coin-walker entropy depends on that choice, the source-target entropy
only sees arcs.
"""

import math

import numpy as np

from qwalknet import source_target_entropy, symmetric_digraph
from qwalknet.entanglement import coin_assignment_sweep, coin_walker_entropy, direction_assignment
from qwalknet.graphs import generate_cycle, prism_graph
from qwalknet.walk import haar_random_state, state_from_amplitudes

sp = symmetric_digraph(prism_graph())
(res,) = coin_assignment_sweep(sp, [haar_random_state(sp, 3)])
print(res.count, "assignments")
print(f"S_cw from {res.minimum:.3f} to {res.maximum:.3f}, S_st fixed at {res.source_target:.3f}")
print("histogram:", np.histogram(res.entropies, bins=6)[0])

# two arcs into node 1 of a cycle
cyc = symmetric_digraph(generate_cycle(8))
amps = np.zeros(cyc.n_arcs)
amps[[cyc.arc_of(0, 1), cyc.arc_of(2, 1)]] = 1
s = state_from_amplitudes(cyc, amps, normalize=True)
print("by direction:", coin_walker_entropy(s, direction_assignment(cyc)), "log 2 =", math.log(2))
print("node 2 flipped:", coin_walker_entropy(s, direction_assignment(cyc, flipped=[2])))
print("S_st either way:", source_target_entropy(s))
