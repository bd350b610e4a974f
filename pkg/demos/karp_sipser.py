"""
Expected matching size of sparse random graphs
==============================================

The Karp-Sipser fixed point predicts the maximum matching of ER graphs with
mean degree kbar. Compare it with Edmonds' algorithm on a few samples.
"""

import numpy as np

from qwalknet.graphs import generate_er
from qwalknet.matching import karp_sipser_expected, max_matching_general, solve_fixed_point

n = 2000
for kbar in (0.5, 1.0, 2.0, 4.0):
    sizes = [len(max_matching_general(generate_er(n, kbar / (n - 1), seed=s))) for s in range(5)]
    print(f"kbar={kbar}: y={solve_fixed_point(kbar):.6f}  predicted {karp_sipser_expected(n, kbar):7.1f}"
          f"  sampled {np.mean(sizes):7.1f}")
