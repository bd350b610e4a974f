"""
Graph matchings versus double-cover matchings
=============================================

Every matching of G gives two disjoint matchings of B(G), so
|M*(B(G))| >= 2 |M*(G)|. Random graphs sit close to that line.
"""

from qwalknet.matching import default_scatter_params, fit_slope, matching_scatter, scatter_averages

for model in ("er", "ba"):
    recs = []
    for n in (25, 100):
        recs += matching_scatter(model, n, default_scatter_params(model, n), realizations=10, seed=1)
    av = scatter_averages(recs)
    print(model, "bound holds:", all(r.cover_matching >= 2 * r.graph_matching for r in recs))
    print(model, "slope of averages:", round(fit_slope([a[2] for a in av], [a[3] for a in av]), 3))
