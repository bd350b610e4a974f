"""
Entanglement plateaus on random networks
========================================

Run small ER and BA ensembles and relate the long-time entropy to
connectivity and clustering. Use the ``ensemble`` CLI for larger runs.
"""

from qwalknet.experiments import ExperimentConfig, pearson, run_ensemble

for model, params in (("er", [0.2, 0.4, 0.6, 0.8]), ("ba", [2, 4, 6, 8])):
    cfg = ExperimentConfig(model=model, params=params, n_nodes=100, realizations=5, steps=60, base_seed=11)
    res = run_ensemble(cfg)
    for k, mean in res.plateau_means().items():
        print(f"{model} {params[k]}: plateau {mean:.3f}")
    r = pearson([x.plateau_mean for x in res.records], [x.avg_clustering for x in res.records])
    print(f"{model}: Pearson(plateau, clustering) = {r:.3f}")
