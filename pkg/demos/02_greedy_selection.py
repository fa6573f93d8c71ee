"""
Greedy selection against the exhaustive optimum
===============================================
"""

# %%
import math

from smibounds import (SmiConfig, SmiFunction, brute_force_best, build_similarity_matrix,
                       generate_dataset, greedy_select, preset)

sc = preset("one-target")
d = generate_dataset(sc)
sim = build_similarity_matrix(d)
print(f"|T|={d.n_targeted} |U|={d.n_untargeted} |Q|={d.n_query}")

# %%
# greedy on the full preset: chosen indices below 40 are targeted
for fn in SmiFunction:
    res = greedy_select(sim, SmiConfig(fn), budget=5)
    chi = sum(1 for i in res.subset if i < d.n_targeted)
    print(f"{fn.value:6} chi={chi} objective={res.objective:.4f} picks={res.subset.members}")

# %%
# on a 12-point slice the exact optimum is cheap to enumerate
from smibounds import SimilarityMatrix
import numpy as np

keep = list(range(6)) + list(range(40, 46)) + list(range(80, 85))
small = SimilarityMatrix(sim.values[np.ix_(keep, keep)], 6, 6, 5)
for fn in SmiFunction:
    cfg = SmiConfig(fn)
    g, opt = greedy_select(small, cfg, 4), brute_force_best(small, cfg, 4)
    print(f"{fn.value:6} greedy/opt = {g.objective / opt.objective:.4f}  (floor {1 - 1 / math.e:.4f})")
