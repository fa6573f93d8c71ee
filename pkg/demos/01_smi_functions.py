"""
Evaluating the four SMI objectives
==================================

A tiny hand-built instance: two targeted points, two untargeted points and
one query.  We print I_F(A; Q) for every non-empty subset.
"""

# %%
import itertools

import numpy as np

from smibounds import SimilarityMatrix, SmiConfig, SmiFunction, eval_smi

# row order is [T | U | Q]: t0, t1, u0, u1, q
S = np.array([
    [1.0, 0.8, 0.1, 0.2, 0.9],
    [0.8, 1.0, 0.2, 0.1, 0.7],
    [0.1, 0.2, 1.0, 0.6, 0.2],
    [0.2, 0.1, 0.6, 1.0, 0.1],
    [0.9, 0.7, 0.2, 0.1, 1.0],
])
sim = SimilarityMatrix(S, n_targeted=2, n_untargeted=2, n_query=1)

# %%
configs = [SmiConfig(f) for f in SmiFunction]
print("subset      " + "".join(f"{c.label:>8}" for c in configs))
for k in range(1, 5):
    for a in itertools.combinations(range(4), k):
        print(f"{str(a):<12}" + "".join(f"{eval_smi(a, sim, c):8.3f}" for c in configs))

# %%
# eta trades query relevance against diversity for FLQMI and COM
for eta in (0.5, 1.0, 3.0):
    cfg = SmiConfig(SmiFunction.FLQMI, eta=eta)
    alone, paired = eval_smi([0], sim, cfg), eval_smi([0, 2], sim, cfg)
    print(f"FLQMI eta={eta}: {{t0}}={alone:.3f}  {{t0,u0}}={paired:.3f}")
