"""
Relevance and coverage bounds for a single subset
=================================================

The similarity parameters are extracted once per dataset; the
subset-dependent ones are recomputed for each draw.
"""

# %%
from smibounds import (CoverageTarget, SmiConfig, SmiFunction, build_similarity_matrix, delta_avg,
                       eval_smi, evaluate_bounds, extract_dataset_params, generate_dataset, preset)

d = generate_dataset(preset("two-target"))
sim = build_similarity_matrix(d)
params = extract_dataset_params(sim)
print(params)

# %%
a = (0, 1, 45, 81, 100)          # three targeted and two untargeted points
chi = sum(1 for i in a if i < sim.n_targeted)
print(f"chi = {chi}")
print(f"coverage of Q = {delta_avg(a, CoverageTarget.QUERY, sim):.4f}")
print(f"coverage of T minus A = {delta_avg(a, CoverageTarget.T_MINUS_A, sim):.4f}")

# %%
for fn in SmiFunction:
    cfg = SmiConfig(fn)
    value = eval_smi(a, sim, cfg)
    b = evaluate_bounds(a, value, sim, cfg, params)
    r, c = b.relevance, b.coverage
    tag = " (heuristic)" if c.heuristic else ""
    print(f"{fn.value:6} I={value:9.4f}  chi in [{r.clipped_lower:.2f}, {r.clipped_upper:.2f}]"
          f"  coverage in [{c.clipped_lower:.3f}, {c.clipped_upper:.3f}]{tag}")
