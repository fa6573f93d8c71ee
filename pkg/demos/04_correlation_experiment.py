"""
Relevance / coverage correlations on the synthetic presets
==========================================================

Subsets are drawn with chi uniform on 0..B.  For each function we rank the
samples by objective value and report the ordinal Spearman coefficient with
chi (relevance) and with mean coverage (coverage).
"""

# %%
from smibounds import preset_config, run_eta_sweep, run_experiment

for name in ("one-target", "two-target"):
    result = run_experiment(preset_config(name))
    print(name)
    for (_, fn, eta, metric), rho in result.table.rows.items():
        print(f"  {fn:6} eta={eta:<4g} {metric:9} {rho:.5f}")

# %%
# eta sweep for the functions that have an eta
table = run_eta_sweep(preset_config("two-target"))
for (_, fn, eta, metric), rho in sorted(table.rows.items(), key=lambda kv: (kv[0][1], kv[0][3], kv[0][2])):
    print(f"{fn:6} {metric:9} eta={eta:<4g} {rho:.5f}")
