"""
Writing CSV tables and SVG scatter plots
========================================

Equivalent to ``smibounds run --preset two-target`` with plotting enabled.
"""

# %%
import sys
from dataclasses import replace
from pathlib import Path

from smibounds import emit_csv, emit_plots, preset_config, run_experiment

out = Path(sys.argv[1] if len(sys.argv) > 1 else "demo-out")
cfg = preset_config("two-target", outputs=str(out), emit_plots=True)
cfg = replace(cfg, scenario=cfg.scenario.with_samples(300))
result = run_experiment(cfg)

# %%
for path in emit_csv(result.samples, result.table, out):
    print(path)
for path in emit_plots(result, out):
    print(path)
