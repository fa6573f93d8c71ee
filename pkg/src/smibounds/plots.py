"""Static SVG scatter plots of objective value against relevance / coverage.

Each plot carries two kinds of bound overlay:

* per-sample spans (``<line class="bound-span">``) from the sample's clipped
  lower to clipped upper bound, drawn only where the preconditions hold;
* a pair of reference curves (``bound-lower`` / ``bound-upper``) evaluated on a
  grid of objective values with dataset-level parameters and the per-sample
  median of the subset-level ones.  The surrogate is recorded in ``<metadata>``.

Coordinates are written with fixed precision so output is deterministic.
"""

from __future__ import annotations

import json
import statistics
from pathlib import Path
from typing import Optional, Sequence
from xml.sax.saxutils import escape

import numpy as np

from .bounds import ProblemSizes, SubsetBoundParams, coverage_bounds, relevance_bounds
from .harness import EvaluatedSample, ExperimentResult

WIDTH, HEIGHT = 480, 360
MARGIN = 50
GRID = 60


def _fmt(x: float) -> str:
    return f"{x:.3f}"


class _Frame:
    def __init__(self, x_range, y_range):
        self.x0, self.x1 = x_range
        if self.x1 <= self.x0:
            self.x1 = self.x0 + 1.0
        self.y0, self.y1 = y_range

    def px(self, x: float) -> float:
        return MARGIN + (x - self.x0) / (self.x1 - self.x0) * (WIDTH - 2 * MARGIN)

    def py(self, y: float) -> float:
        return HEIGHT - MARGIN - (y - self.y0) / (self.y1 - self.y0) * (HEIGHT - 2 * MARGIN)


def _median_subset_params(samples: Sequence[EvaluatedSample]) -> SubsetBoundParams:
    def med(name):
        vals = [getattr(s.subset_params, name) for s in samples
                if getattr(s.subset_params, name) is not None]
        return statistics.median(vals) if vals else None

    return SubsetBoundParams(*(med(n) for n in ("alpha4", "beta4", "gamma3", "delta3",
                                                "gamma4", "delta4", "overshoot")))


def _curves(result: ExperimentResult, samples, metric: str, xs: np.ndarray):
    fn = samples[0].function
    B = result.budget
    sizes = ProblemSizes.of(result.similarity, B)
    sub = _median_subset_params(samples)
    if sub.overshoot is None:
        sub = SubsetBoundParams(sub.alpha4, sub.beta4, sub.gamma3, sub.delta3, sub.gamma4, sub.delta4, 0.0)
    met_chis = [s.record.chi for s in samples
                if (s.relevance if metric == "relevance" else s.coverage).preconditions_met]
    chi = int(statistics.median_low(met_chis)) if met_chis else 1
    bound = relevance_bounds if metric == "relevance" else coverage_bounds
    lo, hi = [], []
    for x in xs:
        b = bound(fn, float(x), chi, result.params, sub, sizes)
        if not b.preconditions_met:
            return None, chi
        lo.append(b.clipped_lower)
        hi.append(b.clipped_upper)
    return (lo, hi), chi


def render_svg(result: ExperimentResult, samples: Sequence[EvaluatedSample], metric: str) -> str:
    """SVG for one function; ``metric`` is ``"relevance"`` or ``"coverage"``."""
    B = result.budget
    y_range = (0.0, float(B)) if metric == "relevance" else (0.0, 1.0)
    values = [s.record.smi_value for s in samples]
    if values:
        lo, hi = min(values), max(values)
        pad = 0.05 * (hi - lo) if hi > lo else 0.5
        frame = _Frame((lo - pad, hi + pad), y_range)
    else:
        frame = _Frame((0.0, 1.0), y_range)
    label = samples[0].function.label if samples else "none"

    meta = {"metric": metric, "function": label, "dataset": result.dataset_name,
            "curves": "dataset-level parameters with per-sample median subset parameters",
            "clip": list(y_range)}
    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f"<metadata>{escape(json.dumps(meta, sort_keys=True))}</metadata>",
        f'<rect class="plot-area" x="{MARGIN}" y="{MARGIN}" width="{WIDTH - 2 * MARGIN}" '
        f'height="{HEIGHT - 2 * MARGIN}" fill="none" stroke="#000"/>',
        f'<text x="{WIDTH / 2}" y="{HEIGHT - 12}" text-anchor="middle" font-size="12">I_F(A;Q) '
        f'[{escape(label)}]</text>',
        f'<text x="14" y="{HEIGHT / 2}" font-size="12" transform="rotate(-90 14 {HEIGHT / 2})" '
        f'text-anchor="middle">{"chi" if metric == "relevance" else "delta_avg"}</text>',
    ]
    for y in np.linspace(*y_range, 6):
        parts.append(f'<text x="{MARGIN - 6}" y="{_fmt(frame.py(y) + 4)}" font-size="10" '
                     f'text-anchor="end">{y:g}</text>')
    for x in np.linspace(frame.x0, frame.x1, 5):
        parts.append(f'<text x="{_fmt(frame.px(x))}" y="{HEIGHT - MARGIN + 14}" font-size="10" '
                     f'text-anchor="middle">{x:.3g}</text>')

    if samples:
        xs = np.linspace(frame.x0, frame.x1, GRID)
        curves, chi = _curves(result, samples, metric, xs)
        if curves is not None:
            for cls, ys in zip(("bound-lower", "bound-upper"), curves):
                pts = " ".join(f"{_fmt(frame.px(x))},{_fmt(frame.py(y))}" for x, y in zip(xs, ys))
                parts.append(f'<polyline class="{cls}" data-chi="{chi}" points="{pts}" fill="none" '
                             f'stroke="#c00" stroke-width="1.5"/>')

    for s in samples:
        y = s.record.chi if metric == "relevance" else s.coverage_metric
        if y is None:
            continue
        interval = s.relevance if metric == "relevance" else s.coverage
        cx, cy = _fmt(frame.px(s.record.smi_value)), _fmt(frame.py(y))
        met = interval.preconditions_met and not interval.heuristic
        if met:
            parts.append(f'<line class="bound-span" data-index="{s.index}" x1="{cx}" '
                         f'y1="{_fmt(frame.py(interval.clipped_lower))}" x2="{cx}" '
                         f'y2="{_fmt(frame.py(interval.clipped_upper))}" stroke="#f90" '
                         f'stroke-opacity="0.3"/>')
        parts.append(f'<circle class="sample" data-index="{s.index}" data-met="{int(met)}" '
                     f'cx="{cx}" cy="{cy}" r="2" fill="#1f77b4"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def emit_plots(result: ExperimentResult, out_dir, functions: Optional[Sequence] = None) -> list[Path]:
    """Write ``<dataset>_<function>_eta<eta>_{relevance,coverage}.svg`` for each function."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    fns = functions if functions is not None else list(dict.fromkeys(s.function for s in result.samples))
    written = []
    for fn in fns:
        rows = result.for_function(fn)
        for metric in ("relevance", "coverage"):
            path = out / f"{result.dataset_name}_{fn.label}_eta{fn.eta:g}_{metric}.svg"
            path.write_text(render_svg(result, rows, metric), encoding="utf-8")
            written.append(path)
    return written
