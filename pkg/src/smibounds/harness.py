"""Experiment driver: data generation, sampling, SMI evaluation, bounds, correlations and CSV output."""

from __future__ import annotations

import csv
import json
import os
import tempfile
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional, Sequence

from .bounds import (BoundInterval, DatasetBoundParams, SubsetBoundParams, evaluate_bounds,
                     extract_dataset_params)
from .data import LabeledDataset, SimilarityMatrix, SmiConfig, SmiFunction, Subset
from .errors import InvalidConfig
from .metrics import CoverageTarget, SampleRecord, delta_avg, spearman_ordinal
from .similarity import KernelConfig, build_similarity_matrix
from .smi import eval_smi
from .synthgen import ScenarioConfig, generate_dataset, preset, sample_rng, sample_subsets

DEFAULT_FUNCTIONS = tuple(SmiConfig(f) for f in SmiFunction)
SWEEP_FUNCTIONS = (SmiFunction.FLVMI, SmiFunction.FLQMI, SmiFunction.COM)

SAMPLES_HEADER = ("function", "eta", "smi_value", "chi", "delta_q", "delta_tma",
                  "rel_lo", "rel_hi", "cov_lo", "cov_hi", "preconditions_met")
CORRELATIONS_HEADER = ("dataset", "function", "eta", "metric", "spearman")


@dataclass(frozen=True)
class ExperimentConfig:
    scenario: ScenarioConfig
    kernel: KernelConfig = KernelConfig()
    functions: tuple[SmiConfig, ...] = DEFAULT_FUNCTIONS
    eta_sweep: tuple[float, ...] = (1.0, 3.0, 10.0)
    outputs: str = "out"
    emit_plots: bool = False
    workers: int = 1

    def __post_init__(self):
        object.__setattr__(self, "functions", tuple(self.functions))
        object.__setattr__(self, "eta_sweep", tuple(float(e) for e in self.eta_sweep))
        if not self.functions:
            raise InvalidConfig("at least one SMI function is required")
        if any(not e > 0 for e in self.eta_sweep):
            raise InvalidConfig("eta_sweep values must be positive")
        if self.workers < 1:
            raise InvalidConfig("workers must be at least 1")

    @classmethod
    def from_dict(cls, doc: dict) -> "ExperimentConfig":
        scenario = doc.get("scenario", {"preset": "two-target"})
        if isinstance(scenario, str):
            scenario = {"preset": scenario}
        try:
            return cls(
                scenario=ScenarioConfig.from_dict(scenario),
                kernel=KernelConfig.from_dict(doc.get("kernel", {})),
                functions=tuple(SmiConfig.from_dict(f) for f in doc["functions"])
                if "functions" in doc else DEFAULT_FUNCTIONS,
                eta_sweep=tuple(doc.get("eta_sweep", (1.0, 3.0, 10.0))),
                outputs=str(doc.get("outputs", "out")),
                emit_plots=bool(doc.get("emit_plots", False)),
                workers=int(doc.get("workers", 1)),
            )
        except (KeyError, TypeError) as exc:
            raise InvalidConfig(f"malformed experiment config: {exc!r}") from None

    def to_dict(self) -> dict:
        return {"scenario": self.scenario.to_dict(), "kernel": self.kernel.to_dict(),
                "functions": [f.to_dict() for f in self.functions], "eta_sweep": list(self.eta_sweep),
                "outputs": self.outputs, "emit_plots": self.emit_plots, "workers": self.workers}


def load_config(path) -> ExperimentConfig:
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InvalidConfig(f"config is not valid JSON: {exc}") from None
    return ExperimentConfig.from_dict(doc)


def preset_config(name: str, **overrides) -> ExperimentConfig:
    return ExperimentConfig(scenario=preset(name), **overrides)


@dataclass(frozen=True)
class EvaluatedSample:
    """A :class:`SampleRecord` under one SMI configuration together with its bound intervals."""

    index: int
    function: SmiConfig
    record: SampleRecord
    relevance: BoundInterval
    coverage: BoundInterval
    subset_params: SubsetBoundParams

    @property
    def coverage_metric(self) -> Optional[float]:
        """The coverage value the bounds speak about: ``T \\ A`` for FLVMI, ``Q`` otherwise."""
        if self.function.function is SmiFunction.FLVMI:
            return self.record.delta_avg_t_minus_a
        return self.record.delta_avg_q

    @property
    def preconditions_met(self) -> bool:
        return (self.relevance.preconditions_met and self.coverage.preconditions_met
                and not self.coverage.heuristic)


@dataclass
class CorrelationTable:
    """Spearman values keyed by ``(dataset, function, eta, metric)``; metric is relevance or coverage."""

    rows: dict[tuple[str, str, float, str], float] = field(default_factory=dict)

    def get(self, dataset: str, function: str, eta: float, metric: str) -> float:
        return self.rows[(dataset, function, float(eta), metric)]

    def merge(self, other: "CorrelationTable") -> None:
        self.rows.update(other.rows)


@dataclass
class ExperimentResult:
    dataset_name: str
    budget: int
    dataset: LabeledDataset
    similarity: SimilarityMatrix
    params: DatasetBoundParams
    subsets: list[Subset]
    samples: list[EvaluatedSample]
    table: CorrelationTable

    def for_function(self, cfg: SmiConfig) -> list[EvaluatedSample]:
        return [s for s in self.samples if s.function == cfg]


@dataclass(frozen=True)
class _Prepared:
    name: str
    dataset: LabeledDataset
    sim: SimilarityMatrix
    params: DatasetBoundParams
    subsets: list[Subset]


def _prepare(cfg: ExperimentConfig) -> _Prepared:
    sc = cfg.scenario
    d = generate_dataset(sc)
    sim = build_similarity_matrix(d, cfg.kernel)
    params = extract_dataset_params(sim)
    subsets = sample_subsets(sim, sc.budget, sc.samples, sample_rng(sc)) if sc.samples else []
    return _Prepared(sc.name, d, sim, params, subsets)


def evaluate_sample(index: int, a: Subset, sim: SimilarityMatrix, params: DatasetBoundParams,
                    fn: SmiConfig) -> EvaluatedSample:
    value = eval_smi(a, sim, fn)
    chi = sum(1 for m in a if m < sim.n_targeted)
    dq = delta_avg(a, CoverageTarget.QUERY, sim)
    dt = delta_avg(a, CoverageTarget.T_MINUS_A, sim) if chi < sim.n_targeted else None
    b = evaluate_bounds(a, value, sim, fn, params)
    return EvaluatedSample(index, fn, SampleRecord(a, value, chi, dq, dt), b.relevance, b.coverage,
                           b.subset_params)


def _evaluate_all(prep: _Prepared, functions: Sequence[SmiConfig], workers: int) -> list[EvaluatedSample]:
    jobs = [(i, a, fn) for fn in functions for i, a in enumerate(prep.subsets)]

    def run(job):
        i, a, fn = job
        return evaluate_sample(i, a, prep.sim, prep.params, fn)

    if workers > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(run, jobs))   # map preserves submission order
    return [run(j) for j in jobs]


def correlations(dataset: str, samples: Sequence[EvaluatedSample],
                 functions: Sequence[SmiConfig]) -> CorrelationTable:
    """Relevance and coverage Spearman per function; functions with fewer than two samples are skipped."""
    table = CorrelationTable()
    for fn in functions:
        rows = [s for s in samples if s.function == fn]
        if len(rows) >= 2:
            table.rows[(dataset, fn.label, fn.eta, "relevance")] = spearman_ordinal(
                [s.record.smi_value for s in rows], [s.record.chi for s in rows])
        cov = [s for s in rows if s.coverage_metric is not None]
        if len(cov) >= 2:
            table.rows[(dataset, fn.label, fn.eta, "coverage")] = spearman_ordinal(
                [s.record.smi_value for s in cov], [s.coverage_metric for s in cov])
    return table


def run_experiment(cfg: ExperimentConfig) -> ExperimentResult:
    """Evaluate every configured function on the same stream of uniform-chi subsets."""
    prep = _prepare(cfg)
    samples = _evaluate_all(prep, cfg.functions, cfg.workers)
    table = correlations(prep.name, samples, cfg.functions)
    return ExperimentResult(prep.name, cfg.scenario.budget, prep.dataset, prep.sim, prep.params,
                            prep.subsets, samples, table)


def sweep_functions(cfg: ExperimentConfig) -> tuple[SmiConfig, ...]:
    """The (function, eta) grid of a sweep, reusing lambda / psi from the configured functions."""
    if not cfg.eta_sweep:
        raise InvalidConfig("eta_sweep must be non-empty for a sweep")
    base = {f.function: f for f in cfg.functions}
    out = []
    for kind in SWEEP_FUNCTIONS:
        tmpl = base.get(kind, SmiConfig(kind))
        out.extend(SmiConfig(kind, eta=e, lam=tmpl.lam, psi=tmpl.psi) for e in cfg.eta_sweep)
    return tuple(out)


def run_eta_sweep(cfg: ExperimentConfig) -> CorrelationTable:
    prep = _prepare(cfg)
    fns = sweep_functions(cfg)
    samples = _evaluate_all(prep, fns, cfg.workers)
    return correlations(prep.name, samples, fns)


# -- output -------------------------------------------------------------------


def _num(x: Optional[float]) -> str:
    return "" if x is None else repr(float(x))


def _atomic_write(path: Path, rows: Iterable[Sequence]) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerows(rows)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def sample_rows(samples: Sequence[EvaluatedSample]) -> list[tuple]:
    rows = []
    for s in samples:
        r = s.record
        rows.append((s.function.label, _num(s.function.eta), _num(r.smi_value), str(r.chi),
                     _num(r.delta_avg_q), _num(r.delta_avg_t_minus_a),
                     _num(s.relevance.clipped_lower), _num(s.relevance.clipped_upper),
                     _num(s.coverage.clipped_lower), _num(s.coverage.clipped_upper),
                     "true" if s.preconditions_met else "false"))
    return rows


def correlation_rows(table: CorrelationTable) -> list[tuple]:
    return [(ds, fn, _num(eta), metric, _num(rho)) for (ds, fn, eta, metric), rho in table.rows.items()]


def emit_csv(samples: Sequence[EvaluatedSample], table: CorrelationTable, out_dir) -> tuple[Path, Path]:
    """Write ``samples.csv`` and ``correlations.csv``; rows follow evaluation / insertion order."""
    out = Path(out_dir)
    sp, cp = out / "samples.csv", out / "correlations.csv"
    _atomic_write(sp, [SAMPLES_HEADER, *sample_rows(samples)])
    _atomic_write(cp, [CORRELATIONS_HEADER, *correlation_rows(table)])
    return sp, cp
