"""Submodular mutual information (SMI) functions for targeted subset selection.

The package evaluates four SMI instantiations (FLVMI, FLQMI, GCMI and COM),
computes closed-form relevance and coverage bounds for a chosen subset, and
runs seeded synthetic experiments that correlate SMI values with relevance
and coverage.
"""

from .bounds import (BoundInterval, DatasetBoundParams, ProblemSizes, SubsetBoundParams, SubsetBounds,
                     coverage_bounds, evaluate_bounds, extract_dataset_params, extract_subset_params,
                     relevance_bounds)
from .data import (Concave, LabeledDataset, SimilarityMatrix, SmiConfig, SmiFunction, Subset, load_dataset,
                   save_dataset, subset_partition_counts, validate_dataset)
from .errors import SmiError
from .greedy import SelectionResult, brute_force_best, greedy_select
from .harness import (CorrelationTable, EvaluatedSample, ExperimentConfig, ExperimentResult, emit_csv,
                      load_config, preset_config, run_eta_sweep, run_experiment)
from .metrics import CoverageTarget, SampleRecord, delta_avg, spearman_ordinal
from .plots import emit_plots, render_svg
from .similarity import KernelConfig, KernelKind, build_similarity_matrix, kernel_value, median_bandwidth
from .smi import IncrementalEvaluator, eval_smi, marginal_gain
from .synthgen import (ClusterRole, ClusterSpec, ScenarioConfig, generate_dataset, preset,
                       sample_subset_uniform_chi, sample_subsets)

__version__ = "0.1.0"

__all__ = [
    "BoundInterval", "DatasetBoundParams", "ProblemSizes", "SubsetBoundParams", "SubsetBounds",
    "coverage_bounds", "evaluate_bounds", "extract_dataset_params", "extract_subset_params",
    "relevance_bounds", "Concave", "LabeledDataset", "SimilarityMatrix", "SmiConfig", "SmiFunction",
    "Subset", "load_dataset", "save_dataset", "subset_partition_counts", "validate_dataset",
    "SmiError", "SelectionResult", "brute_force_best", "greedy_select", "CorrelationTable",
    "EvaluatedSample", "ExperimentConfig", "ExperimentResult", "emit_csv", "load_config",
    "preset_config", "run_eta_sweep", "run_experiment", "CoverageTarget", "SampleRecord",
    "delta_avg", "spearman_ordinal", "emit_plots", "render_svg", "KernelConfig", "KernelKind",
    "build_similarity_matrix", "kernel_value", "median_bandwidth", "IncrementalEvaluator",
    "eval_smi", "marginal_gain", "ClusterRole", "ClusterSpec", "ScenarioConfig", "generate_dataset",
    "preset", "sample_subset_uniform_chi", "sample_subsets",
]
