"""Relevance / coverage measurements and ordinal Spearman correlation."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from scipy.stats import rankdata

from .data import SimilarityMatrix, Subset, check_subset
from .errors import EmptySubset, EmptyTargetSet, LengthMismatch, TooFewSamples


class CoverageTarget(str, enum.Enum):
    QUERY = "QUERY"
    T_MINUS_A = "T_MINUS_A"


@dataclass(frozen=True)
class SampleRecord:
    """One evaluated subset under one SMI configuration."""

    subset: Subset
    smi_value: float
    chi: int
    delta_avg_q: float
    delta_avg_t_minus_a: Optional[float]


def delta_avg(a: Subset | Sequence[int], target: CoverageTarget, sim: SimilarityMatrix) -> float:
    """Mean over the target set of the best similarity to any member of ``a``."""
    a = check_subset(a, sim.n_ground)
    if len(a) == 0:
        raise EmptySubset("coverage of an empty subset is undefined")
    idx = np.fromiter(a, dtype=int, count=len(a))
    if target is CoverageTarget.QUERY:
        rows = sim.query_idx
    else:
        rows = np.setdiff1d(sim.targeted_idx, idx)
        if rows.size == 0:
            raise EmptyTargetSet("T \\ A is empty")
    best = sim.values[np.ix_(rows, idx)].max(axis=1)
    return math.fsum(best) / len(best)


def spearman_ordinal(xs: Sequence[float], ys: Sequence[float]) -> float:
    """Spearman correlation with ordinal tie splitting.

    Samples are stably sorted by ``xs``; both sequences are then ranked
    ``1..n`` with ties broken by position in that order, and the Pearson
    coefficient of the two rank vectors is returned (computed exactly, since
    ordinal ranks are permutations).  A ``ys`` that is a
    non-decreasing function of ``xs`` therefore scores exactly 1.
    """
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    if xs.shape != ys.shape:
        raise LengthMismatch(f"lengths differ: {xs.shape} vs {ys.shape}")
    if xs.size < 2:
        raise TooFewSamples("need at least two samples")
    order = np.argsort(xs, kind="stable")
    rx = rankdata(xs[order], method="ordinal").astype(np.int64)
    ry = rankdata(ys[order], method="ordinal").astype(np.int64)
    # both rank vectors are permutations of 1..n, where Pearson reduces to this exact integer form
    n = int(xs.size)
    d2 = int(((rx - ry) ** 2).sum())
    return 1.0 - 6.0 * d2 / (n * (n * n - 1))
