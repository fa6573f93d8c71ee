"""Cardinality-constrained greedy maximization of I_F(A; Q) and an exhaustive oracle."""

from __future__ import annotations

import heapq
import itertools
import math
from dataclasses import dataclass

import numpy as np

from .data import SimilarityMatrix, SmiConfig, Subset
from .errors import BudgetTooLarge, InstanceTooLarge
from .smi import IncrementalEvaluator, eval_smi

MAX_ENUMERATION = 10**6


@dataclass(frozen=True)
class SelectionResult:
    subset: Subset
    objective: float
    gain_trace: tuple[tuple[int, float], ...]


def _check_budget(sim: SimilarityMatrix, budget: int) -> None:
    if budget < 0 or budget > sim.n_ground:
        raise BudgetTooLarge(f"budget {budget} not in [0, {sim.n_ground}]")


def _result(sim, cfg, trace) -> SelectionResult:
    subset = Subset(tuple(j for j, _ in trace))
    objective = eval_smi(subset, sim, cfg) if len(subset) else 0.0
    return SelectionResult(subset, objective, tuple(trace))


def greedy_select(sim: SimilarityMatrix, cfg: SmiConfig, budget: int,
                  lazy: bool = True) -> SelectionResult:
    """Add the element of largest marginal gain ``budget`` times.

    Ties go to the lowest ground index.  ``lazy=True`` uses stale gains as
    upper bounds (valid because the objectives are submodular in ``A``) and
    returns the same selection as the plain loop.
    """
    _check_budget(sim, budget)
    ev = IncrementalEvaluator(sim, cfg)
    trace: list[tuple[int, float]] = []
    if not lazy:
        remaining = np.arange(sim.n_ground)
        for _ in range(budget):
            g = ev.gains(remaining)
            best = int(np.argmax(g))                 # argmax returns the first maximum
            j = int(remaining[best])
            trace.append((j, ev.add(j)))
            remaining = np.delete(remaining, best)
        return _result(sim, cfg, trace)

    if budget == 0:
        return _result(sim, cfg, trace)
    initial = ev.gains(np.arange(sim.n_ground))
    heap = [(-float(gain), j, 0) for j, gain in enumerate(initial)]
    heapq.heapify(heap)
    step = 0
    while len(trace) < budget:
        neg, j, stamp = heapq.heappop(heap)
        if stamp == step:
            trace.append((j, ev.add(j)))
            step += 1
            continue
        fresh = float(ev.gains([j])[0])
        heapq.heappush(heap, (-fresh, j, step))
    return _result(sim, cfg, trace)


def brute_force_best(sim: SimilarityMatrix, cfg: SmiConfig, budget: int) -> SelectionResult:
    """Exact maximizer by enumeration; the lexicographically first optimum wins ties."""
    _check_budget(sim, budget)
    if math.comb(sim.n_ground, budget) > MAX_ENUMERATION:
        raise InstanceTooLarge(f"C({sim.n_ground}, {budget}) exceeds {MAX_ENUMERATION}")
    if budget == 0:
        return SelectionResult(Subset(), 0.0, ())
    best, best_val = None, -math.inf
    for combo in itertools.combinations(range(sim.n_ground), budget):
        val = eval_smi(combo, sim, cfg)
        if val > best_val:
            best, best_val = combo, val
    ev = IncrementalEvaluator(sim, cfg)
    trace = tuple((j, ev.add(j)) for j in best)
    return SelectionResult(Subset(best), best_val, trace)
