"""Similarity parameters of a (T, U, Q) split and the relevance / coverage bounds built on them.

Dataset-level parameters (``alpha1 .. omega_ut``) summarise cross similarities
between the partitions and are computed once per similarity matrix.
Subset-level parameters (``alpha4``, ``beta4``, ``gamma3 .. delta4`` and the
overshoot term) depend on the selected subset ``A`` and are recomputed per draw.

Means are accumulated with :func:`math.fsum` so that results are exactly
reproducible by any independent implementation that also rounds once.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .data import SimilarityMatrix, SmiConfig, SmiFunction, Subset, check_subset

INF = math.inf


def _row_means(block: np.ndarray) -> np.ndarray:
    n = block.shape[1]
    return np.array([math.fsum(row) / n for row in block])


@dataclass(frozen=True)
class DatasetBoundParams:
    alpha1: float   # min over U of max query similarity
    beta1: float    # max over U of max query similarity
    alpha2: float   # same over T
    beta2: float
    alpha3: float   # min over T of mean query similarity
    beta3: float    # mean over Q of best similarity into T
    gamma1: float   # range over U of mean query similarity
    delta1: float
    gamma2: float   # range over T of mean query similarity
    delta2: float
    omega_u: float  # min similarity inside U
    omega_ut: float  # min similarity between U and T


@dataclass(frozen=True)
class SubsetBoundParams:
    """Subset-dependent parameters; ``None`` marks a field whose index set is empty."""

    alpha4: Optional[float]
    beta4: Optional[float]
    gamma3: Optional[float]
    delta3: Optional[float]
    gamma4: Optional[float]
    delta4: Optional[float]
    overshoot: float


@dataclass(frozen=True)
class ProblemSizes:
    n_targeted: int
    n_untargeted: int
    n_query: int
    budget: int

    @classmethod
    def of(cls, sim: SimilarityMatrix, budget: int) -> "ProblemSizes":
        return cls(sim.n_targeted, sim.n_untargeted, sim.n_query, budget)


@dataclass(frozen=True)
class BoundInterval:
    """Lower/upper bound on chi or delta_avg.

    Failed preconditions give ``(-inf, inf)`` with ``preconditions_met=False``.
    ``heuristic`` marks an envelope that is not a proven bound on the metric.
    """

    lower: float
    upper: float
    preconditions_met: bool
    clipped_lower: float
    clipped_upper: float
    heuristic: bool = False

    def contains(self, value: float, tol: float = 0.0, clipped: bool = False) -> bool:
        lo, hi = (self.clipped_lower, self.clipped_upper) if clipped else (self.lower, self.upper)
        return lo - tol <= value <= hi + tol


def _interval(lower: float, upper: float, lo: float, hi: float, heuristic: bool = False) -> BoundInterval:
    return BoundInterval(lower, upper, True,
                         min(max(lower, lo), hi), min(max(upper, lo), hi), heuristic)


def _unmet(lo: float, hi: float, heuristic: bool = False) -> BoundInterval:
    return BoundInterval(-INF, INF, False, lo, hi, heuristic)


def extract_dataset_params(sim: SimilarityMatrix) -> DatasetBoundParams:
    S = sim.values
    t, u, q = sim.targeted_idx, sim.untargeted_idx, sim.query_idx
    max_q_t = S[np.ix_(t, q)].max(axis=1)
    max_q_u = S[np.ix_(u, q)].max(axis=1)
    mean_q_t = _row_means(S[np.ix_(t, q)])
    mean_q_u = _row_means(S[np.ix_(u, q)])
    best_t_per_query = S[np.ix_(q, t)].max(axis=1)
    return DatasetBoundParams(
        alpha1=float(max_q_u.min()), beta1=float(max_q_u.max()),
        alpha2=float(max_q_t.min()), beta2=float(max_q_t.max()),
        alpha3=float(mean_q_t.min()),
        beta3=math.fsum(best_t_per_query) / len(q),
        gamma1=float(mean_q_u.min()), delta1=float(mean_q_u.max()),
        gamma2=float(mean_q_t.min()), delta2=float(mean_q_t.max()),
        omega_u=float(S[np.ix_(u, u)].min()),
        omega_ut=float(S[np.ix_(u, t)].min()),
    )


def extract_subset_params(a: Subset | Sequence[int], sim: SimilarityMatrix, eta: float,
                          params: DatasetBoundParams) -> SubsetBoundParams:
    a = check_subset(a, sim.n_ground)
    S = sim.values
    idx = np.fromiter(a, dtype=int, count=len(a))
    q = sim.query_idx
    rest_t = np.setdiff1d(sim.targeted_idx, idx)
    a_t = idx[idx < sim.n_targeted]
    a_u = idx[idx >= sim.n_targeted]

    alpha4 = beta4 = None
    overshoot = 0.0
    if rest_t.size and idx.size:
        cover = S[np.ix_(rest_t, idx)].max(axis=1)
        cap = eta * S[np.ix_(rest_t, q)].max(axis=1)
        n = rest_t.size
        alpha4 = math.fsum(np.minimum(cover, eta * params.alpha2)) / n
        beta4 = math.fsum(np.minimum(cover, eta * params.beta2)) / n
        over = cover > cap
        overshoot = math.fsum(cover[over] - cap[over])

    def _range(members):
        if members.size == 0:
            return None, None
        m = _row_means(S[np.ix_(q, members)])
        return float(m.min()), float(m.max())

    gamma3, delta3 = _range(a_u)
    gamma4, delta4 = _range(a_t)
    return SubsetBoundParams(alpha4, beta4, gamma3, delta3, gamma4, delta4, overshoot)


# -- relevance (bounds on chi) ------------------------------------------------


def com_relevance_envelope(chi, sizes: ProblemSizes, cfg: SmiConfig, p: DatasetBoundParams,
                           gamma3: float, gamma4: float, delta3: float, delta4: float):
    """``(f_l(chi), f_h(chi))`` with ``f_l(chi) <= I_F(A;Q) <= f_h(chi)`` for COM."""
    chi = np.asarray(chi, dtype=float)
    psi, eta, B, nq = cfg.psi, cfg.eta, sizes.budget, sizes.n_query
    f_l = (eta * chi * (psi(nq * p.gamma2) - psi(nq * p.gamma1)) + eta * B * psi(nq * p.gamma1)
           + nq * psi(B * gamma3 + chi * (gamma4 - gamma3)))
    f_h = (eta * chi * (psi(nq * p.delta2) - psi(nq * p.delta1)) + eta * B * psi(nq * p.delta1)
           + nq * psi(B * delta3 + chi * (delta4 - delta3)))
    return f_l, f_h


def relevance_bounds(cfg: SmiConfig, smi_value: float, chi: int, params: DatasetBoundParams,
                     sub: SubsetBoundParams, sizes: ProblemSizes) -> BoundInterval:
    """Interval guaranteed to contain ``chi = |A ∩ T|`` given the objective value.

    ``chi`` is only consulted for the bounds' premises (at least one
    targeted member for the facility-location variants).
    """
    B = sizes.budget
    p = params
    I = smi_value
    fn = cfg.function
    eta = cfg.eta

    if fn is SmiFunction.FLVMI:
        if chi < 1 or sub.alpha4 is None:
            return _unmet(0, B)
        den_lo = min(1.0, eta * p.beta2) - sub.beta4
        den_hi = min(1.0, eta * p.alpha2) - sub.alpha4
        if den_lo <= 0 or den_hi <= 0:
            return _unmet(0, B)
        lower = (I - sizes.n_untargeted * min(1.0, eta * p.beta1) - sizes.n_targeted * sub.beta4) / den_lo
        upper = (I - sizes.n_targeted * sub.alpha4) / den_hi
        return _interval(lower, upper, 0, B)

    if fn is SmiFunction.FLQMI:
        if chi < 1 or not (p.alpha1 < p.alpha2 and p.beta1 < p.beta2):
            return _unmet(0, B)
        lower = (I - eta * B * p.beta1 - sizes.n_query * p.beta3) / (eta * (p.beta2 - p.beta1))
        upper = (I - eta * B * p.alpha1 - sizes.n_query * p.alpha3) / (eta * (p.alpha2 - p.alpha1))
        return _interval(lower, upper, 0, B)

    if fn is SmiFunction.GCMI:
        if not (p.gamma1 < p.gamma2 and p.delta1 < p.delta2):
            return _unmet(0, B)
        scaled = I / (2.0 * cfg.lam * sizes.n_query)
        lower = (scaled - B * p.delta1) / (p.delta2 - p.delta1)
        upper = (scaled - B * p.gamma1) / (p.gamma2 - p.gamma1)
        return _interval(lower, upper, 0, B)

    # COM: feasible chi values are those whose envelope brackets the observed value
    if None in (sub.gamma3, sub.gamma4, sub.delta3, sub.delta4):
        return _unmet(0, B)
    if not (p.gamma2 > p.gamma1 and sub.gamma4 > sub.gamma3
            and p.delta2 > p.delta1 and sub.delta4 > sub.delta3):
        return _unmet(0, B)
    grid = np.arange(B + 1)
    f_l, f_h = com_relevance_envelope(grid, sizes, cfg, p, sub.gamma3, sub.gamma4,
                                      sub.delta3, sub.delta4)
    tol = 1e-9 * max(1.0, abs(I))
    feasible = grid[(f_l <= I + tol) & (I <= f_h + tol)]
    if feasible.size == 0:
        return _unmet(0, B)
    return _interval(float(feasible.min()), float(feasible.max()), 0, B)


# -- coverage (bounds on delta_avg) -------------------------------------------


def com_coverage_envelope(x, chi: int, sizes: ProblemSizes, cfg: SmiConfig, p: DatasetBoundParams,
                          gamma3: float, gamma4: float, delta3: float, delta4: float):
    """Per-query ``(f_l(x), f_h(x))`` with ``sum_q f_l(m_q) <= I_F <= sum_q f_h(m_q)``,
    ``m_q`` being the best similarity from query ``q`` into ``A``."""
    x = np.asarray(x, dtype=float)
    psi, eta, B, nq = cfg.psi, cfg.eta, sizes.budget, sizes.n_query
    f_l = (eta / nq * (chi * psi(nq * p.gamma2) + (B - chi) * psi(nq * p.gamma1))
           + psi((chi - 1) * gamma4 + (B - chi) * gamma3 + x))
    f_h = (eta / nq * (chi * psi(nq * p.delta2) + (B - chi) * psi(nq * p.delta1))
           + psi((chi - 1) * delta4 + (B - chi) * delta3 + x))
    return f_l, f_h


def _solve_increasing(f, target: float, lo: float = 0.0, hi: float = 1.0, iters: int = 100) -> float:
    """Smallest x in [lo, hi] with f(x) >= target (saturating at the ends)."""
    if f(lo) >= target:
        return lo
    if f(hi) < target:
        return hi
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if f(mid) >= target:
            hi = mid
        else:
            lo = mid
    return hi


def coverage_bounds(cfg: SmiConfig, smi_value: float, chi: int, params: DatasetBoundParams,
                    sub: SubsetBoundParams, sizes: ProblemSizes) -> BoundInterval:
    """Interval on mean coverage: of ``T \\ A`` for FLVMI, of ``Q`` for the others."""
    B = sizes.budget
    p = params
    I = smi_value
    fn = cfg.function
    eta = cfg.eta
    nq = sizes.n_query

    if fn is SmiFunction.FLVMI:
        rest = sizes.n_targeted - chi
        if not (1 <= chi < B) or rest <= 0:
            return _unmet(0.0, 1.0)
        O = sub.overshoot
        lower = (I - sizes.n_untargeted * min(eta * p.beta1, 1.0) - chi * min(eta * p.beta2, 1.0) + O) / rest
        # |U| - B - chi as printed; the exact count of U \ A is |U| - B + chi, so this is looser but valid
        floor_u = min(max(p.omega_u, p.omega_ut), eta * p.alpha1)
        upper = (I - (B - chi) * min(eta * p.alpha1, 1.0) - chi * min(eta * p.alpha2, 1.0)
                 - (sizes.n_untargeted - B - chi) * floor_u + O) / rest
        return _interval(lower, upper, 0.0, 1.0)

    if fn is SmiFunction.FLQMI:
        if chi < 1:
            return _unmet(0.0, 1.0)
        lower = (I - eta * (chi * p.beta2 + (B - chi) * p.beta1)) / nq
        upper = (I - eta * (chi * p.alpha2 + (B - chi) * p.alpha1)) / nq
        return _interval(lower, upper, 0.0, 1.0)

    if fn is SmiFunction.GCMI:
        scaled = I / (2.0 * cfg.lam * nq)
        lower = scaled - B * p.delta1 - chi * (p.delta2 - p.delta1)
        upper = scaled - (B - 1) * p.gamma1 + p.gamma2 - chi * (p.gamma2 - p.gamma1)
        return _interval(lower, upper, 0.0, 1.0)

    # COM: invert the per-query envelopes assuming every query shares one best similarity x
    if chi < 1 or sub.gamma4 is None:
        return _unmet(0.0, 1.0, heuristic=True)
    g3 = sub.gamma3 if sub.gamma3 is not None else 0.0
    d3 = sub.delta3 if sub.delta3 is not None else 0.0

    def env(x):
        return com_coverage_envelope(x, chi, sizes, cfg, p, g3, sub.gamma4, d3, sub.delta4)

    target = I / nq
    lower = _solve_increasing(lambda x: float(env(x)[1]), target)
    upper = _solve_increasing(lambda x: float(env(x)[0]), target)
    return _interval(lower, upper, 0.0, 1.0, heuristic=True)


@dataclass(frozen=True)
class SubsetBounds:
    relevance: BoundInterval
    coverage: BoundInterval
    subset_params: SubsetBoundParams


def evaluate_bounds(a: Subset | Sequence[int], smi_value: float, sim: SimilarityMatrix,
                    cfg: SmiConfig, params: DatasetBoundParams) -> SubsetBounds:
    """Both intervals for one subset; ``params`` comes from :func:`extract_dataset_params`."""
    a = check_subset(a, sim.n_ground)
    chi = sum(1 for m in a if m < sim.n_targeted)
    sizes = ProblemSizes.of(sim, len(a))
    sub = extract_subset_params(a, sim, cfg.eta, params)
    return SubsetBounds(relevance_bounds(cfg, smi_value, chi, params, sub, sizes),
                        coverage_bounds(cfg, smi_value, chi, params, sub, sizes), sub)
