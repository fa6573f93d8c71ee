"""Similarity-based submodular mutual information objectives I_F(A; Q).

All four instantiations are evaluated from their closed forms.  ``V`` is the
ground set ``T ∪ U``; queries are held outside it.

    FLVMI  sum_{i in V} min(max_{j in A} s_ij, eta * max_{j in Q} s_ij)
    FLQMI  sum_{i in Q} max_{j in A} s_ij + eta * sum_{i in A} max_{j in Q} s_ij
    GCMI   2 * lambda * sum_{i in A} sum_{j in Q} s_ij
    COM    eta * sum_{i in A} psi(sum_{j in Q} s_ij) + sum_{i in Q} psi(sum_{j in A} s_ij)
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .data import SimilarityMatrix, SmiConfig, SmiFunction, Subset, check_subset
from .errors import AlreadyMember, EmptySubset, IndexOutOfRange


def _members(a, sim: SimilarityMatrix) -> np.ndarray:
    a = check_subset(a, sim.n_ground)
    if len(a) == 0:
        raise EmptySubset("SMI is evaluated on non-empty subsets only")
    # sorted so that the value depends on the set, not on insertion order
    return np.sort(np.fromiter(a, dtype=int, count=len(a)))


def eval_smi(a: Subset | Iterable[int], sim: SimilarityMatrix, cfg: SmiConfig) -> float:
    """Value of I_F(A; Q) for subset ``a`` of ground indices."""
    idx = _members(a, sim)
    S = sim.values
    g = sim.n_ground
    q = sim.query_idx
    fn = cfg.function
    if fn is SmiFunction.FLVMI:
        cover = S[:g][:, idx].max(axis=1)
        cap = cfg.eta * S[:g][:, q].max(axis=1)
        return float(np.minimum(cover, cap).sum())
    if fn is SmiFunction.FLQMI:
        return float(S[np.ix_(q, idx)].max(axis=1).sum()
                     + cfg.eta * S[np.ix_(idx, q)].max(axis=1).sum())
    if fn is SmiFunction.GCMI:
        return float(2.0 * cfg.lam * S[np.ix_(idx, q)].sum())
    psi = cfg.psi
    return float(cfg.eta * psi(S[np.ix_(idx, q)].sum(axis=1)).sum()
                 + psi(S[np.ix_(q, idx)].sum(axis=1)).sum())


def marginal_gain(a: Subset | Iterable[int], candidate: int, sim: SimilarityMatrix,
                  cfg: SmiConfig) -> float:
    """``I(A ∪ {c}) - I(A)``; for empty ``A`` this is ``I({c})``."""
    a = check_subset(a, sim.n_ground)
    if not 0 <= candidate < sim.n_ground:
        raise IndexOutOfRange(f"candidate {candidate} outside ground set")
    if candidate in a:
        raise AlreadyMember(f"candidate {candidate} already in subset")
    grown = eval_smi(a.with_member(candidate), sim, cfg)
    if len(a) == 0:
        return grown
    return grown - eval_smi(a, sim, cfg)


class IncrementalEvaluator:
    """Running state for one greedy run: per-row maxima / sums over the current ``A``.

    Not thread-safe; create one per selection run.
    """

    def __init__(self, sim: SimilarityMatrix, cfg: SmiConfig):
        self.sim = sim
        self.cfg = cfg
        S = sim.values
        g = sim.n_ground
        q = sim.query_idx
        self._gq = S[:g][:, q]                      # ground x query
        self._mq = self._gq.max(axis=1)             # max_{j in Q} s_ij per ground i
        self.members: list[int] = []
        self.value = 0.0
        fn = cfg.function
        if fn is SmiFunction.FLVMI:
            self._gg = S[:g, :g]
            self._cap = cfg.eta * self._mq
            self._cover = np.zeros(g)
        elif fn is SmiFunction.FLQMI:
            self._cover = np.zeros(len(q))          # max_{j in A} s_qj per query
        elif fn is SmiFunction.GCMI:
            self._modular = 2.0 * cfg.lam * self._gq.sum(axis=1)
        else:
            self._modular = cfg.eta * cfg.psi(self._gq.sum(axis=1))
            self._qsum = np.zeros(len(q))           # sum_{j in A} s_qj per query

    def gains(self, candidates: Sequence[int] | np.ndarray) -> np.ndarray:
        """Marginal gains of each candidate with respect to the current members."""
        c = np.asarray(candidates, dtype=int)
        fn = self.cfg.function
        if fn is SmiFunction.FLVMI:
            new = np.minimum(np.maximum(self._cover[:, None], self._gg[:, c]), self._cap[:, None])
            old = np.minimum(self._cover, self._cap)
            return (new - old[:, None]).sum(axis=0)
        if fn is SmiFunction.FLQMI:
            cols = self._gq[c].T                                        # query x candidate
            lift = (np.maximum(self._cover[:, None], cols) - self._cover[:, None]).sum(axis=0)
            return lift + self.cfg.eta * self._mq[c]
        if fn is SmiFunction.GCMI:
            return self._modular[c].copy()
        psi = self.cfg.psi
        cols = self._gq[c].T
        lift = (psi(self._qsum[:, None] + cols) - psi(self._qsum)[:, None]).sum(axis=0)
        return self._modular[c] + lift

    def add(self, j: int) -> float:
        """Commit ``j`` and return its gain."""
        gain = float(self.gains([j])[0])
        fn = self.cfg.function
        if fn is SmiFunction.FLVMI:
            self._cover = np.maximum(self._cover, self._gg[:, j])
        elif fn is SmiFunction.FLQMI:
            self._cover = np.maximum(self._cover, self._gq[j])
        elif fn is SmiFunction.COM:
            self._qsum = self._qsum + self._gq[j]
        self.members.append(int(j))
        self.value += gain
        return gain
