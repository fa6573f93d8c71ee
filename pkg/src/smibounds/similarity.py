"""Kernels mapping point pairs into [0, 1] and dense similarity-matrix construction."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.spatial.distance import cdist, pdist

from .data import LabeledDataset, SimilarityMatrix, validate_dataset
from .errors import DimensionMismatch, InvalidConfig


class KernelKind(str, enum.Enum):
    RBF = "RBF"
    COSINE_SHIFTED = "COSINE_SHIFTED"


@dataclass(frozen=True)
class KernelConfig:
    """Kernel selector.

    ``bandwidth`` is in units of squared feature distance.  ``None`` for RBF
    means "use the median squared pairwise distance over the ground set".
    """

    kind: KernelKind = KernelKind.RBF
    bandwidth: Optional[float] = None

    def __post_init__(self):
        try:
            kind = self.kind if isinstance(self.kind, KernelKind) else KernelKind(str(self.kind).upper())
        except ValueError as exc:
            raise InvalidConfig(str(exc)) from None
        object.__setattr__(self, "kind", kind)
        if self.bandwidth is not None and not (np.isfinite(self.bandwidth) and self.bandwidth > 0):
            raise InvalidConfig(f"bandwidth must be positive, got {self.bandwidth}")

    def to_dict(self) -> dict:
        return {"kind": self.kind.value, "bandwidth": self.bandwidth}

    @classmethod
    def from_dict(cls, doc: dict) -> "KernelConfig":
        bw = doc.get("bandwidth")
        return cls(doc.get("kind", "RBF"), None if bw is None else float(bw))


def _cosine_shifted(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    nx = np.linalg.norm(x, axis=1)
    ny = np.linalg.norm(y, axis=1)
    denom = np.outer(nx, ny)
    with np.errstate(invalid="ignore", divide="ignore"):
        cos = np.where(denom > 0, (x @ y.T) / np.where(denom > 0, denom, 1.0), 0.0)
    return np.clip((1.0 + cos) / 2.0, 0.0, 1.0)


def kernel_value(x, y, k: KernelConfig) -> float:
    """Similarity of two points.  RBF needs an explicit bandwidth here."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    y = np.atleast_1d(np.asarray(y, dtype=float))
    if x.shape != y.shape:
        raise DimensionMismatch(f"points have dimensions {x.shape} and {y.shape}")
    if k.kind is KernelKind.RBF:
        if k.bandwidth is None:
            raise InvalidConfig("kernel_value needs an explicit RBF bandwidth")
        return float(np.exp(-np.sum((x - y) ** 2) / k.bandwidth))
    return float(_cosine_shifted(x[None, :], y[None, :])[0, 0])


def median_bandwidth(d: LabeledDataset) -> float:
    """Median squared pairwise distance over ``T ∪ U`` (falls back to 1.0 when degenerate)."""
    ground = np.vstack([d.targeted, d.untargeted])
    sq = pdist(ground, "sqeuclidean")
    med = float(np.median(sq)) if sq.size else 0.0
    return med if med > 0 else 1.0


def resolve_kernel(d: LabeledDataset, k: KernelConfig) -> KernelConfig:
    if k.kind is KernelKind.RBF and k.bandwidth is None:
        return KernelConfig(KernelKind.RBF, median_bandwidth(d))
    return k


def build_similarity_matrix(d: LabeledDataset, k: KernelConfig = KernelConfig()) -> SimilarityMatrix:
    validate_dataset(d)
    k = resolve_kernel(d, k)
    pts = d.all_points()
    if k.kind is KernelKind.RBF:
        vals = np.exp(-cdist(pts, pts, "sqeuclidean") / k.bandwidth)
    else:
        vals = _cosine_shifted(pts, pts)
    vals = np.clip((vals + vals.T) / 2.0, 0.0, 1.0)
    np.fill_diagonal(vals, 1.0)
    return SimilarityMatrix(vals, d.n_targeted, d.n_untargeted, d.n_query)
