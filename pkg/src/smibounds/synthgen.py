"""Seeded Gaussian-cluster scenarios and subset sampling with a uniform marginal over chi."""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .data import LabeledDataset, Subset, validate_dataset
from .errors import InsufficientPartition, InvalidConfig


class ClusterRole(str, enum.Enum):
    TARGETED = "TARGETED"
    UNTARGETED = "UNTARGETED"


@dataclass(frozen=True)
class ClusterSpec:
    mean: tuple[float, ...]
    covariance: tuple[float, ...]   # diagonal entries
    count: int
    role: ClusterRole
    query_count: int = 0

    def __post_init__(self):
        object.__setattr__(self, "mean", tuple(float(m) for m in self.mean))
        object.__setattr__(self, "covariance", tuple(float(c) for c in self.covariance))
        try:
            object.__setattr__(self, "role", ClusterRole(str(getattr(self.role, "value", self.role)).upper()))
        except ValueError as exc:
            raise InvalidConfig(str(exc)) from None
        if not self.mean or len(self.mean) != len(self.covariance):
            raise InvalidConfig("mean and covariance diagonal must have the same non-zero length")
        if any(c < 0 or not np.isfinite(c) for c in self.covariance):
            raise InvalidConfig("covariance entries must be finite and non-negative")
        if self.count < 1:
            raise InvalidConfig("cluster count must be at least 1")
        if self.query_count < 0:
            raise InvalidConfig("query_count must be non-negative")
        if self.query_count and self.role is not ClusterRole.TARGETED:
            raise InvalidConfig("queries can only be drawn from targeted clusters")

    def to_dict(self) -> dict:
        return {"mean": list(self.mean), "covariance": list(self.covariance), "count": self.count,
                "role": self.role.value, "query_count": self.query_count}

    @classmethod
    def from_dict(cls, doc: dict) -> "ClusterSpec":
        return cls(doc["mean"], doc["covariance"], int(doc["count"]), doc["role"],
                   int(doc.get("query_count", 0)))


@dataclass(frozen=True)
class ScenarioConfig:
    clusters: tuple[ClusterSpec, ...]
    budget: int = 5
    seed: int = 0
    samples: int = 1000
    name: str = "custom"

    def __post_init__(self):
        object.__setattr__(self, "clusters", tuple(self.clusters))
        roles = {c.role for c in self.clusters}
        if roles != {ClusterRole.TARGETED, ClusterRole.UNTARGETED}:
            raise InvalidConfig("need at least one targeted and one untargeted cluster")
        if sum(c.query_count for c in self.clusters) < 1:
            raise InvalidConfig("at least one query must be drawn")
        if len({len(c.mean) for c in self.clusters}) != 1:
            raise InvalidConfig("clusters have differing dimensions")
        if self.budget < 1:
            raise InvalidConfig("budget must be positive")
        if self.seed < 0:
            raise InvalidConfig("seed must be non-negative")
        if self.samples < 0:
            raise InvalidConfig("samples must be non-negative")

    def with_seed(self, seed: int) -> "ScenarioConfig":
        return ScenarioConfig(self.clusters, self.budget, seed, self.samples, self.name)

    def with_samples(self, samples: int) -> "ScenarioConfig":
        return ScenarioConfig(self.clusters, self.budget, self.seed, samples, self.name)

    def to_dict(self) -> dict:
        return {"name": self.name, "clusters": [c.to_dict() for c in self.clusters],
                "budget": self.budget, "seed": self.seed, "samples": self.samples}

    @classmethod
    def from_dict(cls, doc: dict) -> "ScenarioConfig":
        if "preset" in doc:
            base = preset(doc["preset"])
            return ScenarioConfig(base.clusters, int(doc.get("budget", base.budget)),
                                  int(doc.get("seed", base.seed)), int(doc.get("samples", base.samples)),
                                  base.name)
        return cls(tuple(ClusterSpec.from_dict(c) for c in doc["clusters"]), int(doc.get("budget", 5)),
                   int(doc.get("seed", 0)), int(doc.get("samples", 1000)), doc.get("name", "custom"))


_T_SPREAD = (0.25, 0.25)


def preset(name: str) -> ScenarioConfig:
    """Named scenarios: ``"one-target"`` and ``"two-target"``."""
    base = [ClusterSpec((2.0, 0.0), _T_SPREAD, 40, ClusterRole.TARGETED, 5),
            ClusterSpec((-2.0, 0.0), _T_SPREAD, 40, ClusterRole.UNTARGETED)]
    if name == "one-target":
        return ScenarioConfig(tuple(base), name=name)
    if name == "two-target":
        base.insert(1, ClusterSpec((2.0, 3.0), _T_SPREAD, 40, ClusterRole.TARGETED, 5))
        return ScenarioConfig(tuple(base), name=name)
    raise InvalidConfig(f"unknown preset {name!r}")


PRESETS = ("one-target", "two-target")


def _streams(seed: int):
    data_seq, sample_seq = np.random.SeedSequence(seed).spawn(2)
    return np.random.Generator(np.random.Philox(data_seq)), np.random.Generator(np.random.Philox(sample_seq))


def sample_rng(cfg: ScenarioConfig) -> np.random.Generator:
    """Stream for subset draws, independent of the data stream for the same seed."""
    return _streams(cfg.seed)[1]


def generate_dataset(cfg: ScenarioConfig) -> LabeledDataset:
    rng, _ = _streams(cfg.seed)
    parts = {ClusterRole.TARGETED: [], ClusterRole.UNTARGETED: []}
    queries = []
    for c in cfg.clusters:
        mean = np.array(c.mean)
        scale = np.sqrt(np.array(c.covariance))
        parts[c.role].append(mean + scale * rng.standard_normal((c.count, len(mean))))
        if c.query_count:
            queries.append(mean + scale * rng.standard_normal((c.query_count, len(mean))))
    d = LabeledDataset(np.vstack(parts[ClusterRole.TARGETED]), np.vstack(parts[ClusterRole.UNTARGETED]),
                       np.vstack(queries))
    validate_dataset(d)
    return d


def sample_subset_uniform_chi(d, budget: int, rng: np.random.Generator) -> Subset:
    """Draw chi uniformly from ``0..budget``, then members uniformly from T and U.

    ``d`` is anything with ``n_targeted`` / ``n_untargeted`` (a dataset or a
    similarity matrix).  Ground indices follow the ``[T | U]`` layout.
    """
    n_targeted, n_untargeted = d.n_targeted, d.n_untargeted
    if budget < 1:
        raise InvalidConfig("budget must be positive")
    if n_targeted < budget or n_untargeted < budget:
        raise InsufficientPartition(f"need |T|, |U| >= {budget}, got {n_targeted}, {n_untargeted}")
    chi = int(rng.integers(0, budget + 1))
    t = rng.choice(n_targeted, size=chi, replace=False)
    u = n_targeted + rng.choice(n_untargeted, size=budget - chi, replace=False)
    return Subset(tuple(int(i) for i in np.concatenate([t, u])))


def sample_subsets(d, budget: int, count: int,
                   rng: np.random.Generator) -> list[Subset]:
    return [sample_subset_uniform_chi(d, budget, rng) for _ in range(count)]
