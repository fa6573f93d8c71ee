"""Core domain types: datasets, similarity matrices, subsets and SMI configs."""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import (
    DuplicateMember,
    EmptyPartition,
    IndexOutOfRange,
    InvalidConfig,
    NonFiniteCoordinate,
    DimensionMismatch,
)

PARTITIONS = ("targeted", "untargeted", "query")


def _as_points(points) -> np.ndarray:
    arr = np.array(points, dtype=float)
    if arr.ndim == 1:
        # a flat list of scalars is a list of 1-d points; an empty list has no dimension yet
        arr = arr.reshape(len(arr), 1 if len(arr) else 0)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class LabeledDataset:
    """Ground set split into targeted ``T`` and untargeted ``U`` points, plus queries ``Q``.

    Each partition is stored as an ``(n, dim)`` float array.  Construction does
    not validate; call :func:`validate_dataset` (the loaders do).
    """

    targeted: np.ndarray
    untargeted: np.ndarray
    query: np.ndarray

    def __post_init__(self):
        for name in PARTITIONS:
            object.__setattr__(self, name, _as_points(getattr(self, name)))

    @property
    def n_targeted(self) -> int:
        return len(self.targeted)

    @property
    def n_untargeted(self) -> int:
        return len(self.untargeted)

    @property
    def n_query(self) -> int:
        return len(self.query)

    @property
    def n_ground(self) -> int:
        return self.n_targeted + self.n_untargeted

    def all_points(self) -> np.ndarray:
        """Rows in the fixed ``[T | U | Q]`` order used by :class:`SimilarityMatrix`."""
        return np.vstack([self.targeted, self.untargeted, self.query])

    def to_dict(self) -> dict:
        return {name: getattr(self, name).tolist() for name in PARTITIONS}

    @classmethod
    def from_dict(cls, doc: dict) -> "LabeledDataset":
        missing = [k for k in PARTITIONS if k not in doc]
        if missing:
            raise InvalidConfig(f"dataset document missing keys: {missing}")
        d = cls(doc["targeted"], doc["untargeted"], doc["query"])
        validate_dataset(d)
        return d


def validate_dataset(d: LabeledDataset) -> None:
    """Raise if any partition is empty, a coordinate is non-finite, or dimensions differ."""
    for name in PARTITIONS:
        if len(getattr(d, name)) == 0:
            raise EmptyPartition(f"{name} partition is empty")
    dims = {getattr(d, name).shape[1] for name in PARTITIONS}
    if 0 in dims:
        raise EmptyPartition("points must have at least one coordinate")
    for name in PARTITIONS:
        if not np.all(np.isfinite(getattr(d, name))):
            raise NonFiniteCoordinate(f"{name} partition contains a non-finite coordinate")
    if len(dims) != 1:
        raise DimensionMismatch(f"partitions have differing dimensions {sorted(dims)}")


def load_dataset(path) -> LabeledDataset:
    with open(path, encoding="utf-8") as fh:
        return LabeledDataset.from_dict(json.load(fh))


def save_dataset(d: LabeledDataset, path) -> None:
    Path(path).write_text(json.dumps(d.to_dict(), indent=1) + "\n", encoding="utf-8")


@dataclass(frozen=True, eq=False)
class SimilarityMatrix:
    """Dense symmetric similarity matrix over ``T ∪ U ∪ Q`` in ``[T | U | Q]`` row order.

    Ground indices ``0 .. n_ground-1`` address ``T`` then ``U``; query ``k`` lives
    at row ``n_ground + k``.
    """

    values: np.ndarray
    n_targeted: int
    n_untargeted: int
    n_query: int

    def __post_init__(self):
        vals = np.array(self.values, dtype=float)
        n = self.n_targeted + self.n_untargeted + self.n_query
        if vals.shape != (n, n):
            raise DimensionMismatch(f"expected a {n}x{n} matrix, got {vals.shape}")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    @property
    def n_ground(self) -> int:
        return self.n_targeted + self.n_untargeted

    @property
    def targeted_idx(self) -> np.ndarray:
        return np.arange(self.n_targeted)

    @property
    def untargeted_idx(self) -> np.ndarray:
        return np.arange(self.n_targeted, self.n_ground)

    @property
    def query_idx(self) -> np.ndarray:
        return np.arange(self.n_ground, self.n_ground + self.n_query)

    def index(self, partition: str, local: int) -> int:
        """Matrix row of the ``local``-th point of ``partition``."""
        offsets = {"targeted": (0, self.n_targeted),
                   "untargeted": (self.n_targeted, self.n_untargeted),
                   "query": (self.n_ground, self.n_query)}
        if partition not in offsets:
            raise KeyError(partition)
        start, size = offsets[partition]
        if not 0 <= local < size:
            raise IndexOutOfRange(f"{partition}[{local}] out of range (size {size})")
        return start + local

    def lookup(self, i: int, j: int) -> float:
        return float(self.values[i, j])

    def is_targeted(self, i: int) -> bool:
        return 0 <= i < self.n_targeted


@dataclass(frozen=True)
class Subset:
    """Ordered, duplicate-free collection of ground-set indices."""

    members: tuple[int, ...] = field(default_factory=tuple)

    def __post_init__(self):
        members = tuple(int(m) for m in self.members)
        if len(set(members)) != len(members):
            raise DuplicateMember(f"subset has repeated members: {members}")
        object.__setattr__(self, "members", members)

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, item) -> bool:
        return item in self.members

    def with_member(self, j: int) -> "Subset":
        return Subset(self.members + (int(j),))


def as_subset(a: Subset | Iterable[int]) -> Subset:
    return a if isinstance(a, Subset) else Subset(tuple(a))


def check_subset(a: Subset | Iterable[int], n_ground: int) -> Subset:
    a = as_subset(a)
    for m in a:
        if not 0 <= m < n_ground:
            raise IndexOutOfRange(f"index {m} outside ground set of size {n_ground}")
    return a


def subset_partition_counts(a: Subset | Sequence[int], n_targeted: int,
                            n_ground: int) -> tuple[int, int]:
    """Return ``(chi, untargeted_count)`` where ``chi = |A ∩ T|``."""
    a = check_subset(a, n_ground)
    chi = sum(1 for m in a if m < n_targeted)
    return chi, len(a) - chi


class SmiFunction(str, enum.Enum):
    FLVMI = "FLVMI"
    FLQMI = "FLQMI"
    GCMI = "GCMI"
    COM = "COM"


class Concave(str, enum.Enum):
    """Strictly increasing concave functions available to COM."""

    SQRT = "SQRT"
    LOG1P = "LOG1P"

    def __call__(self, x):
        if self is Concave.SQRT:
            return np.sqrt(x)
        return np.log1p(x)


def _coerce(kind, value):
    return value if isinstance(value, kind) else kind(str(value).upper())


@dataclass(frozen=True)
class SmiConfig:
    function: SmiFunction
    eta: float = 1.0
    lam: float = 1.0
    psi: Concave = Concave.SQRT

    def __post_init__(self):
        try:
            object.__setattr__(self, "function", _coerce(SmiFunction, self.function))
            object.__setattr__(self, "psi", _coerce(Concave, self.psi))
        except ValueError as exc:
            raise InvalidConfig(str(exc)) from None
        if not (np.isfinite(self.eta) and self.eta > 0):
            raise InvalidConfig(f"eta must be positive, got {self.eta}")
        if not (np.isfinite(self.lam) and self.lam > 0):
            raise InvalidConfig(f"lambda must be positive, got {self.lam}")

    @property
    def label(self) -> str:
        return self.function.value

    def to_dict(self) -> dict:
        return {"function": self.function.value, "eta": self.eta,
                "lambda": self.lam, "psi": self.psi.value}

    @classmethod
    def from_dict(cls, doc: dict) -> "SmiConfig":
        return cls(doc["function"], eta=float(doc.get("eta", 1.0)),
                   lam=float(doc.get("lambda", 1.0)), psi=doc.get("psi", "SQRT"))
