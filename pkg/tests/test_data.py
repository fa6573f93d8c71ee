import json

import numpy as np
import pytest

from smibounds import LabeledDataset, SmiConfig, SmiFunction, Subset, load_dataset, save_dataset
from smibounds import subset_partition_counts, validate_dataset
from smibounds.data import Concave, check_subset
from smibounds.errors import (DimensionMismatch, DuplicateMember, EmptyPartition, IndexOutOfRange,
                              InvalidConfig, NonFiniteCoordinate)


def test_minimal_dataset_is_valid():
    d = LabeledDataset([[0.0]], [[1.0]], [[0.5]])
    validate_dataset(d)
    assert (d.n_targeted, d.n_untargeted, d.n_query, d.n_ground) == (1, 1, 1, 2)


def test_empty_targeted_partition():
    with pytest.raises(EmptyPartition):
        validate_dataset(LabeledDataset([], [[1.0]], [[0.5]]))


def test_nan_coordinate():
    with pytest.raises(NonFiniteCoordinate):
        validate_dataset(LabeledDataset([[0.0, np.nan]], [[1.0, 0.0]], [[0.5, 0.0]]))


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        validate_dataset(LabeledDataset([[0.0, 1.0]], [[1.0]], [[0.5, 0.0]]))


def test_arrays_are_read_only():
    d = LabeledDataset([[0.0]], [[1.0]], [[0.5]])
    with pytest.raises(ValueError):
        d.targeted[0, 0] = 3.0


def test_all_points_order():
    d = LabeledDataset([[0.0]], [[1.0], [2.0]], [[3.0]])
    assert d.all_points().ravel().tolist() == [0.0, 1.0, 2.0, 3.0]


def test_save_load_roundtrip(tmp_path):
    d = LabeledDataset([[0.0, 1.0]], [[1.0, 2.0]], [[0.5, -1.0]])
    path = tmp_path / "d.json"
    save_dataset(d, path)
    e = load_dataset(path)
    for name in ("targeted", "untargeted", "query"):
        assert np.array_equal(getattr(d, name), getattr(e, name))


def test_load_rejects_missing_partition(tmp_path):
    path = tmp_path / "d.json"
    path.write_text(json.dumps({"targeted": [[0.0]], "query": [[1.0]]}))
    with pytest.raises(InvalidConfig):
        load_dataset(path)


@pytest.mark.parametrize("members, expected", [
    ((0, 1, 7), (2, 1)),
    ((5, 6, 7, 8, 9), (0, 5)),
    ((0, 1, 2, 3, 4), (5, 0)),
])
def test_partition_counts(members, expected):
    assert subset_partition_counts(members, n_targeted=5, n_ground=10) == expected


def test_subset_rejects_duplicates():
    with pytest.raises(DuplicateMember):
        Subset((1, 2, 1))


def test_subset_index_range():
    with pytest.raises(IndexOutOfRange):
        check_subset((0, 10), 10)
    with pytest.raises(IndexOutOfRange):
        check_subset((-1,), 10)


def test_smi_config_coercion_and_validation():
    cfg = SmiConfig("flqmi", eta=2.0, psi="log1p")
    assert cfg.function is SmiFunction.FLQMI and cfg.psi is Concave.LOG1P
    assert SmiConfig.from_dict(cfg.to_dict()) == cfg
    with pytest.raises(InvalidConfig):
        SmiConfig("LOGDET")
    with pytest.raises(InvalidConfig):
        SmiConfig(SmiFunction.GCMI, eta=0.0)
    with pytest.raises(InvalidConfig):
        SmiConfig(SmiFunction.GCMI, lam=-1.0)
