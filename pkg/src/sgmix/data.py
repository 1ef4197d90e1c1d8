"""Data model for group-annotated labeled tabular data and subgroup bookkeeping."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple

import numpy as np


class SubgroupKey(NamedTuple):
    """One (class label, group label) cell of the binary-by-binary partition."""

    y: int
    z: int


ALL_SUBGROUPS: tuple[SubgroupKey, ...] = (
    SubgroupKey(0, 0),
    SubgroupKey(0, 1),
    SubgroupKey(1, 0),
    SubgroupKey(1, 1),
)


@dataclass(frozen=True)
class Sample:
    """A feature vector with its class label y and group label z."""

    x: np.ndarray
    y: int
    z: int


class Dataset:
    """Immutable ordered collection of samples with a fixed feature dimension.

    Features live in a read-only (T, d) float64 matrix; class and group labels
    in read-only int vectors. Augmenters never mutate a Dataset, they return
    new ones, so instances are safe to share across workers.
    """

    __slots__ = ("_x", "_y", "_z")

    def __init__(self, x: np.ndarray, y: np.ndarray, z: np.ndarray):
        x = np.array(x, dtype=np.float64, copy=True, order="C")
        y = np.array(y, dtype=np.int64, copy=True)
        z = np.array(z, dtype=np.int64, copy=True)
        if x.ndim != 2:
            raise ValueError(f"features must form a (T, d) matrix, got shape {x.shape}")
        if y.shape != (x.shape[0],) or z.shape != (x.shape[0],):
            raise ValueError(
                f"label shapes {y.shape}/{z.shape} do not match {x.shape[0]} feature rows"
            )
        for arr in (x, y, z):
            arr.setflags(write=False)
        self._x, self._y, self._z = x, y, z

    @classmethod
    def from_samples(cls, samples: Iterable[Sample], dim: int | None = None) -> "Dataset":
        samples = list(samples)
        if not samples:
            if dim is None:
                raise ValueError("dim is required for an empty dataset")
            return cls.empty(dim)
        if dim is None:
            dim = len(np.atleast_1d(samples[0].x))
        rows = []
        for i, s in enumerate(samples):
            row = np.atleast_1d(np.asarray(s.x, dtype=np.float64))
            if row.shape != (dim,):
                raise ValueError(f"sample {i}: feature length {row.shape} != ({dim},)")
            rows.append(row)
        return cls(
            np.stack(rows),
            np.array([s.y for s in samples]),
            np.array([s.z for s in samples]),
        )

    @classmethod
    def empty(cls, dim: int) -> "Dataset":
        return cls(np.empty((0, dim)), np.empty(0, dtype=np.int64), np.empty(0, dtype=np.int64))

    @property
    def x(self) -> np.ndarray:
        return self._x

    @property
    def y(self) -> np.ndarray:
        return self._y

    @property
    def z(self) -> np.ndarray:
        return self._z

    @property
    def dim(self) -> int:
        return self._x.shape[1]

    def __len__(self) -> int:
        return self._x.shape[0]

    def __getitem__(self, i: int) -> Sample:
        return Sample(x=self._x[i], y=int(self._y[i]), z=int(self._z[i]))

    def __iter__(self) -> Iterator[Sample]:
        return (self[i] for i in range(len(self)))

    def __repr__(self) -> str:
        return f"Dataset(T={len(self)}, d={self.dim})"

    def subset(self, indices: np.ndarray) -> "Dataset":
        idx = np.asarray(indices, dtype=np.int64)
        return Dataset(self._x[idx], self._y[idx], self._z[idx])


def concat(first: Dataset, second: Dataset) -> Dataset:
    """Concatenate two datasets, first's rows before second's."""
    if first.dim != second.dim:
        raise ValueError(f"dimension mismatch: {first.dim} vs {second.dim}")
    return Dataset(
        np.vstack([first.x, second.x]),
        np.concatenate([first.y, second.y]),
        np.concatenate([first.z, second.z]),
    )


def subgroup_counts(dataset: Dataset) -> np.ndarray:
    """Count samples per (y, z) cell; counts[y, z] indexes class then group."""
    counts = np.zeros((2, 2), dtype=np.int64)
    for key in ALL_SUBGROUPS:
        counts[key.y, key.z] = int(np.sum((dataset.y == key.y) & (dataset.z == key.z)))
    return counts


def subgroup_proportions(table: np.ndarray) -> np.ndarray:
    """Normalize a 2x2 subgroup count table by samples per group (column sums).

    Cell (y, z) becomes T_yz / (T_0z + T_1z), so the two class proportions
    within each group column sum to 1.
    """
    table = np.asarray(table, dtype=np.float64)
    if table.shape != (2, 2):
        raise ValueError(f"expected a 2x2 table, got shape {table.shape}")
    group_totals = table.sum(axis=0)
    for z in (0, 1):
        if group_totals[z] <= 0:
            raise ValueError(f"empty group column z={z}")
    return table / group_totals


def subgroup_indices(dataset: Dataset, key: SubgroupKey) -> np.ndarray:
    """Ascending dataset indices of all samples in the given subgroup."""
    key = SubgroupKey(*key)
    return np.nonzero((dataset.y == key.y) & (dataset.z == key.z))[0]


def validate(dataset: Dataset) -> list[str]:
    """Return a list of violations (empty means the dataset is well formed)."""
    violations: list[str] = []
    finite = np.isfinite(dataset.x).all(axis=1)
    for i in np.nonzero(~finite)[0]:
        violations.append(f"sample {i}: non-finite feature value")
    for i in np.nonzero(~np.isin(dataset.y, (0, 1)))[0]:
        violations.append(f"sample {i}: class label {dataset.y[i]} outside {{0, 1}}")
    for i in np.nonzero(~np.isin(dataset.z, (0, 1)))[0]:
        violations.append(f"sample {i}: group label {dataset.z[i]} outside {{0, 1}}")
    violations.sort(key=lambda msg: int(msg.split()[1].rstrip(":")))
    return violations
