"""Subgroup mixup augmentation and the baseline augmenters.

The central routine, :func:`fsgm_augment`, draws a sample from a chosen
source subgroup, finds its k nearest neighbors inside a chosen target
subgroup, and emits convex combinations of the pair sharing one Beta-drawn
mixing weight per source draw. Class and group labels of the new samples are
the indicator of the interpolated label reaching 1/2, so each new point
inherits the labels of whichever parent it lies closer to.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .data import Dataset, SubgroupKey, concat, subgroup_indices
from .neighbors import knn_in_subgroup
from .rng import RngStream, beta_sample, uniform_index


class MixPair(NamedTuple):
    """Source and target subgroups for one interpolation direction."""

    source: SubgroupKey
    target: SubgroupKey


def make_pair(source, target) -> MixPair:
    return MixPair(SubgroupKey(*source), SubgroupKey(*target))


@dataclass(frozen=True)
class FsgmConfig:
    """Settings for one subgroup-mixup run.

    pairs:       interpolation directions, scheduled round-robin
    k:           neighbors per source draw
    alpha:       Beta(alpha, alpha) shape for the mixing weight
    new_count:   exact number of new samples to produce
    seed:        stream seed; same seed and config give bit-identical output
    standardize: compute neighbor distances in z-scored feature space
    """

    pairs: tuple[MixPair, ...]
    new_count: int
    k: int = 5
    alpha: float = 1.0
    seed: int = 0
    standardize: bool = False

    def __post_init__(self):
        pairs = tuple(make_pair(*p) for p in self.pairs)
        object.__setattr__(self, "pairs", pairs)
        if not pairs:
            raise ValueError("at least one source/target pair is required")
        if len(set(pairs)) != len(pairs):
            raise ValueError("pairs must be distinct")
        for p in pairs:
            if p.source == p.target:
                raise ValueError(f"source and target subgroup coincide: {p}")
        if self.k < 1:
            raise ValueError(f"k must be >= 1, got {self.k}")
        if not self.alpha > 0:
            raise ValueError(f"alpha must be positive, got {self.alpha}")
        if self.new_count < 1:
            raise ValueError(f"new_count must be >= 1, got {self.new_count}")


@dataclass(frozen=True)
class AugmentationReport:
    """New samples plus bookkeeping of how they were produced."""

    produced: Dataset
    per_pair_counts: dict[MixPair, int] = field(default_factory=dict)
    lambda_draws: int = 0


def mix_features(x_s: np.ndarray, x_t: np.ndarray, lam: float) -> np.ndarray:
    """Coordinate-wise convex combination (1-lam)*x_s + lam*x_t."""
    if not 0.0 <= lam <= 1.0:
        raise ValueError(f"mixing weight must lie in [0, 1], got {lam}")
    x_s = np.asarray(x_s, dtype=np.float64)
    x_t = np.asarray(x_t, dtype=np.float64)
    if x_s.shape != x_t.shape:
        raise ValueError(f"length mismatch: {x_s.shape} vs {x_t.shape}")
    return (1.0 - lam) * x_s + lam * x_t


def mix_label(y_s: int, y_t: int, lam: float) -> int:
    """Indicator of the interpolated label reaching 1/2 (inclusive)."""
    if not 0.0 <= lam <= 1.0:
        raise ValueError(f"mixing weight must lie in [0, 1], got {lam}")
    return int((1.0 - lam) * y_s + lam * y_t >= 0.5)


def mix_group(z_s: int, z_t: int, lam: float) -> int:
    """Same indicator rule as mix_label, applied to group labels."""
    return mix_label(z_s, z_t, lam)


def fsgm_augment(dataset: Dataset, config: FsgmConfig) -> AugmentationReport:
    """Produce exactly config.new_count subgroup-mixup samples.

    Each batch: pick the next pair round-robin, draw a uniform source sample,
    find its k nearest target-subgroup neighbors, draw one mixing weight, and
    emit k mixed samples sharing that weight. The loop stops once new_count is
    reached; the final batch is truncated so the count is exact.
    """
    source_members = {}
    for pair in config.pairs:
        src = subgroup_indices(dataset, pair.source)
        if src.size == 0:
            raise ValueError(
                f"empty source subgroup (y={pair.source.y}, z={pair.source.z})"
            )
        tgt = subgroup_indices(dataset, pair.target)
        if tgt.size < config.k:
            raise ValueError(
                f"insufficient target subgroup (y={pair.target.y}, z={pair.target.z}): "
                f"has {tgt.size} members, need k={config.k}"
            )
        source_members[pair] = src

    stream = RngStream(config.seed)
    xs, ys, zs, pair_of_row = [], [], [], []
    batches = 0
    while len(xs) < config.new_count:
        pair = config.pairs[batches % len(config.pairs)]
        i = uniform_index(stream, source_members[pair])
        neighbors = knn_in_subgroup(
            dataset,
            dataset.x[i],
            pair.target,
            config.k,
            exclude=i,
            standardize=config.standardize,
        )
        lam = beta_sample(stream, config.alpha)
        batches += 1
        for j in neighbors.indices:
            xs.append(mix_features(dataset.x[i], dataset.x[j], lam))
            ys.append(mix_label(int(dataset.y[i]), int(dataset.y[j]), lam))
            zs.append(mix_group(int(dataset.z[i]), int(dataset.z[j]), lam))
            pair_of_row.append(pair)

    xs = xs[: config.new_count]
    ys = ys[: config.new_count]
    zs = zs[: config.new_count]
    pair_of_row = pair_of_row[: config.new_count]
    per_pair = {pair: 0 for pair in config.pairs}
    for pair in pair_of_row:
        per_pair[pair] += 1
    produced = Dataset(np.stack(xs), np.array(ys), np.array(zs))
    return AugmentationReport(produced=produced, per_pair_counts=per_pair, lambda_draws=batches)


def vanilla_mixup(dataset: Dataset, new_count: int, alpha: float, seed: int) -> Dataset:
    """Mixup between uniformly drawn sample pairs from different classes.

    Every emission draws its own pair and its own mixing weight; group labels
    are mixed by the same indicator rule as class labels.
    """
    if new_count < 1:
        raise ValueError(f"new_count must be >= 1, got {new_count}")
    by_class = {c: np.nonzero(dataset.y == c)[0] for c in (0, 1)}
    for c in (0, 1):
        if by_class[c].size == 0:
            raise ValueError(f"class {c} is empty; cross-class mixup needs both classes")
    stream = RngStream(seed)
    everyone = np.arange(len(dataset))
    xs, ys, zs = [], [], []
    for _ in range(new_count):
        i = uniform_index(stream, everyone)
        j = uniform_index(stream, by_class[1 - int(dataset.y[i])])
        lam = beta_sample(stream, alpha)
        xs.append(mix_features(dataset.x[i], dataset.x[j], lam))
        ys.append(mix_label(int(dataset.y[i]), int(dataset.y[j]), lam))
        zs.append(mix_group(int(dataset.z[i]), int(dataset.z[j]), lam))
    return Dataset(np.stack(xs), np.array(ys), np.array(zs))


def group_swap_augment(dataset: Dataset, new_count: int, seed: int) -> Dataset:
    """Uniform-with-replacement copies of existing samples with the group flipped.

    Copies keep their features and class label; only z becomes 1 - z.
    """
    if len(dataset) == 0:
        raise ValueError("cannot augment an empty dataset")
    if new_count < 1:
        raise ValueError(f"new_count must be >= 1, got {new_count}")
    stream = RngStream(seed)
    picks = uniform_index(stream, np.arange(len(dataset)), size=new_count)
    return Dataset(dataset.x[picks], dataset.y[picks], 1 - dataset.z[picks])


def bootstrap(dataset: Dataset, total_size: int, seed: int) -> Dataset:
    """Original samples plus uniform-with-replacement copies up to total_size."""
    if len(dataset) == 0:
        raise ValueError("cannot bootstrap an empty dataset")
    if total_size < len(dataset):
        raise ValueError(
            f"total_size {total_size} is smaller than the dataset ({len(dataset)})"
        )
    extra = total_size - len(dataset)
    if extra == 0:
        return dataset
    stream = RngStream(seed)
    picks = uniform_index(stream, np.arange(len(dataset)), size=extra)
    copies = Dataset(dataset.x[picks], dataset.y[picks], dataset.z[picks])
    return concat(dataset, copies)
