"""Nearest-neighbour gesture classification and the all-splits evaluation.

Each action is reduced to one movement vector. A model is simply the list of
labelled training vectors; a query takes the label of the Euclidean-nearest
reference, with ties going to the lowest reference index.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from typing import Iterable

import numpy as np

from tofsign.features import Centroid, MovementVector


class GestureClass(Enum):
    """Hand movement direction in screen coordinates (``y`` grows downward)."""

    RIGHT = "Right"
    LEFT = "Left"
    UP = "Up"
    DOWN = "Down"

    @property
    def direction(self) -> tuple[int, int]:
        return _DIRECTIONS[self]

    @property
    def index(self) -> int:
        return CLASS_ORDER.index(self)

    @classmethod
    def from_name(cls, name: str) -> "GestureClass":
        try:
            return cls(name)
        except ValueError:
            raise ValueError(f"unknown gesture class {name!r}") from None


CLASS_ORDER = (GestureClass.RIGHT, GestureClass.LEFT, GestureClass.UP, GestureClass.DOWN)

_DIRECTIONS = {
    GestureClass.RIGHT: (1, 0),
    GestureClass.LEFT: (-1, 0),
    GestureClass.UP: (0, -1),
    GestureClass.DOWN: (0, 1),
}


class DatasetError(ValueError):
    pass


@dataclass(frozen=True)
class LabeledSample:
    vector: MovementVector
    label: GestureClass
    set_id: int
    start_centroid: Centroid | None = None
    end_centroid: Centroid | None = None


@dataclass
class GestureDataset:
    samples: list[LabeledSample] = field(default_factory=list)
    num_sets: int = 9

    def __len__(self) -> int:
        return len(self.samples)

    def set_ids(self) -> list[int]:
        return list(range(1, self.num_sets + 1))

    def check_complete(self) -> None:
        """Require exactly one sample per (set, class) pair, for sets 1..num_sets."""
        if self.num_sets < 1:
            raise DatasetError(f"dataset needs at least one set, got {self.num_sets}")
        seen = set()
        for s in self.samples:
            if not 1 <= s.set_id <= self.num_sets:
                raise DatasetError(f"set id {s.set_id} outside 1..{self.num_sets}")
            key = (s.set_id, s.label)
            if key in seen:
                raise DatasetError(f"duplicate sample for set {s.set_id}, class {s.label.value}")
            seen.add(key)
        expected = self.num_sets * len(CLASS_ORDER)
        if len(seen) != expected:
            raise DatasetError(f"dataset has {len(seen)} samples, expected {expected}")


@dataclass(frozen=True)
class NnModel:
    references: tuple[LabeledSample, ...]

    def __post_init__(self):
        if not self.references:
            raise ValueError("a nearest-neighbour model needs at least one reference")


def train(samples: Iterable[LabeledSample]) -> NnModel:
    """Store the training samples; order is kept because it decides ties."""
    samples = tuple(samples)
    if not samples:
        raise ValueError("cannot train on an empty sample list")
    return NnModel(samples)


def nearest_index(model: NnModel, v: MovementVector) -> int:
    """Index of the reference closest to ``v``; lowest index wins ties."""
    best, best_d2 = 0, None
    for i, ref in enumerate(model.references):
        # Squared distance has the same argmin as the Euclidean distance.
        d2 = (v.dx - ref.vector.dx) ** 2 + (v.dy - ref.vector.dy) ** 2
        if best_d2 is None or d2 < best_d2:
            best, best_d2 = i, d2
    return best


def classify(model: NnModel, v: MovementVector) -> GestureClass:
    return model.references[nearest_index(model, v)].label


def euclidean_distance(a: MovementVector, b: MovementVector) -> float:
    return math.hypot(float(a.dx - b.dx), float(a.dy - b.dy))


@dataclass
class EvaluationReport:
    num_splits: int
    train_sets: list[tuple[int, ...]]
    per_split_accuracy: list[float]
    train_sizes: list[int]
    test_sizes: list[int]
    overall_min: float
    overall_mean: float
    # confusion_totals[true][predicted], rows/columns in CLASS_ORDER.
    confusion_totals: list[list[int]]

    def lines(self) -> list[str]:
        out = [
            f"split {','.join(map(str, ids))}: accuracy {acc!r}"
            for ids, acc in zip(self.train_sets, self.per_split_accuracy)
        ]
        out.append(f"min {self.overall_min!r}")
        out.append(f"mean {self.overall_mean!r}")
        return out

    def to_text(self) -> str:
        return "\n".join(self.lines()) + "\n"


def evaluate_all_splits(dataset: GestureDataset, k_train: int = 5) -> EvaluationReport:
    """Train on every ``k_train``-subset of sets and test on the remaining sets.

    Splits are enumerated lexicographically over sorted set-id tuples.
    """
    dataset.check_complete()
    if not 1 <= k_train < dataset.num_sets:
        raise DatasetError(
            f"k_train must be in [1, {dataset.num_sets - 1}] for {dataset.num_sets} sets "
            f"so that test data remains, got {k_train}"
        )
    by_set: dict[int, list[LabeledSample]] = {i: [] for i in dataset.set_ids()}
    for s in dataset.samples:
        by_set[s.set_id].append(s)

    # Every split reuses the same sample pairs, so squared distances are
    # computed once; argmin and tie-breaking match nearest_index exactly.
    position = {id(s): k for k, s in enumerate(dataset.samples)}
    vectors = [s.vector for s in dataset.samples]
    d2 = [[(a.dx - b.dx) ** 2 + (a.dy - b.dy) ** 2 for b in vectors] for a in vectors]

    n = len(CLASS_ORDER)
    confusion = [[0] * n for _ in range(n)]
    train_sets, accuracies, train_sizes, test_sizes = [], [], [], []
    for ids in combinations(dataset.set_ids(), k_train):
        chosen = set(ids)
        model = train(s for i in ids for s in by_set[i])
        ref_rows = [position[id(r)] for r in model.references]
        tests = [s for i in dataset.set_ids() if i not in chosen for s in by_set[i]]
        correct = 0
        for s in tests:
            row = d2[position[id(s)]]
            best = min(range(len(ref_rows)), key=lambda k: (row[ref_rows[k]], k))
            predicted = model.references[best].label
            confusion[s.label.index][predicted.index] += 1
            correct += predicted is s.label
        train_sets.append(ids)
        accuracies.append(correct / len(tests))
        train_sizes.append(len(model.references))
        test_sizes.append(len(tests))
    return EvaluationReport(
        num_splits=len(train_sets),
        train_sets=train_sets,
        per_split_accuracy=accuracies,
        train_sizes=train_sizes,
        test_sizes=test_sizes,
        overall_min=min(accuracies),
        overall_mean=math.fsum(accuracies) / len(accuracies),
        confusion_totals=confusion,
    )


SCATTER_HEADER = ("x", "y", "class", "set_id")
SCATTER_KINDS = ("start", "end", "vector")


def format_number(value) -> str:
    """Shortest round-tripping decimal, never in exponent notation."""
    return np.format_float_positional(float(value), trim="0")


def scatter_rows(dataset: GestureDataset, which: str) -> list[tuple]:
    if which not in SCATTER_KINDS:
        raise ValueError(f"scatter kind must be one of {SCATTER_KINDS}, got {which!r}")
    rows = []
    for s in dataset.samples:
        if which == "vector":
            x, y = s.vector.dx, s.vector.dy
        else:
            c = s.start_centroid if which == "start" else s.end_centroid
            if c is None:
                raise DatasetError(f"sample from set {s.set_id} has no {which} centroid")
            x, y = c.x, c.y
        rows.append((x, y, s.label, s.set_id))
    return rows


def scatter_export(dataset: GestureDataset, which: str = "vector") -> str:
    """CSV text ``x,y,class,set_id`` of start centroids, end centroids or
    movement vectors, one row per sample."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(SCATTER_HEADER)
    for x, y, label, set_id in scatter_rows(dataset, which):
        writer.writerow((format_number(x), format_number(y), label.value, set_id))
    return buf.getvalue()

