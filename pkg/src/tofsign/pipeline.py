"""Glue between the stages, plus the ground-truth and model CSV files.

Ground truth: ``segment_index,set_id,class`` (segment indices from 0, in
recording order). Model: ``dx,dy,class,set_id``, one row per reference.
"""

from __future__ import annotations

import csv
import os
from dataclasses import dataclass

from tofsign.classify import (
    GestureClass,
    GestureDataset,
    LabeledSample,
    NnModel,
    classify,
    format_number,
    train,
)
from tofsign.depth_io import FrameSequence
from tofsign.features import Centroid, EmptyFrameError, MovementVector, action_features
from tofsign.preprocess import (
    ActionSegment,
    IntensityBand,
    SegmentationParams,
    segment_actions,
)

TRUTH_HEADER = ("segment_index", "set_id", "class")
MODEL_HEADER = ("dx", "dy", "class", "set_id")


class PipelineError(ValueError):
    pass


@dataclass(frozen=True)
class ActionFeatures:
    segment: ActionSegment
    start_centroid: Centroid
    end_centroid: Centroid
    vector: MovementVector


@dataclass(frozen=True)
class TruthRow:
    segment_index: int
    set_id: int
    label: GestureClass


def extract_actions(
    seq: FrameSequence,
    band: IntensityBand = IntensityBand(),
    params: SegmentationParams = SegmentationParams(),
) -> list[ActionFeatures]:
    out = []
    for i, seg in enumerate(segment_actions(seq, band, params)):
        try:
            a, b, v = action_features(seg.start_frame, seg.end_frame)
        except EmptyFrameError as exc:
            raise PipelineError(f"segment {i} (frames {seg.start_index}-{seg.end_index}): {exc}") from exc
        out.append(ActionFeatures(seg, a, b, v))
    return out


def recognize(seq: FrameSequence, model: NnModel, band=IntensityBand(), params=SegmentationParams()):
    """Classes of the actions found in ``seq``, in recording order."""
    actions = extract_actions(seq, band, params)
    return actions, [classify(model, a.vector) for a in actions]


def _read_csv(path, header: tuple[str, ...], what: str) -> list[dict[str, str]]:
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or tuple(reader.fieldnames) != header:
            raise PipelineError(f"{what} {path} must have header {','.join(header)}, got {reader.fieldnames}")
        return list(reader)


def read_truth(path: str | os.PathLike) -> list[TruthRow]:
    rows = []
    for n, rec in enumerate(_read_csv(path, TRUTH_HEADER, "truth file"), start=2):
        try:
            row = TruthRow(int(rec["segment_index"]), int(rec["set_id"]), GestureClass.from_name(rec["class"]))
        except (TypeError, ValueError) as exc:
            raise PipelineError(f"truth file {path}, line {n}: {exc}") from exc
        rows.append(row)
    if [r.segment_index for r in rows] != list(range(len(rows))):
        raise PipelineError(f"truth file {path} must list segment indices 0..{len(rows) - 1} in order")
    return rows


def write_truth(path: str | os.PathLike, dataset: GestureDataset) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(TRUTH_HEADER)
        for i, s in enumerate(dataset.samples):
            writer.writerow((i, s.set_id, s.label.value))


def dataset_from_truth(actions: list[ActionFeatures], truth: list[TruthRow]) -> GestureDataset:
    if len(actions) != len(truth):
        raise PipelineError(f"found {len(actions)} segments but the truth file lists {len(truth)}")
    samples = [
        LabeledSample(a.vector, t.label, t.set_id, a.start_centroid, a.end_centroid)
        for a, t in zip(actions, truth)
    ]
    num_sets = max((t.set_id for t in truth), default=0)
    return GestureDataset(samples, num_sets)


def load_dataset(seq: FrameSequence, truth_path, band=IntensityBand(), params=SegmentationParams()) -> GestureDataset:
    return dataset_from_truth(extract_actions(seq, band, params), read_truth(truth_path))


def write_model(path: str | os.PathLike, model: NnModel) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(MODEL_HEADER)
        for r in model.references:
            writer.writerow((format_number(r.vector.dx), format_number(r.vector.dy), r.label.value, r.set_id))


def read_model(path: str | os.PathLike) -> NnModel:
    refs = []
    for n, rec in enumerate(_read_csv(path, MODEL_HEADER, "model file"), start=2):
        try:
            vec = MovementVector(float(rec["dx"]), float(rec["dy"]))
            refs.append(LabeledSample(vec, GestureClass.from_name(rec["class"]), int(rec["set_id"])))
        except (TypeError, ValueError) as exc:
            raise PipelineError(f"model file {path}, line {n}: {exc}") from exc
    if not refs:
        raise PipelineError(f"model file {path} has no references")
    return train(refs)


def model_from_dataset(dataset: GestureDataset) -> NnModel:
    return train(dataset.samples)
