"""Directional hand-gesture recognition from depth-frame sequences.

The pipeline is: band-filter each depth frame, split the recording into
actions at blank frames, take the intensity-weighted centre of gravity of
each action's first and last frame, classify the displacement between them
with a nearest-neighbour rule, and write the recognised signs as SiGML.
"""

from tofsign.classify import (
    EvaluationReport,
    GestureClass,
    GestureDataset,
    LabeledSample,
    NnModel,
    classify,
    evaluate_all_splits,
    scatter_export,
    train,
)
from tofsign.depth_io import (
    DepthFrame,
    FrameSequence,
    read_pgm,
    read_sequence,
    write_pgm,
)
from tofsign.features import (
    Centroid,
    MomentSet,
    MovementVector,
    centroid,
    moment,
    movement_vector,
)
from tofsign.preprocess import (
    ActionSegment,
    IntensityBand,
    SegmentationParams,
    band_filter,
    is_blank,
    segment_actions,
)
from tofsign.sigml import SignEntry, class_to_element, emit_sigml, parse_sigml
from tofsign.synthgen import GenParams, generate_action, generate_database

__version__ = "0.1.0"

__all__ = [
    "ActionSegment",
    "Centroid",
    "DepthFrame",
    "EvaluationReport",
    "FrameSequence",
    "GenParams",
    "GestureClass",
    "GestureDataset",
    "IntensityBand",
    "LabeledSample",
    "MomentSet",
    "MovementVector",
    "NnModel",
    "SegmentationParams",
    "SignEntry",
    "band_filter",
    "centroid",
    "class_to_element",
    "classify",
    "emit_sigml",
    "evaluate_all_splits",
    "generate_action",
    "generate_database",
    "is_blank",
    "moment",
    "movement_vector",
    "parse_sigml",
    "read_pgm",
    "read_sequence",
    "scatter_export",
    "segment_actions",
    "train",
    "write_pgm",
]
