"""Distance filtering and action segmentation.

A depth band keeps only the pixels at the hand's distance from the camera;
everything nearer or farther is set to zero. A recording is then cut into
actions at frames where (almost) nothing survives the filter.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from tofsign.depth_io import DepthFrame, FrameSequence

DEFAULT_BAND_LOW = 112
DEFAULT_BAND_HIGH = 128
DEFAULT_MIN_AREA = 50
DEFAULT_MIN_LENGTH = 3


@dataclass(frozen=True)
class IntensityBand:
    """Half-open intensity interval ``[low, high)`` that survives filtering."""

    low: int = DEFAULT_BAND_LOW
    high: int = DEFAULT_BAND_HIGH

    def __post_init__(self):
        if not (0 <= self.low < self.high <= 256):
            raise ValueError(f"invalid intensity band [{self.low}, {self.high})")

    def __contains__(self, value: int) -> bool:
        return self.low <= value < self.high


@dataclass(frozen=True)
class SegmentationParams:
    min_area: int = DEFAULT_MIN_AREA
    min_length: int = DEFAULT_MIN_LENGTH

    def __post_init__(self):
        if self.min_area < 1:
            raise ValueError(f"min_area must be >= 1, got {self.min_area}")
        if self.min_length < 1:
            raise ValueError(f"min_length must be >= 1, got {self.min_length}")


@dataclass(frozen=True)
class ActionSegment:
    """One action: inclusive frame range plus its filtered endpoint frames.

    Inner frames are not copied; they can be recovered from the source
    sequence through the indices.
    """

    start_index: int
    end_index: int
    start_frame: DepthFrame
    end_frame: DepthFrame

    def __post_init__(self):
        if self.start_index > self.end_index:
            raise ValueError(f"segment start {self.start_index} after end {self.end_index}")

    def __len__(self) -> int:
        return self.end_index - self.start_index + 1


def band_filter(frame: DepthFrame, band: IntensityBand = IntensityBand()) -> DepthFrame:
    """Zero every pixel outside ``band``; kept pixels keep their intensity."""
    px = frame.pixels
    keep = (px >= band.low) & (px < band.high)
    return DepthFrame(np.where(keep, px, np.uint8(0)))


def is_blank(frame: DepthFrame, min_area: int = DEFAULT_MIN_AREA) -> bool:
    """True if fewer than ``min_area`` pixels are nonzero."""
    return int(np.count_nonzero(frame.pixels)) < min_area


def find_runs(flags) -> list[tuple[int, int]]:
    """Inclusive ``(start, end)`` index pairs of maximal runs of true values."""
    flags = np.asarray(flags, dtype=bool)
    if flags.size == 0:
        return []
    padded = np.concatenate(([False], flags, [False]))
    edges = np.flatnonzero(padded[1:] != padded[:-1])
    return [(int(s), int(e) - 1) for s, e in zip(edges[::2], edges[1::2])]


def segment_actions(
    seq: FrameSequence,
    band: IntensityBand = IntensityBand(),
    params: SegmentationParams = SegmentationParams(),
) -> list[ActionSegment]:
    """Split a continuous recording into actions separated by blank frames.

    Runs of non-blank frames shorter than ``params.min_length`` are treated
    as noise and dropped.
    """
    if len(seq) == 0:
        raise ValueError("cannot segment an empty frame sequence")
    filtered = [band_filter(f, band) for f in seq]
    active = [not is_blank(f, params.min_area) for f in filtered]
    segments = []
    for start, end in find_runs(active):
        if end - start + 1 < params.min_length:
            continue
        segments.append(ActionSegment(start, end, filtered[start], filtered[end]))
    return segments
