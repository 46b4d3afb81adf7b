"""Grey-value moments, centre of gravity and the movement-vector feature.

Moments are exact integers. Centroids and movement vectors are kept as
:class:`fractions.Fraction` so that translating or rescaling an image moves
its features by exactly the expected amount; call ``float()`` on the
coordinates when a machine float is wanted.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Real

import numpy as np

from tofsign.depth_io import DepthFrame

_INT64_LIMIT = 2**63 - 1


class EmptyFrameError(ValueError):
    """The frame has no mass (every pixel is zero), so it has no centroid."""


def _as_array(image) -> np.ndarray:
    # Tests feed unbounded integer arrays to check scale invariance without
    # 8-bit clipping, so plain arrays are accepted alongside DepthFrame.
    if isinstance(image, DepthFrame):
        return image.pixels
    arr = np.asarray(image)
    if arr.ndim != 2:
        raise ValueError(f"image must be 2-D, got shape {arr.shape}")
    if not (np.issubdtype(arr.dtype, np.integer) or arr.dtype == object):
        raise ValueError(f"image must hold integers, got {arr.dtype}")
    return arr


def moment(image, p: int, q: int) -> int:
    """Raw moment ``sum_x sum_y x**p * y**q * I(x, y)`` as an exact integer.

    ``x`` is the column index and ``y`` the row index.
    """
    if p < 0 or q < 0:
        raise ValueError("moment orders must be non-negative")
    arr = _as_array(image)
    h, w = arr.shape
    if arr.dtype != object and arr.size:
        peak = int(np.abs(arr).max())
        bound = peak * arr.size * max(w - 1, 1) ** p * max(h - 1, 1) ** q
        if bound <= _INT64_LIMIT:
            a = arr.astype(np.int64, copy=False)
            xs = np.arange(w, dtype=np.int64) ** p
            ys = np.arange(h, dtype=np.int64) ** q
            return int(ys @ (a @ xs))
    # Python-int fallback for values or orders that could overflow int64.
    a = arr.astype(object)
    xs = np.array([x**p for x in range(w)], dtype=object)
    ys = np.array([y**q for y in range(h)], dtype=object)
    return int(ys.dot(a.dot(xs)))


@dataclass(frozen=True)
class MomentSet:
    m00: int
    m10: int
    m01: int

    def __post_init__(self):
        if self.m00 < 0:
            raise ValueError("m00 must be non-negative")
        if self.m00 == 0 and (self.m10 or self.m01):
            raise ValueError("a massless image has zero first-order moments")


def moments(image) -> MomentSet:
    return MomentSet(moment(image, 0, 0), moment(image, 1, 0), moment(image, 0, 1))


@dataclass(frozen=True)
class Centroid:
    x: Real
    y: Real

    def as_floats(self) -> tuple[float, float]:
        return float(self.x), float(self.y)


@dataclass(frozen=True)
class MovementVector:
    dx: Real
    dy: Real

    def as_floats(self) -> tuple[float, float]:
        return float(self.dx), float(self.dy)


def centroid(image) -> Centroid:
    """Intensity-weighted centre of gravity ``(m10 / m00, m01 / m00)``."""
    m = moments(image)
    if m.m00 == 0:
        raise EmptyFrameError("frame has no nonzero pixels")
    return Centroid(Fraction(m.m10, m.m00), Fraction(m.m01, m.m00))


def movement_vector(start: Centroid, end: Centroid) -> MovementVector:
    return MovementVector(end.x - start.x, end.y - start.y)


def action_features(start_frame, end_frame) -> tuple[Centroid, Centroid, MovementVector]:
    """Centroids of an action's endpoint frames and the displacement between them."""
    a = centroid(start_frame)
    b = centroid(end_frame)
    return a, b, movement_vector(a, b)
