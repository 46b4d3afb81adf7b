"""Deterministic synthetic depth-gesture recordings.

A recording holds ``num_sets`` sets of the four movements, separated by blank
frames. The hand is a filled disk (or square) whose intensity lies inside the
depth band and falls off radially from a per-action peak, drawn over static
clutter that lies entirely outside the band: a far-wall gradient, the
signer's torso just behind the hand, and a near desk edge in front of it.

Set positions are spread across the screen, so start and end centroids of
different classes overlap while the movement vectors stay clustered. A
fraction of actions start partly outside the frame, so the first frame only
shows part of the hand.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from tofsign.classify import CLASS_ORDER, GestureClass, GestureDataset, LabeledSample
from tofsign.depth_io import DepthFrame, FrameSequence
from tofsign.features import Centroid, MovementVector
from tofsign.preprocess import IntensityBand

HAND_SHAPES = ("disk", "square")


class GenerationError(ValueError):
    pass


@dataclass(frozen=True)
class GenParams:
    seed: int = 0
    frame_width: int = 640
    frame_height: int = 480
    hand_radius: int = 30
    travel_distance: int = 120
    travel_jitter: int = 20
    position_jitter: int = 150
    frames_per_action: int = 6
    blank_frames_between: int = 2
    band: IntensityBand = field(default_factory=IntensityBand)
    clipped_fraction: float = 0.1
    hand_shape: str = "disk"
    # Clipped hands keep at least this many visible pixels, so they are never
    # mistaken for blank frames by the default segmentation threshold.
    min_visible_area: int = 50
    num_sets: int = 9

    def __post_init__(self):
        errors = []
        if self.frame_width < 1 or self.frame_height < 1:
            errors.append("frame dimensions must be positive")
        if self.hand_radius < 1:
            errors.append("hand_radius must be >= 1")
        if self.travel_distance <= 0:
            errors.append("travel_distance must be positive")
        if not 0 <= 2 * self.travel_jitter < self.travel_distance:
            errors.append("travel_jitter must satisfy 0 <= travel_jitter < travel_distance / 2")
        if self.position_jitter < 0:
            errors.append("position_jitter must be non-negative")
        if self.frames_per_action < 2:
            errors.append("frames_per_action must be >= 2")
        if self.blank_frames_between < 1:
            errors.append("blank_frames_between must be >= 1")
        if not 0.0 <= self.clipped_fraction <= 1.0:
            errors.append("clipped_fraction must lie in [0, 1]")
        if self.hand_shape not in HAND_SHAPES:
            errors.append(f"hand_shape must be one of {HAND_SHAPES}")
        if self.num_sets < 1:
            errors.append("num_sets must be >= 1")
        if self.min_visible_area < 1:
            errors.append("min_visible_area must be >= 1")
        if self.band.high - 1 < 1:
            errors.append("band leaves no nonzero intensity for the hand")
        span = self.travel_distance + self.travel_jitter + 2 * self.hand_radius
        if span >= min(self.frame_width, self.frame_height):
            errors.append(f"a {span}px gesture does not fit a {self.frame_width}x{self.frame_height} frame")
        if self.clipped_fraction > 0 and (
            2 * (self.travel_distance - self.travel_jitter - self.hand_radius) <= self.travel_jitter
        ):
            # A clipped start frame pulls the centroid up to one radius forward;
            # the on-axis motion must still dominate the lateral drift.
            errors.append("clipped actions need travel_distance - travel_jitter - hand_radius > travel_jitter / 2")
        if errors:
            raise GenerationError("; ".join(errors))

    @classmethod
    def tiny(cls, **overrides) -> "GenParams":
        """64x48 preset with the default geometry scaled down tenfold."""
        values = dict(
            frame_width=64,
            frame_height=48,
            hand_radius=6,
            travel_distance=12,
            travel_jitter=2,
            position_jitter=15,
        )
        values.update(overrides)
        return cls(**values)

    @property
    def num_actions(self) -> int:
        return self.num_sets * len(CLASS_ORDER)

    @property
    def num_frames(self) -> int:
        return self.num_actions * self.frames_per_action + (self.num_actions + 1) * self.blank_frames_between


def render_background(params: GenParams) -> np.ndarray:
    """Static clutter; every nonzero pixel lies outside ``params.band``."""
    w, h = params.frame_width, params.frame_height
    low, high = params.band.low, params.band.high
    bg = np.zeros((h, w), dtype=np.uint8)
    if low >= 2:
        # Far wall, brighter towards the bottom as the floor approaches.
        lo, hi = max(1, low // 5), max(1, (low * 3) // 5)
        bg[:] = np.linspace(lo, hi, h).round().astype(np.uint8)[:, None]
        yy, xx = np.mgrid[0:h, 0:w]
        torso = ((xx - w / 2) / (0.22 * w)) ** 2 + ((yy - 0.8 * h) / (0.4 * h)) ** 2 <= 1.0
        bg[torso] = low - 1
    if high <= 255:
        desk_rows = max(1, h // 12)
        top = min(255, high + 40)
        bg[h - desk_rows :] = np.linspace(high, top, desk_rows).round().astype(np.uint8)[:, None]
    return bg


def hand_stamp(params: GenParams, peak: int) -> np.ndarray:
    """Hand intensity patch of side ``2r + 1``, zero outside the shape.

    Intensity depends only on the squared distance from the centre, so the
    patch is mirror-symmetric and its centroid is exactly the centre pixel.
    """
    r = params.hand_radius
    low = max(params.band.low, 1)
    d = np.arange(-r, r + 1)
    d2 = d[None, :] ** 2 + d[:, None] ** 2
    if params.hand_shape == "disk":
        inside, scale = d2 <= r * r, r * r
    else:
        inside, scale = np.ones_like(d2, dtype=bool), 2 * r * r
    values = peak - ((peak - low) * d2) // scale
    return np.where(inside, values, 0).astype(np.uint8)


def paste(canvas: np.ndarray, stamp: np.ndarray, center: tuple[int, int]) -> None:
    """Overwrite ``canvas`` with the nonzero part of ``stamp`` centred at
    ``(x, y)``, cropping at the frame edges."""
    h, w = canvas.shape
    r = stamp.shape[0] // 2
    cx, cy = center
    x0, x1 = max(cx - r, 0), min(cx + r + 1, w)
    y0, y1 = max(cy - r, 0), min(cy + r + 1, h)
    if x0 >= x1 or y0 >= y1:
        return
    patch = stamp[y0 - (cy - r) : y1 - (cy - r), x0 - (cx - r) : x1 - (cx - r)]
    region = canvas[y0:y1, x0:x1]
    np.copyto(region, patch, where=patch > 0)


def visible_area(params: GenParams, center: tuple[int, int]) -> int:
    canvas = np.zeros((params.frame_height, params.frame_width), dtype=np.uint8)
    paste(canvas, hand_stamp(params, params.band.high - 1), center)
    return int(np.count_nonzero(canvas))


@dataclass(frozen=True)
class ActionPlan:
    label: GestureClass
    start: tuple[int, int]
    displacement: tuple[int, int]
    peak: int

    @property
    def end(self) -> tuple[int, int]:
        return (self.start[0] + self.displacement[0], self.start[1] + self.displacement[1])

    def center_at(self, t: int, n: int) -> tuple[int, int]:
        return (
            self.start[0] + round(self.displacement[0] * t / (n - 1)),
            self.start[1] + round(self.displacement[1] * t / (n - 1)),
        )


def draw_motion(label: GestureClass, params: GenParams, rng: np.random.Generator) -> tuple[tuple[int, int], int]:
    """Random displacement (on-axis travel plus lateral drift) and peak intensity."""
    j = params.travel_jitter
    on = int(round(params.travel_distance + rng.uniform(-j, j)))
    off = int(round(rng.uniform(-j / 2, j / 2)))
    ux, uy = label.direction
    # Lateral axis is the perpendicular (-uy, ux).
    disp = (on * ux - off * uy, on * uy + off * ux)
    low, high = max(params.band.low, 1), params.band.high
    peak = int(rng.integers(max(low, (low + high) // 2), high))
    return disp, peak


def render_action(plan: ActionPlan, params: GenParams, background: np.ndarray | None = None) -> FrameSequence:
    if background is None:
        background = render_background(params)
    stamp = hand_stamp(params, plan.peak)
    n = params.frames_per_action
    frames = []
    for t in range(n):
        canvas = background.copy()
        paste(canvas, stamp, plan.center_at(t, n))
        frames.append(DepthFrame(canvas))
    for name, center in (("start", plan.start), ("end", plan.end)):
        if visible_area(params, center) == 0:
            raise GenerationError(f"hand is fully outside the frame at the {name} of the action")
    return FrameSequence(frames)


def generate_action(
    label: GestureClass,
    start: tuple[int, int],
    params: GenParams,
    rng: np.random.Generator,
    background: np.ndarray | None = None,
) -> FrameSequence:
    """Render one action moving from ``start`` in the direction of ``label``.

    ``start`` is the hand centre ``(x, y)`` in the first frame; it may lie
    near or past an edge, in which case the hand is cropped.
    """
    disp, peak = draw_motion(label, params, rng)
    plan = ActionPlan(label, (int(start[0]), int(start[1])), disp, peak)
    return render_action(plan, params, background)


def _clamp_inside(start: int, delta: int, size: int, r: int) -> int:
    # Shift start so both start and start + delta keep the hand fully visible.
    lo = r - min(0, delta)
    hi = size - 1 - r - max(0, delta)
    return min(max(start, lo), hi)


def _clipped_start(plan_start, disp, label: GestureClass, params: GenParams, rng) -> tuple[int, int]:
    """Put the hand centre at or just past the edge it moves away from."""
    r = params.hand_radius
    w, h = params.frame_width, params.frame_height
    ux, uy = label.direction
    inset = int(round(r * rng.uniform(-0.25, 0.0)))
    x, y = plan_start
    if ux:
        y = _clamp_inside(y, disp[1], h, r)
        edge = (lambda k: k) if ux > 0 else (lambda k: w - 1 - k)
        while visible_area(params, (edge(inset), y)) < params.min_visible_area:
            inset += 1
        x = edge(inset)
    else:
        x = _clamp_inside(x, disp[0], w, r)
        edge = (lambda k: k) if uy > 0 else (lambda k: h - 1 - k)
        while visible_area(params, (x, edge(inset))) < params.min_visible_area:
            inset += 1
        y = edge(inset)
    return x, y


def plan_database(params: GenParams) -> list[tuple[int, ActionPlan]]:
    """``(set_id, plan)`` for every action, in recording order."""
    rng = np.random.default_rng(params.seed)
    n = params.num_actions
    n_clipped = int(round(params.clipped_fraction * n))
    clipped = set(rng.choice(n, size=n_clipped, replace=False).tolist()) if n_clipped else set()
    r = params.hand_radius
    pj = params.position_jitter
    cx, cy = params.frame_width // 2, params.frame_height // 2
    plans = []
    for set_id in range(1, params.num_sets + 1):
        base = (cx + int(rng.integers(-pj, pj + 1)), cy + int(rng.integers(-pj, pj + 1)))
        for label in CLASS_ORDER:
            disp, peak = draw_motion(label, params, rng)
            start = (
                base[0] + int(rng.integers(-(r // 2), r // 2 + 1)),
                base[1] + int(rng.integers(-(r // 2), r // 2 + 1)),
            )
            if len(plans) in clipped:
                start = _clipped_start(start, disp, label, params, rng)
            else:
                start = (
                    _clamp_inside(start[0], disp[0], params.frame_width, r),
                    _clamp_inside(start[1], disp[1], params.frame_height, r),
                )
            plans.append((set_id, ActionPlan(label, start, disp, peak)))
    return plans


def generate_database(params: GenParams = GenParams()) -> tuple[FrameSequence, GestureDataset]:
    """One continuous recording plus ground truth in recording order.

    Ground-truth vectors and centroids are the nominal hand centres; for
    cropped hands the measured centroid differs from them.
    """
    background = render_background(params)
    blank = DepthFrame(background)
    frames = [blank] * params.blank_frames_between
    samples = []
    for set_id, plan in plan_database(params):
        frames.extend(render_action(plan, params, background))
        frames.extend([blank] * params.blank_frames_between)
        start, end = Centroid(*plan.start), Centroid(*plan.end)
        samples.append(LabeledSample(MovementVector(*plan.displacement), plan.label, set_id, start, end))
    return FrameSequence(frames), GestureDataset(samples, params.num_sets)
