import numpy as np
import pytest
from conftest import frame_from_points
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from tofsign.depth_io import DepthFrame, FrameSequence
from tofsign.preprocess import (
    ActionSegment,
    IntensityBand,
    SegmentationParams,
    band_filter,
    find_runs,
    is_blank,
    segment_actions,
)


def test_default_band_boundaries():
    f = DepthFrame(np.array([[111, 112, 127, 128]], dtype=np.uint8))
    assert band_filter(f).pixels.tolist() == [[0, 112, 127, 0]]


def test_band_filter_all_zero():
    f = DepthFrame.blank(7, 5)
    assert band_filter(f) == f


@pytest.mark.parametrize("low, high", [(-1, 10), (10, 10), (20, 10), (0, 257)])
def test_band_validation(low, high):
    with pytest.raises(ValueError):
        IntensityBand(low, high)


def test_full_band_keeps_everything(rng):
    f = DepthFrame(rng.integers(0, 256, (6, 6), dtype=np.uint8))
    assert band_filter(f, IntensityBand(0, 256)) == f


bands = st.tuples(st.integers(0, 255), st.integers(1, 256)).filter(lambda b: b[0] < b[1]).map(
    lambda b: IntensityBand(*b)
)


@settings(max_examples=200, deadline=None)
@given(arrays(np.uint8, st.tuples(st.integers(1, 20), st.integers(1, 20))), bands)
def test_band_filter_properties(arr, band):
    f = DepthFrame(arr)
    g = band_filter(f, band)
    assert g.shape == f.shape
    assert band_filter(g, band) == g
    kept = g.pixels != 0
    assert np.array_equal(g.pixels[kept], f.pixels[kept])
    assert np.all((g.pixels[kept] >= band.low) & (g.pixels[kept] < band.high))
    inside = (f.pixels >= band.low) & (f.pixels < band.high) & (f.pixels != 0)
    assert np.array_equal(kept, inside)


def test_is_blank_boundaries():
    assert is_blank(DepthFrame.blank(10, 10), 50)
    pts50 = {(i % 10, i // 10): 120 for i in range(50)}
    pts49 = {(i % 10, i // 10): 120 for i in range(49)}
    assert not is_blank(frame_from_points(10, 10, pts50), 50)
    assert is_blank(frame_from_points(10, 10, pts49), 50)


def test_segmentation_params_validation():
    with pytest.raises(ValueError):
        SegmentationParams(min_area=0)
    with pytest.raises(ValueError):
        SegmentationParams(min_length=0)


def _active(w=4, h=4):
    return DepthFrame(np.full((h, w), 120, dtype=np.uint8))


def _blank(w=4, h=4):
    # Out-of-band clutter only, which the filter removes.
    return DepthFrame(np.full((h, w), 200, dtype=np.uint8))


SMALL = SegmentationParams(min_area=1, min_length=3)


def test_two_segments():
    frames = [_blank()] + [_active()] * 5 + [_blank()] + [_active()] * 4 + [_blank()]
    segs = segment_actions(FrameSequence(frames), params=SMALL)
    assert [(s.start_index, s.end_index) for s in segs] == [(1, 5), (7, 10)]
    assert segs[0].start_frame == band_filter(frames[1])
    assert len(segs[1]) == 4


def test_endpoint_frames_are_filtered():
    first = DepthFrame(np.array([[120, 200], [5, 0]], dtype=np.uint8))
    last = DepthFrame(np.array([[0, 0], [113, 128]], dtype=np.uint8))
    seq = FrameSequence([first, _active(2, 2), last])
    (seg,) = segment_actions(seq, params=SMALL)
    assert seg.start_frame.pixels.tolist() == [[120, 0], [0, 0]]
    assert seg.end_frame.pixels.tolist() == [[0, 0], [113, 0]]


def test_all_blank_sequence():
    assert segment_actions(FrameSequence([_blank()] * 6), params=SMALL) == []


def test_short_runs_are_dropped():
    frames = [_active(), _active(), _blank(), _active(), _active(), _active()]
    segs = segment_actions(FrameSequence(frames), params=SMALL)
    assert [(s.start_index, s.end_index) for s in segs] == [(3, 5)]


def test_empty_sequence_rejected():
    with pytest.raises(ValueError):
        segment_actions(FrameSequence([]))


def test_action_segment_order():
    f = DepthFrame.blank(1, 1)
    with pytest.raises(ValueError):
        ActionSegment(3, 2, f, f)


def _runs_oracle(flags):
    runs, start = [], None
    for i, v in enumerate(list(flags) + [False]):
        if v and start is None:
            start = i
        elif not v and start is not None:
            runs.append((start, i - 1))
            start = None
    return runs


@settings(max_examples=300, deadline=None)
@given(st.lists(st.booleans(), max_size=60))
def test_find_runs_matches_scan(flags):
    assert find_runs(flags) == _runs_oracle(flags)


@settings(max_examples=200, deadline=None)
@given(st.lists(st.booleans(), min_size=1, max_size=40), st.integers(1, 4))
def test_segment_invariants(flags, min_length):
    frames = [_active() if f else _blank() for f in flags]
    params = SegmentationParams(min_area=1, min_length=min_length)
    segs = segment_actions(FrameSequence(frames), params=params)
    prev_end = -1
    for s in segs:
        assert s.start_index > prev_end
        assert len(s) >= min_length
        assert all(flags[s.start_index : s.end_index + 1])
        if s.start_index > 0:
            assert not flags[s.start_index - 1]
        if s.end_index + 1 < len(flags):
            assert not flags[s.end_index + 1]
        prev_end = s.end_index


@settings(max_examples=100, deadline=None)
@given(st.lists(st.tuples(st.integers(3, 6), st.integers(1, 3)), min_size=1, max_size=8))
def test_k_clips_give_k_segments(clips):
    frames = []
    for length, gap in clips:
        frames += [_active()] * length + [_blank()] * gap
    segs = segment_actions(FrameSequence(frames), params=SMALL)
    assert len(segs) == len(clips)
