"""Depth frames and their on-disk form: binary PGM files and text manifests.

Coordinates are image coordinates with the origin at the top-left corner:
``x`` is the column index (increasing to the right) and ``y`` the row index
(increasing downward). Every other module uses the same convention.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator, Sequence

import numpy as np

PGM_MAGIC = b"P5"
PGM_MAXVAL = 255
_WHITESPACE = b" \t\n\r\v\f"


class PgmError(ValueError):
    """Raised when a byte stream is not a supported binary PGM image."""


class MalformedMagicError(PgmError):
    pass


class UnsupportedMaxvalError(PgmError):
    pass


class MalformedHeaderError(PgmError):
    pass


class ZeroDimensionError(PgmError):
    pass


class TruncatedRasterError(PgmError):
    pass


class TrailingDataError(PgmError):
    pass


class SequenceError(ValueError):
    """Raised when a manifest cannot be turned into a frame sequence."""


class DepthFrame:
    """An 8-bit depth image; brighter pixels are nearer to the camera.

    Pixels are held as a read-only ``(height, width)`` ``uint8`` array, so
    ``frame.pixels[y, x]`` is the intensity at column ``x``, row ``y``.
    """

    __slots__ = ("_pixels",)

    def __init__(self, pixels):
        arr = np.asarray(pixels)
        if arr.ndim != 2:
            raise ValueError(f"depth frame must be 2-D, got shape {arr.shape}")
        if arr.shape[0] == 0 or arr.shape[1] == 0:
            raise ValueError(f"depth frame must be non-empty, got shape {arr.shape}")
        if arr.dtype != np.uint8:
            if not np.issubdtype(arr.dtype, np.integer):
                raise ValueError(f"depth frame needs integer intensities, got {arr.dtype}")
            if arr.min() < 0 or arr.max() > 255:
                raise ValueError("depth intensities must lie in [0, 255]")
        arr = np.array(arr, dtype=np.uint8, order="C", copy=True)
        arr.setflags(write=False)
        self._pixels = arr

    @classmethod
    def from_raster(cls, width: int, height: int, raster: bytes | Sequence[int]) -> "DepthFrame":
        """Build a frame from a row-major raster of ``width * height`` values."""
        if isinstance(raster, (bytes, bytearray, memoryview)):
            flat = np.frombuffer(raster, dtype=np.uint8)
        else:
            flat = np.asarray(raster)
        if flat.size != width * height:
            raise ValueError(f"raster has {flat.size} values, expected {width * height}")
        return cls(flat.reshape(height, width))

    @classmethod
    def blank(cls, width: int, height: int) -> "DepthFrame":
        return cls(np.zeros((height, width), dtype=np.uint8))

    @property
    def pixels(self) -> np.ndarray:
        return self._pixels

    @property
    def width(self) -> int:
        return self._pixels.shape[1]

    @property
    def height(self) -> int:
        return self._pixels.shape[0]

    @property
    def shape(self) -> tuple[int, int]:
        return self._pixels.shape

    def pixel(self, x: int, y: int) -> int:
        return int(self._pixels[y, x])

    def raster(self) -> bytes:
        return self._pixels.tobytes()

    def __eq__(self, other):
        if not isinstance(other, DepthFrame):
            return NotImplemented
        return self.shape == other.shape and np.array_equal(self._pixels, other._pixels)

    def __hash__(self):
        return hash((self.shape, self._pixels.tobytes()))

    def __repr__(self):
        return f"DepthFrame(width={self.width}, height={self.height})"


@dataclass
class FrameSequence:
    """Frames in capture order, all of the same size."""

    frames: list[DepthFrame] = field(default_factory=list)
    frame_rate_hint: float = 30.0

    def __post_init__(self):
        self.frames = list(self.frames)
        if self.frames:
            shape = self.frames[0].shape
            for i, f in enumerate(self.frames):
                if f.shape != shape:
                    raise SequenceError(
                        f"frame {i} is {f.width}x{f.height}, expected {shape[1]}x{shape[0]}"
                    )

    def __len__(self) -> int:
        return len(self.frames)

    def __iter__(self) -> Iterator[DepthFrame]:
        return iter(self.frames)

    def __getitem__(self, index):
        return self.frames[index]

    @property
    def width(self) -> int:
        return self.frames[0].width

    @property
    def height(self) -> int:
        return self.frames[0].height


def _next_token(data: bytes, pos: int) -> tuple[bytes, int]:
    # Skip whitespace and '#' comments, then read one token.
    n = len(data)
    while pos < n:
        c = data[pos : pos + 1]
        if c in _WHITESPACE:
            pos += 1
        elif c == b"#":
            while pos < n and data[pos : pos + 1] not in (b"\n", b"\r"):
                pos += 1
        else:
            break
    start = pos
    while pos < n and data[pos : pos + 1] not in _WHITESPACE and data[pos : pos + 1] != b"#":
        pos += 1
    if start == pos:
        raise MalformedHeaderError("unexpected end of PGM header")
    return data[start:pos], pos


def _header_int(token: bytes, name: str) -> int:
    if not token.isdigit():
        raise MalformedHeaderError(f"PGM {name} is not a decimal integer: {token[:20]!r}")
    if len(token) > 9:
        raise MalformedHeaderError(f"PGM {name} is implausibly large: {token[:20]!r}")
    return int(token)


def read_pgm(data: bytes) -> DepthFrame:
    """Parse a single binary PGM (``P5``, maxval 255) image.

    Comment lines are accepted anywhere in the header. Every rejection is a
    :class:`PgmError` subclass.
    """
    data = bytes(data)
    if data[:2] != PGM_MAGIC:
        raise MalformedMagicError(f"not a binary PGM: magic {data[:2]!r}")
    pos = 2
    if pos >= len(data) or (data[pos : pos + 1] not in _WHITESPACE and data[pos : pos + 1] != b"#"):
        raise MalformedMagicError(f"not a binary PGM: magic {data[:3]!r}")
    tok, pos = _next_token(data, pos)
    width = _header_int(tok, "width")
    tok, pos = _next_token(data, pos)
    height = _header_int(tok, "height")
    tok, pos = _next_token(data, pos)
    maxval = _header_int(tok, "maxval")
    if width == 0 or height == 0:
        raise ZeroDimensionError(f"PGM has zero dimension: {width}x{height}")
    if maxval != PGM_MAXVAL:
        raise UnsupportedMaxvalError(f"unsupported PGM maxval {maxval}, only 255 is supported")
    if pos >= len(data) or data[pos : pos + 1] not in _WHITESPACE:
        raise MalformedHeaderError("missing whitespace byte after PGM maxval")
    pos += 1
    size = width * height
    raster = data[pos : pos + size]
    if len(raster) < size:
        raise TruncatedRasterError(f"PGM raster has {len(raster)} bytes, expected {size}")
    if len(data) > pos + size:
        raise TrailingDataError(f"{len(data) - pos - size} bytes after PGM raster")
    return DepthFrame.from_raster(width, height, raster)


def write_pgm(frame: DepthFrame) -> bytes:
    header = b"P5\n%d %d\n%d\n" % (frame.width, frame.height, PGM_MAXVAL)
    return header + frame.raster()


def load_pgm(path: str | os.PathLike) -> DepthFrame:
    return read_pgm(Path(path).read_bytes())


def save_pgm(path: str | os.PathLike, frame: DepthFrame) -> None:
    Path(path).write_bytes(write_pgm(frame))


def parse_manifest(text: str, base_dir: str | os.PathLike = ".") -> list[Path]:
    """Return the frame paths listed in a manifest, resolving relative ones
    against ``base_dir``. Blank lines are ignored."""
    base = Path(base_dir)
    paths = []
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        p = Path(line)
        paths.append(p if p.is_absolute() else base / p)
    return paths


def read_sequence(manifest: str | os.PathLike, frame_rate_hint: float = 30.0) -> FrameSequence:
    """Load the frames listed in the manifest file at ``manifest``.

    Relative entries are resolved against the manifest's own directory.
    """
    manifest = Path(manifest)
    try:
        text = manifest.read_text(encoding="utf-8")
    except OSError as exc:
        raise SequenceError(f"cannot read manifest {manifest}: {exc.strerror or exc}") from exc
    paths = parse_manifest(text, manifest.parent)
    if not paths:
        raise SequenceError(f"manifest {manifest} lists no frames")
    frames = []
    for p in paths:
        try:
            frames.append(load_pgm(p))
        except OSError as exc:
            raise SequenceError(f"cannot read frame {p}: {exc.strerror or exc}") from exc
        except PgmError as exc:
            raise SequenceError(f"bad frame {p}: {exc}") from exc
    return FrameSequence(frames, frame_rate_hint)


def write_sequence(
    seq: FrameSequence,
    out_dir: str | os.PathLike,
    manifest_name: str = "manifest.txt",
    frame_dir: str = "frames",
) -> Path:
    """Write every frame as a PGM file plus a manifest of relative paths.

    The manifest is written last and atomically, so a failure part-way never
    leaves a manifest pointing at missing frames.
    """
    out = Path(out_dir)
    (out / frame_dir).mkdir(parents=True, exist_ok=True)
    digits = max(4, len(str(len(seq) - 1)))
    lines = []
    for i, frame in enumerate(seq):
        rel = f"{frame_dir}/frame_{i:0{digits}d}.pgm"
        save_pgm(out / rel, frame)
        lines.append(rel)
    manifest = out / manifest_name
    tmp = manifest.with_name(manifest.name + ".tmp")
    tmp.write_text("\n".join(lines) + "\n", encoding="utf-8")
    os.replace(tmp, manifest)
    return manifest
