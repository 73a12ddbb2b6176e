"""Image persistence: binary PGM (canonical) and 8-bit PNG (read side).

Loaded images are scaled to [0, 1] and padded with edge replication to the
next power of two per axis; the original size is kept so saves can crop
back.  Saving quantizes with round-half-up at 255.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from .errors import FormatError

__all__ = ["LoadedImage", "load_image", "save_image", "read_pgm", "write_pgm"]


@dataclass
class LoadedImage:
    """One or three [0, 1] channel grids padded to power-of-two dims."""

    channels: list[np.ndarray]
    original_shape: tuple[int, int]

    @property
    def is_color(self) -> bool:
        return len(self.channels) == 3

    @property
    def padded_shape(self) -> tuple[int, int]:
        return self.channels[0].shape


def _next_pow2(n: int) -> int:
    p = 8
    while p < n:
        p *= 2
    return p


def _pad_pow2(grid: np.ndarray) -> np.ndarray:
    rows, cols = grid.shape
    target = (_next_pow2(rows), _next_pow2(cols))
    if target == (rows, cols):
        return grid
    return np.pad(grid, ((0, target[0] - rows), (0, target[1] - cols)), mode="edge")


_PGM_TOKEN = re.compile(rb"^\s*(?:#[^\n]*\n\s*)*(\S+)")


def _read_tokens(data: bytes, count: int) -> tuple[list[bytes], int]:
    tokens = []
    pos = 0
    for _ in range(count):
        m = _PGM_TOKEN.match(data[pos:])
        if not m:
            raise FormatError("truncated PGM header")
        tokens.append(m.group(1))
        pos += m.end()
    return tokens, pos


def read_pgm(path) -> tuple[np.ndarray, int, dict]:
    """Read a binary (P5) PGM; returns (samples, maxval, header comments)."""
    with open(path, "rb") as fh:
        data = fh.read()
    if not data.startswith(b"P5"):
        raise FormatError(f"{path}: not a binary PGM (P5) file")
    comments = {}
    for line in data[:4096].split(b"\n"):
        if line.startswith(b"#") and b":" in line:
            key, _, value = line[1:].partition(b":")
            comments[key.strip().decode("ascii", "replace")] = value.strip().decode(
                "ascii", "replace"
            )
    tokens, pos = _read_tokens(data, 4)
    width, height, maxval = (int(t) for t in tokens[1:])
    if maxval < 1 or maxval > 65535:
        raise FormatError(f"{path}: unsupported maxval {maxval}")
    # exactly one whitespace byte separates header and raster
    pos += 1
    dtype = np.dtype(">u2") if maxval > 255 else np.dtype(np.uint8)
    expected = width * height * dtype.itemsize
    raster = data[pos : pos + expected]
    if len(raster) != expected:
        raise FormatError(f"{path}: raster truncated ({len(raster)} of {expected} bytes)")
    samples = np.frombuffer(raster, dtype=dtype).reshape(height, width)
    return samples.astype(np.uint16 if maxval > 255 else np.uint8), maxval, comments


def write_pgm(path, samples: np.ndarray, maxval: int = 255, comments: dict | None = None) -> None:
    """Write a binary (P5) PGM; 16-bit samples are stored big-endian."""
    samples = np.asarray(samples)
    if samples.ndim != 2:
        raise FormatError("PGM raster must be 2D")
    header = [b"P5"]
    for key, value in (comments or {}).items():
        header.append(f"# {key}: {value}".encode("ascii"))
    header.append(f"{samples.shape[1]} {samples.shape[0]}".encode("ascii"))
    header.append(str(maxval).encode("ascii"))
    dtype = np.dtype(">u2") if maxval > 255 else np.uint8
    with open(path, "wb") as fh:
        fh.write(b"\n".join(header) + b"\n")
        fh.write(samples.astype(dtype).tobytes())


def _load_png(path) -> list[np.ndarray]:
    from PIL import Image

    with Image.open(path) as img:
        if img.mode == "L":
            return [np.asarray(img, dtype=np.float64) / 255.0]
        if img.mode in ("RGB", "RGBA"):
            arr = np.asarray(img.convert("RGB"), dtype=np.float64) / 255.0
            return [arr[:, :, c].copy() for c in range(3)]
    raise FormatError(f"{path}: unsupported PNG mode")


def load_image(path) -> LoadedImage:
    """Load a PGM or PNG as [0, 1] grid(s), padded to power-of-two dims."""
    path = str(path)
    if path.lower().endswith(".png"):
        channels = _load_png(path)
    else:
        samples, maxval, _ = read_pgm(path)
        channels = [samples.astype(np.float64) / maxval]
    original = channels[0].shape
    return LoadedImage([_pad_pow2(ch) for ch in channels], original)


def save_image(grid: np.ndarray, path, crop: tuple[int, int] | None = None) -> None:
    """Quantize a [0, 1] grid (round half up) and write an 8-bit PGM."""
    grid = np.asarray(grid, dtype=np.float64)
    if crop is not None:
        grid = grid[: crop[0], : crop[1]]
    quantized = np.floor(np.clip(grid, 0.0, 1.0) * 255.0 + 0.5).astype(np.uint8)
    write_pgm(path, quantized, maxval=255)
