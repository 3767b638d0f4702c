"""Codec-free raster I/O: PGM (P2/P5) and PPM (P3/P6), 8-bit only.

Grayscale images are (H, W) uint8 arrays; color images are (H, W, 3).
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .errors import MediaError


def _read_header_tokens(data: bytes, count: int) -> tuple[list[int], int]:
    """Parse `count` whitespace-separated header ints, honoring '#' comments.

    Returns the values and the offset one whitespace char past the last one.
    """
    values: list[int] = []
    i = 0
    while len(values) < count:
        if i >= len(data):
            raise MediaError("truncated PNM header")
        c = data[i : i + 1]
        if c == b"#":
            while i < len(data) and data[i : i + 1] != b"\n":
                i += 1
        elif c.isspace():
            i += 1
        else:
            j = i
            while j < len(data) and not data[j : j + 1].isspace() and data[j : j + 1] != b"#":
                j += 1
            try:
                values.append(int(data[i:j]))
            except ValueError as exc:
                raise MediaError(f"bad PNM header token: {data[i:j]!r}") from exc
            i = j
    return values, i + 1  # single whitespace after maxval precedes raster data


def read_pnm(path: str | Path) -> np.ndarray:
    return decode_pnm(Path(path).read_bytes(), source=str(path))


def decode_pnm(data: bytes, source: str = "<bytes>") -> np.ndarray:
    path = source
    magic = data[:2]
    if magic not in (b"P2", b"P3", b"P5", b"P6"):
        raise MediaError(f"unsupported image format in {path} (want P2/P3/P5/P6)")
    channels = 3 if magic in (b"P3", b"P6") else 1
    (width, height, maxval), offset = _read_header_tokens(data[2:], 3)
    offset += 2
    if maxval <= 0 or maxval > 255:
        raise MediaError(f"unsupported maxval {maxval} in {path}")
    n = width * height * channels

    if magic in (b"P2", b"P3"):
        samples = np.array(data[offset:].split(), dtype=np.int64)
        if samples.size < n:
            raise MediaError(f"truncated raster data in {path}")
        pixels = samples[:n]
    else:
        raw = data[offset : offset + n]
        if len(raw) < n:
            raise MediaError(f"truncated raster data in {path}")
        pixels = np.frombuffer(raw, dtype=np.uint8).astype(np.int64)

    if pixels.min() < 0 or pixels.max() > maxval:
        raise MediaError(f"sample out of range in {path}")
    arr = pixels.astype(np.uint8)
    if channels == 1:
        return arr.reshape(height, width)
    return arr.reshape(height, width, 3)


def write_pnm(path: str | Path, image: np.ndarray, binary: bool = True) -> None:
    image = np.asarray(image)
    if image.dtype != np.uint8:
        raise MediaError("write_pnm expects uint8 pixels")
    if image.ndim == 2:
        magic = b"P5" if binary else b"P2"
    elif image.ndim == 3 and image.shape[2] == 3:
        magic = b"P6" if binary else b"P3"
    else:
        raise MediaError(f"unsupported image shape {image.shape}")
    height, width = image.shape[:2]
    header = magic + f"\n{width} {height}\n255\n".encode("ascii")
    if binary:
        Path(path).write_bytes(header + image.tobytes())
    else:
        body = "\n".join(" ".join(str(v) for v in row) for row in image.reshape(height, -1))
        Path(path).write_bytes(header + body.encode("ascii") + b"\n")
