"""Raster decode/encode for images and binary masks.

Masks are single-channel 8-bit PNGs holding 0 and 255. All outputs are
lossless; inputs may be any 8-bit format Pillow decodes, JPEG included.
"""

from __future__ import annotations

from pathlib import Path
from typing import Union

import numpy as np
from PIL import Image, UnidentifiedImageError

PathLike = Union[str, Path]

# Pillow modes whose samples are 8 bits per channel.
EIGHT_BIT_MODES = {"1", "L", "LA", "La", "P", "PA", "RGB", "RGBA", "RGBa", "RGBX", "CMYK", "YCbCr", "LAB", "HSV"}


class ImageReadError(OSError):
    """The file is missing or cannot be decoded."""


class UnsupportedImageError(ValueError):
    """The file decodes but is not an 8-bit raster."""


def _open(path: PathLike) -> Image.Image:
    path = Path(path)
    if not path.is_file():
        raise ImageReadError(f"no such file: {path}")
    try:
        img = Image.open(path)
        img.load()
    except (UnidentifiedImageError, OSError) as exc:
        raise ImageReadError(f"cannot decode {path}: {exc}") from None
    return img


def read_rgb8(path: PathLike) -> np.ndarray:
    """Decode an 8-bit raster to an ``(H, W, 3)`` ``uint8`` array (alpha dropped)."""
    img = _open(path)
    if img.mode not in EIGHT_BIT_MODES:
        raise UnsupportedImageError(f"{path}: mode {img.mode!r} is not 8 bits per channel")
    return np.asarray(img.convert("RGB"), dtype=np.uint8)


def read_rgb(path: PathLike) -> np.ndarray:
    """Decode an 8-bit raster to float64 RGB in ``[0, 1]`` (``sample / 255``)."""
    return read_rgb8(path).astype(np.float64) / 255.0


def to_uint8(img: np.ndarray) -> np.ndarray:
    arr = np.asarray(img)
    if arr.dtype == np.uint8:
        return arr
    return np.floor(np.clip(arr, 0.0, 1.0) * 255.0 + 0.5).astype(np.uint8)


def write_rgb(path: PathLike, img: np.ndarray) -> None:
    Image.fromarray(to_uint8(img), mode="RGB").save(Path(path), format="PNG")


def write_mask(path: PathLike, mask: np.ndarray) -> None:
    arr = np.where(np.asarray(mask, dtype=bool), 255, 0).astype(np.uint8)
    Image.fromarray(arr, mode="L").save(Path(path), format="PNG")


def write_labels(path: PathLike, labels: np.ndarray) -> None:
    """Small integer codes as an 8-bit grayscale PNG."""
    Image.fromarray(np.asarray(labels, dtype=np.uint8), mode="L").save(Path(path), format="PNG")


def read_gray8(path: PathLike) -> np.ndarray:
    img = _open(path)
    if img.mode not in EIGHT_BIT_MODES:
        raise UnsupportedImageError(f"{path}: mode {img.mode!r} is not 8 bits per channel")
    return np.asarray(img.convert("L"), dtype=np.uint8)


def read_mask(path: PathLike, threshold: int = 127) -> np.ndarray:
    """Region mask: any gray level above ``threshold`` is inside."""
    return read_gray8(path) > threshold


def overlay(img: np.ndarray, mask: np.ndarray, color=(255, 0, 0)) -> np.ndarray:
    """Copy of ``img`` as ``uint8`` with ``mask`` pixels painted ``color``."""
    out = to_uint8(img).copy()
    out[np.asarray(mask, dtype=bool)] = color
    return out
