"""Shape and range checks shared by the pipeline stages."""

from __future__ import annotations

import numpy as np


class DimensionMismatchError(ValueError):
    """Two maps or planes that must share a shape do not."""


def as_rgb(img) -> np.ndarray:
    """Validate an H x W x 3 image with samples in [0, 1] and return it as float64."""
    arr = np.asarray(img, dtype=np.float64)
    if arr.ndim != 3 or arr.shape[2] != 3:
        raise ValueError(f"expected an H x W x 3 image, got shape {arr.shape}")
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValueError("image must be at least 1 x 1")
    if not np.all(np.isfinite(arr)) or arr.min() < 0.0 or arr.max() > 1.0:
        raise ValueError("image samples must lie in [0, 1]")
    return arr


def as_plane(plane) -> np.ndarray:
    arr = np.asarray(plane, dtype=np.float64)
    if arr.ndim != 2 or arr.size == 0:
        raise ValueError(f"expected a non-empty 2-D plane, got shape {arr.shape}")
    return arr


def as_mask(mask) -> np.ndarray:
    arr = np.asarray(mask)
    if arr.ndim != 2:
        raise ValueError(f"expected a 2-D boolean map, got shape {arr.shape}")
    return arr.astype(bool, copy=False)


def same_shape(*arrays: np.ndarray) -> None:
    shapes = {a.shape for a in arrays}
    if len(shapes) > 1:
        raise DimensionMismatchError(f"shape mismatch: {sorted(shapes)}")
