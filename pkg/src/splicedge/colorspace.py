"""Photometric color spaces used by the splice detector.

Two spaces are produced from an RGB image:

* saturation ``S = 1 - min(R, G, B) / (R + G + B)``, which cancels any
  common gain on the three channels (shading, shadow);
* the intensity-free opponent pair ``o1 = (R - G) / 2`` and
  ``o2 = B / 2 - (R + G) / 4``, which cancels any common offset added to
  the three channels (white highlights).

Images are ``float64`` arrays of shape ``(H, W, 3)`` with samples in
``[0, 1]``. Planes are ``(H, W)`` arrays.
"""

from __future__ import annotations

import numpy as np

from ._arrays import as_rgb


def to_saturation(img: np.ndarray) -> np.ndarray:
    """Saturation plane of an RGB image.

    The ratio is taken without the factor 3 of HSI saturation; the two
    forms differ by an affine map, to which the thresholded edge map is
    blind. Black pixels (``R + G + B == 0``) carry no chroma and map to 0.
    """
    img = as_rgb(img)
    r, g, b = img[..., 0], img[..., 1], img[..., 2]
    total = r + g + b
    low = np.minimum(np.minimum(r, g), b)
    ratio = np.zeros_like(total)
    np.divide(low, total, out=ratio, where=total > 0.0)
    sat = 1.0 - ratio
    sat[total == 0.0] = 0.0
    return sat


def to_opponent(img: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Return the opponent planes ``(o1, o2)``, each in ``[-0.5, 0.5]``."""
    img = as_rgb(img)
    r, g, b = img[..., 0], img[..., 1], img[..., 2]
    o1 = (r - g) / 2.0
    o2 = b / 2.0 - (r + g) / 4.0
    return o1, o2


def srgb_to_linear(img: np.ndarray) -> np.ndarray:
    """Undo the sRGB transfer curve (IEC 61966-2-1). Off by default in the CLI."""
    img = as_rgb(img)
    return np.where(img <= 0.04045, img / 12.92, ((img + 0.055) / 1.055) ** 2.4)
