"""Scene rendering under the two-term (body + interface) reflection model.

Each pixel of a surface patch is rendered per channel ``c`` as::

    C = e * m_b * k_c + e * m_s * cs_f

with ``e`` the scalar (quasi-white) illuminant, ``k_c`` the integrated
sensor-albedo product, ``m_b``/``m_s`` the body and interface geometry
gains and ``cs_f`` the integrated interface reflectance. Spectral
integrals are never evaluated; scenes are given directly in these
collapsed terms.
"""

from __future__ import annotations

import enum
import warnings
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

import numpy as np

from .._arrays import as_mask, as_rgb, same_shape

Field = Union[float, np.ndarray]


class EdgeClass(enum.IntEnum):
    """Ground-truth class of a boundary pixel (0 means not a boundary)."""

    SHADING = 1
    SHADOW = 2
    HIGHLIGHT = 3
    MATERIAL = 4
    OCCLUSION = 5
    SPLICE = 6


class SceneError(ValueError):
    """A scene description that cannot be rendered."""


class ClippingWarning(UserWarning):
    """Rendered samples fell outside [0, 1] and were clipped."""


@dataclass
class SurfacePatch:
    albedo: tuple[float, float, float]
    body_gain: Field = 1.0
    specular_gain: Field = 0.0
    specular_coeff: float = 1.0

    def __post_init__(self) -> None:
        self.albedo = tuple(float(v) for v in self.albedo)
        if len(self.albedo) != 3 or any(not 0.0 <= v <= 1.0 for v in self.albedo):
            raise SceneError(f"albedo must be three values in [0, 1], got {self.albedo}")
        if self.specular_coeff < 0:
            raise SceneError("specular_coeff must be >= 0")
        for name in ("body_gain", "specular_gain"):
            if np.any(np.asarray(getattr(self, name)) < 0):
                raise SceneError(f"{name} must be >= 0")


@dataclass
class Region:
    mask: np.ndarray
    patch: SurfacePatch
    edge_class: Optional[EdgeClass] = None
    name: str = ""


@dataclass
class SceneSpec:
    """Image size, illuminant and a partition of the frame into regions.

    The boundary between regions ``i < j`` is attributed to region ``j``:
    it is drawn on ``j``'s side and takes ``j``'s ``edge_class``. The
    first region is usually the background and needs no class.
    """

    width: int
    height: int
    regions: list[Region]
    illuminant: float = 1.0

    def validate(self) -> None:
        if self.width < 1 or self.height < 1:
            raise SceneError("scene dimensions must be positive")
        if self.illuminant <= 0:
            raise SceneError("illuminant must be > 0")
        if not self.regions:
            raise SceneError("scene has no regions")
        cover = np.zeros((self.height, self.width), dtype=np.int32)
        for i, region in enumerate(self.regions):
            mask = as_mask(region.mask)
            if mask.shape != cover.shape:
                raise SceneError(f"region {i} mask shape {mask.shape} != {cover.shape}")
            if i > 0 and region.edge_class is None:
                raise SceneError(f"region {i} ({region.name or 'unnamed'}) declares no edge class")
            for gain in (region.patch.body_gain, region.patch.specular_gain):
                if np.ndim(gain) not in (0, 2) or (np.ndim(gain) == 2 and np.shape(gain) != cover.shape):
                    raise SceneError(f"region {i} gain field has shape {np.shape(gain)}")
            cover += mask
        if np.any(cover > 1):
            raise SceneError("regions overlap")
        if np.any(cover == 0):
            raise SceneError("regions do not cover the frame")

    def label_map(self) -> np.ndarray:
        labels = np.zeros((self.height, self.width), dtype=np.int32)
        for i, region in enumerate(self.regions):
            labels[as_mask(region.mask)] = i
        return labels


@dataclass
class GroundTruth:
    boundary: np.ndarray
    classes: np.ndarray
    clipped: np.ndarray = field(default=None)  # type: ignore[assignment]

    def __post_init__(self) -> None:
        if self.clipped is None:
            self.clipped = np.zeros(self.boundary.shape, dtype=bool)

    def of_class(self, edge_class: EdgeClass) -> np.ndarray:
        return self.classes == int(edge_class)


def _neighbour_below(labels: np.ndarray) -> np.ndarray:
    """Pixels with a 4-neighbour holding a smaller label."""
    out = np.zeros(labels.shape, dtype=bool)
    out[1:, :] |= labels[:-1, :] < labels[1:, :]
    out[:-1, :] |= labels[1:, :] < labels[:-1, :]
    out[:, 1:] |= labels[:, :-1] < labels[:, 1:]
    out[:, :-1] |= labels[:, 1:] < labels[:, :-1]
    return out


def ground_truth_boundary(mask: np.ndarray) -> np.ndarray:
    """Inner 4-connected boundary: mask pixels with a 4-neighbour outside the mask.

    The frame border is not a boundary.
    """
    mask = as_mask(mask)
    return _neighbour_below(mask.astype(np.int32))


def render(spec: SceneSpec) -> tuple[np.ndarray, GroundTruth]:
    """Render ``spec`` to an RGB image in [0, 1] and its boundary ground truth.

    Out-of-range samples are clipped, recorded in ``GroundTruth.clipped``
    and reported with a :class:`ClippingWarning`.
    """
    spec.validate()
    shape = (spec.height, spec.width)
    raw = np.zeros(shape + (3,), dtype=np.float64)
    e = float(spec.illuminant)
    for region in spec.regions:
        mask = as_mask(region.mask)
        p = region.patch
        m_b = np.broadcast_to(np.asarray(p.body_gain, dtype=np.float64), shape)[mask]
        m_s = np.broadcast_to(np.asarray(p.specular_gain, dtype=np.float64), shape)[mask]
        spec_term = e * m_s * p.specular_coeff
        for c in range(3):
            raw[..., c][mask] = e * m_b * p.albedo[c] + spec_term

    clipped = np.any((raw < 0.0) | (raw > 1.0), axis=-1)
    if clipped.any():
        warnings.warn(
            f"{int(clipped.sum())} pixel(s) clipped to [0, 1]", ClippingWarning, stacklevel=2
        )
    img = np.clip(raw, 0.0, 1.0)

    labels = spec.label_map()
    boundary = _neighbour_below(labels)
    class_codes = np.array(
        [0] + [int(r.edge_class) for r in spec.regions[1:]], dtype=np.uint8
    )
    classes = np.where(boundary, class_codes[labels], 0).astype(np.uint8)
    return img, GroundTruth(boundary=boundary, classes=classes, clipped=clipped)


def make_splice(
    host: np.ndarray, donor: np.ndarray, paste_mask: np.ndarray
) -> tuple[np.ndarray, GroundTruth]:
    """Paste ``donor`` into ``host`` inside ``paste_mask``.

    The ground truth is the inner boundary of the mask, all of class SPLICE.
    """
    host, donor = as_rgb(host), as_rgb(donor)
    paste_mask = as_mask(paste_mask)
    same_shape(host, donor)
    if paste_mask.shape != host.shape[:2]:
        raise SceneError(f"mask shape {paste_mask.shape} != image shape {host.shape[:2]}")
    if not paste_mask.any():
        raise SceneError("paste mask is empty")
    if paste_mask.all():
        raise SceneError("paste mask covers the whole frame")
    out = np.where(paste_mask[..., None], donor, host)
    boundary = ground_truth_boundary(paste_mask)
    classes = np.where(boundary, int(EdgeClass.SPLICE), 0).astype(np.uint8)
    return out, GroundTruth(boundary=boundary, classes=classes)


def quantize(img: np.ndarray) -> np.ndarray:
    """8-bit samples with round-half-up."""
    img = as_rgb(img)
    return np.floor(img * 255.0 + 0.5).astype(np.uint8)


def dequantize(samples: np.ndarray) -> np.ndarray:
    return np.asarray(samples, dtype=np.float64) / 255.0


def requantize(img: np.ndarray) -> np.ndarray:
    """Round-trip an image through 8-bit storage."""
    return dequantize(quantize(img))


def disk(shape: Sequence[int], cx: float, cy: float, r: float) -> np.ndarray:
    return ellipse(shape, cx, cy, r, r)


def ellipse(shape: Sequence[int], cx: float, cy: float, rx: float, ry: float) -> np.ndarray:
    yy, xx = np.mgrid[: shape[0], : shape[1]]
    return ((xx + 0.5 - cx) / rx) ** 2 + ((yy + 0.5 - cy) / ry) ** 2 <= 1.0


def rect(shape: Sequence[int], x0: int, y0: int, x1: int, y1: int) -> np.ndarray:
    """Half-open rectangle ``[x0, x1) x [y0, y1)``."""
    mask = np.zeros(tuple(shape), dtype=bool)
    mask[max(0, y0): max(0, y1), max(0, x0): max(0, x1)] = True
    return mask


def linear_ramp(shape: Sequence[int], start: float, stop: float, angle_deg: float = 0.0) -> np.ndarray:
    """Field varying linearly from ``start`` to ``stop`` across the frame along ``angle_deg``."""
    h, w = shape
    yy, xx = np.mgrid[:h, :w].astype(np.float64)
    a = np.deg2rad(angle_deg)
    t = xx * np.cos(a) + yy * np.sin(a)
    lo, hi = t.min(), t.max()
    t = (t - lo) / (hi - lo) if hi > lo else np.zeros_like(t)
    return start + (stop - start) * t


def lobe(shape: Sequence[int], cx: float, cy: float, sigma: float, peak: float) -> np.ndarray:
    """Gaussian highlight lobe."""
    yy, xx = np.mgrid[: shape[0], : shape[1]].astype(np.float64)
    return peak * np.exp(-((xx + 0.5 - cx) ** 2 + (yy + 0.5 - cy) ** 2) / (2.0 * sigma**2))
