"""Splice detection from the S and opponent edge maps.

Sensitivity of the two spaces per edge type (``+`` responds, ``-`` blind)::

                 shading  shadow  highlight  material  splice
    o1o2            +       +         -          +        +
    S               -       -         +          +        -

A pixel is a splice candidate when the opponent map fires and the
saturation map does not. Shading and shadow edges share that signature,
so they are reported under the same label.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np
from scipy import ndimage

from ._arrays import as_mask, as_rgb, same_shape
from .colorspace import srgb_to_linear, to_opponent, to_saturation
from .edges import GradientStats, detect_edges_in_space


class EdgeLabel(enum.IntEnum):
    """Label of a pixel from its (opponent-edge, S-edge) bit pair.

    The value is ``2 * o + s``.
    """

    NONE = 0
    HIGHLIGHT_OR_S_ONLY = 1
    SPLICING_CANDIDATE = 2
    MATERIAL = 3


@dataclass(frozen=True)
class DetectionResult:
    splice_map: np.ndarray
    s_edges: np.ndarray
    o_edges: np.ndarray
    s_stats: GradientStats
    o_stats: GradientStats

    @property
    def splice_fraction(self) -> float:
        """Share of opponent edges kept as splice pixels."""
        return int(self.splice_map.sum()) / max(1, int(self.o_edges.sum()))


def dilate(mask: np.ndarray, radius: int) -> np.ndarray:
    """Binary dilation with a ``(2r+1) x (2r+1)`` square; radius 0 is the identity."""
    mask = as_mask(mask)
    if radius < 0:
        raise ValueError("dilation radius must be >= 0")
    if radius == 0 or not mask.any():
        return mask.copy()
    return ndimage.binary_dilation(mask, structure=np.ones((2 * radius + 1,) * 2, dtype=bool))


def splice_from_maps(o_edges: np.ndarray, s_edges: np.ndarray, dilate_s: int = 0) -> np.ndarray:
    """``o_edges AND NOT s_edges``, optionally after dilating ``s_edges``."""
    o_edges, s_edges = as_mask(o_edges), as_mask(s_edges)
    same_shape(o_edges, s_edges)
    return o_edges & ~dilate(s_edges, dilate_s)


def classify_edges(o_edges: np.ndarray, s_edges: np.ndarray) -> np.ndarray:
    """Per-pixel :class:`EdgeLabel` codes as a ``uint8`` plane."""
    o_edges, s_edges = as_mask(o_edges), as_mask(s_edges)
    same_shape(o_edges, s_edges)
    return (2 * o_edges.astype(np.uint8) + s_edges.astype(np.uint8)).astype(np.uint8)


def detect(img: np.ndarray, dilate_s: int = 0, linearize: bool = False) -> DetectionResult:
    """Run the full detector on an RGB image in ``[0, 1]``."""
    img = as_rgb(img)
    if linearize:
        img = srgb_to_linear(img)
    s_edges, s_stats = detect_edges_in_space([to_saturation(img)])
    o_edges, o_stats = detect_edges_in_space(list(to_opponent(img)))
    return DetectionResult(
        splice_map=splice_from_maps(o_edges, s_edges, dilate_s),
        s_edges=s_edges,
        o_edges=o_edges,
        s_stats=s_stats,
        o_stats=o_stats,
    )
