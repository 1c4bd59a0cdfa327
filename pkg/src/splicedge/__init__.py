"""Splice-edge localization from photometric color invariants."""

from .classify import DetectionResult, EdgeLabel, classify_edges, detect, splice_from_maps
from .colorspace import to_opponent, to_saturation
from .edges import GradientStats, composite_gradient, detect_edges_in_space, laplacian, threshold_edges

__version__ = "0.1.0"

__all__ = [
    "DetectionResult",
    "EdgeLabel",
    "GradientStats",
    "classify_edges",
    "composite_gradient",
    "detect",
    "detect_edges_in_space",
    "laplacian",
    "splice_from_maps",
    "threshold_edges",
    "to_opponent",
    "to_saturation",
]
