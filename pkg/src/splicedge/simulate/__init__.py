"""Synthetic scenes with exact edge ground truth."""

from .render import (
    ClippingWarning,
    EdgeClass,
    GroundTruth,
    Region,
    SceneError,
    SceneSpec,
    SurfacePatch,
    ground_truth_boundary,
    make_splice,
    quantize,
    render,
    requantize,
)
from .sceneio import SceneSyntaxError, load_scene, parse_scene

__all__ = [
    "ClippingWarning",
    "EdgeClass",
    "GroundTruth",
    "Region",
    "SceneError",
    "SceneSpec",
    "SceneSyntaxError",
    "SurfacePatch",
    "ground_truth_boundary",
    "load_scene",
    "make_splice",
    "parse_scene",
    "quantize",
    "render",
    "requantize",
]
