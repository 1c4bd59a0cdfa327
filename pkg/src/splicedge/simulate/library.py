"""Ready-made scenes: one probe scene per edge class and a seeded benchmark suite.

Every probe scene holds a reference object (a disk of a different
material in the top-left quarter) besides the boundary under test. Real
photographs always carry such content; without it the relative
threshold would promote 8-bit rounding residue on an otherwise blind
boundary into edges.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional

import numpy as np

from .render import (
    EdgeClass,
    GroundTruth,
    Region,
    SceneSpec,
    SurfacePatch,
    disk,
    ellipse,
    linear_ramp,
    lobe,
    make_splice,
    rect,
    render,
    requantize,
)

BACKGROUND_ALBEDO = (0.70, 0.40, 0.15)
REFERENCE_ALBEDO = (0.60, 0.40, 0.20)
PROBE_CLASSES = ("shading", "shadow", "highlight", "material", "splice")


@dataclass
class ProbeScene:
    name: str
    image: np.ndarray
    truth: GroundTruth
    target: np.ndarray  # boundary pixels of the class under test


def _reference_region(shape, body_gain=0.8) -> Region:
    h, w = shape
    return Region(
        disk(shape, 0.25 * w, 0.25 * h, 0.14 * min(h, w)),
        SurfacePatch(REFERENCE_ALBEDO, body_gain=body_gain),
        EdgeClass.MATERIAL,
        "reference",
    )


def _target_mask(shape) -> np.ndarray:
    # Axis-aligned so every boundary pixel sees the same Laplacian
    # response; curved contours alternate between 1x and 2x the step.
    h, w = shape
    return rect(shape, round(0.5 * w), round(0.45 * h), round(0.9 * w), round(0.9 * h))


def _two_patch_scene(size: int, target_patch: SurfacePatch, back_patch: SurfacePatch,
                     edge_class: EdgeClass) -> SceneSpec:
    shape = (size, size)
    ref = _reference_region(shape)
    target = _target_mask(shape) & ~ref.mask
    background = ~(ref.mask | target)
    return SceneSpec(
        width=size,
        height=size,
        regions=[
            Region(background, back_patch, None, "background"),
            ref,
            Region(target, target_patch, edge_class, edge_class.name.lower()),
        ],
    )


def probe_spec(kind: str, size: int = 128) -> SceneSpec:
    """Scene spec whose target boundary is a pure ``kind`` edge (not for splices)."""
    back = SurfacePatch(BACKGROUND_ALBEDO, body_gain=0.9)
    if kind == "shading":
        target = SurfacePatch(BACKGROUND_ALBEDO, body_gain=0.45)
        cls = EdgeClass.SHADING
    elif kind == "shadow":
        ambient = 0.2
        back = SurfacePatch(BACKGROUND_ALBEDO, body_gain=0.75 + ambient)
        target = SurfacePatch(BACKGROUND_ALBEDO, body_gain=ambient)
        cls = EdgeClass.SHADOW
    elif kind == "highlight":
        back = SurfacePatch(BACKGROUND_ALBEDO, body_gain=0.6)
        target = SurfacePatch(BACKGROUND_ALBEDO, body_gain=0.6, specular_gain=0.3)
        cls = EdgeClass.HIGHLIGHT
    elif kind == "material":
        target = SurfacePatch((0.35, 0.55, 0.30), body_gain=0.9)
        cls = EdgeClass.MATERIAL
    elif kind == "occlusion":
        target = SurfacePatch((0.35, 0.55, 0.30), body_gain=0.5)
        cls = EdgeClass.OCCLUSION
    else:
        raise ValueError(f"unknown probe kind {kind!r}")
    return _two_patch_scene(size, target, back, cls)


def probe_scene(kind: str, size: int = 128, quantized: bool = True) -> ProbeScene:
    """Render the probe scene for ``kind`` (one of :data:`PROBE_CLASSES` or ``occlusion``)."""
    if kind == "splice":
        shape = (size, size)
        host_spec = probe_spec("material", size)
        host_spec.regions = host_spec.regions[:2]
        host_spec.regions[0].mask = ~host_spec.regions[1].mask
        donor_spec = SceneSpec(
            size, size,
            [Region(np.ones(shape, dtype=bool), SurfacePatch(BACKGROUND_ALBEDO, body_gain=0.45))],
        )
        host, _ = render(host_spec)
        donor, _ = render(donor_spec)
        mask = _target_mask(shape)
        image, truth = make_splice(host, donor, mask)
        target = truth.of_class(EdgeClass.SPLICE)
    else:
        image, truth = render(probe_spec(kind, size))
        target = truth.of_class(EdgeClass[kind.upper()])
    if quantized:
        image = requantize(image)
    return ProbeScene(kind, image, truth, target)


@dataclass
class BenchmarkCase:
    """One spliced image and the authentic host it was made from."""

    case_id: str
    spliced: np.ndarray
    original: np.ndarray
    paste_mask: np.ndarray
    truth: GroundTruth


def _saturation_of(albedo) -> float:
    return 1.0 - min(albedo) / sum(albedo)


def _random_albedo(rng: np.random.Generator, sat_range: tuple[float, float],
                   min_spread: float = 0.3) -> tuple:
    """Albedo with saturation inside ``sat_range`` and channel spread >= ``min_spread``."""
    for _ in range(100000):
        k = rng.uniform(0.05, 0.9, size=3)
        if k.max() - k.min() < min_spread:
            continue
        k = tuple(float(v) for v in k)
        if sat_range[0] <= _saturation_of(k) <= sat_range[1]:
            return k
    raise RuntimeError(f"could not draw an albedo with saturation in {sat_range}")


def _random_shape(rng: np.random.Generator, shape) -> np.ndarray:
    h, w = shape
    cx, cy = rng.uniform(0.15, 0.85) * w, rng.uniform(0.15, 0.85) * h
    rx, ry = rng.uniform(0.06, 0.14) * w, rng.uniform(0.06, 0.14) * h
    if rng.random() < 0.5:
        return rect(shape, int(cx - rx), int(cy - ry), int(cx + rx), int(cy + ry))
    return ellipse(shape, cx, cy, rx, ry)


# Material edges only register in S when saturation changes across them,
# so the background and the objects are drawn from disjoint bands.
BACKGROUND_SATURATION = (0.92, 1.0)
OBJECT_SATURATION = (0.70, 0.80)


def benchmark_scene(rng: np.random.Generator, size: int = 256,
                    n_objects: Optional[int] = None) -> tuple[list, list]:
    """Random layout of non-overlapping objects on a background.

    Returns ``(masks, albedos)``; masks partition the frame, mask 0 is the
    background.
    """
    shape = (size, size)
    if n_objects is None:
        n_objects = int(rng.integers(3, 6))
    albedos = [_random_albedo(rng, BACKGROUND_SATURATION)]
    taken = np.zeros(shape, dtype=bool)
    masks = []
    for _ in range(50 * n_objects):
        if len(masks) == n_objects:
            break
        m = _random_shape(rng, shape)
        # 3 px clearance keeps distinct objects from touching.
        grown = np.zeros_like(m)
        ys, xs = np.nonzero(m)
        grown[max(0, ys.min() - 3): ys.max() + 4, max(0, xs.min() - 3): xs.max() + 4] = True
        if m.any() and not (grown & taken).any():
            masks.append(m)
            taken |= m
            albedos.append(_random_albedo(rng, OBJECT_SATURATION))
    return [~taken] + masks, albedos


def _lit_spec(masks, albedos, body_gain, highlights) -> SceneSpec:
    h, w = masks[0].shape
    regions = []
    for i, (mask, k) in enumerate(zip(masks, albedos)):
        spec_gain = highlights.get(i, 0.0)
        regions.append(Region(mask, SurfacePatch(k, body_gain=body_gain, specular_gain=spec_gain),
                              None if i == 0 else EdgeClass.MATERIAL))
    return SceneSpec(w, h, regions)


def _random_lighting(rng: np.random.Generator, shape, gain: float) -> np.ndarray:
    lo = rng.uniform(0.75, 0.9)
    return gain * linear_ramp(shape, lo, 1.0, angle_deg=rng.uniform(0.0, 360.0))


def benchmark_suite(n_cases: int = 20, size: int = 256, seed: int = 0) -> Iterator[BenchmarkCase]:
    """Seeded spliced/original pairs.

    The host is a random layout under one light; the donor is the same
    layout under a different light (gain and falloff direction), so the
    paste boundary changes only the body-reflection geometry. Hosts carry
    a highlight lobe on one object. Both images are stored through 8-bit
    quantization.
    """
    rng = np.random.default_rng(seed)
    shape = (size, size)
    for idx in range(n_cases):
        masks, albedos = benchmark_scene(rng, size)
        # Keep the brightest channel below 1 after the highlight is added.
        host_gain = rng.uniform(0.7, 0.85) / max(max(k) for k in albedos)
        host_gain = min(host_gain, 0.8 / max(max(k) for k in albedos))
        host_light = _random_lighting(rng, shape, host_gain)
        obj = int(rng.integers(1, len(masks))) if len(masks) > 1 else 0
        ys, xs = np.nonzero(masks[obj])
        peak = float(rng.uniform(0.08, 0.18))
        highlights = {obj: lobe(shape, xs.mean() + 0.5, ys.mean() + 0.5, rng.uniform(4.0, 9.0), peak)}
        host_img, _ = render(_lit_spec(masks, albedos, host_light, highlights))

        ratio = rng.uniform(0.35, 0.55)
        donor_light = _random_lighting(rng, shape, host_gain * ratio)
        donor_img, _ = render(_lit_spec(masks, albedos, donor_light, {}))

        while True:
            cx, cy = rng.uniform(0.3, 0.7, size=2) * size
            rx, ry = rng.uniform(0.12, 0.25, size=2) * size
            paste = ellipse(shape, cx, cy, rx, ry)
            if paste.any() and not paste.all():
                break
        spliced, truth = make_splice(host_img, donor_img, paste)
        yield BenchmarkCase(
            case_id=f"synth_{idx:03d}",
            spliced=requantize(spliced),
            original=requantize(host_img),
            paste_mask=paste,
            truth=truth,
        )
