"""Plain-text scene descriptions.

Format (``#`` starts a comment, blank lines are ignored)::

    width = 128
    height = 128
    illuminant = 1.0

    [region background]
    shape = fill
    albedo = 0.70 0.40 0.15
    body_gain = 0.9

    [region lit]
    shape = rect 64 58 115 115
    albedo = 0.70 0.40 0.15
    body_gain = 0.45
    edge = shading

Top-level keys: ``width``, ``height`` (required), ``illuminant`` (default 1).

Region keys:

``shape``
    ``fill`` (whatever no other region claims; first region only),
    ``rect X0 Y0 X1 Y1`` (half-open), ``ellipse CX CY RX RY`` or
    ``disk CX CY R``. Later regions take pixels from earlier ones.
``albedo``
    three values in [0, 1].
``body_gain``, ``specular_gain``
    a number, ``ramp START STOP ANGLE_DEG`` or ``lobe CX CY SIGMA PEAK``.
    Defaults 1 and 0.
``specular_coeff``
    number, default 1.
``edge``
    class of the region's boundary: shading, shadow, highlight,
    material or occlusion. Required for every region but the first.
"""

from __future__ import annotations

from pathlib import Path
from typing import Union

import numpy as np

from .render import (
    EdgeClass,
    Region,
    SceneError,
    SceneSpec,
    SurfacePatch,
    disk,
    ellipse,
    linear_ramp,
    lobe,
    rect,
)

SCENE_CLASSES = ("shading", "shadow", "highlight", "material", "occlusion")
_SHAPE_ARITY = {"fill": 0, "rect": 4, "ellipse": 4, "disk": 3}
_REGION_KEYS = {"shape", "albedo", "body_gain", "specular_gain", "specular_coeff", "edge"}


class SceneSyntaxError(SceneError):
    def __init__(self, line: int, message: str) -> None:
        super().__init__(f"line {line}: {message}")
        self.line = line


def _numbers(values: list[str], line: int, what: str) -> list[float]:
    try:
        return [float(v) for v in values]
    except ValueError:
        raise SceneSyntaxError(line, f"{what}: expected numbers, got {' '.join(values)!r}") from None


def _field(text: str, shape, line: int, key: str):
    parts = text.split()
    kind, args = parts[0], parts[1:]
    if len(parts) == 1:
        value = _numbers(parts, line, key)[0]
    elif kind == "ramp" and len(args) == 3:
        value = linear_ramp(shape, *_numbers(args, line, key))
    elif kind == "lobe" and len(args) == 4:
        value = lobe(shape, *_numbers(args, line, key))
    else:
        raise SceneSyntaxError(line, f"{key}: expected a number, 'ramp START STOP ANGLE' or "
                                     f"'lobe CX CY SIGMA PEAK', got {text!r}")
    if np.any(np.asarray(value) < 0):
        raise SceneSyntaxError(line, f"{key} must be >= 0")
    return value


def parse_scene(text: str) -> SceneSpec:
    """Parse a scene description. Errors carry the offending line number."""
    header: dict[str, tuple[str, int]] = {}
    blocks: list[tuple[str, int, dict[str, tuple[str, int]]]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("["):
            if not line.endswith("]"):
                raise SceneSyntaxError(lineno, f"unterminated section header {line!r}")
            words = line[1:-1].split()
            if len(words) != 2 or words[0] != "region":
                raise SceneSyntaxError(lineno, "section header must read '[region NAME]'")
            blocks.append((words[1], lineno, {}))
            continue
        if "=" not in line:
            raise SceneSyntaxError(lineno, f"expected 'key = value', got {line!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        target = blocks[-1][2] if blocks else header
        allowed = _REGION_KEYS if blocks else {"width", "height", "illuminant"}
        if key not in allowed:
            raise SceneSyntaxError(lineno, f"unknown key {key!r}")
        if key in target:
            raise SceneSyntaxError(lineno, f"duplicate key {key!r}")
        if not value:
            raise SceneSyntaxError(lineno, f"{key!r} has no value")
        target[key] = (value, lineno)

    last = len(text.splitlines()) or 1
    for key in ("width", "height"):
        if key not in header:
            raise SceneSyntaxError(1, f"missing top-level key {key!r}")
    dims = {}
    for key in ("width", "height"):
        value, lineno = header[key]
        try:
            dims[key] = int(value)
        except ValueError:
            raise SceneSyntaxError(lineno, f"{key} must be an integer") from None
        if dims[key] < 1:
            raise SceneSyntaxError(lineno, f"{key} must be positive")
    illuminant = 1.0
    if "illuminant" in header:
        value, lineno = header["illuminant"]
        illuminant = _numbers([value], lineno, "illuminant")[0]
        if illuminant <= 0:
            raise SceneSyntaxError(lineno, "illuminant must be > 0")
    if not blocks:
        raise SceneSyntaxError(last, "scene has no [region] sections")

    shape = (dims["height"], dims["width"])
    labels = np.full(shape, -1, dtype=np.int32)
    regions: list[Region] = []
    fill_index = None
    for index, (name, header_line, keys) in enumerate(blocks):
        if "shape" not in keys:
            raise SceneSyntaxError(header_line, f"region {name!r} has no shape")
        if "albedo" not in keys:
            raise SceneSyntaxError(header_line, f"region {name!r} has no albedo")
        shape_text, lineno = keys["shape"]
        kind, *args = shape_text.split()
        if kind not in _SHAPE_ARITY or len(args) != _SHAPE_ARITY[kind]:
            raise SceneSyntaxError(lineno, f"bad shape {shape_text!r}")
        nums = _numbers(args, lineno, "shape")
        if kind == "fill":
            if index != 0:
                raise SceneSyntaxError(lineno, "'fill' is only allowed for the first region")
            fill_index = index
            mask = np.zeros(shape, dtype=bool)
        elif kind == "rect":
            mask = rect(shape, *(int(round(v)) for v in nums))
        elif kind == "ellipse":
            mask = ellipse(shape, *nums)
        else:
            mask = disk(shape, *nums)
        labels[mask] = index

        value, lineno = keys["albedo"]
        albedo = _numbers(value.split(), lineno, "albedo")
        if len(albedo) != 3:
            raise SceneSyntaxError(lineno, "albedo needs three values")
        if any(not 0.0 <= v <= 1.0 for v in albedo):
            raise SceneSyntaxError(lineno, "albedo values must lie in [0, 1]")
        try:
            patch = SurfacePatch(
                tuple(albedo),
                body_gain=_field(keys["body_gain"][0], shape, keys["body_gain"][1], "body_gain")
                if "body_gain" in keys else 1.0,
                specular_gain=_field(keys["specular_gain"][0], shape, keys["specular_gain"][1],
                                     "specular_gain")
                if "specular_gain" in keys else 0.0,
                specular_coeff=_numbers([keys["specular_coeff"][0]], keys["specular_coeff"][1],
                                        "specular_coeff")[0]
                if "specular_coeff" in keys else 1.0,
            )
        except SceneSyntaxError:
            raise
        except SceneError as exc:
            raise SceneSyntaxError(header_line, f"region {name!r}: {exc}") from None

        edge = None
        if "edge" in keys:
            value, lineno = keys["edge"]
            if value not in SCENE_CLASSES:
                raise SceneSyntaxError(lineno, f"edge must be one of {', '.join(SCENE_CLASSES)}")
            edge = EdgeClass[value.upper()]
        elif index > 0:
            raise SceneSyntaxError(header_line, f"region {name!r} needs an 'edge' class")
        regions.append(Region(mask, patch, edge, name))

    if fill_index is not None:
        labels[labels == -1] = fill_index
    if np.any(labels == -1):
        raise SceneSyntaxError(blocks[0][1], "regions do not cover the frame (use 'shape = fill')")
    for index, region in enumerate(regions):
        region.mask = labels == index
    kept = [r for r in regions if r.mask.any()]
    if len(kept) != len(regions):
        empty = [r.name for r in regions if not r.mask.any()]
        line = next(b[1] for b in blocks if b[0] == empty[0])
        raise SceneSyntaxError(line, f"region {empty[0]!r} covers no pixels")
    return SceneSpec(width=dims["width"], height=dims["height"], regions=regions,
                     illuminant=illuminant)


def load_scene(path: Union[str, Path]) -> SceneSpec:
    return parse_scene(Path(path).read_text(encoding="utf-8"))


def bundled_scene_path(name: str) -> Path:
    """Path of a scene file shipped with the package (``shading``, ``highlight``, ...)."""
    path = Path(__file__).parent / "scenes" / f"{name}.scene"
    if not path.is_file():
        raise FileNotFoundError(f"no bundled scene named {name!r}")
    return path
