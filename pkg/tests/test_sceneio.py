import numpy as np
import pytest

from splicedge.simulate.library import probe_spec
from splicedge.simulate.render import EdgeClass, render
from splicedge.simulate.sceneio import (
    SCENE_CLASSES,
    SceneSyntaxError,
    bundled_scene_path,
    load_scene,
    parse_scene,
)

MINIMAL = """\
width = 8
height = 6

[region back]
shape = fill
albedo = 0.5 0.3 0.2

[region box]
shape = rect 4 0 8 6
albedo = 0.5 0.3 0.2
body_gain = 0.5
edge = shading
"""


def test_minimal_scene():
    spec = parse_scene(MINIMAL)
    assert (spec.width, spec.height, spec.illuminant) == (8, 6, 1.0)
    img, truth = render(spec)
    np.testing.assert_allclose(img[0, 0], (0.5, 0.3, 0.2))
    np.testing.assert_allclose(img[0, 7], (0.25, 0.15, 0.1))
    assert truth.boundary[:, 4].all() and truth.boundary.sum() == 6
    assert np.all(truth.classes[truth.boundary] == EdgeClass.SHADING)


@pytest.mark.parametrize("name", SCENE_CLASSES)
def test_bundled_scenes_match_probe_specs(name):
    a, ta = render(load_scene(bundled_scene_path(name)))
    b, tb = render(probe_spec(name))
    assert np.array_equal(a, b)
    assert np.array_equal(ta.classes, tb.classes)


def test_fields():
    text = MINIMAL.replace("body_gain = 0.5", "body_gain = ramp 0.2 0.8 0\nspecular_gain = lobe 6 3 1.5 0.1")
    spec = parse_scene(text)
    gain = spec.regions[1].patch.body_gain
    assert gain.shape == (6, 8)
    assert gain[0, 0] == pytest.approx(0.2) and gain[0, -1] == pytest.approx(0.8)


@pytest.mark.parametrize(
    "text, line, fragment",
    [
        (MINIMAL.replace("height = 6", "height = six"), 2, "integer"),
        (MINIMAL.replace("albedo = 0.5 0.3 0.2\n\n", "albedo = 0.5 0.3\n\n", 1), 6, "three"),
        (MINIMAL.replace("edge = shading", "edge = sparkle"), 12, "edge"),
        (MINIMAL.replace("shape = rect 4 0 8 6", "shape = hexagon 1"), 9, "shape"),
        (MINIMAL.replace("[region box]", "[region box"), 8, "section"),
        (MINIMAL.replace("body_gain = 0.5", "body_gain 0.5"), 11, "key = value"),
        (MINIMAL.replace("body_gain = 0.5", "colour = red"), 11, "unknown key"),
        (MINIMAL.replace("edge = shading\n", ""), 8, "edge"),
        (MINIMAL.replace("shape = fill", "shape = rect 0 0 2 2"), 4, "cover"),
        (MINIMAL.replace("body_gain = 0.5", "body_gain = -1"), 11, "body_gain"),
        (MINIMAL.replace("width = 8\n", ""), 1, "width"),
        (MINIMAL.replace("albedo = 0.5 0.3 0.2\nbody", "albedo = 0.5 1.3 0.2\nbody"), 10, "albedo"),
    ],
)
def test_errors_carry_line_numbers(text, line, fragment):
    with pytest.raises(SceneSyntaxError) as info:
        parse_scene(text)
    assert info.value.line == line
    assert fragment in str(info.value)
    assert str(info.value).startswith(f"line {line}:")


def test_unknown_bundled_scene():
    with pytest.raises(FileNotFoundError):
        bundled_scene_path("nope")
