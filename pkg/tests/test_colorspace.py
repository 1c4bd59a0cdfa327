import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from splicedge.colorspace import srgb_to_linear, to_opponent, to_saturation


def px(r, g, b):
    return np.array([[[r, g, b]]], dtype=np.float64)


@pytest.mark.parametrize(
    "pixel, expected",
    [
        ((0.4, 0.4, 0.4), 2.0 / 3.0),
        ((1.0, 0.0, 0.0), 1.0),
        ((0.0, 0.0, 0.0), 0.0),
    ],
)
def test_saturation_examples(pixel, expected):
    assert to_saturation(px(*pixel))[0, 0] == pytest.approx(expected, abs=1e-15)


def test_saturation_scale_cancels():
    a = to_saturation(px(0.2, 0.4, 0.6))[0, 0]
    b = to_saturation(px(0.1, 0.2, 0.3))[0, 0]
    assert a == pytest.approx(b, abs=1e-15)


def test_opponent_example():
    o1, o2 = to_opponent(px(1.0, 0.5, 0.3))
    assert o1[0, 0] == pytest.approx(0.25, abs=1e-15)
    assert o2[0, 0] == pytest.approx(-0.225, abs=1e-15)


@pytest.mark.parametrize("c", [0.0, 0.1, 0.37, 1.0])
def test_opponent_achromatic_axis(c):
    o1, o2 = to_opponent(px(c, c, c))
    assert o1[0, 0] == 0.0 and o2[0, 0] == 0.0


def test_opponent_equal_offset_cancels():
    a = to_opponent(px(0.6, 0.1, 0.1))
    b = to_opponent(px(0.8, 0.3, 0.3))
    assert a[0][0, 0] == pytest.approx(b[0][0, 0], abs=1e-15)
    assert a[1][0, 0] == pytest.approx(b[1][0, 0], abs=1e-15)


def test_rejects_bad_images():
    with pytest.raises(ValueError):
        to_saturation(np.zeros((4, 4)))
    with pytest.raises(ValueError):
        to_opponent(np.full((2, 2, 3), 1.5))


unit_images = arrays(np.float64, st.tuples(st.integers(1, 6), st.integers(1, 6), st.just(3)),
                     elements=st.floats(0.0, 1.0))


@settings(max_examples=200)
@given(unit_images)
def test_ranges(img):
    s = to_saturation(img)
    o1, o2 = to_opponent(img)
    assert s.shape == img.shape[:2]
    assert np.all((s >= 0.0) & (s <= 1.0))
    assert np.all(np.abs(o1) <= 0.5) and np.all(np.abs(o2) <= 0.5)


@settings(max_examples=200)
@given(unit_images, st.floats(0.01, 1.0))
def test_saturation_gain_invariance(img, a):
    s0 = to_saturation(img)
    s1 = to_saturation(img * a)
    nonblack = img.sum(axis=-1) * a > 0
    np.testing.assert_allclose(s1[nonblack], s0[nonblack], rtol=0, atol=1e-12)


@settings(max_examples=200)
@given(arrays(np.int64, (4, 4, 3), elements=st.integers(0, 2**10)), st.integers(0, 2**10))
def test_opponent_offset_invariance_exact_on_dyadic_samples(counts, k):
    # Samples on a 2**-11 grid make every sum and halving exact in binary.
    img = counts / 2.0**11
    shifted = (counts + k) / 2.0**11
    a, b = to_opponent(img), to_opponent(shifted)
    assert np.array_equal(a[0], b[0]) and np.array_equal(a[1], b[1])


def test_deterministic():
    img = np.random.default_rng(3).random((9, 7, 3))
    assert np.array_equal(to_saturation(img), to_saturation(img.copy()))
    assert all(np.array_equal(x, y) for x, y in zip(to_opponent(img), to_opponent(img.copy())))


def test_srgb_linearization_endpoints():
    lin = srgb_to_linear(np.array([[[0.0, 0.04045, 1.0]]]))
    np.testing.assert_allclose(lin[0, 0], [0.0, 0.04045 / 12.92, 1.0])
