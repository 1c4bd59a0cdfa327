import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

import oracles
from splicedge._arrays import DimensionMismatchError
from splicedge.classify import detect
from splicedge.evaluation import (
    EvalReport,
    aggregate,
    boundary_recall,
    f1_theta_curve,
    gate,
    pixel_f1,
    roc,
    roc_auc,
    score_image,
)

maps = arrays(np.bool_, (8, 8))


def line(shift=0):
    m = np.zeros((12, 14), bool)
    m[5 + shift, 2:12] = True
    return m


def test_perfect_match():
    t = line()
    for tol in (0, 1, 2, 5):
        s = pixel_f1(t, t, tol)
        assert (s.precision, s.recall, s.f1) == (1.0, 1.0, 1.0)


def test_far_apart_tol0():
    a = np.zeros((10, 10), bool)
    b = np.zeros((10, 10), bool)
    a[0, 0] = b[9, 9] = True
    assert pixel_f1(a, b, 0).f1 == 0.0


def test_shifted_line():
    t, d = line(0), line(1)
    for tol, expected in ((2, 1.0), (0, 0.0)):
        p, r, f1, tp = oracles.pixel_f1(d.tolist(), t.tolist(), tol)
        assert f1 == expected
        s = pixel_f1(d, t, tol)
        assert (s.precision, s.recall, s.f1, s.matched_true_positives) == (p, r, f1, tp)
    assert pixel_f1(d, t, 2).detected_count == 10 and pixel_f1(d, t, 2).truth_count == 10


def test_empty_conventions():
    z = np.zeros((4, 4), bool)
    one = z.copy()
    one[1, 1] = True
    assert pixel_f1(z, z).f1 == 1.0
    assert pixel_f1(z, one).f1 == 0.0
    assert pixel_f1(one, z).f1 == 0.0


def test_f1_formula_invariant():
    rng = np.random.default_rng(0)
    for _ in range(50):
        a, b = rng.random((2, 8, 8)) > 0.8
        s = pixel_f1(a, b, 1)
        if s.precision + s.recall > 0:
            assert s.f1 == pytest.approx(2 * s.precision * s.recall / (s.precision + s.recall))


def test_boundary_recall_examples():
    t = line()
    assert boundary_recall(t | line(2), t) == 1.0
    assert boundary_recall(np.zeros_like(t), t) == 0.0
    square = np.zeros((5, 5), bool)
    square[1:4, 1:4] = True
    square[2, 2] = False
    corners = np.zeros((5, 5), bool)
    corners[[1, 1, 3, 3], [1, 3, 1, 3]] = True
    assert oracles.boundary_recall(corners.tolist(), square.tolist(), 1) == 1.0
    assert boundary_recall(corners, square, tol=1) == 1.0


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatchError):
        pixel_f1(np.zeros((2, 2), bool), np.zeros((2, 3), bool))
    with pytest.raises(DimensionMismatchError):
        boundary_recall(np.zeros((2, 2), bool), np.zeros((3, 3), bool))


@pytest.mark.parametrize("br, theta, expected", [(0.3, 0.3, True), (0.0, 0.0, True), (0.29, 0.3, False)])
def test_gate(br, theta, expected):
    assert gate(br, theta) is expected


def test_roc_examples():
    pts = roc([1.0, 1.0], [0.0, 0.0])
    assert len(pts) == 101
    half = pts[50]
    assert (half.alpha, half.tpr, half.fpr) == (0.5, 1.0, 0.0)
    same = roc([0.1, 0.5, 0.9], [0.1, 0.5, 0.9])
    assert all(p.tpr == p.fpr for p in same)
    # 0.9 > 0.5 and 0.2 < 0.5 for spliced; 0.1 < 0.5 and 0.8 > 0.5 for originals.
    mixed = roc([0.9, 0.2], [0.1, 0.8])[50]
    assert (mixed.tpr, mixed.fpr) == (0.5, 0.5)


def test_roc_requires_scores():
    with pytest.raises(ValueError):
        roc([], [0.1])
    with pytest.raises(ValueError):
        roc([0.1], [])


@settings(max_examples=100)
@given(st.lists(st.floats(0, 1), min_size=1, max_size=10), st.lists(st.floats(0, 1), min_size=1, max_size=10))
def test_roc_monotone(sp, og):
    pts = roc(sp, og)
    tpr = [p.tpr for p in pts]
    fpr = [p.fpr for p in pts]
    assert all(a >= b for a, b in zip(tpr, tpr[1:]))
    assert all(a >= b for a, b in zip(fpr, fpr[1:]))
    assert 0.0 <= roc_auc(pts) <= 1.0


def test_auc_extremes():
    assert roc_auc(roc([0.9, 0.8], [0.1, 0.0])) == 1.0
    assert roc_auc(roc([0.5], [0.5])) == pytest.approx(0.5)


def test_aggregate_examples():
    a = aggregate([0.5], [0.7])
    assert (a.f1_max, a.f1_mean, a.f1_median, a.br_mean) == (0.5, 0.5, 0.5, 0.7)
    b = aggregate([0.2, 0.4, 0.9], [1.0, 0.0, 0.5])
    assert b.f1_max == 0.9 and b.f1_mean == pytest.approx(0.5) and b.f1_median == 0.4
    assert b.br_mean == pytest.approx(0.5)
    assert aggregate([0.1, 0.2, 0.3, 0.8], [0, 0, 0, 0]).f1_median == pytest.approx(0.25)
    with pytest.raises(ValueError):
        aggregate([], [])


@settings(max_examples=100)
@given(maps, maps, st.integers(0, 3))
def test_metrics_match_brute_force(d, t, tol):
    p, r, f1, tp = oracles.pixel_f1(d.tolist(), t.tolist(), tol)
    s = pixel_f1(d, t, tol)
    assert (s.precision, s.recall, s.f1, s.matched_true_positives) == (p, r, f1, tp)
    assert boundary_recall(d, t, tol) == oracles.boundary_recall(d.tolist(), t.tolist(), tol)


@settings(max_examples=100)
@given(maps, maps, st.integers(0, 2), st.integers(0, 2))
def test_tolerance_monotone(d, t, t1, t2):
    lo, hi = sorted((t1, t2))
    a, b = pixel_f1(d, t, lo), pixel_f1(d, t, hi)
    assert b.precision >= a.precision and b.recall >= a.recall
    assert boundary_recall(d, t, hi) >= boundary_recall(d, t, lo)


@settings(max_examples=100)
@given(arrays(np.bool_, (6, 6)), arrays(np.bool_, (6, 6)), st.integers(0, 4), st.integers(0, 4), st.integers(0, 3))
def test_shift_invariance(d, t, dy, dx, tol):
    # Pad so the translated content stays inside the frame.
    big_d = np.zeros((14, 14), bool)
    big_t = np.zeros((14, 14), bool)
    big_d[2:8, 2:8], big_t[2:8, 2:8] = d, t
    moved_d = np.roll(big_d, (dy, dx), axis=(0, 1))
    moved_t = np.roll(big_t, (dy, dx), axis=(0, 1))
    assert pixel_f1(big_d, big_t, tol) == pixel_f1(moved_d, moved_t, tol)
    assert boundary_recall(big_d, big_t, tol) == boundary_recall(moved_d, moved_t, tol)


@settings(max_examples=50)
@given(maps, maps, st.floats(0, 1))
def test_gate_matches_inline(d, t, theta):
    br = boundary_recall(d, t, 2)
    assert gate(br, theta) == (1 if br >= theta else 0)


def _row(image_id, kind, f1_target=None):
    img = np.zeros((16, 16, 3))
    img[:, 8:] = (0.6, 0.2, 0.1)
    img[:, :8] = (0.3, 0.1, 0.05)
    truth = np.zeros((16, 16), bool)
    if kind == "spliced":
        truth[:, 8] = True
    return score_image(image_id, kind, detect(img), truth)


def test_report_assembly():
    rows = [_row("b", "original"), _row("a", "spliced"), _row("c", "spliced")]
    report = EvalReport.from_rows(rows)
    assert [r.image_id for r in report.rows] == ["b", "a", "c"]
    spliced = [r for r in rows if r.kind == "spliced"]
    again = aggregate([r.score.f1 for r in spliced], [r.boundary_recall for r in spliced])
    assert report.aggregates == again
    assert len(report.roc) == 101 and report.auc is not None
    curve = dict(report.f1_theta)
    assert curve[0.0] == pytest.approx(report.aggregates.f1_mean)
    assert all(a >= b for a, b in zip([f for _, f in report.f1_theta], [f for _, f in report.f1_theta][1:]))


def test_single_pair_aggregates_equal_row():
    row = _row("x", "spliced")
    report = EvalReport.from_rows([row, _row("y", "original")])
    a = report.aggregates
    assert a.f1_max == a.f1_mean == a.f1_median == row.score.f1
    assert a.br_mean == row.boundary_recall


def test_f1_theta_gates_rows():
    rows = [_row("a", "spliced")]
    curve = f1_theta_curve(rows, thetas=[0.0, 1.0, 1.0 + 1e-9])
    assert curve[0][1] == rows[0].score.f1
    assert curve[2][1] == 0.0
