"""Scoring of splice maps against ground-truth boundaries.

Matching is distance tolerant: a detected pixel counts as correct when a
truth pixel lies within Chebyshev distance ``tol`` of it, and a truth
pixel counts as recalled when a detection lies within ``tol`` of it.
``tol=0`` gives exact pixel matching.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Callable, Iterable, Optional, Sequence

import numpy as np
from scipy import ndimage

from ._arrays import as_mask, same_shape
from .classify import DetectionResult

DEFAULT_TOL = 2
DEFAULT_THETA = 0.3
ALPHA_GRID = np.linspace(0.0, 1.0, 101)
THETA_GRID = np.linspace(0.0, 1.0, 101)


@dataclass(frozen=True)
class PixelScore:
    precision: float
    recall: float
    f1: float
    matched_true_positives: int
    detected_count: int
    truth_count: int


@dataclass(frozen=True)
class RocPoint:
    alpha: float
    tpr: float
    fpr: float


@dataclass(frozen=True)
class Aggregates:
    f1_max: float
    f1_mean: float
    f1_median: float
    br_mean: float


def within(mask: np.ndarray, tol: int) -> np.ndarray:
    """Pixels within Chebyshev distance ``tol`` of some pixel of ``mask``."""
    if tol < 0:
        raise ValueError("tol must be >= 0")
    if tol == 0 or not mask.any():
        return mask.copy()
    return ndimage.binary_dilation(mask, structure=np.ones((2 * tol + 1,) * 2, dtype=bool))


def f1_from(precision: float, recall: float) -> float:
    total = precision + recall
    return 2.0 * precision * recall / total if total > 0 else 0.0


def pixel_f1(detected: np.ndarray, truth: np.ndarray, tol: int = DEFAULT_TOL) -> PixelScore:
    """Tolerant precision, recall and F1 of ``detected`` against ``truth``.

    An empty set is matched vacuously: empty detection has precision 1,
    empty truth has recall 1. So empty against empty scores 1 and either
    one empty against a non-empty other scores F1 = 0.
    """
    detected, truth = as_mask(detected), as_mask(truth)
    same_shape(detected, truth)
    n_det, n_truth = int(detected.sum()), int(truth.sum())
    tp = int((detected & within(truth, tol)).sum())
    hit = int((truth & within(detected, tol)).sum())
    precision = tp / n_det if n_det else 1.0
    recall = hit / n_truth if n_truth else 1.0
    return PixelScore(precision, recall, f1_from(precision, recall), tp, n_det, n_truth)


def boundary_recall(detected: np.ndarray, truth: np.ndarray, tol: int = DEFAULT_TOL) -> float:
    """Fraction of truth pixels with a detection within ``tol`` (1.0 for empty truth)."""
    detected, truth = as_mask(detected), as_mask(truth)
    same_shape(detected, truth)
    n_truth = int(truth.sum())
    if n_truth == 0:
        return 1.0
    return int((truth & within(detected, tol)).sum()) / n_truth


def gate(br: float, theta: float) -> bool:
    """True when the boundary recall reaches the threshold (``br >= theta``)."""
    return br >= theta


def splice_fraction(result: DetectionResult) -> float:
    """Default per-image score for ROC analysis: share of opponent edges kept as splice."""
    return result.splice_fraction


def roc(spliced_scores: Sequence[float], original_scores: Sequence[float],
        alphas: Sequence[float] = ALPHA_GRID) -> list[RocPoint]:
    """TPR/FPR of the rule ``score > alpha`` over a grid of ``alpha`` values."""
    sp = np.asarray(spliced_scores, dtype=np.float64)
    og = np.asarray(original_scores, dtype=np.float64)
    if sp.size == 0 or og.size == 0:
        raise ValueError("roc needs at least one spliced and one original score")
    return [
        RocPoint(float(a), float(np.mean(sp > a)), float(np.mean(og > a)))
        for a in np.asarray(alphas, dtype=np.float64)
    ]


def roc_auc(points: Sequence[RocPoint]) -> float:
    """Trapezoidal area under the ROC polyline, closed with (0, 0) and (1, 1)."""
    xy = sorted({(0.0, 0.0), (1.0, 1.0)} | {(p.fpr, p.tpr) for p in points})
    x = np.array([p[0] for p in xy])
    y = np.array([p[1] for p in xy])
    return float(np.sum(np.diff(x) * (y[1:] + y[:-1]) / 2.0))


def aggregate(f1_values: Sequence[float], br_values: Sequence[float]) -> Aggregates:
    """Max/mean/median of F1 and mean boundary recall.

    The median of an even count is the mean of the two middle values.
    """
    f1 = np.asarray(f1_values, dtype=np.float64)
    br = np.asarray(br_values, dtype=np.float64)
    if f1.size == 0 or br.size == 0:
        raise ValueError("aggregate needs at least one row")
    return Aggregates(
        f1_max=float(f1.max()),
        f1_mean=float(f1.mean()),
        f1_median=float(np.median(f1)),
        br_mean=float(br.mean()),
    )


@dataclass(frozen=True)
class ImageRow:
    """Scores for one image of a dataset.

    ``kind`` is ``"spliced"`` or ``"original"``. Pixel counts: splice
    pixels detected, opponent-space edge pixels, truth boundary pixels
    and total pixels.
    """

    image_id: str
    kind: str
    score: PixelScore
    boundary_recall: float
    gate: bool
    roc_score: float
    splice_pixels: int
    o_edge_pixels: int
    truth_pixels: int
    total_pixels: int

    def as_dict(self) -> dict:
        d = asdict(self)
        d["score"] = asdict(self.score)
        return d


def score_image(image_id: str, kind: str, result: DetectionResult, truth: np.ndarray,
                tol: int = DEFAULT_TOL, theta: float = DEFAULT_THETA,
                score_fn: Callable[[DetectionResult], float] = splice_fraction) -> ImageRow:
    truth = as_mask(truth)
    if kind not in ("spliced", "original"):
        raise ValueError(f"kind must be 'spliced' or 'original', got {kind!r}")
    score = pixel_f1(result.splice_map, truth, tol)
    br = boundary_recall(result.splice_map, truth, tol)
    return ImageRow(
        image_id=image_id,
        kind=kind,
        score=score,
        boundary_recall=br,
        gate=gate(br, theta),
        roc_score=float(score_fn(result)),
        splice_pixels=int(result.splice_map.sum()),
        o_edge_pixels=int(result.o_edges.sum()),
        truth_pixels=int(truth.sum()),
        total_pixels=int(truth.size),
    )


def f1_theta_curve(rows: Iterable[ImageRow], thetas: Sequence[float] = THETA_GRID) -> list[tuple[float, float]]:
    """Mean F1 of spliced images as the boundary-recall gate tightens.

    An image whose boundary recall fails the gate contributes F1 = 0.
    """
    spliced = [r for r in rows if r.kind == "spliced"]
    if not spliced:
        return []
    f1 = np.array([r.score.f1 for r in spliced])
    br = np.array([r.boundary_recall for r in spliced])
    return [(float(t), float(np.mean(np.where(br >= t, f1, 0.0)))) for t in thetas]


@dataclass
class EvalReport:
    rows: list[ImageRow]
    aggregates: Optional[Aggregates]
    roc: list[RocPoint]
    auc: Optional[float]
    f1_theta: list[tuple[float, float]]
    gated_f1_mean: Optional[float]

    @classmethod
    def from_rows(cls, rows: Sequence[ImageRow], theta: float = DEFAULT_THETA,
                  alphas: Sequence[float] = ALPHA_GRID,
                  thetas: Sequence[float] = THETA_GRID) -> "EvalReport":
        """Assemble a report. F1/BR statistics use spliced rows only; ROC needs both kinds."""
        rows = sorted(rows, key=lambda r: (r.kind, r.image_id))
        if not rows:
            raise ValueError("no rows to report")
        spliced = [r for r in rows if r.kind == "spliced"]
        originals = [r for r in rows if r.kind == "original"]
        aggs = None
        gated = None
        if spliced:
            aggs = aggregate([r.score.f1 for r in spliced], [r.boundary_recall for r in spliced])
            gated = float(np.mean([r.score.f1 if r.gate else 0.0 for r in spliced]))
        points: list[RocPoint] = []
        auc = None
        if spliced and originals:
            points = roc([r.roc_score for r in spliced], [r.roc_score for r in originals], alphas)
            auc = roc_auc(points)
        return cls(list(rows), aggs, points, auc, f1_theta_curve(rows, thetas), gated)
