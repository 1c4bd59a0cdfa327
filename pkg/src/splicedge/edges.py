"""Laplacian responses, composite gradient and 3-sigma edge maps."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ._arrays import as_plane, same_shape

LAPLACIAN_KERNEL = np.array(
    [[0.0, 1.0, 0.0],
     [1.0, -4.0, 1.0],
     [0.0, 1.0, 0.0]]
)

SIGMA_MULTIPLIER = 3.0


@dataclass(frozen=True)
class GradientStats:
    """Spread of a composite-gradient map and the edge threshold derived from it."""

    sigma: float
    threshold: float

    @classmethod
    def from_sigma(cls, sigma: float) -> "GradientStats":
        return cls(sigma=float(sigma), threshold=SIGMA_MULTIPLIER * float(sigma))


def laplacian(plane: np.ndarray) -> np.ndarray:
    """Convolve ``plane`` with the 4-neighbour Laplacian kernel.

    Borders are replicate-padded, so a constant plane gives exactly zero
    everywhere including the frame. Terms are accumulated in row-major
    kernel order (up, left, centre, right, down).
    """
    plane = as_plane(plane)
    p = np.pad(plane, 1, mode="edge")
    up = p[:-2, 1:-1]
    left = p[1:-1, :-2]
    centre = p[1:-1, 1:-1]
    right = p[1:-1, 2:]
    down = p[2:, 1:-1]
    return (((up + left) + (-4.0) * centre) + right) + down


def composite_gradient(planes: Sequence[np.ndarray]) -> np.ndarray:
    """Per-pixel Euclidean norm of a stack of Laplacian responses.

    Squares are summed in ascending order per pixel so the result does not
    depend on the order of ``planes``.
    """
    if len(planes) == 0:
        raise ValueError("composite_gradient needs at least one plane")
    arrays = [as_plane(p) for p in planes]
    same_shape(*arrays)
    squares = np.sort(np.stack([a * a for a in arrays]), axis=0)
    total = squares[0].copy()
    for sq in squares[1:]:
        total += sq
    return np.sqrt(total)


def gradient_sigma(grad: np.ndarray) -> float:
    """Population standard deviation of ``grad`` over all pixels.

    Computed on data shifted by its first sample, which makes a constant
    map give exactly zero.
    """
    grad = as_plane(grad)
    shifted = grad - grad.flat[0]
    dev = shifted - shifted.mean()
    return float(np.sqrt(np.mean(dev * dev)))


def threshold_edges(grad: np.ndarray) -> tuple[np.ndarray, GradientStats]:
    """Flag pixels whose gradient strictly exceeds three standard deviations.

    A constant nonzero map has ``sigma == 0`` and every pixel is flagged;
    that degenerate case is left as is.
    """
    grad = as_plane(grad)
    stats = GradientStats.from_sigma(gradient_sigma(grad))
    return grad > stats.threshold, stats


def detect_edges_in_space(planes: Sequence[np.ndarray]) -> tuple[np.ndarray, GradientStats]:
    """Edge map of one color space given its channel planes."""
    responses = [laplacian(p) for p in planes]
    return threshold_edges(composite_gradient(responses))
