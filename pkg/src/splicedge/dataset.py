"""Dataset discovery, batch evaluation and report files.

Default layout under the dataset root::

    spliced/<id>.<ext>     spliced images
    masks/<id>.<ext>       region masks for spliced images (> 127 = pasted region)
    original/<id>.<ext>    authentic images

Other trees are mapped with a JSON layout file::

    {
      "spliced": "4cam_splc/*.tif",
      "original": "4cam_auth/*.tif",
      "mask": "4cam_splc/edgemask/{stem}_edgemask.*",
      "mask_threshold": 127,
      "mask_invert": false
    }

``spliced``/``original`` are globs relative to the root; ``mask`` is a
glob in which ``{stem}`` is replaced by the image file's stem.
"""

from __future__ import annotations

import json
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Optional, Union

import numpy as np

from ._arrays import DimensionMismatchError
from .classify import detect
from .evaluation import (
    DEFAULT_THETA,
    DEFAULT_TOL,
    EvalReport,
    ImageRow,
    score_image,
)
from .imageio import (
    ImageReadError,
    UnsupportedImageError,
    read_gray8,
    read_rgb,
    write_mask,
    write_rgb,
)
from .simulate.render import ground_truth_boundary

log = logging.getLogger(__name__)

REPORT_SCHEMA = "splicedge-report/1"
IMAGE_SUFFIXES = {".png", ".tif", ".tiff", ".bmp", ".jpg", ".jpeg", ".ppm", ".pgm", ".gif", ".webp"}


class DatasetError(ValueError):
    """The dataset root or layout cannot be used."""


@dataclass(frozen=True)
class Layout:
    spliced: str = "spliced/*"
    original: str = "original/*"
    mask: str = "masks/{stem}.*"
    mask_threshold: int = 127
    mask_invert: bool = False

    @classmethod
    def from_file(cls, path: Union[str, Path]) -> "Layout":
        try:
            data = json.loads(Path(path).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise DatasetError(f"cannot read layout file {path}: {exc}") from None
        known = {k: v for k, v in data.items() if k in cls.__dataclass_fields__}
        unknown = sorted(k for k in data if k not in cls.__dataclass_fields__ and not k.startswith("_"))
        if unknown:
            raise DatasetError(f"unknown layout keys: {', '.join(unknown)}")
        return cls(**known)


@dataclass(frozen=True)
class RunConfig:
    dilate_s: int = 0
    tol: int = DEFAULT_TOL
    theta: float = DEFAULT_THETA
    alpha_steps: int = 101
    theta_steps: int = 101
    linearize: bool = False
    layout: Layout = field(default_factory=Layout)

    def __post_init__(self) -> None:
        if int(self.dilate_s) != self.dilate_s or self.dilate_s < 0:
            raise ValueError("dilate_s must be a non-negative integer")
        if int(self.tol) != self.tol or self.tol < 0:
            raise ValueError("tol must be a non-negative integer")
        if not 0.0 <= self.theta <= 1.0:
            raise ValueError("theta must lie in [0, 1]")
        if self.alpha_steps < 2 or self.theta_steps < 2:
            raise ValueError("grids need at least two points")

    @property
    def alphas(self) -> np.ndarray:
        return np.linspace(0.0, 1.0, self.alpha_steps)

    @property
    def thetas(self) -> np.ndarray:
        return np.linspace(0.0, 1.0, self.theta_steps)


@dataclass(frozen=True)
class DatasetItem:
    image_id: str
    kind: str
    image_path: Path
    mask_path: Optional[Path]


def _images(root: Path, pattern: str) -> list[Path]:
    return sorted(p for p in root.glob(pattern) if p.is_file() and p.suffix.lower() in IMAGE_SUFFIXES)


def discover(root: Union[str, Path], layout: Layout = Layout()) -> list[DatasetItem]:
    """List dataset items in a deterministic order. Spliced items lacking a mask get ``mask_path=None``."""
    root = Path(root)
    if not root.is_dir():
        raise DatasetError(f"dataset root {root} is not a directory")
    items = []
    for kind, pattern in (("spliced", layout.spliced), ("original", layout.original)):
        for path in _images(root, pattern):
            mask_path = None
            if kind == "spliced":
                matches = _images(root, layout.mask.format(stem=path.stem))
                mask_path = matches[0] if matches else None
            items.append(DatasetItem(path.stem, kind, path, mask_path))
    return items


def _evaluate_item(item: DatasetItem, config: RunConfig) -> ImageRow:
    img = read_rgb(item.image_path)
    if item.kind == "spliced":
        if item.mask_path is None:
            raise DatasetError("no region mask found")
        region = read_gray8(item.mask_path) > config.layout.mask_threshold
        if config.layout.mask_invert:
            region = ~region
        if region.shape != img.shape[:2]:
            raise DimensionMismatchError(f"mask {region.shape} vs image {img.shape[:2]}")
        truth = ground_truth_boundary(region)
    else:
        truth = np.zeros(img.shape[:2], dtype=bool)
    result = detect(img, dilate_s=config.dilate_s, linearize=config.linearize)
    return score_image(item.image_id, item.kind, result, truth, tol=config.tol, theta=config.theta)


def evaluate_dataset(root: Union[str, Path], config: RunConfig = RunConfig(),
                     jobs: int = 1) -> tuple[EvalReport, list[dict]]:
    """Detect and score every item. Returns the report and the list of skipped items."""
    items = discover(root, config.layout)
    if not items:
        raise DatasetError(f"no images found under {root}")

    def run(item: DatasetItem):
        try:
            return _evaluate_item(item, config)
        except (ImageReadError, UnsupportedImageError, DimensionMismatchError, DatasetError) as exc:
            log.warning("skipping %s: %s", item.image_path, exc)
            return {"image_id": item.image_id, "kind": item.kind, "reason": str(exc)}

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(run, items))
    else:
        outcomes = [run(item) for item in items]
    rows = [o for o in outcomes if isinstance(o, ImageRow)]
    skipped = sorted((o for o in outcomes if isinstance(o, dict)), key=lambda d: (d["kind"], d["image_id"]))
    if not rows:
        raise DatasetError("no image could be evaluated")
    report = EvalReport.from_rows(rows, theta=config.theta, alphas=config.alphas, thetas=config.thetas)
    return report, skipped


def report_dict(report: EvalReport, config: RunConfig, skipped: list[dict],
                dataset_root: Optional[str] = None) -> dict:
    return {
        "schema": REPORT_SCHEMA,
        "config": {**asdict(config), "dataset_root": dataset_root},
        "counts": {
            "processed": len(report.rows),
            "spliced": sum(r.kind == "spliced" for r in report.rows),
            "original": sum(r.kind == "original" for r in report.rows),
            "skipped": len(skipped),
        },
        "aggregates": asdict(report.aggregates) if report.aggregates else None,
        "gated_f1_mean": report.gated_f1_mean,
        "auc": report.auc,
        "rows": [r.as_dict() for r in report.rows],
        "skipped": skipped,
        "roc": [asdict(p) for p in report.roc],
        "f1_theta": [{"theta": t, "f1_mean": f} for t, f in report.f1_theta],
    }


def dumps_report(data: dict) -> str:
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


def summary_table(report: EvalReport, config: RunConfig) -> str:
    """Human-readable table: F1 statistics and mean boundary recall."""
    lines = [
        f"images: {sum(r.kind == 'spliced' for r in report.rows)} spliced, "
        f"{sum(r.kind == 'original' for r in report.rows)} original "
        f"(tol={config.tol}, theta={config.theta}, dilate_s={config.dilate_s})",
        "",
        f"{'':<12}{'F1_Max':>10}{'F1_Mean':>10}{'F1_Median':>11}{'BR_Mean':>10}",
    ]
    a = report.aggregates
    if a is None:
        lines.append(f"{'splicedge':<12}{'n/a':>10}{'n/a':>10}{'n/a':>11}{'n/a':>10}")
    else:
        lines.append(f"{'splicedge':<12}{a.f1_max:>10.4f}{a.f1_mean:>10.4f}{a.f1_median:>11.4f}{a.br_mean:>10.4f}")
    lines.append("")
    if report.gated_f1_mean is not None:
        lines.append(f"F1_Mean with BR >= {config.theta} gate: {report.gated_f1_mean:.4f}")
    if report.auc is not None:
        lines.append(f"ROC AUC (splice-fraction score): {report.auc:.4f}")
    return "\n".join(lines) + "\n"


def write_synthetic_dataset(root: Union[str, Path], cases) -> int:
    """Write benchmark cases to ``root`` in the default layout. Returns the number of pairs."""
    root = Path(root)
    for sub in ("spliced", "masks", "original"):
        (root / sub).mkdir(parents=True, exist_ok=True)
    count = 0
    for case in cases:
        write_rgb(root / "spliced" / f"{case.case_id}.png", case.spliced)
        write_mask(root / "masks" / f"{case.case_id}.png", case.paste_mask)
        write_rgb(root / "original" / f"{case.case_id}_auth.png", case.original)
        count += 1
    return count
