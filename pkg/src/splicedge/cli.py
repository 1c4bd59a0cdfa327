"""Command-line front end.

Exit codes: 0 success, 2 usage error, 3 missing or undecodable input,
4 input is not an 8-bit raster, 5 malformed scene file, 6 unusable
dataset (empty, no evaluable image, bad layout file).
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import warnings
from pathlib import Path
from typing import Optional, Sequence

from . import __version__
from .classify import classify_edges, detect
from .dataset import (
    DatasetError,
    Layout,
    RunConfig,
    dumps_report,
    evaluate_dataset,
    report_dict,
    summary_table,
    write_synthetic_dataset,
)
from .imageio import (
    ImageReadError,
    UnsupportedImageError,
    overlay,
    read_rgb,
    write_labels,
    write_mask,
    write_rgb,
)
from .simulate.library import benchmark_suite
from .simulate.render import ClippingWarning, EdgeClass, SceneError, render, requantize
from .simulate.sceneio import bundled_scene_path, load_scene

log = logging.getLogger("splicedge")

OUT_ENV = "SPLICEDGE_OUT"
DEFAULT_OUT = "splicedge-out"

EXIT_INPUT = 3
EXIT_FORMAT = 4
EXIT_SCENE = 5
EXIT_DATASET = 6


def _out_dir(arg: Optional[str]) -> Path:
    path = Path(arg or os.environ.get(OUT_ENV) or DEFAULT_OUT)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _non_negative_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return value


def _unit_float(text: str) -> float:
    value = float(text)
    if not 0.0 <= value <= 1.0:
        raise argparse.ArgumentTypeError("must lie in [0, 1]")
    return value


def cmd_detect(args: argparse.Namespace) -> int:
    img = read_rgb(args.image)
    result = detect(img, dilate_s=args.dilate_s, linearize=args.linearize)
    out = _out_dir(args.out)
    stem = Path(args.image).stem
    write_mask(out / f"{stem}_splice.png", result.splice_map)
    write_rgb(out / f"{stem}_overlay.png", overlay(img, result.splice_map))
    if args.emit_intermediates:
        write_mask(out / f"{stem}_s_edges.png", result.s_edges)
        write_mask(out / f"{stem}_o_edges.png", result.o_edges)
        write_labels(out / f"{stem}_labels.png", classify_edges(result.o_edges, result.s_edges))
    print(f"{args.image}: {int(result.splice_map.sum())} splice pixels "
          f"({int(result.o_edges.sum())} o1o2 edges, {int(result.s_edges.sum())} S edges) -> {out}")
    return 0


def cmd_eval(args: argparse.Namespace) -> int:
    layout = Layout.from_file(args.layout) if args.layout else Layout()
    config = RunConfig(dilate_s=args.dilate_s, tol=args.tol, theta=args.theta,
                       linearize=args.linearize, layout=layout)
    report, skipped = evaluate_dataset(args.root, config, jobs=args.jobs)
    out = _out_dir(args.out)
    data = report_dict(report, config, skipped, dataset_root=str(args.root))
    (out / "report.json").write_text(dumps_report(data), encoding="utf-8")
    table = summary_table(report, config)
    (out / "summary.txt").write_text(table, encoding="utf-8")
    sys.stdout.write(table)
    if skipped:
        print(f"{len(skipped)} image(s) skipped; see report.json")
    return 0


def cmd_simulate(args: argparse.Namespace) -> int:
    path = Path(args.scene)
    if args.scene.startswith("builtin:"):
        path = bundled_scene_path(args.scene.split(":", 1)[1])
    elif not path.is_file():
        raise ImageReadError(f"no such file: {path}")
    spec = load_scene(path)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", ClippingWarning)
        img, truth = render(spec)
    for w in caught:
        log.warning("%s", w.message)
    out = _out_dir(args.out)
    stem = path.stem
    write_rgb(out / f"{stem}.png", requantize(img))
    write_mask(out / f"{stem}_boundary.png", truth.boundary)
    write_labels(out / f"{stem}_classes.png", truth.classes)
    legend = {
        "codes": {str(int(c)): c.name.lower() for c in EdgeClass},
        "pixel_counts": {c.name.lower(): int(truth.of_class(c).sum()) for c in EdgeClass},
        "clipped_pixels": int(truth.clipped.sum()),
        "width": spec.width,
        "height": spec.height,
    }
    (out / f"{stem}_classes.json").write_text(json.dumps(legend, indent=2, sort_keys=True) + "\n",
                                              encoding="utf-8")
    print(f"{path}: rendered {spec.width}x{spec.height}, "
          f"{int(truth.boundary.sum())} boundary pixels -> {out}")
    return 0


def cmd_make_suite(args: argparse.Namespace) -> int:
    root = Path(args.root)
    n = write_synthetic_dataset(root, benchmark_suite(args.pairs, size=args.size, seed=args.seed))
    print(f"wrote {n} spliced/original pairs to {root}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="splicedge", description=__doc__.split("\n")[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def detector_flags(p: argparse.ArgumentParser) -> None:
        p.add_argument("--dilate-s", type=_non_negative_int, default=0,
                       help="dilate the S edge map by this radius before the AND-NOT (default 0)")
        p.add_argument("--linearize", action="store_true",
                       help="undo the sRGB transfer curve before converting")
        p.add_argument("--out", help=f"output directory (default ${OUT_ENV} or ./{DEFAULT_OUT})")

    p = sub.add_parser("detect", help="locate splice edges in one image")
    p.add_argument("image")
    detector_flags(p)
    p.add_argument("--emit-intermediates", action="store_true",
                   help="also write the S and o1o2 edge maps and the edge labels")
    p.set_defaults(func=cmd_detect)

    p = sub.add_parser("eval", help="score a dataset of spliced and original images")
    p.add_argument("root")
    detector_flags(p)
    p.add_argument("--tol", type=_non_negative_int, default=2, help="matching tolerance in pixels")
    p.add_argument("--theta", type=_unit_float, default=0.3, help="boundary-recall gate")
    p.add_argument("--layout", help="JSON layout file mapping the dataset tree")
    p.add_argument("--jobs", type=int, default=1, help="images evaluated concurrently")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("simulate", help="render a scene file with ground truth")
    p.add_argument("scene", help="scene file, or builtin:NAME for a bundled scene")
    p.add_argument("--out", help=f"output directory (default ${OUT_ENV} or ./{DEFAULT_OUT})")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("make-suite", help="write the seeded synthetic benchmark as a dataset")
    p.add_argument("root")
    p.add_argument("--pairs", type=int, default=20)
    p.add_argument("--size", type=int, default=256)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_make_suite)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except (ImageReadError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except UnsupportedImageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FORMAT
    except SceneError as exc:
        print(f"error: {args.scene if hasattr(args, 'scene') else ''}: {exc}", file=sys.stderr)
        return EXIT_SCENE
    except DatasetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATASET


if __name__ == "__main__":
    sys.exit(main())
