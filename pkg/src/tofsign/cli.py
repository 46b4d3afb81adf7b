"""Command-line front end: ``tofsign synth|recognize|evaluate|scatter``.

Data goes to files or stdout; diagnostics go to stderr. Exit status is 0 on
success, 1 on a failed run and 2 on bad usage.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from tofsign import __version__
from tofsign.classify import SCATTER_KINDS, evaluate_all_splits, scatter_export
from tofsign.depth_io import read_sequence, write_sequence
from tofsign.pipeline import (
    PipelineError,
    load_dataset,
    model_from_dataset,
    read_model,
    recognize,
    write_model,
    write_truth,
)
from tofsign.preprocess import IntensityBand, SegmentationParams
from tofsign.sigml import emit_sigml
from tofsign.synthgen import GenParams, generate_database


def _band_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--band-low", type=int, default=112, help="lowest kept intensity (default: 112)")
    p.add_argument("--band-high", type=int, default=128, help="first rejected intensity above the band (default: 128)")


def _segment_args(p: argparse.ArgumentParser) -> None:
    _band_args(p)
    p.add_argument("--min-area", type=int, default=50, help="nonzero pixels below which a frame is blank (default: 50)")
    p.add_argument("--min-length", type=int, default=3, help="shortest action in frames (default: 3)")


def _band(args) -> IntensityBand:
    return IntensityBand(args.band_low, args.band_high)


def _seg(args) -> SegmentationParams:
    return SegmentationParams(args.min_area, args.min_length)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tofsign", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synth", help="generate a synthetic gesture database")
    p.add_argument("--out-dir", required=True, type=Path)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--preset", choices=("default", "tiny"), default="default",
                   help="default is 640x480, tiny is 64x48")
    p.add_argument("--num-sets", type=int, default=9)
    p.add_argument("--clipped-fraction", type=float, default=None)
    _band_args(p)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("recognize", help="recognise actions and write SiGML")
    p.add_argument("manifest", type=Path)
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--model", type=Path, help="model CSV (dx,dy,class,set_id)")
    src.add_argument("--train-manifest", type=Path, help="manifest of a labelled training recording")
    p.add_argument("--train-truth", type=Path, help="ground truth for --train-manifest")
    p.add_argument("--save-model", type=Path, help="also write the model built from --train-manifest")
    p.add_argument("--out", required=True, type=Path, help="output .sigml file")
    _segment_args(p)
    p.set_defaults(func=cmd_recognize)

    p = sub.add_parser("evaluate", help="nearest-neighbour accuracy over every train/test split of sets")
    p.add_argument("manifest", type=Path)
    p.add_argument("truth", type=Path)
    p.add_argument("--k-train", type=int, default=5)
    p.add_argument("--require-perfect", action="store_true", help="exit 1 unless every split scores 1.0")
    _segment_args(p)
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("scatter", help="export centroid or movement-vector scatter data as CSV")
    p.add_argument("manifest", type=Path)
    p.add_argument("truth", type=Path)
    p.add_argument("--which", choices=SCATTER_KINDS, default="vector")
    p.add_argument("--out", required=True, type=Path)
    _segment_args(p)
    p.set_defaults(func=cmd_scatter)
    return parser


def cmd_synth(args) -> int:
    overrides = dict(seed=args.seed, num_sets=args.num_sets, band=_band(args))
    if args.clipped_fraction is not None:
        overrides["clipped_fraction"] = args.clipped_fraction
    params = GenParams.tiny(**overrides) if args.preset == "tiny" else GenParams(**overrides)
    seq, truth = generate_database(params)
    args.out_dir.mkdir(parents=True, exist_ok=True)
    write_truth(args.out_dir / "truth.csv", truth)
    manifest = write_sequence(seq, args.out_dir)
    print(f"frames {len(seq)}")
    print(f"actions {len(truth)}")
    print(f"sets {truth.num_sets}")
    print(f"manifest {manifest}")
    return 0


def cmd_recognize(args) -> int:
    if args.model is not None:
        model = read_model(args.model)
    else:
        if args.train_truth is None:
            raise PipelineError("--train-manifest needs --train-truth")
        train_seq = read_sequence(args.train_manifest)
        model = model_from_dataset(load_dataset(train_seq, args.train_truth, _band(args), _seg(args)))
        if args.save_model is not None:
            write_model(args.save_model, model)
    seq = read_sequence(args.manifest)
    _, labels = recognize(seq, model, _band(args), _seg(args))
    if not labels:
        raise PipelineError(f"no segments found in {args.manifest}")
    args.out.write_text(emit_sigml(labels), encoding="utf-8")
    for i, label in enumerate(labels):
        print(f"segment {i}: {label.value}")
    return 0


def cmd_evaluate(args) -> int:
    dataset = load_dataset(read_sequence(args.manifest), args.truth, _band(args), _seg(args))
    report = evaluate_all_splits(dataset, args.k_train)
    sys.stdout.write(report.to_text())
    if args.require_perfect and report.overall_min != 1.0:
        print(f"error: minimum split accuracy {report.overall_min!r} is below 1.0", file=sys.stderr)
        return 1
    return 0


def cmd_scatter(args) -> int:
    dataset = load_dataset(read_sequence(args.manifest), args.truth, _band(args), _seg(args))
    text = scatter_export(dataset, args.which)
    args.out.write_text(text, encoding="utf-8")
    print(f"rows {len(dataset)}")
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
