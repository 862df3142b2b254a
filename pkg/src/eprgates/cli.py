"""Command-line front end: ``eprgates <experiment> [options]``.

Writes one CSV table per run. Exit status: 0 success, 1 usage error,
2 verification failure.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from pathlib import Path

from .experiments import EXPERIMENTS, INPUT_KINDS, ExperimentConfig, run_experiment

OUT_DIR_ENV = "EPRGATES_OUT_DIR"

EXIT_OK, EXIT_USAGE, EXIT_VERIFY_FAILED = 0, 1, 2

log = logging.getLogger("eprgates")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _sweep(text: str) -> tuple:
    try:
        lo, hi, steps = text.split(":")
        return float(lo), float(hi), int(steps)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected MIN:MAX:STEPS, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--resource-db", type=float, help="EPR resource squeezing in dB (<= 0)")
    common.add_argument("--cluster-resource-db", type=float,
                        help="cluster resource squeezing in dB (defaults to --resource-db)")
    common.add_argument("--sweep", type=_sweep, metavar="MIN:MAX:STEPS")
    common.add_argument("--input", dest="input_kind", choices=INPUT_KINDS)
    common.add_argument("--mod-x-db", dest="modulation_x_db", type=float)
    common.add_argument("--mod-p-db", dest="modulation_p_db", type=float)
    common.add_argument("--mean-x", type=float, default=1.0, help="coherent input <x>")
    common.add_argument("--mean-p", type=float, default=0.5, help="coherent input <p>")
    common.add_argument("--theta1-deg", type=float)
    common.add_argument("--seed", type=int, default=42)
    common.add_argument("--samples", type=int, default=10**6)
    common.add_argument("--out", dest="output_path", help="output CSV path ('-' for stdout)")
    common.add_argument("--gnuplot", metavar="PATH", help="also write a gnuplot script")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = _Parser(prog="eprgates", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="experiment", required=True, parser_class=_Parser)
    for name in EXPERIMENTS:
        p = sub.add_parser(name, parents=[common])
        if name == "verify":
            p.add_argument("--fault-gain", type=float, default=1.0,
                           help="scale the sampled feedforward gain (negative control)")
    return parser


def _destination(args) -> str | None:
    if args.output_path:
        return None if args.output_path == "-" else args.output_path
    out_dir = os.environ.get(OUT_DIR_ENV)
    if out_dir:
        return str(Path(out_dir) / f"{args.experiment}.csv")
    return None


def _attach_sweep_values(argv: list) -> list:
    # "--sweep -2:-6:3" would otherwise be read as an unknown option
    out = []
    it = iter(argv)
    for tok in it:
        if tok == "--sweep":
            nxt = next(it, None)
            out.append(tok if nxt is None else f"--sweep={nxt}")
        else:
            out.append(tok)
    return out


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(_attach_sweep_values(argv))
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    dest = _destination(args)
    cfg = ExperimentConfig(
        experiment=args.experiment,
        resource_db=args.resource_db,
        cluster_resource_db=args.cluster_resource_db,
        sweep=args.sweep,
        input_kind=args.input_kind,
        modulation_x_db=args.modulation_x_db,
        modulation_p_db=args.modulation_p_db,
        mean_x=args.mean_x,
        mean_p=args.mean_p,
        theta1_deg=args.theta1_deg,
        seed=args.seed,
        samples=args.samples,
        fault_gain=getattr(args, "fault_gain", 1.0),
        output_path=dest,
    )
    try:
        table = run_experiment(cfg)
    except ValueError as exc:
        print(f"eprgates: error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    text = table.to_csv()
    if dest is None:
        sys.stdout.write(text)
    else:
        Path(dest).parent.mkdir(parents=True, exist_ok=True)
        Path(dest).write_text(text)
        log.info("wrote %s (%d rows)", dest, len(table.rows))
    if args.gnuplot:
        Path(args.gnuplot).write_text(table.gnuplot_script(dest or "data.csv"))

    if args.experiment == "verify" and table.summary["failures"] > 0:
        log.warning("%d of %d oracle checks failed",
                    int(table.summary["failures"]), int(table.summary["checks"]))
        return EXIT_VERIFY_FAILED
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
