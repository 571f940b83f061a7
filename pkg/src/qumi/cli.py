"""``qumi`` command line: measure, sweep, verify.

Exit codes: 0 success, 1 verification failure, 2 input error.
"""

import argparse
import csv
import json
import sys

from . import verify
from .errors import QumiError
from .measures import full_report
from .optimizer import SearchConfig
from .serialize import InputFileError, load_state, load_sweep

CSV_HEADER = ["param", "i_quantum", "i_lhv", "q_lhv", "case_tag", "q_mid", "q_discord_a", "q_sym"]
EXIT_OK, EXIT_VERIFY_FAILED, EXIT_INPUT = 0, 1, 2


def _fmt(x) -> str:
    return x if isinstance(x, str) else f"{x:.12g}"


def _grid(text: str) -> tuple[int, int]:
    try:
        polar, azimuthal = (int(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError("expected N_polar,N_azimuthal, e.g. 32,64") from None
    return polar, azimuthal


def _add_search_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--bloch-threshold", type=float, help="Bloch norm below which a vector counts as zero")
    p.add_argument("--grid", type=_grid, metavar="N_POLAR,N_AZIMUTHAL", help="coarse direction grid")
    p.add_argument("--refine-tol", type=float, help="refinement stop tolerance on the objective")


def config_from_args(args) -> SearchConfig:
    kw = {}
    if args.bloch_threshold is not None:
        kw["bloch_zero_threshold"] = args.bloch_threshold
    if args.grid is not None:
        kw["grid_polar"], kw["grid_azimuthal"] = args.grid
    if args.refine_tol is not None:
        kw["refine_tolerance"] = args.refine_tol
    return SearchConfig(**kw)


def _fail(exc: Exception) -> int:
    print(f"qumi: {exc}", file=sys.stderr)
    return EXIT_INPUT


def cmd_measure(args) -> int:
    try:
        cfg = config_from_args(args)
        rho = load_state(args.state)
    except (QumiError, InputFileError, OSError, ValueError) as exc:
        return _fail(exc)
    report = full_report(rho, cfg)
    json.dump(report.to_dict(), sys.stdout, indent=2)
    sys.stdout.write("\n")
    return EXIT_OK


def sweep_rows(spec, cfg):
    """Yield (row, ok) per sweep step, in parameter order."""
    for value in spec.values():
        try:
            rep = full_report(spec.state_at(value), cfg)
        except QumiError as exc:
            yield [_fmt(float(value))] + [exc.tag] * (len(CSV_HEADER) - 1), False
            continue
        d = rep.to_dict()
        yield [_fmt(float(value))] + [_fmt(d[k]) for k in CSV_HEADER[1:]], True


def cmd_sweep(args) -> int:
    try:
        cfg = config_from_args(args)
        spec = load_sweep(args.sweep)
    except (QumiError, InputFileError, OSError, ValueError) as exc:
        return _fail(exc)
    all_ok = True
    with open(args.out, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for row, ok in sweep_rows(spec, cfg):
            writer.writerow(row)
            all_ok &= ok
    if not all_ok:
        print("qumi: some sweep steps left the physical region; see the error tags in the CSV",
              file=sys.stderr)
        return EXIT_INPUT
    return EXIT_OK


def cmd_verify(args) -> int:
    print(f"qumi verify --level {args.level} (seed {args.seed})")
    results = verify.run(args.level, seed=args.seed, report=lambda line: print(line, flush=True))
    failed = [r for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} suites passed")
    return EXIT_VERIFY_FAILED if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qumi", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("measure", help="print all measures for a state file as JSON")
    p.add_argument("state", help="state JSON file")
    _add_search_flags(p)
    p.set_defaults(func=cmd_measure)

    p = sub.add_parser("sweep", help="tabulate measures along a one-parameter family")
    p.add_argument("sweep", help="sweep JSON file")
    p.add_argument("--out", required=True, help="output CSV path")
    _add_search_flags(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("verify", help="run the invariant suites")
    p.add_argument("--level", choices=sorted(verify.LEVELS), default="quick")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
