"""
Command-line front end.

    python core/run.py params   --family grassmann --l 2 --m 4 --q 2
    python core/run.py genmat   --family affine --l 2 --m 4 --q 2
    python core/run.py geometry --l 2 --m 4 --q 2 --out data/output/g24.csv
    python core/run.py weights  --family schubert --l 2 --m 4 --q 3
    python core/run.py verify   --suite chow --l 2 --m 4 --q 2

genmat and verify print csv unless --format says otherwise; the other
commands default to text.

Exit codes: 0 success, 1 verification failure or internal error, 2 usage
error, 3 guard exceeded, 4 output could not be written.
"""

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path

# Add the project root (parent of core/) to sys.path
sys.path.append(str(Path(__file__).resolve().parents[1]))

from config.search_config import SearchConfig
from core.verify_suites import SUITES, run_suites
from modules.galois_field import fq_make, parse_q
from modules.linear_codes import FAMILIES, build_code, parameters, weight_distribution
from utils.export_utils import (
    FORMATS, genmat_frame, genmat_preamble, geometry_frame, render, report_csv, report_frame, weights_frame,
    write_output,
)
from utils.guards import GuardExceeded
from utils.logger import delete_old_logs, setup_logging

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_GUARD, EXIT_OUTPUT = 0, 1, 2, 3, 4
COMMANDS = ('params', 'genmat', 'geometry', 'weights', 'verify')
DEFAULT_FORMATS = {'genmat': 'csv', 'verify': 'csv'}


@dataclass
class RunConfig:
    command: str
    family: str
    l: int
    m: int
    p: int
    e: int
    suites: list
    out: str = None
    fmt: str = 'text'
    seed: int = None

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; expected one of {sorted(FAMILIES)}")
        if not 1 < self.l < self.m:
            raise ValueError(f"need 1 < l < m, got l={self.l}, m={self.m}")
        if self.fmt not in FORMATS:
            raise ValueError(f"unknown format {self.fmt!r}")
        for name in self.suites:
            if name != 'all' and name not in SUITES:
                raise ValueError(f"unknown suite {name!r}; expected one of {sorted(SUITES) + ['all']}")
        fq_make(self.p, self.e)

    @property
    def spec(self):
        return fq_make(self.p, self.e)


def build_parser():
    parser = argparse.ArgumentParser(
        prog='run.py',
        description='Grassmann, affine Grassmann and Schubert divisor codes over finite fields')
    parser.add_argument('command', choices=COMMANDS)
    parser.add_argument('--family', default='grassmann', choices=sorted(FAMILIES))
    parser.add_argument('--l', type=int, required=True)
    parser.add_argument('--m', type=int, required=True)
    parser.add_argument('--q', type=int, help='field size, read as p^e with p prime')
    parser.add_argument('--p', type=int, help='field characteristic (with --e)')
    parser.add_argument('--e', type=int, default=1, help='extension degree (with --p)')
    parser.add_argument('--suite', action='append', default=None,
                        help=f"verification suite, repeatable: {', '.join(list(SUITES) + ['all'])}")
    parser.add_argument('--format', dest='fmt', default=None, choices=FORMATS,
                        help='output format (default csv for genmat and verify, text otherwise)')
    parser.add_argument('--out', default=None, help='output file (default stdout)')
    parser.add_argument('--seed', type=int, default=None, help='seed for sampled checks')
    parser.add_argument('--log-level', default=None)
    return parser


def config_from_args(args):
    if args.q is not None and args.p is not None:
        raise ValueError("give either --q or --p/--e, not both")
    if args.q is not None:
        p, e = parse_q(args.q)
    elif args.p is not None:
        p, e = args.p, args.e
    else:
        raise ValueError("a field is required: --q or --p/--e")
    return RunConfig(args.command, args.family, args.l, args.m, p, e, args.suite or ['all'],
                     args.out, args.fmt or DEFAULT_FORMATS.get(args.command, 'text'), args.seed)


def run(config, logger):
    """Execute one command. Returns the exit status."""
    spec = config.spec
    if config.command == 'params':
        code = build_code(config.family, config.l, config.m, spec)
        n, k, d = parameters(code)
        logger.info(f"{code!r}: n={n} k={k} d={d}")
        write_output(f"n={n} k={k} d={d}\n", config.out)
        return EXIT_OK

    if config.command == 'genmat':
        code = build_code(config.family, config.l, config.m, spec)
        write_output(render(genmat_frame(code), config.fmt, genmat_preamble(code)), config.out)
        return EXIT_OK

    if config.command == 'geometry':
        write_output(render(geometry_frame(config.l, config.m, spec), config.fmt), config.out)
        return EXIT_OK

    if config.command == 'weights':
        code = build_code(config.family, config.l, config.m, spec)
        write_output(render(weights_frame(weight_distribution(code)), config.fmt), config.out)
        return EXIT_OK

    rows = run_suites(config.suites, config.l, config.m, spec, config.seed)
    if config.fmt == 'csv':
        text = report_csv(rows)
    else:
        text = render(report_frame(rows), config.fmt)
    write_output(text, config.out)
    failed = [r for r in rows if not r.passed]
    for row in failed:
        logger.error(f"FAIL: {row.to_csv_line()}")
    return EXIT_FAIL if failed else EXIT_OK


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK

    logger = setup_logging('run', level=args.log_level)
    removed = delete_old_logs()
    if removed:
        logger.info(f"Deleted {removed} old log files")

    try:
        config = config_from_args(args)
    except ValueError as e:
        logger.error(f"Invalid arguments: {e}")
        return EXIT_USAGE
    if config.seed is None:
        config.seed = SearchConfig.RANDOM_SEED

    try:
        logger.info(f"Running {config.command} for l={config.l} m={config.m} q={config.p ** config.e}")
        return run(config, logger)
    except GuardExceeded as e:
        logger.error(f"Guard exceeded: {e}")
        return EXIT_GUARD
    except OSError as e:
        logger.error(f"Cannot write output: {e}")
        return EXIT_OUTPUT
    except Exception as e:
        logger.exception(f"{config.command} failed: {e}")
        return EXIT_FAIL


if __name__ == '__main__':
    sys.exit(main())
