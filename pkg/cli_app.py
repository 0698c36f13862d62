"""
Command-line entry point.

    python cli_app.py certify --p 5 --a 1,2 --b 0,1,2 --out cert.json
    python cli_app.py verify cert.json
    python cli_app.py eh --p 5 --a 0,1,2
    python cli_app.py bound --p 5 --a 1,2 --b 0,1,2 --kind anr --actual
    python cli_app.py sweep --p 7 --kind anr --workers 4

Exit codes: 0 success, 1 verification failure (or sweep violations),
2 usage or hypothesis error, 3 exhaustive budget exceeded.

Human summaries go to stdout; JSON only ever goes to files.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass
from typing import List, Optional

from certificate import (
    certify_anr,
    certify_eh,
    load_certificate,
    save_certificate,
    verify_certificate,
)
from config import (
    DEFAULT_PAIR_CAP,
    DEFAULT_RANDOM_SAMPLES,
    DEFAULT_WORKERS,
    EXIT_BUDGET,
    EXIT_OK,
    EXIT_USAGE,
    EXIT_VERIFICATION_FAILED,
)
from errors import BudgetExceeded, CertificateFormatError, EqualSizes, SumsetError
from oracle import (
    BOUND_KINDS,
    candidate_pairs,
    cross_check_certificates,
    exhaustive_sampler,
    random_sampler,
    save_report,
    save_results,
    sweep_exhaustive,
    sweep_random,
    write_tight_csv,
)
from prime_field import make_field
from sumsets import BOUNDS, FpSet, format_set, parse_set_literal, restricted_sumset, sumset

logger = logging.getLogger(__name__)


@dataclass
class CliConfig:
    command: str
    p: Optional[int] = None
    A: Optional[FpSet] = None
    B: Optional[FpSet] = None
    out: Optional[str] = None
    path: Optional[str] = None
    kind: str = 'anr'
    actual: bool = False
    cap: int = DEFAULT_PAIR_CAP
    seed: Optional[int] = None
    samples: int = DEFAULT_RANDOM_SAMPLES
    workers: int = 1
    max_size: Optional[int] = None
    csv: Optional[str] = None
    summary: Optional[str] = None
    certificates: bool = False
    verbosity: int = 0
    quiet: bool = False

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "CliConfig":
        """Validate the literals into FpSets before anything is computed."""
        config = cls(command=args.command, verbosity=args.verbose, quiet=args.quiet)
        for name in ('out', 'path', 'kind', 'actual', 'cap', 'seed', 'samples', 'workers',
                     'max_size', 'csv', 'summary', 'certificates'):
            if hasattr(args, name):
                setattr(config, name, getattr(args, name))
        if getattr(args, 'p', None) is not None:
            config.p = args.p
            field_ = make_field(args.p)
            if getattr(args, 'a', None) is not None:
                config.A = parse_set_literal(args.a, field_)
            if getattr(args, 'b', None) is not None:
                config.B = parse_set_literal(args.b, field_)
        return config


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='cli_app.py',
        description="Certify and check restricted-sumset lower bounds over Z/pZ",
    )
    parser.add_argument('-v', '--verbose', action='count', default=0, help="more logging (repeatable)")
    parser.add_argument('-q', '--quiet', action='store_true', help="no progress bars")
    sub = parser.add_subparsers(dest='command', required=True)

    certify = sub.add_parser('certify', help="certify |A +. B| >= min{p, |A|+|B|-2}")
    certify.add_argument('--p', type=int, required=True)
    certify.add_argument('--a', required=True, help="set literal, e.g. 1,2")
    certify.add_argument('--b', required=True)
    certify.add_argument('--out', help="certificate JSON path")

    verify = sub.add_parser('verify', help="independently verify a certificate file")
    verify.add_argument('path')

    eh = sub.add_parser('eh', help="certify |A +. A| >= min{p, 2|A|-3}")
    eh.add_argument('--p', type=int, required=True)
    eh.add_argument('--a', required=True)
    eh.add_argument('--out')

    bound = sub.add_parser('bound', help="evaluate a bound formula")
    bound.add_argument('--p', type=int, required=True)
    bound.add_argument('--a', required=True)
    bound.add_argument('--b')
    bound.add_argument('--kind', choices=BOUND_KINDS, default='anr')
    bound.add_argument('--actual', action='store_true', help="also enumerate the true size")

    sweep = sub.add_parser('sweep', help="check a bound on every (or sampled) pair")
    sweep.add_argument('--p', type=int, required=True)
    sweep.add_argument('--kind', choices=BOUND_KINDS, default='anr')
    sweep.add_argument('--cap', type=int, default=DEFAULT_PAIR_CAP, help="exhaustive pair budget")
    sweep.add_argument('--seed', type=int, help="sample randomly with this seed instead of exhausting")
    sweep.add_argument('--samples', type=int, default=DEFAULT_RANDOM_SAMPLES)
    sweep.add_argument('--workers', type=int, default=DEFAULT_WORKERS)
    sweep.add_argument('--max-size', dest='max_size', type=int, help="skip sets larger than this")
    sweep.add_argument('--certificates', action='store_true',
                       help="certify and verify every pair instead of only enumerating (anr)")
    sweep.add_argument('--out', help="SweepReport JSON path")
    sweep.add_argument('--csv', help="tight pairs CSV path")
    sweep.add_argument('--summary', help="human-readable results file")
    return parser


def configure_logging(verbosity: int):
    level = logging.WARNING if verbosity <= 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(level=level, format="%(asctime)s %(levelname)s %(name)s: %(message)s")


def cmd_certify(config: CliConfig) -> int:
    logger.info("certifying A={%s} B={%s} over p=%d", format_set(config.A), format_set(config.B), config.p)
    cert = certify_anr(config.A, config.B)
    print(f"bound={cert.claimed_bound} actual={cert.C_size}")
    print(f"route={cert.route}")
    if config.out:
        save_certificate(cert, config.out)
        print(f"[OK] Certificate saved to: {config.out}")
    return EXIT_OK


def cmd_eh(config: CliConfig) -> int:
    cert = certify_eh(config.A)
    print(f"bound={cert.claimed_bound} actual={cert.C_size}")
    if config.out:
        save_certificate(cert, config.out)
        print(f"[OK] Certificate saved to: {config.out}")
    return EXIT_OK


def cmd_verify(config: CliConfig) -> int:
    try:
        doc = load_certificate(config.path)
    except OSError as e:
        print(f"error: cannot read {config.path}: {e.strerror}", file=sys.stderr)
        return EXIT_USAGE
    except CertificateFormatError as e:
        print(f"fail: schema ({e})")
        return EXIT_VERIFICATION_FAILED
    report = verify_certificate(doc)
    if report.passed:
        print("pass")
        print(f"checks={len(report.checks)}")
        return EXIT_OK
    failed = next(c for c in report.checks if not c.passed)
    print(f"fail: {failed.name}" + (f" ({failed.detail})" if failed.detail else ""))
    return EXIT_VERIFICATION_FAILED


def cmd_bound(config: CliConfig) -> int:
    A, B, p = config.A, config.B, config.p
    if config.kind == 'eh':
        B = A
    elif B is None:
        print(f"error: --b is required for --kind {config.kind}", file=sys.stderr)
        return EXIT_USAGE
    if config.kind == 'anr' and len(A) == len(B):
        raise EqualSizes(len(A))
    value = BOUNDS[config.kind](p, len(A), len(B))
    if not config.actual:
        print(f"bound={value}")
        return EXIT_OK
    truth = sumset(A, B) if config.kind == 'cd' else restricted_sumset(A, B)
    print(f"bound={value} actual={len(truth)}")
    return EXIT_OK


def cmd_sweep(config: CliConfig) -> int:
    p, kind = config.p, config.kind
    progress = not config.quiet
    print("=" * 70)
    print(f"Sweep: kind={kind}, p={p}" + (f", seed={config.seed}" if config.seed is not None else ""))
    print("=" * 70)

    if config.certificates:
        if kind != 'anr':
            print("error: --certificates only applies to --kind anr", file=sys.stderr)
            return EXIT_USAGE
        if config.seed is not None:
            sampler = random_sampler(p, config.samples, config.seed, config.max_size)
        else:
            pairs = candidate_pairs(p, 'anr', config.max_size)
            if pairs > config.cap:
                raise BudgetExceeded(pairs, config.cap)
            sampler = exhaustive_sampler(p, config.max_size)
        report = cross_check_certificates(p, sampler, seed=config.seed, progress=progress)
    elif config.seed is not None:
        report = sweep_random(p, kind, config.samples, config.seed, config.max_size, progress=progress)
    else:
        report = sweep_exhaustive(p, kind, config.max_size, cap=config.cap,
                                  workers=config.workers, progress=progress)

    print(f"pairs={report.pairs_checked:,}, violations={len(report.violations)}")
    print(f"tight={report.tight_total:,}, elapsed={report.runtime_stats.get('elapsed_seconds', 0):.2f}s")
    if config.out:
        save_report(report, config.out)
        print(f"[OK] Report saved to: {config.out}")
    if config.csv:
        write_tight_csv(report, config.csv)
        print(f"[OK] Tight pairs saved to: {config.csv}")
    if config.summary:
        save_results(report, config.summary)
    if report.violations:
        print(f"[ERROR] {len(report.violations)} violation(s), first: {json.dumps(report.violations[0])}")
        return EXIT_VERIFICATION_FAILED
    return EXIT_OK


COMMANDS = {
    'certify': cmd_certify,
    'verify': cmd_verify,
    'eh': cmd_eh,
    'bound': cmd_bound,
    'sweep': cmd_sweep,
}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.verbose)
    try:
        config = CliConfig.from_args(args)
        return COMMANDS[config.command](config)
    except BudgetExceeded as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except SumsetError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == '__main__':
    sys.exit(main())
