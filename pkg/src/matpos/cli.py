"""Command-line front end.

Exit codes: 0 affirmative, 1 negative mathematical verdict, 2 usage or parse
error, 3 inconclusive (Polya cap exceeded). Machine-readable output goes to
``--output`` (standard output by default); logs go to standard error.
"""

from __future__ import annotations

import argparse
import logging
import sys
import time
from pathlib import Path

from . import io
from .certify import DEFAULT_GRID, DEFAULT_N_MAX, KINDS, Domain, certify, verify_certificate
from .errors import CertificateNotFound, NotPositiveOnDomain
from .linalg import format_matrix
from .moment import check_moment, moment_seq_from_atomic, riesz_eval, tracial_integral

log = logging.getLogger("matpos")

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_INCONCLUSIVE = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _read(path: str):
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    return io.loads(text)


def _write(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc}") from exc


def _vec(v) -> str:
    return "(" + ", ".join(io.format_rational(x) for x in v) + ")"


def cmd_certify(args) -> int:
    poly = io.poly_from_json(_read(args.poly))
    try:
        domain = Domain(args.domain, poly.nvars)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    start = time.perf_counter()
    try:
        cert = certify(poly, domain, n_max=args.n_max, grid=args.grid)
    except NotPositiveOnDomain as exc:
        v = exc.violation
        log.error("not positive definite at point %s; witness vector %s, v^T F v = %s",
                  _vec(v.point), _vec(v.witness.vector), io.format_rational(v.witness.value))
        return EXIT_NEGATIVE
    except CertificateNotFound as exc:
        log.error("inconclusive: no certificate with N <= %d; last non-PD coefficient at %s: %s",
                  exc.n_max, list(exc.alpha or ()), format_matrix(exc.coefficient or ()))
        return EXIT_INCONCLUSIVE
    elapsed = time.perf_counter() - start
    _write(args.output, io.dumps(io.certificate_to_json(cert)))
    log.info("certified on %s: N=%d, %d terms, %.3f s", domain.kind, cert.polya_exponent(poly),
             len(cert.terms), elapsed)
    return EXIT_OK


def cmd_verify(args) -> int:
    cert = io.certificate_from_json(_read(args.certificate))
    poly = io.poly_from_json(_read(args.poly))
    if cert.domain.nvars != poly.nvars or cert.size != poly.size:
        raise UsageError("certificate and polynomial shapes differ")
    verdict = verify_certificate(cert, poly)
    _write(args.output, io.dumps({"verified": verdict.holds, "reason": verdict.reason}))
    if verdict:
        log.info("certificate verified")
        return EXIT_OK
    log.error("certificate rejected: %s", verdict.reason)
    return EXIT_NEGATIVE


def cmd_moment_check(args) -> int:
    seq = io.sequence_from_json(_read(args.sequence))
    try:
        domain = Domain(args.domain, seq.nvars)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    level = seq.level if args.level is None else args.level
    if level > seq.level:
        raise UsageError(f"level {level} exceeds the stored level {seq.level}")
    report = check_moment(seq, domain, level)
    _write(args.output, io.dumps(io.report_to_json(report)))
    if report.passed:
        log.info("pass: no obstruction up to level %d on %s", level, domain.kind)
        return EXIT_OK
    f = report.first_failure
    log.error("fail at index %s: localization matrix %s, witness %s (value %s)",
              list(f.index), format_matrix(f.matrix), _vec(f.witness.vector), io.format_rational(f.witness.value))
    return EXIT_NEGATIVE


def cmd_sample_measure(args) -> int:
    measure = io.measure_from_json(_read(args.measure))
    seq = moment_seq_from_atomic(measure, args.level)
    _write(args.output, io.dumps(io.sequence_to_json(seq)))
    return EXIT_OK


def cmd_riesz(args) -> int:
    seq = io.sequence_from_json(_read(args.sequence))
    poly = io.poly_from_json(_read(args.poly))
    _write(args.output, io.format_rational(riesz_eval(seq, poly)) + "\n")
    return EXIT_OK


def cmd_integrate(args) -> int:
    measure = io.measure_from_json(_read(args.measure))
    poly = io.poly_from_json(_read(args.poly))
    _write(args.output, io.format_rational(tracial_integral(measure, poly)) + "\n")
    return EXIT_OK


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return v


def _grid(text: str) -> int:
    v = int(text)
    if v < 2:
        raise argparse.ArgumentTypeError("must be >= 2")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="matpos", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_output(p):
        p.add_argument("-o", "--output", default="-", help="output path, '-' for stdout (default)")
        return p

    p = with_output(sub.add_parser("certify", help="search for a positivity certificate"))
    p.add_argument("poly", help="matrix polynomial JSON ('-' for stdin)")
    p.add_argument("--domain", choices=KINDS, required=True)
    p.add_argument("--n-max", type=_nonneg, default=DEFAULT_N_MAX)
    p.add_argument("--grid", type=_grid, default=DEFAULT_GRID, help="grid points per axis for the fast-fail scan")
    p.set_defaults(func=cmd_certify)

    p = with_output(sub.add_parser("verify", help="verify a certificate against a polynomial"))
    p.add_argument("certificate")
    p.add_argument("poly")
    p.set_defaults(func=cmd_verify)

    p = with_output(sub.add_parser("moment-check", help="check a truncated matrix moment sequence"))
    p.add_argument("sequence")
    p.add_argument("--domain", choices=KINDS, required=True)
    p.add_argument("--level", type=_nonneg, default=None, help="defaults to the stored level")
    p.set_defaults(func=cmd_moment_check)

    p = with_output(sub.add_parser("sample-measure", help="moment sequence of an atomic measure"))
    p.add_argument("measure")
    p.add_argument("--level", type=_nonneg, required=True)
    p.set_defaults(func=cmd_sample_measure)

    p = with_output(sub.add_parser("riesz", help="Riesz functional of a sequence at a polynomial"))
    p.add_argument("sequence")
    p.add_argument("poly")
    p.set_defaults(func=cmd_riesz)

    p = with_output(sub.add_parser("integrate", help="tracial integral of a polynomial against a measure"))
    p.add_argument("measure")
    p.add_argument("poly")
    p.set_defaults(func=cmd_integrate)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.INFO,
                        format="%(levelname)s: %(message)s", stream=sys.stderr, force=True)
    try:
        return args.func(args)
    except (UsageError, ValueError) as exc:
        # ParseError, LevelTooHigh, DimensionMismatch, NotSymmetric all land here
        log.error("%s", exc)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
