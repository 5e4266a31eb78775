"""Command-line front end.

Exit codes: 0 success, 1 usage or input error, 2 no operator found within
--max-order, 3 a verification failed, 4 OEIS data unavailable.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from pathlib import Path

from . import __version__, artifact, catalog
from .azint import AZError, az, az_definite, verify_az
from .oeis import DEFAULT_BASE_URL, OEISUnavailable, fetch_bfile, normalize_id, parse_bfile
from .oracle import eval_sum
from .reader import ReaderError, format_closed_form, parse_bounds, parse_range, parse_term, print_operator
from .suite import paper_suite
from .telescope import DEFAULT_MAX_ORDER, TelescopeError, boundary_rhs, verify_ct, zeilberger
from .termlib import HyperexpTerm, TermError

EXIT_OK, EXIT_USAGE, EXIT_NOT_FOUND, EXIT_VERIFY, EXIT_NETWORK = 0, 1, 2, 3, 4

log = logging.getLogger("wzkit")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser():
    p = _Parser(prog="wzkit", description="Certified recurrences for definite sums and integrals.")
    p.add_argument("--version", action="version", version=f"wzkit {__version__}")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    prove = sub.add_parser("prove", help="find and verify a recurrence")
    prove.add_argument("kind", choices=("sum", "int"))
    prove.add_argument("term", help='summand in n, k (or j) or integrand in n, x, e.g. "3^j*binomial(3*n-j,2*n)"')
    prove.add_argument("--range", dest="range_", metavar="LO..UP", help="summation range, e.g. 0..n or 0..2*n")
    prove.add_argument("--start", type=int, default=0, help="first n for which the sum is considered")
    prove.add_argument("--bounds", metavar="A..B", help="integration bounds, e.g. -1/2..3/2")
    prove.add_argument("--max-order", type=int, default=DEFAULT_MAX_ORDER)
    prove.add_argument("--style", choices=("json", "canonical", "paper"), default="json",
                       help="what to print on stdout")
    prove.add_argument("--out", type=Path, help="write the JSON artifact here")

    check = sub.add_parser("check", help="re-verify an artifact or run the regression suite")
    check.add_argument("artifact", nargs="?", type=Path)
    check.add_argument("--paper-suite", action="store_true")

    oeis = sub.add_parser("oeis", help="compare the A006256 sum against an OEIS b-file")
    oeis.add_argument("--id", default="A006256")
    oeis.add_argument("--limit", type=int, default=40)
    oeis.add_argument("--cache", type=Path, help="cache directory (default: $TELESCOPE_CACHE or ~/.cache/wzkit)")
    oeis.add_argument("--offline", action="store_true", help="use only the cache")
    oeis.add_argument("--base-url", default=DEFAULT_BASE_URL, help=argparse.SUPPRESS)
    return p


# -- prove ------------------------------------------------------------------------

def _discover_sum(args, t0):
    if not args.range_:
        raise UsageError("prove sum needs --range LO..UP")
    term = parse_term(args.term)
    if isinstance(term, HyperexpTerm):
        raise UsageError("the summand mentions x; use 'prove int'")
    rng = parse_range(args.range_, args.start)
    pair = zeilberger(term, args.max_order)
    rhs = boundary_rhs(term, pair, rng, verify=False)
    cert_ok = verify_ct(term, pair)
    window, oracle_ok = artifact.sum_oracle(term, rng, pair.operator, rhs)
    report = {"certificate": cert_ok, "oracle": oracle_ok, "oracle_window": window}
    return artifact.build("sum", args.term, args.range_, pair.operator, rhs, pair.certificate,
                          report, time.perf_counter() - t0), pair.operator, rhs


def _discover_int(args, t0):
    if not args.bounds:
        raise UsageError("prove int needs --bounds A..B")
    term = parse_term(args.term)
    if not isinstance(term, HyperexpTerm):
        raise UsageError("the integrand has no x; use 'prove sum'")
    a, b = parse_bounds(args.bounds)
    pair = az(term, args.max_order)
    rhs = az_definite(term, pair, a, b)
    cert_ok = verify_az(term, pair)
    window, oracle_ok = artifact.integral_oracle(term, a, b, pair.operator, rhs)
    report = {"certificate": cert_ok, "oracle": oracle_ok, "oracle_window": window}
    return artifact.build("integral", args.term, args.bounds, pair.operator, rhs, pair.certificate,
                          report, time.perf_counter() - t0), pair.operator, rhs


def cmd_prove(args):
    if args.max_order < 0:
        raise UsageError("--max-order must be nonnegative")
    t0 = time.perf_counter()
    try:
        art, op, rhs = (_discover_sum if args.kind == "sum" else _discover_int)(args, t0)
    except (TelescopeError, AZError) as exc:
        msg = str(exc)
        if msg.startswith("no-operator-found") or msg.startswith("unsupported-range"):
            print(f"wzkit: {msg}", file=sys.stderr)
            return EXIT_NOT_FOUND
        raise UsageError(msg) from None
    text = artifact.dumps(art)
    if args.out:
        args.out.write_text(text, encoding="utf-8")
    if args.style == "json":
        sys.stdout.write(text)
    elif args.style == "canonical":
        print(print_operator(op, rhs, "canonical"))
    else:
        print(print_operator(op, rhs, "paper"))
    rep = art["verification"]
    ok = rep["certificate"] and rep["oracle"] is not False
    print(f"operator: {art['operator']['canonical']}", file=sys.stderr)
    print(f"rhs: {format_closed_form(rhs)}", file=sys.stderr)
    print(f"certificate check: {rep['certificate']}; oracle on {rep['oracle_window']}: {rep['oracle']}",
          file=sys.stderr)
    if not ok:
        print("wzkit: VERIFICATION FAILED", file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


# -- check ------------------------------------------------------------------------

def cmd_check(args):
    if args.paper_suite == (args.artifact is not None):
        raise UsageError("give exactly one of ARTIFACT or --paper-suite")
    if args.paper_suite:
        results = paper_suite()
        for r in results:
            print(r.line())
        return EXIT_OK if all(r.ok for r in results) else EXIT_VERIFY
    try:
        art = json.loads(args.artifact.read_text(encoding="utf-8"))
    except OSError as exc:
        raise UsageError(f"cannot read {args.artifact}: {exc}") from None
    except json.JSONDecodeError as exc:
        print(f"FAIL artifact is not valid JSON: {exc}")
        return EXIT_VERIFY
    if not isinstance(art, dict):
        print("FAIL artifact is not a JSON object")
        return EXIT_VERIFY
    failures = artifact.verify_artifact(art)
    for f in failures:
        print(f"FAIL {f}")
    if failures:
        return EXIT_VERIFY
    print(f"PASS {args.artifact}")
    return EXIT_OK


# -- oeis -------------------------------------------------------------------------

def cmd_oeis(args):
    seq_id = normalize_id(args.id)
    if seq_id != "A006256":
        raise UsageError(f"no local definition for {seq_id}; only A006256 is available")
    if args.limit < 0:
        raise UsageError("--limit must be nonnegative")
    try:
        text = fetch_bfile(seq_id, args.cache, args.offline, args.base_url)
    except OEISUnavailable as exc:
        print(f"wzkit: {exc}", file=sys.stderr)
        return EXIT_NETWORK
    remote = parse_bfile(text)
    spec = catalog.A006256_SUM.spec()
    bad = []
    for n in range(args.limit + 1):
        local = eval_sum(spec, n)
        if remote.get(n) != local:
            bad.append((n, remote.get(n), local))
    if bad:
        for n, r, l in bad[:10]:
            print(f"FAIL a({n}): b-file {r}, local {l}")
        return EXIT_VERIFY
    print(f"PASS {seq_id} entries 0..{args.limit} match the local sum")
    return EXIT_OK


COMMANDS = {"prove": cmd_prove, "check": cmd_check, "oeis": cmd_oeis}


VALUE_OPTIONS = ("--range", "--bounds")


def _attach_values(argv):
    """Join '--bounds -1/2..3/2' into '--bounds=-1/2..3/2' so argparse does not see an option."""
    out, it = [], iter(argv)
    for a in it:
        if a in VALUE_OPTIONS:
            nxt = next(it, None)
            out.append(a if nxt is None else f"{a}={nxt}")
        else:
            out.append(a)
    return out


def main(argv=None):
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(_attach_values(argv))
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except (UsageError, ReaderError, TermError, ValueError) as exc:
        print(f"wzkit: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
