"""exzero command line: scan, cup, verify, eisenstein.

stdout carries JSON only; diagnostics go to stderr.  Exit codes:
0 success, 1 a verification check failed, 2 usage error, 3 standing
hypothesis violated, 4 precision or budget shortfall.
"""
import argparse
import sys
import time
from concurrent.futures import ThreadPoolExecutor

from ._arith import is_prime
from .characters import DirichletChar, enumerate_characters, is_exceptional, teichmuller_char, theta_from_chi
from .eisenstein import eisenstein_coeff, specialize
from .errors import (
    HypothesisError,
    ParityError,
    PrecisionError,
    PrimitivityError,
)
from .lvalues import kubota_leopoldt, pair_ring
from .reciprocity import cup_value
from .report import dumps, envelope
from .verify import SUITES, run_suite

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_HYPOTHESIS, EXIT_PRECISION = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


def _pmap(fn, items, threads):
    # results always come back in input order
    if threads and threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            return list(ex.map(fn, items))
    return [fn(x) for x in items]


def _char(n, label):
    try:
        chi = DirichletChar.from_label(label)
    except ValueError as exc:
        raise UsageError(str(exc))
    if chi.modulus != n:
        raise UsageError(f"label {label} has modulus {chi.modulus}, expected --n {n}")
    return chi


def _prime(p, least=2):
    if not is_prime(p) or p < least:
        raise UsageError(f"p = {p} must be a prime >= {least}")


def cmd_scan(args):
    _prime(args.p, 5)
    if args.nmax < 1:
        raise UsageError("--nmax must be positive")

    def scan_one(N):
        rows = []
        for chi in enumerate_characters(N):
            if is_exceptional(chi, args.p):
                rows.append((chi.exponents(), {"N": N, "label": chi.label, "order": chi.order}))
        return [r for _, r in sorted(rows, key=lambda t: t[0])]

    found = [r for rows in _pmap(scan_one, range(1, args.nmax + 1), args.threads) for r in rows]
    params = {"p": args.p, "nmax": args.nmax}
    return envelope("scan", params, found, counters={"found": len(found)}), EXIT_OK


def cmd_cup(args):
    chi = _char(args.n, args.chi)
    _prime(args.p)
    if args.r < 1:
        raise UsageError("--r must be >= 1")
    if not is_prime(args.q) or (args.n * args.p) % args.q:
        raise UsageError(f"q = {args.q} is not a prime divisor of N p = {args.n * args.p}")
    precision = args.precision if args.precision is not None else args.r + 4
    if precision < args.r:
        raise UsageError("--precision must be >= --r")
    res = cup_value(args.q, chi, args.p, args.r, precision)
    params = {
        "n": args.n,
        "p": args.p,
        "chi": chi.label,
        "q": args.q,
        "r": args.r,
        "precision": precision,
    }
    return envelope("cup", params, [res], embedding=res.embedding), EXIT_OK


def cmd_verify(args):
    names = SUITES if args.suite == "all" else (args.suite,)
    counters = {}
    results = []
    for name in names:
        checks = run_suite(name, max_m=args.max_m, threads=args.threads)
        passed = sum(c["passed"] for c in checks)
        counters[name] = {"passed": passed, "failed": len(checks) - passed, "total": len(checks)}
        results.append({"suite": name, "checks": checks})
    failed = sum(c["failed"] for c in counters.values())
    params = {"suite": args.suite, "max_m": args.max_m}
    code = EXIT_OK if failed == 0 else EXIT_FAILED
    return envelope("verify", params, results, counters=counters), code


def cmd_eisenstein(args):
    chi = _char(args.n, args.chi)
    _prime(args.p, 3)
    if args.weight < 2:
        raise UsageError("--weight must be >= 2")
    if args.terms < 0:
        raise UsageError("--terms must be >= 0")
    k = args.precision
    D = args.degree if args.degree is not None else k
    theta = theta_from_chi(chi, args.p)
    ring = pair_ring(chi, args.p)

    def coeff(n):
        A = eisenstein_coeff(n, theta, args.p, D, k, ring)
        return {"n": n, "value": specialize(A, args.weight)}

    coeffs = _pmap(coeff, range(args.terms + 1), args.threads)
    psi = theta * teichmuller_char(args.p) ** 2
    lp = kubota_leopoldt(1 - args.weight, psi, args.p, k, ring)
    params = {
        "n": args.n,
        "p": args.p,
        "chi": chi.label,
        "theta": theta.label,
        "weight": args.weight,
        "terms": args.terms,
        "degree": D,
        "precision": k,
    }
    results = {"coefficients": coeffs, "constant_term_lp": lp}
    return envelope("eisenstein", params, results, embedding=ring.convention()), EXIT_OK


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threads", type=int, default=1, help="worker threads for independent items")
    common.add_argument("--timing", action="store_true", help="print elapsed time to stderr")

    parser = argparse.ArgumentParser(prog="exzero", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("scan", parents=[common], help="list exceptional characters")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--nmax", type=int, required=True)
    sp.set_defaults(func=cmd_scan)

    sp = sub.add_parser("cup", parents=[common], help="cup product value mod p^r")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--chi", required=True, help="character label M:[e1,...]")
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--r", type=int, required=True)
    sp.add_argument("--precision", type=int, default=None, help="working digits (default r+4)")
    sp.set_defaults(func=cmd_cup)

    sp = sub.add_parser("verify", parents=[common], help="run a verification suite")
    sp.add_argument("suite", choices=SUITES + ("all",))
    sp.add_argument("--max-m", type=int, default=30)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("eisenstein", parents=[common], help="specialized Eisenstein coefficients")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--chi", required=True)
    sp.add_argument("--weight", type=int, required=True)
    sp.add_argument("--terms", type=int, required=True)
    sp.add_argument("--degree", type=int, default=None, help="series degree D (default: precision)")
    sp.add_argument("--precision", type=int, default=6)
    sp.set_defaults(func=cmd_eisenstein)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.threads < 1:
        parser.error("--threads must be >= 1")
    start = time.perf_counter()
    try:
        report, code = args.func(args)
    except UsageError as exc:
        print(f"exzero: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (HypothesisError, ParityError, PrimitivityError) as exc:
        reason = getattr(exc, "reason", None)
        print(f"exzero: hypothesis failure: {exc}" + (f" [{reason}]" if reason else ""), file=sys.stderr)
        return EXIT_HYPOTHESIS
    except PrecisionError as exc:
        print(f"exzero: precision: {exc}", file=sys.stderr)
        return EXIT_PRECISION
    except ValueError as exc:
        print(f"exzero: {exc}", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.write(dumps(report))
    if args.timing:
        print(f"exzero: {args.command} took {time.perf_counter() - start:.3f}s", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
