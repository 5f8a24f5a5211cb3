"""Command line entry point: point evaluation, CSV profiles, and reports.

Exit codes: 0 success, 2 bad flags, 3 I/O error, 4 selftest failure.
"""

from __future__ import annotations

import argparse
import csv
import itertools
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from contextlib import contextmanager
from typing import Callable, Iterator, Sequence

from . import oracle
from .bench import STRATEGY_LABELS, fit_exponents, run_benchmark
from .counting import (
    BaselineParams,
    HVariantParams,
    gamma_admissible_max,
    h_term,
)
from .cutoff import phi
from .fejer import EvalStrategy
from .indicator import indicator_P, indicator_P_rpf, jump_measured
from .numerics import second_derivative_5pt
from .smooth import p_sigma, p_tau, p_tau_integer
from .zeros import companion_zeros_sigma, companion_zeros_tau, decay_fit

EXIT_OK, EXIT_FLAGS, EXIT_IO, EXIT_SELFTEST = 0, 2, 3, 4

STRATEGIES = {
    "auto": EvalStrategy.AUTO,
    "cosine": EvalStrategy.COSINE_POLY,
    "sine": EvalStrategy.SINE_QUOTIENT,
    "rpf": EvalStrategy.RPF,
    "A": EvalStrategy.COSINE_POLY,
    "B": EvalStrategy.SINE_QUOTIENT,
    "C": EvalStrategy.RPF,
}


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def fmt(v) -> str:
    """17 significant digits, round-trips a double."""
    if v is None:
        return ""
    if isinstance(v, (int, str)):
        return str(v)
    return f"{v:.16e}"


def _float_list(text: str) -> list[float]:
    try:
        return [float(s) for s in text.split(",") if s.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of numbers: {text!r}")


def _int_list(text: str) -> list[int]:
    try:
        return [int(s) for s in text.split(",") if s.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of integers: {text!r}")


def _positive(text: str) -> float:
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError(f"must be > 0: {text}")
    return v


@contextmanager
def _open_out(path) -> Iterator:
    if path in (None, "-"):
        yield sys.stdout
        return
    try:
        fh = open(path, "w", newline="")
    except OSError as exc:
        raise CliError(f"cannot write {path}: {exc}", EXIT_IO)
    try:
        yield fh
    finally:
        fh.close()


def _write_csv(path, header: Sequence[str], rows) -> None:
    with _open_out(path) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([fmt(v) for v in row])


def _workers() -> int:
    env = os.environ.get("FEJER_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise CliError("FEJER_THREADS must be an integer", EXIT_FLAGS)
    return 1


def _parallel_map(fn: Callable, items: list, workers: int) -> list:
    """Ordered map; results are identical for any worker count."""
    if workers <= 1 or len(items) < 256:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items, chunksize=max(1, len(items) // (8 * workers))))


# row builders live at module level so worker processes can pickle them


def _row_P(args):
    x, strategy = args
    return (x, indicator_P(x, strategy).value)


def _row_d2P(args):
    x, strategy, h = args
    return (x, second_derivative_5pt(lambda u: indicator_P(u, strategy).value, x, h))


def _row_ptau(args):
    x, kappa, eps = args
    v = p_tau(x, kappa, eps)
    return (x, v.value, v.tail_bound)


def _row_psigma(args):
    x, kappa, eps = args
    v = p_sigma(x, kappa, eps)
    return (x, v.value, v.tail_bound)


def _grid(start: float, stop: float, step: float) -> list[float]:
    count = math.floor((stop - start) / step + 1e-9)
    return [start + k * step for k in range(count + 1)]


def cmd_eval(args) -> int:
    x = args.x
    if args.fn == "P":
        strategy = STRATEGIES[args.strategy]
        if strategy is EvalStrategy.RPF:
            cv = indicator_P_rpf(x, args.K)
            print(f"value {fmt(cv.value)}")
            print(f"bound {fmt(cv.abs_error_bound)}")
        else:
            print(fmt(indicator_P(x, strategy).value))
        return EXIT_OK
    fn = p_tau if args.fn == "ptau" else p_sigma
    v = fn(x, args.kappa, args.eps)
    print(f"value {fmt(v.value)}")
    print(f"tail_bound {fmt(v.tail_bound)}")
    print(f"M {v.M_used}")
    return EXIT_OK


def cmd_profile(args) -> int:
    workers = _workers()
    if args.fn == "phi":
        xs = _grid(args.start, args.stop, args.step)
        header = ["u"] + [f"phi_kappa_{k:g}" for k in args.kappas]
        rows = ([u] + [phi(u, k) for k in args.kappas] for u in xs)
        _write_csv(args.out, header, rows)
        return EXIT_OK
    if args.start <= 0 and args.fn in ("ptau", "psigma"):
        raise CliError("smooth profiles need --from > 0", EXIT_FLAGS)
    xs = _grid(args.start, args.stop, args.step)
    strategy = STRATEGIES[args.strategy]
    if args.fn == "P":
        rows = _parallel_map(_row_P, [(x, strategy) for x in xs], workers)
        header = ["x", "value"]
    elif args.fn == "d2P":
        rows = _parallel_map(_row_d2P, [(x, strategy, args.h) for x in xs], workers)
        header = ["x", "value"]
    elif args.fn == "ptau":
        rows = _parallel_map(_row_ptau, [(x, args.kappa, args.eps) for x in xs], workers)
        header = ["x", "value", "tail_bound"]
    else:
        rows = _parallel_map(_row_psigma, [(x, args.kappa, args.eps) for x in xs], workers)
        header = ["x", "value", "tail_bound"]
    _write_csv(args.out, header, rows)
    return EXIT_OK


def cmd_jumps(args) -> int:
    reports = [jump_measured(m, args.h) for m in range(1, args.m_max + 1)]
    _write_csv(
        args.out,
        ["m", "predicted", "measured", "rel_error", "h"],
        ((r.m, r.predicted, r.measured, r.rel_error, r.h) for r in reports),
    )
    worst = max(r.rel_error for r in reports)
    print(f"max relative error {worst:.3e}", file=sys.stderr)
    return EXIT_OK


def cmd_zeros(args) -> int:
    finder = companion_zeros_tau if args.fn == "tau" else companion_zeros_sigma
    pairs = [finder(p, k, min_kappa=0.0) for p in args.primes for k in args.kappas]
    _write_csv(
        args.out,
        ["p", "kappa", "left", "right", "left_gap", "right_gap", "left_count", "right_count"],
        (
            (z.p, z.kappa, z.left, z.right, z.left_gap, z.right_gap, z.left_count, z.right_count)
            for z in pairs
        ),
    )
    slope_rows = []
    for p in args.primes:
        for side in ("left", "right"):
            pts = [
                (z.kappa, getattr(z, side + "_gap"))
                for z in pairs
                if z.p == p and getattr(z, side + "_gap") is not None
            ]
            if len(pts) >= 3:
                fit = decay_fit(pts)
                slope_rows.append((p, side, fit.slope, fit.residual, len(pts)))
    for p, side, slope, resid, npts in slope_rows:
        print(
            f"p={p} {side} slope {slope:.6f} (rms {resid:.2e}, {npts} points)",
            file=sys.stderr,
        )
    if args.slopes_out:
        _write_csv(args.slopes_out, ["p", "side", "slope", "residual", "points"], slope_rows)
    return EXIT_OK


def cmd_count(args) -> int:
    top = math.floor(args.x_max)
    if top < 2:
        raise CliError("--x-max must be >= 2", EXIT_FLAGS)
    try:
        base = BaselineParams(kappa=args.kappa, C=args.C)
        hp = HVariantParams(args.alpha, args.gamma, args.lam, X=args.x_max)
    except ValueError as exc:
        raise CliError(str(exc), EXIT_FLAGS)
    flags = oracle.prime_sieve(top)
    pi_terms = [int(flags[n]) for n in range(2, top + 1)]
    base_terms = []
    for n in range(2, top + 1):
        g = abs(p_tau_integer(n, base.kappa))
        base_terms.append(base.C / (g + base.C))
    h_terms = [h_term(n, hp, args.exact_prime_residual) for n in range(2, top + 1)]
    rows = zip(
        range(2, top + 1),
        itertools.accumulate(pi_terms),
        itertools.accumulate(base_terms),
        itertools.accumulate(h_terms),
    )
    _write_csv(args.out, ["x", "pi", "pi_baseline", "pi_h"], rows)
    gmax = gamma_admissible_max(args.alpha, args.x_max, args.lam)
    verdict = "admissible" if args.gamma <= gmax else "NOT admissible"
    print(
        f"gamma = {args.gamma:g} vs admissible max {gmax:.4f} "
        f"(alpha={args.alpha:g}, X={args.x_max:g}, lambda={args.lam:g}): {verdict}",
        file=sys.stderr,
    )
    return EXIT_OK


def cmd_bench(args) -> int:
    try:
        strategies = [STRATEGIES[s] for s in args.strategies.split(",")]
    except KeyError as exc:
        raise CliError(f"unknown strategy {exc}", EXIT_FLAGS)
    timings = run_benchmark(args.xs, strategies, args.reps)
    _write_csv(
        args.out,
        ["strategy", "x", "seconds"],
        ((STRATEGY_LABELS[t.strategy], t.x, t.seconds) for t in timings),
    )
    for strategy, fit in sorted(fit_exponents(timings).items(), key=lambda kv: kv[0].value):
        print(
            f"strategy {STRATEGY_LABELS[strategy]}: exponent {fit.exponent:.3f} "
            f"(rms {fit.residual:.3f})",
            file=sys.stderr,
        )
    return EXIT_OK


def cmd_selftest(args) -> int:
    from .acceptance import CRITERIA, run_all

    select = args.only or sorted(CRITERIA)
    if any(k not in CRITERIA for k in select):
        raise CliError(f"criteria are numbered 1..{len(CRITERIA)}", EXIT_FLAGS)
    results = []
    for r in run_all(select):
        print(r.line(), flush=True)
        results.append(r)
    failed = [r.number for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} passed")
    return EXIT_SELFTEST if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fejer-prime",
        description="Fejer divisor-filter prime indicator and its smooth analogues.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate P, P_tau or P_sigma at one point")
    p.add_argument("--fn", choices=["P", "ptau", "psigma"], default="P")
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--strategy", choices=sorted(STRATEGIES), default="auto")
    p.add_argument("--K", type=int, default=2, help="RPF poles on each side")
    p.add_argument("--kappa", type=_positive, default=100.0)
    p.add_argument("--eps", type=_positive, default=1e-12)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("profile", help="CSV profile over a grid")
    p.add_argument("--fn", choices=["P", "d2P", "ptau", "psigma", "phi"], default="P")
    p.add_argument("--from", dest="start", type=float, default=2.0)
    p.add_argument("--to", dest="stop", type=float, default=50.0)
    p.add_argument("--step", type=_positive, default=0.01)
    p.add_argument("--strategy", choices=sorted(STRATEGIES), default="auto")
    p.add_argument("--kappa", type=_positive, default=100.0)
    p.add_argument("--kappas", type=_float_list, default=[2.0, 5.0, 10.0, 100.0])
    p.add_argument("--eps", type=_positive, default=1e-12)
    p.add_argument("--h", type=_positive, default=1e-4, help="stencil step for d2P")
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("jumps", help="second-derivative jumps at squares")
    p.add_argument("--m-max", type=int, default=20)
    p.add_argument("--h", type=float, default=1e-4)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_jumps)

    p = sub.add_parser("zeros", help="companion zeros next to odd primes")
    p.add_argument("--fn", choices=["tau", "sigma"], default="tau")
    p.add_argument("--primes", type=_int_list, default=[3, 5, 7])
    p.add_argument("--kappas", type=_float_list, default=[20.0, 40.0, 80.0, 160.0])
    p.add_argument("--out", default="-")
    p.add_argument("--slopes-out", default=None)
    p.set_defaults(func=cmd_zeros)

    p = sub.add_parser("count", help="pi(x) against the two counting sums")
    p.add_argument("--x-max", type=float, default=50.0)
    p.add_argument("--C", type=_positive, default=0.1)
    p.add_argument("--kappa", type=_positive, default=1000.0, help="baseline steepness")
    p.add_argument("--alpha", type=_positive, default=18.5)
    p.add_argument("--gamma", type=float, default=5.0)
    p.add_argument("--lam", type=float, default=100.0)
    p.add_argument("--exact-prime-residual", action="store_true")
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("bench", help="runtime scaling of strategies A, B, C")
    p.add_argument("--xs", type=_float_list, default=[1e4, 1e5, 1e6, 1e7])
    p.add_argument("--strategies", default="A,B,C")
    p.add_argument("--reps", type=int, default=3)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("selftest", help="run the acceptance checks")
    p.add_argument("--only", type=_int_list, default=None)
    p.set_defaults(func=cmd_selftest)
    return parser


def _validate(args) -> None:
    if args.command == "profile" and not args.start < args.stop:
        raise CliError("--from must be < --to", EXIT_FLAGS)
    if args.command == "jumps":
        if args.m_max < 1:
            raise CliError("--m-max must be >= 1", EXIT_FLAGS)
        if not 1e-6 <= args.h <= 1e-2:
            raise CliError("--h must lie in [1e-6, 1e-2]", EXIT_FLAGS)
    if args.command == "eval" and args.K < 0:
        raise CliError("--K must be >= 0", EXIT_FLAGS)
    if args.command in ("eval",) and args.fn != "P" and not args.x > 0:
        raise CliError("smooth functions need x > 0", EXIT_FLAGS)
    if args.command == "zeros":
        bad = [p for p in args.primes if p % 2 == 0 or not oracle.is_prime(p)]
        if bad:
            raise CliError(f"not odd primes: {bad}", EXIT_FLAGS)
        if any(not k > 0 for k in args.kappas):
            raise CliError("kappas must be > 0", EXIT_FLAGS)
    if args.command == "bench" and args.reps < 1:
        raise CliError("--reps must be >= 1", EXIT_FLAGS)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _validate(args)
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
