"""Command-line interface.

Subcommands:

- ``writhe``   compute the writhe of one permutation (naive/fast/both)
- ``moments``  exact, enumerated, or limiting moments as rational text
- ``sample``   Monte Carlo histogram + JSON summary, fully reproducible
- ``limit``    density/CDF table of the limit law with reference curves
- ``bench``    timing ladder for the naive and fast algorithms
- ``corr``     circular rank correlation of an angular CSV

Exit codes: 0 success, 2 usage/parse errors, 3 internal contract
violations (e.g. the two writhe algorithms disagreeing).  All
randomness is controlled by ``--seed``; outputs embed enough metadata
to rerun them exactly.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import time
import warnings
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import limit as limit_mod
from . import moments as moments_mod
from .circular import RankPairs, kernel_alpha, kernel_beta, kernel_gamma, rank_correlation
from .fast import writhe_fast
from .montecarlo import compare_to_limit, simulate_writhe
from .permutation import InvalidPermutationError, Permutation, SizeParityError, writhe_naive
from .streams import SampleStream

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_CONTRACT = 3


class ContractViolation(RuntimeError):
    """Internal cross-check failed; results cannot be trusted."""


def _emit(text: str, output: str | None) -> None:
    if output is None or output == "-":
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        Path(output).write_text(text)


def _json_dumps(payload) -> str:
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def _frac_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)


# -- writhe ---------------------------------------------------------------

def cmd_writhe(args) -> int:
    text = sys.stdin.read() if args.perm == "-" else args.perm
    perm = Permutation.from_text(text)
    report: dict = {"size": perm.size, "algorithm": args.algo}
    results = {}
    for name, fn in (("naive", writhe_naive), ("fast", writhe_fast)):
        if args.algo in (name, "both"):
            t0 = time.perf_counter()
            results[name] = fn(perm)
            report.setdefault("timings_sec", {})[name] = time.perf_counter() - t0
    if args.algo == "both" and results["naive"] != results["fast"]:
        raise ContractViolation(
            f"algorithms disagree: naive={results['naive']} fast={results['fast']}"
        )
    report["writhe"] = results[args.algo if args.algo != "both" else "fast"]
    if args.format == "json":
        _emit(_json_dumps(report), args.output)
    else:
        lines = [f"writhe: {report['writhe']}"]
        for name, dt in report.get("timings_sec", {}).items():
            lines.append(f"  {name}: {dt:.6f}s")
        _emit("\n".join(lines), args.output)
    return EXIT_OK


# -- moments ----------------------------------------------------------------

def cmd_moments(args) -> int:
    rows: list[dict] = []
    if args.mode == "limit":
        orders = [args.k] if args.k else list(range(2, 21, 2))
        for k in orders:
            rows.append({"k": k, "value": _frac_str(moments_mod.limit_moment(k))})
    else:
        if not args.n:
            raise ValueError(f"mode {args.mode!r} needs at least one --n")
        if args.k is None:
            raise ValueError(f"mode {args.mode!r} needs --k")
        for n in args.n:
            if args.mode == "exact":
                value = moments_mod.writhe_moment_exact(n, args.k)
            else:
                value = moments_mod.writhe_moment_by_enumeration(n, args.k)
            rows.append({"n": n, "k": args.k, "value": _frac_str(value)})
    if args.format == "json":
        _emit(_json_dumps({"mode": args.mode, "rows": rows}), args.output)
    elif args.format == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=list(rows[0].keys()))
        writer.writeheader()
        writer.writerows(rows)
        _emit(buf.getvalue(), args.output)
    else:
        _emit("\n".join(" ".join(f"{k}={v}" for k, v in row.items()) for row in rows), args.output)
    return EXIT_OK


# -- sample -----------------------------------------------------------------

def _histogram_csv(hist) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["bin_left", "bin_right", "count", "density"])
    dens = hist.densities()
    for left, right, cnt, d in zip(hist.bin_edges[:-1], hist.bin_edges[1:], hist.counts, dens):
        writer.writerow([repr(float(left)), repr(float(right)), int(cnt), repr(float(d))])
    return buf.getvalue()


def cmd_sample(args) -> int:
    stream = SampleStream(args.seed)
    result = simulate_writhe(
        args.n,
        args.samples,
        stream,
        bins=args.bins,
        k_max=args.k,
        use_naive=(args.algo == "naive"),
        workers=args.threads,
        threads=args.threads,
    )
    comparison = compare_to_limit(result.histogram)
    summary = {
        "n": result.n,
        "num_samples": result.num_samples,
        "seed": result.seed,
        "stream_id": result.stream_id,
        "workers": result.workers,
        "algorithm": result.algorithm,
        "bins": int(result.histogram.counts.size),
        "range": [result.histogram.bin_edges[0], result.histogram.bin_edges[-1]],
        "underflow": result.histogram.underflow,
        "overflow": result.histogram.overflow,
        "moments": [
            {"k": m.order, "value": m.value, "std_error": m.std_error}
            for m in result.moments
        ],
        "ks_vs_limit": comparison.ks_statistic,
    }
    base = args.output or f"writhe_sample_n{args.n}_seed{args.seed}"
    hist_path = Path(base + ".hist.csv")
    summary_path = Path(base + ".summary.json")
    hist_path.write_text(_histogram_csv(result.histogram))
    summary_path.write_text(_json_dumps(summary))
    sys.stdout.write(f"wrote {hist_path} and {summary_path}\n")
    return EXIT_OK


# -- limit ------------------------------------------------------------------

def _reference_curves(x: np.ndarray) -> dict[str, np.ndarray]:
    var = limit_mod.limit_variance()
    sigma = math.sqrt(var)
    gauss = np.exp(-(x**2) / (2 * var)) / (sigma * math.sqrt(2 * math.pi))
    s = math.sqrt(3 * var) / math.pi  # logistic scale for this variance
    logistic = np.exp(-x / s) / (s * (1 + np.exp(-x / s)) ** 2)
    c = sigma  # the standard hyperbolic secant law has unit variance
    sech = (1.0 / (2 * c)) / np.cosh(np.pi * x / (2 * c))
    return {"gaussian_pdf": gauss, "logistic_pdf": logistic, "sech_pdf": sech}


def cmd_limit(args) -> int:
    x = np.arange(args.xmin, args.xmax + args.step / 2, args.step)
    pdf = limit_mod.limit_pdf(x)
    cdf = limit_mod.limit_cdf(x)
    refs = _reference_curves(x)
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["x", "pdf", "cdf", *refs.keys()])
    for i in range(x.size):
        writer.writerow(
            [repr(float(x[i])), repr(float(pdf[i])), repr(float(cdf[i]))]
            + [repr(float(col[i])) for col in refs.values()]
        )
    _emit(buf.getvalue(), args.output)
    return EXIT_OK


# -- bench ------------------------------------------------------------------

def _time_once(fn, *a) -> float:
    t0 = time.perf_counter()
    fn(*a)
    return time.perf_counter() - t0


def run_benchmark(
    fast_sizes: list[int],
    naive_sizes: list[int],
    seed: int = 0,
    repeats: int = 3,
) -> dict:
    """Wall-clock ladder for both algorithms with fitted exponents."""
    rng = SampleStream(seed).generator
    table = []
    times: dict[str, list[tuple[int, float]]] = {"fast": [], "naive": []}
    for algo, sizes, fn in (
        ("fast", fast_sizes, writhe_fast),
        ("naive", naive_sizes, writhe_naive),
    ):
        for size in sizes:
            if size % 2 == 0:
                raise ValueError("writhe sizes must be odd")
            perm = Permutation(rng.permutation(size))
            best = min(_time_once(fn, perm) for _ in range(repeats))
            times[algo].append((size, best))
            table.append({"algorithm": algo, "size": size, "seconds": best})
    exponents = {}
    for algo, pairs in times.items():
        if len(pairs) >= 2:
            ls = np.log([p[0] for p in pairs])
            lt = np.log([p[1] for p in pairs])
            exponents[algo] = float(np.polyfit(ls, lt, 1)[0])
    return {"rows": table, "fitted_exponents": exponents, "seed": seed, "repeats": repeats}


def cmd_bench(args) -> int:
    report = run_benchmark(args.fast_sizes, args.naive_sizes, args.seed, args.repeats)
    if args.format == "json":
        _emit(_json_dumps(report), args.output)
    else:
        lines = [f"{r['algorithm']:>6} N={r['size']:>9} {r['seconds']:.4f}s" for r in report["rows"]]
        for algo, expo in report["fitted_exponents"].items():
            lines.append(f"{algo} exponent ~ {expo:.3f}")
        _emit("\n".join(lines), args.output)
    return EXIT_OK


# -- corr -------------------------------------------------------------------

_STAT_KERNELS = {
    "writhe": (kernel_alpha, kernel_beta),
    "delta": (kernel_beta, kernel_beta),
    "pi": (kernel_gamma, kernel_gamma),
}


def _read_angle_csv(path: str) -> tuple[np.ndarray, np.ndarray]:
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    rows = list(csv.reader(io.StringIO(text)))
    if not rows:
        raise ValueError("empty input")
    start = 0
    try:
        float(rows[0][0])
    except (ValueError, IndexError):
        start = 1  # header row
    theta, phi = [], []
    for idx, row in enumerate(rows[start:], start=start + 1):
        if not row or (len(row) == 1 and not row[0].strip()):
            continue
        if len(row) < 2:
            raise ValueError(f"line {idx}: need two columns theta,phi")
        try:
            theta.append(float(row[0]))
            phi.append(float(row[1]))
        except ValueError:
            raise ValueError(f"line {idx}: non-numeric angle {row[:2]!r}")
    if not theta:
        raise ValueError("no data rows")
    return np.asarray(theta), np.asarray(phi)


def cmd_corr(args) -> int:
    theta, phi = _read_angle_csv(args.input)
    tie_warnings: list[str] = []
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        data = RankPairs.from_angles(theta, phi)
        tie_warnings = [str(w.message) for w in caught]
    report = {"n": data.size, "warnings": tie_warnings, "statistics": {}}
    for name in args.stats:
        f_factory, g_factory = _STAT_KERNELS[name]
        report["statistics"][name] = rank_correlation(data, f_factory(), g_factory())
    for w in tie_warnings:
        sys.stderr.write(f"warning: {w}\n")
    if args.format == "json":
        _emit(_json_dumps(report), args.output)
    else:
        lines = [f"n = {data.size}"] + [
            f"{name}: {value}" for name, value in report["statistics"].items()
        ]
        _emit("\n".join(lines), args.output)
    return EXIT_OK


# -- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="permwrithe",
        description="Writhe of permutations: computation, simulation, exact tables.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("writhe", help="writhe of one permutation")
    p.add_argument("perm", help="image list like '0 4 1 3 2 6 5', or - for stdin")
    p.add_argument("--algo", choices=["naive", "fast", "both"], default="both")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--output", default=None)
    p.set_defaults(fn=cmd_writhe)

    p = sub.add_parser("moments", help="exact/enumerated/limiting moments")
    p.add_argument("--mode", choices=["exact", "enumerate", "limit"], default="exact")
    p.add_argument("--k", type=int, default=None, help="moment order (even)")
    p.add_argument("--n", type=int, nargs="*", default=[], help="half-sizes n (size 2n+1)")
    p.add_argument("--format", choices=["text", "json", "csv"], default="text")
    p.add_argument("--output", default=None)
    p.set_defaults(fn=cmd_moments)

    p = sub.add_parser("sample", help="Monte Carlo histogram + summary")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--bins", type=int, default=161)
    p.add_argument("--k", type=int, default=4, help="highest sample moment")
    p.add_argument("--algo", choices=["fast", "naive"], default="fast")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--output", default=None, help="output basename")
    p.set_defaults(fn=cmd_sample)

    p = sub.add_parser("limit", help="limit-law density/CDF table")
    p.add_argument("--xmin", type=float, default=-4.0)
    p.add_argument("--xmax", type=float, default=4.0)
    p.add_argument("--step", type=float, default=0.01)
    p.add_argument("--output", default=None)
    p.set_defaults(fn=cmd_limit)

    p = sub.add_parser("bench", help="timing ladder with fitted exponents")
    p.add_argument(
        "--fast-sizes",
        type=int,
        nargs="*",
        default=[2**14 + 1, 2**16 + 1, 2**18 + 1, 2**20 + 1],
    )
    p.add_argument(
        "--naive-sizes",
        type=int,
        nargs="*",
        default=[2**10 + 1, 2**11 + 1, 2**12 + 1, 2**13 + 1, 2**14 + 1],
    )
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--repeats", type=int, default=3)
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--output", default=None)
    p.set_defaults(fn=cmd_bench)

    p = sub.add_parser("corr", help="circular rank correlation of angle CSV")
    p.add_argument("input", help="CSV with columns theta,phi in radians, or -")
    p.add_argument(
        "--stats",
        nargs="*",
        choices=sorted(_STAT_KERNELS),
        default=["writhe", "delta", "pi"],
    )
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--output", default=None)
    p.set_defaults(fn=cmd_corr)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except ContractViolation as exc:
        sys.stderr.write(f"contract violation: {exc}\n")
        return EXIT_CONTRACT
    except (InvalidPermutationError, SizeParityError, ValueError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
