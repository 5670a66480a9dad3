"""Command-line experiment runner.

Every subcommand writes a JSON report (tool version, config echo, per-claim
pass/fail with measured values) and prints its result block to stdout.
Exit codes: 0 success, 1 input error, 2 invariant failure, 64 unknown subcommand.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import __version__, rigidity
from .analytic import ExpSum, Rectangle, expsum_from_json, zero_count, zero_diff_periodicity_check
from .counterexamples import (
    expsum_pair,
    pair_bundle,
    pauli_distinguishability,
    signal_bundle,
    signal_pair,
)
from .errors import InputError, PhaselabError
from .transforms import (
    SQRT_HALF,
    GaussianSum,
    bargmann,
    gabor,
    gaussian_sum_from_json,
    gaussian_sum_to_json,
    hardy_swap_check,
    relation_check,
)
from .uniqueness import (
    LineFamily,
    SequenceSpec,
    halfline_uniqueness_verdict,
    laplace_divergence,
    uniqueness_verdict,
)

EXIT_OK, EXIT_INPUT, EXIT_INVARIANT, EXIT_USAGE = 0, 1, 2, 64

COMMON_DEFAULTS = {"out": "report.json", "csv": None, "plot": False, "svg": "heatmap.svg"}

DEFAULTS = {
    "ap-check": {"set": None, "mode": "auto", "tol": rigidity.DEFAULT_TOL, "q_max": rigidity.DEFAULT_Q_MAX},
    "counterexample": {
        "a": 1.0, "b": 0.0, "theta": 0.0, "c": "1", "c_prime": "1j",
        "x_window": "-2,2,81", "n_range": "-3,3", "verify": False, "gap_tol": 1e-9,
    },
    "verify-lines": {
        "set": None, "theta": 0.0, "mode": "auto", "tol": rigidity.DEFAULT_TOL,
        "q_max": rigidity.DEFAULT_Q_MAX, "x_window": "-2,2,81", "v_fallback": 1.0, "verify_tol": 1e-8,
    },
    "transforms-check": {
        "signal": None, "x_window": "-1,0,5", "omega_window": "-1,1,5", "tol": 1e-6, "seed": 0,
    },
    "zeros": {
        "expsum": None, "preset": "sine", "a": 1.0, "b": 0.0, "theta": 0.0,
        "rect": "-0.5,2.5,-1,1", "segments": 64, "periodicity": None,
    },
    "laplace": {"seq": None, "lambdas": None, "tol": rigidity.DEFAULT_TOL, "q_max": rigidity.DEFAULT_Q_MAX},
    "pauli": {"set": "0,1,2", "a": 1.0, "b": 0.0, "c": "1", "c_prime": "1j", "t_window": "-2,2,41", "tol": 1e-8},
    "report-all": {},
}

COMMANDS = tuple(DEFAULTS)


class _ArgumentError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _ArgumentError(f"{self.prog}: error: {message}")


# -- parsing helpers --------------------------------------------------------


def parse_set(text) -> list:
    if isinstance(text, (list, tuple)):
        return [v if isinstance(v, (int, float)) else rigidity.parse_scalar(str(v)) for v in text]
    if text is None or not str(text).strip():
        raise InputError("empty set")
    return [_scalar(tok) for tok in str(text).split(",")]


def _scalar(tok: str):
    tok = tok.strip()
    if tok.startswith("sqrt(") and tok.endswith(")"):
        return math.sqrt(float(rigidity.parse_scalar(tok[5:-1])))
    return rigidity.parse_scalar(tok)


def parse_complex(text) -> complex:
    if isinstance(text, (int, float, complex)):
        return complex(text)
    try:
        return complex(str(text).replace(" ", "").replace("i", "j"))
    except ValueError:
        raise InputError(f"cannot parse complex number {text!r}") from None


def parse_window(text, name: str) -> tuple[float, float, int]:
    parts = text if isinstance(text, (list, tuple)) else str(text).split(",")
    try:
        lo, hi, count = float(parts[0]), float(parts[1]), int(parts[2])
    except (IndexError, ValueError):
        raise InputError(f"{name} must be 'lo,hi,count'") from None
    if count < 2 or not lo < hi:
        raise InputError(f"{name} needs lo < hi and count >= 2")
    return lo, hi, count


def parse_floats(text, n: int, name: str) -> list[float]:
    parts = text if isinstance(text, (list, tuple)) else str(text).split(",")
    try:
        vals = [float(p) for p in parts]
    except ValueError:
        raise InputError(f"{name} must be {n} comma-separated numbers") from None
    if len(vals) != n:
        raise InputError(f"{name} must be {n} comma-separated numbers")
    return vals


def _positive(cfg: dict, *keys):
    for k in keys:
        if not float(cfg[k]) > 0:
            raise InputError(f"{k} must be > 0")


def threads() -> int:
    raw = os.environ.get("PHASELAB_THREADS")
    if raw is None:
        return min(4, os.cpu_count() or 1)
    try:
        n = int(raw)
    except ValueError:
        raise InputError("PHASELAB_THREADS must be an integer") from None
    if n < 1:
        raise InputError("PHASELAB_THREADS must be >= 1")
    return n


def pmap(fn, items) -> list:
    """Order-preserving map over a thread pool capped by ``PHASELAB_THREADS``."""
    items = list(items)
    n = threads()
    if n == 1 or len(items) < 2:
        return [fn(v) for v in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))


def _claim(name: str, passed: bool, **measured) -> dict:
    return {"name": name, "passed": bool(passed), "measured": measured}


# -- plotting ---------------------------------------------------------------


def write_heatmap(path, f: GaussianSum, lines=None, profile=None, window=3.0, count=121):
    """SVG heatmap of ``|G f|`` with optional line overlays and a gap profile."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    matplotlib.rcParams["svg.hashsalt"] = "phaselab"
    grid = np.linspace(-window, window, count)
    rows = pmap(lambda w: np.abs(gabor(f, grid, w)), grid)
    img = np.array(rows)
    ncols = 2 if profile else 1
    fig, axes = plt.subplots(1, ncols, figsize=(5 * ncols, 4), squeeze=False)
    ax = axes[0, 0]
    im = ax.imshow(img, origin="lower", extent=(-window, window, -window, window), aspect="auto", cmap="viridis")
    fig.colorbar(im, ax=ax, label="|G f|")
    for X, W in lines or ():
        ax.plot(X, W, color="white", lw=0.8)
    ax.set_xlim(-window, window)
    ax.set_ylim(-window, window)
    ax.set_xlabel("x")
    ax.set_ylabel("omega")
    if profile:
        ys, gaps = zip(*profile)
        ax2 = axes[0, 1]
        ax2.semilogy(ys, np.maximum(gaps, 1e-18), "o-")
        ax2.set_xlabel("line height")
        ax2.set_ylabel("max modulus gap")
    fig.tight_layout()
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)


def write_csv(path, header, rows):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        w.writerows(rows)


# -- commands ---------------------------------------------------------------


def cmd_ap_check(cfg):
    _positive(cfg, "tol", "q_max")
    lam = parse_set(cfg["set"])
    mode = cfg["mode"]
    if mode == "exact":
        if not all(rigidity.is_rational(v) for v in lam):
            raise InputError("exact mode needs rational elements")
        v = rigidity.ap_containment_exact(lam)
    elif mode == "float":
        v = rigidity.ap_containment_float([float(x) for x in lam], float(cfg["tol"]), int(cfg["q_max"]))
    elif mode == "auto":
        v = rigidity.ap_containment(lam, float(cfg["tol"]), int(cfg["q_max"]))
    else:
        raise InputError(f"unknown mode {mode!r}")
    claims = []
    if v.contained and v.a:
        resid = max(abs(float(x) - float(v.b) - float(v.a) * round((float(x) - float(v.b)) / float(v.a))) for x in lam)
        claims.append(_claim("set lies in aZ + b", resid <= max(float(cfg["tol"]), 1e-12) * max(1.0, float(v.a)),
                             residual=resid))
    return v.to_json(), claims, {}


def _pair_from_cfg(cfg):
    return expsum_pair(float(cfg["a"]), float(cfg["b"]), float(cfg["theta"]),
                       parse_complex(cfg["c"]), parse_complex(cfg["c_prime"]))


def cmd_counterexample(cfg):
    _positive(cfg, "gap_tol")
    xw = parse_window(cfg["x_window"], "x_window")
    n0, n1 = (int(v) for v in parse_floats(cfg["n_range"], 2, "n_range"))
    if n1 < n0:
        raise InputError("n_range needs lo <= hi")
    P = _pair_from_cfg(cfg)
    xs = np.linspace(*xw)
    ns = list(range(n0, n1 + 1))
    bundle = pair_bundle(P, xs, ns)
    S = signal_pair(P.a, P.b, P.theta, P.c, P.c_prime, ns=ns)
    sb = signal_bundle(S, xs)
    result = {"pair": bundle, "signals": sb}
    claims = []
    if cfg["verify"]:
        tol = float(cfg["gap_tol"])
        claims += [
            _claim("|F| = |H| on the progression lines", bundle["max_gap"] < tol, max_gap=bundle["max_gap"], tol=tol),
            _claim("F and H are not unimodular multiples", not bundle["equivalent_on_off_grid"]
                   and bundle["non_equivalent_by_construction"]),
            _claim("|G f| = |G h| on the mapped lines", sb["max_gap"] < max(tol, 1e-8), max_gap=sb["max_gap"]),
        ]
    heights = [P.a * n + P.b for n in ns]
    rows = pmap(lambda y: _line_gap(P, xs, y), heights)
    extras = {
        "csv": (("line_height", "max_modulus_gap"), rows),
        "plot": (S.f, [S.tf_points(xs, [y]) for y in heights], rows),
    }
    return result, claims, extras


def _line_gap(P, xs, y):
    z = np.exp(1j * P.theta) * (xs + 1j * y)
    return float(y), float(np.max(np.abs(np.abs(P.F(z)) - np.abs(P.H(z)))))


def cmd_verify_lines(cfg):
    _positive(cfg, "tol", "q_max", "verify_tol")
    lam = parse_set(cfg["set"])
    L = LineFamily(float(cfg["theta"]), tuple(lam), parse_window(cfg["x_window"], "x_window"))
    v = uniqueness_verdict(L, cfg["mode"], float(cfg["tol"]), int(cfg["q_max"]),
                           float(cfg["v_fallback"]), float(cfg["verify_tol"]))
    claims, extras = [], {}
    if not v.unique:
        ev = v.evidence
        claims.append(_claim("counterexample pair verified on the sampled family", ev.get("verified", False),
                             max_gap=ev.get("max_gap"), signal_max_gap=ev.get("signal_max_gap")))
        P, S = v.counterexample, v.signal_counterexample
        if S is None:
            # the pair left double range; the verdict already records why
            return v.to_json(), claims, extras
        rows = pmap(lambda y: _line_gap(P, L.xs, float(y)), L.lambdas)
        extras = {
            "csv": (("line_height", "max_modulus_gap"), rows),
            "plot": (S.f, [S.tf_points(L.xs, [float(y)]) for y in L.lambdas], rows),
        }
    return v.to_json(), claims, extras


def cmd_transforms_check(cfg):
    _positive(cfg, "tol")
    if cfg["signal"]:
        try:
            f = gaussian_sum_from_json(Path(cfg["signal"]).read_text())
        except OSError as exc:
            raise InputError(f"cannot read signal: {exc}") from None
    else:
        f = GaussianSum.gaussian(2.0)
    xs = np.linspace(*parse_window(cfg["x_window"], "x_window"))
    ws = np.linspace(*parse_window(cfg["omega_window"], "omega_window"))
    pts = [(float(x), float(w)) for x in xs for w in ws]
    checks = pmap(lambda p: relation_check(f, p[0], p[1], tol=float(cfg["tol"])), pts)
    rng = np.random.default_rng(int(cfg["seed"]))
    z = rng.uniform(-2, 2, 10) + 1j * rng.uniform(-2, 2, 10)
    base_err = float(np.max(np.abs(bargmann(GaussianSum.gaussian(), z) - SQRT_HALF)))
    swap = hardy_swap_check(f, pts)
    rows = [(x, w, abs(c.lhs), abs(c.lhs - c.mid), None if c.rhs is None else abs(c.lhs - c.rhs), c.passed)
            for (x, w), c in zip(pts, checks)]
    result = {
        "signal": gaussian_sum_to_json(f),
        "points": len(pts),
        "relation_failures": sum(not c.passed for c in checks),
        "max_lhs_mid": max(abs(c.lhs - c.mid) for c in checks),
        "bargmann_baseline_error": base_err,
        "hardy_swap": swap,
    }
    claims = [
        _claim("Gabor = weighted Bargmann = weighted Laplace", result["relation_failures"] == 0,
               max_lhs_mid=result["max_lhs_mid"]),
        _claim("Bargmann(phi) = 2^-1/2", base_err <= 1e-8, error=base_err),
        _claim("Fourier swaps time-frequency magnitudes", swap),
    ]
    extras = {"csv": (("x", "omega", "abs_gabor", "lhs_mid", "lhs_rhs", "passed"), rows), "plot": (f, [], None)}
    return result, claims, extras


def cmd_zeros(cfg):
    x0, x1, y0, y1 = parse_floats(cfg["rect"], 4, "rect")
    R = Rectangle.from_bounds(x0, x1, y0, y1)
    segs = int(cfg["segments"])
    if segs < 2:
        raise InputError("segments must be >= 2")
    claims = []
    if cfg["expsum"]:
        try:
            F = expsum_from_json(Path(cfg["expsum"]).read_text())
        except OSError as exc:
            raise InputError(f"cannot read expsum: {exc}") from None
        H = None
    elif cfg["preset"] == "sine":
        F, H = ExpSum(((1 / 2j, 1j * np.pi), (-1 / 2j, -1j * np.pi))), None
    elif cfg["preset"] == "pair":
        P = expsum_pair(float(cfg["a"]), float(cfg["b"]), float(cfg["theta"]))
        F, H = P.F, P.H
    else:
        raise InputError(f"unknown preset {cfg['preset']!r}")
    zc = zero_count(F, R, segs)
    result = {"count": zc.count, "residual": zc.residual, "segments_per_edge": zc.segments_per_edge}
    claims.append(_claim("winding number is integral", zc.residual < 0.1, residual=zc.residual))
    if cfg["periodicity"] is not None:
        if H is None:
            raise InputError("periodicity needs preset 'pair'")
        x, y = parse_floats(cfg["periodicity"], 2, "periodicity")
        ok = zero_diff_periodicity_check(F, H, x, y, R, segs)
        result["periodic"] = ok
        claims.append(_claim("zero-count difference is 2i(x - y)-periodic", ok, x=x, y=y))
    return result, claims, {}


def cmd_laplace(cfg):
    if not cfg["seq"]:
        raise InputError("laplace needs --seq")
    U = SequenceSpec.parse(str(cfg["seq"]))
    if cfg["lambdas"] is not None:
        _positive(cfg, "tol", "q_max")
        lam = parse_set(cfg["lambdas"])
        result = halfline_uniqueness_verdict(U, lam, float(cfg["tol"]), int(cfg["q_max"]))
        result["diverges"] = result["divergence"]["diverges"]
    else:
        d = laplace_divergence(U)
        result = {"diverges": d.diverges, "decided": d.decided, "partial_sums": [list(p) for p in d.partial_sums]}
    return result, [], {}


def cmd_pauli(cfg):
    _positive(cfg, "tol")
    lam = [float(v) for v in parse_set(cfg["set"])]
    a, b = float(cfg["a"]), float(cfg["b"])
    # vertical lines Re z = lam come from theta = pi/2 with heights -lam
    S = signal_pair(a, -b, math.pi / 2, parse_complex(cfg["c"]), parse_complex(cfg["c_prime"]), lambdas=[-v for v in lam])
    t = np.linspace(*parse_window(cfg["t_window"], "t_window"))
    rep = pauli_distinguishability(lam, S.f, S.h, t, float(cfg["tol"]))
    on_ap = [v for v in lam if abs((v - b) / a - round((v - b) / a)) < 1e-12]
    result = {
        "matched": list(rep.matched),
        "first_mismatch": None if rep.first_mismatch is None else list(rep.first_mismatch),
        "max_gaps": {str(k): v for k, v in rep.max_gaps.items()},
        "in_progression": on_ap,
    }
    if len(set(lam)) == 3:
        r = rigidity.irrationality_ratio(*sorted(lam))
        result["ratio"] = {"value": float(r.ratio), "irrational": r.irrational,
                           "witness": None if r.witness is None else str(r.witness)}
    claims = [_claim("operators indexed by the progression do not separate f and h",
                     all(v in rep.matched for v in on_ap), matched=list(rep.matched))]
    return result, claims, {}


def cmd_report_all(cfg):
    from .acceptance import run_all

    results = run_all()
    for r in results:
        print(r.line(), file=sys.stderr)
    claims = [_claim(f"criterion {r.number}: {r.title}", r.passed, **r.measured) for r in results]
    return {"passed": sum(r.passed for r in results), "total": len(results)}, claims, {}


HANDLERS = {
    "ap-check": cmd_ap_check,
    "counterexample": cmd_counterexample,
    "verify-lines": cmd_verify_lines,
    "transforms-check": cmd_transforms_check,
    "zeros": cmd_zeros,
    "laplace": cmd_laplace,
    "pauli": cmd_pauli,
    "report-all": cmd_report_all,
}


# -- argument parsing -------------------------------------------------------


def build_parser() -> _Parser:
    p = _Parser(prog="phaselab", description="Phase-retrieval uniqueness experiments.")
    p.add_argument("--version", action="version", version=f"phaselab {__version__}")
    sub = p.add_subparsers(dest="command", metavar="{" + ",".join(COMMANDS) + "}")

    def add(name, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--config", help="JSON file with option values; flags win")
        sp.add_argument("--out", help="report path (default report.json)")
        sp.add_argument("--csv", help="write per-line gaps or grid results to this CSV path")
        sp.add_argument("--plot", action="store_true", default=None, help="write an SVG heatmap")
        sp.add_argument("--svg", help="heatmap path (default heatmap.svg)")
        return sp

    sp = add("ap-check", "arithmetic-progression containment")
    sp.add_argument("--set")
    sp.add_argument("--mode", choices=("auto", "exact", "float"))
    sp.add_argument("--tol", type=float)
    sp.add_argument("--q-max", dest="q_max", type=int)

    sp = add("counterexample", "build the exponential and coherent-state pairs")
    for k in ("a", "b", "theta"):
        sp.add_argument(f"--{k}", type=float)
    sp.add_argument("--c")
    sp.add_argument("--c-prime", dest="c_prime")
    sp.add_argument("--x-window", dest="x_window")
    sp.add_argument("--n-range", dest="n_range")
    sp.add_argument("--gap-tol", dest="gap_tol", type=float)
    sp.add_argument("--verify", action="store_true", default=None)

    sp = add("verify-lines", "uniqueness verdict for a line family")
    sp.add_argument("--set")
    sp.add_argument("--theta", type=float)
    sp.add_argument("--mode", choices=("auto", "exact", "float"))
    sp.add_argument("--tol", type=float)
    sp.add_argument("--q-max", dest="q_max", type=int)
    sp.add_argument("--x-window", dest="x_window")
    sp.add_argument("--v-fallback", dest="v_fallback", type=float)
    sp.add_argument("--verify-tol", dest="verify_tol", type=float)

    sp = add("transforms-check", "Gabor, Bargmann and Laplace relations")
    sp.add_argument("--signal", help="GaussianSum JSON file")
    sp.add_argument("--x-window", dest="x_window")
    sp.add_argument("--omega-window", dest="omega_window")
    sp.add_argument("--tol", type=float)
    sp.add_argument("--seed", type=int)

    sp = add("zeros", "argument-principle zero counting")
    sp.add_argument("--expsum", help="ExpSum JSON file")
    sp.add_argument("--preset", choices=("sine", "pair"))
    for k in ("a", "b", "theta"):
        sp.add_argument(f"--{k}", type=float)
    sp.add_argument("--rect", help="x0,x1,y0,y1")
    sp.add_argument("--segments", type=int)
    sp.add_argument("--periodicity", help="x,y for the periodicity check (preset pair)")

    sp = add("laplace", "divergence test and half-line uniqueness")
    sp.add_argument("--seq", help="e.g. power:a=1,p=2")
    sp.add_argument("--lambdas")
    sp.add_argument("--tol", type=float)
    sp.add_argument("--q-max", dest="q_max", type=int)

    sp = add("pauli", "time-frequency shift operator families")
    sp.add_argument("--set")
    for k in ("a", "b"):
        sp.add_argument(f"--{k}", type=float)
    sp.add_argument("--c")
    sp.add_argument("--c-prime", dest="c_prime")
    sp.add_argument("--t-window", dest="t_window")
    sp.add_argument("--tol", type=float)

    add("report-all", "run the acceptance suite")
    return p


def resolve_config(args: argparse.Namespace) -> dict:
    cmd = args.command
    cfg = {**COMMON_DEFAULTS, **DEFAULTS[cmd]}
    if args.config:
        try:
            loaded = json.loads(Path(args.config).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise InputError(f"cannot load config: {exc}") from None
        if not isinstance(loaded, dict):
            raise InputError("config must be a JSON object")
        block = loaded.get(cmd, loaded)
        unknown = set(block) - set(cfg) - set(COMMANDS)
        if unknown:
            raise InputError(f"unknown config keys: {sorted(unknown)}")
        cfg.update({k: v for k, v in block.items() if k in cfg})
    for k, v in vars(args).items():
        if k in cfg and v is not None:
            cfg[k] = v
    return cfg


def run(argv) -> int:
    argv = list(argv)
    parser = build_parser()
    if not argv or (argv[0] not in COMMANDS and argv[0] not in ("-h", "--help", "--version")):
        parser.print_usage(sys.stderr)
        if argv:
            print(f"phaselab: unknown subcommand {argv[0]!r}", file=sys.stderr)
        return EXIT_USAGE
    try:
        args = parser.parse_args(argv)
    except _ArgumentError as exc:
        print(exc, file=sys.stderr)
        return EXIT_INPUT
    try:
        cfg = resolve_config(args)
        result, claims, extras = HANDLERS[args.command](cfg)
    except PhaselabError as exc:
        print(f"phaselab: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ValueError, TypeError) as exc:
        print(f"phaselab: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT

    report = {
        "tool": "phaselab",
        "version": __version__,
        "command": args.command,
        "config": {k: v for k, v in cfg.items()},
        "result": result,
        "claims": claims,
        "passed": all(c["passed"] for c in claims),
    }
    try:
        Path(cfg["out"]).write_text(json.dumps(report, indent=2, sort_keys=True, default=_json_default))
        if cfg["csv"] and "csv" in extras:
            write_csv(cfg["csv"], *extras["csv"])
        if cfg["plot"] and "plot" in extras:
            f, lines, profile = extras["plot"]
            write_heatmap(cfg["svg"], f, lines, profile)
    except OSError as exc:
        print(f"phaselab: cannot write output: {exc}", file=sys.stderr)
        return EXIT_INPUT
    print(json.dumps(result, indent=2, sort_keys=True, default=_json_default))
    return EXIT_OK if report["passed"] else EXIT_INVARIANT


def _json_default(v):
    if isinstance(v, complex):
        return [v.real, v.imag]
    if isinstance(v, (np.floating, np.integer)):
        return v.item()
    if isinstance(v, np.bool_):
        return bool(v)
    return str(v)


def main(argv=None) -> int:
    return run(sys.argv[1:] if argv is None else argv)
