"""Command-line front end: ``catphase <command> [options]``.

Every command writes one table (CSV with a header row, or a JSON document)
to ``--output`` (stdout by default). Exit codes: 0 success, 1 usage error,
2 quadrature did not converge, 3 invalid state or weights.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from dataclasses import asdict, dataclass, field

import numpy as np

from . import checks, closedform, quadrature, states
from .errors import BadWeights, MixedModuli, NonConverged, NoRoot, ZeroNorm

COMMANDS = ("profile", "entropy", "gamma-scan", "kerr", "equientropic", "validate")
STATE_KINDS = ("coherent", "cat", "even", "odd", "yurke-stoler", "equientropic", "kerr")
PRESET_GAMMA = {"even": 0.0, "odd": math.pi, "yurke-stoler": math.pi / 2}

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC, EXIT_STATE = 0, 1, 2, 3

FORMULAS = {
    "wehrl_pd": "S_theta = -int Q ln Q |alpha| d|alpha|",
    "husimi_pd": "P_theta = int Q |alpha| d|alpha|",
    "wehrl_entropy": "S_w = -int Q ln Q d^2 alpha = int S_theta d theta",
    "husimi": "Q(alpha) = |<alpha|psi>|^2 / pi",
    "cat": "|alpha0, gamma> = N_gamma (|alpha0> + exp(i gamma) |-alpha0>)",
    "kitten_pd_approx": "S_theta ~ sum_k w_k S^cs_theta(alpha_k) - w_k ln w_k P^cs_theta(alpha_k)",
    "entropy_approx": "S_w ~ 1 + ln pi - sum_k w_k ln w_k",
    "equientropic": "weights (1-(N-1)x_N, x_N, ...) with 2(1-(N-1)x)^(1-(N-1)x) x^((N-1)x) = 1",
    "kerr": "c_k = (1/N) sum_{n=1}^N exp{i n [(M/N) pi (n-1) - phi_k]}, phi_k = (2k+N-3) pi / N",
    "n_max": "N_max = Int(pi |alpha0| / sqrt 2)",
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass
class RunConfig:
    command: str
    state: str = "cat"
    alpha0: complex = complex(math.sqrt(12))
    gamma: float = 0.0
    N: int = 2
    M: int = 1
    n_values: list[int] = field(default_factory=lambda: [2, 3, 4])
    gamma_points: int = 64
    theta_points: int = 512
    tol: float = quadrature.DEFAULT_TOL
    output: str = "-"
    format: str = "csv"

    def to_json(self):
        d = asdict(self)
        d["alpha0"] = [self.alpha0.real, self.alpha0.imag]
        return d


def _complex_pair(text: str) -> complex:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected 're,im', got {text!r}")
    try:
        return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 're,im', got {text!r}") from None


def _int_list(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False, allow_abbrev=False)
    common.add_argument("--state", choices=STATE_KINDS, default=None)
    common.add_argument("--alpha0", type=_complex_pair, help="coherent amplitude as 're,im'")
    common.add_argument("--alpha0-mod", type=float)
    common.add_argument("--alpha0-arg", type=float, default=0.0)
    common.add_argument("--gamma", type=float, default=0.0)
    common.add_argument("--N", type=int, default=None)
    common.add_argument("--M", type=int, default=1)
    common.add_argument("--tol", type=float, default=quadrature.DEFAULT_TOL)
    common.add_argument("--theta-points", type=int, default=512)
    common.add_argument("-o", "--output", default="-")
    common.add_argument("--format", choices=("csv", "json"), default="csv")

    parser = _Parser(
        prog="catphase",
        allow_abbrev=False,
        description="Wehrl entropy and phase distributions of cat and kitten states.",
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common], allow_abbrev=False)
        if name == "gamma-scan":
            p.add_argument("--gamma-points", type=int, default=64)
        if name == "equientropic":
            p.add_argument("--N-values", type=_int_list, default=[2, 3, 4])
    return parser


def parse_config(argv) -> RunConfig:
    args = build_parser().parse_args(list(argv))
    if not 1e-12 <= args.tol <= 1e-3:
        raise UsageError(f"--tol {args.tol!r} outside [1e-12, 1e-3]")
    if args.theta_points < 8 or args.theta_points % 2:
        raise UsageError("--theta-points must be even and at least 8")
    if args.alpha0 is not None and args.alpha0_mod is not None:
        raise UsageError("--alpha0 and --alpha0-mod are mutually exclusive")
    if args.alpha0_mod is not None:
        if args.alpha0_mod < 0:
            raise UsageError("--alpha0-mod must be non-negative")
        alpha0 = args.alpha0_mod * complex(math.cos(args.alpha0_arg), math.sin(args.alpha0_arg))
    elif args.alpha0 is not None:
        alpha0 = args.alpha0
    else:
        alpha0 = complex(math.sqrt(12))

    state = args.state
    if state is None:
        state = "kerr" if args.command == "kerr" else "cat"
    if args.command == "kerr" and state != "kerr":
        raise UsageError("--state must be 'kerr' for the kerr command")
    n = args.N if args.N is not None else (3 if state == "kerr" else 2)
    if n < 1 or args.M < 1:
        raise UsageError("--N and --M must be positive")
    if state == "kerr" and math.gcd(args.M, n) != 1:
        raise UsageError(f"--M {args.M} and --N {n} must be coprime")
    if state == "equientropic" and n < 2:
        raise UsageError("--N must be at least 2 for equientropic states")

    cfg = RunConfig(
        command=args.command,
        state=state,
        alpha0=alpha0,
        gamma=PRESET_GAMMA.get(state, args.gamma),
        N=n,
        M=args.M,
        tol=args.tol,
        theta_points=args.theta_points,
        output=args.output,
        format=args.format,
    )
    if args.command == "gamma-scan":
        if args.gamma_points < 1:
            raise UsageError("--gamma-points must be positive")
        cfg.gamma_points = args.gamma_points
    if args.command == "equientropic":
        if not args.N_values or min(args.N_values) < 2:
            raise UsageError("--N-values needs integers >= 2")
        cfg.n_values = args.N_values
    return cfg


def build_state(cfg: RunConfig) -> states.CoherentSuperposition:
    if cfg.state == "coherent":
        return states.coherent(cfg.alpha0)
    if cfg.state == "equientropic":
        return states.make_equientropic(cfg.alpha0, cfg.N)
    if cfg.state == "kerr":
        return states.make_kerr_state(states.KerrSchedule(cfg.M, cfg.N, cfg.alpha0))
    return states.make_cat(states.CatParameters(cfg.alpha0, cfg.gamma))


def _entropy_approx(state) -> float:
    w = state.weights
    return closedform.approx_wehrl_entropy(w / w.sum())


def _profile_table(state, cfg):
    quad = quadrature.default_quadrature(state, cfg.tol)
    report = quadrature.wehrl_entropy(state, quad, cfg.tol)
    s, p = quadrature.phase_profiles(state, quad.with_theta_count(cfg.theta_points))
    columns = ["theta", "S_theta", "P_theta"]
    cols = [s.thetas, s.values, p.values]
    try:
        cols.append(closedform.approx_kitten_wehrl_pd(state, s.thetas))
        columns.append("S_theta_approx")
    except MixedModuli:
        pass
    rows = [list(r) for r in zip(*cols)]
    meta = {"wehrl_entropy": report.wehrl_entropy, "husimi_integral": p.integral}
    return columns, rows, report.error_estimate, meta


def _cmd_profile(cfg):
    return _profile_table(build_state(cfg), cfg)


def _cmd_kerr(cfg):
    state = build_state(cfg)
    columns, rows, err, meta = _profile_table(state, cfg)
    nmax = states.n_max(cfg.alpha0)
    deformed = int(cfg.N >= nmax)
    columns += ["n_max", "deformed"]
    for r in rows:
        r += [nmax, deformed]
    meta.update(n_max=nmax, regime="deformed" if deformed else "well-separated")
    if deformed:
        print(f"catphase: note: N={cfg.N} >= n_max={nmax}: deformed regime", file=sys.stderr)
    return columns, rows, err, meta


def _cmd_entropy(cfg):
    state = build_state(cfg)
    report = quadrature.wehrl_entropy(state, tol=cfg.tol)
    row = [report.wehrl_entropy, report.error_estimate, _entropy_approx(state), states.n_max(cfg.alpha0)]
    return ["S_w", "error_estimate", "S_w_approx", "n_max"], [row], report.error_estimate, {}


def _cmd_gamma_scan(cfg):
    rows = []
    worst = 0.0
    for k in range(cfg.gamma_points):
        g = 2 * math.pi * k / cfg.gamma_points
        report = quadrature.wehrl_entropy(states.make_cat(states.CatParameters(cfg.alpha0, g)), tol=cfg.tol)
        rows.append([g, report.wehrl_entropy, report.error_estimate])
        worst = max(worst, report.error_estimate)
    return ["gamma", "S_w", "error_estimate"], rows, worst, {}


def _cmd_equientropic(cfg):
    rows = []
    worst = 0.0
    ref = 1 + math.log(2 * math.pi)
    for n in cfg.n_values:
        x = states.solve_equientropic_weight(n)
        report = quadrature.wehrl_entropy(states.make_equientropic(cfg.alpha0, n), tol=cfg.tol)
        rows.append([n, x, report.wehrl_entropy, ref - report.wehrl_entropy, report.error_estimate])
        worst = max(worst, report.error_estimate)
    return ["N", "x_N", "S_w", "epsilon", "error_estimate"], rows, worst, {}


def _cmd_validate(cfg):
    results = checks.run_checks()
    for r in results:
        print(f"{'PASS' if r.passed else 'FAIL'} {r.name} value={r.value!r} threshold={r.threshold!r}", file=sys.stderr)
    rows = [[r.name, "pass" if r.passed else "fail", r.value, r.threshold] for r in results]
    meta = {"all_passed": all(r.passed for r in results)}
    return ["check", "status", "value", "threshold"], rows, 0.0, meta


HANDLERS = {
    "profile": _cmd_profile,
    "kerr": _cmd_kerr,
    "entropy": _cmd_entropy,
    "gamma-scan": _cmd_gamma_scan,
    "equientropic": _cmd_equientropic,
    "validate": _cmd_validate,
}


def _cell(v):
    if isinstance(v, (bool, np.bool_)):
        return str(int(v))
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    return str(v)


def _plain(v):
    if isinstance(v, np.integer):
        return int(v)
    if isinstance(v, np.floating):
        return float(v)
    return v


def render(cfg: RunConfig, columns, rows, error_estimate, meta) -> str:
    if cfg.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        for r in rows:
            writer.writerow([_cell(v) for v in r])
        return buf.getvalue()
    doc = {
        "config": cfg.to_json(),
        "results": {
            "columns": columns,
            "rows": [[_plain(v) for v in r] for r in rows],
            **{k: _plain(v) for k, v in meta.items()},
        },
        "error_estimate": float(error_estimate),
        "provenance": {"paper_eq_refs": FORMULAS},
    }
    return json.dumps(doc, indent=2) + "\n"


def _emit(cfg, text):
    if cfg.output == "-":
        sys.stdout.write(text)
    else:
        with open(cfg.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def run(cfg: RunConfig) -> int:
    try:
        columns, rows, err, meta = HANDLERS[cfg.command](cfg)
    except NonConverged as exc:
        print(f"catphase: error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (ZeroNorm, BadWeights, MixedModuli, NoRoot, ValueError) as exc:
        print(f"catphase: error: {exc}", file=sys.stderr)
        return EXIT_STATE
    _emit(cfg, render(cfg, columns, rows, err, meta))
    if cfg.command == "validate" and not meta["all_passed"]:
        return EXIT_NUMERIC
    return EXIT_OK


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        threads = os.environ.get("CATPHASE_THREADS")
        if threads is not None and (not threads.isdigit() or int(threads) < 1):
            raise UsageError("CATPHASE_THREADS must be a positive integer")
        cfg = parse_config(argv)
    except UsageError as exc:
        print(f"catphase: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
