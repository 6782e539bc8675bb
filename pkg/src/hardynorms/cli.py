"""Command-line interface: norms, duals, sweep tables and verification suites.

Exit codes: 0 success, 2 parse error, 3 domain error, 4 verification failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import re
import sys
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import dual_poly, exact_poly, harmonic_schwarz as hs
from .errors import HardyError
from .matrix_hardy import (RealMatrix, diag_hp_norm, matrix_dual_norm, matrix_h4_closed,
                           matrix_hp_norm)
from .numerics import QuadratureSpec
from .poly_hardy import hp_norm, pair_norms, parse_exponent

EXIT_OK, EXIT_PARSE, EXIT_DOMAIN, EXIT_VERIFY = 0, 2, 3, 4

TRIANGLE_PS = (0.0, 0.25, 0.5, 0.75)
TRIANGLE_TRIALS = 10_000
MATRIX3_SAMPLES = 200
COROLLARY_SAMPLES = 100


class ParseError(Exception):
    pass


# ---------------------------------------------------------------- formatting

def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, np.ndarray):
        return _jsonable(x.tolist())
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (complex, np.complexfloating)):
        return {"re": _jsonable(float(x.real)), "im": _jsonable(float(x.imag))}
    if isinstance(x, (float, np.floating)):
        x = float(x)
        if not math.isfinite(x):
            return "inf" if x > 0 else "-inf" if x < 0 else "nan"
        return _Float(x)
    return x


class _Float(float):
    pass


_MARK = "\u0001"


def dumps(obj) -> str:
    """JSON with every float printed to 17 significant digits, so output is byte-stable."""
    def mark(x):
        if isinstance(x, _Float):
            return f"{_MARK}{float(x):.17g}{_MARK}"
        if isinstance(x, dict):
            return {k: mark(v) for k, v in x.items()}
        if isinstance(x, list):
            return [mark(v) for v in x]
        return x
    text = json.dumps(mark(_jsonable(obj)), indent=2)
    return re.sub(r'"\\u0001([^"\\]*)\\u0001"', r"\1", text)


@dataclass
class OutputRecord:
    command: str
    inputs: dict
    values: dict
    witness: object = None
    diagnostics: dict = field(default_factory=dict)

    def to_json(self) -> str:
        return dumps(asdict(self))


def parse_complex(text: str) -> complex:
    """Parse '1', '-2.5', '3i', '-i', '1+2i', '1e-3-4.5i' (a trailing j also works)."""
    s = text.strip().replace(" ", "").replace("i", "j")
    if not s or "n" in s.lower():
        raise ParseError(f"cannot parse complex literal {text!r}")
    try:
        return complex(s)
    except ValueError:
        raise ParseError(f"cannot parse complex literal {text!r}") from None


def parse_coeffs(text: str) -> list[complex]:
    parts = [p for p in text.split(",")]
    if not parts or any(not p.strip() for p in parts):
        raise ParseError(f"cannot parse coefficient list {text!r}")
    return [parse_complex(p) for p in parts]


def load_matrix(path: str) -> RealMatrix:
    try:
        return RealMatrix.load(path)
    except (OSError, json.JSONDecodeError, KeyError, TypeError) as exc:
        raise ParseError(f"cannot read matrix file {path!r}: {exc}") from None


def _emit(record: OutputRecord, plain: bool, out) -> None:
    if plain:
        vals = []
        for v in record.values.values():
            if isinstance(v, complex):
                vals.append(f"{v.real:.17g}{v.imag:+.17g}i")
            elif isinstance(v, (bool, np.bool_)):
                vals.append(str(bool(v)).lower())
            elif isinstance(v, (float, int, np.floating)):
                vals.append(f"{float(v):.17g}")
            else:
                vals.append(str(v))
        print(" ".join(vals), file=out)
    else:
        print(record.to_json(), file=out)


def _data(args):
    if args.space == "poly":
        if args.coeffs is None:
            raise ParseError("--space poly needs --coeffs")
        v = parse_coeffs(args.coeffs)
        return v, {"space": "poly", "coeffs": v}
    if args.file is None:
        raise ParseError("--space matrix needs --file")
    A = load_matrix(args.file)
    return A, {"space": "matrix", "file": args.file, "n": A.n}


# ------------------------------------------------------------------ commands

def cmd_norm(args, out=None) -> int:
    out = out or sys.stdout
    p = parse_exponent(args.p)
    data, inputs = _data(args)
    inputs["p"] = p
    if args.space == "poly":
        value = hp_norm(data, p, QuadratureSpec(rel_tol=args.tol))
    else:
        value = matrix_hp_norm(data, p)
    _emit(OutputRecord("norm", inputs, {"value": value}), args.plain, out)
    return EXIT_OK


def cmd_dual(args, out=None) -> int:
    out = out or sys.stdout
    p = parse_exponent(args.p)
    data, inputs = _data(args)
    inputs["p"] = p
    if args.space == "poly":
        res = dual_poly.dual_norm_c2(data, p)
        rec = OutputRecord("dual", inputs, {"value": res.value},
                           witness={"t": res.witness_t, "lam": res.lam})
    else:
        inputs.update(method=args.method, samples=args.samples, seed=args.seed)
        value = matrix_dual_norm(data, p, args.method, samples=args.samples, seed=args.seed)
        rec = OutputRecord("dual", inputs, {"value": value})
    _emit(rec, args.plain, out)
    return EXIT_OK


SWEEP_COLUMNS = ("lambda", "G", "F", "G_star", "F_star", "ratio_14", "bpr_slack",
                 "twosides_slack_left", "twosides_slack_right")


def sweep_table(grid: int) -> tuple[dict[str, np.ndarray], list[str]]:
    """Columns of the lambda sweep and a list of violated bounds (empty when all hold)."""
    if grid < 2:
        raise ParseError("--grid must be at least 2")
    ratio = dual_poly.ratio_sweep(grid)
    lam = ratio.lam
    bpr = dual_poly.check_bpr(lam)
    two = dual_poly.check_two_sides(lam)
    cols = {"lambda": lam, "G": bpr.G, "F": ratio.F, "G_star": ratio.gstar,
            "F_star": two.Fstar, "ratio_14": ratio.ratio, "bpr_slack": bpr.slack,
            "twosides_slack_left": two.left_gap, "twosides_slack_right": two.right_gap}
    problems = []
    checks = [
        ("ratio_14 < 1 - 1e-8", ratio.ratio < 1 - 1e-8),
        (f"ratio_14 > {dual_poly.RATIO_BOUND}", ratio.ratio > dual_poly.RATIO_BOUND),
        ("bpr_slack < -1e-10", bpr.slack < -1e-10),
        ("twosides_slack_left < -1e-9", two.left_gap < -1e-9),
        ("twosides_slack_right < -1e-9", two.right_gap < -1e-9),
        ("F_star < G - 1e-8", two.Fstar < bpr.G - 1e-8),
        ("F_star > 1.01 G", two.Fstar > 1.01 * bpr.G),
    ]
    for name, bad in checks:
        for x in lam[bad]:
            problems.append(f"{name} at lambda={x:.17g}")
    return cols, problems


def cmd_sweep(args, out=None) -> int:
    out = out or sys.stdout
    cols, problems = sweep_table(args.grid)
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(SWEEP_COLUMNS)
        for i in range(len(cols["lambda"])):
            w.writerow([f"{cols[c][i]:.17g}" for c in SWEEP_COLUMNS])
        text = buf.getvalue()
    else:
        text = dumps({"columns": list(SWEEP_COLUMNS),
                      "rows": [[cols[c][i] for c in SWEEP_COLUMNS]
                               for i in range(len(cols["lambda"]))],
                      "violations": problems}) + "\n"
    if args.output:
        Path(args.output).write_text(text, newline="\n")
    else:
        out.write(text)
    for msg in problems:
        print(f"violation: {msg}", file=sys.stderr)
    return EXIT_VERIFY if problems else EXIT_OK


def cmd_schwarz(args, out=None) -> int:
    out = out or sys.stdout
    if args.mode == "extremal":
        if args.gamma is None or args.delta is None:
            raise ParseError("--mode extremal needs --gamma and --delta")
        d = hs.DualDirection(parse_complex(args.gamma), parse_complex(args.delta))
        pair = hs.disk_extremal_derivative(d, QuadratureSpec(rel_tol=args.tol))
        admissible, norm = hs.schwarz_admissible(pair)
        rec = OutputRecord("schwarz", {"mode": "extremal", "gamma": d.gamma, "delta": d.delta},
                           {"alpha": pair.alpha, "beta": pair.beta, "dual_norm": norm},
                           diagnostics={"duality_residual": hs.duality_residual(d, pair),
                                        "h1_norm": hp_norm([d.gamma, d.delta], 1)})
    else:
        if args.alpha is None or args.beta is None:
            raise ParseError("--mode admissible needs --alpha and --beta")
        pair = hs.SchwarzPair(parse_complex(args.alpha), parse_complex(args.beta))
        rep = hs.check_corollaries(pair)
        rec = OutputRecord("schwarz", {"mode": "admissible", "alpha": pair.alpha,
                                       "beta": pair.beta},
                           {"admissible": rep.admissible, "norm": rep.dual_norm},
                           diagnostics={"sch1_slack": rep.sch1_slack,
                                        "sch2_slack": rep.sch2_slack,
                                        "h4_slack": rep.h4_slack})
    _emit(rec, args.plain, out)
    return EXIT_OK


# ------------------------------------------------------------------- verify

def _check(name, passed, **detail) -> dict:
    return {"name": name, "passed": passed, **detail}


def suite_monster() -> list[dict]:
    rep = exact_poly.verify_monster()
    points = [Fraction(k, 20) for k in range(1, 21)]
    values = [exact_poly.psi_over_lam8(x) for x in points]
    return [
        _check("monster_coefficients", rep.ok, matched=rep.matched,
               expected=len(exact_poly.MONSTER_COEFFS),
               mismatches=[list(m) for m in rep.mismatches], out_of_range=rep.out_of_range),
        _check("monster_positive", all(v > 0 for v in values), points=len(points),
               min_value=float(min(values))),
    ]


def suite_triangle(seed: int, trials: int = TRIANGLE_TRIALS) -> list[dict]:
    rng = np.random.default_rng(seed)
    checks = []
    for p in TRIANGLE_PS:
        u = rng.standard_normal((trials, 2)) + 1j * rng.standard_normal((trials, 2))
        v = rng.standard_normal((trials, 2)) + 1j * rng.standard_normal((trials, 2))
        lhs = pair_norms(*(u + v).T, p)
        rhs = pair_norms(*u.T, p) + pair_norms(*v.T, p)
        bad = int(np.count_nonzero(lhs > rhs + 1e-9))
        checks.append(_check(f"triangle_c2_p{p:g}", bad == 0, trials=trials, violations=bad,
                             min_slack=float((rhs - lhs).min())))
    for p in TRIANGLE_PS:
        U = rng.standard_normal((trials, 2, 2))
        V = rng.standard_normal((trials, 2, 2))
        norm = lambda M: diag_hp_norm(np.linalg.svd(M, compute_uv=False), p)  # noqa: E731
        lhs, rhs = norm(U + V), norm(U) + norm(V)
        bad = int(np.count_nonzero(lhs > rhs + 1e-9))
        checks.append(_check(f"triangle_2x2_p{p:g}", bad == 0, trials=trials, violations=bad,
                             min_slack=float((rhs - lhs).min())))
    return checks


def matrix3_ratios(seed: int, samples: int = MATRIX3_SAMPLES) -> np.ndarray:
    rng = np.random.default_rng(seed)
    out = np.empty(samples)
    for i in range(samples):
        A = rng.standard_normal((3, 3))
        out[i] = matrix_dual_norm(A, 1) / matrix_h4_closed(A)
    return out


def matrix3_triangle(seed: int, p: float = 0.5, trials: int = 2000) -> dict:
    rng = np.random.default_rng(seed)
    U, V = rng.standard_normal((trials, 3, 3)), rng.standard_normal((trials, 3, 3))
    norm = lambda M: diag_hp_norm(np.linalg.svd(M, compute_uv=False), p)  # noqa: E731
    slack = norm(U) + norm(V) - norm(U + V)
    return {"trials": trials, "violations": int(np.count_nonzero(slack < -1e-9)),
            "min_slack": float(slack.min())}


def suite_matrix3(seed: int, samples: int = MATRIX3_SAMPLES) -> list[dict]:
    r = matrix3_ratios(seed, samples)
    # exploratory: no proven bound in either case, so no verdict
    return [_check("matrix3_ratio_range", None, samples=samples, min=float(r.min()),
                   max=float(r.max()), mean=float(r.mean())),
            _check("matrix3_triangle_p0.5", None, **matrix3_triangle(seed))]


def random_directions(rng, count: int, gap: float = 0.05) -> list[hs.DualDirection]:
    dirs = []
    while len(dirs) < count:
        g, d = rng.standard_normal(2) @ [1, 1j], rng.standard_normal(2) @ [1, 1j]
        if abs(abs(g) - abs(d)) > gap:
            dirs.append(hs.DualDirection(g, d))
    return dirs


def suite_corollaries(seed: int, samples: int = COROLLARY_SAMPLES) -> list[dict]:
    rng = np.random.default_rng(seed)
    residual, norm_dev, min_slack = 0.0, 0.0, math.inf
    for d in random_directions(rng, samples):
        pair = hs.disk_extremal_derivative(d)
        residual = max(residual, hs.duality_residual(d, pair))
        rep = hs.check_corollaries(pair)
        norm_dev = max(norm_dev, abs(rep.dual_norm - 1.0))
        min_slack = min(min_slack, rep.min_slack)
    edge = hs.check_corollaries(hs.SchwarzPair(2 / math.pi, 2 / math.pi))
    outside = hs.check_corollaries(hs.SchwarzPair(0.9, 0.5))
    return [
        _check("duality_equality", residual <= 1e-7, samples=samples, max_residual=residual),
        _check("extremal_on_unit_sphere", norm_dev <= 1e-6, max_deviation=norm_dev),
        _check("corollary_slacks", min_slack >= -1e-9, min_slack=min_slack),
        _check("boundary_pair_2_over_pi", edge.admissible and abs(edge.sch1_slack) <= 1e-12,
               norm=edge.dual_norm, sch1_slack=edge.sch1_slack, h4_slack=edge.h4_slack),
        _check("sch2_violator_inadmissible", not outside.admissible, norm=outside.dual_norm),
    ]


SUITES = ("monster", "triangle", "matrix3", "corollaries")


def run_suite(name: str, seed: int) -> list[dict]:
    if name == "monster":
        return suite_monster()
    if name == "triangle":
        return suite_triangle(seed)
    if name == "matrix3":
        return suite_matrix3(seed)
    return suite_corollaries(seed)


def cmd_verify(args, out=None) -> int:
    out = out or sys.stdout
    names = SUITES if args.suite == "all" else (args.suite,)
    checks = [c for name in names for c in run_suite(name, args.seed)]
    failed = [c["name"] for c in checks if c["passed"] is False]
    if args.plain:
        for c in checks:
            verdict = {True: "PASS", False: "FAIL", None: "REPORT"}[c["passed"]]
            extra = "".join(f" {k}={v:.6g}" for k, v in c.items()
                            if isinstance(v, (int, float)) and not isinstance(v, bool)
                            and c["passed"] is None)
            print(f"{verdict} {c['name']}{extra}", file=out)
    else:
        print(dumps({"command": "verify", "suite": args.suite, "seed": args.seed,
                     "checks": checks, "failed": failed}), file=out)
    return EXIT_VERIFY if failed else EXIT_OK


# ------------------------------------------------------------------- parser

EPILOG = """\
complex literals: 1, -2.5, 3i, -i, 1+2i, 1e-3-4.5i (commas separate coefficients)
examples:
  hardynorms norm --space poly --p 1 --coeffs "1,1"
  hardynorms dual --space matrix --p 1 --file p1.json
  hardynorms sweep --grid 101 --output sweep.csv
  hardynorms schwarz --mode extremal --gamma 1 --delta 0.5
  hardynorms verify --suite triangle --seed 7
"""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_PARSE)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hardynorms", description="Hardy norms, dual norms and the "
                     "harmonic Schwarz lemma on C^2 and real matrices.", epilog=EPILOG,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def data_args(sp):
        sp.add_argument("--space", choices=("poly", "matrix"), required=True)
        sp.add_argument("--p", required=True, help="exponent >= 0 or 'inf'")
        sp.add_argument("--coeffs", help='coefficient list, e.g. "1,0.5-2i"')
        sp.add_argument("--file", help='matrix JSON {"n": 3, "rows": [[...], ...]}')
        sp.add_argument("--tol", type=float, default=1e-13, help="quadrature relative tolerance")
        sp.add_argument("--plain", action="store_true", help="print bare numbers")

    sp = sub.add_parser("norm", help="H^p norm")
    data_args(sp)
    sp.set_defaults(func=cmd_norm)

    sp = sub.add_parser("dual", help="dual norm H^p_*")
    data_args(sp)
    sp.add_argument("--method", choices=("reduced", "brute"), default="reduced")
    sp.add_argument("--samples", type=int, default=100_000)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_dual)

    sp = sub.add_parser("sweep", help="lambda sweep table for the C^2 inequalities")
    sp.add_argument("--grid", type=int, default=1001)
    sp.add_argument("--output", help="output path (stdout if omitted)")
    sp.add_argument("--format", choices=("csv", "json"), default="csv")
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("schwarz", help="extremal harmonic maps and admissible pairs")
    sp.add_argument("--mode", choices=("extremal", "admissible"), required=True)
    sp.add_argument("--gamma")
    sp.add_argument("--delta")
    sp.add_argument("--alpha")
    sp.add_argument("--beta")
    sp.add_argument("--tol", type=float, default=1e-13)
    sp.add_argument("--plain", action="store_true")
    sp.set_defaults(func=cmd_schwarz)

    sp = sub.add_parser("verify", help="verification suites")
    sp.add_argument("--suite", choices=("all",) + SUITES, default="all")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--plain", action="store_true")
    sp.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"hardynorms: error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except HardyError as exc:
        print(f"hardynorms: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
