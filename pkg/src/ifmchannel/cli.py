"""
Command-line front end.

    ifmchannel ploss-sweep  --n-min 2 --n-max 200 --a 0,0.5,0.8 --q 1 --format csv
    ifmchannel boundary     --n-min 2 --n-max 50
    ifmchannel asymptotics  --a 0.5 --q 1 --n-max 4096
    ifmchannel optimize     --n 10 --a 0.3 --q 0.5
    ifmchannel discriminate --n 5 --a 0 --q 0.5 --state 1,0,0,0
    ifmchannel verify       --seed 0

Exit codes: 0 success, 2 invalid arguments, 3 verification failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import warnings
from dataclasses import asdict, dataclass, fields

import numpy as np

from . import asymptotics, optimal
from .channels import IfmParams
from .errors import DegenerateTransparencyError, InvalidSpecError
from .metrics import discriminate
from .transfer import coeffs
from .verify import report, run_verify

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_VERIFY_FAILED = 3

BRUTE_FORCE_GRID = 64


@dataclass(frozen=True)
class SweepSpec:
    n_min: int
    n_max: int
    n_step: int = 1
    a_list: tuple[float, ...] = (0.0,)
    q: float = 1.0
    output_format: str = "csv"
    output_path: str | None = None

    def validate(self) -> "SweepSpec":
        if self.n_min < 1:
            raise InvalidSpecError(f"n_min must be >= 1, got {self.n_min}")
        if self.n_max < self.n_min:
            raise InvalidSpecError(f"n_max ({self.n_max}) must be >= n_min ({self.n_min})")
        if self.n_step < 1:
            raise InvalidSpecError(f"n_step must be >= 1, got {self.n_step}")
        if not self.a_list:
            raise InvalidSpecError("a_list must not be empty")
        for a in self.a_list:
            if not (0.0 <= a < 1.0):
                raise InvalidSpecError(f"a_list entry {a!r} outside [0, 1)")
        if not (0.0 <= self.q <= 1.0):
            raise InvalidSpecError(f"q = {self.q!r} outside [0, 1]")
        if self.output_format not in ("csv", "json"):
            raise InvalidSpecError(f"output_format must be csv or json, got {self.output_format!r}")
        return self


@dataclass(frozen=True)
class ReportRecord:
    n: int
    a: float
    q: float
    ploss_min_over_q: float
    ploss_plus_over_q: float | None
    k1: float
    regime: str
    theta1: float
    theta2: float | None
    p_error_min: float


def report_record(n: int, a: float, q: float) -> ReportRecord:
    unit = IfmParams(n, a, 1.0)
    tc = coeffs(unit)
    has_zero = tc.k1 <= 1.0 + optimal.K1_SLACK
    if has_zero or q in (0.0, 1.0):
        p_err = 0.0
    else:
        p_err = optimal.brute_force_min(IfmParams(n, a, q), "ERROR", grid=BRUTE_FORCE_GRID).value
    return ReportRecord(
        n=n,
        a=a,
        q=q,
        ploss_min_over_q=optimal.min_ploss(unit).value,
        ploss_plus_over_q=asymptotics.ploss_plus_exact(unit) if has_zero else None,
        k1=tc.k1,
        regime=tc.regime.value,
        theta1=asymptotics.theta1(unit),
        theta2=asymptotics.theta2(unit) if has_zero else None,
        p_error_min=p_err,
    )


def cmd_ploss_sweep(spec: SweepSpec) -> list[ReportRecord]:
    """One record per (a, N) pair, a-major, in ascending N."""
    spec.validate()
    return [
        report_record(n, a, spec.q)
        for a in spec.a_list
        for n in range(spec.n_min, spec.n_max + 1, spec.n_step)
    ]


def boundary_a_star(n: int) -> float:
    """Largest a with a zero-error input: solves (1+a)/(1-a) sin(pi/2N) = 1."""
    s = math.sin(math.pi / (2 * n))
    return (1.0 - s) / (1.0 + s)


def cmd_boundary(n_min: int, n_max: int) -> list[dict]:
    if n_min < 2:
        raise InvalidSpecError(f"n_min must be >= 2, got {n_min}")
    if n_max < n_min:
        raise InvalidSpecError(f"n_max ({n_max}) must be >= n_min ({n_min})")
    rows = []
    for n in range(n_min, n_max + 1):
        a_star = boundary_a_star(n)
        probes = (0.0, 0.5 * a_star, a_star * (1.0 - 1e-9))
        certified = all(optimal.zero_error_states(IfmParams(n, a)) is not None for a in probes)
        rows.append({"n": n, "a_star": a_star, "certified": certified})
    return rows


def cmd_asymptotics(a: float, q: float, n_max: int, n_min: int = 2) -> list[dict]:
    """Large-N table on N = n_min, 2 n_min, 4 n_min, ... <= n_max; theta1 is reported negated."""
    if not 0.0 <= a < 1.0:
        raise DegenerateTransparencyError(f"a must lie in [0, 1), got {a!r}")
    if not 0.0 <= q <= 1.0:
        raise InvalidSpecError(f"q = {q!r} outside [0, 1]")
    rows = []
    for n in asymptotics.geometric_ladder(n_min, n_max):
        unit = IfmParams(n, a, 1.0)
        has_zero = coeffs(unit).k1 <= 1.0 + optimal.K1_SLACK
        rows.append(
            {
                "n": n,
                "a": a,
                "q": q,
                "ploss_min_over_q": optimal.min_ploss(unit).value,
                "ploss_plus_over_q": asymptotics.ploss_plus_exact(unit) if has_zero else None,
                "leading_over_q": asymptotics.leading_term(unit),
                "theta1": -asymptotics.theta1(unit),
                "theta2": asymptotics.theta2(unit) if has_zero else None,
            }
        )
    return rows


def _optimum_dict(o: optimal.Optimum) -> dict:
    return {
        "value": o.value,
        "angle": o.angle,
        "state_new": [[float(z.real), float(z.imag)] for z in o.state],
        "state_old": [[float(z.real), float(z.imag)] for z in o.state_old],
        "degenerate": o.degenerate,
    }


def cmd_optimize(n: int, a: float, q: float) -> dict:
    p = IfmParams(n, a, q)
    tc = coeffs(p)
    zero = optimal.zero_error_states(p)
    out = {
        "n": n,
        "a": a,
        "q": q,
        "k1": tc.k1,
        "k2": tc.k2,
        "regime": tc.regime.value,
        "min_ploss": _optimum_dict(optimal.min_ploss(p)),
        "zero_error_states": None if zero is None else [_optimum_dict(o) for o in zero],
    }
    if zero is None:
        out["p_error_min"] = optimal.brute_force_min(p, "ERROR", grid=BRUTE_FORCE_GRID).value
    else:
        out["p_error_min"] = 0.0
    return out


def parse_state(text: str) -> np.ndarray:
    try:
        parts = [float(x) for x in text.split(",")]
    except ValueError as exc:
        raise InvalidSpecError(f"--state must be re,im,re,im numbers: {exc}") from None
    if len(parts) != 4:
        raise InvalidSpecError(f"--state needs 4 numbers (re,im,re,im), got {len(parts)}")
    v = np.array([parts[0] + 1j * parts[1], parts[2] + 1j * parts[3]])
    norm = np.linalg.norm(v)
    if norm == 0:
        raise InvalidSpecError("--state is the zero vector")
    if abs(norm - 1.0) > 1e-6:
        warnings.warn(f"state norm {norm:.8g} != 1; renormalizing", stacklevel=2)
    return v / norm


def cmd_discriminate(n: int, a: float, q: float, state: np.ndarray) -> dict:
    p = IfmParams(n, a, q)
    res = discriminate(state, p)
    if abs(res.p_fail - (res.p_loss + res.p_error)) > 1e-12:
        raise AssertionError("p_fail != p_loss + p_error")
    return {"n": n, "a": a, "q": q, **res.to_dict()}


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, float):
        return f"{x:.17g}"
    return str(x)


def to_csv(rows: list[dict], columns: list[str]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([_fmt(r[c]) for c in columns])
    return buf.getvalue()


def to_json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def render(rows: list[dict], columns: list[str], fmt: str) -> str:
    return to_csv(rows, columns) if fmt == "csv" else to_json(rows)


def _emit(text: str, path: str | None) -> None:
    if path:
        with open(path, "w", newline="\n", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _float_list(text: str) -> tuple[float, ...]:
    if not text.strip():
        return ()
    try:
        return tuple(float(x) for x in text.split(","))
    except ValueError:
        raise InvalidSpecError(f"--a must be a comma-separated list of numbers, got {text!r}") from None


def _single_a(text: str) -> float:
    vals = _float_list(text)
    if len(vals) != 1:
        raise InvalidSpecError(f"--a takes a single value for this command, got {text!r}")
    return vals[0]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ifmchannel", description=__doc__.split("\n")[1])
    sub = parser.add_subparsers(dest="command", required=True)

    def output_flags(sp):
        sp.add_argument("--format", choices=("csv", "json"), default="csv")
        sp.add_argument("--out", default=None, metavar="PATH")

    sp = sub.add_parser("ploss-sweep", help="optimal loss and error over a grid of N and a")
    sp.add_argument("--n-min", type=int, default=2)
    sp.add_argument("--n-max", type=int, default=50)
    sp.add_argument("--n-step", type=int, default=1)
    sp.add_argument("--a", default="0")
    sp.add_argument("--q", type=float, default=1.0)
    output_flags(sp)

    sp = sub.add_parser("boundary", help="largest a admitting zero-error inputs, per N")
    sp.add_argument("--n-min", type=int, default=2)
    sp.add_argument("--n-max", type=int, default=50)
    output_flags(sp)

    sp = sub.add_parser("asymptotics", help="large-N loss curves and Bloch angles")
    sp.add_argument("--a", default="0.5")
    sp.add_argument("--q", type=float, default=1.0)
    sp.add_argument("--n-min", type=int, default=2)
    sp.add_argument("--n-max", type=int, default=4096)
    output_flags(sp)

    for name, help_text in (
        ("optimize", "optimal input states at one parameter point"),
        ("discriminate", "loss, error and optimal POVM for one input state"),
    ):
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("--n", type=int, required=True)
        sp.add_argument("--a", default="0")
        sp.add_argument("--q", type=float, default=0.5)
        if name == "discriminate":
            sp.add_argument("--state", required=True, help="re,im,re,im amplitudes on |1>,|2>")
        sp.add_argument("--out", default=None, metavar="PATH")

    sp = sub.add_parser("verify", help="run all cross-check suites")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out", default=None, metavar="PATH")
    return parser


def _point(args) -> IfmParams:
    try:
        return IfmParams(args.n, _single_a(args.a), args.q)
    except ValueError as exc:
        raise InvalidSpecError(str(exc)) from None


def run(args) -> int:
    cmd = args.command
    if cmd == "ploss-sweep":
        spec = SweepSpec(
            args.n_min, args.n_max, args.n_step, _float_list(args.a), args.q, args.format, args.out
        )
        rows = [asdict(r) for r in cmd_ploss_sweep(spec)]
        _emit(render(rows, [f.name for f in fields(ReportRecord)], spec.output_format), args.out)
    elif cmd == "boundary":
        rows = cmd_boundary(args.n_min, args.n_max)
        _emit(render(rows, ["n", "a_star", "certified"], args.format), args.out)
    elif cmd == "asymptotics":
        rows = cmd_asymptotics(_single_a(args.a), args.q, args.n_max, args.n_min)
        cols = ["n", "a", "q", "ploss_min_over_q", "ploss_plus_over_q", "leading_over_q", "theta1", "theta2"]
        _emit(render(rows, cols, args.format), args.out)
    elif cmd == "optimize":
        p = _point(args)
        _emit(to_json(cmd_optimize(p.n_cycles, p.a, p.q)), args.out)
    elif cmd == "discriminate":
        p = _point(args)
        _emit(to_json(cmd_discriminate(p.n_cycles, p.a, p.q, parse_state(args.state))), args.out)
    elif cmd == "verify":
        results = run_verify(args.seed)
        _emit(report(results), args.out)
        if not all(r.passed for r in results):
            return EXIT_VERIFY_FAILED
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return run(args)
    except (InvalidSpecError, DegenerateTransparencyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
