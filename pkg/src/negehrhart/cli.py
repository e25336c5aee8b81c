"""``negehrhart`` command line.

Exit codes: 0 success/pass, 1 verification failure, 2 invalid input,
3 counting budget refused.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from contextlib import contextmanager
from fractions import Fraction
from pathlib import Path

from .constructions import (
    closed_form_ehrhart,
    coefficient_report,
    g_value,
    min_negative_m,
    min_positive_root_m,
    negativity_thresholds,
    paper_family,
    reeve,
    reeve_ehrhart,
)
from .counting import (
    BudgetExceeded,
    DeltaVectorError,
    EhrhartConsistencyError,
    candidate_points,
    count_lattice_points,
    delta_vector,
    ehrhart_polynomial,
)
from .exact import Polynomial, count_positive_real_roots, isolate_positive_roots, refine_root
from .polytope import Product, Simplex, SpecError, dimension, parse_spec, serialize_spec

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3
DEFAULT_MAX_POINTS = 10**8


class InputError(ValueError):
    pass


class RunReport:
    """Collects inputs, outputs, verdicts and timings for one command."""

    def __init__(self, command: str, inputs: dict):
        self.command = command
        self.inputs = inputs
        self.outputs: dict = {}
        self.verdicts: dict[str, str] = {}
        self.timing: dict[str, float] = {}
        self.lines: list[str] = []

    @contextmanager
    def phase(self, name: str):
        t0 = time.perf_counter()
        try:
            yield
        finally:
            self.timing[name] = time.perf_counter() - t0

    def verdict(self, name: str, ok: bool) -> bool:
        self.verdicts[name] = "pass" if ok else "fail"
        return ok

    def say(self, line: str = "") -> None:
        self.lines.append(line)

    def to_json(self) -> str:
        # timing is deliberately excluded: JSON output must be byte-reproducible
        doc = {
            "command": self.command,
            "inputs": self.inputs,
            "outputs": self.outputs,
            "verdicts": self.verdicts,
        }
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"

    def to_text(self) -> str:
        lines = list(self.lines)
        for name, v in self.verdicts.items():
            lines.append(f"[{v.upper()}] {name}")
        if self.timing:
            lines.append("timing: " + ", ".join(f"{k}={v:.3f}s" for k, v in self.timing.items()))
        return "\n".join(lines) + "\n"


def _frac(c: Fraction) -> list[int]:
    return [c.numerator, c.denominator]


def _poly_out(p: Polynomial) -> dict:
    return {"text": str(p), "coefficients": p.to_json()}


def _spec_hash(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()


def _roots_out(p: Polynomial, approx: bool) -> dict:
    intervals = isolate_positive_roots(p)
    out = {
        "positive_real_roots": count_positive_real_roots(p),
        "isolating_intervals": [[_frac(lo), _frac(hi)] for lo, hi in intervals],
    }
    if approx:
        tight = [refine_root(p, lo, hi, Fraction(1, 10**12)) for lo, hi in intervals]
        out["approx_float"] = [float(hi) for _, hi in tight]
    return out


def _count_opts(args) -> dict:
    return {"threads": args.threads, "max_points": args.max_points}


def _require_dm(d, m):
    if d is not None and d < 4:
        raise InputError(f"--d must be at least 4, got {d}")
    if m is not None and m < 1:
        raise InputError(f"--m must be a positive integer, got {m}")


# -- commands ------------------------------------------------------------------

def cmd_construct(args) -> tuple[RunReport, int]:
    if args.m is None:
        raise InputError("--m is required")
    if args.family == "reeve":
        _require_dm(None, args.m)
        P = reeve(args.m)
    else:
        if args.d is None:
            raise InputError("--d is required for --family paper")
        _require_dm(args.d, args.m)
        P = paper_family(args.d, args.m)
    text = serialize_spec(P)
    report = RunReport("construct", {"family": args.family, "d": args.d, "m": args.m, "spec_sha256": _spec_hash(text)})
    if args.out:
        Path(args.out).write_text(text + "\n")
    report.outputs = {"spec": json.loads(text), "dimension": dimension(P)}
    report.say(f"dimension: {dimension(P)}")
    if isinstance(P, Simplex):
        report.say(f"simplex with {len(P.vertices)} vertices: " + ", ".join(map(str, P.vertices)))
    elif isinstance(P, Product):
        report.say(f"product of {len(P.factors)} factors: " + " x ".join(type(f).__name__ for f in P.factors))
    if args.out:
        report.say(f"wrote {args.out}")
    else:
        report.say(text)
    return report, EXIT_OK


def cmd_ehrhart(args) -> tuple[RunReport, int]:
    try:
        text = Path(args.spec).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {args.spec}: {exc}") from exc
    P = parse_spec(text)
    d = dimension(P)
    report = RunReport("ehrhart", {"spec": args.spec, "spec_sha256": _spec_hash(text), "d": d})
    with report.phase("count"):
        p = ehrhart_polynomial(P, **_count_opts(args))
    with report.phase("analyze"):
        delta = delta_vector(p, d)
        roots = _roots_out(p, args.approx)
    report.outputs = {"ehrhart": _poly_out(p), "delta_vector": list(delta), **roots}
    report.say(f"i(P, n) = {p}")
    report.say(f"delta = ({', '.join(map(str, delta))})")
    report.say(f"positive real roots: {roots['positive_real_roots']}")
    for lo, hi in isolate_positive_roots(p):
        report.say(f"  root in ({lo}, {hi}]")
    return report, EXIT_OK


def cmd_closed_form(args) -> tuple[RunReport, int]:
    _require_dm(args.d, args.m)
    p = closed_form_ehrhart(args.d, args.m)
    report = RunReport("closed-form", {"d": args.d, "m": args.m})
    report.outputs = {"ehrhart": _poly_out(p)}
    report.say(f"i(P_{args.m}^({args.d}), n) = {p}")
    return report, EXIT_OK


def cmd_verify(args) -> tuple[RunReport, int]:
    _require_dm(args.d, args.m)
    P = paper_family(args.d, args.m)
    report = RunReport("verify", {"d": args.d, "m": args.m, "spec_sha256": _spec_hash(serialize_spec(P))})
    needed = candidate_points(P, args.d + 2)
    if args.max_points is not None and needed > args.max_points:
        raise BudgetExceeded(needed, args.max_points)
    with report.phase("closed_form"):
        expected = closed_form_ehrhart(args.d, args.m)
    with report.phase("count"):
        counted = ehrhart_polynomial(P, **_count_opts(args))
    ok = report.verdict("brute_force_equals_closed_form", counted == expected)
    report.outputs = {
        "counted": _poly_out(counted),
        "closed_form": _poly_out(expected),
        "counts": [count_lattice_points(P, n) for n in range(args.d + 3)],
    }
    report.say(f"brute force: {counted}")
    report.say(f"closed form: {expected}")
    return report, EXIT_OK if ok else EXIT_FAIL


def _sign_word(s: int) -> str:
    return {1: "POS", 0: "ZERO", -1: "NEG"}[s]


def cmd_signs(args) -> tuple[RunReport, int]:
    _require_dm(args.d, args.m)
    rep = coefficient_report(args.d, args.m)
    report = RunReport("signs", {"d": args.d, "m": args.m})
    report.outputs = rep.to_json()
    for i, (c, s) in enumerate(zip(rep.coefficients, rep.signs)):
        report.say(f"n^{i}: {c} {_sign_word(s)}")
    report.say("A: " + ", ".join(f"A_{i}={a}" for i, a in enumerate(rep.a_table)))
    if rep.g_table:
        report.say("g: " + ", ".join(f"g({args.d},{j})={g}" for j, g in rep.g_table.items()))
    report.say(f"all of n^1..n^{args.d - 2} negative: {rep.all_middle_negative}")
    return report, EXIT_OK


def cmd_find_min_m(args) -> tuple[RunReport, int]:
    _require_dm(args.d, None)
    m = min_negative_m(args.d)
    witness = coefficient_report(args.d, m)
    report = RunReport("find-min-m", {"d": args.d})
    report.outputs = {
        "min_m": m,
        "thresholds": {str(j): t for j, t in negativity_thresholds(args.d).items()},
        "witness": witness.to_json(),
    }
    report.say(f"{m}")
    report.say(f"at m={m}: " + ", ".join(f"c_{j}={witness.coefficients[j]}" for j in range(1, args.d - 1)))
    if m > 1:
        counter = coefficient_report(args.d, m - 1)
        report.outputs["counter_witness"] = counter.to_json()
        report.say(f"at m={m - 1}: " + ", ".join(f"c_{j}={counter.coefficients[j]}" for j in range(1, args.d - 1)))
    return report, EXIT_OK


def cmd_gcheck(args) -> tuple[RunReport, int]:
    if args.d_max < 5:
        raise InputError(f"--d-max must be at least 5, got {args.d_max}")
    report = RunReport("gcheck", {"d_max": args.d_max})
    bad = [
        [d, j, g]
        for d in range(5, args.d_max + 1)
        for j in range(3, d - 1)
        if (g := g_value(d, j)) <= 0
    ]
    checked = sum(d - 4 for d in range(5, args.d_max + 1))
    ok = report.verdict("g_positive", not bad)
    report.outputs = {"pairs_checked": checked, "non_positive": bad}
    report.say(f"checked {checked} pairs (d, j), 5 <= d <= {args.d_max}")
    return report, EXIT_OK if ok else EXIT_FAIL


def cmd_roots(args) -> tuple[RunReport, int]:
    report = RunReport("roots", {"d": args.d, "m": args.m, "poly": args.poly, "scan": args.scan})
    if args.scan:
        m = min_positive_root_m()
        report.outputs = {"min_positive_root_m": m}
        report.say(f"least m with a positive real root of i(Q_m, n): {m}")
        return report, EXIT_OK
    if args.poly is not None:
        try:
            p = Polynomial.from_json(json.loads(args.poly))
        except (ValueError, TypeError) as exc:
            raise InputError(f"bad --poly: {exc}") from exc
    elif args.m is not None:
        if args.d is None:
            _require_dm(None, args.m)
            p = reeve_ehrhart(args.m)
        else:
            _require_dm(args.d, args.m)
            p = closed_form_ehrhart(args.d, args.m)
    else:
        raise InputError("give --m [--d], --poly or --scan")
    if p.is_zero():
        raise InputError("zero polynomial")
    roots = _roots_out(p, args.approx)
    report.outputs = {"polynomial": _poly_out(p), **roots}
    report.say(f"p(n) = {p}")
    report.say(f"positive real roots: {roots['positive_real_roots']}")
    for lo, hi in isolate_positive_roots(p):
        report.say(f"  root in ({lo}, {hi}]")
    if args.approx:
        report.say("approx (float, not exact): " + ", ".join(f"{x:.9g}" for x in roots["approx_float"]))
    return report, EXIT_OK


# -- entry point -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="negehrhart", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit the RunReport as JSON")
    common.add_argument("--report-out", help="write the report here instead of stdout")
    counting = argparse.ArgumentParser(add_help=False)
    counting.add_argument("--max-points", type=int, default=DEFAULT_MAX_POINTS,
                          help="refuse enumerations scanning more box points (default 1e8)")
    counting.add_argument("--no-limit", action="store_true", help="override the counting budget")
    counting.add_argument("--threads", type=int, default=1)

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", parents=[common], help="write a PolytopeSpec")
    p.add_argument("--family", choices=["reeve", "paper"], required=True)
    p.add_argument("--m", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--out", help="spec file path (spec printed if omitted)")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("ehrhart", parents=[common, counting], help="Ehrhart polynomial of a spec file")
    p.add_argument("spec")
    p.add_argument("--approx", action="store_true", help="add labelled float root estimates")
    p.set_defaults(func=cmd_ehrhart)

    p = sub.add_parser("closed-form", parents=[common], help="closed-form i(P_m^(d), n)")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.set_defaults(func=cmd_closed_form)

    p = sub.add_parser("verify", parents=[common, counting], help="brute force vs closed form")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("signs", parents=[common], help="coefficient sign report")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.set_defaults(func=cmd_signs)

    p = sub.add_parser("find-min-m", parents=[common], help="least m with all middle coefficients negative")
    p.add_argument("--d", type=int, required=True)
    p.set_defaults(func=cmd_find_min_m)

    p = sub.add_parser("gcheck", parents=[common], help="check g(d, j) > 0 exhaustively")
    p.add_argument("--d-max", type=int, default=60)
    p.set_defaults(func=cmd_gcheck)

    p = sub.add_parser("roots", parents=[common], help="positive real roots, exactly isolated")
    p.add_argument("--m", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--poly", help='JSON coefficients [[num, den], ...], ascending')
    p.add_argument("--scan", action="store_true", help="find the least m with a positive root")
    p.add_argument("--approx", action="store_true", help="add labelled float root estimates")
    p.set_defaults(func=cmd_roots)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "no_limit", False):
        args.max_points = None
    if getattr(args, "threads", 1) < 1:
        parser.error("--threads must be at least 1")
    try:
        report, code = args.func(args)
    except (InputError, SpecError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except BudgetExceeded as exc:
        print(f"refused: {exc} (use --max-points or --no-limit)", file=sys.stderr)
        return EXIT_BUDGET
    except (EhrhartConsistencyError, DeltaVectorError) as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    out = report.to_json() if args.json else report.to_text()
    if args.report_out:
        Path(args.report_out).write_text(out)
    else:
        sys.stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
