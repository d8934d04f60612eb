"""Command-line front end: ``supervol {volume,normalized,verify,table}``.

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import math
import random
import sys
from typing import Sequence

from .grassmann import to_complex
from .oracles.cp import cp_volume_chart
from .oracles.gaussian import gaussian_closed_form, gaussian_super_integral, random_admissible
from .oracles.hopf import cavalieri_check, hopf_factorization_check
from .oracles.quadrature import QuadratureSpec
from .oracles.report import VerificationReport, compare
from .oracles.sphere import sphere_volume_chart, sphere_volume_delta
from .oracles.u11 import u11_maurer_cartan
from .volumes import FAMILIES, NORMALIZED_FAMILIES, ManifoldSpec, ParameterError, normalized_value, volume

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
MAX_CELLS = 10_000
VERIFY_CASES = ("sphere", "cp", "u11", "hopf", "gaussian", "cavalieri")

VOLUME_SCHEMA = {
    "type": "object",
    "required": [
        "family", "n", "m", "r", "s", "R", "value_re", "value_im",
        "exact_zero", "index", "gaussian_factor", "conjectural",
    ],
    "properties": {
        "family": {"enum": list(FAMILIES)},
        "n": {"type": "integer", "minimum": 0},
        "m": {"type": "integer", "minimum": 0},
        "r": {"type": "integer", "minimum": 0},
        "s": {"type": "integer", "minimum": 0},
        "R": {"type": "number", "exclusiveMinimum": 0},
        "value_re": {"type": "number"},
        "value_im": {"type": "number"},
        "exact_zero": {"type": "boolean"},
        "index": {"type": "integer"},
        "gaussian_factor": {"type": "number", "exclusiveMinimum": 0},
        "conjectural": {"type": "boolean"},
    },
    "additionalProperties": False,
}

NORMALIZED_SCHEMA = {
    "type": "object",
    "required": ["family", "z", "w", "R", "value_re", "value_im", "exact_zero"],
    "properties": {
        "family": {"enum": list(NORMALIZED_FAMILIES)},
        "z": {"type": "array", "items": {"type": "number"}},
        "w": {"anyOf": [{"type": "null"}, {"type": "array", "items": {"type": "number"}}]},
        "R": {"type": "number"},
        "value_re": {"type": "number"},
        "value_im": {"type": "number"},
        "exact_zero": {"type": "boolean"},
    },
}


class UsageError(Exception):
    pass


def format_complex(z: complex) -> str:
    """re+imi with 15 significant digits."""
    z = complex(z)
    return f"{z.real:.15g}{z.imag:+.15g}i"


def format_value(z: complex) -> str:
    z = complex(z)
    return f"{z.real:.15g}" if z.imag == 0 else format_complex(z)


def parse_complex(text: str) -> complex:
    t = text.strip().replace(" ", "").replace("i", "j")
    try:
        return complex(t)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}") from exc


def parse_range(text: str) -> range:
    """``a..b`` (inclusive) or a single integer."""
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            return range(int(a), int(b) + 1)
        v = int(text)
        return range(v, v + 1)
    except ValueError as exc:
        raise UsageError(f"bad range {text!r}; expected a..b or an integer") from exc


def positive_float(text: str) -> float:
    try:
        v = float(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from exc
    if not (v > 0 and math.isfinite(v)):
        raise argparse.ArgumentTypeError(f"must be a positive finite number, got {text}")
    return v


def _out(args, payload, text_lines):
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    else:
        print("\n".join(text_lines))


# -- verbs ---------------------------------------------------------------------


def run_volume(args) -> int:
    spec = ManifoldSpec(args.family, args.n, args.m, args.r, args.s, args.radius)
    v = volume(spec)
    data = v.to_json()
    lines = [
        f"family: {spec.family}  n={spec.n} m={spec.m} r={spec.r} s={spec.s} R={spec.R:.15g}",
        f"value: {format_value(v.value)}",
        f"exact_zero: {str(v.is_exact_zero).lower()}",
        f"index: {v.index}",
        f"dimension: {v.dimension}",
        f"gaussian_factor: {v.gaussian_factor:.15g}",
        f"conjectural: {str(v.conjectural).lower()}",
    ]
    _out(args, data, lines)
    return EXIT_OK


def run_normalized(args) -> int:
    if args.family in ("stiefel", "grassmannian") and args.w is None:
        raise UsageError(f"family {args.family} needs --w")
    val = normalized_value(args.family, args.z, args.w, args.radius)
    data = {
        "family": args.family,
        "z": [args.z.real, args.z.imag],
        "w": None if args.w is None else [args.w.real, args.w.imag],
        "R": args.radius,
        "value_re": val.value.real,
        "value_im": val.value.imag,
        "exact_zero": val.is_exact_zero,
    }
    lines = [f"value: {format_complex(val.value)}", f"exact_zero: {str(val.is_exact_zero).lower()}"]
    _out(args, data, lines)
    return EXIT_OK


def _verify_reports(args) -> list[VerificationReport]:
    n, m, R, tol = args.n, args.m, args.radius, args.tol
    quad = QuadratureSpec(nodes_per_axis=args.nodes) if args.nodes else None
    case = args.case
    if case == "sphere":
        closed = volume(ManifoldSpec("sphere", n, m, R=R)).value
        return [
            compare(f"sphere n={n} m={m} R={R:g} delta", closed, lambda: (sphere_volume_delta(n, m, R), 0), tol),
            compare(f"sphere n={n} m={m} R={R:g} chart", closed, lambda: sphere_volume_chart(n, m, R, quad), tol),
        ]
    if case == "cp":
        closed = volume(ManifoldSpec("cp", n, m, R=R)).value
        return [compare(f"cp n={n} m={m} R={R:g} chart", closed, lambda: cp_volume_chart(n, m, R, quad), tol)]
    if case == "hopf":
        rep = hopf_factorization_check(n, m, R)
        r = compare(f"hopf n={n} m={m} R={R:g}", rep.sphere, lambda: (rep.fibred, 0), tol)
        r.passed = r.passed and rep.passed
        return [r]
    if case == "cavalieri":
        rep = cavalieri_check(n, m, R)
        return [
            VerificationReport(
                f"cavalieri n={n} m={m} R={R:g}", 0j, complex(rep.max_rel_residual), rep.max_rel_residual,
                rep.max_rel_residual, 0, 0.0, rep.max_rel_residual <= max(tol, 1e-10),
            )
        ]
    if case == "gaussian":
        if n > 3 or m > 2:
            raise ParameterError(f"gaussian case supports n <= 3 and m <= 2 odd pairs; got n={n}, m={m}")
        Q = random_admissible(random.Random(1000 * n + m), n, m)

        def run():
            return to_complex(gaussian_super_integral(Q).body), 12

        closed = to_complex(gaussian_closed_form(Q).body)
        return [compare(f"gaussian p={n} pairs={m}", closed, run, tol)]
    # u11
    res = u11_maurer_cartan()

    def run_u11():
        return complex(res.total_volume), 0

    r = compare("u11 total volume", 0j, run_u11, tol, abs_tol=0.0)
    r.passed = r.passed and res.constant and res.identity_ok and abs(res.density_value) == 2.0
    r.case = f"u11 density={format_complex(res.density_value)}"
    return [r]


def run_verify(args) -> int:
    reports = _verify_reports(args)
    lines = [
        f"{'PASS' if r.passed else 'FAIL'}  {r.case}: closed={format_value(r.closed_form)} "
        f"oracle={format_value(r.oracle)} abs_err={r.abs_err:.3g} rel_err={r.rel_err:.3g} "
        f"nodes={r.nodes} {r.elapsed_ms:.1f}ms"
        for r in reports
    ]
    _out(args, [r.to_json() for r in reports], lines)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def run_table(args) -> int:
    fam = args.family
    ranges = {k: parse_range(getattr(args, k)) for k in ("n", "m", "r", "s")}
    four = fam in ("stiefel", "grassmannian")
    if any(len(ranges[k]) == 0 for k in (("n", "m", "r", "s") if four else ("n", "m"))):
        raise UsageError("empty range")
    if any(rg.start < 0 for rg in ranges.values()):
        raise UsageError("ranges must be non-negative")
    cells = len(ranges["n"]) * len(ranges["m"]) * ((len(ranges["r"]) * len(ranges["s"])) if four else 1)
    if cells > MAX_CELLS:
        raise UsageError(f"table has {cells} cells; at most {MAX_CELLS} are allowed")
    rows = []
    for n in ranges["n"]:
        for m in ranges["m"]:
            for r in ranges["r"] if four else (0,):
                for s in ranges["s"] if four else (0,):
                    if four and (r > n or s > m):
                        continue
                    rows.append(volume(ManifoldSpec(fam, n, m, r, s, args.radius)))
    if args.format == "json":
        print(json.dumps([v.to_json() for v in rows], indent=2))
        return EXIT_OK
    lines = [f"# {fam} volumes, R={args.radius:g}; '0*' marks an exact zero"]
    if four:
        lines.append(f"{'n':>3} {'m':>3} {'r':>3} {'s':>3}  value")
        for v in rows:
            sp = v.spec
            cell = "0*" if v.is_exact_zero else format_value(v.value)
            lines.append(f"{sp.n:>3} {sp.m:>3} {sp.r:>3} {sp.s:>3}  {cell}")
    else:
        ms = list(ranges["m"])
        lines.append("n\\m " + "".join(f"{m:>24}" for m in ms))
        it = iter(rows)
        for n in ranges["n"]:
            cells_txt = []
            for _ in ms:
                v = next(it)
                cells_txt.append(f"{'0*' if v.is_exact_zero else format_value(v.value):>24}")
            lines.append(f"{n:>3} " + "".join(cells_txt))
    print("\n".join(lines))
    return EXIT_OK


# -- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="supervol", description="Volumes of supermanifolds and their verification.")
    sub = p.add_subparsers(dest="verb", required=True)

    def common(sp):
        sp.add_argument("--radius", type=positive_float, default=1.0)
        sp.add_argument("--format", choices=("text", "json"), default="text")

    v = sub.add_parser("volume", help="closed-form volume")
    v.add_argument("family", choices=FAMILIES)
    v.add_argument("--n", type=int, required=True)
    v.add_argument("--m", type=int, default=0)
    v.add_argument("--r", type=int, default=0)
    v.add_argument("--s", type=int, default=0)
    common(v)

    nz = sub.add_parser("normalized", help="normalized volume at complex index arguments")
    nz.add_argument("family", choices=NORMALIZED_FAMILIES)
    nz.add_argument("--z", type=parse_complex, required=True)
    nz.add_argument("--w", type=parse_complex, default=None)
    common(nz)

    ve = sub.add_parser("verify", help="closed form versus an independent oracle")
    ve.add_argument("--case", choices=VERIFY_CASES, required=True)
    ve.add_argument("--n", type=int, default=1)
    ve.add_argument("--m", type=int, default=1)
    ve.add_argument("--nodes", type=int, default=None)
    ve.add_argument("--tol", type=positive_float, default=1e-6)
    common(ve)

    t = sub.add_parser("table", help="grid of closed-form volumes")
    t.add_argument("family", choices=FAMILIES)
    t.add_argument("--n", required=True)
    t.add_argument("--m", default="0")
    t.add_argument("--r", default="0")
    t.add_argument("--s", default="0")
    common(t)
    return p


VERBS = {"volume": run_volume, "normalized": run_normalized, "verify": run_verify, "table": run_table}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if getattr(args, "nodes", None) is not None and args.nodes < 2:
            raise UsageError("--nodes must be >= 2")
        return VERBS[args.verb](args)
    except (ParameterError, UsageError) as exc:
        print(f"supervol {args.verb}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
