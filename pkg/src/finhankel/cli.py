"""Command-line front end.

Subcommands::

    transform     transform values on an r grid        (CSV or JSON rows)
    expand        origin/boundary ladders + terms      (JSON)
    verify        quadrature vs prediction + slope     (CSV or JSON)
    classify      invertibility verdict                (JSON)
    slowdecrease  window-supremum corroboration        (CSV or JSON)

Exit codes: 0 success, 2 malformed profile/arguments, 3 quadrature tolerance
not certified (rows are still emitted), 4 hypothesis violation in the
expansion machinery.  Output is deterministic for a fixed invocation: CSV
numbers carry 17 significant digits, JSON carries the same values as raw
floats.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import asymptotics as asym
from .errors import (
    DomainError,
    ExponentCollisionError,
    FinHankelError,
    HypothesisError,
    IncompatibleLadderError,
    NotApplicableError,
    ProfileFormatError,
    SmoothnessBudgetError,
    ZeroLadderError,
)
from .invertibility import classify, verify_profile_slow_decrease
from .profiles import (
    RadialProfile,
    boundary_expansion,
    origin_expansion,
    profile_from_json,
)
from .quadrature import QuadratureConfig, finite_hankel

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_TOLERANCE = 3
EXIT_HYPOTHESIS = 4

_HYPOTHESIS_ERRORS = (
    HypothesisError,
    IncompatibleLadderError,
    ExponentCollisionError,
    NotApplicableError,
    ZeroLadderError,
    SmoothnessBudgetError,
    DomainError,
)


def _fmt(x: float) -> str:
    return f"{float(x):.17g}"


def _r_grid(args) -> np.ndarray:
    if args.r_min <= 0 or args.r_max < args.r_min or args.count < 1:
        raise ProfileFormatError("need 0 < r-min <= r-max and count >= 1")
    if args.count == 1:
        return np.array([args.r_min])
    if args.spacing == "log":
        return np.geomspace(args.r_min, args.r_max, args.count)
    return np.linspace(args.r_min, args.r_max, args.count)


def _load_profile(path: str) -> RadialProfile:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ProfileFormatError(f"cannot read profile: {exc}") from exc
    return profile_from_json(text)


def _emit_rows(args, header, rows, extra=None, out=None):
    """Rows as CSV lines or a JSON document; identical numbers either way."""
    out = out if out is not None else sys.stdout
    if args.format == "json":
        doc = {"rows": [dict(zip(header, row)) for row in rows]}
        if extra:
            doc.update(extra)
        out.write(json.dumps(doc) + "\n")
        return
    out.write(",".join(header) + "\n")
    for row in rows:
        out.write(",".join(_fmt(v) for v in row) + "\n")
    for key, val in (extra or {}).items():
        out.write(f"# {key} = {_fmt(val)}\n")


def _tolerance_ok(values, estimates, tol) -> bool:
    scale = max((abs(v) for v in values), default=0.0)
    floor = 1e-6 * scale
    return all(e <= tol * max(abs(v), floor) for v, e in zip(values, estimates))


def cmd_transform(args) -> int:
    profile = _load_profile(args.profile)
    cfg = QuadratureConfig(target_rel_tol=args.tol)
    grid = _r_grid(args)
    results = [finite_hankel(profile, float(r), cfg) for r in grid]
    rows = [
        (float(r), res.value.real, res.value.imag, res.error_estimate)
        for r, res in zip(grid, results)
    ]
    _emit_rows(args, ("r", "re", "im", "error_estimate"), rows)
    ok = _tolerance_ok(
        [res.value for res in results], [res.error_estimate for res in results], args.tol
    )
    return EXIT_OK if ok else EXIT_TOLERANCE


def cmd_expand(args) -> int:
    profile = _load_profile(args.profile)
    origin = origin_expansion(profile, max_k=args.max_k)
    kk = asym.k_set(origin, profile.nu)
    doc = {
        "origin": {
            "mu": [origin.mu.real, origin.mu.imag],
            "c_k": [[k, c.real, c.imag] for k, c in enumerate(origin.coeffs)],
            "K": list(kk.members),
            "k0": kk.k0,
        },
        "boundary": None,
    }
    if not profile.vanishes_near_one:
        boundary = boundary_expansion(profile, max_j=args.max_k)
        doc["boundary"] = {
            "lambda_k": [[e.real, e.imag] for e, _ in boundary.terms],
            "a_k": [[a.real, a.imag] for _, a in boundary.terms],
            "Lambda": [boundary.Lambda.real, boundary.Lambda.imag],
            "N": boundary.N,
        }
    pred = asym.predict(profile, n_origin_terms=args.n_terms, max_k=args.max_k)
    doc["terms"] = [_term_dict(t) for t in pred.origin_terms + pred.boundary_terms]
    doc["valid_error_order"] = (
        None if math.isinf(pred.valid_error_order) else pred.valid_error_order
    )
    sys.stdout.write(json.dumps(doc) + "\n")
    return EXIT_OK


def _term_dict(t: asym.AsymptoticTerm) -> dict:
    out = {
        "amplitude": [t.amplitude.real, t.amplitude.imag],
        "exponent": [t.exponent.real, t.exponent.imag],
        "phase": None,
    }
    if t.phase is not None:
        off = complex(t.phase.offset)
        out["phase"] = {"freq": t.phase.freq, "offset": off.real}
        if off.imag:
            out["phase"]["offset_imag"] = off.imag
    return out


def cmd_verify(args) -> int:
    profile = _load_profile(args.profile)
    cfg = QuadratureConfig(target_rel_tol=args.tol)
    pred = asym.predict(profile, n_origin_terms=args.n_terms, max_k=args.max_k)
    grid = _r_grid(args)
    rep = asym.dominance(pred)
    if pred.boundary_terms:
        # tied decays: sample where the cosine factor vanishes, so the
        # non-oscillatory part is measured alone; edge-dominated: sample the
        # envelope at the |cos| = 1 points
        snap = None
        if rep.kind is asym.Dominance.BALANCED:
            snap = asym.cosine_zero_grid(pred.boundary_terms[0], args.r_min, args.r_max)
        elif rep.kind is asym.Dominance.BOUNDARY:
            snap = asym.cosine_extremum_grid(pred.boundary_terms[0], args.r_min, args.r_max)
        if snap is not None and snap.size >= 2:
            idx = np.unique(np.searchsorted(snap, grid).clip(0, snap.size - 1))
            grid = snap[idx]
    rows = []
    values, estimates = [], []
    for r in grid:
        res = finite_hankel(profile, float(r), cfg)
        pv = asym.evaluate_prediction(pred, float(r))
        err = abs(res.value - pv)
        denom = abs(res.value)
        rows.append(
            (
                float(r),
                res.value.real,
                res.value.imag,
                pv.real,
                pv.imag,
                err,
                err / denom if denom > 0 else math.inf,
            )
        )
        values.append(res.value)
        estimates.append(res.error_estimate)
    slope = asym.fit_loglog_slope([row[0] for row in rows], [row[5] for row in rows])
    _emit_rows(
        args,
        ("r", "quadrature_re", "quadrature_im", "prediction_re", "prediction_im", "abs_err", "rel_err"),
        rows,
        extra={"remainder_slope": slope},
    )
    ok = _tolerance_ok(values, estimates, args.tol)
    return EXIT_OK if ok else EXIT_TOLERANCE


def cmd_classify(args) -> int:
    profile = _load_profile(args.profile)
    verdict = classify(profile, max_k=args.max_k, N=args.N)
    doc = verdict.to_dict()
    if args.verify:
        report = verify_profile_slow_decrease(
            profile, (args.r_min, args.r_max), QuadratureConfig(target_rel_tol=args.tol)
        )
        doc["slow_decrease"] = report.to_dict()
    sys.stdout.write(json.dumps(doc) + "\n")
    return EXIT_OK


def cmd_slowdecrease(args) -> int:
    profile = _load_profile(args.profile)
    report = verify_profile_slow_decrease(
        profile, (args.r_min, args.r_max), QuadratureConfig(target_rel_tol=args.tol)
    )
    if args.format == "json":
        sys.stdout.write(json.dumps(report.to_dict()) + "\n")
    else:
        sys.stdout.write("passed,worst_margin,windows,failures,insufficient_resolution\n")
        sys.stdout.write(
            f"{int(report.passed)},{_fmt(report.worst_margin)},"
            f"{report.windows},{report.failures},{int(report.insufficient_resolution)}\n"
        )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="finhankel",
        description="finite Hankel transforms: quadrature, asymptotics, invertibility",
    )
    sub = ap.add_subparsers(dest="command", required=True)
    for name, fn in (
        ("transform", cmd_transform),
        ("expand", cmd_expand),
        ("verify", cmd_verify),
        ("classify", cmd_classify),
        ("slowdecrease", cmd_slowdecrease),
    ):
        sp = sub.add_parser(name)
        sp.set_defaults(func=fn)
        sp.add_argument("--profile", required=True, help="path to profile JSON")
        sp.add_argument("--r-min", type=float, default=50.0, dest="r_min")
        sp.add_argument("--r-max", type=float, default=2000.0, dest="r_max")
        sp.add_argument("--count", type=int, default=20)
        sp.add_argument("--spacing", choices=("linear", "log"), default="log")
        sp.add_argument("--format", choices=("csv", "json"), default="csv")
        sp.add_argument("--max-k", type=int, default=8, dest="max_k")
        sp.add_argument("--n-terms", type=int, default=3, dest="n_terms")
        sp.add_argument("--N", type=int, default=8)
        sp.add_argument("--tol", type=float, default=1e-10)
        if name == "classify":
            sp.add_argument("--verify", action="store_true")
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except ProfileFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except _HYPOTHESIS_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except FinHankelError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS


if __name__ == "__main__":
    sys.exit(main())
