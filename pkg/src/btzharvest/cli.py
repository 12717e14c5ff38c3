"""Command-line driver: single-point evaluation, sweeps to CSV, sudden-death
and optimal-gap searches, and the brute-force verification report.

Configuration comes from an optional TOML file plus flag overrides; flags win.
Exit codes: 0 success, 2 validation error, 3 numerical failure (all sweep
points failed, or verification outside tolerance), 4 bracket failure.
"""

from __future__ import annotations

import argparse
import sys

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib

from .errors import BracketError, ConsistencyError, ConvergenceError, DomainError
from .oracle import OracleSettings, oracle_P, oracle_X
from .quadrature import QuadratureSettings
from .response import nonlocal_X, respond, transition_probability
from .sweeps import (
    AxisSpec,
    DEFAULT_PARAMS,
    PARAM_KEYS,
    SweepSpec,
    build_point,
    find_sudden_death,
    optimize_gap,
    run_sweep,
    write_csv,
)

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_NUMERICAL = 3
EXIT_BRACKET = 4

_QUAD_KEYS = ("rel_tol", "abs_tol", "tail_tol", "n_max_images")
_AXIS_KEYS = ("name", "scale", "min", "max", "count")


def load_config(path: str) -> dict:
    with open(path, "rb") as fh:
        return tomllib.load(fh)


def _add_param_flags(parser: argparse.ArgumentParser) -> None:
    for key in PARAM_KEYS:
        flag = "--" + key.replace("_", "-")
        if key == "zeta":
            parser.add_argument(flag, type=int, dest=key, default=None)
        else:
            parser.add_argument(flag, type=float, dest=key, default=None)


def _add_quad_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--quad-rel-tol", type=float, default=None)
    parser.add_argument("--quad-abs-tol", type=float, default=None)
    parser.add_argument("--quad-tail-tol", type=float, default=None)
    parser.add_argument("--quad-n-max-images", type=int, default=None)


def _merged_params(args, config: dict) -> dict:
    params = dict(DEFAULT_PARAMS)
    for key in PARAM_KEYS:
        if key in config:
            params[key] = config[key]
        override = getattr(args, key, None)
        if override is not None:
            params[key] = override
    return params


def _merged_quad(args, config: dict) -> QuadratureSettings:
    quad = dict(config.get("quad", {}))
    unknown = set(quad) - set(_QUAD_KEYS)
    if unknown:
        raise DomainError(f"unknown quad config keys: {sorted(unknown)}")
    for key in _QUAD_KEYS:
        override = getattr(args, "quad_" + key, None)
        if override is not None:
            quad[key] = override
    return QuadratureSettings(**quad)


def _merged_axis(args, config: dict) -> AxisSpec:
    axis = dict(config.get("axis", {}))
    unknown = set(axis) - set(_AXIS_KEYS)
    if unknown:
        raise DomainError(f"unknown axis config keys: {sorted(unknown)}")
    for key in _AXIS_KEYS:
        override = getattr(args, "axis_" + key, None)
        if override is not None:
            axis[key] = override
    missing = [k for k in _AXIS_KEYS if k not in axis]
    if missing:
        raise DomainError(f"axis config incomplete, missing {missing}")
    return AxisSpec(
        name=axis["name"],
        scale=axis["scale"],
        min=float(axis["min"]),
        max=float(axis["max"]),
        count=int(axis["count"]),
    )


def _print_result(params: dict, result) -> None:
    print(f"P_A          = {result.P_A!r}")
    print(f"P_B          = {result.P_B!r}")
    print(f"re_X         = {result.X.real!r}")
    print(f"im_X         = {result.X.imag!r}")
    print(f"abs_X        = {abs(result.X)!r}")
    print(f"concurrence  = {result.concurrence!r}")
    print(f"negativity   = {result.negativity!r}")
    print(f"n_terms_used = {result.n_terms_used}")
    print(f"est_error    = {result.est_error!r}")


def _cmd_respond(args) -> int:
    config = load_config(args.config) if args.config else {}
    params = _merged_params(args, config)
    quad = _merged_quad(args, config)
    if (args.R_A is None) != (args.R_B is None):
        raise DomainError("--R-A and --R-B must be given together")
    if args.R_A is not None:
        # advanced path: raw radii instead of proper distances
        from .geometry import BtzSpacetime, StaticDetector

        st = BtzSpacetime(
            ell=params["l_over_sigma"], mass=params["mass"], zeta=int(params["zeta"])
        )
        detA = StaticDetector(
            R=args.R_A, Omega=params["gap_sigma"], lambda_tilde=params["lambda_tilde"]
        )
        detB = StaticDetector(
            R=args.R_B,
            Omega=params["gap_sigma"],
            Phi=params["delta_phi"],
            lambda_tilde=params["lambda_tilde"],
        )
    else:
        st, detA, detB = build_point(params)
    result = respond(st, detA, detB, quad)
    _print_result(params, result)
    return EXIT_OK


def _cmd_sweep(args) -> int:
    config = load_config(args.config) if args.config else {}
    params = _merged_params(args, config)
    axis = _merged_axis(args, config)
    quad = _merged_quad(args, config)
    fixed = {k: v for k, v in params.items() if k != axis.name}
    spec = SweepSpec(fixed=fixed, axis=axis, quad=quad)
    rows = run_sweep(spec)
    write_csv(rows, args.out)
    n_err = sum(1 for r in rows if r.status != "ok")
    print(f"wrote {len(rows)} rows to {args.out} ({n_err} errored)")
    if n_err == len(rows):
        return EXIT_NUMERICAL
    return EXIT_OK


def _cmd_find_death(args) -> int:
    config = load_config(args.config) if args.config else {}
    params = _merged_params(args, config)
    quad = _merged_quad(args, config)
    fixed = {k: v for k, v in params.items() if k != "dA_over_sigma"}
    d = find_sudden_death(fixed, (args.bracket[0], args.bracket[1]), quad, tol=args.tol)
    print(f"d_death = {d!r}")
    return EXIT_OK


def _cmd_optimize_gap(args) -> int:
    config = load_config(args.config) if args.config else {}
    params = _merged_params(args, config)
    quad = _merged_quad(args, config)
    fixed = {k: v for k, v in params.items() if k != "gap_sigma"}
    opt = optimize_gap(
        fixed,
        args.objective,
        (args.bracket[0], args.bracket[1]),
        quad,
        death_bracket=(args.death_bracket[0], args.death_bracket[1]),
    )
    print(f"gap      = {opt.gap!r}")
    print(f"value    = {opt.value!r}")
    print(f"at_edge  = {opt.at_edge}")
    return EXIT_OK


def _cmd_verify(args) -> int:
    config = load_config(args.config) if args.config else {}
    params = _merged_params(args, config)
    quad = _merged_quad(args, config)
    st, detA, detB = build_point(params)
    if args.eps_values:
        ladder = tuple(args.eps_values)
    else:
        # the shared settings carry the base regulator; the brute-force route
        # extrapolates down a 2x ladder from twice that value
        base = quad.eps_oracle
        ladder = (2.0 * base, base, 0.5 * base, 0.25 * base)
    orc = OracleSettings(eps_values=ladder, t_window=args.t_window)

    pA = transition_probability(st, detA, quad)
    pB = transition_probability(st, detB, quad)
    x = nonlocal_X(st, detA, detB, quad)
    oA = oracle_P(st, detA, orc)
    oB = oracle_P(st, detB, orc)
    oX = oracle_X(st, detA, detB, orc)

    rows = [
        ("P_A", pA.value, oA.value.real, oA.residual),
        ("P_B", pB.value, oB.value.real, oB.residual),
        ("|X|", abs(x.value), abs(oX.value), oX.residual),
        ("re_X", x.value.real, oX.value.real, oX.residual),
        ("im_X", x.value.imag, oX.value.imag, oX.residual),
    ]
    worst = 0.0
    print(f"{'quantity':8} {'closed form':>22} {'brute force':>22} {'rel diff':>12}")
    for name, closed, brute, residual in rows:
        denom = max(abs(brute), 1e-300)
        rel = abs(closed - brute) / denom
        if name in ("P_A", "P_B", "|X|"):
            worst = max(worst, rel)
        print(f"{name:8} {closed!r:>22} {brute!r:>22} {rel:12.3e}")
    print(f"worst certified relative difference: {worst:.3e} (tolerance {args.tol})")
    if not (worst <= args.tol):
        return EXIT_NUMERICAL
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="btzharvest",
        description="Entanglement harvesting observables outside a BTZ black hole",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_respond = sub.add_parser("respond", help="evaluate one parameter point")
    p_respond.add_argument("--config", default=None)
    _add_param_flags(p_respond)
    _add_quad_flags(p_respond)
    p_respond.add_argument("--R-A", type=float, dest="R_A", default=None,
                           help="advanced: raw radius of detector A")
    p_respond.add_argument("--R-B", type=float, dest="R_B", default=None,
                           help="advanced: raw radius of detector B")
    p_respond.set_defaults(func=_cmd_respond)

    p_sweep = sub.add_parser("sweep", help="run a one-axis sweep and write CSV")
    p_sweep.add_argument("--config", default=None)
    p_sweep.add_argument("--out", required=True)
    _add_param_flags(p_sweep)
    _add_quad_flags(p_sweep)
    p_sweep.add_argument("--axis-name", dest="axis_name", default=None)
    p_sweep.add_argument("--axis-scale", dest="axis_scale", default=None)
    p_sweep.add_argument("--axis-min", dest="axis_min", type=float, default=None)
    p_sweep.add_argument("--axis-max", dest="axis_max", type=float, default=None)
    p_sweep.add_argument("--axis-count", dest="axis_count", type=int, default=None)
    p_sweep.set_defaults(func=_cmd_sweep)

    p_death = sub.add_parser("find-death", help="bisect the sudden-death distance")
    p_death.add_argument("--config", default=None)
    _add_param_flags(p_death)
    _add_quad_flags(p_death)
    p_death.add_argument("--bracket", nargs=2, type=float, required=True,
                         metavar=("LO", "HI"))
    p_death.add_argument("--tol", type=float, default=1e-4)
    p_death.set_defaults(func=_cmd_find_death)

    p_opt = sub.add_parser("optimize-gap", help="search the energy gap")
    p_opt.add_argument("--config", default=None)
    _add_param_flags(p_opt)
    _add_quad_flags(p_opt)
    p_opt.add_argument("--objective", required=True,
                       choices=("min_death_distance", "max_far_concurrence"))
    p_opt.add_argument("--bracket", nargs=2, type=float, required=True,
                       metavar=("LO", "HI"))
    p_opt.add_argument("--death-bracket", nargs=2, type=float, default=(1e-3, 12.0),
                       metavar=("LO", "HI"))
    p_opt.set_defaults(func=_cmd_optimize_gap)

    p_verify = sub.add_parser(
        "verify", help="compare the closed forms against the brute-force route"
    )
    p_verify.add_argument("--config", default=None)
    _add_param_flags(p_verify)
    _add_quad_flags(p_verify)
    p_verify.add_argument("--eps-values", nargs="+", type=float, default=None)
    p_verify.add_argument("--t-window", type=float, default=7.0)
    p_verify.add_argument("--tol", type=float, default=1e-3)
    p_verify.set_defaults(func=_cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BracketError as exc:
        print(f"bracket error: {exc}", file=sys.stderr)
        return EXIT_BRACKET
    except DomainError as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (ConvergenceError, ConsistencyError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
