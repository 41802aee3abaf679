"""Command-line front end.

Subcommands ``table``, ``state``, ``scan``, ``autocorr`` and ``verify`` write
CSV with a ``#``-prefixed metadata header.  Settings come from flags and/or a
JSON file given with ``--config``; flags win.  Exit codes: 0 success,
1 verification or domain failure, 2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from contextlib import contextmanager

import numpy as np

from . import __version__
from .dynamics import TimeGrid, autocorrelation
from .errors import CoherentStateError, InvalidSpectrum
from .moments import moment_sequence, rho
from .observables import observable_report
from .quadrature import QuadraturePolicy
from .spectrum import Kind, from_config, levels, to_config
from .state import TruncationPolicy, coefficients
from .verify import default_j_max, run_verification

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

# command-specific defaults; a JSON config may set any of these top-level keys
DEFAULTS = {
    "n_max": 10,
    "J": 0.5,
    "gamma": 0.0,
    "J_min": None,
    "J_max": None,
    "points": 21,
    "t_max": 2 * math.pi,
    "steps": 100,
    "unity_n_max": 200,
    "gamma_window": 1e4,
}


class ConfigError(Exception):
    pass


def fmt(x) -> str:
    return f"{x:.15g}"


def _parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--spec", help="harmonic | hydrogen1d | custom_table | custom_formula")
    common.add_argument("--omega", type=float)
    common.add_argument("--levels", help="comma-separated levels for custom_table")
    common.add_argument("--family", help="family name for custom_formula")
    common.add_argument(
        "--param", action="append", default=[], metavar="NAME=VALUE", help="custom_formula parameter"
    )
    common.add_argument("--config", help="JSON config file")
    common.add_argument("--out", help="output path (default: stdout)")
    common.add_argument("--rel-tol", type=float, dest="rel_tol")
    common.add_argument("--n-cap", type=int, dest="n_cap")

    p = argparse.ArgumentParser(prog="discrete-cs", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    t = sub.add_parser("table", parents=[common], help="levels and moments: n, e_n, rho_n, log_rho_n")
    t.add_argument("--n-max", type=int, dest="n_max")

    s = sub.add_parser("state", parents=[common], help="coefficients of |J, gamma>")
    s.add_argument("--J", type=float, dest="J")
    s.add_argument("--gamma", type=float)

    sc = sub.add_parser("scan", parents=[common], help="observables over an action grid")
    sc.add_argument("--J-min", type=float, dest="J_min")
    sc.add_argument("--J-max", type=float, dest="J_max")
    sc.add_argument("--points", type=int)

    a = sub.add_parser("autocorr", parents=[common], help="return probability P(t)")
    a.add_argument("--J", type=float, dest="J")
    a.add_argument("--t-max", type=float, dest="t_max")
    a.add_argument("--steps", type=int)

    v = sub.add_parser("verify", parents=[common], help="run the postulate checks")
    v.add_argument("--n-max", type=int, dest="unity_n_max", help="highest level in the unity diagonal check")
    v.add_argument("--gamma-window", type=float, dest="gamma_window")
    v.add_argument("--J-max", type=float, dest="J_max")
    v.add_argument("--timing", action="store_true", help="append runtimes (breaks byte-determinism)")
    return p


def _spectrum_block(args, file_cfg):
    block = dict(file_cfg.get("spectrum", {}))
    if args.spec:
        if args.spec != block.get("kind"):
            block = {"kind": args.spec}
    if args.omega is not None:
        block["omega"] = args.omega
    if args.levels:
        try:
            block["levels"] = [float(x) for x in args.levels.split(",") if x.strip()]
        except ValueError as exc:
            raise ConfigError(f"--levels: {exc}") from None
    if args.family:
        block["family"] = args.family
    if args.param:
        params = dict(block.get("params", {}))
        for item in args.param:
            name, sep, value = item.partition("=")
            if not sep:
                raise ConfigError(f"--param expects NAME=VALUE, got {item!r}")
            try:
                params[name.strip()] = float(value)
            except ValueError:
                raise ConfigError(f"--param {name}: not a number: {value!r}") from None
        block["params"] = params
    if "kind" not in block:
        raise ConfigError("no spectrum given: use --spec or a 'spectrum' block in --config")
    return block


def resolve_config(args) -> dict:
    """Merge defaults, the JSON file and flags into one run configuration."""
    file_cfg = {}
    if args.config:
        try:
            with open(args.config) as fh:
                file_cfg = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {args.config}: {exc}") from None
        if not isinstance(file_cfg, dict):
            raise ConfigError("config file must hold a JSON object")
    try:
        spec = from_config(_spectrum_block(args, file_cfg))
    except (InvalidSpectrum, TypeError, ValueError) as exc:
        raise ConfigError(f"invalid spectrum: {exc}") from None

    pol = dict(file_cfg.get("policy", {}))
    for key in ("rel_tol", "n_cap"):
        if getattr(args, key, None) is not None:
            pol[key] = getattr(args, key)
    quad = dict(file_cfg.get("quad", {}))
    try:
        policy = TruncationPolicy(**pol)
        quad_policy = QuadraturePolicy(**quad)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"invalid tolerances: {exc}") from None

    params = dict(DEFAULTS)
    params.update({k: v for k, v in file_cfg.items() if k in DEFAULTS})
    for key in DEFAULTS:
        value = getattr(args, key, None)
        if value is not None:
            params[key] = value
    return {"spec": spec, "policy": policy, "quad": quad_policy, "params": params, "out": args.out}


@contextmanager
def _output(path):
    if path and path != "-":
        with open(path, "w", newline="") as fh:
            yield fh
    else:
        yield sys.stdout


def _header(command, cfg, extra=()):
    spec = cfg["spec"]
    lines = [
        f"# discrete-cs {__version__} numpy {np.__version__}",
        f"# command: {command}",
        f"# spectrum: {json.dumps(to_config(spec), sort_keys=True)}",
        f"# policy: rel_tol={fmt(cfg['policy'].rel_tol)} n_cap={cfg['policy'].n_cap}",
    ]
    lines += [f"# {k}: {v}" for k, v in extra]
    return lines


def cmd_table(cfg):
    n_max = int(cfg["params"]["n_max"])
    if n_max < 0:
        raise ConfigError("n_max must be >= 0")
    spec = cfg["spec"]
    seq = moment_sequence(spec, n_max)
    e = levels(spec, n_max)
    lines = _header("table", cfg, [("n_max", n_max)])
    lines.append("n,e_n,rho_n,log_rho_n")
    for n in range(n_max + 1):
        lines.append(f"{n},{fmt(e[n])},{fmt(rho(seq, n))},{fmt(seq.log_rho[n])}")
    return lines, EXIT_OK


def cmd_state(cfg):
    p = cfg["params"]
    s = coefficients(cfg["spec"], float(p["J"]), float(p["gamma"]), cfg["policy"])
    lines = _header(
        "state", cfg, [("J", fmt(s.J)), ("gamma", fmt(s.gamma)), ("N", s.N), ("tail_bound", fmt(s.tail_bound))]
    )
    lines.append("n,re_c,im_c,abs_c_sq")
    for n, c in enumerate(s.coeffs):
        lines.append(f"{n},{fmt(c.real)},{fmt(c.imag)},{fmt(abs(c) ** 2)}")
    return lines, EXIT_OK


def cmd_scan(cfg):
    p = cfg["params"]
    spec = cfg["spec"]
    j_max = default_j_max(spec) if p["J_max"] is None else float(p["J_max"])
    j_min = j_max / 100 if p["J_min"] is None else float(p["J_min"])
    points = int(p["points"])
    if points < 1:
        raise ConfigError("points must be >= 1")
    grid = np.linspace(j_min, j_max, points)
    lines = _header("scan", cfg, [("J_min", fmt(j_min)), ("J_max", fmt(j_max)), ("points", points)])
    lines.append("J,mean_H,v,action_residual,one_form_residual,bound_margin")
    for J in grid:
        r = observable_report(spec, J, cfg["policy"])
        margin = 6.0 * (1.0 - J) - r.v if spec.kind is Kind.HYDROGEN1D else math.nan
        lines.append(
            ",".join(fmt(x) for x in (J, r.mean_H, r.v, r.action_residual, r.one_form_residual, margin))
        )
    return lines, EXIT_OK


def cmd_autocorr(cfg):
    p = cfg["params"]
    steps = int(p["steps"])
    if steps < 1 or not float(p["t_max"]) > 0:
        raise ConfigError("steps must be >= 1 and t_max > 0")
    grid = TimeGrid.uniform(float(p["t_max"]), steps)
    data = autocorrelation(cfg["spec"], float(p["J"]), grid, cfg["policy"])
    lines = _header("autocorr", cfg, [("J", fmt(float(p["J"]))), ("t_max", fmt(float(p["t_max"]))), ("steps", steps)])
    lines.append("t,P")
    lines += [f"{fmt(t)},{fmt(P)}" for t, P in data]
    return lines, EXIT_OK


def cmd_verify(cfg, timing=False):
    p = cfg["params"]
    report = run_verification(
        cfg["spec"],
        cfg["policy"],
        cfg["quad"],
        n_max=int(p["unity_n_max"]),
        gamma_window=float(p["gamma_window"]),
        j_max=None if p["J_max"] is None else float(p["J_max"]),
    )
    lines = _header(
        "verify",
        cfg,
        [
            ("quad", f"abs_tol={fmt(cfg['quad'].abs_tol)} rel_tol={fmt(cfg['quad'].rel_tol)}"),
            ("unity_n_max", p["unity_n_max"]),
            ("gamma_window", fmt(float(p["gamma_window"]))),
        ],
    )
    for c in report.checks:
        lines.append(f"# {c.status:7s} {c.name}")
    lines += report.lines(timing=timing)
    return lines, report.exit_code


COMMANDS = {
    "table": cmd_table,
    "state": cmd_state,
    "scan": cmd_scan,
    "autocorr": cmd_autocorr,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        cfg = resolve_config(args)
        if args.command == "verify":
            lines, code = cmd_verify(cfg, timing=args.timing)
        else:
            lines, code = COMMANDS[args.command](cfg)
    except ConfigError as exc:
        print(f"discrete-cs: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CoherentStateError as exc:
        print(f"discrete-cs: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    with _output(cfg["out"]) as fh:
        fh.write("\n".join(lines) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
