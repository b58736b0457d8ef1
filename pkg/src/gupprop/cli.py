"""Command-line front end.

Subcommands: ``eval`` (one point), ``scan`` (parameter grid), ``limits``
(omega -> 0 ladder) and ``verify`` (acceptance suite).  Options may also be
given in a flat ``key = value`` config file (``--config``); flags override
the file.

Exit codes: 0 success, 1 criterion failure, 2 usage error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import json
import math
import re
import sys
import warnings
from concurrent.futures import ProcessPoolExecutor
from itertools import product

import numpy as np

from . import __version__, report, verification
from . import propagator as prop
from .errors import GUPError
from .params import OscillatorParams
from .propagator.types import ComplexDuration, Endpoints, SpectralTruncation

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3

DEFAULTS = {
    "m": "1",
    "omega": "1",
    "hbar": "1",
    "beta": "1e-4",
    "q0": "0.3",
    "qf": "0.7",
    "T": "1",
    "tau": None,
    "nmax": "400",
    "nlimit": "12800",
    "tail_tol": "1e-10",
    "format": None,
    "out": None,
    "jobs": "1",
    "omegas": "1e-1,1e-2,1e-3,1e-4",
    "skip": "",
}

GRID_KEYS = ("omega", "beta", "T", "q0", "qf")


class UsageError(Exception):
    pass


def read_config(path: str) -> dict:
    """Parse a flat ``key = value`` (or ``key: value``) file; '#' starts a comment."""
    out = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            sep = "=" if "=" in line else ":" if ":" in line else None
            if sep is None:
                raise UsageError(f"{path}:{lineno}: expected key = value")
            key, value = (part.strip() for part in line.split(sep, 1))
            key = key.lstrip("-").replace("-", "_")
            if key == "t":
                key = "T"
            if key not in DEFAULTS:
                raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
            out[key] = value
    return out


def _settings(args) -> dict:
    merged = dict(DEFAULTS)
    if args.config:
        merged.update(read_config(args.config))
    for key in DEFAULTS:
        value = getattr(args, key, None)
        if value is not None:
            merged[key] = value
    return merged


def _float(settings, key) -> float:
    try:
        return float(settings[key])
    except (TypeError, ValueError):
        raise UsageError(f"--{key} expects a number, got {settings[key]!r}") from None


def parse_grid(text: str) -> list[float]:
    """'v' -> [v]; 'lo:hi:count' -> count evenly spaced values."""
    parts = str(text).split(":")
    try:
        if len(parts) == 1:
            return [float(parts[0])]
        if len(parts) == 3:
            lo, hi, count = float(parts[0]), float(parts[1]), int(parts[2])
            if count < 1:
                raise ValueError
            return [float(v) for v in np.linspace(lo, hi, count)] if count > 1 else [lo]
    except ValueError:
        pass
    raise UsageError(f"bad grid {text!r}: use VALUE or MIN:MAX:COUNT with COUNT >= 1")


def _truncation(settings) -> SpectralTruncation:
    n_max = int(_float(settings, "nmax"))
    n_limit = max(int(_float(settings, "nlimit")), n_max)
    return SpectralTruncation(n_max=n_max, tail_tol=_float(settings, "tail_tol"), n_limit=n_limit)


def _tau(settings, t_real: float) -> float:
    return 0.05 * t_real if settings["tau"] in (None, "") else _float(settings, "tau")


def _point(settings, omega, beta, t_real, q0, qf) -> report.PointSpec:
    params = OscillatorParams(
        m=_float(settings, "m"), omega=omega, hbar=_float(settings, "hbar"), beta=beta
    )
    return report.PointSpec(
        params, Endpoints(q0, qf), ComplexDuration(t_real, _tau(settings, t_real)), _truncation(settings)
    )


_UNUSED = {
    "eval": ("jobs", "omegas", "skip"),
    "scan": ("omegas", "skip", "jobs"),
    "limits": ("jobs", "skip", "tau", "nmax", "nlimit", "tail_tol", "omega"),
    "verify": tuple(k for k in DEFAULTS if k != "skip"),
}


def _config_echo(settings, command: str) -> dict:
    drop = set(_UNUSED[command]) | {"out", "format"}
    echo = {k: v for k, v in settings.items() if k not in drop}
    echo["command"] = command
    return echo


def _emit(text: str, settings) -> int:
    out = settings["out"]
    if not out:
        sys.stdout.write(text)
        return EXIT_OK
    try:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        print(f"error: cannot write {out}: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def _format(settings, default: str) -> str:
    fmt = settings["format"] or default
    if fmt not in ("csv", "json"):
        raise UsageError("--format must be csv or json")
    return fmt


# -- commands -----------------------------------------------------------------


def cmd_eval(settings) -> int:
    spec = _point(
        settings,
        _float(settings, "omega"),
        _float(settings, "beta"),
        _float(settings, "T"),
        _float(settings, "q0"),
        _float(settings, "qf"),
    )
    row = report.comparison_row(spec)
    fmt = _format(settings, "json")
    return _emit(report.render([row], fmt, report.header(_config_echo(settings, "eval"))), settings)


def scan_points(settings) -> list[report.PointSpec]:
    grids = {key: parse_grid(settings[key]) for key in GRID_KEYS}
    points = []
    for omega, beta, t_real, q0, qf in product(*(grids[k] for k in GRID_KEYS)):
        if not 0 < omega * t_real < math.pi:
            raise UsageError(f"grid point omega*T = {omega * t_real:.6g} outside (0, pi)")
        points.append(_point(settings, omega, beta, t_real, q0, qf))
    return points


def cmd_scan(settings) -> int:
    points = scan_points(settings)
    jobs = int(_float(settings, "jobs"))
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(report.comparison_row, points, chunksize=max(1, len(points) // (4 * jobs))))
    else:
        rows = [report.comparison_row(p) for p in points]
    fmt = _format(settings, "csv")
    head = report.header(_config_echo(settings, "scan"))
    head["rows"] = len(rows)
    return _emit(report.render(rows, fmt, head), settings)


LIMIT_COLUMNS = (
    ("omega", False),
    ("amp_corrected", True),
    ("amp_prd_claim", True),
    ("amp_free_gup", True),
    ("corrected_rel_dev", False),
    ("prd_claim_rel_dev", False),
    ("corrected_k1_rel_dev", False),
    ("prd_claim_k1_rel_dev", False),
)


def cmd_limits(settings) -> int:
    try:
        omegas = [float(w) for w in str(settings["omegas"]).split(",") if w.strip()]
    except ValueError:
        raise UsageError("--omegas expects a comma-separated list of numbers") from None
    if settings["tau"] not in (None, "") and _float(settings, "tau") != 0:
        raise UsageError("limits runs at real time; --tau must be 0 or omitted")
    ep = Endpoints(_float(settings, "q0"), _float(settings, "qf"))
    duration = _float(settings, "T")
    m, hbar, beta = _float(settings, "m"), _float(settings, "hbar"), _float(settings, "beta")
    rows = verification.free_limit_table(ep, duration, beta, omegas, m=m, hbar=hbar)
    T = ComplexDuration(duration, 0.0)
    for row in rows:
        params = OscillatorParams(m=m, omega=row["omega"], hbar=hbar, beta=beta)
        row["amp_corrected"] = prop.corrected_kernel(ep, T, params).amplitude
        row["amp_prd_claim"] = prop.prd_claim_kernel(ep, T, params).amplitude
        row["amp_free_gup"] = prop.free_gup_kernel(ep, T, params).amplitude
    devs = [r["corrected_rel_dev"] for r in rows]
    head = report.header(_config_echo(settings, "limits"))
    head["corrected_monotone"] = all(b < a for a, b in zip(devs, devs[1:]))
    fmt = _format(settings, "csv")
    if fmt == "csv":
        text = report.to_csv(rows, head, LIMIT_COLUMNS)
    else:
        text = report.to_json([{k: r[k] for k, _ in LIMIT_COLUMNS} for r in rows], head)
    return _emit(text, settings)


def cmd_verify(settings) -> int:
    try:
        skip = verification.expand_skip([settings["skip"]])
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    results = verification.run_all(skip, on_result=lambda r: print(r.line(), flush=True))
    failed = [r.name for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} criteria passed"
          + (f"; skipped {','.join(sorted(skip))}" if skip else ""))
    if failed:
        print(f"failing criteria: {', '.join(failed)}")
    detail = report._plain(
        {"header": report.header(_config_echo(settings, "verify")), "criteria": [r.as_dict() for r in results]}
    )
    text = json.dumps(detail, indent=1) + "\n"
    if settings["out"]:
        if _emit(text, settings) == EXIT_IO:
            return EXIT_IO
    elif settings["format"] == "json":
        sys.stdout.write(text)
    return EXIT_FAIL if failed else EXIT_OK


# -- parser -------------------------------------------------------------------

SCAN_EPILOG = (
    "Grid flags (--omega --beta --T --q0 --qf) take VALUE or MIN:MAX:COUNT; rows are "
    "ordered with omega outermost, then beta, T, q0, qf.  CSV columns (schema "
    f"{report.SCHEMA_VERSION}, complex values split into _re/_im pairs): "
    + ", ".join(name for name, _ in report.COLUMNS)
    + ".  amp_* are full kernels at the given beta; k0_*/k1_* are the beta^0 and beta^1 "
    "coefficients; reldiff_* compare k1 with the spectral sum.  CSV headers with the run "
    "configuration are written as leading '#' lines.  JSON is {header, rows} with rows "
    "an array of flat objects and complex values as {re, im}."
)


def _common(parser: argparse.ArgumentParser, grid: bool = False):
    g = parser.add_argument_group("physical point" + (" / grid" if grid else ""))
    kind = "VALUE or MIN:MAX:COUNT" if grid else "VALUE"
    g.add_argument("--m", help="mass (default 1)")
    g.add_argument("--omega", help=f"angular frequency, {kind} (default 1)")
    g.add_argument("--hbar", help="reduced Planck constant (default 1)")
    g.add_argument("--beta", help=f"GUP parameter, {kind} (default 1e-4)")
    g.add_argument("--q0", help=f"initial position, {kind} (default 0.3)")
    g.add_argument("--qf", help=f"final position, {kind} (default 0.7)")
    g.add_argument("--T", dest="T", help=f"real elapsed time, {kind} (default 1)")
    g.add_argument("--tau", help="damping; T is evaluated at T - i tau (default 0.05*T)")
    n = parser.add_argument_group("truncation and output")
    n.add_argument("--nmax", help="initial level truncation (default 400)")
    n.add_argument("--nlimit", help="largest truncation tried while certifying tails (default 12800)")
    n.add_argument("--tail-tol", dest="tail_tol", help="relative tail tolerance (default 1e-10)")
    n.add_argument("--format", choices=("csv", "json"))
    n.add_argument("--out", help="output file (default stdout)")
    n.add_argument("--config", help="flat key = value file; flags override it")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gupprop", description="First-order GUP oscillator propagator checks."
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="evaluate every representation at one point")
    _common(p_eval)
    p_eval.set_defaults(handler=cmd_eval)

    p_scan = sub.add_parser("scan", help="comparison rows over a parameter grid", epilog=SCAN_EPILOG)
    _common(p_scan, grid=True)
    p_scan.add_argument("--jobs", help="worker processes (default 1); output order is fixed")
    p_scan.set_defaults(handler=cmd_scan)

    p_lim = sub.add_parser("limits", help="corrected and published kernels along an omega -> 0 ladder")
    _common(p_lim)
    p_lim.add_argument("--omegas", help="comma-separated ladder (default 1e-1,1e-2,1e-3,1e-4)")
    p_lim.set_defaults(handler=cmd_limits)

    p_ver = sub.add_parser("verify", help="run the acceptance criteria A1-A8")
    p_ver.add_argument("--skip", help="comma-separated criteria (A1..A8) or groups (classical, spectrum, mehler)")
    p_ver.add_argument("--format", choices=("csv", "json"), help="json also prints the detail report")
    p_ver.add_argument("--out", help="write the JSON detail report here")
    p_ver.add_argument("--config", help="flat key = value file")
    p_ver.set_defaults(handler=cmd_verify)
    return parser


_NEGATIVE = re.compile(r"^-\.?\d")


def _bind_negative_values(argv: list[str]) -> list[str]:
    """Turn ``--q0 -0.8:0.7:5`` into ``--q0=-0.8:0.7:5`` so argparse keeps the value."""
    out = []
    i = 0
    while i < len(argv):
        token = argv[i]
        if token.startswith("--") and "=" not in token and i + 1 < len(argv) and _NEGATIVE.match(argv[i + 1]):
            out.append(f"{token}={argv[i + 1]}")
            i += 2
        else:
            out.append(token)
            i += 1
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(_bind_negative_values(argv))
    try:
        settings = _settings(args)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", RuntimeWarning)
            return args.handler(settings)
    except UsageError as exc:
        print(f"gupprop {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"gupprop {args.command}: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (GUPError, ValueError) as exc:
        print(f"gupprop {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
