"""Comparison rows and their CSV / JSON serialization.

A row evaluates every representation at one point.  Column order is fixed
by :data:`COLUMNS` and versioned by :data:`SCHEMA_VERSION`; complex cells
become ``<name>_re`` / ``<name>_im`` pairs in CSV and ``{"re", "im"}``
objects in JSON.
"""

from __future__ import annotations

import csv
import io
import json
import math
import warnings
from dataclasses import dataclass

from . import __version__
from . import propagator as prop
from .errors import GUPError
from .params import OscillatorParams
from .propagator.types import ComplexDuration, Endpoints, SpectralTruncation

SCHEMA_VERSION = 1

AMPLITUDES = ("spectral", "corrected", "prd_claim", "prd_claim_S0_only", "free_gup")
LINEARIZED = ("spectral", "corrected", "prd_claim", "prd_claim_S0_only", "free_gup", "series_decomposition")
DISCREPANCIES = ("corrected", "prd_claim", "prd_claim_S0_only", "free_gup", "series_decomposition")

# (name, is_complex)
COLUMNS: tuple[tuple[str, bool], ...] = (
    ("m", False),
    ("omega", False),
    ("hbar", False),
    ("beta", False),
    ("q0", False),
    ("qf", False),
    ("t_real", False),
    ("tau", False),
    *((f"amp_{r}", True) for r in AMPLITUDES),
    *((f"k0_{r}", True) for r in LINEARIZED),
    *((f"k1_{r}", True) for r in LINEARIZED),
    *((f"reldiff_k1_{r}_vs_spectral", False) for r in DISCREPANCIES),
    ("spectral_certified", False),
    ("spectral_levels", False),
    ("warnings", False),
)


@dataclass(frozen=True)
class PointSpec:
    params: OscillatorParams
    endpoints: Endpoints
    duration: ComplexDuration
    trunc: SpectralTruncation


def _amplitude(rep: str, spec: PointSpec):
    ep, T, params = spec.endpoints, spec.duration, spec.params
    if rep == "spectral":
        return prop.spectral_kernel(ep, T, params, spec.trunc)
    if rep == "corrected":
        return prop.corrected_kernel(ep, T, params)
    if rep == "prd_claim":
        return prop.prd_claim_kernel(ep, T, params, "S0_plus_beta_S1")
    if rep == "prd_claim_S0_only":
        return prop.prd_claim_kernel(ep, T, params, "S0_only")
    return prop.free_gup_kernel(ep, T, params)


def comparison_row(spec: PointSpec) -> dict:
    """Evaluate all representations at one point; guard failures become warnings."""
    p, ep, T = spec.params, spec.endpoints, spec.duration
    row = {
        "m": p.m,
        "omega": p.omega,
        "hbar": p.hbar,
        "beta": p.beta,
        "q0": ep.q0,
        "qf": ep.qf,
        "t_real": T.t_real,
        "tau": T.tau,
    }
    notes: list[str] = []
    certified = None
    levels = None
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        for rep in AMPLITUDES:
            try:
                value = _amplitude(rep, spec)
                row[f"amp_{rep}"] = value.amplitude
                notes.extend(f"{rep}: {w}" for w in value.warnings)
            except GUPError as exc:
                row[f"amp_{rep}"] = None
                notes.append(f"amp_{rep}: {type(exc).__name__}: {exc}")
        first = {}
        for rep in LINEARIZED:
            try:
                coeff = prop.first_order_of(rep, ep, T, p.with_beta(0.0), spec.trunc)
                first[rep] = coeff
                row[f"k0_{rep}"], row[f"k1_{rep}"] = coeff.k0, coeff.k1
                if rep == "spectral":
                    certified, levels = coeff.certified, coeff.n_used
                elif rep == "series_decomposition" and not coeff.certified:
                    notes.append("series_decomposition: tail not certified")
            except GUPError as exc:
                row[f"k0_{rep}"] = row[f"k1_{rep}"] = None
                notes.append(f"k_{rep}: {type(exc).__name__}: {exc}")
    reference = first.get("spectral")
    for rep in DISCREPANCIES:
        other = first.get(rep)
        key = f"reldiff_k1_{rep}_vs_spectral"
        row[key] = abs(other.k1 - reference.k1) / abs(reference.k1) if reference and other else None
    if certified is False:
        notes.append("spectral: tail not certified")
    row["spectral_certified"] = certified
    row["spectral_levels"] = levels
    row["warnings"] = "; ".join(notes)
    return row


def header(config: dict) -> dict:
    return {
        "artifact": "gupprop",
        "version": __version__,
        "schema": SCHEMA_VERSION,
        "units": "m, omega, hbar as given; beta in (momentum)^-2",
        "config": config,
    }


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value) if math.isfinite(value) else str(value)
    return str(value)


def csv_columns(columns=COLUMNS) -> list[str]:
    names = []
    for name, is_complex in columns:
        names.extend([f"{name}_re", f"{name}_im"] if is_complex else [name])
    return names


def to_csv(rows: list[dict], head: dict | None = None, columns=COLUMNS) -> str:
    """RFC-4180 CSV; the header block is emitted as leading '#' comment lines."""
    buf = io.StringIO()
    if head:
        for key, value in _flatten(head):
            buf.write(f"# {key}={value}\r\n")
    writer = csv.writer(buf, lineterminator="\r\n")
    writer.writerow(csv_columns(columns))
    for row in rows:
        cells = []
        for name, is_complex in columns:
            value = row.get(name)
            if is_complex:
                if value is None:
                    cells.extend(["", ""])
                else:
                    z = complex(value)
                    cells.extend([_cell(z.real), _cell(z.imag)])
            else:
                cells.append(_cell(_plain(value)))
        writer.writerow(cells)
    return buf.getvalue()


def _flatten(mapping: dict, prefix: str = ""):
    for key, value in mapping.items():
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            yield from _flatten(value, name + ".")
        else:
            yield name, _cell(_plain(value))


def _plain(value):
    """Strip numpy scalar types and complex numbers for serialization."""
    if value is None or isinstance(value, (bool, str)):
        return value
    if hasattr(value, "item") and not isinstance(value, (list, dict)):
        value = value.item()
    if isinstance(value, complex):
        return {"re": value.real, "im": value.imag}
    if isinstance(value, dict):
        return {k: _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value


def to_json(rows: list[dict], head: dict | None = None) -> str:
    doc = {"header": _plain(head or {}), "rows": [_plain(r) for r in rows]}
    return json.dumps(doc, indent=1) + "\n"


def render(rows: list[dict], fmt: str, head: dict | None = None, columns=COLUMNS) -> str:
    if fmt == "csv":
        return to_csv(rows, head, columns)
    if fmt == "json":
        return to_json(rows, head)
    raise ValueError(f"unknown format {fmt!r}")
