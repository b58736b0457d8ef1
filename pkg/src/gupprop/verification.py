"""Acceptance suite: criteria A1-A8 as runnable checks.

Each ``check_*`` returns a :class:`CriterionResult`; :func:`run_all` runs the
suite in order.  Tolerances and runtime budgets are module constants.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from itertools import product

import numpy as np

from . import classical, kernels, spectrum
from . import propagator as prop
from .params import OscillatorParams
from .propagator.types import ComplexDuration, Endpoints, SpectralTruncation


@dataclass
class CriterionResult:
    name: str
    title: str
    passed: bool
    runtime: float
    budget: float
    detail: dict = field(default_factory=dict)
    summary: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        measured = f": {self.summary}" if self.summary else ""
        return f"[{status}] {self.name} {self.title}{measured} ({self.runtime:.2f} s / {self.budget:.0f} s)"

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "title": self.title,
            "passed": self.passed,
            "summary": self.summary,
            "runtime_s": round(self.runtime, 3),
            "budget_s": self.budget,
            "detail": self.detail,
        }


A1_TOL = 1e-3
A2_SEPARATION = 10.0
A2_FRACTION = 0.9
A3_TOL = 1e-8
A4_TOL = 1e-6
A5_FACTOR = 2.0
A6_TOL = 1e-10
A7_ENVELOPE_TOL = 1e-4
A7_SLOPE_TOL = 1e-3
A7_S0_TOL = 1e-7
A8_TOL = 1e-8
A8_SEMIGROUP_TOL = 1e-6

BUDGETS = {"A1": 30.0, "A2": 30.0, "A3": 60.0, "A4": 1.0, "A5": 10.0, "A6": 5.0, "A7": 20.0, "A8": 30.0}
GROUPS = {"classical": ("A7",), "spectrum": ("A5",), "mehler": ("A6",)}


@dataclass(frozen=True)
class EvalPoint:
    omega: float
    t_real: float
    q0: float
    qf: float

    @property
    def params(self) -> OscillatorParams:
        return OscillatorParams(m=1.0, omega=self.omega, hbar=1.0, beta=0.0)

    @property
    def endpoints(self) -> Endpoints:
        return Endpoints(self.q0, self.qf)

    @property
    def duration(self) -> ComplexDuration:
        return ComplexDuration(self.t_real, 0.05 * self.t_real)

    def label(self) -> dict:
        return {"omega": self.omega, "t_real": self.t_real, "q0": self.q0, "qf": self.qf}


def default_points() -> list[EvalPoint]:
    """The point set P: omega, t_real, q0, qf grids with omega * t_real < pi."""
    grid = product((0.7, 1.0, 1.6), (0.6, 1.0, 2.2), (-0.8, 0.3, 0.7), (-0.8, 0.3, 0.7))
    return [EvalPoint(*g) for g in grid if g[0] * g[1] < math.pi]


DEFAULT_TRUNC = SpectralTruncation(n_max=400)


def _rel(a: complex, b: complex) -> float:
    return abs(a - b) / abs(b)


def _timed(fn):
    start = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - start


# -- A1 / A2 -----------------------------------------------------------------


def _first_order_table(points, trunc):
    rows = []
    for pt in points:
        ep, T, params = pt.endpoints, pt.duration, pt.params
        spec = prop.spectral_first_order(ep, T, params, trunc)
        corr = prop.corrected_first_order(ep, T, params)
        prd = prop.prd_claim_first_order(ep, T, params, "S0_plus_beta_S1")
        prd0 = prop.prd_claim_first_order(ep, T, params, "S0_only")
        rows.append(
            {
                **pt.label(),
                "certified": spec.certified,
                "n_used": spec.n_used,
                "corrected": _rel(corr.k1, spec.k1),
                "prd_S0_plus_beta_S1": _rel(prd.k1, spec.k1),
                "prd_S0_only": _rel(prd0.k1, spec.k1),
            }
        )
    return rows


def check_A1_A2(points=None, trunc: SpectralTruncation = DEFAULT_TRUNC) -> tuple[CriterionResult, CriterionResult]:
    points = points or default_points()
    rows, runtime = _timed(lambda: _first_order_table(points, trunc))
    worst = max(r["corrected"] for r in rows)
    uncertified = [r for r in rows if not r["certified"]]
    a1 = CriterionResult(
        "A1",
        "corrected k1 = spectral k1",
        passed=worst < A1_TOL and not uncertified and runtime < BUDGETS["A1"],
        runtime=runtime,
        budget=BUDGETS["A1"],
        detail={
            "points": len(rows),
            "max_rel_residual": worst,
            "tolerance": A1_TOL,
            "uncertified_points": len(uncertified),
            "max_levels_used": max(r["n_used"] for r in rows),
        },
        summary=f"max rel residual {worst:.2e} (tol {A1_TOL:g}) over {len(rows)} points",
    )

    threshold = A2_SEPARATION * A1_TOL
    detail = {
        "threshold": threshold,
        "a1_max_residual": worst,
        "required_fraction": A2_FRACTION,
    }
    passed = True
    summary = []
    for variant in ("prd_S0_plus_beta_S1", "prd_S0_only"):
        separated = [r[variant] > max(threshold, A2_SEPARATION * r["corrected"]) for r in rows]
        fraction = sum(separated) / len(rows)
        detail[variant] = {
            "fraction_separated": fraction,
            "min_rel_discrepancy": min(r[variant] for r in rows),
            "coincidental_points": [
                {**{k: r[k] for k in ("omega", "t_real", "q0", "qf")}, "rel_discrepancy": r[variant]}
                for r, ok in zip(rows, separated)
                if not ok
            ],
        }
        passed = passed and fraction >= A2_FRACTION
        summary.append(f"{variant} separated at {fraction:.0%} (need {A2_FRACTION:.0%})")
    a2 = CriterionResult(
        "A2",
        "published k1 != spectral k1",
        passed=passed and runtime < BUDGETS["A2"],
        runtime=runtime,
        budget=BUDGETS["A2"],
        detail=detail,
        summary="; ".join(summary),
    )
    return a1, a2


# -- A3 -----------------------------------------------------------------------


def check_A3(points=None, trunc: SpectralTruncation = DEFAULT_TRUNC) -> CriterionResult:
    points = points or default_points()

    def run():
        worst = {}
        certified = True
        for pt in points:
            ep, T, params = pt.endpoints, pt.duration, pt.params
            series = prop.series_decomposition(ep, T, params, trunc)
            certified = certified and series.certified
            j_closed = prop.closedform_J_first_order(ep, T, params)
            scale = prop.tilde_scale(ep, T, params)
            triples = {
                "J0": (series.j0, j_closed.k0, scale),
                "J1": (series.j1, j_closed.k1, scale * prop.tilde_J_first_order(ep, T, params)),
                "K1": (series.k1, prop.closedform_K1(ep, T, params), scale * prop.tilde_K1(ep, T, params)),
                "K2": (series.k2, None, scale * prop.tilde_K2(ep, T, params)),
            }
            for name, values in triples.items():
                pairs = [(a, b) for i, a in enumerate(values) for b in values[i + 1:] if a is not None and b is not None]
                err = max(_rel(a, b) for a, b in pairs)
                worst[name] = max(worst.get(name, 0.0), err)
        return worst, certified

    (worst, certified), runtime = _timed(run)
    return CriterionResult(
        "A3",
        "series = closed form = tilde form",
        passed=max(worst.values()) < A3_TOL and certified and runtime < BUDGETS["A3"],
        runtime=runtime,
        budget=BUDGETS["A3"],
        detail={"max_rel_pairwise": worst, "tolerance": A3_TOL, "all_certified": certified},
        summary=f"max pairwise rel {max(worst.values()):.2e} (tol {A3_TOL:g})",
    )


# -- A4 -----------------------------------------------------------------------

OMEGA_LADDER = (1e-1, 1e-2, 1e-3, 1e-4)


def free_limit_table(ep: Endpoints, duration: float, beta: float, omegas=OMEGA_LADDER, m=1.0, hbar=1.0):
    """Relative deviation of corrected and published kernels from the free GUP kernel."""
    rows = []
    for w in omegas:
        params = OscillatorParams(m=m, omega=w, hbar=hbar, beta=beta)
        T = ComplexDuration(duration, 0.0)
        free = prop.free_gup_kernel(ep, T, params).amplitude
        corr = prop.corrected_kernel(ep, T, params).amplitude
        prd = prop.prd_claim_kernel(ep, T, params).amplitude
        free1 = prop.free_gup_first_order(ep, T, params).k1
        rows.append(
            {
                "omega": w,
                "corrected_rel_dev": _rel(corr, free),
                "prd_claim_rel_dev": _rel(prd, free),
                "corrected_k1_rel_dev": _rel(prop.corrected_first_order(ep, T, params).k1, free1),
                "prd_claim_k1_rel_dev": _rel(prop.prd_claim_first_order(ep, T, params).k1, free1),
            }
        )
    return rows


def check_A4(beta: float = 1e-3) -> CriterionResult:
    rows, runtime = _timed(lambda: free_limit_table(Endpoints(0.3, 0.7), 1.0, beta))
    devs = [r["corrected_rel_dev"] for r in rows]
    monotone = all(b < a for a, b in zip(devs, devs[1:]))
    return CriterionResult(
        "A4",
        "omega -> 0 limit is the free GUP kernel",
        passed=devs[-1] < A4_TOL and monotone and runtime < BUDGETS["A4"],
        runtime=runtime,
        budget=BUDGETS["A4"],
        detail={"beta": beta, "ladder": rows, "monotone": monotone, "tolerance": A4_TOL},
        summary=f"rel dev {devs[-1]:.2e} at omega={rows[-1]['omega']:g} (tol {A4_TOL:g}), "
        + ("monotone" if monotone else "not monotone"),
    )


# -- A5 -----------------------------------------------------------------------


def check_A5(n_levels: int = 10, n_basis: int = 64, betas=(1e-3, 5e-4, 2.5e-4)) -> CriterionResult:
    def run():
        ratios = {n: [] for n in range(n_levels + 1)}
        for beta in betas:
            params = OscillatorParams(beta=beta)
            values = spectrum.diagonalize_oracle(params, n_basis)
            for n in ratios:
                ratios[n].append(abs(values[n] - spectrum.perturbed_energy(n, params)) / beta**2)
        return ratios

    ratios, runtime = _timed(run)
    spread = {n: max(r) / min(r) for n, r in ratios.items()}
    bounded = all(np.isfinite(r).all() and max(r) < 1e7 for r in ratios.values())
    return CriterionResult(
        "A5",
        "PT energies agree with diagonalization to O(beta^2)",
        passed=bounded and max(spread.values()) <= A5_FACTOR and runtime < BUDGETS["A5"],
        runtime=runtime,
        budget=BUDGETS["A5"],
        detail={
            "betas": list(betas),
            "n_basis": n_basis,
            "residual_over_beta2": {str(n): r for n, r in ratios.items()},
            "max_spread": max(spread.values()),
        },
        summary=f"max spread of residual/beta^2 {max(spread.values()):.3f} (limit {A5_FACTOR:g})",
    )


# -- A6 -----------------------------------------------------------------------

MEHLER_T_VALUES = (0.05, 0.1 + 0.2j, -0.3, 0.38j)


def mehler_sample_points(count: int = 25, seed: int = 20190104) -> np.ndarray:
    return np.random.default_rng(seed).uniform(-2.0, 2.0, size=(count, 2))


def check_A6(max_index: int = 6, k_max: int = 260) -> CriterionResult:
    def run():
        worst = 0.0
        uncertified = 0
        points = mehler_sample_points()
        for m_off, n_off, t in product(range(max_index + 1), range(max_index + 1), MEHLER_T_VALUES):
            values, _, certified = kernels.mehler_series_batch(m_off, n_off, t, points[:, 0], points[:, 1], k_max)
            uncertified += int((~certified).sum())
            for (x, y), series in zip(points, values):
                closed = kernels.mehler_extended(kernels.MehlerArgs(m_off, n_off, t, float(x), float(y)))
                worst = max(worst, _rel(closed, series))
        return worst, uncertified

    (worst, uncertified), runtime = _timed(run)
    return CriterionResult(
        "A6",
        "extended Mehler closed form = series",
        passed=worst <= A6_TOL and uncertified == 0 and runtime < BUDGETS["A6"],
        runtime=runtime,
        budget=BUDGETS["A6"],
        detail={"max_rel_error": worst, "uncertified": uncertified, "tolerance": A6_TOL},
        summary=f"max rel error {worst:.2e} (tol {A6_TOL:g})",
    )


# -- A7 -----------------------------------------------------------------------


def classical_points():
    pairs = ((-0.8, 0.3), (0.3, 0.7), (0.7, -0.8))
    return [(q0, qf, t) for (q0, qf), t in product(pairs, (0.6, 1.0, 2.2))]


def check_A7(omega: float = 1.0) -> CriterionResult:
    params = OscillatorParams(omega=omega)

    def run():
        rows = []
        for q0, qf, duration in classical_points():
            ep = Endpoints(q0, qf)
            exact_s1 = prop.s1(ep, duration, params).real
            exact_s0 = prop.s0(ep, duration, params).real
            s_zero = classical.action_along(classical.solve_bvp(ep, duration, params))
            env = classical.envelope_slope(ep, duration, params)
            slope = classical.action_beta_slope(ep, duration, params)
            rows.append(
                {
                    "q0": q0,
                    "qf": qf,
                    "T": duration,
                    "s0_rel": abs(s_zero - exact_s0) / abs(exact_s0),
                    "envelope_rel": abs(env - exact_s1) / abs(exact_s1),
                    "slope_rel": abs(slope.value - exact_s1) / abs(exact_s1),
                    "slope_flagged": slope.flagged,
                }
            )
        return rows

    rows, runtime = _timed(run)
    worst = {k: max(r[k] for r in rows) for k in ("s0_rel", "envelope_rel", "slope_rel")}
    passed = (
        worst["s0_rel"] < A7_S0_TOL
        and worst["envelope_rel"] < A7_ENVELOPE_TOL
        and worst["slope_rel"] < A7_SLOPE_TOL
        and runtime < BUDGETS["A7"]
    )
    return CriterionResult(
        "A7",
        "classical action S0 + beta S1 from shooting",
        passed=passed,
        runtime=runtime,
        budget=BUDGETS["A7"],
        detail={"worst": worst, "points": rows},
        summary=(
            f"envelope {worst['envelope_rel']:.2e} (tol {A7_ENVELOPE_TOL:g}), "
            f"slope {worst['slope_rel']:.2e} (tol {A7_SLOPE_TOL:g}), "
            f"S0 {worst['s0_rel']:.2e} (tol {A7_S0_TOL:g})"
        ),
    )


# -- A8 -----------------------------------------------------------------------

SEMIGROUP_POINTS = (
    # omega, (t1, tau1), (t2, tau2), q0, qf
    (1.0, (0.6, 0.12), (1.0, 0.2), 0.3, 0.7),
    (0.7, (1.0, 0.2), (2.2, 0.44), -0.8, 0.3),
    (1.6, (0.6, 0.12), (1.0, 0.2), 0.7, -0.8),
)


def semigroup_residual(omega, first, second, q0, qf, half_width=40.0, nodes=40001) -> float:
    """|int K0(qf, T2; q) K0(q, T1; q0) dq - K0(qf, T1 + T2; q0)| / |K0(qf, T1 + T2; q0)|.

    Trapezoid rule on [-half_width, half_width]; the damped Gaussian
    integrand makes it spectrally accurate.
    """
    params = OscillatorParams(omega=omega)
    mu1 = omega * complex(first[0], -first[1])
    mu2 = omega * complex(second[0], -second[1])
    q = np.linspace(-half_width, half_width, nodes)
    integrand = kernels.mehler_oscillator_kernel(mu2, q, qf, params) * kernels.mehler_oscillator_kernel(
        mu1, q0, q, params
    )
    value = np.trapezoid(integrand, q) if hasattr(np, "trapezoid") else np.trapz(integrand, q)
    target = kernels.mehler_oscillator_kernel(mu1 + mu2, q0, qf, params)
    return float(abs(value - target) / abs(target))


def check_A8(points=None, trunc: SpectralTruncation = DEFAULT_TRUNC) -> CriterionResult:
    points = points or default_points()

    def run():
        worst = {}
        certified = True
        for pt in points:
            ep, T, params = pt.endpoints, pt.duration, pt.params
            ref = kernels.mehler_oscillator_kernel(params.omega * T.value, ep.q0, ep.qf, params)
            spec = prop.spectral_kernel(ep, T, params, trunc)
            certified = certified and spec.certified
            values = {
                "spectral": spec.amplitude,
                "corrected": prop.corrected_kernel(ep, T, params).amplitude,
                "prd_S0_plus_beta_S1": prop.prd_claim_kernel(ep, T, params, "S0_plus_beta_S1").amplitude,
                "prd_S0_only": prop.prd_claim_kernel(ep, T, params, "S0_only").amplitude,
                "closedform_J": prop.closedform_J(ep, T, params),
            }
            for name, v in values.items():
                worst[name] = max(worst.get(name, 0.0), _rel(v, ref))
        semigroup = [semigroup_residual(*p) for p in SEMIGROUP_POINTS]
        return worst, certified, semigroup

    (worst, certified, semigroup), runtime = _timed(run)
    passed = (
        max(worst.values()) < A8_TOL
        and certified
        and max(semigroup) < A8_SEMIGROUP_TOL
        and runtime < BUDGETS["A8"]
    )
    return CriterionResult(
        "A8",
        "beta = 0 anchor: all forms equal the Mehler kernel",
        passed=passed,
        runtime=runtime,
        budget=BUDGETS["A8"],
        detail={"max_rel": worst, "semigroup_rel": semigroup, "all_certified": certified},
        summary=(
            f"max rel {max(worst.values()):.2e} (tol {A8_TOL:g}), "
            f"semigroup {max(semigroup):.2e} (tol {A8_SEMIGROUP_TOL:g})"
        ),
    )


# -- suite --------------------------------------------------------------------


def expand_skip(skip) -> set[str]:
    out = set()
    for item in skip or ():
        for token in str(item).split(","):
            token = token.strip()
            if not token:
                continue
            if token in GROUPS:
                out.update(GROUPS[token])
            elif token.upper() in BUDGETS:
                out.add(token.upper())
            else:
                raise ValueError(f"unknown criterion or group {token!r}")
    return out


def run_all(skip=(), on_result=None) -> list[CriterionResult]:
    """Run every criterion not in ``skip``; ``on_result`` is called as each finishes."""
    skipped = expand_skip(skip)
    results = []

    def emit(result):
        results.append(result)
        if on_result:
            on_result(result)

    if not {"A1", "A2"} <= skipped:
        for r in check_A1_A2():
            if r.name not in skipped:
                emit(r)
    checks = {"A3": check_A3, "A4": check_A4, "A5": check_A5, "A6": check_A6, "A7": check_A7, "A8": check_A8}
    for name, check in checks.items():
        if name not in skipped:
            emit(check())
    return results
