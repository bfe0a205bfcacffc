"""Analytic-versus-oracle verification battery and its JSON report."""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Callable

import numpy as np
from scipy.integrate import simpson

from .deuteron import DeuteronCalibration
from .errors import DomainError
from .hulthen import (
    HulthenPotential,
    bound_state_count,
    eigenfunction,
    quadrature_grid,
)
from .solver import (
    RadialProblem,
    loglog_slope,
    sample,
    solve_bound_states,
    wavefunction_overlap,
)
from .susy import (
    PartnerPotential,
    apply_A,
    intertwining_residual,
    partner_state,
    riccati_residual,
    superpotential_from_strength,
)

SCHEMA_VERSION = "susyd.verify/1"

INTERTWINING_RANGE = (0.5, 40.0)
ORDER_BASE_POINTS = 1000
RICCATI_RANGE = (1e-3, 30.0)
ORIGIN_FIT = (1e-3, 1e-2)


@dataclass
class CheckRecord:
    """
    ``comparison`` says how ``tolerance`` is read: "abs" and "rel" bound the
    error, "max" bounds the oracle value from above, "min" from below,
    "exact" demands equality.
    """

    name: str
    analytic: float | None
    oracle: float | None
    abs_error: float | None
    rel_error: float | None
    tolerance: float
    comparison: str
    passed: bool
    detail: str = ""


def _record(name, analytic, oracle, tolerance, comparison, detail=""):
    abs_err = abs(oracle - analytic) if analytic is not None else None
    rel_err = abs_err / abs(analytic) if analytic not in (None, 0) else None
    if comparison == "abs":
        ok = abs_err <= tolerance
    elif comparison == "rel":
        ok = rel_err is not None and rel_err <= tolerance
    elif comparison == "max":
        ok = oracle <= tolerance
    elif comparison == "min":
        ok = oracle >= tolerance
    elif comparison == "exact":
        ok = oracle == analytic
    else:
        raise ValueError(comparison)
    if isinstance(oracle, float) and not math.isfinite(oracle):
        ok = False
    return CheckRecord(name, analytic, oracle, abs_err, rel_err, tolerance, comparison, bool(ok), detail)


def _failed(name, tolerance, comparison, exc):
    return CheckRecord(name, None, None, None, None, tolerance, comparison, False, f"{type(exc).__name__}: {exc}")


@dataclass
class VerificationReport:
    config: dict
    checks: list

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def as_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "config": self.config,
            "checks": [asdict(c) for c in self.checks],
            "passed": self.passed,
        }


def _hulthen_window(V0: float) -> tuple[float, float]:
    # -V0/(e^x - 1) >= -V0/x, so the Coulomb ground state bounds every level
    return (-(V0 * V0) / 4.0 - 1.0, -1e-6)


def _partner_window(pot: PartnerPotential) -> tuple[float, float]:
    x = np.linspace(1e-3, 50.0, 50_001)
    return (float(np.min(pot(x))) - 1.0, -1e-6)


def _run(checks: list, name: str, tolerance: float, comparison: str, fn: Callable):
    try:
        out = fn()
    except Exception as exc:  # every failure becomes a record
        checks.append(_failed(name, tolerance, comparison, exc))
        return None
    if isinstance(out, CheckRecord):
        checks.append(out)
    else:
        checks.extend(out)
    return out


def intertwining_order(w, pot, phi, base_points: int) -> tuple[float, float, float]:
    coarse = intertwining_residual(w, pot, phi, np.linspace(*INTERTWINING_RANGE, base_points))
    fine = intertwining_residual(w, pot, phi, np.linspace(*INTERTWINING_RANGE, 2 * base_points - 1))
    return math.log2(coarse / fine), coarse, fine


def run_battery(cal: DeuteronCalibration, grid_points: int = 200_000, config: dict | None = None) -> VerificationReport:
    V0 = cal.V0
    if not 4.0 < V0 < 9.0:
        raise DomainError(f"verification needs V0 in (4, 9), got {V0}")
    checks: list[CheckRecord] = []
    pot = HulthenPotential(V0)
    w = superpotential_from_strength(V0)
    partner = PartnerPotential(w.kappa)
    count = bound_state_count(V0)
    states = [eigenfunction(V0, n) for n in range(1, count + 1)]

    # Hulthén spectrum against the oracle
    hul = None

    def hulthen_checks():
        nonlocal hul
        hul = solve_bound_states(RadialProblem(pot, 1.0, grid_points=grid_points), _hulthen_window(V0), count + 1)
        out = [_record("hulthen.level_count", count, len(hul), 0, "exact", f"oracle energies {hul.energies}")]
        for lv in hul.levels:
            st = states[lv.n - 1] if lv.n <= count else None
            if st is None:
                continue
            out.append(_record(f"hulthen.E{lv.n}", st.energy, lv.energy, 1e-6, "rel"))
            out.append(_record(f"hulthen.nodes{lv.n}", lv.n - 1, lv.nodes, 0, "exact"))
            ov = abs(wavefunction_overlap(sample(st, lv.wavefunction.x), lv.wavefunction))
            out.append(_record(f"hulthen.overlap{lv.n}", 1.0, ov, 1e-6, "abs"))
        return out

    _run(checks, "hulthen.oracle", 1e-6, "rel", hulthen_checks)

    partner_sp = None

    def partner_checks():
        nonlocal partner_sp
        sp = partner_sp = solve_bound_states(RadialProblem(partner, 2.0, grid_points=grid_points), _partner_window(partner), count)
        E2 = states[1].energy
        out = [_record("partner.level_count", count - 1, len(sp), 0, "exact", f"oracle energies {sp.energies}")]
        if sp.levels:
            lv = sp.levels[0]
            out.append(_record("partner.E", E2, lv.energy, 1e-5, "abs"))
            out.append(_record("partner.E_MeV", cal.units.to_mev(E2), cal.units.to_mev(lv.energy), 5e-5, "abs"))
            out.append(_record("partner.nodes", 0, lv.nodes, 0, "exact"))
        return out

    _run(checks, "partner.oracle", 1e-5, "abs", partner_checks)

    def oracle_exponent():
        if not partner_sp or not partner_sp.levels:
            raise DomainError("no partner level from the oracle")
        wf = partner_sp.levels[0].wavefunction
        slope = loglog_slope(wf.x, wf.values, *ORIGIN_FIT)
        return _record("partner.oracle_origin_exponent", 2.0, slope, 0.05, "abs")

    _run(checks, "partner.oracle_origin_exponent", 0.05, "abs", oracle_exponent)

    def annihilation():
        x = quadrature_grid(states[0].k)
        a_psi = apply_A(w, states[0])(x)
        ratio = math.sqrt(simpson(a_psi**2, x=x) / simpson(states[0](x) ** 2, x=x))
        return _record("susy.annihilation", 0.0, ratio, 1e-8, "max")

    _run(checks, "susy.annihilation", 1e-8, "max", annihilation)

    _run(
        checks, "susy.intertwining", 1e-6, "max",
        lambda: _record(
            "susy.intertwining", 0.0,
            intertwining_residual(w, pot, states[1], np.linspace(*INTERTWINING_RANGE, grid_points)),
            1e-6, "max", f"psi_2 on x in {list(INTERTWINING_RANGE)}, {grid_points} points",
        ),
    )

    def order():
        base = min(grid_points, ORDER_BASE_POINTS)
        p, coarse, fine = intertwining_order(w, pot, states[1], base)
        return _record(
            "susy.intertwining_order", 4.0, p, 3.5, "min",
            f"residual {coarse:.3e} at {base} points, {fine:.3e} at {2 * base - 1} points",
        )

    _run(checks, "susy.intertwining_order", 3.5, "min", order)

    def riccati():
        x = np.linspace(*RICCATI_RANGE, grid_points)
        return _record("susy.riccati", 0.0, float(np.max(np.abs(riccati_residual(w, pot, x)))), 1e-9, "max")

    _run(checks, "susy.riccati", 1e-9, "max", riccati)

    def asymptotics():
        out = []
        for x, tol in ((0.01, 0.01), (0.1, 0.05)):
            exact = partner(x)
            approx = partner.small_x(x)
            out.append(_record(f"susy.small_x_{x:g}", 0.0, abs(approx - exact) / abs(exact), tol, "max"))
        return out

    _run(checks, "susy.small_x", 0.05, "max", asymptotics)

    def exponents():
        x = np.geomspace(*ORIGIN_FIT, 200)
        tilde = partner_state(V0)
        return [
            _record("origin_exponent.hulthen_ground", 1.0, loglog_slope(x, states[0](x), *ORIGIN_FIT), 0.05, "abs"),
            _record("origin_exponent.partner_state", 2.0, loglog_slope(x, tilde(x), *ORIGIN_FIT), 0.05, "abs"),
        ]

    _run(checks, "origin_exponent", 0.05, "abs", exponents)

    def orthonormality():
        out = []
        for st in states:
            x = quadrature_grid(st.k)
            out.append(_record(f"analytic.norm{st.n}", 1.0, float(simpson(st(x) ** 2, x=x)), 1e-8, "abs"))
        for i in range(len(states)):
            for j in range(i + 1, len(states)):
                x = quadrature_grid(min(states[i].k, states[j].k))
                ov = abs(float(simpson(states[i](x) * states[j](x), x=x)))
                out.append(_record(f"analytic.overlap{i + 1}{j + 1}", 0.0, ov, 1e-8, "max"))
        tilde = partner_state(V0)
        x = quadrature_grid(tilde.source.k)
        out.append(_record("analytic.partner_norm", 1.0, float(simpson(tilde(x) ** 2, x=x)), 1e-8, "abs"))
        return out

    _run(checks, "analytic.orthonormality", 1e-8, "abs", orthonormality)

    return VerificationReport(config or {}, checks)
