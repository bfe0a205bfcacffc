"""
Physical units and the deuteron case study.

Dimensionless energies are E = (2 mu alpha^2 / hbar^2) * energy with
2 mu = m_p, so the conversion factor is hbar^2 / (alpha^2 m_p).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import simpson

from .errors import DomainError
from .hulthen import HulthenPotential, eigenfunction, eigenvalue, quadrature_grid
from .susy import PartnerPotential, partner_state

__all__ = [
    "HBARC_MEV_FM",
    "PROTON_MASS_MEV",
    "BINDING_ENERGY_MEV",
    "DEFAULT_ALPHA_FM",
    "Constants",
    "CODATA",
    "ROUNDED",
    "PRESETS",
    "PhysicalUnits",
    "DeuteronCalibration",
    "Table",
    "energy_scale",
    "calibrate",
    "calibrate_from_strength",
    "figure_grid",
    "figure1_data",
    "figure2_data",
    "exterior_probability",
]

# CODATA 2018
HBARC_MEV_FM = 197.3269804
PROTON_MASS_MEV = 938.27208816

BINDING_ENERGY_MEV = -2.22456614
DEFAULT_ALPHA_FM = 3.0

FIGURE_X_RANGE = (0.01, 8.0)
FIGURE_SAMPLES = 2000


@dataclass(frozen=True)
class Constants:
    """hbar^2 / m_p in MeV fm^2, the only combination the conversion needs."""

    name: str
    hbar2_over_mp: float

    @classmethod
    def from_values(cls, name: str, hbarc: float, proton_mass: float) -> "Constants":
        return cls(name, hbarc**2 / proton_mass)


CODATA = Constants.from_values("codata", HBARC_MEV_FM, PROTON_MASS_MEV)
# pinned so that alpha = 3 fm gives the quoted 4.6113 MeV
ROUNDED = Constants("rounded", 9.0 * 4.6113)
PRESETS = {c.name: c for c in (ROUNDED, CODATA)}


def energy_scale(alpha_fm: float, constants: Constants = ROUNDED) -> float:
    """hbar^2 / (alpha^2 m_p) in MeV."""
    if not alpha_fm > 0:
        raise DomainError(f"alpha must be positive, got {alpha_fm} fm")
    return constants.hbar2_over_mp / alpha_fm**2


@dataclass(frozen=True)
class PhysicalUnits:
    alpha_fm: float = DEFAULT_ALPHA_FM
    constants: Constants = ROUNDED

    def __post_init__(self):
        if not self.alpha_fm > 0:
            raise DomainError(f"alpha must be positive, got {self.alpha_fm} fm")

    @property
    def energy_scale(self) -> float:
        return energy_scale(self.alpha_fm, self.constants)

    def to_mev(self, E):
        return E * self.energy_scale

    def to_dimensionless(self, energy_mev):
        return energy_mev / self.energy_scale

    def to_fm(self, x):
        return x * self.alpha_fm


@dataclass(frozen=True)
class DeuteronCalibration:
    binding_energy_mev: float
    units: PhysicalUnits
    E_d: float
    k_d: float
    k_1: float
    V0: float
    nocore_V0: float

    @property
    def energy_scale_mev(self) -> float:
        return self.units.energy_scale

    @property
    def strength_mev(self) -> float:
        return self.V0 * self.energy_scale_mev

    @property
    def nocore_strength_mev(self) -> float:
        return self.nocore_V0 * self.energy_scale_mev

    def as_dict(self) -> dict:
        return {
            "binding_energy_mev": self.binding_energy_mev,
            "alpha_fm": self.units.alpha_fm,
            "constants": self.units.constants.name,
            "energy_scale_mev": self.energy_scale_mev,
            "E_d": self.E_d,
            "k_d": self.k_d,
            "k_1": self.k_1,
            "V0": self.V0,
            "strength_mev": self.strength_mev,
            "nocore_V0": self.nocore_V0,
            "nocore_strength_mev": self.nocore_strength_mev,
        }


def _two_level_check(V0: float) -> None:
    if not 4.0 < V0 < 9.0:
        raise DomainError(
            f"calibrated V0 = {V0:.6g} leaves the two-level domain (4, 9) "
            "required by the hard-core construction"
        )


def calibrate(
    E_d_MeV: float = BINDING_ENERGY_MEV,
    alpha_fm: float = DEFAULT_ALPHA_FM,
    constants: Constants = ROUNDED,
) -> DeuteronCalibration:
    """
    Fix the Hulthén strength so that its excited level (the only level of
    the partner potential) sits at the measured binding energy.
    """
    if not E_d_MeV < 0:
        raise DomainError(f"binding energy must be negative, got {E_d_MeV} MeV")
    units = PhysicalUnits(alpha_fm, constants)
    E_d = units.to_dimensionless(E_d_MeV)
    k_d = math.sqrt(-E_d)
    V0 = 4.0 * k_d + 4.0
    _two_level_check(V0)
    return DeuteronCalibration(
        binding_energy_mev=E_d_MeV,
        units=units,
        E_d=E_d,
        k_d=k_d,
        k_1=(4.0 * k_d + 3.0) / 2.0,
        V0=V0,
        nocore_V0=2.0 * k_d + 1.0,
    )


def calibrate_from_strength(
    V0: float,
    alpha_fm: float = DEFAULT_ALPHA_FM,
    constants: Constants = ROUNDED,
) -> DeuteronCalibration:
    """Inverse route: take V0 as given and derive the binding energy it implies."""
    _two_level_check(V0)
    units = PhysicalUnits(alpha_fm, constants)
    E_d, k_d = eigenvalue(V0, 2)
    return DeuteronCalibration(
        binding_energy_mev=units.to_mev(E_d),
        units=units,
        E_d=E_d,
        k_d=k_d,
        k_1=(V0 - 1.0) / 2.0,
        V0=V0,
        nocore_V0=2.0 * k_d + 1.0,
    )


@dataclass(frozen=True)
class Table:
    columns: tuple
    data: np.ndarray

    def column(self, name: str) -> np.ndarray:
        return self.data[:, self.columns.index(name)]


def figure_grid() -> np.ndarray:
    return np.linspace(*FIGURE_X_RANGE, FIGURE_SAMPLES)


def figure1_data(cal: DeuteronCalibration, x=None) -> Table:
    """Hulthén, partner and no-core potentials in MeV against r in fm."""
    x = figure_grid() if x is None else np.asarray(x, dtype=float)
    scale = cal.energy_scale_mev
    data = np.column_stack(
        [
            cal.units.to_fm(x),
            HulthenPotential(cal.V0)(x) * scale,
            PartnerPotential(cal.k_1)(x) * scale,
            HulthenPotential(cal.nocore_V0)(x) * scale,
            np.full_like(x, cal.binding_energy_mev),
        ]
    )
    return Table(("r_fm", "V_MeV", "V_partner_MeV", "V_nocore_MeV", "E_d_MeV"), data)


def figure2_data(cal: DeuteronCalibration, x=None) -> Table:
    """
    No-core and hard-core probability densities on the dimensionless grid.

    Each density column is normalized by Simpson's rule over the sampled
    grid itself, so the exported table integrates to one as written.
    """
    x = figure_grid() if x is None else np.asarray(x, dtype=float)
    nocore = eigenfunction(cal.nocore_V0, 1)(x) ** 2
    hardcore = partner_state(cal.V0)(x) ** 2
    nocore /= simpson(nocore, x=x)
    hardcore /= simpson(hardcore, x=x)
    return Table(("x", "density_nocore", "density_hardcore"), np.column_stack([x, nocore, hardcore]))


def exterior_probability(cal: DeuteronCalibration, x_cut: float = 1.0) -> float:
    """Probability that the hard-core state lies beyond r = x_cut * alpha."""
    state = partner_state(cal.V0)
    full = quadrature_grid(state.source.k)
    x = np.linspace(x_cut, full[-1], full.size)
    return float(simpson(state(x) ** 2, x=x))
