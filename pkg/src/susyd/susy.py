"""
Factorization of the Hulthén Hamiltonian.

With the superpotential w(x) = kappa - 1/(e^x - 1) and V0 = 1 + 2 kappa,

    H  = A^+ A + eps,   H~ = A A^+ + eps,   A = d/dx + w,   eps = -kappa^2,

the partner potential is V~ = V + 2 w'. Since kappa equals k_1, A kills the
Hulthén ground state and H~ keeps only the excited level.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, NamedTuple

import numpy as np
from scipy.integrate import simpson

from .errors import DomainError
from .hulthen import (
    BoundState,
    HulthenPotential,
    bound_state_count,
    eigenfunction,
    eigenvalue,
    inverse_expm1,
    normalize_on,
    quadrature_grid,
)

__all__ = [
    "Superpotential",
    "PartnerPotential",
    "PartnerState",
    "Darboux",
    "SusyPhase",
    "superpotential_from_strength",
    "riccati_residual",
    "partner_potential",
    "apply_A",
    "partner_state",
    "intertwining_residual",
    "classify_susy",
    "zero_mode",
    "zero_mode_norm",
]

# relative tolerance for matching a factorization energy against a level
LEVEL_MATCH_RTOL = 1e-12


@dataclass(frozen=True)
class Superpotential:
    kappa: float

    def __post_init__(self):
        if not self.kappa > 0:
            raise DomainError(f"kappa must be positive, got {self.kappa}")

    @property
    def factorization_energy(self) -> float:
        return -self.kappa**2

    @property
    def strength(self) -> float:
        """Hulthén strength this particular solution belongs to."""
        return 1.0 + 2.0 * self.kappa

    def __call__(self, x):
        return self.kappa - inverse_expm1(x)

    def derivative(self, x):
        # e^x / (e^x - 1)^2 written as g + g^2, g = 1/(e^x - 1)
        g = inverse_expm1(x)
        return g + g * g


def superpotential_from_strength(V0: float) -> Superpotential:
    if not V0 > 1:
        raise DomainError(f"V0 must exceed 1 for a positive kappa, got {V0}")
    return Superpotential((V0 - 1.0) / 2.0)


def _check_pair(w: Superpotential, pot: HulthenPotential) -> None:
    if not math.isclose(pot.strength, w.strength, rel_tol=1e-12, abs_tol=0.0):
        raise DomainError(
            f"superpotential kappa={w.kappa} needs V0={w.strength}, got V0={pot.strength}"
        )


def riccati_residual(w: Superpotential, pot: HulthenPotential, x, *, check: bool = True):
    """-w' + w^2 - (V - eps); zero for the matched pair V0 = 1 + 2 kappa."""
    if check:
        _check_pair(w, pot)
    wx = w(x)
    return -w.derivative(x) + wx * wx - (pot(x) - w.factorization_energy)


@dataclass(frozen=True)
class PartnerPotential:
    """V~(x) = -(1 + 2 kappa)/(e^x - 1) + 1/(2 sinh^2(x/2)); repulsive 2/x^2 core."""

    kappa: float
    kind: str = field(default="susy-partner", init=False)
    singularity_order: int = field(default=2, init=False)

    @property
    def strength(self) -> float:
        return 1.0 + 2.0 * self.kappa

    def __call__(self, x):
        xx = np.asarray(x, dtype=float)
        if np.any(xx <= 0.0):
            raise DomainError("x must be strictly positive")
        with np.errstate(over="ignore"):
            core = 0.5 / np.sinh(0.5 * xx) ** 2
        out = -self.strength * inverse_expm1(xx) + core
        return float(out) if np.ndim(out) == 0 else out

    def small_x(self, x):
        """Leading behaviour -(1 + 2 kappa)/x + 2/x^2 near the origin."""
        xx = np.asarray(x, dtype=float)
        return -self.strength / xx + 2.0 / xx**2


def partner_potential(w: Superpotential) -> PartnerPotential:
    return PartnerPotential(w.kappa)


class Darboux:
    """The function x -> psi'(x) + w(x) psi(x) for a differentiable sampler."""

    def __init__(self, w: Superpotential, psi):
        self.w = w
        self.psi = psi

    def __call__(self, x):
        xx = np.asarray(x, dtype=float)
        dpsi = self.psi.derivative(xx)
        psi = self.psi(xx)
        # psi/(e^x - 1) -> psi'(0) at the origin for psi(0) = 0
        at_origin = xx == 0.0
        safe = np.where(at_origin, 1.0, xx)
        pole = np.where(at_origin, dpsi, psi * inverse_expm1(safe))
        return dpsi + self.w.kappa * psi - pole


def apply_A(w: Superpotential, psi) -> Darboux:
    """
    Apply A = d/dx + w.

    ``psi`` must be callable and expose ``psi.derivative``; Hulthén
    eigenstates provide an exact derivative.
    """
    if not hasattr(psi, "derivative"):
        raise TypeError("psi must provide an analytic .derivative(x)")
    return Darboux(w, psi)


@dataclass(frozen=True)
class PartnerState:
    """Single bound state of H~: (E - eps)^{-1/2} A psi_2, quadrature-normalized."""

    energy: float
    kappa: float
    source: BoundState = field(repr=False)
    prefactor: float = field(repr=False)
    norm: float = field(repr=False)

    def unnormalized(self, x):
        """The Darboux image with only the (E - eps)^{-1/2} factor applied."""
        return self.prefactor * apply_A(Superpotential(self.kappa), self.source)(x)

    def __call__(self, x):
        return self.norm * self.unnormalized(x)


def partner_state(V0: float) -> PartnerState:
    if not 4.0 < V0 < 9.0:
        raise DomainError(
            f"partner construction needs exactly two Hulthén levels, i.e. V0 in (4, 9); got {V0}"
        )
    w = superpotential_from_strength(V0)
    psi2 = eigenfunction(V0, 2)
    prefactor = 1.0 / math.sqrt(psi2.energy - w.factorization_energy)
    draft = PartnerState(psi2.energy, w.kappa, psi2, prefactor, 1.0)
    norm = normalize_on(draft.unnormalized, quadrature_grid(psi2.k))
    return PartnerState(psi2.energy, w.kappa, psi2, prefactor, norm)


# 5-point central stencils, O(h^4)
def _d1(f: np.ndarray, h: float) -> np.ndarray:
    return (f[:-4] - 8.0 * f[1:-3] + 8.0 * f[3:-1] - f[4:]) / (12.0 * h)


def _d2(f: np.ndarray, h: float) -> np.ndarray:
    return (-f[:-4] + 16.0 * f[1:-3] - 30.0 * f[2:-2] + 16.0 * f[3:-1] - f[4:]) / (12.0 * h * h)


def intertwining_residual(
    w: Superpotential,
    pot: HulthenPotential,
    phi: Callable,
    grid: np.ndarray,
) -> float:
    """
    ||(H~ A - A H) phi||_2 / ||phi||_2 with 5-point finite differences.

    H = -D2 + V and H~ = -D2 + V~ share the stencils on ``grid``. The
    third-derivative pieces D2 D phi and D D2 phi are the same convolution
    on a uniform grid and cancel identically, so they are left out and the
    residual is pure O(h^4) truncation of the potential-dependent terms.
    """
    _check_pair(w, pot)
    x = np.asarray(grid, dtype=float)
    if x.ndim != 1 or x.size < 9:
        raise DomainError("grid must be 1-D with at least 9 points")
    h = x[1] - x[0]
    if not np.allclose(np.diff(x), h, rtol=1e-9, atol=0.0):
        raise DomainError("grid must be uniform")
    f = np.asarray(phi(x), dtype=float)
    if not np.any(f):
        raise DomainError("test function must not vanish identically")

    xi = x[2:-2]
    wi, vi = w(xi), pot(xi)
    vt = partner_potential(w)(xi)
    fi = f[2:-2]
    d1f, d2f = _d1(f, h), _d2(f, h)
    resid = (
        -_d2(w(x) * f, h)
        + vt * (d1f + wi * fi)
        - _d1(pot(x) * f, h)
        + wi * d2f
        - wi * vi * fi
    )
    num = simpson(resid**2, x=xi)
    den = simpson(fi**2, x=xi)
    return math.sqrt(num / den)


class SusyPhase(NamedTuple):
    phase: str  # "unbroken" | "broken"
    missing_level: int | None


def classify_susy(V0: float, eps: float) -> SusyPhase:
    """
    Unbroken when eps coincides with a Hulthén level (A removes it); broken
    otherwise, since the A^+ zero mode e^{kappa x}/(1 - e^{-x}) is never
    square integrable for kappa > 0.
    """
    if not V0 > 1:
        raise DomainError(f"V0 must exceed 1, got {V0}")
    for n in range(1, bound_state_count(V0) + 1):
        En, _ = eigenvalue(V0, n)
        if math.isclose(eps, En, rel_tol=LEVEL_MATCH_RTOL, abs_tol=0.0):
            return SusyPhase("unbroken", n)
    return SusyPhase("broken", None)


def zero_mode(w: Superpotential, x):
    """Solution of A^+ f = 0, up to a constant: e^{kappa x} / (1 - e^{-x})."""
    xx = np.asarray(x, dtype=float)
    return np.exp(w.kappa * xx) / -np.expm1(-xx)


def zero_mode_norm(w: Superpotential, upper: float, lower: float = 1.0, points: int = 20001) -> float:
    """
    Integral of the squared zero mode over [lower, upper].

    The lower cut avoids the 1/x^2 origin singularity, which is not
    integrable either.
    """
    x = np.linspace(lower, upper, points)
    return float(simpson(zero_mode(w, x) ** 2, x=x))
