"""
Analytic Hulthén problem in the dimensionless variable x = r / alpha.

The S-wave radial equation reads

    psi'' + V0 / (e^x - 1) psi - k^2 psi = 0,

with bound states at E_n = -k_n^2, k_n = (V0 - n^2) / (2n), for every n with
V0 > n^2. Eigenfunctions are kept in the form

    psi_n(x) = C e^{-kx} (1 - e^{-x}) 2F1(2k+1+n, 1-n; 2k+1; e^{-x}),

which is a finite sum of decaying exponentials, so value and derivative are
both available in closed form.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import simpson

from .errors import DomainError
from .specfun import gamma_ratio, hyp2f1_coefficients, hyp2f1_terminating

__all__ = [
    "HulthenPotential",
    "BoundState",
    "Spectrum",
    "inverse_expm1",
    "potential_value",
    "bound_state_count",
    "eigenvalue",
    "eigenfunction",
    "spectrum",
    "quadrature_grid",
    "normalize_on",
]

# below this the Laurent expansion of 1/(e^x - 1) is used
SMALL_X = 1e-4
QUADRATURE_INTERVALS = 200_000


def inverse_expm1(x):
    """1 / (e^x - 1) for x > 0, switching to 1/x - 1/2 + x/12 below SMALL_X."""
    xx = np.asarray(x, dtype=float)
    with np.errstate(over="ignore", divide="ignore"):
        out = np.where(
            xx < SMALL_X,
            1.0 / xx - 0.5 + xx / 12.0,
            1.0 / np.expm1(np.maximum(xx, SMALL_X)),
        )
    if out.ndim == 0:
        return float(out)
    return out


def _check_positive_x(x) -> np.ndarray:
    xx = np.asarray(x, dtype=float)
    if np.any(xx <= 0.0):
        raise DomainError("x must be strictly positive")
    return xx


@dataclass(frozen=True)
class HulthenPotential:
    """V(x) = -V0 / (e^x - 1); Coulomb-like (order 1) singularity at the origin."""

    strength: float
    kind: str = field(default="hulthen", init=False)
    singularity_order: int = field(default=1, init=False)

    def __post_init__(self):
        if not self.strength > 0:
            raise DomainError(f"Hulthén strength must be positive, got {self.strength}")

    def __call__(self, x):
        return potential_value(self, x)


def potential_value(pot: HulthenPotential, x):
    xx = _check_positive_x(x)
    out = -pot.strength * inverse_expm1(xx)
    return out


def bound_state_count(V0: float) -> int:
    """Largest n with V0 > n^2 (strict)."""
    if not V0 > 0:
        raise DomainError(f"V0 must be positive, got {V0}")
    n = math.isqrt(math.floor(V0))
    return n - 1 if n * n >= V0 else n


def eigenvalue(V0: float, n: int) -> tuple[float, float]:
    """Return ``(E_n, k_n)`` with E_n = -k_n^2 and k_n = (V0 - n^2) / (2n)."""
    if int(n) != n or n < 1:
        raise DomainError(f"n must be a positive integer, got {n}")
    if not V0 > n * n:
        raise DomainError(f"no bound state n={n} for V0={V0}: need V0 > n^2")
    k = (V0 - n * n) / (2 * n)
    return -k * k, k


def quadrature_grid(k: float) -> np.ndarray:
    """Uniform Simpson grid on [0, max(30, 30/k)] with 2e5 intervals."""
    x_max = max(30.0, 30.0 / k)
    return np.linspace(0.0, x_max, QUADRATURE_INTERVALS + 1)


def normalize_on(f, x: np.ndarray) -> float:
    """Return the factor that makes ``f`` unit-normalized on grid ``x``."""
    return 1.0 / math.sqrt(simpson(np.asarray(f(x)) ** 2, x=x))


@dataclass(frozen=True)
class BoundState:
    """
    Normalized Hulthén eigenstate.

    ``exponents`` and ``weights`` hold the expansion
    psi(x) = norm * sum_m weights[m] exp(-exponents[m] x),
    used for the analytic derivative.
    """

    n: int
    energy: float
    k: float
    strength: float
    norm: float
    series: np.ndarray = field(repr=False)
    exponents: np.ndarray = field(repr=False)
    weights: np.ndarray = field(repr=False)

    def _shape(self, x):
        xx = np.asarray(x, dtype=float)
        z = np.exp(-xx)
        poly = hyp2f1_terminating(2 * self.k + 1 + self.n, self.n, 2 * self.k + 1, z)
        return np.exp(-self.k * xx) * -np.expm1(-xx) * poly

    def __call__(self, x):
        return self.norm * self._shape(x)

    def derivative(self, x):
        xx = np.asarray(x, dtype=float)[..., None]
        terms = -self.exponents * self.weights * np.exp(-self.exponents * xx)
        return self.norm * terms.sum(axis=-1)

    @property
    def closed_form_norm(self) -> float:
        """Normalization constant from the Gamma-function formula at alpha = 1."""
        n, k = self.n, self.k
        return gamma_ratio(n, k) * math.sqrt(2 * k * (n + k) * (n + 2 * k))


def eigenfunction(V0: float, n: int) -> BoundState:
    energy, k = eigenvalue(V0, n)
    t = hyp2f1_coefficients(2 * k + 1 + n, n, 2 * k + 1)
    # (1 - z) * sum_j t_j z^j, coefficients in powers of z = e^{-x}
    weights = np.concatenate([t, [0.0]]) - np.concatenate([[0.0], t])
    exponents = k + np.arange(n + 1, dtype=float)
    raw = BoundState(n, energy, k, V0, 1.0, t, exponents, weights)
    norm = normalize_on(raw, quadrature_grid(k))
    return BoundState(n, energy, k, V0, norm, t, exponents, weights)


@dataclass(frozen=True)
class Spectrum:
    levels: tuple
    provenance: str = "analytic"

    @property
    def energies(self) -> list[float]:
        return [float(lv.energy) for lv in self.levels]

    def __len__(self):
        return len(self.levels)


def spectrum(V0: float) -> Spectrum:
    """All analytic bound states of the Hulthén well of strength V0."""
    count = bound_state_count(V0)
    return Spectrum(tuple(eigenfunction(V0, n) for n in range(1, count + 1)))
