"""
Numerov shooting oracle for bound states of y'' = (V(x) - E) y on (0, inf).

Levels are bracketed by Sturm node counting of the outward solution and then
refined by bisection on the log-derivative mismatch at the outermost classical
turning point, with the mismatch multiplied through by psi_L psi_R so it has no
poles. Nothing here uses the analytic Hulthén results.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.integrate import simpson

from ._numerov import inward, inward_tail, outward, outward_tail
from .errors import ConvergenceError, DomainError

__all__ = [
    "RadialProblem",
    "GridFunction",
    "Level",
    "NumericalSpectrum",
    "solve_bound_states",
    "wavefunction_overlap",
    "sample",
    "loglog_slope",
    "count_sign_changes",
]

SCAN_SAMPLES = 200
ENERGY_TOL = 1e-12
MAX_BISECTIONS = 200


@dataclass(frozen=True)
class RadialProblem:
    """
    potential : callable, vectorized over x
    origin_exponent : psi ~ x**s near 0; V must behave as s(s-1)/x^2 + O(1/x)
    x_max : None picks clip(30/sqrt(-E_hi), 30, 400) from the energy window
    """

    potential: Callable
    origin_exponent: float = 1.0
    x_min: float = 1e-4
    x_max: float | None = None
    grid_points: int = 200_000

    def __post_init__(self):
        if not self.origin_exponent > 0:
            raise DomainError("origin exponent must be positive")
        if not self.x_min > 0:
            raise DomainError("x_min must be positive")
        if self.x_max is not None and not self.x_max > self.x_min:
            raise DomainError("need x_min < x_max")
        if self.grid_points < 1000:
            raise DomainError("grid_points must be at least 1000")


@dataclass(frozen=True)
class GridFunction:
    x: np.ndarray = field(repr=False)
    values: np.ndarray = field(repr=False)

    def norm(self) -> float:
        return math.sqrt(simpson(self.values**2, x=self.x))


def sample(f: Callable, x: np.ndarray) -> GridFunction:
    """Sample ``f`` on ``x`` and normalize with Simpson's rule on that grid."""
    values = np.asarray(f(x), dtype=float)
    return GridFunction(x, values / math.sqrt(simpson(values**2, x=x)))


def wavefunction_overlap(a: GridFunction, b: GridFunction) -> float:
    if a.x is not b.x and not (a.x.shape == b.x.shape and np.array_equal(a.x, b.x)):
        raise DomainError("wavefunctions live on different grids")
    return float(simpson(a.values * b.values, x=a.x))


def count_sign_changes(values) -> int:
    v = np.asarray(values)
    s = np.sign(v[v != 0.0])
    return int(np.count_nonzero(s[1:] != s[:-1]))


def loglog_slope(x, values, lo: float = 1e-3, hi: float = 1e-2) -> float:
    """Least-squares slope of log|psi| against log x on [lo, hi]."""
    x = np.asarray(x, dtype=float)
    v = np.asarray(values, dtype=float)
    sel = (x >= lo) & (x <= hi) & (v != 0.0)
    if np.count_nonzero(sel) < 2:
        raise DomainError(f"fewer than two samples in [{lo}, {hi}]")
    slope, _ = np.polyfit(np.log(x[sel]), np.log(np.abs(v[sel])), 1)
    return float(slope)


@dataclass(frozen=True)
class Level:
    n: int
    energy: float
    wavefunction: GridFunction = field(repr=False)
    nodes: int
    bisections: int
    bracket_width: float
    matching_residual: float


@dataclass(frozen=True)
class NumericalSpectrum:
    levels: tuple
    window: tuple
    grid_points: int
    x_max: float
    window_exhausted: bool
    provenance: str = "numerical-oracle"

    @property
    def energies(self) -> list[float]:
        return [float(lv.energy) for lv in self.levels]

    def __len__(self):
        return len(self.levels)


class _Shooter:
    def __init__(self, problem: RadialProblem, x_max: float):
        self.s = float(problem.origin_exponent)
        self.x = np.linspace(problem.x_min, x_max, problem.grid_points)
        self.h = self.x[1] - self.x[0]
        self.v = np.asarray(problem.potential(self.x), dtype=float)
        if not np.all(np.isfinite(self.v)):
            raise DomainError("potential is not finite on the grid")
        self.last = self.x.size - 1
        self._frobenius(problem.potential, problem.x_min)

    def _frobenius(self, potential, x0):
        # V = s(s-1)/x^2 + c1/x + c0 + d x + ...; fit c1, c0, d from three points
        s = self.s
        pts = x0 * np.array([1.0, 2.0, 3.0])
        r = pts * (np.asarray(potential(pts), dtype=float) - s * (s - 1.0) / pts**2)
        self.d, self.c0, self.c1 = np.polyfit(pts, r, 2)

    def _start(self, E):
        # three Frobenius terms keep the start-up error at O(h^4)
        s, c1, c0 = self.s, self.c1, self.c0 - E
        a1 = c1 / (2.0 * s)
        a2 = (c1 * a1 + c0) / (2.0 * (2.0 * s + 1.0))
        a3 = (c1 * a2 + c0 * a1 + self.d) / (3.0 * (2.0 * s + 2.0))
        t = self.x[:2]
        vals = t**s * (1.0 + t * (a1 + t * (a2 + t * a3)))
        return vals[0], vals[1]

    def count(self, E) -> int:
        p0, p1 = self._start(E)
        nodes, *_ = outward_tail(self.v, E, self.h, p0, p1, self.last - 1)
        return nodes

    def matching_index(self, E) -> int:
        above = (E - self.v) >= 0.0
        flips = np.nonzero(above[:-1] & ~above[1:])[0]
        m = int(flips[-1]) if flips.size else int(np.argmin(self.v))
        return min(max(m, 2), self.last - 2)

    def sweep(self, E, m):
        g = E - self.v
        p0, p1 = self._start(E)
        left, _ = outward(g, self.h, p0, p1, m)
        right = inward(g, self.h, m)
        return left, right

    def mismatch(self, E, m) -> float:
        p0, p1 = self._start(E)
        _, lm1, l0, lp1 = outward_tail(self.v, E, self.h, p0, p1, m)
        rm1, r0, rp1 = inward_tail(self.v, E, self.h, m)
        return l0 * (rp1 - rm1) - r0 * (lp1 - lm1)

    def wavefunction(self, E, m):
        left, right = self.sweep(E, m)
        psi = np.concatenate([left[: m + 1], right[m + 1 :] * (left[m] / right[m])])
        psi /= math.sqrt(simpson(psi**2, x=self.x))
        dl = (left[m + 1] - left[m - 1]) / left[m]
        dr = (right[m + 1] - right[m - 1]) / right[m]
        residual = abs(dl - dr) / (2.0 * self.h) / max(1.0, abs(dl) / (2.0 * self.h))
        return GridFunction(self.x, psi), residual


def _isolate(shooter, n, lo, hi):
    c_lo, c_hi = shooter.count(lo), shooter.count(hi)
    for _ in range(MAX_BISECTIONS):
        if c_lo == n - 1 and c_hi == n:
            return lo, hi
        mid = 0.5 * (lo + hi)
        c_mid = shooter.count(mid)
        if c_mid >= n:
            hi, c_hi = mid, c_mid
        else:
            lo, c_lo = mid, c_mid
    raise ConvergenceError(f"could not isolate level {n} by node counting")


def solve_bound_states(
    problem: RadialProblem,
    window: tuple[float, float] = (-16.0, -1e-6),
    max_levels: int = 10,
) -> NumericalSpectrum:
    """
    Find up to ``max_levels`` bound states with energies in ``window``.

    Levels are labelled by node count (n has n-1 nodes). Fewer levels than
    requested sets ``window_exhausted``; an unbracketable level raises
    ConvergenceError.
    """
    E_lo, E_hi = map(float, window)
    if not E_lo < E_hi < 0.0:
        raise DomainError(f"window must satisfy E_lo < E_hi < 0, got {window}")
    if max_levels < 1:
        raise DomainError("max_levels must be positive")
    x_max = problem.x_max
    if x_max is None:
        x_max = min(max(30.0 / math.sqrt(-E_hi), 30.0), 400.0)
    shooter = _Shooter(problem, x_max)

    energies = np.linspace(E_lo, E_hi, SCAN_SAMPLES)
    counts = np.array([shooter.count(E) for E in energies])
    first = int(counts[0]) + 1
    last = min(int(counts[-1]), first + max_levels - 1)

    levels = []
    for n in range(first, last + 1):
        j = int(np.argmax(counts >= n))
        lo, hi = _isolate(shooter, n, energies[j - 1], energies[j])
        m = shooter.matching_index(hi)
        f_lo = shooter.mismatch(lo, m)
        f_hi = shooter.mismatch(hi, m)
        if f_lo == 0.0:
            hi = lo
        elif f_hi == 0.0:
            lo = hi
        elif np.sign(f_lo) == np.sign(f_hi):
            raise ConvergenceError(
                f"matching function keeps its sign across [{lo}, {hi}] for level {n}"
            )
        iterations = 0
        while hi - lo > ENERGY_TOL:
            if iterations >= MAX_BISECTIONS:
                raise ConvergenceError(f"bisection stalled for level {n}")
            mid = 0.5 * (lo + hi)
            f_mid = shooter.mismatch(mid, m)
            if f_mid == 0.0:
                lo = hi = mid
                break
            if np.sign(f_mid) == np.sign(f_lo):
                lo, f_lo = mid, f_mid
            else:
                hi = mid
            iterations += 1
        E = 0.5 * (lo + hi)
        psi, residual = shooter.wavefunction(E, m)
        levels.append(
            Level(
                n=n,
                energy=E,
                wavefunction=psi,
                nodes=count_sign_changes(psi.values),
                bisections=iterations,
                bracket_width=hi - lo,
                matching_residual=residual,
            )
        )

    return NumericalSpectrum(
        levels=tuple(levels),
        window=(E_lo, E_hi),
        grid_points=problem.grid_points,
        x_max=x_max,
        window_exhausted=len(levels) < max_levels,
    )
