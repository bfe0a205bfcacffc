"""
Special-function kernel for the Hulthén eigenfunctions.

Only two pieces are needed: the Gauss series 2F1(a, 1-n; c; z), which
terminates after n terms, and the ratio Gamma(n+2k) / (Gamma(n+1) Gamma(2k+1))
that appears in the closed-form normalization constant.
"""
from __future__ import annotations

import math

import numpy as np

from .errors import DomainError

__all__ = [
    "pochhammer",
    "hyp2f1_coefficients",
    "hyp2f1_terminating",
    "log_gamma",
    "gamma_ratio",
]


def pochhammer(x: float, j: int) -> float:
    """Rising factorial (x)_j = x (x+1) ... (x+j-1), with (x)_0 = 1."""
    if j < 0:
        raise DomainError(f"pochhammer order must be >= 0, got {j}")
    out = 1.0
    for i in range(j):
        out *= x + i
    return out


def _check_params(n: int, c: float) -> None:
    if int(n) != n or n < 1:
        raise DomainError(f"n must be a positive integer (series must terminate), got {n}")
    if not c > 0:
        raise DomainError(f"c must be positive, got {c}")


def hyp2f1_coefficients(a: float, n: int, c: float) -> np.ndarray:
    """
    Coefficients t_j of 2F1(a, 1-n; c; z) = sum_j t_j z^j, j = 0..n-1.

    Built with the ratio t_{j+1}/t_j = (a+j)(1-n+j) / ((c+j)(j+1)).
    """
    _check_params(n, c)
    n = int(n)
    t = np.empty(n)
    t[0] = 1.0
    for j in range(n - 1):
        t[j + 1] = t[j] * (a + j) * (1 - n + j) / ((c + j) * (j + 1))
    return t


def hyp2f1_terminating(a: float, n: int, c: float, z):
    """
    Evaluate the terminating series 2F1(a, 1-n; c; z).

    Parameters
    ----------
    a, c : float
        Upper and lower parameters; ``c`` must be positive.
    n : int
        Positive integer; the second upper parameter is ``1 - n``.
    z : float or array_like
        Argument(s) in [0, 1].

    Returns
    -------
    float or ndarray
        The finite sum, accumulated in ascending powers with Kahan
        compensation. Scalar in, scalar out.
    """
    t = hyp2f1_coefficients(a, n, c)
    zz = np.asarray(z, dtype=float)
    if np.any(zz < 0.0) or np.any(zz > 1.0):
        raise DomainError("z must lie in [0, 1]")

    total = np.full(zz.shape, t[0])
    comp = np.zeros(zz.shape)
    power = np.ones(zz.shape)
    for tj in t[1:]:
        power = power * zz
        y = tj * power - comp
        s = total + y
        comp = (s - total) - y
        total = s
    if total.ndim == 0:
        return float(total)
    return total


def log_gamma(x: float) -> float:
    """log|Gamma(x)| for x > 0."""
    if not x > 0:
        raise DomainError(f"log_gamma needs x > 0, got {x}")
    return math.lgamma(x)


def gamma_ratio(n: int, k: float) -> float:
    """Gamma(n+2k) / (Gamma(n+1) Gamma(2k+1)), via log-gamma differences."""
    if int(n) != n or n < 1:
        raise DomainError(f"n must be a positive integer, got {n}")
    if not k > 0:
        raise DomainError(f"k must be positive, got {k}")
    return math.exp(log_gamma(n + 2 * k) - log_gamma(n + 1) - log_gamma(2 * k + 1))
