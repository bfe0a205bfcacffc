"""Compiled Numerov sweeps for y'' = -g(x) y on a uniform grid."""
import numba
import numpy as np

# rescale threshold and factor while sweeping through forbidden regions
_BIG = 1e200
_SHRINK = 1e-200


@numba.njit(cache=True)
def outward(g, h, psi0, psi1, stop):
    """Sweep from index 0 up to ``stop + 1``; returns (psi, sign changes)."""
    n = g.shape[0]
    psi = np.zeros(n)
    f = 1.0 + h * h * g / 12.0
    a = 12.0 - 10.0 * f
    inv = 1.0 / f
    psi[0] = psi0
    psi[1] = psi1
    nodes = 0
    last = 1.0 if psi1 > 0.0 else -1.0
    for i in range(1, stop + 1):
        psi[i + 1] = (a[i] * psi[i] - f[i - 1] * psi[i - 1]) * inv[i + 1]
        v = psi[i + 1]
        if v != 0.0:
            s = 1.0 if v > 0.0 else -1.0
            if s != last:
                nodes += 1
                last = s
        if abs(v) > _BIG:
            for j in range(i + 2):
                psi[j] *= _SHRINK
    return psi, nodes


@numba.njit(cache=True)
def inward(g, h, stop):
    """Sweep from the last index (psi = 0 there) down to ``stop - 1``."""
    n = g.shape[0]
    psi = np.zeros(n)
    f = 1.0 + h * h * g / 12.0
    a = 12.0 - 10.0 * f
    inv = 1.0 / f
    psi[n - 1] = 0.0
    psi[n - 2] = 1.0
    for i in range(n - 2, stop - 1, -1):
        psi[i - 1] = (a[i] * psi[i] - f[i + 1] * psi[i + 1]) * inv[i - 1]
        if abs(psi[i - 1]) > _BIG:
            for j in range(i - 1, n):
                psi[j] *= _SHRINK
    return psi


@numba.njit(cache=True)
def outward_tail(v, E, h, psi0, psi1, stop):
    """
    Scalar outward sweep up to index ``stop + 1`` without storing psi.

    Returns (sign changes, psi[stop-1], psi[stop], psi[stop+1]) up to a
    common positive factor.
    """
    c = h * h / 12.0
    f_prev = 1.0 + c * (E - v[0])
    f_cur = 1.0 + c * (E - v[1])
    p_prev = psi0
    p_cur = psi1
    p_older = 0.0
    nodes = 0
    last = 1.0 if psi1 > 0.0 else -1.0
    for i in range(1, stop + 1):
        f_next = 1.0 + c * (E - v[i + 1])
        r = 1.0 / f_next
        p_next = ((12.0 - 10.0 * f_cur) * p_cur - f_prev * p_prev) * r
        if p_next != 0.0:
            s = 1.0 if p_next > 0.0 else -1.0
            if s != last:
                nodes += 1
                last = s
        if abs(p_next) > _BIG:
            p_next *= _SHRINK
            p_cur *= _SHRINK
            p_prev *= _SHRINK
        p_older = p_prev
        p_prev = p_cur
        p_cur = p_next
        f_prev = f_cur
        f_cur = f_next
    return nodes, p_older, p_prev, p_cur


@numba.njit(cache=True)
def inward_tail(v, E, h, stop):
    """Scalar inward sweep down to ``stop - 1``; returns psi[stop-1], psi[stop], psi[stop+1]."""
    n = v.shape[0]
    c = h * h / 12.0
    f_prev = 1.0 + c * (E - v[n - 1])
    f_cur = 1.0 + c * (E - v[n - 2])
    p_prev = 0.0
    p_cur = 1.0
    p_older = 0.0
    for i in range(n - 2, stop - 1, -1):
        f_next = 1.0 + c * (E - v[i - 1])
        r = 1.0 / f_next
        p_next = ((12.0 - 10.0 * f_cur) * p_cur - f_prev * p_prev) * r
        if abs(p_next) > _BIG:
            p_next *= _SHRINK
            p_cur *= _SHRINK
            p_prev *= _SHRINK
        p_older = p_prev
        p_prev = p_cur
        p_cur = p_next
        f_prev = f_cur
        f_cur = f_next
    return p_cur, p_prev, p_older
