"""Generalized Laguerre and Jacobi polynomials by three-term recurrence.

Polynomials are returned in the standard (unnormalized) convention. All
functions broadcast over ``x``.
"""

import numpy as np


def _check_degree(n):
    if int(n) != n or n < 0:
        raise ValueError(f"degree must be a non-negative integer, got {n!r}")
    return int(n)


def laguerre(n, a, x):
    """Generalized Laguerre polynomial L_n^(a)(x).

    Uses the upward recurrence
    ``(k+1) L_{k+1} = (2k + 1 + a - x) L_k - (k + a) L_{k-1}``.

    Parameters
    ----------
    n : int
        degree
    a : float
        order parameter
    x : float or numpy.ndarray
        evaluation points

    Returns
    -------
    float or numpy.ndarray
    """
    n = _check_degree(n)
    x = np.asarray(x, dtype=float)
    prev = np.ones_like(x)
    if n == 0:
        return prev[()] if prev.ndim == 0 else prev
    cur = 1.0 + a - x
    for k in range(1, n):
        prev, cur = cur, ((2 * k + 1 + a - x) * cur - (k + a) * prev) / (k + 1)
    return cur[()] if cur.ndim == 0 else cur


def laguerre_prime(n, a, x):
    """Derivative d/dx L_n^(a)(x) = -L_{n-1}^(a+1)(x), zero for n = 0."""
    n = _check_degree(n)
    if n == 0:
        z = np.zeros_like(np.asarray(x, dtype=float))
        return z[()] if z.ndim == 0 else z
    return -laguerre(n - 1, a + 1.0, x)


def jacobi(n, a, b, x):
    """Jacobi polynomial P_n^(a,b)(x) via the standard three-term recurrence."""
    n = _check_degree(n)
    x = np.asarray(x, dtype=float)
    prev = np.ones_like(x)
    if n == 0:
        return prev[()] if prev.ndim == 0 else prev
    cur = (a + 1.0) + (a + b + 2.0) * (x - 1.0) / 2.0
    for k in range(1, n):
        # advance P_k -> P_{k+1}
        c = 2 * k + a + b
        a1 = 2.0 * (k + 1) * (k + a + b + 1) * c
        a2 = (c + 1) * (a * a - b * b)
        a3 = c * (c + 1) * (c + 2)
        a4 = 2.0 * (k + a) * (k + b) * (c + 2)
        prev, cur = cur, ((a2 + a3 * x) * cur - a4 * prev) / a1
    return cur[()] if cur.ndim == 0 else cur
