import math

import numpy as np
import pytest

from acdirac.orthopoly import jacobi, laguerre, laguerre_prime

from series import jacobi_series, laguerre_series

ORDERS = [0.0, 0.5, 1.0, 2.37]
X_LAG = np.linspace(0.0, 20.0, 50)
X_JAC = np.linspace(-1.0, 1.0, 50)


def test_small_cases():
    assert laguerre(0, 3.3, 7.1) == 1.0
    assert laguerre(1, 1.0, 2.0) == 0.0
    assert laguerre(2, 1.0, 1.0) == pytest.approx(0.5, abs=1e-15)
    assert laguerre_prime(0, 1.0, 3.0) == 0.0
    assert laguerre_prime(1, 0.7, np.array([0.0, 5.0])) == pytest.approx([-1.0, -1.0])
    assert laguerre_prime(2, 1.0, 1.0) == pytest.approx(-2.0, abs=1e-15)
    assert jacobi(0, 0.3, 1.2, 0.4) == 1.0
    assert jacobi(1, 0.0, 0.0, 0.5) == pytest.approx(0.5, abs=1e-15)
    assert jacobi(1, 1.0, 1.0, 1.0) == pytest.approx(2.0, abs=1e-15)


def test_series_oracle_self_check():
    assert laguerre_series(2, 1.0, 1.0) == pytest.approx(0.5, abs=1e-15)
    assert laguerre_series(1, 0.7, 3.0) == pytest.approx(1.7 - 3.0, abs=1e-15)
    # Legendre P_2(x) = (3x^2 - 1)/2
    assert jacobi_series(2, 0, 0, 0.3) == pytest.approx((3 * 0.09 - 1) / 2, abs=1e-15)


@pytest.mark.parametrize("a", ORDERS)
@pytest.mark.parametrize("n", range(7))
def test_laguerre_matches_series(n, a):
    got = laguerre(n, a, X_LAG)
    want = np.array([laguerre_series(n, a, x) for x in X_LAG])
    assert np.all(np.abs(got - want) <= 1e-12 * np.maximum(1.0, np.abs(want)))


@pytest.mark.parametrize("b", ORDERS)
@pytest.mark.parametrize("a", ORDERS)
@pytest.mark.parametrize("n", range(7))
def test_jacobi_matches_series(n, a, b):
    got = jacobi(n, a, b, X_JAC)
    want = np.array([jacobi_series(n, a, b, x) for x in X_JAC])
    assert np.all(np.abs(got - want) <= 1e-12 * np.maximum(1.0, np.abs(want)))


@pytest.mark.parametrize("a", [0, 1, 2, 3])
@pytest.mark.parametrize("n", range(8))
def test_jacobi_at_one(n, a):
    assert jacobi(n, a, 0.7, 1.0) == pytest.approx(math.comb(n + a, n), rel=1e-13)


def fd_orders(n, a, x, hs):
    errs = []
    exact = laguerre_prime(n, a, x)
    for h in hs:
        fd = (laguerre(n, a, x + h) - laguerre(n, a, x - h)) / (2 * h)
        errs.append(np.max(np.abs(fd - exact)))
    errs = np.array(errs)
    return np.log2(errs[:-1] / errs[1:]), errs


@pytest.mark.parametrize("a", ORDERS)
@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_laguerre_prime_second_order(n, a):
    x = np.linspace(0.5, 19.5, 20)
    orders, _ = fd_orders(n, a, x, [0.2, 0.1, 0.05, 0.025])
    assert np.all(orders >= 1.9)


@pytest.mark.parametrize("n", [0, 1, 2])
def test_laguerre_prime_exact_for_low_degree(n):
    # central differences are exact for quadratics
    x = np.linspace(0.5, 19.5, 20)
    _, errs = fd_orders(n, 1.3, x, [0.1])
    assert errs[0] < 1e-11


def test_vectorized_shapes():
    x = np.linspace(0, 1, 7).reshape(7, 1)
    assert laguerre(3, 0.5, x).shape == (7, 1)
    assert jacobi(3, 0.5, 0.2, x).shape == (7, 1)
    assert np.ndim(laguerre(3, 0.5, 1.0)) == 0


def test_rejects_bad_degree():
    with pytest.raises(ValueError):
        laguerre(-1, 0.0, 1.0)
    with pytest.raises(ValueError):
        jacobi(1.5, 0.0, 0.0, 1.0)
