"""Independent reference implementations used as test oracles."""

import numpy as np
import pytest

from btoplab.symbol import LaurentMatrixSymbol


def brute_product(a: LaurentMatrixSymbol, b: LaurentMatrixSymbol) -> dict:
    """Coefficients of ``a * b`` by the double sum over index pairs."""
    out = {}
    for i, A in a.items():
        for j, B in b.items():
            out[i + j] = out.get(i + j, 0) + A @ B
    return out


def grid_values(phi: LaurentMatrixSymbol, m: int = 64) -> np.ndarray:
    """``Phi(e^{i t})`` by direct summation of ``sum_k Phi_k z^k``."""
    z = np.exp(2j * np.pi * np.arange(m) / m)
    return np.array([sum(A * zz ** k for k, A in phi.items()) for zz in z])


def grid_coefficients(values: np.ndarray, k: int) -> np.ndarray:
    """Fourier coefficient ``k`` from samples on ``m`` roots of unity (aliasing ignored)."""
    m = values.shape[0]
    z = np.exp(2j * np.pi * np.arange(m) / m)
    return np.tensordot(z ** (-k), values, axes=1) / m


def naive_toeplitz(phi: LaurentMatrixSymbol, N: int) -> np.ndarray:
    """``P(Phi z^j e_a)`` column by column via symbol multiplication."""
    n = phi.n
    out = np.zeros((N * n, N * n), complex)
    for j in range(N):
        for a in range(n):
            e = np.zeros((n, n))
            e[a, a] = 1
            col = phi * LaurentMatrixSymbol.monomial(j, e)
            for i in range(N):
                out[i * n:(i + 1) * n, j * n + a] = col[i][:, a]
    return out


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
