"""Random instances: Laurent symbols, Potapov products, and symbols with Phi = Q Phi^*."""

from __future__ import annotations

import numpy as np
from scipy.stats import unitary_group

from .potapov import BlaschkeFactor, PotapovProduct
from .symbol import LaurentMatrixSymbol


def random_unitary(rng: np.random.Generator, n: int) -> np.ndarray:
    if n == 1:
        return np.array([[np.exp(2j * np.pi * rng.uniform())]])
    return unitary_group.rvs(n, random_state=rng)


def random_projection(rng: np.random.Generator, n: int, rank: int | None = None) -> np.ndarray:
    if rank is None:
        rank = int(rng.integers(1, n + 1))
    U = random_unitary(rng, n)[:, :rank]
    return U @ U.conj().T


def random_laurent(rng: np.random.Generator, n: int, d_minus: int, d_plus: int,
                   scale: float = 1.0) -> LaurentMatrixSymbol:
    shape = (d_minus + d_plus + 1, n, n)
    c = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    return LaurentMatrixSymbol(scale * c / np.sqrt(2), -d_minus)


def random_potapov(rng: np.random.Generator, n: int, M: int, polynomial: bool = False,
                   radius: float = 0.8) -> PotapovProduct:
    """``M`` random elementary factors; zeros uniform in the disc of ``radius``."""
    factors = []
    for _ in range(M):
        alpha = 0.0 if polynomial else radius * np.sqrt(rng.uniform()) * np.exp(2j * np.pi * rng.uniform())
        factors.append(BlaschkeFactor(alpha, random_projection(rng, n)))
    return PotapovProduct(random_unitary(rng, n), tuple(factors))


def qphi_instance(rng: np.random.Generator, n: int, M: int, power_degree: int = 2,
                  scalar_degree: int = 2):
    """A symbol with ``Phi = Q Phi^*`` for a polynomial Potapov product ``Q``.

    ``Phi = G + Q G^*`` where ``G = sum_j c_j Q^j + p(z) I`` with ``|c_j| <= 1``
    and ``p`` an analytic scalar polynomial.  ``G`` commutes with ``Q`` and
    ``Q`` is unitary on the circle, so ``Q Phi^* = Q G^* + G = Phi``.  All zeros
    of ``Q`` sit at the origin, which keeps ``Phi`` a Laurent polynomial.

    Returns ``(Phi, Q)``.
    """
    Q = random_potapov(rng, n, M, polynomial=True)
    q = Q.as_symbol()
    G = LaurentMatrixSymbol.zero(n)
    power = LaurentMatrixSymbol.constant(np.eye(n))
    for _ in range(power_degree + 1):
        c = np.sqrt(rng.uniform()) * np.exp(2j * np.pi * rng.uniform())
        G = G + c * power
        power = power * q
    p = rng.standard_normal(scalar_degree + 1) + 1j * rng.standard_normal(scalar_degree + 1)
    G = G + LaurentMatrixSymbol(p[:, None, None] * np.eye(n), 0) * 0.5
    phi = G + q * G.adjoint()
    return phi, Q


def random_symbol_set(seed: int, count: int, n_max: int = 3, d_max: int = 4):
    """Deterministic list of random Laurent symbols (sizes and degrees random too)."""
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        n = int(rng.integers(1, n_max + 1))
        out.append(random_laurent(rng, n, int(rng.integers(0, d_max + 1)),
                                  int(rng.integers(0, d_max + 1))))
    return out


def qphi_instance_set(seed: int, count: int, n_max: int = 3, M_max: int = 3):
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        n = int(rng.integers(1, n_max + 1))
        M = int(rng.integers(1, M_max + 1))
        out.append(qphi_instance(rng, n, M))
    return out
