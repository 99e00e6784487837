"""Finite Blaschke-Potapov products, their Fourier expansions and model spaces."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .symbol import LaurentMatrixSymbol

_PROJ_TOL = 1e-12
_UNITARY_TOL = 1e-12


def blaschke(alpha: complex, z):
    """Scalar disc automorphism ``(z - alpha) / (1 - conj(alpha) z)``."""
    return (z - alpha) / (1 - np.conj(alpha) * z)


@dataclass(frozen=True)
class BlaschkeFactor:
    """One elementary factor ``b_alpha(z) P + (I - P)``."""

    alpha: complex
    P: np.ndarray

    def __post_init__(self):
        P = np.atleast_2d(np.asarray(self.P, dtype=complex))
        alpha = complex(self.alpha)
        if abs(alpha) >= 1:
            raise ValueError(f"Blaschke zero must lie in the open disc, got |alpha| = {abs(alpha)}")
        if P.shape[0] != P.shape[1]:
            raise ValueError("P must be square")
        if (np.abs(P - P.conj().T).max() > _PROJ_TOL
                or np.abs(P @ P - P).max() > _PROJ_TOL):
            raise ValueError("P must be an orthogonal projection")
        P.flags.writeable = False
        object.__setattr__(self, "P", P)
        object.__setattr__(self, "alpha", alpha)

    @property
    def n(self) -> int:
        return self.P.shape[0]

    @property
    def rank(self) -> int:
        return int(round(np.trace(self.P).real))

    def range_basis(self) -> np.ndarray:
        """Orthonormal columns spanning ``Ran P``."""
        w, V = np.linalg.eigh(self.P)
        return V[:, w > 0.5]

    def evaluate(self, z: complex) -> np.ndarray:
        I = np.eye(self.n)
        return blaschke(self.alpha, z) * self.P + (I - self.P)

    def fourier(self, N: int) -> np.ndarray:
        """Coefficients ``0..N-1`` as an array of shape (N, n, n)."""
        a = self.alpha
        out = np.zeros((N, self.n, self.n), complex)
        out[0] = -a * self.P + (np.eye(self.n) - self.P)
        if N > 1:
            k = np.arange(1, N)
            out[1:] = ((1 - abs(a) ** 2) * np.conj(a) ** (k - 1))[:, None, None] * self.P
        return out


def _check_unitary(v):
    v = np.atleast_2d(np.asarray(v, dtype=complex))
    if v.shape[0] != v.shape[1] or np.abs(v.conj().T @ v - np.eye(v.shape[0])).max() > _UNITARY_TOL:
        raise ValueError("v must be a unitary matrix")
    return v


def _conv_trunc(a: np.ndarray, b: np.ndarray, N: int) -> np.ndarray:
    """First ``N`` coefficients of the product of two analytic series.

    ``a`` has shape (K, n, n); ``b`` has shape (L, n, ...).
    """
    out = np.zeros((N,) + b.shape[1:], complex)
    for j in range(min(a.shape[0], N)):
        m = min(b.shape[0], N - j)
        out[j:j + m] += np.matmul(a[j], b[:m])
    return out


@dataclass(frozen=True)
class PotapovProduct:
    """``v * prod_m (b_{alpha_m} P_m + I - P_m)`` with ``v`` a constant unitary."""

    v: np.ndarray
    factors: tuple = field(default_factory=tuple)

    def __post_init__(self):
        v = _check_unitary(self.v)
        v.flags.writeable = False
        object.__setattr__(self, "v", v)
        facs = tuple(self.factors)
        for f in facs:
            if not isinstance(f, BlaschkeFactor):
                raise TypeError("factors must be BlaschkeFactor instances")
            if f.n != v.shape[0]:
                raise ValueError("factor size does not match v")
        object.__setattr__(self, "factors", facs)

    @classmethod
    def identity(cls, n: int) -> "PotapovProduct":
        return cls(np.eye(n))

    @classmethod
    def diagonal_monomial(cls, powers: Sequence[int]) -> "PotapovProduct":
        """``diag(z^p_1, ..., z^p_n)`` as a product of rank-one shift factors."""
        n = len(powers)
        facs = []
        for i, p in enumerate(powers):
            P = np.zeros((n, n))
            P[i, i] = 1
            facs.extend(BlaschkeFactor(0, P) for _ in range(p))
        return cls(np.eye(n), tuple(facs))

    @classmethod
    def scalar(cls, zeros: Sequence[complex], unimodular: complex = 1) -> "PotapovProduct":
        """Finite scalar Blaschke product with the given zeros."""
        return cls(np.array([[unimodular]]), tuple(BlaschkeFactor(a, [[1]]) for a in zeros))

    @property
    def n(self) -> int:
        return self.v.shape[0]

    @property
    def rho(self) -> float:
        return max((abs(f.alpha) for f in self.factors), default=0.0)

    @property
    def is_polynomial(self) -> bool:
        return all(f.alpha == 0 for f in self.factors)

    @property
    def model_space_dim(self) -> int:
        return sum(f.rank for f in self.factors)

    def __mul__(self, other: "PotapovProduct") -> "PotapovProduct":
        """Product of two Potapov products, re-normalized to ``v * prod``.

        ``v1 F1 v2 F2 = v1 v2 (v2^* F1 v2) F2`` and conjugating a factor by a
        unitary gives another elementary factor.
        """
        v2 = other.v
        moved = tuple(BlaschkeFactor(f.alpha, v2.conj().T @ f.P @ v2) for f in self.factors)
        return PotapovProduct(self.v @ v2, moved + other.factors)

    def evaluate(self, z: complex) -> np.ndarray:
        z = complex(z)
        if abs(z) > 1 + 1e-12:
            raise ValueError(f"|z| = {abs(z)} lies outside the closed disc")
        out = np.array(self.v)
        for f in self.factors:
            out = out @ f.evaluate(z)
        return out

    def evaluate_grid(self, m: int) -> np.ndarray:
        z = np.exp(2j * np.pi * np.arange(m) / m)
        out = np.broadcast_to(self.v, (m, self.n, self.n)).copy()
        I = np.eye(self.n)
        for f in self.factors:
            b = blaschke(f.alpha, z)
            out = out @ (b[:, None, None] * f.P + (I - f.P))
        return out

    # -- Fourier expansion --------------------------------------------

    def _radius_bound(self, r: float, upto: int | None = None) -> float:
        """Bound for ``max_{|z| = r} ||v F_1 ... F_upto(z)||``."""
        c = 1.0
        for f in self.factors[:upto]:
            a = abs(f.alpha)
            c *= max(1.0, (r + a) / (1 - a * r))
        return c

    def _radii(self):
        rho = self.rho
        top = 1 / rho if rho > 0 else 1e6
        return np.exp(np.linspace(0, np.log(top), 402)[1:-1])

    def fourier_tail_bound(self, N: int) -> float:
        """Rigorous bound on ``sum_{k >= N} ||Q_k||`` (Cauchy estimates)."""
        if self.is_polynomial:
            return float(np.linalg.norm(self._poly_coeffs()[N:], ord=2, axis=(1, 2)).sum())
        best = np.inf
        for r in self._radii():
            best = min(best, self._radius_bound(r) * r ** (-N) / (1 - 1 / r))
        return float(best)

    def _poly_coeffs(self) -> np.ndarray:
        deg = len(self.factors)
        c = self.v[None].astype(complex)
        for f in self.factors:
            c = _conv_trunc(c, f.fourier(2), c.shape[0] + 1)
        return c[:deg + 1]

    def fourier(self, N: int):
        """Coefficients ``0..N-1`` and a bound on the omitted tail.

        Returns ``(symbol, tail_bound)``; the symbol is a polynomial whose
        coefficients are exact (up to rounding), only the tail is dropped.
        """
        if N < 1:
            raise ValueError("N must be positive")
        if self.is_polynomial:
            c = self._poly_coeffs()
        else:
            c = self.v[None].astype(complex)
            for f in self.factors:
                c = _conv_trunc(c, f.fourier(N), N)
        sym = LaurentMatrixSymbol(c[:N], 0)
        return sym, self.fourier_tail_bound(N)

    def as_symbol(self) -> LaurentMatrixSymbol:
        """Exact Laurent representation; only available when all zeros are at 0."""
        if not self.is_polynomial:
            raise ValueError("Potapov product with nonzero zeros is not a polynomial")
        return LaurentMatrixSymbol(self._poly_coeffs(), 0)

    def adjoint_residual(self, phi: LaurentMatrixSymbol, grid: int = 512) -> float:
        """``max ||Phi - Q Phi^*||`` over a grid of the circle."""
        vals = phi.evaluate_grid(grid)
        q = self.evaluate_grid(grid)
        diff = vals - q @ np.conj(vals).transpose(0, 2, 1)
        return float(np.abs(diff).max())

    def model_space(self, N: int | None = None, tol: float = 1e-8) -> "ModelSpaceBasis":
        return model_space(self, N, tol)


@dataclass(frozen=True)
class ModelSpaceBasis:
    """Orthonormal coefficient columns spanning ``H^2 (-) Q H^2``.

    ``vectors`` has shape ``(n * N, dim)``; block ``i`` of a column holds the
    ``z^i`` coefficient.
    """

    n: int
    N: int
    vectors: np.ndarray
    tail_bound: float

    @property
    def dim(self) -> int:
        return self.vectors.shape[1]

    def as_series(self) -> np.ndarray:
        """Shape ``(dim, N, n)``."""
        return self.vectors.T.reshape(self.dim, self.N, self.n)

    def orthonormality_residual(self) -> float:
        if self.dim == 0:
            return 0.0
        G = self.vectors.conj().T @ self.vectors
        return float(np.abs(G - np.eye(self.dim)).max())

    def membership_residual(self, Q: PotapovProduct) -> float:
        """``max ||T_{Q^*} x||`` over basis vectors, on the truncation window."""
        if self.dim == 0:
            return 0.0
        from .operators import toeplitz

        q, _ = Q.fourier(self.N)
        T = toeplitz(q, self.N).matrix
        return float(np.linalg.norm(T.conj().T @ self.vectors, axis=0).max())


def model_space(Q: PotapovProduct, N: int | None = None, tol: float = 1e-8) -> ModelSpaceBasis:
    """Orthonormal basis of the model space of ``Q``.

    Built from ``H(Q1 Q2) = H(Q1) (+) Q1 H(Q2)`` and the kernel description
    of one elementary factor, ``{e / (1 - conj(alpha) z) : e in Ran P}``;
    truncation only enters when coefficients are emitted.  ``N`` is enlarged
    until the certified tail bound falls below ``tol``.
    """
    n = Q.n
    if N is None:
        N = max(len(Q.factors) + 1, 8)
    while _model_tail(Q, N) >= tol:
        N *= 2
    cols = []
    prefix = Q.v[None].astype(complex)
    for f in Q.factors:
        a = f.alpha
        E = f.range_basis()
        kern = np.sqrt(1 - abs(a) ** 2) * np.conj(a) ** np.arange(N)
        series = kern[:, None, None] * E[None]  # (N, n, r)
        cols.append(_conv_trunc(prefix, series, N))
        prefix = _conv_trunc(prefix, f.fourier(N), N)
    if cols:
        X = np.concatenate(cols, axis=2).reshape(N * n, -1)
        U, _, Vh = np.linalg.svd(X, full_matrices=False)
        X = U @ Vh
    else:
        X = np.zeros((N * n, 0), complex)
    return ModelSpaceBasis(n=n, N=N, vectors=X, tail_bound=_model_tail(Q, N))


def _model_tail(Q: PotapovProduct, N: int) -> float:
    """Bound on the l2 mass beyond ``N`` of any emitted basis vector."""
    if not Q.factors:
        return 0.0
    if Q.is_polynomial:
        # vectors are polynomials of degree < number of factors
        return 0.0 if N >= len(Q.factors) else np.inf
    best = np.inf
    for r in Q._radii():
        worst = 0.0
        for m, f in enumerate(Q.factors):
            a = abs(f.alpha)
            c = Q._radius_bound(r, m) * np.sqrt(1 - a ** 2) / (1 - a * r)
            worst = max(worst, c)
        best = min(best, worst * r ** (-N))
    return float(best)


def is_inner(theta: LaurentMatrixSymbol, tol: float = 1e-10, method: str = "coefficients",
             grid: int = 512) -> bool:
    """Whether an analytic symbol satisfies ``Theta^* Theta = I`` on the circle.

    ``method="coefficients"`` is exact for polynomial inner functions;
    ``method="grid"`` checks unitarity at roots of unity and is meant for
    truncated expansions of rational inner functions.
    """
    if not theta.is_analytic():
        return False
    if method == "grid":
        vals = theta.evaluate_grid(grid)
        gram = np.conj(vals).transpose(0, 2, 1) @ vals
        return bool(np.abs(gram - np.eye(theta.n)).max() <= tol)
    gram = theta.adjoint() * theta
    dev = gram.window(gram.lo, gram.hi)
    dev[-gram.lo] -= np.eye(theta.n)
    return bool(np.abs(dev).max() <= tol)


@dataclass(frozen=True)
class CoprimeResult:
    coprime: bool
    alpha: complex | None = None
    u: np.ndarray | None = None
    determinants: tuple = ()

    def __bool__(self):
        return self.coprime

    @property
    def divisor(self) -> BlaschkeFactor | None:
        """The common left inner divisor ``b_alpha u u^* + (I - u u^*)``."""
        if self.u is None:
            return None
        return BlaschkeFactor(self.alpha, np.outer(self.u, self.u.conj()))


def _distinct(zeros, tol=1e-12):
    out = []
    for a in zeros:
        a = complex(a)
        if abs(a) >= 1:
            raise ValueError(f"zero {a} is not in the open disc")
        if all(abs(a - b) > tol for b in out):
            out.append(a)
    return out


def _phase_normalize(u: np.ndarray) -> np.ndarray:
    i = int(np.argmax(np.abs(u)))
    u = u * np.exp(-1j * np.angle(u[i]))
    u[np.abs(u) < 1e-14] = 0
    return u


def left_coprime_with_scalar_inner(B: LaurentMatrixSymbol, zeros: Sequence[complex],
                                   tol: float = 1e-8) -> CoprimeResult:
    """Left coprimality of analytic ``B`` and ``theta I_n``, theta a finite Blaschke product.

    A common left inner divisor exists iff ``u^* B(alpha) = 0`` for some
    zero ``alpha`` and unit ``u``, i.e. iff ``det B(alpha) = 0``.  Only the
    set of distinct zeros matters, so repeated zeros are collapsed.
    """
    if not B.is_analytic():
        raise ValueError("B must be analytic")
    dets = []
    for a in _distinct(zeros):
        M = B.evaluate(a, on_circle=False)
        d = np.linalg.det(M)
        dets.append(complex(d))
        scale = 1 + np.linalg.norm(M, 2) ** B.n
        if abs(d) <= tol * scale:
            U, _, _ = np.linalg.svd(M)
            return CoprimeResult(False, a, _phase_normalize(U[:, -1]), tuple(dets))
    return CoprimeResult(True, determinants=tuple(dets))


def right_coprime_with_scalar_inner(B: LaurentMatrixSymbol, zeros: Sequence[complex],
                                    tol: float = 1e-8) -> CoprimeResult:
    return left_coprime_with_scalar_inner(B.tilde(), [np.conj(a) for a in zeros], tol)
