"""Finite truncations of block Toeplitz and Hankel operators.

Vectors in ``H^2_{C^n}`` are coefficient columns ``[f_0; f_1; ...]`` with
``f_i`` in ``C^n``.  Every matrix produced here carries an exactness window:
the top-left ``n W x n W`` corner coincides with the infinite operator.

Products of banded truncations are certified by the path argument: if each
factor only couples index ``i`` to indices ``<= i + b``, then the ``(i, j)``
entry of a product ``A_1 ... A_L`` only visits intermediate indices below
``i + b_1 + ... + b_{L-1}``, so truncating at ``N`` plus that sum and
cropping back to ``N`` is exact.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .symbol import LaurentMatrixSymbol, is_normal_symbol

RANK_TOL = 1e-10

TOEPLITZ, HANKEL, COMPOSITE = "toeplitz", "hankel", "composite"
KIND_CODES = {TOEPLITZ: 0, HANKEL: 1, COMPOSITE: 2}


@dataclass(frozen=True)
class TruncatedOperator:
    n: int
    N: int
    matrix: np.ndarray
    kind: str
    exact_window: int
    complete: bool = False  # every entry outside the matrix vanishes

    def block(self, i: int, j: int) -> np.ndarray:
        n = self.n
        return self.matrix[i * n:(i + 1) * n, j * n:(j + 1) * n]

    @property
    def H(self) -> "TruncatedOperator":
        return TruncatedOperator(self.n, self.N, self.matrix.conj().T, self.kind,
                                 self.exact_window, self.complete)

    def __matmul__(self, other):
        if isinstance(other, TruncatedOperator):
            raise TypeError("compose operators with certified_product, not @")
        return self.matrix @ other


def _blocks_from_index(W: np.ndarray, idx: np.ndarray, n: int) -> np.ndarray:
    N = idx.shape[0]
    return W[idx].transpose(0, 2, 1, 3).reshape(N * n, N * n)


def toeplitz_matrix(phi: LaurentMatrixSymbol, N: int) -> np.ndarray:
    """Dense ``nN x nN`` matrix with block ``(i, j)`` equal to ``Phi_{i-j}``."""
    W = phi.window(-(N - 1), N - 1)
    i = np.arange(N)
    return _blocks_from_index(W, i[:, None] - i[None, :] + N - 1, phi.n)


def hankel_matrix(phi: LaurentMatrixSymbol, N: int) -> np.ndarray:
    """Dense ``nN x nN`` matrix with block ``(i, j)`` equal to ``Phi_{-1-i-j}``."""
    W = phi.window(-(2 * N - 1), -1)
    i = np.arange(N)
    # index -1-i-j sits at position (2N - 1) + (-1 - i - j) = 2N - 2 - i - j
    return _blocks_from_index(W, 2 * N - 2 - i[:, None] - i[None, :], phi.n)


def toeplitz(phi: LaurentMatrixSymbol, N: int) -> TruncatedOperator:
    if N < 1:
        raise ValueError("N must be positive")
    return TruncatedOperator(phi.n, N, toeplitz_matrix(phi, N), TOEPLITZ, N)


def hankel(phi: LaurentMatrixSymbol, N: int) -> TruncatedOperator:
    if N < 1:
        raise ValueError("N must be positive")
    return TruncatedOperator(phi.n, N, hankel_matrix(phi, N), HANKEL, N,
                             complete=N >= phi.d_minus)


def flip_j(N: int, n: int = 1) -> np.ndarray:
    """The flip ``f(z) -> conj(z) f(conj(z))`` on the L2 window ``[-N, N-1]``.

    Coefficient index ``m`` goes to ``-1 - m``; with blocks ordered by index
    this is the block anti-identity.
    """
    return np.kron(np.eye(2 * N)[::-1], np.eye(n))


def l2_projections(N: int, n: int = 1):
    """Projections onto the analytic and anti-analytic parts of the L2 window."""
    d = np.r_[np.zeros(N), np.ones(N)]
    P = np.kron(np.diag(d), np.eye(n))
    return P, np.eye(2 * N * n) - P


# -- certified products -----------------------------------------------

def _bandwidth(kind: str, sym: LaurentMatrixSymbol) -> int:
    if kind == "T":
        return sym.d_minus
    if kind == "H":
        return max(sym.d_minus - 1, 0)
    raise ValueError(f"unknown factor kind {kind!r}")


def _factor_matrix(kind: str, sym: LaurentMatrixSymbol, M: int) -> np.ndarray:
    return toeplitz_matrix(sym, M) if kind == "T" else hankel_matrix(sym, M)


def certified_product(factors: Sequence[tuple], N: int, extra: int = 0) -> np.ndarray:
    """Exact top-left ``N``-block window of a product of Toeplitz/Hankel factors.

    ``factors`` is a sequence of ``("T", symbol)`` or ``("H", symbol)``,
    multiplied left to right.  Adjoints are expressed through symbols:
    ``T_Phi^* = T_{Phi^*}`` and ``H_Phi^* = H_{tilde Phi}``.  ``extra`` widens
    the buffer beyond the certified minimum (used for stability checks).
    """
    if not factors:
        raise ValueError("empty product")
    n = factors[0][1].n
    M = N + sum(_bandwidth(k, s) for k, s in factors[:-1]) + extra
    out = _factor_matrix(*factors[0], M)
    for kind, sym in factors[1:]:
        out = out @ _factor_matrix(kind, sym, M)
    return out[:N * n, :N * n]


_WORD_TOKEN = re.compile(r"T\*|T")


def parse_word(word: str) -> list[bool]:
    """``"T*TT"`` -> ``[True, False, False]`` (True marks an adjoint)."""
    compact = word.replace(" ", "")
    tokens = _WORD_TOKEN.findall(compact)
    if "".join(tokens) != compact or not tokens:
        raise ValueError(f"word must be a nonempty string over {{T, T*}}, got {word!r}")
    return [t == "T*" for t in tokens]


def operator_word(phi: LaurentMatrixSymbol, word: str, N: int, extra: int = 0) -> TruncatedOperator:
    """Top-left ``N`` window of a product of ``T_Phi`` and ``T_Phi^*``."""
    adj = phi.adjoint()
    factors = [("T", adj if a else phi) for a in parse_word(word)]
    return TruncatedOperator(phi.n, N, certified_product(factors, N, extra), COMPOSITE, N)


# -- self-commutator --------------------------------------------------

def _rank(M: np.ndarray, tol: float = RANK_TOL, scale: float = 0.0) -> int:
    """Numerical rank relative to ``max(||M||, scale)``.

    ``scale`` keeps rounding noise from counting when ``M`` should vanish.
    """
    if M.size == 0:
        return 0
    s = np.linalg.svd(M, compute_uv=False)
    ref = max(s[0], scale)
    if ref == 0:
        return 0
    return int((s > tol * ref).sum())


@dataclass(frozen=True)
class CommutatorResult:
    """``[T^*, T]`` on its support block (or on a window, if unbounded support).

    ``support_blocks`` is ``None`` when the symbol is not normal; the
    commutator then contains a Toeplitz part and has no finite support.
    """

    n: int
    matrix: np.ndarray
    support_blocks: int | None
    eigenvalues: np.ndarray
    rank: int

    @property
    def finite(self) -> bool:
        return self.support_blocks is not None

    @property
    def min_eigenvalue(self) -> float:
        """Bottom of the spectrum; a finite-support commutator also has eigenvalue 0."""
        lam = float(self.eigenvalues[0]) if self.eigenvalues.size else 0.0
        return min(lam, 0.0) if self.finite else lam

    def padded(self, N: int) -> np.ndarray:
        """The commutator on the first ``N`` blocks (zero-padded)."""
        k = self.matrix.shape[0]
        m = N * self.n
        if m <= k:
            return self.matrix[:m, :m]
        if not self.finite:
            raise ValueError("commutator has unbounded support; recompute on a larger window")
        out = np.zeros((m, m), complex)
        out[:k, :k] = self.matrix
        return out


def commutator_support(phi: LaurentMatrixSymbol) -> int:
    return max(phi.d_minus, phi.d_plus, 1)


def self_commutator(phi: LaurentMatrixSymbol, window: int | None = None,
                    normal_tol: float = 1e-10) -> CommutatorResult:
    """``[T_Phi^*, T_Phi] = T_{Phi^*Phi - Phi Phi^*} + H_{Phi^*}^* H_{Phi^*} - H_Phi^* H_Phi``.

    For a normal symbol the Toeplitz term vanishes and the Hankel products
    are finite, so the support block (``max(d-, d+)`` blocks) is the whole
    operator.  Otherwise the result is the exact top-left ``window`` corner
    (default ``2 * max(d-, d+)`` blocks).
    """
    s = commutator_support(phi)
    normal, _ = is_normal_symbol(phi, normal_tol)
    W = s if normal else (window or 2 * s)
    W = max(W, s)
    H1 = hankel_matrix(phi.adjoint(), W)
    H2 = hankel_matrix(phi, W)
    C = H1.conj().T @ H1 - H2.conj().T @ H2
    if not normal:
        delta = phi.adjoint() * phi - phi * phi.adjoint()
        C = C + toeplitz_matrix(delta, W)
    if normal and window is not None and window > s:
        pad = np.zeros((window * phi.n,) * 2, complex)
        pad[:C.shape[0], :C.shape[1]] = C
        C = pad
    C = (C + C.conj().T) / 2
    eig = np.linalg.eigvalsh(C)
    return CommutatorResult(phi.n, C, s if normal else None, eig,
                            _rank(C, scale=phi.l1_norm() ** 2))


def dense_commutator(phi: LaurentMatrixSymbol, M: int) -> np.ndarray:
    """Naive ``T_M^* T_M - T_M T_M^*`` from one plain truncation (no certification)."""
    T = toeplitz_matrix(phi, M)
    return T.conj().T @ T - T @ T.conj().T


# -- identities among Toeplitz and Hankel operators -------------------

def identity_suite(phi: LaurentMatrixSymbol, psi: LaurentMatrixSymbol,
                   theta: LaurentMatrixSymbol, N: int) -> dict:
    """Maximum deviation of each basic Toeplitz/Hankel identity on an exact window.

    ``psi`` must be analytic (third identity) and ``theta`` an analytic
    inner polynomial (fourth identity).
    """
    if not psi.is_analytic():
        raise ValueError("psi must be analytic")
    if not theta.is_analytic():
        raise ValueError("theta must be analytic")

    def dev(a, b):
        return float(np.abs(a - b).max())

    out = {}
    T = toeplitz_matrix(phi, N)
    out["adjoint_toeplitz"] = dev(T.conj().T, toeplitz_matrix(phi.adjoint(), N))
    H = hankel_matrix(phi, N)
    out["adjoint_hankel"] = dev(H.conj().T, hankel_matrix(phi.tilde(), N))

    lhs = toeplitz_matrix(phi * psi, N) - certified_product([("T", phi), ("T", psi)], N)
    rhs = certified_product([("H", phi.adjoint().tilde()), ("H", psi)], N)
    out["semicommutator"] = dev(lhs, rhs)

    out["hankel_toeplitz"] = dev(certified_product([("H", phi), ("T", psi)], N),
                                 hankel_matrix(phi * psi, N))
    out["toeplitz_hankel"] = dev(hankel_matrix(psi * phi, N),
                                 certified_product([("T", psi.tilde().adjoint()), ("H", phi)], N))

    tp = theta * phi
    lhs = (certified_product([("H", phi.tilde()), ("H", phi)], N)
           - certified_product([("H", tp.tilde()), ("H", tp)], N))
    ts = theta.adjoint()
    rhs = certified_product([("H", phi.tilde()), ("H", ts), ("H", ts.tilde()), ("H", phi)], N)
    out["inner_hankel"] = dev(lhs, rhs)
    return out
