"""Matrix-valued Laurent polynomial symbols on the unit circle.

A symbol is stored as a contiguous stack of Fourier coefficients
``coeffs[k - lo]`` for ``k`` in ``[lo, hi]`` with ``lo <= 0 <= hi``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np

DEFAULT_TOL = 1e-10
_CIRCLE_TOL = 1e-12


class DimensionMismatch(ValueError):
    pass


def _as_coeff_stack(coeffs, n=None):
    arr = np.asarray(coeffs, dtype=complex)
    if arr.ndim == 1 and n in (None, 1):
        arr = arr[:, None, None]
    if arr.ndim != 3 or arr.shape[1] != arr.shape[2]:
        raise ValueError(f"coefficient stack must have shape (K, n, n), got {arr.shape}")
    return arr


class LaurentMatrixSymbol:
    """Finitely supported matrix Fourier series ``sum_k A_k z^k``.

    Parameters
    ----------
    coeffs : array_like, shape (K, n, n)
        Coefficients for indices ``lo, lo + 1, ..., lo + K - 1``.
    lo : int
        Index of the first coefficient.
    bounded_type : bool
        Declared attribute.  ``False`` marks a truncated stand-in for a
        function that is not of bounded type; it is never inferred.
    """

    __slots__ = ("_c", "_lo", "bounded_type")

    def __init__(self, coeffs, lo: int = 0, bounded_type: bool = True):
        c = _as_coeff_stack(coeffs)
        lo = int(lo)
        # pad so that index 0 is always stored
        if lo > 0:
            c = np.concatenate([np.zeros((lo,) + c.shape[1:], complex), c])
            lo = 0
        hi = lo + c.shape[0] - 1
        if hi < 0:
            c = np.concatenate([c, np.zeros((-hi,) + c.shape[1:], complex)])
        # drop exact zeros at both ends, never past index 0
        start, stop = 0, c.shape[0]
        while start < -lo and not c[start].any():
            start += 1
        while stop - 1 > -lo and not c[stop - 1].any():
            stop -= 1
        c = np.array(c[start:stop])
        c.flags.writeable = False
        self._c = c
        self._lo = lo + start
        self.bounded_type = bool(bounded_type)

    # -- constructors -------------------------------------------------

    @classmethod
    def from_dict(cls, coeffs: Mapping[int, object], n: int | None = None,
                  bounded_type: bool = True) -> "LaurentMatrixSymbol":
        if not coeffs:
            if n is None:
                raise ValueError("empty coefficient map needs an explicit n")
            return cls.zero(n).with_bounded_type(bounded_type)
        mats = {int(k): np.atleast_2d(np.asarray(v, dtype=complex)) for k, v in coeffs.items()}
        if n is None:
            n = next(iter(mats.values())).shape[0]
        for k, m in mats.items():
            if m.shape != (n, n):
                raise DimensionMismatch(f"coefficient {k} has shape {m.shape}, expected {(n, n)}")
        lo = min(min(mats), 0)
        hi = max(max(mats), 0)
        stack = np.zeros((hi - lo + 1, n, n), complex)
        for k, m in mats.items():
            stack[k - lo] = m
        return cls(stack, lo, bounded_type)

    @classmethod
    def zero(cls, n: int) -> "LaurentMatrixSymbol":
        return cls(np.zeros((1, n, n)), 0)

    @classmethod
    def constant(cls, A) -> "LaurentMatrixSymbol":
        A = np.atleast_2d(np.asarray(A, dtype=complex))
        return cls(A[None], 0)

    @classmethod
    def monomial(cls, k: int, A) -> "LaurentMatrixSymbol":
        """``A z^k``; ``A`` may be a scalar (n = 1) or a square matrix."""
        return cls.from_dict({k: A})

    @classmethod
    def scalar(cls, coeffs: Mapping[int, complex], bounded_type: bool = True):
        return cls.from_dict({k: [[c]] for k, c in coeffs.items()}, n=1,
                             bounded_type=bounded_type)

    @classmethod
    def diag(cls, *entries: "LaurentMatrixSymbol") -> "LaurentMatrixSymbol":
        """Block-diagonal symbol assembled from smaller symbols."""
        lo = min(e.lo for e in entries)
        hi = max(e.hi for e in entries)
        n = sum(e.n for e in entries)
        out = np.zeros((hi - lo + 1, n, n), complex)
        off = 0
        for e in entries:
            out[e.lo - lo:e.hi - lo + 1, off:off + e.n, off:off + e.n] = e.coeffs
            off += e.n
        return cls(out, lo, all(e.bounded_type for e in entries))

    # -- basic attributes ---------------------------------------------

    @property
    def coeffs(self) -> np.ndarray:
        return self._c

    @property
    def n(self) -> int:
        return self._c.shape[1]

    @property
    def lo(self) -> int:
        return self._lo

    @property
    def hi(self) -> int:
        return self._lo + self._c.shape[0] - 1

    @property
    def d_minus(self) -> int:
        """Largest ``k`` with a (possibly) nonzero coefficient at ``-k``."""
        return -self._lo

    @property
    def d_plus(self) -> int:
        return self.hi

    @property
    def degree(self) -> int:
        return max(self.d_minus, self.d_plus)

    def __getitem__(self, k: int) -> np.ndarray:
        k = int(k)
        if self._lo <= k <= self.hi:
            return self._c[k - self._lo]
        return np.zeros((self.n, self.n), complex)

    def coefficient(self, k: int) -> np.ndarray:
        return self[k]

    def items(self):
        for i, A in enumerate(self._c):
            yield self._lo + i, A

    def window(self, lo: int, hi: int) -> np.ndarray:
        """Coefficients for indices ``lo..hi`` inclusive, zero-filled."""
        out = np.zeros((hi - lo + 1, self.n, self.n), complex)
        a, b = max(lo, self._lo), min(hi, self.hi)
        if a <= b:
            out[a - lo:b - lo + 1] = self._c[a - self._lo:b - self._lo + 1]
        return out

    def trim(self, tol: float = 0.0) -> "LaurentMatrixSymbol":
        """Zero out coefficients with norm ``<= tol`` at the ends of the support."""
        c = np.array(self._c)
        norms = np.linalg.norm(c, axis=(1, 2))
        c[norms <= tol] = 0
        return LaurentMatrixSymbol(c, self._lo, self.bounded_type)

    def with_bounded_type(self, flag: bool) -> "LaurentMatrixSymbol":
        return LaurentMatrixSymbol(self._c, self._lo, flag)

    def __repr__(self):
        return (f"LaurentMatrixSymbol(n={self.n}, support=[{self.lo}, {self.hi}]"
                f"{'' if self.bounded_type else ', not-bounded-type-standin'})")

    def __eq__(self, other):
        if not isinstance(other, LaurentMatrixSymbol):
            return NotImplemented
        return (self.n == other.n and self.lo == other.lo
                and self._c.shape == other._c.shape and np.array_equal(self._c, other._c))

    __hash__ = None

    # -- algebra ------------------------------------------------------

    def _check_n(self, other):
        if self.n != other.n:
            raise DimensionMismatch(f"symbol sizes differ: {self.n} vs {other.n}")

    def __add__(self, other):
        if not isinstance(other, LaurentMatrixSymbol):
            other = LaurentMatrixSymbol.constant(np.asarray(other) * np.eye(self.n))
        self._check_n(other)
        lo, hi = min(self.lo, other.lo), max(self.hi, other.hi)
        return LaurentMatrixSymbol(self.window(lo, hi) + other.window(lo, hi), lo,
                                   self.bounded_type and other.bounded_type)

    __radd__ = __add__

    def __neg__(self):
        return LaurentMatrixSymbol(-self._c, self._lo, self.bounded_type)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, LaurentMatrixSymbol):
            other = np.asarray(other, dtype=complex)
            if other.ndim == 0:
                return LaurentMatrixSymbol(self._c * other, self._lo, self.bounded_type)
            return LaurentMatrixSymbol(self._c @ other, self._lo, self.bounded_type)
        self._check_n(other)
        a, b = self._c, other._c
        out = np.zeros((a.shape[0] + b.shape[0] - 1, self.n, self.n), complex)
        for j in range(a.shape[0]):
            out[j:j + b.shape[0]] += a[j] @ b
        return LaurentMatrixSymbol(out, self._lo + other._lo,
                                   self.bounded_type and other.bounded_type)

    def __rmul__(self, other):
        other = np.asarray(other, dtype=complex)
        if other.ndim == 0:
            return LaurentMatrixSymbol(other * self._c, self._lo, self.bounded_type)
        return LaurentMatrixSymbol(other @ self._c, self._lo, self.bounded_type)

    def __pow__(self, p: int):
        if p < 0:
            raise ValueError("negative powers are not Laurent polynomials in general")
        out = LaurentMatrixSymbol.constant(np.eye(self.n))
        for _ in range(p):
            out = out * self
        return out.with_bounded_type(self.bounded_type)

    # -- symbol transforms --------------------------------------------

    def adjoint(self) -> "LaurentMatrixSymbol":
        """Pointwise adjoint: coefficient ``k`` becomes ``A_{-k}^*``."""
        c = np.conj(self._c[::-1]).transpose(0, 2, 1)
        return LaurentMatrixSymbol(c, -self.hi, self.bounded_type)

    @property
    def H(self) -> "LaurentMatrixSymbol":
        return self.adjoint()

    def breve(self) -> "LaurentMatrixSymbol":
        """``z -> Phi(conj z)``: coefficient ``k`` becomes ``A_{-k}``."""
        return LaurentMatrixSymbol(self._c[::-1], -self.hi, self.bounded_type)

    def tilde(self) -> "LaurentMatrixSymbol":
        """``breve`` followed by pointwise adjoint: ``A_k -> A_k^*`` in place."""
        return LaurentMatrixSymbol(np.conj(self._c).transpose(0, 2, 1), self._lo,
                                   self.bounded_type)

    def bar(self) -> "LaurentMatrixSymbol":
        """Entrywise complex conjugate: coefficient ``k`` becomes ``conj(A_{-k})``."""
        return LaurentMatrixSymbol(np.conj(self._c[::-1]), -self.hi, self.bounded_type)

    def transpose(self) -> "LaurentMatrixSymbol":
        return LaurentMatrixSymbol(self._c.transpose(0, 2, 1), self._lo, self.bounded_type)

    def is_analytic(self, tol: float = 0.0) -> bool:
        if self._lo >= 0:
            return True
        neg = self._c[:-self._lo]
        return bool(np.all(np.linalg.norm(neg, axis=(1, 2)) <= tol))

    def analytic_part(self) -> "LaurentMatrixSymbol":
        return LaurentMatrixSymbol(self._c[-self._lo:], 0, self.bounded_type)

    # -- evaluation ---------------------------------------------------

    def evaluate(self, z: complex, *, on_circle: bool = True) -> np.ndarray:
        """Value of the finite Fourier sum at ``z``.

        With ``on_circle`` (the default) ``z`` must be unimodular.  Analytic
        symbols may be evaluated anywhere by passing ``on_circle=False``.
        """
        z = complex(z)
        if on_circle and abs(abs(z) - 1) > _CIRCLE_TOL:
            raise ValueError(f"|z| = {abs(z)!r} is off the unit circle")
        if z == 0:
            if self._lo < 0:
                raise ZeroDivisionError("symbol has negative powers; cannot evaluate at 0")
            return np.array(self[0])
        powers = np.complex128(z) ** np.arange(self._lo, self.hi + 1)
        return np.tensordot(powers, self._c, axes=1)

    def evaluate_grid(self, m: int) -> np.ndarray:
        """Values at the ``m``-th roots of unity, shape ``(m, n, n)``."""
        z = np.exp(2j * np.pi * np.arange(m) / m)
        k = np.arange(self._lo, self.hi + 1)
        return np.einsum("gk,kij->gij", z[:, None] ** k[None, :], self._c)

    def sup_norm(self, grid: int = 512) -> float:
        vals = self.evaluate_grid(grid)
        return float(np.linalg.norm(vals, ord=2, axis=(1, 2)).max())

    def l1_norm(self) -> float:
        """Sum of coefficient operator norms; bounds ``||T_Phi||``."""
        return float(np.linalg.norm(self._c, ord=2, axis=(1, 2)).sum())

    def is_normal(self, tol: float = DEFAULT_TOL):
        return is_normal_symbol(self, tol)


@dataclass(frozen=True)
class SymbolSplit:
    """``Phi = minus^* + plus`` with ``plus`` analytic and ``minus`` in ``z H^2``."""

    plus: LaurentMatrixSymbol
    minus: LaurentMatrixSymbol

    def reconstruct(self) -> LaurentMatrixSymbol:
        return self.minus.adjoint() + self.plus


def split(phi: LaurentMatrixSymbol) -> SymbolSplit:
    plus = phi.analytic_part()
    neg = LaurentMatrixSymbol(phi.window(phi.lo, -1), phi.lo) if phi.lo < 0 \
        else LaurentMatrixSymbol.zero(phi.n)
    return SymbolSplit(plus=plus, minus=neg.adjoint())


def is_normal_symbol(phi: LaurentMatrixSymbol, tol: float = DEFAULT_TOL):
    """Whether ``Phi^* Phi = Phi Phi^*`` coefficient-wise.

    Returns ``(flag, max_residual)`` where the residual is the largest
    coefficient norm of the difference.
    """
    diff = phi.adjoint() * phi - phi * phi.adjoint()
    res = float(np.linalg.norm(diff.coeffs, ord=2, axis=(1, 2)).max())
    return res <= tol, res


def z_power(k: int, n: int = 1) -> LaurentMatrixSymbol:
    return LaurentMatrixSymbol.monomial(k, np.eye(n))
