"""Deciding and witnessing operator properties of block Toeplitz operators.

Every decision here is exact for Laurent polynomial symbols up to floating
point: self-commutators of normal symbols have finite support, and the
windows used for operator words are certified by bandwidth bookkeeping.
Subnormality itself is only reported as k-hyponormality evidence.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Sequence

import numpy as np
import scipy.linalg

from .config import RunConfig
from .operators import (
    certified_product,
    commutator_support,
    hankel_matrix,
    self_commutator,
    toeplitz_matrix,
)
from .potapov import PotapovProduct, left_coprime_with_scalar_inner
from .symbol import LaurentMatrixSymbol, is_normal_symbol, split


class PreconditionError(ValueError):
    pass


class NotInEPhi(PreconditionError):
    pass


class WindowInstability(RuntimeError):
    pass


def is_analytic(phi: LaurentMatrixSymbol, tol: float = 0.0) -> bool:
    return phi.is_analytic(tol)


def is_hyponormal(phi: LaurentMatrixSymbol, tol_psd: float = 1e-9, tol_coeff: float = 1e-10):
    """``(flag, min_eigenvalue)``.

    A non-normal symbol never gives a hyponormal operator; its minimum
    eigenvalue is still reported from an exact window of the commutator.
    """
    normal, _ = is_normal_symbol(phi, tol_coeff)
    C = self_commutator(phi, normal_tol=tol_coeff)
    lam = C.min_eigenvalue
    if not normal:
        return False, lam
    scale = max(1.0, float(np.abs(C.eigenvalues).max(initial=0.0)))
    return lam >= -tol_psd * scale, lam


# -- E(Phi) -----------------------------------------------------------

@dataclass(frozen=True)
class EPhiCertificate:
    K: object
    sup_norm: float
    analytic_residual: float
    k_analytic: bool = True

    @property
    def member(self) -> bool:
        return self.k_analytic and self.sup_norm <= 1 + 1e-10 and self.analytic_residual <= 1e-10

    def to_dict(self):
        return {"sup_norm": self.sup_norm, "analytic_residual": self.analytic_residual,
                "member": self.member}


def _as_analytic_symbol(K, length: int) -> LaurentMatrixSymbol:
    if isinstance(K, PotapovProduct):
        sym, _ = K.fourier(max(length, 1))
        return sym
    return K


def check_ephi(phi: LaurentMatrixSymbol, K, grid: int = 512) -> EPhiCertificate:
    """Membership evidence for ``K`` in ``E(Phi)``.

    The negative Fourier coefficients of ``Phi - K Phi^*`` only involve the
    first ``d+ + 1`` coefficients of ``K``, so the residual is exact even for
    rational ``K`` given as a Potapov product.
    """
    if isinstance(K, PotapovProduct):
        k_sym = _as_analytic_symbol(K, phi.d_plus + 1)
        sup = float(np.linalg.norm(K.evaluate_grid(grid), ord=2, axis=(1, 2)).max())
        analytic = True
    else:
        k_sym = K
        sup = K.sup_norm(grid)
        analytic = K.is_analytic()
    g = phi - k_sym * phi.adjoint()
    neg = g.window(min(g.lo, -1), -1)
    res = float(np.linalg.norm(neg, ord=2, axis=(1, 2)).max()) if neg.size else 0.0
    return EPhiCertificate(K, sup, res, analytic)


def _require_ephi(phi, K, grid=512):
    cert = check_ephi(phi, K, grid)
    if not cert.member:
        raise NotInEPhi(f"K is not in E(Phi): sup norm {cert.sup_norm:.3g}, "
                        f"analytic residual {cert.analytic_residual:.3g}")
    return cert


# -- normality --------------------------------------------------------

@dataclass(frozen=True)
class NormalOperatorResult:
    normal: bool
    criterion_applicable: bool
    U: np.ndarray | None
    residual: float
    commutator_rank: int
    diagnostic: str = ""


def is_normal_operator(phi: LaurentMatrixSymbol, tol: float = 1e-8,
                       tol_coeff: float = 1e-10) -> NormalOperatorResult:
    """Normality of ``T_Phi`` through ``Phi_+ - Phi_+(0) = Phi_- U``.

    The constant unitary ``U`` is found by orthogonal Procrustes on the
    stacked coefficients.  The criterion needs ``det Phi_+`` not identically
    zero (tested on 64 roots of unity); otherwise the vanishing of the
    self-commutator decides, and it is always used as a cross-check.
    """
    normal_sym, _ = is_normal_symbol(phi, tol_coeff)
    C = self_commutator(phi, normal_tol=tol_coeff)
    comm_zero = normal_sym and C.rank == 0
    sp = split(phi)
    dets = np.linalg.det(sp.plus.evaluate_grid(64))
    applicable = bool(np.abs(dets).max() > tol_coeff)
    d = max(phi.d_plus, phi.d_minus, 1)
    A = sp.minus.window(1, d).reshape(-1, phi.n)
    B = sp.plus.window(1, d).reshape(-1, phi.n)
    W, _, Vh = np.linalg.svd(A.conj().T @ B)
    U = W @ Vh
    residual = float(np.abs(A @ U - B).max())
    criterion = normal_sym and residual <= tol
    if not applicable:
        return NormalOperatorResult(comm_zero, False, None, residual, C.rank,
                                    "criterion inapplicable, used commutator test")
    diag = "" if criterion == comm_zero else \
        f"criterion ({criterion}) disagrees with commutator test ({comm_zero})"
    return NormalOperatorResult(criterion, True, U if criterion else None, residual,
                                C.rank, diag)


# -- k-hyponormality --------------------------------------------------

@dataclass(frozen=True)
class KHyponormality:
    k_max: int
    passed: tuple
    min_eigenvalues: tuple
    window: int
    note: str = ""

    @property
    def subnormal_evidence(self) -> bool:
        return all(self.passed)

    @property
    def k_hyponormal_up_to(self) -> int:
        k = 0
        for p in self.passed:
            if not p:
                break
            k += 1
        return k


def _commutator_blocks(phi: LaurentMatrixSymbol, k: int, W: int) -> dict:
    """``{(i, j): [T^{*j}, T^i]}`` on the top-left ``W`` blocks, ``1 <= i, j <= k``."""
    n = phi.n
    M = W + 2 * k * phi.degree
    T = toeplitz_matrix(phi, M)
    powers = [np.eye(M * n, dtype=complex), T]
    for _ in range(k - 1):
        powers.append(powers[-1] @ T)
    w = W * n
    out = {}
    for i in range(1, k + 1):
        P = powers[i]
        for j in range(1, k + 1):
            A = powers[j].conj().T
            out[i, j] = A[:w] @ P[:, :w] - P[:w] @ A[:, :w]
    return out


def k_hyponormality(phi: LaurentMatrixSymbol, k_max: int = 4, N: int = 64,
                    tol_psd: float = 1e-9, tol_coeff: float = 1e-10,
                    stability_tol: float = 1e-12, max_window: int = 4096) -> KHyponormality:
    """Bram-Halmos test: ``([T^{*j}, T^i])_{i,j=1..k}`` positive semidefinite.

    For a normal symbol every block has finite support.  The blocks are
    computed on a window of ``N`` blocks and again on ``2N``; nonzero entries
    outside the first window enlarge it, and the final window reproduces the
    small one.  The symbol is rescaled to ``||T|| <= 1`` first, a congruence
    that does not change positivity.
    """
    normal, _ = is_normal_symbol(phi, tol_coeff)
    if not normal:
        _, lam = is_hyponormal(phi, tol_psd, tol_coeff)
        return KHyponormality(k_max, (False,) * k_max, (lam,) + (float("nan"),) * (k_max - 1), 0,
                              "symbol not normal: not hyponormal")
    scale = max(phi.l1_norm(), 1e-300)
    psi = phi * (1 / scale)
    n = phi.n
    W = max(N, commutator_support(phi))
    while True:
        big = _commutator_blocks(psi, k_max, 2 * W)
        w = W * n
        spill = max(max(np.abs(b[w:]).max(initial=0), np.abs(b[:, w:]).max(initial=0))
                    for b in big.values())
        if spill <= stability_tol:
            break
        if 2 * W > max_window:
            raise WindowInstability(f"commutator words not supported in {max_window} blocks "
                                    f"(spill {spill:.3g})")
        W *= 2
    small = _commutator_blocks(psi, k_max, W)
    drift = max(np.abs(small[key] - big[key][:w, :w]).max() for key in small)
    if drift > stability_tol:
        raise WindowInstability(f"window entries changed by {drift:.3g} on enlargement")
    passed, mins = [], []
    for k in range(1, k_max + 1):
        Mk = np.block([[small[i, j] for j in range(1, k + 1)] for i in range(1, k + 1)])
        Mk = (Mk + Mk.conj().T) / 2
        eig = np.linalg.eigvalsh(Mk)
        lam = float(eig[0])
        ok = lam >= -tol_psd * max(1.0, float(np.abs(eig).max()))
        # principal submatrices: failure at k forces failure beyond
        passed.append(ok and (not passed or passed[-1]))
        mins.append(lam)
    return KHyponormality(k_max, tuple(passed), tuple(mins), W)


# -- kernel invariance ------------------------------------------------

def kernel_invariance_check(phi: LaurentMatrixSymbol, tol: float = 1e-10,
                            tol_coeff: float = 1e-10):
    """Whether ``ker [T^*, T]`` is invariant under ``T``; returns ``(flag, residual)``.

    With support ``s`` the kernel is ``ker C_s`` (+) everything beyond block
    ``s``.  Tail vectors past block ``s + d-`` cannot reach the first ``s``
    blocks under ``T``, so finitely many test vectors decide the question.
    """
    C = self_commutator(phi, normal_tol=tol_coeff)
    if not C.finite:
        raise PreconditionError("kernel invariance needs a normal symbol (finite commutator)")
    s, n = C.support_blocks, phi.n
    Cs = C.matrix
    cscale = max(1.0, float(np.abs(C.eigenvalues).max(initial=0)))
    K = scipy.linalg.null_space(Cs, rcond=1e-10) if C.rank else np.eye(s * n)
    width = s + phi.d_minus
    tests = np.zeros((width * n, K.shape[1] + (width - s) * n), complex)
    tests[:s * n, :K.shape[1]] = K
    tests[s * n:, K.shape[1]:] = np.eye((width - s) * n)
    T = toeplitz_matrix(phi, width)[:s * n]
    res = np.abs(Cs @ (T @ tests)).max(initial=0.0)
    res = float(res / (cscale * max(1.0, phi.l1_norm())))
    return res < tol, res


# -- lemma verifiers --------------------------------------------------

def _psd_range(C: np.ndarray, tol: float = 1e-10, scale: float = 0.0) -> np.ndarray:
    """Orthonormal basis of the numerical range of ``C``, relative to ``max(||C||, scale)``."""
    if C.size == 0:
        return np.zeros((C.shape[0], 0))
    U, s, _ = np.linalg.svd(C, full_matrices=False)
    ref = max(s[0], scale)
    if ref == 0:
        return U[:, :0]
    return U[:, s > tol * ref]


@dataclass(frozen=True)
class Lemma31Report:
    max_deviation: float
    relative_frobenius: float
    ephi: EPhiCertificate


def verify_lemma31(phi: LaurentMatrixSymbol, K, grid: int = 512) -> Lemma31Report:
    """Compare ``[T^*, T]`` with ``H_{Phi^*}^* (I - T_{K~} T_{K~}^*) H_{Phi^*}``."""
    cert = _require_ephi(phi, K, grid)
    lhs = self_commutator(phi)
    s = lhs.support_blocks or commutator_support(phi)
    k_sym = _as_analytic_symbol(K, s)
    kt = k_sym.tilde()
    H = hankel_matrix(phi.adjoint(), s)
    TT = certified_product([("T", kt), ("T", kt.adjoint())], s)
    rhs = H.conj().T @ (np.eye(s * phi.n) - TT) @ H
    L = lhs.padded(s)
    diff = L - rhs
    denom = np.linalg.norm(L)
    rel = float(np.linalg.norm(diff) / denom) if denom > 0 else float(np.linalg.norm(diff))
    return Lemma31Report(float(np.abs(diff).max()), rel, cert)


def image_of_model_space(phi: LaurentMatrixSymbol, theta: PotapovProduct,
                         tol: float = 1e-12) -> np.ndarray:
    """Columns ``T_{Phi Theta^*} g`` for ``g`` in an orthonormal basis of ``H(Theta)``.

    ``Theta^* g`` is anti-analytic, and only its first ``d+`` negative
    coefficients survive the projection after multiplying by ``Phi``.  The
    output vectors live in the first ``max(d+, 1)`` blocks.
    """
    n, dp = phi.n, phi.d_plus
    L = max(dp, 1)
    ms = theta.model_space(tol=tol)
    if ms.dim == 0:
        return np.zeros((L * n, 0), complex)
    g = ms.as_series()  # (dim, N, n)
    th, _ = theta.fourier(ms.N + dp + 1)
    thc = th.window(0, ms.N + dp)
    # h[m] = coefficient of z^{-m} in Theta^* g, m = 1..dp
    h = np.zeros((ms.dim, dp + 1, n), complex)
    for m in range(1, dp + 1):
        blocks = np.conj(thc[m:m + ms.N]).transpose(0, 2, 1)  # (N, n, n)
        h[:, m] = np.einsum("jab,djb->da", blocks, g)
    out = np.zeros((ms.dim, L, n), complex)
    for i in range(dp):
        for m in range(1, dp + 1):
            if i + m <= dp:
                out[:, i] += h[:, m] @ phi[i + m].T
    return out.reshape(ms.dim, L * n).T


@dataclass(frozen=True)
class Lemma32Report:
    dim_range: int
    dim_image: int
    max_angle: float
    range_basis: np.ndarray
    image_basis: np.ndarray
    tol_angle: float = 1e-6

    @property
    def passed(self) -> bool:
        return self.dim_range == self.dim_image and self.max_angle < self.tol_angle


def verify_lemma32(phi: LaurentMatrixSymbol, theta: PotapovProduct, tol_angle: float = 1e-6,
                   grid: int = 512, tol_coeff: float = 1e-10) -> Lemma32Report:
    """Compare the range of ``[T^*, T]`` with ``T_{Phi Theta^*} H(Theta)``."""
    normal, _ = is_normal_symbol(phi, tol_coeff)
    if not normal:
        raise PreconditionError("symbol is not normal")
    _require_ephi(phi, theta, grid)
    C = self_commutator(phi)
    s = C.support_blocks
    L = max(s, max(phi.d_plus, 1))
    scale = phi.l1_norm()
    R = _psd_range(C.padded(L), scale=scale ** 2)
    img = image_of_model_space(phi, theta)
    pad = np.zeros((L * phi.n, img.shape[1]), complex)
    pad[:img.shape[0]] = img
    I = _psd_range(pad, scale=scale)
    if R.shape[1] == 0 and I.shape[1] == 0:
        angle = 0.0
    elif R.shape[1] == 0 or I.shape[1] == 0:
        angle = np.pi / 2
    else:
        angle = float(np.max(scipy.linalg.subspace_angles(R, I)))
    return Lemma32Report(R.shape[1], I.shape[1], angle, R, I, tol_angle)


@dataclass(frozen=True)
class Lemma33Report:
    commutator_rank: int
    dim_model_space: int

    @property
    def bound_holds(self) -> bool:
        return self.commutator_rank <= self.dim_model_space


def verify_lemma33(phi: LaurentMatrixSymbol, Q: PotapovProduct, grid: int = 512) -> Lemma33Report:
    """``rank [T^*, T] <= dim H(Q)`` for ``Q`` in ``E(Phi)``."""
    _require_ephi(phi, Q, grid)
    C = self_commutator(phi)
    return Lemma33Report(C.rank, Q.model_space().dim)


# -- injectivity witnesses --------------------------------------------

TOEPLITZ_ADJOINT, HANKEL_BAR = "toeplitz_adjoint", "hankel_bar"


@dataclass(frozen=True)
class InjectivityWitness:
    operator: str
    degree_bound: int
    degree: int | None
    vectors: tuple  # each of shape (degree + 1, n)
    certified: bool = True

    @property
    def found(self) -> bool:
        return bool(self.vectors)


def _canonical_basis(N: np.ndarray) -> np.ndarray:
    """A readable basis of ``span(N)``: unit pivots, small entries cleared."""
    r = N.shape[1]
    _, _, piv = scipy.linalg.qr(N.conj().T, pivoting=True)
    piv = np.sort(piv[:r])
    B = N @ np.linalg.inv(N[piv])
    B[np.abs(B) < 1e-12] = 0
    return B / np.linalg.norm(B, axis=0)


def _restricted_operator(op: str, phi: LaurentMatrixSymbol, D: int) -> np.ndarray:
    n = phi.n
    cols = (D + 1) * n
    if op == HANKEL_BAR:
        sym = phi.bar()
        rows = max(D + 1, sym.d_minus, 1)
        return hankel_matrix(sym, rows)[:, :cols]
    if op == TOEPLITZ_ADJOINT:
        sym = phi.adjoint()
        # T_{Phi^*} maps degree <= D into degree <= D + d+(Phi^*)
        return toeplitz_matrix(sym, D + 1 + sym.d_plus)[:, :cols]
    raise ValueError(f"unknown operator {op!r}")


def injectivity_witness(op: str, phi: LaurentMatrixSymbol, degree_bound: int = 4,
                        rcond: float = 1e-10) -> InjectivityWitness:
    """Search polynomial vectors of degree ``<= degree_bound`` in the kernel.

    ``op`` is ``"toeplitz_adjoint"`` (``T_{Phi^*}``) or ``"hankel_bar"``
    (``H_{bar Phi}``).  Every row the candidate vectors can reach is kept, so
    a vector found is a genuine kernel element.  Finding nothing is not a
    proof of injectivity.
    """
    for D in range(degree_bound + 1):
        A = _restricted_operator(op, phi, D)
        if not np.any(A):
            null = np.eye(A.shape[1], dtype=complex)
        else:
            null = scipy.linalg.null_space(A, rcond=rcond)
        if null.shape[1]:
            B = _canonical_basis(null)
            vecs = tuple(B[:, c].reshape(D + 1, phi.n) for c in range(B.shape[1]))
            return InjectivityWitness(op, degree_bound, D, vecs)
    return InjectivityWitness(op, degree_bound, None, ())


# -- classification report -------------------------------------------

VERDICTS = ("normal", "analytic", "subnormal-evidence", "hyponormal-only", "not-hyponormal")


@dataclass
class ClassificationReport:
    n: int
    support: list
    bounded_type: bool
    analytic: bool
    normal_symbol: bool
    normal_symbol_residual: float
    hyponormal: bool
    min_eigenvalue: float
    normal_operator: bool
    normal_operator_detail: dict
    k_max: int
    k_hyponormal: list
    k_hyponormal_up_to: int
    commutator_rank: int
    kernel_invariant: bool | None
    dim_model_space: int | None
    qphi_residual: float | None
    ephi: dict | None
    case: str
    coprimality: dict | None
    witnesses: list
    verdict: str
    dichotomy: dict
    config: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return asdict(self)


def qphi_residual(phi: LaurentMatrixSymbol, Q: PotapovProduct, grid: int = 512) -> float:
    """``max |Phi - Q Phi^*|``, exact by coefficients when ``Q`` is polynomial."""
    if Q.is_polynomial:
        d = phi - Q.as_symbol() * phi.adjoint()
        return float(np.abs(d.coeffs).max())
    return Q.adjoint_residual(phi, grid)


def minimal_anti_analytic_factor(phi: LaurentMatrixSymbol, tol: float = 1e-10):
    """``Phi_- = B^* Theta_2`` with ``Theta_2 = z^d I`` and ``d`` minimal.

    Returns ``(B, d)``.  ``B = z^d Phi_-^*`` is analytic of degree ``< d``.
    """
    phi = phi.trim(tol)
    d = phi.d_minus
    if d == 0:
        return LaurentMatrixSymbol.zero(phi.n), 0
    c = phi.window(-d, -1)  # Phi_{-d}, ..., Phi_{-1}
    return LaurentMatrixSymbol(c, 0), d


def _vector_payload(v: np.ndarray) -> dict:
    return {"re": np.real(v).tolist(), "im": np.imag(v).tolist()}


def _fixed_point_witness(C, n):
    """Eigenvectors of the commutator support block with eigenvalue 1."""
    out = []
    w, V = np.linalg.eigh(C.matrix)
    for lam, v in zip(w, V.T):
        if abs(lam - 1) < 1e-10:
            i = int(np.argmax(np.abs(v)))
            v = v * np.exp(-1j * np.angle(v[i]))
            v[np.abs(v) < 1e-14] = 0
            v = v.reshape(-1, n)
            last = np.flatnonzero(np.abs(v).max(axis=1))
            out.append(v[:last[-1] + 1] if last.size else v[:1])
    return out


def classify(phi: LaurentMatrixSymbol, Q: PotapovProduct | None = None,
             config: RunConfig | None = None, require_qphi: bool = False) -> ClassificationReport:
    """Run every test on ``T_Phi``; with ``Q`` also the ``Phi = Q Phi^*`` analysis."""
    cfg = config or RunConfig()
    tc = cfg.tol_coeff
    normal_sym, nres = is_normal_symbol(phi, tc)
    hypo, lam = is_hyponormal(phi, cfg.tol_psd, tc)
    nop = is_normal_operator(phi, tol_coeff=tc)
    kh = k_hyponormality(phi, cfg.k_max, cfg.n_trunc, cfg.tol_psd, tc)
    analytic = phi.is_analytic(tc)
    C = self_commutator(phi, normal_tol=tc)
    kernel_inv = kernel_invariance_check(phi, tol_coeff=tc)[0] if C.finite else None

    qres = ephi = dim = None
    if Q is not None:
        if Q.n != phi.n:
            raise PreconditionError("Q and Phi have different sizes")
        qres = qphi_residual(phi, Q, cfg.grid)
        if require_qphi and qres >= tc:
            raise PreconditionError(f"Phi != Q Phi^* (residual {qres:.3g})")
        ephi = check_ephi(phi, Q, cfg.grid).to_dict()
        dim = Q.model_space_dim

    witnesses = []
    for op in (HANKEL_BAR, TOEPLITZ_ADJOINT):
        w = injectivity_witness(op, phi, cfg.witness_degree)
        if w.found:
            witnesses.append({"kind": op, "degree": w.degree,
                              "vectors": [_vector_payload(v) for v in w.vectors]})
    if C.finite:
        for v in _fixed_point_witness(C, phi.n):
            witnesses.append({"kind": "commutator_fixed_point", "degree": v.shape[0] - 1,
                              "vectors": [_vector_payload(v)]})

    # case split for the structure Phi = Q Phi^*
    coprime = None
    failures = []
    if not phi.bounded_type:
        case = "case3"
        failures.append("Phi^* declared not of bounded type")
        for w in witnesses:
            if w["kind"] == HANKEL_BAR:
                failures.append("H_{bar Phi} not injective: witness found")
            if w["kind"] == TOEPLITZ_ADJOINT:
                failures.append("T_{Phi^*} not injective: witness found")
    else:
        B, d = minimal_anti_analytic_factor(phi, tc)
        if d == 0:
            case = "case1"
            coprime = {"theta_degree": 0, "coprime": True, "witness_u": None}
        else:
            res = left_coprime_with_scalar_inner(B, [0.0])
            coprime = {"theta_degree": d, "coprime": res.coprime,
                       "witness_u": None if res.u is None else _vector_payload(res.u)}
            case = "case1" if res.coprime else "case2"
            if not res.coprime:
                failures.append("B and Theta_2 not left coprime")

    if nop.normal:
        verdict, outcome = "normal", "normal"
    elif analytic:
        verdict, outcome = "analytic", "analytic"
    elif kh.subnormal_evidence:
        verdict, outcome = "subnormal-evidence", "neither"
    elif hypo:
        verdict, outcome = "hyponormal-only", "neither"
    else:
        verdict, outcome = "not-hyponormal", "neither"

    if verdict in ("normal", "analytic"):
        expected, consistent = "normal-or-analytic", True
    elif verdict != "subnormal-evidence":
        expected, consistent = "not-applicable", True
    elif case == "case1":
        expected, consistent = "normal-or-analytic", False
    elif case == "case2":
        expected, consistent = "counterexample-permitted", True
    elif len(failures) > 1:
        expected, consistent = "counterexample-permitted", True
    else:
        expected, consistent = "normal", False
    dichotomy = {"outcome": outcome, "expected": expected, "consistent": consistent,
                 "hypothesis_failures": failures}
    if not consistent:
        dichotomy["note"] = (f"k-hyponormal up to {cfg.k_max} but neither normal nor analytic; "
                             "finite-order evidence does not certify subnormality")

    return ClassificationReport(
        n=phi.n,
        support=[phi.lo, phi.hi],
        bounded_type=phi.bounded_type,
        analytic=analytic,
        normal_symbol=normal_sym,
        normal_symbol_residual=nres,
        hyponormal=hypo,
        min_eigenvalue=lam,
        normal_operator=nop.normal,
        normal_operator_detail={
            "criterion_applicable": nop.criterion_applicable,
            "U": None if nop.U is None else _vector_payload(nop.U),
            "residual": nop.residual,
            "commutator_rank": nop.commutator_rank,
            "diagnostic": nop.diagnostic,
        },
        k_max=cfg.k_max,
        k_hyponormal=[{"k": k + 1, "passed": p, "min_eigenvalue": m}
                      for k, (p, m) in enumerate(zip(kh.passed, kh.min_eigenvalues))],
        k_hyponormal_up_to=kh.k_hyponormal_up_to,
        commutator_rank=C.rank,
        kernel_invariant=kernel_inv,
        dim_model_space=dim,
        qphi_residual=qres,
        ephi=ephi,
        case=case,
        coprimality=coprime,
        witnesses=witnesses,
        verdict=verdict,
        dichotomy=dichotomy,
        config=cfg.to_dict(),
    )


def classify_dichotomy(phi: LaurentMatrixSymbol, Q: PotapovProduct,
                       config: RunConfig | None = None) -> ClassificationReport:
    """``classify`` with the precondition ``Phi = Q Phi^*`` enforced."""
    return classify(phi, Q, config, require_qphi=True)
