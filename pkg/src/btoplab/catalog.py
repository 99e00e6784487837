"""Worked examples with known ground truth, plus the checks each one must pass."""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field

import numpy as np

from .classify import classify_dichotomy, qphi_residual
from .config import RunConfig
from .operators import self_commutator
from .potapov import PotapovProduct
from .symbol import LaurentMatrixSymbol

LACUNARY_TERMS = 7  # f = sum_{j<7} 2^-j z^(2^j), degree 64


def lacunary_standin(terms: int = LACUNARY_TERMS) -> LaurentMatrixSymbol:
    """Truncated lacunary series, flagged as a not-bounded-type stand-in."""
    return LaurentMatrixSymbol.scalar({2 ** j: 2.0 ** -j for j in range(terms)},
                                      bounded_type=False)


def _z_plus_zbar() -> LaurentMatrixSymbol:
    return LaurentMatrixSymbol.scalar({1: 1, -1: 1})


def _z() -> LaurentMatrixSymbol:
    return LaurentMatrixSymbol.scalar({1: 1})


@dataclass(frozen=True)
class ExampleCatalogEntry:
    id: str
    phi: LaurentMatrixSymbol
    Q: PotapovProduct
    annotations: dict
    source: str
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        res = qphi_residual(self.phi, self.Q)
        if res >= 1e-12:
            raise ValueError(f"catalog entry {self.id}: Phi - Q Phi^* residual {res:.3g}")


def case2() -> ExampleCatalogEntry:
    phi = LaurentMatrixSymbol.diag(_z_plus_zbar(), _z())
    return ExampleCatalogEntry(
        "case2", phi, PotapovProduct.diagonal_monomial([0, 2]),
        {"subnormal_by_construction": True, "normal": False, "analytic": False},
        "diag(z + conj z, z): bounded-type adjoint, B and Theta not left coprime")


def case3() -> ExampleCatalogEntry:
    f = lacunary_standin()
    phi = LaurentMatrixSymbol.diag(f + f.adjoint(), _z())
    return ExampleCatalogEntry(
        "case3", phi, PotapovProduct.diagonal_monomial([0, 2]),
        {"subnormal_by_construction": True, "normal": False, "analytic": False},
        "diag(f + conj f, z) with f a lacunary stand-in for a non-bounded-type function")


def remark34() -> ExampleCatalogEntry:
    f = lacunary_standin()
    phi = LaurentMatrixSymbol.diag(f + f.adjoint(), _z())
    return ExampleCatalogEntry(
        "remark3.4", phi, PotapovProduct.diagonal_monomial([0, 2]),
        {"subnormal_by_construction": True, "normal": False, "analytic": False},
        "non-injective H_{bar Phi}: range of the commutator meets H(Q)")


def remark35() -> ExampleCatalogEntry:
    f = lacunary_standin()
    zero = LaurentMatrixSymbol.zero(1)
    phi = LaurentMatrixSymbol.diag(f + f.adjoint(), zero).with_bounded_type(False)
    return ExampleCatalogEntry(
        "remark3.5", phi, PotapovProduct.diagonal_monomial([0, 1]),
        {"subnormal_by_construction": True, "normal": True, "analytic": False},
        "self-adjoint diag(phi, 0): both injectivity hypotheses fail")


def scalar_czbar(c: complex = 0.5) -> ExampleCatalogEntry:
    """``phi = z + c conj z`` with ``phi = q conj(phi)``, ``q = (z^2 + c) / (1 + conj(c) z^2)``.

    For ``|c| < 1``, ``q`` is the Blaschke product with zeros ``+-sqrt(-c)``;
    for ``|c| = 1`` it collapses to the constant ``c``.
    """
    c = complex(c)
    if abs(c) > 1:
        raise ValueError("q is inner only for |c| <= 1")
    phi = LaurentMatrixSymbol.scalar({1: 1, -1: c})
    if abs(abs(c) - 1) < 1e-15:
        Q = PotapovProduct(np.array([[c]]))
    else:
        r = cmath.sqrt(-c)
        Q = PotapovProduct.scalar([r, -r])
    return ExampleCatalogEntry(
        "scalar-czbar", phi, Q,
        {"subnormal_by_construction": True if (c == 0 or abs(abs(c) - 1) < 1e-15) else None,
         "normal": abs(abs(c) - 1) < 1e-15, "analytic": c == 0},
        "scalar z + c conj z with a finite Blaschke product q", {"c": [c.real, c.imag]})


CATALOG = {
    "case2": case2,
    "case3": case3,
    "remark3.4": remark34,
    "remark3.5": remark35,
    "scalar-czbar": scalar_czbar,
}


def get_entry(entry_id: str, **params) -> ExampleCatalogEntry:
    try:
        factory = CATALOG[entry_id]
    except KeyError:
        raise KeyError(f"unknown catalog id {entry_id!r}; choose from {sorted(CATALOG)}") from None
    return factory(**params) if params else factory()


def _witness(report, kind):
    for w in report.witnesses:
        if w["kind"] == kind:
            return [np.array(v["re"]) + 1j * np.array(v["im"]) for v in w["vectors"]]
    return []


def _has_vector(vectors, target) -> bool:
    target = np.asarray(target, dtype=complex)
    return any(v.shape == target.shape and np.allclose(v, target, atol=1e-12) for v in vectors)


def run_entry(entry: ExampleCatalogEntry, config: RunConfig | None = None) -> dict:
    """Classify one entry and evaluate its ground-truth checks."""
    cfg = config or RunConfig()
    rep = classify_dichotomy(entry.phi, entry.Q, cfg)
    checks = []

    def check(name, ok):
        checks.append({"name": name, "passed": bool(ok)})

    ann = entry.annotations
    check("annotation_normal", rep.normal_operator == ann["normal"])
    check("annotation_analytic", rep.analytic == ann["analytic"])
    if ann["subnormal_by_construction"]:
        check("subnormal_evidence_up_to_kmax", rep.k_hyponormal_up_to == cfg.k_max)

    if entry.id == "case2":
        check("hyponormal", rep.hyponormal)
        check("not_left_coprime", rep.coprimality is not None and not rep.coprimality["coprime"])
        u = rep.coprimality and rep.coprimality["witness_u"]
        check("coprime_witness_u_is_e2",
              u is not None and np.allclose(np.array(u["re"]) + 1j * np.array(u["im"]), [0, 1]))
        check("verdict_subnormal_evidence", rep.verdict == "subnormal-evidence")
        check("failure_not_coprime", "B and Theta_2 not left coprime"
              in rep.dichotomy["hypothesis_failures"])
    if entry.id in ("case3", "remark3.4"):
        check("hankel_bar_witness_(0,z)",
              _has_vector(_witness(rep, "hankel_bar"), [[0, 0], [0, 1]]))
        C = self_commutator(entry.phi)
        e = np.zeros(C.matrix.shape[0])
        e[1] = 1
        check("commutator_fixed_point_(0,1)", np.abs(C.matrix @ e - e).max() == 0.0)
        check("verdict_subnormal_evidence", rep.verdict == "subnormal-evidence")
    if entry.id == "remark3.5":
        check("toeplitz_adjoint_witness_(0,1)",
              _has_vector(_witness(rep, "toeplitz_adjoint"), [[0, 1]]))
        check("hankel_bar_witness_(0,1)", _has_vector(_witness(rep, "hankel_bar"), [[0, 1]]))
        check("commutator_rank_0", rep.commutator_rank == 0)
    if entry.id == "scalar-czbar":
        check("nakazi_takahashi_structure", rep.qphi_residual < 1e-12)
        c = complex(*entry.params["c"])
        check("hyponormal_iff_|c|<=1", rep.hyponormal == (abs(c) <= 1))

    return {
        "id": entry.id,
        "source": entry.source,
        "params": entry.params,
        "annotations": entry.annotations,
        "q_zeros": [[complex(f.alpha).real, complex(f.alpha).imag] for f in entry.Q.factors],
        "report": rep.to_dict(),
        "checks": checks,
        "all_checks_passed": all(c["passed"] for c in checks),
    }
