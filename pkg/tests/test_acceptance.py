"""Acceptance criteria, one test each; every test prints a PASS/FAIL line."""

import subprocess
import sys
import time

import numpy as np
import pytest

from btoplab.catalog import get_entry, run_entry
from btoplab.classify import (
    classify_dichotomy,
    is_hyponormal,
    is_normal_operator,
    verify_lemma31,
    verify_lemma32,
    verify_lemma33,
)
from btoplab.config import RunConfig
from btoplab.generators import (
    qphi_instance_set,
    random_laurent,
    random_potapov,
    random_symbol_set,
)
from btoplab.operators import dense_commutator, identity_suite, self_commutator
from btoplab.potapov import left_coprime_with_scalar_inner
from btoplab.symbol import LaurentMatrixSymbol as L


@pytest.fixture
def report(capsys):
    def _report(number: int, ok: bool, detail: str):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {number}: {detail}")
        assert ok, detail
    return _report


@pytest.fixture(scope="module")
def generator_instances():
    return qphi_instance_set(seed=31, count=50)


def test_criterion_1_identity_suite(report):
    start = time.perf_counter()
    rng = np.random.default_rng(101)
    worst = 0.0
    for phi in random_symbol_set(100, 100, n_max=3, d_max=4):
        psi = random_laurent(rng, phi.n, 0, int(rng.integers(0, 5)))
        theta = random_potapov(rng, phi.n, int(rng.integers(1, 4)), polynomial=True).as_symbol()
        worst = max(worst, max(identity_suite(phi, psi, theta, 64).values()))
    elapsed = time.perf_counter() - start
    report(1, worst < 1e-10 and elapsed < 60,
           f"identity suite on 100 symbols, N = 64: max deviation {worst:.2e}, {elapsed:.1f} s")


def test_criterion_2_lemma31(report, generator_instances):
    start = time.perf_counter()
    worst = max(verify_lemma31(phi, Q).relative_frobenius for phi, Q in generator_instances)
    elapsed = time.perf_counter() - start
    report(2, worst < 1e-8 and elapsed < 60,
           f"two-path commutator on 50 instances: relative error {worst:.2e}, {elapsed:.1f} s")


def test_criterion_3_lemma32(report, generator_instances):
    e = get_entry("case2")
    r = verify_lemma32(e.phi, e.Q)
    target = np.zeros(r.range_basis.shape[0])
    target[1] = 1  # (0, e_0)
    case2_ok = ((r.dim_range, r.dim_image) == (1, 1) and r.passed
                and all(abs(abs(np.vdot(b[:, 0], target)) - 1) < 1e-12
                        for b in (r.range_basis, r.image_basis)))
    reports = [verify_lemma32(phi, Q) for phi, Q in generator_instances[:20]]
    dims_ok = all(x.dim_range == x.dim_image for x in reports)
    angle = max(x.max_angle for x in reports)
    report(3, case2_ok and dims_ok and angle < 1e-6,
           f"case2 span(0, e0) dims (1, 1): {case2_ok}; 20 instances dims match: {dims_ok}, "
           f"max angle {angle:.2e}")


def test_criterion_4_lemma33(report, generator_instances):
    reps = [verify_lemma33(phi, Q) for phi, Q in generator_instances]
    bound = all(r.bound_holds for r in reps)
    e = get_entry("case2")
    r = verify_lemma33(e.phi, e.Q)
    exact = (r.commutator_rank, r.dim_model_space) == (1, 2)
    report(4, bound and exact,
           f"rank <= dim H(Q) on {len(reps)} instances: {bound}; case2 (rank, dim) = "
           f"({r.commutator_rank}, {r.dim_model_space})")


def test_criterion_5_scalar_family(report):
    lines, ok = [], True
    for c in (0, 0.5, 1, 1 + 0.5j, 2):
        phi = L.scalar({1: 1, -1: c})
        C = self_commutator(phi).padded(4)
        ref = np.zeros((4, 4))
        ref[0, 0] = 1 - abs(c) ** 2
        dev = float(np.abs(C - ref).max())
        hypo = is_hyponormal(phi)[0]
        normal = is_normal_operator(phi).normal
        good = dev < 1e-12 and hypo == (abs(c) <= 1) and normal == (abs(c) == 1)
        ok &= good
        lines.append(f"c={c}: dev {dev:.1e} hypo {hypo} normal {normal}")
    report(5, ok, "; ".join(lines))


def test_criterion_6_catalog_fidelity(report):
    e2 = get_entry("case2")
    rep = classify_dichotomy(e2.phi, e2.Q)
    cop = left_coprime_with_scalar_inner(L.constant(np.diag([1.0, 0.0])), [0.0])
    case2_ok = (rep.hyponormal and rep.k_hyponormal_up_to == 4 and not rep.normal_operator
                and not rep.analytic and not cop.coprime and rep.coprimality["coprime"] is False)
    r34 = run_entry(get_entry("remark3.4"))
    names34 = {c["name"]: c["passed"] for c in r34["checks"]}
    r34_ok = names34["hankel_bar_witness_(0,z)"] and names34["commutator_fixed_point_(0,1)"]
    r35 = run_entry(get_entry("remark3.5"))
    names35 = {c["name"]: c["passed"] for c in r35["checks"]}
    r35_ok = (names35["toeplitz_adjoint_witness_(0,1)"] and names35["hankel_bar_witness_(0,1)"]
              and names35["commutator_rank_0"])
    report(6, case2_ok and r34_ok and r35_ok,
           f"case2 {case2_ok}, remark3.4 witnesses {r34_ok}, remark3.5 witnesses {r35_ok}")


def test_criterion_7_model_space(report):
    rng = np.random.default_rng(7)
    worst, dims_ok, additive = 0.0, True, True
    for _ in range(50):
        n, M = int(rng.integers(1, 4)), int(rng.integers(1, 5))
        Q = random_potapov(rng, n, M)
        ms = Q.model_space()
        dims_ok &= ms.dim == sum(f.rank for f in Q.factors)
        worst = max(worst, ms.orthonormality_residual())
        R = random_potapov(rng, n, int(rng.integers(0, 4)))
        additive &= (Q * R).model_space().dim == ms.dim + R.model_space().dim
    report(7, dims_ok and additive and worst < 1e-10,
           f"50 products: dim = sum of ranks {dims_ok}, additivity {additive}, "
           f"orthonormality residual {worst:.1e}")


def test_criterion_8_determinism(report, tmp_path):
    outs = []
    for i in range(2):
        path = tmp_path / f"run{i}.json"
        proc = subprocess.run([sys.executable, "-m", "btoplab", "catalog", "--seed", "3",
                               "--out", str(path)], capture_output=True, text=True, check=False)
        assert proc.returncode == 0, proc.stderr
        outs.append(path.read_bytes())
    report(8, outs[0] == outs[1],
           f"two catalog runs: {len(outs[0])} bytes each, identical {outs[0] == outs[1]}")


def test_criterion_9_oracle_equivalence(report):
    worst = 0.0
    for phi in random_symbol_set(909, 30):
        C = self_commutator(phi)
        k = C.matrix.shape[0]
        s = max(phi.degree, 1)
        D = dense_commutator(phi, 4 * max(s, k // phi.n))[:k, :k]
        worst = max(worst, float(np.abs(C.matrix - D).max()))
    report(9, worst < 1e-12, f"certified vs dense commutator on 30 symbols: max entry "
                             f"difference {worst:.1e}")
