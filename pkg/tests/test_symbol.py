import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from btoplab.symbol import (
    DimensionMismatch,
    LaurentMatrixSymbol as L,
    is_normal_symbol,
    split,
    z_power,
)

from conftest import brute_product, grid_coefficients, grid_values


def z():
    return L.scalar({1: 1})


def zbar():
    return L.scalar({-1: 1})


def case2_phi():
    return L.diag(L.scalar({1: 1, -1: 1}), z())


@st.composite
def symbols(draw, n=None):
    n = n or draw(st.integers(1, 3))
    lo = -draw(st.integers(0, 3))
    hi = draw(st.integers(0, 3))
    seed = draw(st.integers(0, 2 ** 32 - 1))
    r = np.random.default_rng(seed)
    shape = (hi - lo + 1, n, n)
    return L(r.standard_normal(shape) + 1j * r.standard_normal(shape), lo)


# -- construction -----------------------------------------------------

def test_trimming_and_degrees():
    c = np.zeros((5, 1, 1))
    c[1, 0, 0] = 2.0
    phi = L(c, -2)
    assert (phi.lo, phi.hi) == (-1, 0)
    assert (phi.d_minus, phi.d_plus) == (1, 0)


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        z() + L.constant(np.eye(2))
    with pytest.raises(DimensionMismatch):
        L.from_dict({0: np.eye(2), 1: np.eye(3)})


def test_coefficient_outside_support_is_zero():
    assert np.array_equal(case2_phi()[5], np.zeros((2, 2)))


# -- multiplication ---------------------------------------------------

def test_z_times_zbar_is_identity():
    prod = L.constant(np.eye(2)) * z_power(1, 2) * z_power(-1, 2)
    assert prod == L.constant(np.eye(2))
    assert (prod.lo, prod.hi) == (0, 0)


def test_square_of_z_plus_zbar():
    s = L.scalar({1: 1, -1: 1})
    assert s * s == L.scalar({2: 1, 0: 2, -2: 1})


@settings(max_examples=40, deadline=None)
@given(symbols(n=2), symbols(n=2))
def test_product_matches_brute_force(a, b):
    ref = brute_product(a, b)
    prod = a * b
    for k, C in ref.items():
        assert np.allclose(prod[k], C, atol=1e-12)


@settings(max_examples=30, deadline=None)
@given(symbols(n=2), symbols(n=2), symbols(n=2))
def test_product_is_associative(a, b, c):
    assert np.allclose(((a * b) * c).coeffs, (a * (b * c)).coeffs, atol=1e-10)


@settings(max_examples=30, deadline=None)
@given(symbols(n=2), symbols(n=2))
def test_product_on_grid(a, b):
    lhs = grid_values(a * b, 32)
    rhs = grid_values(a, 32) @ grid_values(b, 32)
    assert np.allclose(lhs, rhs, atol=1e-10)


# -- transforms -------------------------------------------------------

def test_adjoint_examples():
    assert z_power(1, 2).adjoint() == z_power(-1, 2)
    phi = case2_phi()
    assert phi.adjoint() == L.diag(L.scalar({1: 1, -1: 1}), zbar())


@settings(max_examples=30, deadline=None)
@given(symbols())
def test_adjoint_is_pointwise_conjugate_transpose(phi):
    vals = grid_values(phi, 16)
    assert np.allclose(grid_values(phi.adjoint(), 16), vals.conj().transpose(0, 2, 1))


@settings(max_examples=30, deadline=None)
@given(symbols())
def test_transforms_are_involutions(phi):
    for name in ("adjoint", "breve", "tilde", "bar"):
        assert getattr(getattr(phi, name)(), name)() == phi


@settings(max_examples=30, deadline=None)
@given(symbols())
def test_transform_definitions(phi):
    for k in range(phi.lo - 1, phi.hi + 2):
        assert np.array_equal(phi.breve()[k], phi[-k])
        assert np.array_equal(phi.tilde()[k], phi[k].conj().T)
        assert np.array_equal(phi.bar()[k], np.conj(phi[-k]))


def test_tilde_of_real_diagonal_is_itself():
    K = L.diag(L.scalar({0: 1}), L.scalar({2: 1}))
    assert K.tilde() == K


def test_adjoint_reverses_products(rng):
    from btoplab.generators import random_laurent
    a, b = random_laurent(rng, 2, 2, 1), random_laurent(rng, 2, 1, 3)
    assert np.allclose(((a * b).adjoint()).coeffs, (b.adjoint() * a.adjoint()).coeffs)


# -- split ------------------------------------------------------------

def test_split_case2():
    sp = split(case2_phi())
    assert sp.plus == L.diag(z(), z())
    assert sp.minus == L.diag(z(), L.zero(1))


def test_split_analytic_has_zero_minus():
    phi = L.from_dict({0: np.eye(2), 3: np.ones((2, 2))})
    assert split(phi).minus == L.zero(2)


def test_split_scalar_cbar():
    c = 0.3 - 0.7j
    minus = split(L.scalar({-1: c})).minus
    # oracle: Phi_- evaluated on the grid equals conj(c) z
    zs = np.exp(2j * np.pi * np.arange(8) / 8)
    vals = np.array([minus.evaluate(w)[0, 0] for w in zs])
    assert np.allclose(vals, np.conj(c) * zs)


@settings(max_examples=30, deadline=None)
@given(symbols())
def test_split_reconstructs(phi):
    sp = split(phi)
    assert sp.plus.is_analytic() and sp.minus.is_analytic()
    assert sp.minus[0].any() == False  # noqa: E712
    assert np.allclose(sp.reconstruct().coeffs, phi.coeffs)


# -- normality --------------------------------------------------------

def test_normal_symbol_examples():
    assert is_normal_symbol(case2_phi())[0]
    nilpotent = L.monomial(1, np.array([[0, 1], [0, 0]]))
    flag, res = is_normal_symbol(nilpotent)
    assert not flag and res == 1.0
    # oracle: Phi^* Phi = diag(0, 1) and Phi Phi^* = diag(1, 0) by brute force
    ref1 = brute_product(nilpotent.adjoint(), nilpotent)
    ref2 = brute_product(nilpotent, nilpotent.adjoint())
    assert np.array_equal(ref1[0], np.diag([0, 1])) and np.array_equal(ref2[0], np.diag([1, 0]))


def test_generator_symbols_are_normal(rng):
    from btoplab.generators import qphi_instance
    for _ in range(10):
        phi, _ = qphi_instance(rng, int(rng.integers(1, 4)), int(rng.integers(1, 4)))
        assert is_normal_symbol(phi, 1e-10)[0]


# -- evaluation -------------------------------------------------------

def test_evaluate_examples():
    assert np.allclose(z().evaluate(1j), [[1j]])
    t = 0.7
    w = np.exp(1j * t)
    assert np.allclose(case2_phi().evaluate(w), np.diag([2 * np.cos(t), w]))


def test_evaluate_rejects_points_off_circle():
    with pytest.raises(ValueError):
        case2_phi().evaluate(0.5)
    # analytic symbols may be evaluated inside the disc
    assert np.allclose(z().evaluate(0.5, on_circle=False), [[0.5]])


def test_grid_and_norms():
    phi = L.scalar({1: 1, -1: 0.5})
    vals = phi.evaluate_grid(64)
    assert np.allclose(vals[:, 0, 0], grid_values(phi, 64)[:, 0, 0])
    assert phi.sup_norm(64) == pytest.approx(1.5)
    assert phi.l1_norm() == pytest.approx(1.5)
    assert np.allclose(grid_coefficients(vals, -1), [[0.5]])


def test_is_analytic():
    assert z_power(1, 2).is_analytic()
    assert L.constant(np.eye(2)).is_analytic()
    assert not L.scalar({1: 1, -1: 1}).is_analytic()
    assert split(case2_phi()).plus.is_analytic()
