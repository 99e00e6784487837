"""
Matrix Laurent symbols and their Toeplitz and Hankel truncations
================================================================

A symbol is a finite Fourier series ``Phi(z) = sum_k Phi_k z^k`` with
``n x n`` matrix coefficients.  This script builds a few, multiplies them,
looks at their truncated Toeplitz and Hankel matrices, and checks the basic
identities relating the two families of operators.
"""

import numpy as np

from btoplab import LaurentMatrixSymbol as L
from btoplab.generators import random_laurent, random_potapov
from btoplab.operators import hankel, identity_suite, operator_word, toeplitz
from btoplab.symbol import split

# %%
# Building symbols.  ``diag(z + conj z, z)`` is the running example: a
# self-adjoint entry next to the unilateral shift.
phi = L.diag(L.scalar({1: 1, -1: 1}), L.scalar({1: 1}))
print(phi, "support", (phi.lo, phi.hi))

# Products are convolutions of coefficient stacks.
s = L.scalar({1: 1, -1: 1})
print("(z + conj z)^2 coefficients:", {k: c[0, 0].real for k, c in (s * s).items()})

# %%
# The analytic / co-analytic split ``Phi = Phi_-^* + Phi_+``.
sp = split(phi)
print("Phi_+ coefficient of z:\n", sp.plus[1].real)
print("Phi_- coefficient of z:\n", sp.minus[1].real)

# %%
# Truncated operators.  Block (i, j) of the Toeplitz matrix is Phi_{i-j};
# block (i, j) of the Hankel matrix is Phi_{-1-i-j}.
T = toeplitz(phi, 3)
print("T_Phi on 3 blocks:\n", T.matrix.real)
H = hankel(phi, 3)
print("H_Phi on 3 blocks (complete: %s):\n" % H.complete, H.matrix.real)

# %%
# Words in T and T^* are computed on a window large enough to be exact.
w = operator_word(phi, "T*T", 3)
print("T^*T top-left block:\n", w.block(0, 0).real)

# %%
# Identities among Toeplitz and Hankel operators, checked on random data.
rng = np.random.default_rng(0)
phi = random_laurent(rng, 2, 3, 2)
psi = random_laurent(rng, 2, 0, 3)              # analytic
theta = random_potapov(rng, 2, 2, polynomial=True).as_symbol()  # inner polynomial
for name, dev in identity_suite(phi, psi, theta, 32).items():
    print(f"{name:>18s}: {dev:.1e}")
