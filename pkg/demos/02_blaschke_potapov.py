"""
Blaschke-Potapov products, model spaces and coprimality
=======================================================

A Blaschke-Potapov product is ``v * prod_m (b_m P_m + I - P_m)`` with ``b_m``
a scalar Blaschke factor and ``P_m`` an orthogonal projection.  Its model
space ``H^2 (-) Q H^2`` has dimension ``sum_m rank P_m``.
"""

import numpy as np

from btoplab import LaurentMatrixSymbol as L, PotapovProduct, model_space
from btoplab.generators import random_potapov
from btoplab.potapov import BlaschkeFactor, left_coprime_with_scalar_inner

# %%
# The elementary factor with zero 1/2 has coefficients -1/2, 3/4, 3/8, ...
f = BlaschkeFactor(0.5, [[1]])
print("b_1/2 coefficients:", f.fourier(5)[:, 0, 0].real)

# %%
# Products with zeros away from the origin are rational; their Fourier
# series comes with a rigorous bound on the discarded tail.
rng = np.random.default_rng(1)
Q = random_potapov(rng, 2, 3, radius=0.7)
for N in (8, 16, 32, 64):
    _, tail = Q.fourier(N)
    print(f"N = {N:3d}: tail bound {tail:.2e}")

# %%
# Model spaces.  diag(1, z^2) leaves room for (0, 1) and (0, z).
ms = model_space(PotapovProduct.diagonal_monomial([0, 2]))
print("dim H(diag(1, z^2)) =", ms.dim)
print("basis (first 3 coefficient blocks):\n", np.round(ms.as_series()[:, :3].real, 12) + 0.0)

# A generic product: dimension, orthonormality and membership.
ms = Q.model_space()
print("random product: dim", ms.dim, "ranks", [f.rank for f in Q.factors],
      "orthonormality residual %.1e" % ms.orthonormality_residual(),
      "membership residual %.1e" % ms.membership_residual(Q))

# %%
# Left coprimality of B with theta I, theta a finite Blaschke product.
# B = diag(1, 0) and theta = z share the divisor spanned by (0, 1).
res = left_coprime_with_scalar_inner(L.constant(np.diag([1.0, 0.0])), [0.0])
print("coprime:", res.coprime, "witness u:", res.u.real)

# det B vanishes at 1/2 for B = diag(1, 1 - 2z).
B = L.from_dict({0: np.eye(2), 1: np.diag([0.0, -2.0])})
print("coprime with b_1/2:", left_coprime_with_scalar_inner(B, [0.5]).coprime)
