"""
Self-commutators, hyponormality and k-hyponormality
===================================================

For ``phi = z + c conj z`` the self-commutator of ``T_phi`` is the rank-one
operator ``(1 - |c|^2) e_0 e_0^*``: hyponormal exactly when ``|c| <= 1``,
normal exactly on the circle ``|c| = 1``.
"""

import numpy as np

from btoplab import LaurentMatrixSymbol as L
from btoplab import is_hyponormal, is_normal_operator, k_hyponormality, self_commutator
from btoplab.classify import kernel_invariance_check
from btoplab.operators import dense_commutator

# %%
# The scalar family, with the commutator read off its support block.
for c in (0, 0.5, 1, 1 + 0.5j, 2):
    phi = L.scalar({1: 1, -1: c})
    C = self_commutator(phi)
    print(f"c = {c!s:>8}: [T*,T] = {C.matrix[0, 0].real:+.3f} e0 e0*,"
          f" hyponormal {is_hyponormal(phi)[0]!s:5}, normal {is_normal_operator(phi).normal}")

# %%
# The certified result agrees with a naive dense truncation once the
# truncation is large enough to avoid edge effects.
phi = L.scalar({1: 1, -1: 0.5})
print("dense corner:\n", dense_commutator(phi, 6)[:3, :3].real)

# %%
# Bram-Halmos: T is k-hyponormal when ([T^{*j}, T^i])_{i,j <= k} is positive.
# The shift passes every k; z + conj(z)/2 is hyponormal but not 2-hyponormal.
shift = L.monomial(1, np.eye(2))
for name, sym in (("shift", shift), ("z + conj(z)/2", phi)):
    kh = k_hyponormality(sym, k_max=4)
    print(f"{name:>14}: passed {kh.passed}, window {kh.window}")

# %%
# Is the kernel of the self-commutator invariant under T?
print("kernel invariant (z + conj(z)/2):", kernel_invariance_check(phi)[0])
case2 = L.diag(L.scalar({1: 1, -1: 1}), L.scalar({1: 1}))
print("kernel invariant (diag(z + conj z, z)):", kernel_invariance_check(case2)[0])
