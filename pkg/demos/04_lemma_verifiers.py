"""
Checking the structure lemmas on random instances
=================================================

Symbols with ``Phi = Q Phi^*`` are generated as ``Phi = G + Q G^*``.  For
these, three facts are checked numerically: a second formula for the
self-commutator, the description of its range through the model space
``H(Q)``, and the rank bound ``rank [T*, T] <= dim H(Q)``.
"""

from btoplab import verify_lemma31, verify_lemma32, verify_lemma33
from btoplab.generators import qphi_instance_set

instances = qphi_instance_set(seed=5, count=8)

print(f"{'n':>2} {'dim H(Q)':>8} {'rank':>4} {'rel.err':>9} {'angle':>9}")
for phi, Q in instances:
    r31 = verify_lemma31(phi, Q)
    r32 = verify_lemma32(phi, Q)
    r33 = verify_lemma33(phi, Q)
    print(f"{phi.n:>2} {r33.dim_model_space:>8} {r33.commutator_rank:>4} "
          f"{r31.relative_frobenius:9.1e} {r32.max_angle:9.1e}")

# %%
# The same checks are available from the command line:
#
#     btoplab verify 3.3 --source random:7,50
#     btoplab verify 3.2 --source catalog:case2
