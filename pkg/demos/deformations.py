"""
Deforming along a Nijenhuis operator
====================================

A Nijenhuis operator ``N`` that commutes with the differential gives a new
bracket. It also gives a one-parameter deformation whose first-order term is
a 2-cocycle. This script builds both and checks the deformation to all
orders.

Run with ``python3 demos/deformations.py``.
"""

from threelie.exact import Matrix
from threelie.fixtures import a3, diag_differential
from threelie.operators import (
    DeformationData, deformation_check, deformed_bracket, infinitesimal_is_2cocycle, is_nijenhuis,
    nijenhuis_first_order,
)

A, D = a3(), diag_differential(1, 1)
N = Matrix.diagonal([0, 1, 0])

# %%
# ``N`` passes the Nijenhuis identity and commutes with ``d``.
print("Nijenhuis:", is_nijenhuis(A, D, N).ok)

# %%
# The first-order term is an infinitesimal deformation, so it is a 2-cocycle
# of the pair complex.
data = nijenhuis_first_order(A, D, N)
for t, v in data.pis[1].items():
    print("first-order bracket", t, "->", [str(x) for x in v])
print("2-cocycle:", infinitesimal_is_2cocycle(A, D, data.pis[1], data.phis[1]).ok)

# %%
# Adding the second-order term makes the deformation exact. The check
# expands the fundamental identity and the differential law in powers of
# ``t`` and reports the first order that fails, if any.
AN, _ = deformed_bracket(A, D, N)
pi1 = data.pis[1]
full = DeformationData((A, pi1, AN - pi1), (D.d,), D.lam)
print("deformation holds to all orders:", deformation_check(A, D, full).ok)
