"""
Two-term algebras, 3-cocycles and crossed modules
=================================================

Skeletal two-term algebras (``h = 0``) correspond to degree-3 pair cocycles.
Strict ones (``l5 = 0`` and ``d2 = 0``) correspond to crossed modules. This
script runs both correspondences and shows that changing one structure
constant is caught.

Run with ``python3 demos/two_term.py``.
"""

from threelie.algebra import Representation
from threelie.fixtures import a4_base, ideal_crossed_module, nonzero_3cocycle
from threelie.twoterm import (
    CrossedModule, check_crossed_module, check_two_term, cocycle_to_skeletal, crossed_to_strict,
    skeletal_to_cocycle, strict_to_crossed,
)

# %%
# A skeletal algebra from a nonzero 3-cocycle over ``a4`` with ``d = -I``.
A, D, R = a4_base()
_, cocycle = nonzero_3cocycle(A, D, R)
T = cocycle_to_skeletal(A, D, R, cocycle)
print(T, "entries of l5:", len(T.l5.values))
*_, back = skeletal_to_cocycle(T)
print("cocycle recovered:", back.vector() == cocycle.vector())

# %%
# The inclusion of the ideal spanned by ``e0`` into ``a3`` is a crossed
# module, and it gives a strict two-term algebra.
M = ideal_crossed_module(1, 1)
print("crossed module:", check_crossed_module(M).ok)
S = crossed_to_strict(M)
print(S, "identities hold:", check_two_term(S).ok, "| round trip:", strict_to_crossed(S) == M)

# %%
# Changing one action constant breaks the identities, and the verdict
# names the families that fail.
rho = dict(M.R.rho)
rho[(0, 1)] = M.R.basis(1, 2)
R = Representation(M.R.n, M.R.dimV, rho, M.R.dV, M.R.lam)
broken = CrossedModule(M.A0, M.D0, M.A1, M.D1, M.h, R)
print("broken:", sorted(check_crossed_module(broken).identities_failed()))
