"""
Abelian extensions from 2-cocycles
==================================

A degree-2 pair cocycle ``(psi, chi)`` with values in a representation
builds a bigger differential algebra. Cocycles that differ by a coboundary
give equivalent extensions. This script builds an extension, reads the
cocycle back, and finds the equivalence between two cohomologous choices.

Run with ``python3 demos/extensions.py``.
"""

from fractions import Fraction

from threelie.algebra import Representation
from threelie.cohomology import CochainComplexes, alternating_cocycles, degree2_pair_from_vector
from threelie.exact import Matrix
from threelie.extensions import (
    ExtensionDatum, canonical_maps, cocycle_from_extension, extension_from_cocycle,
    extensions_equivalent, shifted_by_coboundary, verify_equivalence,
)
from threelie.fixtures import a3, combine_basis, diag_differential

# %%
# Coefficients in the one-dimensional trivial representation.
A, D = a3(), diag_differential(1, 1)
R = Representation.trivial(3, 1, None, 1)
cx = CochainComplexes(A, D, R, max_degree=3)
vec = combine_basis(alternating_cocycles(cx, 2), [1, 2, 3])
psi, chi = degree2_pair_from_vector(cx, vec)
E = ExtensionDatum(A, D, R, psi, chi)

# %%
# The extension lives on ``g + V``. The base bracket fills the first three
# coordinates and ``psi`` the last one.
A_hat, D_hat = extension_from_cocycle(E)
for t, v in A_hat.items():
    print("extended bracket", t, "->", [str(x) for x in v])
embed, project, section = canonical_maps(3, 1)
back = cocycle_from_extension(A_hat, D_hat, embed, project, section)
print("cocycle recovered:", back.same_data(E))

# %%
# Shifting the cocycle by the coboundary of ``f`` gives an equivalent
# extension. The solver finds a map and the check confirms it. The map need
# not be ``I + f``, since any degree-1 cocycle can be added to ``f``.
E2 = shifted_by_coboundary(E, Matrix.from_rows([[1, Fraction(1, 2), -3]]))
phi = extensions_equivalent(E, E2)
print("equivalence map:", phi)
print("verified:", verify_equivalence(E, E2, phi).ok)
