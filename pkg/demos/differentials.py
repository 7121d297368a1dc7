"""
Which linear maps are weighted differentials?
==============================================

A weighted differential of a 3-Lie algebra is a linear map that satisfies a
derivation law with extra terms scaled by the weight ``lam``. This walk-through
checks candidate maps exactly. It then derives the polynomial conditions on
an unknown map and uses them to explain why one candidate is rejected.

Run with ``python3 demos/differentials.py``.
"""

from fractions import Fraction

from threelie.algebra import (
    WeightedDifferential, check_weighted_differential, derive_differential_constraints,
)
from threelie.exact import Matrix
from threelie.fixtures import a3, a4, scalar_differential

# %%
# Scalar maps on the four-dimensional simple algebra
# --------------------------------------------------
# On ``a4`` the law applied to ``c I`` reduces to one cubic in ``c``, and
# ``c (lam c + 1)(lam c + 2) = 0`` picks out the valid scalars.
A4 = a4()
for lam in (1, 2):
    valid = [c for c in (Fraction(k, 2) for k in range(-6, 7))
             if check_weighted_differential(A4, scalar_differential(4, c, lam)).ok]
    print(f"weight {lam}: scalar differentials c I for c in {[str(c) for c in valid]}")

# %%
# A rejected candidate on the three-dimensional algebra
# -----------------------------------------------------
# ``a3`` has the single bracket ``[e0, e1, e2] = e0``. The verdict names the
# failing identity, the basis triple and the defect vector.
A3 = a3()
d = Matrix.from_rows([[1, 1, 2], [0, 1, 1], [0, 4, 1]])
verdict = check_weighted_differential(A3, WeightedDifferential(d, 1))
print(verdict)

# %%
# The same question for an unknown matrix
# ---------------------------------------
# Treating the nine entries as symbols gives polynomial equations. Evaluating
# them on the candidate reproduces the defect found above.
system = derive_differential_constraints(A3, 1)
print(system)
print("values on the candidate:", [str(v) for v in system.evaluate(d)])
