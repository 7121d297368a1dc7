"""Small algebras and structures used by the tests, demos and CLI examples."""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations

from .algebra import (
    AlternatingTrilinear, Representation, ThreeLieAlgebra, WeightedDifferential, adjoint_rep,
)
from .cohomology import CochainComplexes, alternating_cocycles
from .exact import Matrix, perm_sign
from .twoterm import CrossedModule, L5Map, cocycle_to_skeletal, crossed_to_strict, skeletal_from_data


def a3() -> ThreeLieAlgebra:
    """Three-dimensional algebra with ``[e0, e1, e2] = e0``."""
    return ThreeLieAlgebra(3, {(0, 1, 2): (1, 0, 0)})


def a4() -> ThreeLieAlgebra:
    """The simple four-dimensional algebra ``[e_i, e_j, e_k] = eps_ijkl e_l``."""
    values = {}
    for t in combinations(range(4), 3):
        (l,) = [i for i in range(4) if i not in t]
        v = [0] * 4
        v[l] = perm_sign(list(t) + [l])
        values[t] = v
    return ThreeLieAlgebra(4, values)


def abelian(n: int) -> ThreeLieAlgebra:
    return ThreeLieAlgebra.abelian(n)


def diag_differential(a, lam=0) -> WeightedDifferential:
    """``d = diag(a, 0, 0)`` on the three-dimensional algebra; a differential for every weight."""
    return WeightedDifferential(Matrix.diagonal([a, 0, 0]), lam)


def scalar_differential(n: int, c, lam) -> WeightedDifferential:
    """``d = c I``; for ``lam != 0`` this is a differential of ``a4`` when ``lam*c`` is -1 or -2."""
    return WeightedDifferential(Matrix.scalar_matrix(n, c), lam)


def random_matrix(rng: random.Random, rows: int, cols: int, lo=-3, hi=3, density=1.0) -> Matrix:
    return Matrix.from_rows([[rng.randint(lo, hi) if rng.random() < density else 0
                              for _ in range(cols)] for _ in range(rows)])


def random_rational(rng: random.Random, bound=3) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))


def combine_basis(basis, coefficients):
    """``sum c_i b_i`` over exact vectors."""
    size = len(basis[0])
    return tuple(sum((c * b[k] for c, b in zip(coefficients, basis)), Fraction(0))
                 for k in range(size))


def nonzero_3cocycle(A, D, R, coefficients=None):
    """A nonzero degree-3 pair cocycle that is alternating in its last three arguments.

    The default combination uses coefficients ``1, 2, 3, ..`` of the kernel
    basis, so the result is deterministic.
    """
    cx = CochainComplexes(A, D, R, max_degree=3)
    basis = alternating_cocycles(cx, 3)
    if not basis:
        return cx, None
    coefficients = coefficients or list(range(1, len(basis) + 1))
    return cx, cx.split_pair(3, combine_basis(basis, coefficients))


# -- crossed modules ----------------------------------------------------------------

def identity_crossed_module(A: ThreeLieAlgebra, D: WeightedDifferential):
    """``h = id`` from the algebra to itself, acting by the adjoint action."""
    return CrossedModule(A, D, A, D, Matrix.identity(A.n), adjoint_rep(A, D))


def ideal_crossed_module(a, lam):
    """Inclusion of the ideal spanned by ``e0`` into ``a3`` with ``d = diag(a, 0, 0)``."""
    D = diag_differential(a, lam)
    D1 = WeightedDifferential(Matrix.from_rows([[a]]), lam)
    R = Representation(3, 1, {(1, 2): Matrix.from_rows([[1]])}, D1.d, lam)
    return CrossedModule(a3(), D, ThreeLieAlgebra(1), D1, Matrix.from_columns([[1, 0, 0]]), R)


def zero_map_crossed_module(A: ThreeLieAlgebra, D: WeightedDifferential):
    """``h = 0`` into ``A`` from the adjoint module with the zero bracket."""
    R = adjoint_rep(A, D)
    return CrossedModule(A, D, ThreeLieAlgebra.abelian(A.n), WeightedDifferential(D.d, D.lam),
                         Matrix.zeros(A.n, A.n), R)


def empty_crossed_module(A: ThreeLieAlgebra, D: WeightedDifferential):
    """``g1 = 0``."""
    return CrossedModule(A, D, ThreeLieAlgebra(0), WeightedDifferential(Matrix.zeros(0, 0), D.lam),
                         Matrix.zeros(A.n, 0), Representation(A.n, 0, {}, Matrix.zeros(0, 0), D.lam))


def o_operator_fixtures():
    """``(name, A, D, R, K)`` tuples where ``K: V -> g`` is an O-operator."""
    out = []
    blocks = {"diag": [[0, 0, 0], [0, 1, 0], [0, 0, 1]],
              "rotation": [[0, 0, 0], [0, 1, -1], [0, 1, 1]],
              "rational": [[0, 0, 0], [0, Fraction(2, 3), 3], [0, -1, 5]]}
    for lam in (0, 1):
        A, D = a3(), diag_differential(1, lam)
        for name, rows in blocks.items():
            out.append((f"a3-adjoint-{name}-weight{lam}", A, D, adjoint_rep(A, D),
                        Matrix.from_rows(rows)))
    # abelian algebra, trivial action: only K dV = d K matters
    D = WeightedDifferential(Matrix.diagonal([1, 2, 0]), 2)
    R = Representation.trivial(3, 2, Matrix.diagonal([1, 2]), 2)
    out.append(("abelian-trivial", abelian(3), D, R, Matrix.from_rows([[1, 0], [0, 1], [0, 0]])))
    return out


def nijenhuis_fixtures():
    """``(name, A, D, N)``: zero, identity and scalar operators, plus a projection on ``a3``."""
    out = []
    for A, D in ((a3(), diag_differential(1, 1)), (a4(), scalar_differential(4, -1, 1))):
        n = A.n
        for label, N in (("zero", Matrix.zeros(n, n)), ("identity", Matrix.identity(n)),
                         ("scalar", Matrix.scalar_matrix(n, Fraction(-5, 2)))):
            out.append((f"dim{n}-{label}", A, D, N))
    out.append(("a3-projection", a3(), diag_differential(1, 1), Matrix.diagonal([1, 0, 0])))
    return out


# -- two-term algebras --------------------------------------------------------------

def a4_base():
    """``(a4, -I, adjoint)`` at weight 1: no single ``l5`` entry is a 3-cocycle here."""
    A, D = a4(), scalar_differential(4, -1, 1)
    return A, D, adjoint_rep(A, D)


def skeletal_fixtures():
    """``(name, T)`` skeletal algebras over :func:`a4_base`, zero and nonzero 3-cocycle."""
    A, D, R = a4_base()
    zero = skeletal_from_data(A, D, R, L5Map(4, 4), AlternatingTrilinear.zero(4, 4))
    _, cocycle = nonzero_3cocycle(A, D, R)
    return [("a4-zero-cocycle", zero), ("a4-nonzero-cocycle", cocycle_to_skeletal(A, D, R, cocycle))]


def strict_fixtures():
    """``(name, T)`` strict algebras: ``h = id`` on ``a3`` and ``h = 0`` over ``a4``.

    Every single-entry change of these is a genuine violation.  The ideal
    inclusion and ``h = 0`` over ``a3`` are kept out because some of their
    single-entry changes are again valid structures.
    """
    A, D, _ = a4_base()
    return [("a3-identity", crossed_to_strict(identity_crossed_module(a3(), diag_differential(1, 1)))),
            ("a4-zero-map", crossed_to_strict(zero_map_crossed_module(A, D)))]
