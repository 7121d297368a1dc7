"""Rebuild the example documents in this directory from the fixtures.

Run ``python3 data/regenerate.py``; the files are checked in, and
``tests/test_fileformat.py`` fails if they drift from what this produces.
"""

from fractions import Fraction
from pathlib import Path

from threelie.algebra import Representation, WeightedDifferential, adjoint_rep
from threelie.cohomology import CochainComplexes, alternating_cocycles, degree2_pair_from_vector
from threelie.exact import Matrix
from threelie.extensions import ExtensionDatum, extension_from_cocycle
from threelie.fileformat import (
    AlgebraDoc, CochainDoc, DeformationDoc, Document, OperatorDoc, serialize,
)
from threelie.fixtures import (
    a3, a4, combine_basis, diag_differential, ideal_crossed_module, identity_crossed_module,
    nonzero_3cocycle, scalar_differential,
)
from threelie.operators import nijenhuis_first_order
from threelie.twoterm import cocycle_to_skeletal, crossed_to_strict

HERE = Path(__file__).resolve().parent


def documents() -> dict:
    out = {}
    A = a3()
    D1 = diag_differential(1, 1)
    D0 = diag_differential(1, 0)
    out["algebra.a3.json"] = Document("algebra", AlgebraDoc(A, D1))
    out["algebra.a3-weight0.json"] = Document("algebra", AlgebraDoc(A, D0))
    bad = WeightedDifferential(Matrix.from_rows([[1, 1, 2], [0, 1, 1], [0, 4, 1]]), 1)
    out["algebra.a3-rejected-differential.json"] = Document("algebra", AlgebraDoc(A, bad))
    A4, D4 = a4(), scalar_differential(4, -1, 1)
    out["algebra.a4.json"] = Document("algebra", AlgebraDoc(A4, D4))

    # adjoint 2-cocycle and a non-cocycle on (A3, D(1)), weight 1
    cx = CochainComplexes(A, D1, adjoint_rep(A, D1), max_degree=3)
    basis = alternating_cocycles(cx, 2)
    z = combine_basis(basis, [(-1) ** k * (k + 1) for k in range(len(basis))])
    out["cochain.a3-cocycle.json"] = Document("cochain", CochainDoc.from_pair(cx.split_pair(2, z)))
    broken = list(z)
    broken[0] += 1
    out["cochain.a3-not-cocycle.json"] = Document(
        "cochain", CochainDoc.from_pair(cx.split_pair(2, broken)))

    # trivial one-dimensional representation: extension data and a cohomologous partner
    T = Representation.trivial(3, 1, None, 1)
    out["representation.a3-trivial.json"] = Document("representation", T)
    cxt = CochainComplexes(A, D1, T, max_degree=3)
    basis = alternating_cocycles(cxt, 2)
    c = combine_basis(basis, list(range(1, len(basis) + 1)))
    out["cochain.a3-extension.json"] = Document("cochain", CochainDoc.from_pair(cxt.split_pair(2, c)))
    shift = cxt.partial_D(1) @ (Fraction(1), Fraction(-2), Fraction(1, 2))
    c2 = tuple(a + b for a, b in zip(c, shift))
    out["cochain.a3-extension-shifted.json"] = Document(
        "cochain", CochainDoc.from_pair(cxt.split_pair(2, c2)))
    psi, chi = degree2_pair_from_vector(cxt, c)
    A_hat, D_hat = extension_from_cocycle(ExtensionDatum(A, D1, T, psi, chi))
    out["algebra.a3-extended.json"] = Document("algebra", AlgebraDoc(A_hat, D_hat))

    # operators on A3
    N = Matrix.scalar_matrix(3, Fraction(2, 3))
    out["operator.nijenhuis.json"] = Document("operator", OperatorDoc(N, "nijenhuis"))
    out["operator.o-operator.json"] = Document(
        "operator", OperatorDoc(Matrix.diagonal([0, 1, 1]), "o-operator"))
    data = nijenhuis_first_order(A, D1, Matrix.diagonal([0, 1, 0]))
    out["deformation.a3-first-order.json"] = Document(
        "deformation", DeformationDoc(3, data.pis[1:], data.phis[1:]))

    # two-term algebras and a crossed module
    R4 = adjoint_rep(A4, D4)
    _, cocycle = nonzero_3cocycle(A4, D4, R4)
    out["two-term.a4-skeletal.json"] = Document("two-term", cocycle_to_skeletal(A4, D4, R4, cocycle))
    out["two-term.a3-strict.json"] = Document(
        "two-term", crossed_to_strict(identity_crossed_module(A, D1)))
    out["crossed-module.a3-ideal.json"] = Document("crossed-module", ideal_crossed_module(1, 1))
    return out


def main():
    for name, doc in documents().items():
        (HERE / name).write_text(serialize(doc), encoding="utf-8")
        print("wrote", name)


if __name__ == "__main__":
    main()
