import random
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from threelie import oracles
from threelie.algebra import (
    AlternatingTrilinear, Representation, ThreeLieAlgebra, WeightedDifferential, adjoint_rep,
    check_differential_algebra, check_fundamental_identity, check_leibniz, check_representation,
    check_weighted_differential, derive_differential_constraints, hat_rep, induced_leibniz,
    matched_pair_assemble,
)
from threelie.exact import Matrix, unit_vector
from threelie.fixtures import a3, a4, abelian, diag_differential, random_matrix, scalar_differential
from threelie.verdict import PreconditionError

F = Fraction
small = st.fractions(min_value=-2, max_value=2, max_denominator=2)


@st.composite
def brackets(draw, n=4):
    values = {}
    for t in combinations(range(n), 3):
        values[t] = [draw(st.sampled_from([0, 0, 1, -1])) for _ in range(n)]
    return ThreeLieAlgebra(n, values)


def test_fixture_algebras_satisfy_the_fundamental_identity():
    for A in (a3(), a4(), abelian(5)):
        assert check_fundamental_identity(A).ok
        assert oracles.fundamental_identity_ok(A)


@given(brackets())
def test_fundamental_identity_agrees_with_brute_force(A):
    assert check_fundamental_identity(A).ok == oracles.fundamental_identity_ok(A)


@given(st.lists(st.integers(-2, 2), min_size=9, max_size=9), st.sampled_from([0, 1, -1, 2]))
def test_weighted_differential_agrees_with_brute_force(entries, lam):
    rows = [entries[0:3], entries[3:6], entries[6:9]]
    D = WeightedDifferential(Matrix.from_rows(rows), lam)
    assert check_weighted_differential(a3(), D).ok == oracles.weighted_differential_ok(a3(), rows, lam)


def test_scalar_differentials_of_a4():
    # on [x,y,z] the law reads c = 3c + 3 lam c^2 + lam^2 c^3, i.e. c (lam c + 1)(lam c + 2) = 0
    for lam in (0, 1, 2, F(1, 2), -1):
        for c in (F(k, 2) for k in range(-8, 9)):
            expected = c * (lam * c + 1) * (lam * c + 2) == 0
            D = scalar_differential(4, c, lam)
            assert check_weighted_differential(a4(), D).ok == expected, (lam, c)
            assert oracles.weighted_differential_ok(a4(), D.d.to_rows(), lam) == expected


def test_violation_locates_the_failing_triple():
    D = WeightedDifferential(Matrix.from_rows([[0, 0, 0], [1, 0, 0], [0, 0, 0]]), 0)
    v = check_weighted_differential(a3(), D)
    assert not v.ok
    assert v.violations[0].args == (0, 1, 2)
    assert v.violations[0].identity == "weighted_differential"


def test_alternating_trilinear_signs_and_linearity():
    t = AlternatingTrilinear(4, 2, {(0, 1, 2): (1, 2), (1, 2, 3): (0, 5)})
    assert t.basis(1, 0, 2) == (-1, -2)
    assert t.basis(2, 0, 1) == (1, 2)
    assert t.basis(0, 0, 2) == (0, 0)
    rng = random.Random(0)
    u, v, w = ([F(rng.randint(-3, 3)) for _ in range(4)] for _ in range(3))
    brute = [F(0), F(0)]
    for i in range(4):
        for j in range(4):
            for k in range(4):
                c = u[i] * v[j] * w[k]
                brute = [a + c * b for a, b in zip(brute, t.basis(i, j, k))]
    assert list(t(u, v, w)) == brute
    with pytest.raises(ValueError):
        AlternatingTrilinear(3, 1, {(1, 0, 2): (1,)})


def test_representation_basis_is_antisymmetric():
    R = adjoint_rep(a3(), diag_differential(1, 0))
    assert R.basis(1, 0) == -R.basis(0, 1)
    assert R.basis(2, 2).is_zero()
    assert R(unit_vector(3, 0), unit_vector(3, 1)) == R.basis(0, 1)


def test_adjoint_representation_is_a_representation():
    for A, D in ((a3(), diag_differential(1, 1)), (a3(), diag_differential(F(3, 5), 2)),
                 (a4(), scalar_differential(4, -2, 1))):
        assert check_representation(A, D, adjoint_rep(A, D)).ok


def test_broken_representation_is_rejected():
    A, D = a3(), diag_differential(1, 1)
    R = adjoint_rep(A, D)
    rho = dict(R.rho)
    rho[(0, 1)] = rho[(0, 1)] + Matrix.from_dict(3, 3, {(1, 1): 1})
    v = check_representation(A, D, Representation(3, 3, rho, R.dV, R.lam))
    assert not v.ok


def test_hat_rep_matches_direct_formula():
    A, D = a3(), diag_differential(2, F(1, 3))
    R = adjoint_rep(A, D)
    Rh = hat_rep(R, D)
    hat = oracles.corrected_action(lambda i, j: R.basis(i, j).to_rows(), D.d.to_rows(), D.lam, 3)
    for i, j in combinations(range(3), 2):
        assert Rh.basis(i, j).to_rows() == hat(i, j)
    R0 = adjoint_rep(A, D.with_weight(0))
    assert hat_rep(R0, D.with_weight(0)) == R0


def test_induced_leibniz_algebra():
    for A, D in ((a3(), diag_differential(1, 1)), (a4(), scalar_differential(4, -1, 1)),
                 (a3(), diag_differential(F(1, 2), 0))):
        assert check_leibniz(induced_leibniz(A, D)).ok


def test_matched_pair_with_trivial_actions_is_the_direct_sum():
    A1, D1 = a3(), diag_differential(1, 1)
    A2, D2 = abelian(2), WeightedDifferential(random_matrix(random.Random(4), 2, 2), 1)
    A, D = matched_pair_assemble(A1, D1, A2, D2, Representation.trivial(3, 2, D2.d, 1),
                                 Representation.trivial(2, 3, D1.d, 1))
    assert A.basis(0, 1, 2) == (1, 0, 0, 0, 0)
    assert sum(1 for _ in A.items()) == 1
    assert check_differential_algebra(A, D).ok


def test_matched_pair_semidirect_product():
    A1, D1 = a3(), diag_differential(1, 1)
    A2, D2 = abelian(3), D1
    A, D = matched_pair_assemble(A1, D1, A2, D2, adjoint_rep(A1, D1),
                                 Representation.trivial(3, 3, D1.d, 1))
    assert oracles.fundamental_identity_ok(A)
    assert oracles.weighted_differential_ok(A, D.d.to_rows(), 1)


def test_matched_pair_rejects_weight_mismatch():
    with pytest.raises(PreconditionError):
        matched_pair_assemble(a3(), diag_differential(1, 1), abelian(1),
                              WeightedDifferential(Matrix.zeros(1, 1), 0),
                              Representation.trivial(3, 1), Representation.trivial(1, 3))


def test_constraints_for_a4():
    S = derive_differential_constraints(a4(), 1)
    assert S.satisfied_by(Matrix.scalar_matrix(4, -1))
    assert S.satisfied_by(Matrix.scalar_matrix(4, -2))
    assert not S.satisfied_by(Matrix.identity(4))


@given(st.lists(small, min_size=9, max_size=9))
def test_constraints_agree_with_the_checker(entries):
    S = derive_differential_constraints(a3(), 1)
    d = Matrix.from_rows([entries[0:3], entries[3:6], entries[6:9]])
    assert S.satisfied_by(d) == check_weighted_differential(a3(), WeightedDifferential(d, 1)).ok


def test_constraints_refuse_large_dimensions():
    with pytest.raises(PreconditionError):
        derive_differential_constraints(abelian(7), 1)
