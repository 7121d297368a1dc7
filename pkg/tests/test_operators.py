import random
from fractions import Fraction

import pytest

from threelie import oracles
from threelie.algebra import AlternatingTrilinear, Representation, adjoint_rep
from threelie.exact import Matrix
from threelie.fixtures import (
    a3, a4_base, diag_differential, nijenhuis_fixtures, o_operator_fixtures, random_matrix,
)
from threelie.operators import (
    DeformationData, bracket_K, deformation_check, deformed_bracket, hat_K_equivalence,
    infinitesimal_is_2cocycle, is_nijenhuis, is_o_operator, is_trivial_deformation,
    nijenhuis_first_order, rho_K,
)
from threelie.verdict import PreconditionError

F = Fraction


def test_nijenhuis_rejects_a_generic_operator():
    A, D = a3(), diag_differential(1, 1)
    N = Matrix.from_rows([[0, 1, 0], [0, 0, 0], [0, 0, 0]])
    v = is_nijenhuis(A, D, N)
    assert not v.ok
    assert "commutes_with_differential" in v.identities_failed()
    with pytest.raises(PreconditionError):
        deformed_bracket(A, D, N)


def test_deformed_bracket_of_the_identity():
    # with N = I the deformed bracket is [x,y,z](3 - 3 + 1) = [x,y,z]
    A, D = a3(), diag_differential(1, 1)
    AN, _ = deformed_bracket(A, D, Matrix.identity(3))
    assert AN == A


def test_nijenhuis_first_order_is_an_infinitesimal_cocycle():
    for name, A, D, N in nijenhuis_fixtures():
        data = nijenhuis_first_order(A, D, N)
        assert infinitesimal_is_2cocycle(A, D, data.pis[1], data.phis[1]).ok, name
        assert deformation_check(A, D, data, max_degree=1).ok, name


def test_full_deformation_along_a_nijenhuis_operator():
    # pi_t = pi + t pi_1 + t^2 pi_2 with pi_2 from N^2 is a deformation to all orders
    name, A, D, N = nijenhuis_fixtures()[-1]
    AN, _ = deformed_bracket(A, D, N)
    pi1 = nijenhuis_first_order(A, D, N).pis[1]
    pi2 = AN - pi1
    data = DeformationData((A, pi1, pi2), (D.d,), D.lam)
    assert deformation_check(A, D, data).ok


def test_deformation_check_requires_the_base_terms():
    A, D = a3(), diag_differential(1, 1)
    with pytest.raises(PreconditionError):
        deformation_check(A, D, DeformationData((A.scaled(2),), (D.d,), 1))
    with pytest.raises(PreconditionError):
        is_trivial_deformation(A, D, DeformationData((A,), (D.d,), 1), Matrix.identity(3))


def test_nontrivial_first_order_data_is_reported():
    A, D = a3(), diag_differential(1, 1)
    N = Matrix.diagonal([0, 1, 0])
    data = nijenhuis_first_order(A, D, N)
    assert not data.pis[1].is_zero()
    other = DeformationData((A, data.pis[1].scaled(2)), (D.d, data.phis[1]), 1)
    v = is_trivial_deformation(A, D, other, N, max_degree=1)
    assert not v.ok
    assert {x.args[0] for x in v.violations} == {"t^1"}


def test_random_first_order_data_agrees_with_direct_check():
    rng = random.Random(11)
    A, D = a3(), diag_differential(2, 1)
    for _ in range(30):
        pi1 = AlternatingTrilinear(3, 3, {(0, 1, 2): [rng.randint(-1, 1) for _ in range(3)]})
        phi1 = random_matrix(rng, 3, 3, lo=-1, hi=1, density=0.3)
        # the cross check inside reports any disagreement as a violation of its own
        v = infinitesimal_is_2cocycle(A, D, pi1, phi1)
        assert "first_order_cross_check" not in v.identities_failed()


def test_o_operator_rejections():
    A, D = a3(), diag_differential(1, 1)
    R = adjoint_rep(A, D)
    with pytest.raises(PreconditionError):
        is_o_operator(A, D, R, Matrix.zeros(3, 2))
    K = Matrix.from_rows([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    v = is_o_operator(A, D, R, K)
    assert v.identities_failed() == {"o_operator_identity"}
    with pytest.raises(PreconditionError):
        bracket_K(A, D, R, K)


def test_o_operator_outputs_match_direct_evaluation():
    for name, A, D, R, K in o_operator_fixtures():
        AK, DK = bracket_K(A, D, R, K)
        assert oracles.fundamental_identity_ok(AK), name
        assert oracles.weighted_differential_ok(AK, DK.d.to_rows(), DK.lam), name
        RK = rho_K(A, D, R, K)
        assert RK.dimV == A.n and RK.n == R.dimV


def test_hat_k_one_way_when_phi_is_singular():
    # at weight 1 with d = -I the map I + d vanishes, so K + d K = 0 passes for every K
    A, D, R = a4_base()
    K = Matrix.from_rows([[1, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]])
    result = hat_K_equivalence(A, D, R, K)
    assert not result.phi_invertible
    assert result.with_hat_K.ok
    assert result.verdict.ok
    assert result.verdict.notes


def test_hat_k_on_an_invertible_example():
    A, D = a3(), diag_differential(1, 1)
    R = Representation.trivial(3, 2, Matrix.diagonal([1, 0]), 1)
    K = Matrix.from_rows([[1, 0], [0, 0], [0, 0]])
    result = hat_K_equivalence(A, D, R, K)
    assert result.phi_invertible and result.agree and result.verdict.ok
