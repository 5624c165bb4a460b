from fractions import Fraction

import pytest

from spherical_kit.bottoms import MuSpec, enumerate_pg_mu
from spherical_kit.casimir import DiagFunc
from spherical_kit.errors import ReductionFailed
from spherical_kit.orthogonality import (
    LPolynomial,
    density_delta,
    det_S_check,
    det_q_check,
    exact_inner,
    expected_norm,
    float_inner,
    gram_matrix,
    indecomposable_check,
    ladder_weight,
    matrix_weight,
    psd_samples,
    selberg_c1,
    vandermonde_sq,
    weight_closed_forms,
)
from spherical_kit.rootdata import RankPair
from spherical_kit.spherical import build_f_basis, radial_check, solve_phi
from spherical_kit.trigring import TrigPoly, cos_lin, cos_var, sin_lin, sin_var


def test_selberg_constant():
    assert selberg_c1(RankPair(1, 1)) == Fraction(1, 4)
    assert selberg_c1(RankPair(1, 2)) == Fraction(1, 2)
    for m in range(1, 5):
        assert selberg_c1(RankPair(1, m)) == Fraction(m, 4)


def test_density():
    assert density_delta(RankPair(1, 1)) == sin_lin(1, (2,))
    assert density_delta(RankPair(1, 2)) == sin_var(1, 1) ** 2 * sin_lin(1, (2,))


def test_l_polynomial():
    l = LPolynomial.var(1, 1)
    assert l.beta_integral(0) == Fraction(1, 2)
    assert l.beta_integral(1) == Fraction(1, 6)
    c = cos_var(1, 1)
    assert LPolynomial.from_trig(c * c) == l
    assert LPolynomial.from_trig(cos_lin(1, (2,))) == l.scale(2) - LPolynomial.constant(1)
    with pytest.raises(ReductionFailed):
        LPolynomial.from_trig(c)
    with pytest.raises(ReductionFailed):
        LPolynomial.from_trig(sin_var(1, 1))
    assert vandermonde_sq(2).degrees() == (2, 2)


def test_su2_inner_products():
    mu = MuSpec.wedge(RankPair(1, 1), 0, 0)
    one = DiagFunc({(): TrigPoly.constant(1)})
    phi1 = DiagFunc({(): cos_lin(1, (2,))})
    assert exact_inner(mu, one, one) == 1
    assert exact_inner(mu, phi1, phi1) == Fraction(1, 3)
    assert exact_inner(mu, one, phi1) == 0
    assert float_inner(mu, phi1, phi1) == pytest.approx(1 / 3, rel=1e-10)


@pytest.mark.parametrize("mu", [
    MuSpec.wedge(RankPair(1, 2), 1, 0),
    MuSpec.wedge(RankPair(1, 2), 1, 1),
    MuSpec.wedge(RankPair(2, 2), 0, 0),
    MuSpec.wedge(RankPair(2, 2), 1, 1),
    MuSpec.wedge(RankPair(2, 2), 2, 1),
    MuSpec.wedge(RankPair(2, 3), 2, 0),
    MuSpec.wedge(RankPair(2, 3), 1, 2),
    MuSpec.rank_one(RankPair(2, 3), 1, 0),
    MuSpec.rank_one(RankPair(2, 2), 2, 1),
    MuSpec.rank_one(RankPair(2, 3), 2, 2),
])
def test_schur_orthogonality(mu):
    funcs = [solve_phi(mu, label) for label in enumerate_pg_mu(mu, 1)]
    gram = gram_matrix(mu, funcs)
    for i, a in enumerate(funcs):
        for j in range(len(funcs)):
            assert gram[i][j] == (expected_norm(mu, a) if i == j else 0)


def test_float_quadrature_agrees():
    mu = MuSpec.wedge(RankPair(2, 3), 1, 0)
    funcs = [solve_phi(mu, label) for label in enumerate_pg_mu(mu, 1)[:3]]
    for a in funcs:
        for b in funcs:
            assert float_inner(mu, a, b) == pytest.approx(float(exact_inner(mu, a, b)), abs=1e-10)


@pytest.mark.parametrize("n,m,b", [(1, 2, 0), (2, 2, 0), (2, 3, 1), (3, 3, 0), (3, 4, 1)])
def test_weight_closed_forms(n, m, b):
    mu = MuSpec.wedge(RankPair(n, m), 1, b)
    assert weight_closed_forms(mu) == []
    assert det_q_check(mu)
    assert det_S_check(mu)


@pytest.mark.parametrize("n,m,b", [(2, 2, 0), (2, 3, 0), (3, 3, 0), (2, 2, 1), (2, 3, 1)])
def test_indecomposable(n, m, b):
    assert indecomposable_check(MuSpec.wedge(RankPair(n, m), 1, b))


def test_weight_positive_semidefinite():
    mu = MuSpec.wedge(RankPair(2, 3), 1, 0)
    ok, low = psd_samples(mu, 20)
    assert ok
    ok, _ = psd_samples(mu, 20, weight=ladder_weight(mu))
    assert ok


def test_matrix_weight_rows_are_bottom_approximants():
    mu = MuSpec.wedge(RankPair(2, 2), 1, 0)
    W = matrix_weight(mu)
    assert W.size == 2
    # normalised rows: Q(0) has ones on the diagonal
    assert all(W.Q[k][k].eval_at_zero() == 1 for k in range(2))


@pytest.mark.parametrize("b", [0, 1, 2])
def test_rank_one_a2_shared_restricted_exponents(b):
    mu = MuSpec.rank_one(RankPair(2, 2), 2, b)
    basis = build_f_basis(mu, 1)
    # distinct labels restrict to the same exponent on A
    assert len({e.leading_exponent for e in basis}) < len(basis)
    funcs = [solve_phi(mu, label) for label in enumerate_pg_mu(mu, 1)]
    assert all(radial_check(mu, f) for f in funcs)
    gram = gram_matrix(mu, funcs)
    for i, f in enumerate(funcs):
        assert gram[i] == [expected_norm(mu, f) if j == i else 0 for j in range(len(funcs))]
