from fractions import Fraction

import pytest

from spherical_kit.bottoms import MuSpec, enumerate_pg_mu, find_label
from spherical_kit.casimir import DiagFunc
from spherical_kit.errors import NormalizationError
from spherical_kit.rootdata import RankPair, casimir_eigenvalue
from spherical_kit.spherical import (
    bottom_approximant,
    braid_check,
    build_f_basis,
    closure,
    coset_permutation,
    engine_agrees,
    inverse_permutation,
    ladder_closed_form,
    ladder_entry_check,
    ladder_label,
    ladder_recurrence_check,
    radial_check,
    solve_phi,
    weyl_fill,
    weyl_generators,
    zonal_coefficients,
    zonal_phi,
)
from spherical_kit.trigring import TrigPoly, cos_lin, cos_var


def test_zonal_coefficients():
    assert zonal_coefficients(RankPair(1, 1), 1) == [-1, 2]
    assert zonal_coefficients(RankPair(1, 2), 1) == [Fraction(-1, 2), Fraction(3, 2)]
    assert zonal_coefficients(RankPair(3, 3), 0) == [1]


def test_zonal_su2_is_cos_2t():
    phi, _ = zonal_phi(RankPair(1, 1), 1)
    assert phi == cos_lin(1, (2,))


@pytest.mark.parametrize("n,m", [(1, 2), (2, 2), (2, 3), (3, 3)])
def test_zonal_normalised(n, m):
    ctx = RankPair(n, m)
    for i in range(n + 1):
        phi, _ = zonal_phi(ctx, i)
        assert phi.eval_at_zero() == 1


def test_solve_reproduces_zonal():
    for n, m in [(1, 2), (2, 2)]:
        ctx = RankPair(n, m)
        mu = MuSpec.wedge(ctx, 0, 0)
        for i in range(1, n + 1):
            degrees = tuple(1 if j == i else 0 for j in range(1, n + 1))
            phi = solve_phi(mu, find_label(mu, (), degrees))
            assert phi.entries.entries[()] == zonal_phi(ctx, i)[0]
            assert phi.eigenvalue == 2 * i * (m + n - i + 1)


def test_weyl_group():
    assert coset_permutation(3, (2,)) == (2, 1, 3)
    assert coset_permutation(4, (2, 4)) == (2, 4, 1, 3)
    w = coset_permutation(4, (3, 4))
    assert tuple(w[x - 1] for x in inverse_permutation(w)) == (1, 2, 3, 4)
    assert len(weyl_generators(RankPair(3, 4))) == 3
    assert braid_check(RankPair(2, 2))
    assert braid_check(RankPair(2, 3))
    assert braid_check(RankPair(3, 3))


def test_weyl_fill():
    ctx = RankPair(3, 3)
    mu = MuSpec.wedge(ctx, 1, 0)
    first = cos_var(3, 1)
    assert weyl_fill(mu, first, (1,)) == first
    assert weyl_fill(mu, first, (3,)) == cos_var(3, 3)
    with pytest.raises(ValueError):
        weyl_fill(MuSpec.rank_one(ctx, 1, 0), first, (1,))


@pytest.mark.parametrize("mu", [
    MuSpec.wedge(RankPair(2, 2), 1, 0),
    MuSpec.wedge(RankPair(2, 3), 1, 1),
    MuSpec.wedge(RankPair(3, 3), 2, 0),
])
def test_closed_form_agrees_with_engine(mu):
    for H in mu.labels():
        assert engine_agrees(mu, H)


def test_bottom_approximant_is_identity_at_zero():
    mu = MuSpec.rank_one(RankPair(2, 3), 2, 0)
    for label in enumerate_pg_mu(mu, 0):
        q = bottom_approximant(mu, label.source)
        assert all(v == 1 for v in q.at_zero())


def test_f_basis_leading_exponents_distinct():
    mu = MuSpec.wedge(RankPair(2, 3), 1, 0)
    basis = build_f_basis(mu, 1)
    assert len(basis) == 6
    assert len({b.leading_exponent for b in basis}) == 6


def test_closure_is_down_set():
    mu = MuSpec.wedge(RankPair(2, 3), 1, 0)
    label = find_label(mu, (2,), (1, 0))
    lower = closure(mu, label)
    assert lower[-1] == label
    assert find_label(mu, (1,), (0, 0)) in lower


@pytest.mark.parametrize("mu", [
    MuSpec.wedge(RankPair(1, 1), 0, 0),
    MuSpec.wedge(RankPair(1, 2), 1, 1),
    MuSpec.wedge(RankPair(2, 3), 1, 0),
    MuSpec.wedge(RankPair(2, 2), 1, 1),
    MuSpec.wedge(RankPair(2, 2), 0, 1),
    MuSpec.wedge(RankPair(2, 2), 2, 0),
    MuSpec.wedge(RankPair(2, 3), 0, 0),
    MuSpec.wedge(RankPair(2, 3), 2, 1),
    MuSpec.wedge(RankPair(2, 3), 1, 2),
    MuSpec.wedge(RankPair(3, 3), 1, 0),
    MuSpec.rank_one(RankPair(2, 2), 1, 0),
    MuSpec.rank_one(RankPair(2, 3), 1, 1),
])
def test_ladder_recurrence(mu):
    s = 1 if mu.family.value == "rankone" else mu.s
    for i in range(mu.ctx.n - s + 1):
        assert ladder_recurrence_check(mu, i)


def test_ladder_entries_follow_weyl_fill():
    mu = MuSpec.wedge(RankPair(3, 4), 1, 1)
    for i in range(3):
        assert ladder_entry_check(mu, i)


def test_rank_one_ladder_closed_form():
    mu = MuSpec.rank_one(RankPair(2, 2), 1, 0)
    expected, coefs = ladder_closed_form(mu, 1)
    # k_0 = -1/3, k_1 = 1, l = 3/2
    assert coefs == [Fraction(-1, 2), Fraction(3, 2)]
    phi = solve_phi(mu, ladder_label(mu, 1))
    assert phi.entries == expected


def test_solved_functions_are_eigenfunctions():
    ctx = RankPair(2, 3)
    mu = MuSpec.rank_one(ctx, 1, 0)
    for label in enumerate_pg_mu(mu, 1):
        phi = solve_phi(mu, label)
        assert phi.eigenvalue == casimir_eigenvalue(ctx, label.weight)
        assert radial_check(mu, phi)
        assert all(v == 1 for v in phi.entries.at_zero())
        assert phi.expansion[-1][0] == label


def test_solution_json_is_cos_polynomial():
    mu = MuSpec.wedge(RankPair(1, 2), 1, 0)
    phi = solve_phi(mu, find_label(mu, (1,), (1,)))
    out = phi.to_json()
    assert out["entries"][0]["mtype"] == [1]
    assert "cos" in out["entries"][0]


def test_normalisation_failure_is_reported():
    from spherical_kit.spherical import _normalised
    with pytest.raises(NormalizationError):
        _normalised({(): TrigPoly(1)})


@pytest.mark.parametrize("mu", [
    MuSpec.wedge(RankPair(2, 2), 1, 0),
    MuSpec.wedge(RankPair(2, 3), 2, 1),
    MuSpec.rank_one(RankPair(2, 3), 2, 0),
])
def test_lower_labels_have_smaller_eigenvalues(mu):
    for label in enumerate_pg_mu(mu, 2):
        lower = closure(mu, label)
        assert lower[-1] == label
        assert all(l.eigenvalue < label.eigenvalue for l in lower[:-1])
