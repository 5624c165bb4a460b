from fractions import Fraction

import pytest

from spherical_kit.errors import IndexOutOfRange, NonDominant, OutsideLattice
from spherical_kit.rootdata import (
    RankPair,
    Weight,
    casimir_eigenvalue,
    dominance_leq,
    dominance_lt,
    from_omega,
    inner,
    omega,
    omega_in_eps,
    restrict_to_A,
    rho,
    spherical_generator,
    weyl_dim,
    zero,
)


def test_rank_pair_requires_m_at_least_n():
    with pytest.raises(ValueError):
        RankPair(2, 1)
    with pytest.raises(ValueError):
        RankPair(0, 3)


def test_omega_in_eps():
    assert omega_in_eps(RankPair(1, 2), 1) == (Fraction(2, 3), Fraction(-1, 3), Fraction(-1, 3))
    assert omega_in_eps(RankPair(1, 1), 1) == (Fraction(1, 2), Fraction(-1, 2))


def test_su2_inner_and_rho():
    ctx = RankPair(1, 1)
    w = omega(ctx, 1)
    assert inner(ctx, w, w) == Fraction(1, 2)
    assert rho(ctx).eps == (Fraction(1, 2), Fraction(-1, 2))


def test_omega_boundary_convention():
    ctx = RankPair(2, 3)
    assert omega(ctx, 0) == zero(ctx)
    assert omega(ctx, 5) == zero(ctx)
    with pytest.raises(IndexOutOfRange):
        omega(ctx, 6)


def test_spherical_generators():
    ctx = RankPair(2, 3)
    assert spherical_generator(ctx, 1) == from_omega(ctx, (1, 0, 0, 1))
    assert spherical_generator(ctx, 2) == from_omega(ctx, (0, 1, 1, 0))
    # lambda_n = 2 omega_n when m = n
    assert spherical_generator(RankPair(2, 2), 2) == from_omega(RankPair(2, 2), (0, 2, 0))
    with pytest.raises(IndexOutOfRange):
        spherical_generator(ctx, 3)


def test_casimir_eigenvalues_match_zonal_degrees():
    # d_i = 2 i (m + n - i + 1)
    for n, m in [(1, 1), (1, 2), (2, 2), (2, 3)]:
        ctx = RankPair(n, m)
        for i in range(1, n + 1):
            assert casimir_eigenvalue(ctx, spherical_generator(ctx, i)) == 2 * i * (m + n - i + 1)


def test_weyl_dim():
    assert weyl_dim(RankPair(1, 2), from_omega(RankPair(1, 2), (1, 1))) == 8
    assert weyl_dim(RankPair(2, 2), from_omega(RankPair(2, 2), (0, 1, 0))) == 6
    assert weyl_dim(RankPair(1, 1), from_omega(RankPair(1, 1), (2,))) == 3
    with pytest.raises(NonDominant):
        weyl_dim(RankPair(1, 1), from_omega(RankPair(1, 1), (-1,)))


def test_dominance():
    ctx = RankPair(1, 2)
    adj = from_omega(ctx, (1, 1))
    assert dominance_leq(ctx, zero(ctx), adj)
    assert dominance_lt(ctx, zero(ctx), adj)
    assert not dominance_lt(ctx, adj, adj)
    # different classes modulo the root lattice
    assert not dominance_leq(ctx, omega(ctx, 1), omega(ctx, 2))
    assert not dominance_leq(ctx, omega(ctx, 2), omega(ctx, 1))


def test_restrict_to_A():
    ctx = RankPair(2, 3)
    assert restrict_to_A(ctx, omega(ctx, 1)).coeffs == (1, 0)
    assert restrict_to_A(ctx, omega(ctx, 4)).coeffs == (1, 0)
    assert restrict_to_A(ctx, omega(ctx, 2) + omega(ctx, 3)).coeffs == (2, 2)
    with pytest.raises(OutsideLattice):
        restrict_to_A(RankPair(1, 3), omega(RankPair(1, 3), 2))


def test_weight_arithmetic():
    ctx = RankPair(2, 2)
    w = Weight(ctx, (1, 0, 1))
    assert (w * 2 - w) == w
    assert (-w).omega == (-1, 0, -1)
    assert w.to_json() == [1, 0, 1]
