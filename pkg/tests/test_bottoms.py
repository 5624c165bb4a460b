from math import comb

import pytest

from spherical_kit.bottoms import (
    Family,
    MuSpec,
    bottom_rank_one,
    bottom_wedge,
    compositions,
    enumerate_pg_mu,
    extended_monoid_check,
    find_label,
    in_spectrum,
    ladder,
    su9_counterexample,
)
from spherical_kit.rootdata import RankPair, dominance_leq, from_omega, omega, spherical_generator, zero


def test_parse_and_tag():
    ctx = RankPair(2, 3)
    mu = MuSpec.parse(ctx, "wedge:1,0")
    assert mu.family is Family.WEDGE and mu.s == 1 and mu.b == 0
    assert mu.tag == "wedge:1,0"
    with pytest.raises(ValueError):
        MuSpec.parse(ctx, "wedge:3,0")
    with pytest.raises(ValueError):
        MuSpec.parse(ctx, "sym:1,0")


def test_compositions():
    assert list(compositions(2, 2)) == [(2, 0), (1, 1), (0, 2)]
    assert list(compositions(0, 3)) == [(0, 0, 0)]


def test_bottom_wedge_n2_m3():
    ctx = RankPair(2, 3)
    got = bottom_wedge(MuSpec.wedge(ctx, 1, 0))
    assert got == [omega(ctx, 1), omega(ctx, 2) + omega(ctx, 4)]


def test_bottom_wedge_extremes():
    ctx = RankPair(3, 4)
    assert bottom_wedge(MuSpec.wedge(ctx, 0, 2)) == [omega(ctx, 3) * 2]
    assert bottom_wedge(MuSpec.wedge(ctx, 3, 1)) == [omega(ctx, 3) * 2]


def test_bottom_wedge_su9():
    ctx = RankPair(4, 5)
    assert from_omega(ctx, (1, 0, 1, 0, 0, 0, 1, 0)) in bottom_wedge(MuSpec.wedge(ctx, 2, 0))


def test_bottom_rank_one():
    ctx = RankPair(2, 3)
    b = 2
    got = bottom_rank_one(MuSpec.rank_one(ctx, 1, b))
    expected = [omega(ctx, 1 + i) + omega(ctx, 5 - i) + omega(ctx, 2) * b for i in range(2)]
    assert got == expected
    assert bottom_rank_one(MuSpec.rank_one(ctx, 0, 0)) == [zero(ctx)]
    assert len(bottom_rank_one(MuSpec.rank_one(RankPair(2, 2), 2, 0))) == 3


@pytest.mark.parametrize("n,m", [(1, 1), (2, 2), (2, 3), (3, 3)])
def test_bottom_sizes_match_k_dimension(n, m):
    ctx = RankPair(n, m)
    for s in range(n + 1):
        mu = MuSpec.wedge(ctx, s, 1)
        assert len(bottom_wedge(mu)) == comb(n, s) == mu.dim_k()
    for a in range(3):
        mu = MuSpec.rank_one(ctx, a, 0)
        assert len(bottom_rank_one(mu)) == comb(a + n - 1, n - 1) == mu.dim_k()


def test_enumerate_counts_and_order():
    ctx = RankPair(2, 2)
    mu = MuSpec.wedge(ctx, 1, 0)
    assert len(enumerate_pg_mu(mu, 0)) == 2
    labels = enumerate_pg_mu(mu, 1)
    assert len(labels) == 6
    for i, a in enumerate(labels):
        for b in labels[:i]:
            assert not dominance_leq(ctx, a.weight, b.weight) or a.weight == b.weight
    zonal = enumerate_pg_mu(MuSpec.wedge(RankPair(1, 3), 0, 0), 2)
    assert [l.degrees for l in zonal] == [(0,), (1,), (2,)]
    with pytest.raises(ValueError):
        enumerate_pg_mu(mu, -1)


def test_in_spectrum_and_find_label():
    ctx = RankPair(2, 3)
    mu = MuSpec.wedge(ctx, 1, 0)
    lam = omega(ctx, 1) + spherical_generator(ctx, 1)
    label = in_spectrum(mu, lam)
    assert label is not None
    assert label.source == (1,) and label.degrees == (1, 0)
    assert find_label(mu, (1,), (1, 0)) == label
    assert in_spectrum(mu, zero(ctx)) is None
    with pytest.raises(ValueError):
        find_label(mu, (3,), (0, 0))


def test_in_spectrum_when_m_equals_n():
    ctx = RankPair(2, 2)
    mu = MuSpec.wedge(ctx, 0, 0)
    label = in_spectrum(mu, spherical_generator(ctx, 2) * 3)
    assert label.degrees == (0, 3)
    assert in_spectrum(mu, omega(ctx, 2)) is None


def test_ladder_matches_bottoms():
    ctx = RankPair(2, 3)
    mu = MuSpec.wedge(ctx, 1, 0)
    assert [ladder(mu, i) for i in range(2)] == bottom_wedge(mu)
    with pytest.raises(ValueError):
        ladder(mu, 2)
    with pytest.raises(ValueError):
        ladder(MuSpec.rank_one(ctx, 2, 0), 0)


def test_extended_monoid():
    ctx = RankPair(2, 3)
    mu = MuSpec.rank_one(ctx, 1, 1)
    assert extended_monoid_check(mu, mu.as_weight())
    for lam in bottom_rank_one(mu):
        assert extended_monoid_check(mu, lam)
    assert extended_monoid_check(MuSpec.rank_one(ctx, 0, 0), spherical_generator(ctx, 1))
    assert not extended_monoid_check(MuSpec.rank_one(ctx, 2, 0), omega(ctx, 1))


def test_extended_monoid_agrees_with_spectrum():
    ctx = RankPair(2, 2)
    mu = MuSpec.rank_one(ctx, 1, 0)
    for label in enumerate_pg_mu(mu, 2):
        assert extended_monoid_check(mu, label.weight)


def test_su9_counterexample():
    assert all(su9_counterexample().values())
