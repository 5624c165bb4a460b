import pytest

from spherical_kit.bottoms import MuSpec
from spherical_kit.errors import CapExceeded, PeelingError
from spherical_kit.oracle import (
    branch_multiplicity,
    dominant_multiplicities,
    freudenthal,
    gl_dim,
    m_type_check,
    monotonicity_check,
    peel,
    spectrum_agrees,
    tensor_check_gdec,
    to_partition,
)
from spherical_kit.rootdata import RankPair, from_omega, spherical_generator, zero


def test_partitions():
    ctx = RankPair(1, 2)
    assert to_partition(from_omega(ctx, (1, 1))) == (2, 1, 0)
    assert gl_dim((2, 1, 0)) == 8
    assert gl_dim((1, 1, 1)) == 1


def test_freudenthal_adjoints():
    su2 = RankPair(1, 1)
    table = freudenthal(su2, from_omega(su2, (2,)))
    assert table.total == 3
    assert {w.omega for w in table.mults} == {(2,), (0,), (-2,)}
    su3 = RankPair(1, 2)
    table = freudenthal(su3, from_omega(su3, (1, 1)))
    assert table[zero(su3)] == 2
    assert table.total == 8


def test_dominant_multiplicities_rejects_non_partition():
    with pytest.raises(ValueError):
        dominant_multiplicities((0, 1))


def test_peel():
    assert peel({(1, 0): 1, (0, 1): 1}) == {(1, 0): 1}
    with pytest.raises(PeelingError):
        peel({(0, 1): 1})


def test_branching_su3():
    ctx = RankPair(1, 2)
    trivial = MuSpec.wedge(ctx, 0, 0)
    assert branch_multiplicity(ctx, spherical_generator(ctx, 1), trivial) == 1
    assert branch_multiplicity(ctx, from_omega(ctx, (1, 0)), trivial) == 0


@pytest.mark.parametrize("mu", [
    MuSpec.wedge(RankPair(1, 2), 1, 0),
    MuSpec.wedge(RankPair(2, 2), 1, 0),
    MuSpec.wedge(RankPair(2, 3), 1, 1),
    MuSpec.rank_one(RankPair(2, 3), 2, 0),
])
def test_spectrum_matches_branching(mu):
    assert spectrum_agrees(mu, 1) == []


def test_monotone_along_spherical_generators():
    ctx = RankPair(2, 3)
    mu = MuSpec.wedge(ctx, 1, 0)
    lam = from_omega(ctx, (1, 0, 0, 0))
    for i in (1, 2):
        assert monotonicity_check(ctx, lam, i, mu)


def test_tensor_decompositions():
    # 3 (x) 3bar = 8 + 1
    assert tensor_check_gdec(RankPair(1, 2), 1, 1)
    assert tensor_check_gdec(RankPair(2, 2), 2, 1)
    assert tensor_check_gdec(RankPair(2, 3), 2, 2)
    with pytest.raises(ValueError):
        tensor_check_gdec(RankPair(1, 2), 3, 1)


def test_m_types_distinct():
    assert m_type_check(MuSpec.wedge(RankPair(3, 4), 2, 1))
    assert m_type_check(MuSpec.rank_one(RankPair(2, 3), 3, 0))


def test_dimension_cap(monkeypatch):
    monkeypatch.setenv("SPHERICAL_DIM_CAP", "5")
    ctx = RankPair(1, 2)
    with pytest.raises(CapExceeded):
        freudenthal(ctx, from_omega(ctx, (1, 1)))


@pytest.mark.parametrize("mu", [
    MuSpec.wedge(RankPair(2, 2), 0, 0),
    MuSpec.wedge(RankPair(2, 2), 1, 0),
    MuSpec.wedge(RankPair(2, 2), 2, 1),
    MuSpec.wedge(RankPair(2, 3), 1, 0),
    MuSpec.rank_one(RankPair(2, 2), 2, 0),
])
def test_spectrum_matches_branching_degree_two(mu):
    assert spectrum_agrees(mu, 2) == []


@pytest.mark.parametrize("c", range(4))
@pytest.mark.parametrize("d", range(4))
def test_tensor_decomposition_grid(c, d):
    assert tensor_check_gdec(RankPair(3, 3), c, d)
