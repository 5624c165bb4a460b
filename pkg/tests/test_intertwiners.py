from spherical_kit.bottoms import MuSpec
from spherical_kit.errors import FactorMismatch, IndexOutOfRange
from spherical_kit.intertwiners import (
    TensorVector,
    apply_elementary,
    index_sum_sign,
    k_fixed_vector,
    k_intertwiner_check,
    lambda_h_vector,
    lower_orbit,
    mat_elem,
    model_action,
    psi_elem,
    q_ladder_entry,
    rank_one_highest_vector,
    wedge_sort,
)
from spherical_kit.rootdata import RankPair
from spherical_kit.trigring import cos_var

import pytest


def test_wedge_sort():
    assert wedge_sort((2, 1)) == (-1, (1, 2))
    assert wedge_sort((1, 2, 3)) == (1, (1, 2, 3))
    assert wedge_sort((3, 1, 2)) == (1, (1, 2, 3))
    assert wedge_sort((1, 1)) == (0, None)


def test_index_sum_sign():
    assert index_sum_sign((1, 2)) == -1
    assert index_sum_sign(()) == 1


def test_tensor_vector_shape_is_checked():
    with pytest.raises(FactorMismatch):
        TensorVector((1,), {((1, 2),): 1})


def test_apply_elementary():
    v = TensorVector.basis((2, 3))
    assert apply_elementary(v, 1, 2) == TensorVector.basis((1, 3))
    assert apply_elementary(v, 1, 4).is_zero()
    assert apply_elementary(v, 3, 3) == v


def test_model_action():
    mu = MuSpec.wedge(RankPair(3, 3), 2, 1)
    assert model_action(mu, 1, 2, (2, 3)) == [(1, (1, 3))]
    assert model_action(mu, 2, 2, (2, 3)) == [(2, (2, 3))]
    assert model_action(mu, 1, 1, (2, 3)) == [(1, (2, 3))]


def test_k_fixed_vector():
    ctx = RankPair(2, 3)
    assert len(k_fixed_vector(ctx, 0).terms) == 1
    assert k_intertwiner_check(MuSpec.wedge(ctx, 0, 0), {(): k_fixed_vector(ctx, 1)})
    with pytest.raises(IndexOutOfRange):
        k_fixed_vector(ctx, 3)


def test_mat_elem_basic():
    ctx = RankPair(1, 1)
    e1 = TensorVector.basis((1,))
    assert mat_elem(ctx, e1, e1) == cos_var(1, 1)
    v = k_fixed_vector(ctx, 1)
    assert mat_elem(ctx, v, v) == cos_var(1, 1) * cos_var(1, 1)


def test_wedge_orbit_is_k_intertwining():
    ctx = RankPair(2, 3)
    mu = MuSpec.wedge(ctx, 1, 0)
    for H in mu.labels():
        images = lower_orbit(lambda_h_vector(mu, H, (0, 0)), mu)
        assert set(images) == set(mu.labels())
        assert k_intertwiner_check(mu, images)


def test_rank_one_orbit_is_k_intertwining():
    ctx = RankPair(2, 2)
    mu = MuSpec.rank_one(ctx, 1, 1)
    images = lower_orbit(rank_one_highest_vector(ctx, (0, 1), 1, 1), mu)
    assert len(images) == 2
    assert k_intertwiner_check(mu, images)


def test_psi_and_ladder_entries():
    ctx = RankPair(2, 2)
    c1, c2 = cos_var(2, 1), cos_var(2, 2)
    assert psi_elem(ctx, 2) == c1 * c1 * c2 * c2
    assert psi_elem(ctx, 1).eval_at_zero() == 2
    mu = MuSpec.wedge(ctx, 1, 1)
    assert q_ladder_entry(mu, 0, (2,)) == c2 * c1 * c2
    assert q_ladder_entry(mu, 1, (1,)).eval_at_zero() == 1
    zonal = MuSpec.wedge(ctx, 0, 0)
    assert q_ladder_entry(zonal, 2, ()) == psi_elem(ctx, 2)
