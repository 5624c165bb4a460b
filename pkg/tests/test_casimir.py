from fractions import Fraction

import pytest

from spherical_kit.bottoms import Family, MuSpec, enumerate_pg_mu
from spherical_kit.casimir import (
    DiagFunc,
    RootKind,
    apply_radial,
    build_krep,
    expand_in_basis,
    krep_homomorphism_check,
    m_torus_character,
    omega_m_bootstrap,
    omega_m_direct,
    omega_m_scalar,
    restricted_roots,
)
from spherical_kit.errors import NotInSpan
from spherical_kit.intertwiners import psi_elem
from spherical_kit.rootdata import RankPair, casimir_eigenvalue, omega
from spherical_kit.spherical import bottom_approximant, closure
from spherical_kit.trigring import TrigPoly, cos_var


def test_restricted_root_kinds():
    kinds = {r.kind for r in restricted_roots(RankPair(1, 2))}
    assert RootKind.SHORT in kinds and RootKind.LONG in kinds
    assert RootKind.SHORT not in {r.kind for r in restricted_roots(RankPair(2, 2))}
    middle = [r for r in restricted_roots(RankPair(3, 4)) if r.kind is RootKind.MIDDLE_PLUS]
    assert len(middle) == 3


def test_omega_m_values():
    assert omega_m_direct(MuSpec.wedge(RankPair(2, 3), 1, 0)) == {(1,): Fraction(3, 10), (2,): Fraction(3, 10)}
    assert omega_m_direct(MuSpec.wedge(RankPair(1, 2), 1, 0)) == {(1,): Fraction(1, 6)}
    assert set(omega_m_direct(MuSpec.wedge(RankPair(2, 3), 0, 0)).values()) == {0}
    assert set(omega_m_direct(MuSpec.wedge(RankPair(2, 2), 0, 1)).values()) == {0}


@pytest.mark.parametrize("n,m,s,b", [(1, 2, 1, 0), (2, 3, 1, 0), (2, 3, 2, 1), (3, 4, 1, 2)])
def test_omega_m_closed_form(n, m, s, b):
    mu = MuSpec.wedge(RankPair(n, m), s, b)
    assert all(v == omega_m_scalar(mu) for v in omega_m_direct(mu).values())


def test_omega_m_bootstrap_matches_direct():
    ctx = RankPair(2, 3)
    mu = MuSpec.wedge(ctx, 1, 0)
    q = bottom_approximant(mu, (1,))
    assert omega_m_bootstrap(mu, q, casimir_eigenvalue(ctx, omega(ctx, 1))) == Fraction(3, 10)


def test_m_torus_characters_distinct():
    mu = MuSpec.rank_one(RankPair(2, 3), 2, 0)
    chars = [tuple(m_torus_character(mu, label)) for label in mu.labels()]
    assert len(set(chars)) == len(chars)


@pytest.mark.parametrize("mu", [
    MuSpec.wedge(RankPair(2, 2), 1, 0),
    MuSpec.wedge(RankPair(2, 3), 1, 1),
    MuSpec.rank_one(RankPair(2, 3), 2, 0),
])
def test_krep_homomorphism(mu):
    assert krep_homomorphism_check(mu)
    expected = "direct" if mu.family is Family.RANK_ONE else "closed-form"
    assert build_krep(mu).omega_source == expected


def test_radial_on_psi_su2():
    ctx = RankPair(1, 1)
    mu = MuSpec.wedge(ctx, 0, 0)
    psi1 = psi_elem(ctx, 1)
    out = apply_radial(mu, DiagFunc({(): psi1}))
    assert out == DiagFunc({(): psi1.scale(4) - TrigPoly.constant(1, 2)})


def test_radial_is_zero_on_constants():
    mu = MuSpec.wedge(RankPair(2, 3), 0, 0)
    assert apply_radial(mu, DiagFunc({(): TrigPoly.constant(2)})).is_zero()


@pytest.mark.parametrize("n,m", [(1, 2), (2, 2), (2, 3)])
def test_radial_on_psi_basis(n, m):
    ctx = RankPair(n, m)
    mu = MuSpec.wedge(ctx, 0, 0)
    basis = [DiagFunc({(): psi_elem(ctx, j)}) for j in range(n + 1)]
    for i in range(n + 1):
        coefs = expand_in_basis(apply_radial(mu, basis[i]), basis)
        expected = [0] * (n + 1)
        expected[i] = 2 * i * (m + n - i + 1)
        if i:
            expected[i - 1] = -2 * (n - i + 1) ** 2
        assert coefs == expected


def test_expand_in_basis():
    c = cos_var(1, 1)
    basis = [DiagFunc({(): TrigPoly.constant(1)}), DiagFunc({(): c * c})]
    target = basis[0].scale(2) + basis[1].scale(3)
    assert expand_in_basis(target, basis) == [2, 3]
    with pytest.raises(NotInSpan):
        expand_in_basis(DiagFunc({(): c}), basis)


@pytest.mark.parametrize("n,m,a,b", [
    (1, 2, 1, 0), (1, 2, 2, 1), (2, 2, 1, 0), (2, 2, 2, 0), (2, 2, 2, 1), (2, 3, 1, 1), (2, 3, 2, 0),
])
def test_rank_one_bootstrap_agrees_with_direct(n, m, a, b):
    mu = MuSpec.rank_one(RankPair(n, m), a, b)
    lowest = enumerate_pg_mu(mu, 0)[0]
    assert closure(mu, lowest) == [lowest]
    q = bottom_approximant(mu, lowest.source)
    boot = omega_m_bootstrap(mu, q, casimir_eigenvalue(mu.ctx, lowest.weight))
    assert boot == omega_m_direct(mu)[mu.labels()[0]]
