"""
Weight lattice and root data of type A_{n+m-1} for the pair
(SU(n+m), S(U(n) x U(m))).

Weights are stored by their integer coefficients on the fundamental weights
omega_1..omega_{n+m-1}; epsilon coordinates are derived on demand and are
exact rationals summing to zero.
"""
import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Tuple

from .errors import IndexOutOfRange, NonDominant, OutsideLattice, RankMismatch


@dataclass(frozen=True)
class RankPair:
    n: int
    m: int

    def __post_init__(self):
        if not (isinstance(self.n, int) and isinstance(self.m, int)):
            raise ValueError("n and m must be integers")
        if self.n < 1 or self.m < self.n:
            raise ValueError(f"need m >= n >= 1, got n={self.n}, m={self.m}")

    @property
    def size(self) -> int:
        """n+m, the size of the defining representation."""
        return self.n + self.m

    @property
    def rank(self) -> int:
        return self.n + self.m - 1

    def sigma(self, k: int) -> int:
        return self.n + self.m + 1 - k

    @property
    def n_block(self) -> Tuple[int, ...]:
        return tuple(range(1, self.n + 1))

    @property
    def m_block(self) -> Tuple[int, ...]:
        return tuple(range(self.n + 1, self.n + self.m + 1))


@dataclass(frozen=True)
class Weight:
    ctx: RankPair
    omega: Tuple[int, ...]

    def __post_init__(self):
        if len(self.omega) != self.ctx.rank:
            raise RankMismatch(
                f"weight of length {len(self.omega)} for rank {self.ctx.rank}"
            )
        object.__setattr__(self, "omega", tuple(int(a) for a in self.omega))

    @cached_property
    def eps(self) -> Tuple[Fraction, ...]:
        out = [Fraction(0)] * self.ctx.size
        for i, a in enumerate(self.omega, start=1):
            if a:
                for k, c in enumerate(omega_in_eps(self.ctx, i)):
                    out[k] += a * c
        return tuple(out)

    def _check(self, other: "Weight"):
        if not isinstance(other, Weight) or other.ctx != self.ctx:
            raise RankMismatch("weights over different rank pairs")

    def __add__(self, other: "Weight") -> "Weight":
        self._check(other)
        return Weight(self.ctx, tuple(a + b for a, b in zip(self.omega, other.omega)))

    def __sub__(self, other: "Weight") -> "Weight":
        self._check(other)
        return Weight(self.ctx, tuple(a - b for a, b in zip(self.omega, other.omega)))

    def __mul__(self, k: int) -> "Weight":
        return Weight(self.ctx, tuple(k * a for a in self.omega))

    __rmul__ = __mul__

    def __neg__(self) -> "Weight":
        return self * -1

    def is_dominant(self) -> bool:
        return all(a >= 0 for a in self.omega)

    def to_json(self) -> list:
        return list(self.omega)

    def __repr__(self) -> str:
        return f"Weight({list(self.omega)})"


@dataclass(frozen=True)
class RestrictionToA:
    coeffs: Tuple[int, ...]

    def __add__(self, other: "RestrictionToA") -> "RestrictionToA":
        return RestrictionToA(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))


# ---------- constructors ----------
def zero(ctx: RankPair) -> Weight:
    return Weight(ctx, (0,) * ctx.rank)


def omega(ctx: RankPair, i: int) -> Weight:
    """omega_i, with omega_0 = omega_{n+m} = 0."""
    if i < 0 or i > ctx.size:
        raise IndexOutOfRange(f"omega index {i} outside 0..{ctx.size}")
    coords = [0] * ctx.rank
    if 0 < i < ctx.size:
        coords[i - 1] = 1
    return Weight(ctx, tuple(coords))


def from_omega(ctx: RankPair, coords) -> Weight:
    return Weight(ctx, tuple(coords))


def spherical_generator(ctx: RankPair, i: int) -> Weight:
    """lambda_i = omega_i + omega_{n+m-i}, i = 1..n."""
    if not 1 <= i <= ctx.n:
        raise IndexOutOfRange(f"spherical generator index {i} outside 1..{ctx.n}")
    return omega(ctx, i) + omega(ctx, ctx.size - i)


def omega_in_eps(ctx: RankPair, i: int) -> Tuple[Fraction, ...]:
    if not 1 <= i <= ctx.rank:
        raise IndexOutOfRange(f"omega index {i} outside 1..{ctx.rank}")
    shift = Fraction(i, ctx.size)
    return tuple((1 if k < i else 0) - shift for k in range(ctx.size))


def alpha_in_eps(ctx: RankPair, j: int) -> Tuple[Fraction, ...]:
    if not 1 <= j <= ctx.rank:
        raise IndexOutOfRange(f"simple root index {j} outside 1..{ctx.rank}")
    out = [Fraction(0)] * ctx.size
    out[j - 1] = Fraction(1)
    out[j] = Fraction(-1)
    return tuple(out)


def rho(ctx: RankPair) -> Weight:
    return Weight(ctx, (1,) * ctx.rank)


# ---------- bilinear data ----------
def _same(ctx: RankPair, *weights: Weight):
    for w in weights:
        if w.ctx != ctx:
            raise RankMismatch(f"weight over {w.ctx} used with {ctx}")


def inner(ctx: RankPair, lam: Weight, mu: Weight) -> Fraction:
    _same(ctx, lam, mu)
    return sum((a * b for a, b in zip(lam.eps, mu.eps)), Fraction(0))


def casimir_eigenvalue(ctx: RankPair, lam: Weight) -> Fraction:
    """c_lambda = <lambda, lambda> + 2 <lambda, rho>."""
    return inner(ctx, lam, lam) + 2 * inner(ctx, lam, rho(ctx))


def alpha_coords(ctx: RankPair, lam: Weight) -> Tuple[Fraction, ...]:
    """Coordinates on the simple roots; the partial sums of the epsilon vector."""
    _same(ctx, lam)
    return tuple(itertools.accumulate(lam.eps[:-1]))


def height(ctx: RankPair, lam: Weight) -> Fraction:
    return sum(alpha_coords(ctx, lam), Fraction(0))


def dominance_leq(ctx: RankPair, lam_lower: Weight, lam: Weight) -> bool:
    """lam_lower <= lam, i.e. lam - lam_lower lies in the positive root cone Q+."""
    coords = alpha_coords(ctx, lam - lam_lower)
    return all(c.denominator == 1 and c >= 0 for c in coords)


def dominance_lt(ctx: RankPair, lam_lower: Weight, lam: Weight) -> bool:
    return lam_lower != lam and dominance_leq(ctx, lam_lower, lam)


def weight_sum(lam: Weight) -> int:
    """Sum of omega coordinates; strictly increasing along the dominance order."""
    return sum(lam.omega)


def weyl_dim(ctx: RankPair, lam: Weight) -> int:
    _same(ctx, lam)
    if not lam.is_dominant():
        raise NonDominant(f"{lam} is not dominant")
    a = lam.omega
    dim = Fraction(1)
    for i in range(ctx.rank):
        acc = 0
        for j in range(i, ctx.rank):
            acc += a[j] + 1
            dim *= Fraction(acc, j - i + 1)
    assert dim.denominator == 1
    return int(dim)


def restrict_to_A(ctx: RankPair, lam: Weight) -> RestrictionToA:
    """lambda|_A, using omega_i|_A = omega_{n+m-i}|_A = t_1 + ... + t_i for i <= n."""
    _same(ctx, lam)
    coeffs = [0] * ctx.n
    for i, a in enumerate(lam.omega, start=1):
        if not a:
            continue
        if i <= ctx.n:
            folded = i
        elif i >= ctx.m:
            folded = ctx.size - i
        else:
            raise OutsideLattice(f"omega_{i} does not restrict into the lattice of A")
        for j in range(folded):
            coeffs[j] += a
    return RestrictionToA(tuple(coeffs))
