"""
Brute-force representation theory used to cross-check the combinatorics:
Freudenthal multiplicities, G -> K branching by character peeling, and tensor
product decompositions.

Irreducibles of SU(n+m) are handled as polynomial GL(n+m)-modules: the weight
a_1 omega_1 + ... corresponds to the partition p_i = a_i + ... + a_{n+m-1}.
K-types are GL(n) x GL(m) highest weights (A, D) up to the shift
(A + c, D + c), which is invisible on S(U(n) x U(m)).
"""
import itertools
import logging
import os
import pathlib
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import yaml
from sympy.utilities.iterables import multiset_permutations

from .bottoms import MuSpec, enumerate_pg_mu, in_spectrum
from .casimir import m_torus_character
from .errors import CapExceeded, PeelingError
from .rootdata import RankPair, Weight, spherical_generator, weyl_dim

log = logging.getLogger("oracle")

CFG_PATH = pathlib.Path(__file__).parents[1] / "config.yaml"
CFG = yaml.safe_load(CFG_PATH.read_text())["oracle"]

Vec = Tuple[int, ...]
Character = Dict[Vec, int]


def dim_cap() -> int:
    return int(os.getenv("SPHERICAL_DIM_CAP", CFG["dim_cap"]))


# ---------- partitions ----------
def to_partition(lam: Weight) -> Vec:
    out = [0] * lam.ctx.size
    for i in range(lam.ctx.size - 2, -1, -1):
        out[i] = out[i + 1] + lam.omega[i]
    return tuple(out)


def from_partition(ctx: RankPair, p: Sequence[int]) -> Weight:
    return Weight(ctx, tuple(p[i] - p[i + 1] for i in range(ctx.rank)))


def _partitions(total: int, parts: int, largest: int) -> Iterator[Vec]:
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(min(total, largest), -1, -1):
        if first * parts < total:
            break
        for rest in _partitions(total - first, parts - 1, first):
            yield (first,) + rest


def _dominated(q: Vec, p: Vec) -> bool:
    return all(a <= b for a, b in zip(itertools.accumulate(q), itertools.accumulate(p)))


def gl_dim(p: Vec) -> int:
    N = len(p)
    dim = Fraction(1)
    for i, j in itertools.combinations(range(N), 2):
        dim *= Fraction(p[i] - p[j] + j - i, j - i)
    return int(dim)


def _check_cap(dim: int):
    cap = dim_cap()
    if dim > cap:
        raise CapExceeded(f"dimension {dim} exceeds the cap {cap}")


# ---------- Freudenthal ----------
@lru_cache(maxsize=None)
def dominant_multiplicities(p: Vec) -> Dict[Vec, int]:
    """Multiplicities of the dominant weights of the GL(N)-module with highest weight p."""
    if any(a < b for a, b in zip(p, p[1:])) or (p and p[-1] < 0):
        raise ValueError(f"{p} is not a partition")
    N = len(p)
    rho = tuple(range(N - 1, -1, -1))

    def norm(w):
        return sum((a + r) ** 2 for a, r in zip(w, rho))

    doms = [q for q in _partitions(sum(p), N, p[0] if p else 0) if _dominated(q, p)]
    doms.sort(key=norm, reverse=True)
    known = set(doms)
    mult = {p: 1}
    top = norm(p)
    for q in doms:
        if q == p:
            continue
        acc = 0
        for i, j in itertools.combinations(range(N), 2):
            k = 1
            while True:
                w = list(q)
                w[i] += k
                w[j] -= k
                s = tuple(sorted(w, reverse=True))
                if s not in known:
                    break
                acc += mult.get(s, 0) * (w[i] - w[j])
                k += 1
        value, rem = divmod(2 * acc, top - norm(q))
        assert rem == 0, f"non-integral multiplicity at {q}"
        if value:
            mult[q] = value
    return mult


def gl_character(p: Vec) -> Character:
    _check_cap(gl_dim(p))
    out = {}
    for q, c in dominant_multiplicities(tuple(p)).items():
        for w in multiset_permutations(list(q)):
            out[tuple(w)] = c
    return out


@dataclass(frozen=True)
class CharacterTable:
    ctx: RankPair
    highest: Weight
    mults: Dict[Weight, int]

    @property
    def total(self) -> int:
        return sum(self.mults.values())

    def __getitem__(self, w: Weight) -> int:
        return self.mults.get(w, 0)


def freudenthal(ctx: RankPair, lam: Weight) -> CharacterTable:
    dim = weyl_dim(ctx, lam)
    _check_cap(dim)
    char = gl_character(to_partition(lam))
    table = CharacterTable(ctx, lam, {from_partition(ctx, w): c for w, c in char.items()})
    assert table.total == dim
    return table


def block_character(parts: Sequence[Vec]) -> Character:
    """Character of the outer tensor product over consecutive diagonal blocks."""
    out: Character = {(): 1}
    for p in parts:
        ch = gl_character(p)
        out = {a + b: ca * cb for a, ca in out.items() for b, cb in ch.items()}
    return out


def k_character(ctx: RankPair, A: Vec, D: Vec) -> Character:
    if len(A) != ctx.n or len(D) != ctx.m:
        raise ValueError("K highest weight has the wrong block sizes")
    return block_character([tuple(A), tuple(D)])


def _split(w: Vec, blocks: Sequence[int]) -> List[Vec]:
    out, pos = [], 0
    for b in blocks:
        out.append(tuple(w[pos:pos + b]))
        pos += b
    return out


def peel(character: Character, blocks: Optional[Sequence[int]] = None) -> Dict[Vec, int]:
    """Decompose into irreducibles by repeatedly removing the lex-largest weight."""
    remaining = {w: c for w, c in character.items() if c}
    if not remaining:
        return {}
    blocks = tuple(blocks) if blocks else (len(next(iter(remaining))),)
    out = {}
    while remaining:
        top = max(remaining)
        c = remaining[top]
        parts = _split(top, blocks)
        if c < 0 or any(any(a < b for a, b in zip(p, p[1:])) for p in parts):
            raise PeelingError(f"leading weight {top} with multiplicity {c}")
        out[top] = c
        for w, x in block_character(parts).items():
            v = remaining.get(w, 0) - c * x
            if v:
                remaining[w] = v
            else:
                remaining.pop(w, None)
    return out


# ---------- branching ----------
def k_representative(mu: MuSpec, total: int) -> Optional[Tuple[Vec, Vec]]:
    """(A, D) for mu inside a G-module of degree total, or None if the centre forbids it."""
    ctx = mu.ctx
    kappa = mu.k_weight()
    pA = tuple(sum(kappa[i:]) for i in range(ctx.n))
    c, rem = divmod(total - sum(pA), ctx.size)
    if rem:
        return None
    return tuple(a + c for a in pA), (c,) * ctx.m


@lru_cache(maxsize=None)
def _k_decomposition(ctx: RankPair, p: Vec) -> Dict[Vec, int]:
    return peel(gl_character(p), (ctx.n, ctx.m))


def branch_multiplicity(ctx: RankPair, lam: Weight, mu: MuSpec) -> int:
    """[V_lambda^G |_K : V_mu^K]."""
    _check_cap(weyl_dim(ctx, lam))
    p = to_partition(lam)
    rep = k_representative(mu, sum(p))
    if rep is None:
        return 0
    return _k_decomposition(ctx, p).get(rep[0] + rep[1], 0)


def spectrum_agrees(mu: MuSpec, degree_bound: int) -> List[Weight]:
    """Weights where branching and the spectrum description disagree, over a box of weights."""
    ctx = mu.ctx
    labels = enumerate_pg_mu(mu, degree_bound)
    top = max(sum(l.weight.omega) for l in labels)
    bad = []
    for coords in itertools.product(range(top + 1), repeat=ctx.rank):
        if sum(coords) > top:
            continue
        lam = Weight(ctx, coords)
        if weyl_dim(ctx, lam) > dim_cap():
            continue
        mult = branch_multiplicity(ctx, lam, mu)
        listed = in_spectrum(mu, lam) is not None
        if mult > 1 or (mult == 1) != listed:
            log.error("branching %d vs spectrum %s at %s", mult, listed, lam)
            bad.append(lam)
    return bad


def monotonicity_check(ctx: RankPair, lam: Weight, i: int, mu: MuSpec) -> bool:
    return branch_multiplicity(ctx, lam + spherical_generator(ctx, i), mu) >= branch_multiplicity(ctx, lam, mu)


def tensor_check_gdec(ctx: RankPair, c: int, d: int) -> bool:
    """V_{omega_c} (x) V_{omega_{n+m-d}} = sum_i V_{omega_{c-i} + omega_{n+m-d+i}}."""
    N = ctx.size
    if not (0 <= c <= N and 0 <= d <= N and c <= N - d):
        raise ValueError(f"need 0 <= c <= n+m-d, got c={c}, d={d}")
    left = tuple(1 if k < c else 0 for k in range(N))
    right = tuple(1 if k < N - d else 0 for k in range(N))
    ch_l, ch_r = gl_character(left), gl_character(right)
    product: Character = {}
    for a, x in ch_l.items():
        for b, y in ch_r.items():
            w = tuple(u + v for u, v in zip(a, b))
            product[w] = product.get(w, 0) + x * y
    got = peel(product)
    expected = {}
    for i in range(min(c, d) + 1):
        p = tuple((1 if k < c - i else 0) + (1 if k < N - d + i else 0) for k in range(N))
        expected[p] = expected.get(p, 0) + 1
    dims = sum(gl_dim(p) * k for p, k in expected.items())
    if dims != gl_dim(left) * gl_dim(right):
        log.error("dimension bookkeeping fails for c=%d, d=%d", c, d)
        return False
    return got == expected


def m_type_check(mu: MuSpec) -> bool:
    """M-torus characters of the M-type basis are pairwise distinct."""
    chars = [tuple(m_torus_character(mu, label)) for label in mu.labels()]
    return len(set(chars)) == len(chars)


