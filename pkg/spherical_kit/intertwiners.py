"""
K-intertwining embeddings into tensor products of exterior powers of C^{n+m}
and their matrix elements <pi(a_t) v, w> as exact trigonometric polynomials.

Basis vectors of Lambda^p C^{n+m} are written e_I with I a strictly
increasing tuple from 1..n+m. A TensorVector is a sparse combination of
tensors e_{I_1} (x) ... (x) e_{I_r}.
"""
import itertools
import logging
from collections import deque
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .bottoms import Family, Label, MuSpec, runs
from .errors import FactorMismatch, IndexOutOfRange, OrbitMismatch
from .rootdata import RankPair
from .trigring import I, GaussRational, TrigPoly, cos_var, sin_var

log = logging.getLogger("intertwiners")

WedgeLabel = Tuple[int, ...]
Key = Tuple[WedgeLabel, ...]


def wedge_sort(seq: Sequence[int]) -> Tuple[int, Optional[WedgeLabel]]:
    """Sign of the sorting permutation and the sorted tuple; (0, None) on a repeat."""
    items = list(seq)
    if len(set(items)) != len(items):
        return 0, None
    sign = 1
    # insertion sort, counting transpositions
    for i in range(1, len(items)):
        j = i
        while j > 0 and items[j - 1] > items[j]:
            items[j - 1], items[j] = items[j], items[j - 1]
            sign = -sign
            j -= 1
    return sign, tuple(items)


def index_sum_sign(P: Iterable[int]) -> int:
    """(-1)^{b(P)} with b(P) the sum of the indices."""
    return -1 if sum(P) % 2 else 1


class TensorVector:
    __slots__ = ("degrees", "terms")

    def __init__(self, degrees: Sequence[int], terms: Optional[Dict[Key, GaussRational]] = None):
        self.degrees = tuple(degrees)
        self.terms: Dict[Key, GaussRational] = {}
        for key, c in (terms or {}).items():
            c = GaussRational.coerce(c)
            if c.is_zero():
                continue
            if tuple(len(k) for k in key) != self.degrees:
                raise FactorMismatch(f"term {key} does not match factor degrees {self.degrees}")
            self.terms[tuple(key)] = c

    @classmethod
    def basis(cls, *labels: WedgeLabel) -> "TensorVector":
        return cls(tuple(len(l) for l in labels), {tuple(labels): 1})

    def _check(self, other: "TensorVector"):
        if self.degrees != other.degrees:
            raise FactorMismatch(f"factor degrees {self.degrees} vs {other.degrees}")

    def __add__(self, other: "TensorVector") -> "TensorVector":
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out[k] + c if k in out else c
        return TensorVector(self.degrees, out)

    def __neg__(self) -> "TensorVector":
        return self.scale(-1)

    def __sub__(self, other: "TensorVector") -> "TensorVector":
        return self + (-other)

    def scale(self, c) -> "TensorVector":
        c = GaussRational.coerce(c)
        return TensorVector(self.degrees, {k: v * c for k, v in self.terms.items()})

    def tensor(self, other: "TensorVector") -> "TensorVector":
        out = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                out[k1 + k2] = c1 * c2
        return TensorVector(self.degrees + other.degrees, out)

    def inner(self, other: "TensorVector") -> GaussRational:
        """<self, other>, conjugate-linear in the second slot."""
        self._check(other)
        acc = GaussRational()
        for k, c in self.terms.items():
            d = other.terms.get(k)
            if d is not None:
                acc = acc + c * d.conj()
        return acc

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, TensorVector):
            return NotImplemented
        return self.degrees == other.degrees and self.terms == other.terms

    __hash__ = None

    def to_json(self) -> dict:
        return {
            "degrees": list(self.degrees),
            "terms": [dict(labels=[list(l) for l in k], **self.terms[k].to_json())
                      for k in sorted(self.terms)],
        }

    def __repr__(self):
        return f"TensorVector({self.degrees}, {len(self.terms)} terms)"


def tensor_all(vectors: Iterable[TensorVector]) -> TensorVector:
    out = TensorVector((), {(): 1})
    for v in vectors:
        out = out.tensor(v)
    return out


# ---------- Lie algebra action ----------
def apply_elementary(v: TensorVector, p: int, q: int) -> TensorVector:
    """E_pq acting on v as a derivation over the tensor factors."""
    out: Dict[Key, GaussRational] = {}
    for key, c in v.terms.items():
        for f, lab in enumerate(key):
            if q not in lab:
                continue
            if p == q:
                new_lab, sign = lab, 1
            else:
                sign, new_lab = wedge_sort(tuple(p if x == q else x for x in lab))
                if not sign:
                    continue
            new_key = key[:f] + (new_lab,) + key[f + 1:]
            val = c * sign
            out[new_key] = out[new_key] + val if new_key in out else val
    return TensorVector(v.degrees, out)


def model_action(mu: MuSpec, p: int, q: int, label: Label) -> List[Tuple[int, Label]]:
    """E_pq (p, q <= n) on the model Lambda^s C^n or S^a C^n, twisted by det^b."""
    out = []
    if mu.family is Family.WEDGE:
        if p == q:
            c = (1 if q in label else 0) + mu.b
            if c:
                out.append((c, label))
        elif q in label and p not in label:
            sign, new = wedge_sort(tuple(p if x == q else x for x in label))
            out.append((sign, new))
    else:
        if p == q:
            c = label[q - 1] + mu.b
            if c:
                out.append((c, label))
        elif label[q - 1]:
            new = list(label)
            new[q - 1] -= 1
            new[p - 1] += 1
            out.append((label[q - 1], tuple(new)))
    return out


def k_chevalley(ctx: RankPair) -> List[List[Tuple[int, int, int]]]:
    """Generators of the complexified Lie algebra of K as lists of (coef, p, q)."""
    gens = []
    for lo, hi in ((1, ctx.n), (ctx.n + 1, ctx.size)):
        for j in range(lo, hi):
            gens.append([(1, j, j + 1)])
            gens.append([(1, j + 1, j)])
            gens.append([(1, j, j), (-1, j + 1, j + 1)])
    centre = [(ctx.m, k, k) for k in ctx.n_block] + [(-ctx.n, k, k) for k in ctx.m_block]
    gens.append(centre)
    return gens


def k_intertwiner_check(mu: MuSpec, images: Dict[Label, TensorVector]) -> bool:
    """pi_W(X) j(e) == j(pi_mu(X) e) for all generators X and all model basis vectors."""
    n = mu.ctx.n
    for gen in k_chevalley(mu.ctx):
        for label, img in images.items():
            lhs = None
            for coef, p, q in gen:
                term = apply_elementary(img, p, q).scale(coef)
                lhs = term if lhs is None else lhs + term
            rhs = TensorVector(img.degrees)
            for coef, p, q in gen:
                if p > n or q > n:
                    continue
                for c, new in model_action(mu, p, q, label):
                    rhs = rhs + images[new].scale(coef * c)
            if lhs != rhs:
                log.error("K-intertwiner check failed for %s on %s", gen, label)
                return False
    return True


# ---------- vectors ----------
def _subsets(pool: Iterable[int], k: int):
    return itertools.combinations(sorted(pool), k)


def v_Hk(ctx: RankPair, s: int, u: int, H: WedgeLabel, k: int) -> TensorVector:
    """sum over P in N, Q in M of (-1)^{b(P)+b(Q)} e_H^e_P^e_Q (x) e_{N-P}^e_{M-Q}."""
    H = tuple(H)
    if len(H) != s or tuple(sorted(set(H))) != H or any(not 1 <= h <= ctx.n for h in H):
        raise IndexOutOfRange(f"{H} is not an {s}-subset of 1..{ctx.n}")
    if not (0 <= k <= u and k <= ctx.n - s and u - k <= ctx.m):
        raise IndexOutOfRange(f"k={k}, u={u} out of range for s={s}")
    N, M = set(ctx.n_block), set(ctx.m_block)
    terms = {}
    for P in _subsets(N - set(H), k):
        for Q in _subsets(M, u - k):
            sign, left = wedge_sort(H + P + Q)
            right = tuple(sorted(N - set(P))) + tuple(sorted(M - set(Q)))
            terms[(left, right)] = sign * index_sum_sign(P) * index_sum_sign(Q)
    return TensorVector((s + u, ctx.size - u), terms)


def k_fixed_vector(ctx: RankPair, i: int) -> TensorVector:
    if not 0 <= i <= ctx.n:
        raise IndexOutOfRange(f"k_fixed_vector index {i} outside 0..{ctx.n}")
    return v_Hk(ctx, 0, i, (), i)


def det_vector(ctx: RankPair, b: int) -> TensorVector:
    """(e_N)^{(x) b}, e_N = e_1 ^ ... ^ e_n."""
    return tensor_all([TensorVector.basis(ctx.n_block)] * b)


def rank_one_highest_vector(ctx: RankPair, comp: Sequence[int], b: int,
                            a: Optional[int] = None) -> TensorVector:
    """(x)_i w_i^{(x) a_i} (x) e_N^{(x) b}, a K-highest weight vector of weight a omega_1 + b omega_n."""
    comp = tuple(comp)
    if len(comp) != ctx.n or any(x < 0 for x in comp):
        raise ValueError(f"composition {comp} has the wrong shape for n={ctx.n}")
    if a is not None and sum(comp) != a:
        raise ValueError(f"composition {comp} does not sum to {a}")
    factors = []
    for i, a_i in enumerate(comp, start=1):
        if a_i:
            factors += [_w_vector(ctx, i)] * a_i
    return tensor_all(factors).tensor(det_vector(ctx, b))


@lru_cache(maxsize=None)
def _w_vector(ctx: RankPair, i: int) -> TensorVector:
    N, M = ctx.n_block, ctx.m_block
    terms = {}
    for P in _subsets(set(N) - {1}, i - 1):
        right = tuple(x for x in N if x not in P) + M
        terms[((1,) + P, right)] = index_sum_sign(P)
    return TensorVector((i, ctx.size - i + 1), terms)


def ladder_vector(mu: MuSpec, i: int, H: WedgeLabel) -> TensorVector:
    """Embedding of e_H (x) e_N^b attached to the ladder bottom nu_i."""
    s = mu.s if mu.family is Family.WEDGE else 1
    return v_Hk(mu.ctx, s, i, tuple(H), i).tensor(det_vector(mu.ctx, mu.b))


def lambda_h_vector(mu: MuSpec, H: WedgeLabel, degrees: Sequence[int]) -> TensorVector:
    """Image of e_{1..s} (x) e_N^b under the composite intertwiner attached to lambda_H + sum d_i lambda_i."""
    ctx = mu.ctx
    s = mu.s
    blocks = runs(H)
    sizes = [x - y for y, x in blocks]
    out = None
    for perm in itertools.permutations(range(1, s + 1)):
        sign, _ = wedge_sort(perm)
        pieces = []
        pos = 0
        for (y, _), size in zip(blocks, sizes):
            chunk = perm[pos:pos + size]
            pos += size
            chunk_sign, X = wedge_sort(chunk)
            sign *= chunk_sign
            pieces.append(v_Hk(ctx, size, y, X, y))
        term = tensor_all(pieces).scale(sign)
        out = term if out is None else out + term
    tail = [det_vector(ctx, mu.b)]
    for i, d in enumerate(degrees, start=1):
        tail += [k_fixed_vector(ctx, i)] * d
    return out.tensor(tensor_all(tail))


def lower_orbit(v: TensorVector, mu: MuSpec) -> Dict[Label, TensorVector]:
    """Images of all model basis vectors, obtained from the image v of the first one by K-lowering."""
    n = mu.ctx.n
    labels = mu.labels()
    images = {labels[0]: v}
    queue = deque([labels[0]])
    while queue:
        label = queue.popleft()
        for j in range(1, n):
            for coef, new in model_action(mu, j + 1, j, label):
                img = apply_elementary(images[label], j + 1, j).scale(Fraction(1, coef))
                if new in images:
                    if images[new] != img:
                        raise OrbitMismatch(f"two lowering paths disagree at {new}")
                else:
                    images[new] = img
                    queue.append(new)
    if len(images) != mu.dim_k():
        raise OrbitMismatch(f"orbit closed at {len(images)} labels, expected {mu.dim_k()}")
    return {label: images[label] for label in labels}


# ---------- matrix elements ----------
@lru_cache(maxsize=None)
def _basis_images(n: int, m: int, k: int) -> Tuple[Tuple[int, TrigPoly], ...]:
    """a_t e_k as a list of (target index, coefficient)."""
    N = n + m
    if k <= n:
        return ((k, cos_var(n, k)), (N + 1 - k, sin_var(n, k) * I))
    if k <= m:
        return ((k, TrigPoly.constant(n)),)
    j = N + 1 - k
    return ((j, sin_var(n, j) * I), (k, cos_var(n, j)))


@lru_cache(maxsize=None)
def _wedge_image(n: int, m: int, label: WedgeLabel) -> Dict[WedgeLabel, TrigPoly]:
    """pi(a_t) e_I expanded in the wedge basis."""
    out: Dict[WedgeLabel, TrigPoly] = {}
    for choice in itertools.product(*(_basis_images(n, m, k) for k in label)):
        sign, target = wedge_sort([idx for idx, _ in choice])
        if not sign:
            continue
        coef = TrigPoly.constant(n, sign)
        for _, c in choice:
            coef = coef * c
        out[target] = out[target] + coef if target in out else coef
    return {k: v for k, v in out.items() if not v.is_zero()}


def mat_elem(ctx: RankPair, v: TensorVector, w: TensorVector) -> TrigPoly:
    """<pi(a_t) v, w> as a TrigPoly in t_1..t_n."""
    v._check(w)
    n, m = ctx.n, ctx.m
    acc = TrigPoly(n)
    for kv, cv in v.terms.items():
        images = [_wedge_image(n, m, lab) for lab in kv]
        for kw, cw in w.terms.items():
            prod = TrigPoly.constant(n)
            for img, lab in zip(images, kw):
                piece = img.get(lab)
                if piece is None:
                    prod = None
                    break
                prod = prod * piece
            if prod is not None:
                acc = acc + prod.scale(cv * cw.conj())
    return acc


# ---------- closed forms ----------
@lru_cache(maxsize=None)
def _psi(n: int, i: int, excluded: Tuple[int, ...]) -> TrigPoly:
    pool = [j for j in range(1, n + 1) if j not in excluded]
    out = TrigPoly(n)
    for J in itertools.combinations(pool, i):
        term = TrigPoly.constant(n)
        for j in J:
            term = term * cos_var(n, j) * cos_var(n, j)
        out = out + term
    return out


def psi_elem(ctx: RankPair, i: int, H: Iterable[int] = ()) -> TrigPoly:
    """psi_i^{(H)} = sum over i-subsets I of N minus H of prod cos^2 t_j."""
    H = tuple(sorted(set(H)))
    if i < 0 or i > ctx.n - len(H):
        raise IndexOutOfRange(f"psi index {i} outside 0..{ctx.n - len(H)}")
    return _psi(ctx.n, i, H)


def psi_or_zero(ctx: RankPair, i: int, H: Iterable[int] = ()) -> TrigPoly:
    H = tuple(sorted(set(H)))
    if i < 0 or i > ctx.n - len(H):
        return TrigPoly(ctx.n)
    return _psi(ctx.n, i, H)


def cos_product(ctx: RankPair, H: Iterable[int]) -> TrigPoly:
    out = TrigPoly.constant(ctx.n)
    for h in H:
        out = out * cos_var(ctx.n, h)
    return out


def q_ladder_entry(mu: MuSpec, i: int, H: WedgeLabel) -> TrigPoly:
    """cos t_H cos^b t_N psi_i^{(H)}."""
    ctx = mu.ctx
    s = len(H)
    if not 0 <= i <= ctx.n - s:
        raise IndexOutOfRange(f"ladder index {i} outside 0..{ctx.n - s}")
    return cos_product(ctx, H) * cos_product(ctx, ctx.n_block) ** mu.b * psi_elem(ctx, i, H)


def psi_power(ctx: RankPair, degrees: Sequence[int]) -> TrigPoly:
    out = TrigPoly.constant(ctx.n)
    for i, d in enumerate(degrees, start=1):
        if d:
            out = out * psi_elem(ctx, i) ** d
    return out


def q_lambdaH_entry(mu: MuSpec, H: WedgeLabel, degrees: Sequence[int]) -> TrigPoly:
    """First diagonal entry f of the approximant attached to lambda_H + sum d_i lambda_i."""
    ctx = mu.ctx
    s = mu.s
    blocks = runs(H)
    sizes = [x - y for y, x in blocks]
    total = TrigPoly(ctx.n)
    for perm in itertools.permutations(range(1, s + 1)):
        term = TrigPoly.constant(ctx.n)
        pos = 0
        for (y, _), size in zip(blocks, sizes):
            term = term * psi_elem(ctx, y, perm[pos:pos + size])
            pos += size
        total = total + term
    front = cos_product(ctx, range(1, s + 1)) * cos_product(ctx, ctx.n_block) ** mu.b
    return front * psi_power(ctx, degrees) * total


def gram_schmidt_u1(ctx: RankPair, s: int, H: WedgeLabel) -> Tuple[TensorVector, TensorVector]:
    """(v0, w): the image of the u=0 embedding inside u=1, and its orthogonal complement in span{v^{H,0}, v^{H,1}}."""
    v1 = v_Hk(ctx, s, 1, H, 1)
    v0 = v_Hk(ctx, s, 1, H, 0)
    # (n-s) c1 + m c0 = 0
    return v1 + v0, v1.scale(ctx.m) - v0.scale(ctx.n - s)
