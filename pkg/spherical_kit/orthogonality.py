"""
Matrix weight S = QQ* and Schur orthogonality of spherical functions.

With l_j = cos^2 t_j the Haar measure on A becomes, up to 4^n c_1,

    prod (1 - l_j)^{m-n} prod_{i<j} (l_i - l_j)^2 dl   on [0, 1]^n,

so inner products of cos-polynomial matrix functions are finite sums of Beta
integrals.
"""
import itertools
import logging
import pathlib
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
import yaml
from scipy.special import roots_jacobi
from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from .bottoms import Family, MuSpec, bottom_elements
from .casimir import DiagFunc
from .errors import NotCosPolynomial, ReductionFailed
from .intertwiners import cos_product, psi_or_zero
from .rootdata import RankPair, weyl_dim
from .spherical import SphericalFunction, bottom_approximant, ladder_q
from .trigring import TrigPoly, sin_lin, to_cos_poly, unit

log = logging.getLogger("orthogonality")

CFG_PATH = pathlib.Path(__file__).parents[1] / "config.yaml"
CFG = yaml.safe_load(CFG_PATH.read_text())["quadrature"]

Exp = Tuple[int, ...]


class LPolynomial:
    """Polynomial in l_j = cos^2 t_j with rational coefficients."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Optional[Dict[Exp, Fraction]] = None):
        self.nvars = nvars
        self.terms = {tuple(e): Fraction(c) for e, c in (terms or {}).items() if c}

    @classmethod
    def constant(cls, nvars: int, c=1) -> "LPolynomial":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, nvars: int, j: int) -> "LPolynomial":
        return cls(nvars, {unit(nvars, j): 1})

    @classmethod
    def from_trig(cls, p: TrigPoly) -> "LPolynomial":
        try:
            cp = to_cos_poly(p)
        except NotCosPolynomial as e:
            raise ReductionFailed(f"not a real cosine polynomial: {e}") from e
        out = {}
        for e, c in cp.terms.items():
            if any(a % 2 for a in e):
                raise ReductionFailed(f"odd cosine power {list(e)} survives")
            out[tuple(a // 2 for a in e)] = c
        return cls(p.nvars, out)

    def __add__(self, other: "LPolynomial") -> "LPolynomial":
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return LPolynomial(self.nvars, out)

    def __sub__(self, other: "LPolynomial") -> "LPolynomial":
        return self + other.scale(-1)

    def scale(self, c) -> "LPolynomial":
        return LPolynomial(self.nvars, {e: v * c for e, v in self.terms.items()})

    def __mul__(self, other: "LPolynomial") -> "LPolynomial":
        out: Dict[Exp, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return LPolynomial(self.nvars, out)

    def __pow__(self, k: int) -> "LPolynomial":
        out = LPolynomial.constant(self.nvars)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, LPolynomial):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    __hash__ = None

    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self) -> Exp:
        return tuple(max((e[j] for e in self.terms), default=0) for j in range(self.nvars))

    def evaluate(self, l) -> np.ndarray:
        """Values at points of shape (..., nvars)."""
        l = np.asarray(l, dtype=float)
        out = np.zeros(l.shape[:-1])
        for e, c in self.terms.items():
            out = out + float(c) * np.prod(l ** np.array(e, dtype=float), axis=-1)
        return out

    def beta_integral(self, q: int) -> Fraction:
        """Integral over [0,1]^n against prod (1 - l_j)^q."""
        total = Fraction(0)
        for e, c in self.terms.items():
            term = c
            for p in e:
                term *= Fraction(factorial(p) * factorial(q), factorial(p + q + 1))
            total += term
        return total

    def to_json(self) -> list:
        return [{"exp": list(e), "coef": str(self.terms[e])} for e in sorted(self.terms)]

    def __repr__(self):
        body = " + ".join(f"{self.terms[e]}*l^{list(e)}" for e in sorted(self.terms, reverse=True))
        return f"LPolynomial({body or 0})"


def vandermonde_sq(n: int) -> LPolynomial:
    out = LPolynomial.constant(n)
    for i, j in itertools.combinations(range(1, n + 1), 2):
        d = LPolynomial.var(n, i) - LPolynomial.var(n, j)
        out = out * d * d
    return out


def selberg_c1(ctx: RankPair) -> Fraction:
    n, m = ctx.n, ctx.m
    out = Fraction(1, 4 ** n)
    for j in range(n):
        out *= Fraction(factorial(m + j), factorial(j) * factorial(m - n + j) * factorial(j + 1))
    return out


def density_delta(ctx: RankPair) -> TrigPoly:
    """prod sin^{2(m-n)} t_i sin 2t_i prod_{i<j} sin^2(t_i + t_j) sin^2(t_i - t_j)."""
    n = ctx.n
    out = TrigPoly.constant(n)
    for i in range(1, n + 1):
        out = out * sin_lin(n, unit(n, i)) ** (2 * (ctx.m - n)) * sin_lin(n, unit(n, i, 2))
    for i, j in itertools.combinations(range(1, n + 1), 2):
        plus = tuple(a + b for a, b in zip(unit(n, i), unit(n, j)))
        minus = tuple(a - b for a, b in zip(unit(n, i), unit(n, j)))
        out = out * sin_lin(n, plus) ** 2 * sin_lin(n, minus) ** 2
    return out


FuncLike = Union[SphericalFunction, DiagFunc]


def _diag(f: FuncLike) -> DiagFunc:
    return f.entries if isinstance(f, SphericalFunction) else f


def trace_product(phi: FuncLike, psi: FuncLike) -> TrigPoly:
    """Tr(Phi Psi*) for diagonal Phi, Psi."""
    a, b = _diag(phi), _diag(psi)
    out = TrigPoly(a.nvars)
    for label in a.labels:
        out = out + a.entries[label] * b.entries[label].conj()
    return out


def exact_inner(mu: MuSpec, phi: FuncLike, psi: FuncLike) -> Fraction:
    ctx = mu.ctx
    integrand = LPolynomial.from_trig(trace_product(phi, psi)) * vandermonde_sq(ctx.n)
    return 4 ** ctx.n * selberg_c1(ctx) * integrand.beta_integral(ctx.m - ctx.n)


def expected_norm(mu: MuSpec, phi: SphericalFunction) -> Fraction:
    """(dim V_mu^K)^2 / dim V_lambda^G."""
    return Fraction(mu.dim_k() ** 2, weyl_dim(mu.ctx, phi.label.weight))


def quadrature_order(ctx: RankPair, p: TrigPoly) -> int:
    """Gauss points per variable making the l-integrand exact."""
    top = max((max(abs(a) for a in e) for e in p.terms), default=0)
    degree = top // 2 + 2 * (ctx.n - 1)
    return max(int(CFG["min_order"]), degree // 2 + 1)


def float_inner(mu: MuSpec, phi: FuncLike, psi: FuncLike, order: Optional[int] = None) -> float:
    """Gauss-Jacobi product rule on [0,1]^n with weight (1-l)^{m-n}."""
    ctx = mu.ctx
    n, q = ctx.n, ctx.m - ctx.n
    tr = trace_product(phi, psi)
    order = order or quadrature_order(ctx, tr)
    x, w = roots_jacobi(order, q, 0)
    l1 = (1 + x) / 2
    w1 = w / 2 ** (q + 1)
    grid = np.array(list(itertools.product(l1, repeat=n)))
    weights = np.prod(np.array(list(itertools.product(w1, repeat=n))), axis=1)
    t = np.arccos(np.sqrt(grid))
    values = tr.evaluate(t).real
    vdm = np.ones(len(grid))
    for i, j in itertools.combinations(range(n), 2):
        vdm *= (grid[:, i] - grid[:, j]) ** 2
    return float(4 ** n * selberg_c1(ctx) * np.sum(weights * values * vdm))


def gram_matrix(mu: MuSpec, funcs: Sequence[SphericalFunction]) -> List[List[Fraction]]:
    return [[exact_inner(mu, a, b) for b in funcs] for a in funcs]


# ---------- matrix weight ----------
@dataclass(frozen=True)
class MatrixWeight:
    mu: MuSpec
    Q: Tuple[Tuple[TrigPoly, ...], ...]
    S: Tuple[Tuple[LPolynomial, ...], ...]

    @property
    def size(self) -> int:
        return len(self.Q)


def _weight_from_rows(mu: MuSpec, rows: Sequence[DiagFunc]) -> MatrixWeight:
    labels = mu.labels()
    Q = tuple(tuple(r.entries[label] for label in labels) for r in rows)
    d = len(Q)
    S = []
    for i in range(d):
        row = []
        for j in range(d):
            acc = TrigPoly(mu.ctx.n)
            for k in range(len(labels)):
                acc = acc + Q[i][k] * Q[j][k].conj()
            row.append(LPolynomial.from_trig(acc))
        S.append(tuple(row))
    return MatrixWeight(mu, Q, tuple(S))


def matrix_weight(mu: MuSpec) -> MatrixWeight:
    """Q with rows the normalised bottom approximants and columns the M-types."""
    if len(bottom_elements(mu)) != mu.dim_k():
        raise ValueError(f"{mu.tag}: #B(mu) != dim V_mu^K, Q is not square")
    rows = [bottom_approximant(mu, e.source) for e in bottom_elements(mu)]
    return _weight_from_rows(mu, rows)


def _check_rank_one_wedge(mu: MuSpec):
    if mu.family is not Family.WEDGE or mu.s != 1:
        raise ValueError("closed forms of the weight cover mu = omega_1 + b omega_n only")


def ladder_weight(mu: MuSpec) -> MatrixWeight:
    """Q with rows cos t_k cos^b t_N psi_i^{(k)}, i = 0..n-1."""
    _check_rank_one_wedge(mu)
    return _weight_from_rows(mu, [ladder_q(mu, i) for i in range(mu.ctx.n)])


def _psi_l(ctx: RankPair, i: int) -> LPolynomial:
    return LPolynomial.from_trig(psi_or_zero(ctx, i))


def closed_form_entry(mu: MuSpec, i: int, j: int) -> LPolynomial:
    ctx = mu.ctx
    n = ctx.n
    if i > j:
        i, j = j, i
    pb = _psi_l(ctx, n) ** mu.b
    acc = LPolynomial(n)
    if i + j <= n - 1:
        for k in range(-1, i):
            acc = acc + (_psi_l(ctx, k + 1) * _psi_l(ctx, i + j - k)).scale(2 * k + 1 - i - j)
    else:
        for k in range(-1, n - 1 - j):
            acc = acc + (_psi_l(ctx, i + j - n + 2 + k) * _psi_l(ctx, n - 1 - k)).scale(
                i + j - 2 * n + 3 + 2 * k)
    return (pb * acc).scale(-1)


def weight_closed_forms(mu: MuSpec) -> List[Tuple[int, int, str]]:
    """Mismatches between S = QQ* and its closed forms; empty when all hold."""
    W = ladder_weight(mu)
    ctx = mu.ctx
    n = ctx.n
    S = W.S
    pb = _psi_l(ctx, n) ** mu.b
    bad = []
    for j in range(n):
        if S[0][j] != pb * _psi_l(ctx, j + 1).scale(j + 1):
            bad.append((0, j, "first row"))
    for i in range(n):
        if S[i][n - 1] != pb * _psi_l(ctx, n) * _psi_l(ctx, i).scale(n - i):
            bad.append((i, n - 1, "last column"))
    for i in range(n):
        for j in range(n):
            if S[i][j] != S[j][i]:
                bad.append((i, j, "symmetry"))
            if S[i][j] != closed_form_entry(mu, i, j):
                bad.append((i, j, "general"))
            if i + 2 <= j:
                step = pb * _psi_l(ctx, i + 1) * _psi_l(ctx, j).scale(i - j + 1)
                if S[i][j] != step + S[i + 1][j - 1]:
                    bad.append((i, j, "recursion"))
    for i, j, which in bad:
        log.error("weight closed form %s fails at (%d, %d)", which, i, j)
    return bad


def _det(M: Sequence[Sequence], one):
    n = len(M)
    total = None
    for perm in itertools.permutations(range(n)):
        inversions = sum(1 for a, b in itertools.combinations(perm, 2) if a > b)
        term = one
        for r, c in enumerate(perm):
            term = term * M[r][c]
        term = term.scale(-1) if inversions % 2 else term
        total = term if total is None else total + term
    return total


def det_q_check(mu: MuSpec) -> bool:
    """det Q = cos^{nb+1} t_N prod_{i<j} (cos^2 t_i - cos^2 t_j)."""
    W = ladder_weight(mu)
    ctx = mu.ctx
    n = ctx.n
    expected = cos_product(ctx, ctx.n_block) ** (n * mu.b + 1)
    for i, j in itertools.combinations(range(1, n + 1), 2):
        ci, cj = cos_product(ctx, [i]), cos_product(ctx, [j])
        expected = expected * (ci * ci - cj * cj)
    return _det(W.Q, TrigPoly.constant(n)) == expected


def det_S_check(mu: MuSpec) -> bool:
    """det S = psi_n^{nb+1} prod_{i<j} (l_j - l_i)^2.

    Each of the n rows of Q carries cos^b t_N, so the psi_n exponent is nb + 1;
    it reduces to b + 1 only when n = 1 or b = 0.
    """
    W = ladder_weight(mu)
    n = mu.ctx.n
    expected = _psi_l(mu.ctx, n) ** (n * mu.b + 1) * vandermonde_sq(n)
    return _det(W.S, LPolynomial.constant(n)) == expected


def _nullity(rows: List[List[Fraction]], ncols: int) -> int:
    if not rows:
        return ncols
    dm = DomainMatrix([[QQ(x.numerator, x.denominator) for x in r] for r in rows], (len(rows), ncols), QQ)
    return ncols - dm.rank()


def _commutation_rows(S, sign: int, transpose: bool) -> List[List[Fraction]]:
    """Coefficient rows of X S - sign S X^(T if transpose) = 0 in the unknowns X_pq."""
    d = len(S)
    rows = []
    keys = sorted({e for row in S for p in row for e in p.terms})
    for r in range(d):
        for c in range(d):
            for e in keys:
                row = [Fraction(0)] * (d * d)
                for k in range(d):
                    # (X S)_rc = sum_k X_rk S_kc
                    row[r * d + k] += S[k][c].terms.get(e, 0)
                    # (S X)_rc = sum_k S_rk X_kc, (S X^T)_rc = sum_k S_rk X_ck
                    idx = c * d + k if transpose else k * d + c
                    row[idx] -= sign * S[r][k].terms.get(e, 0)
                if any(row):
                    rows.append(row)
    return rows


def indecomposable_check(mu: MuSpec) -> bool:
    """The commutant of S is CI, and {A : AS = SA*} is RI."""
    S = ladder_weight(mu).S
    d = len(S)
    commutant = _nullity(_commutation_rows(S, 1, False), d * d)
    real_part = _nullity(_commutation_rows(S, 1, True), d * d)
    imag_part = _nullity(_commutation_rows(S, -1, True), d * d)
    log.info("%s: commutant %d, AS=SA* real %d imaginary %d", mu.tag, commutant, real_part, imag_part)
    return commutant == 1 and real_part == 1 and imag_part == 0


def psd_samples(mu: MuSpec, points: int, seed: int = 0, weight: Optional[MatrixWeight] = None):
    """Smallest eigenvalue of S over random interior points of (0,1)^n."""
    W = weight or matrix_weight(mu)
    rng = np.random.default_rng(seed)
    l = rng.uniform(0.02, 0.98, size=(points, mu.ctx.n))
    d = W.size
    vals = np.empty((points, d, d))
    for i in range(d):
        for j in range(d):
            vals[:, i, j] = W.S[i][j].evaluate(l)
    low = float(np.min(np.linalg.eigvalsh(vals)))
    return low >= -1e-12, low
