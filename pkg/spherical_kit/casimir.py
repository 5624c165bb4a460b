"""
Radial part of the Casimir operator acting on diagonal End_M(V_mu^K)-valued
functions on the torus A.

For a restricted root beta with constituents alpha, and Z = pi(Ad(u*) X_alpha),
Z' = pi(Ad(u*) X_{-alpha}), the contribution to entry k is

    [2 P_kk f_k - 2 cos(beta) sum_l S_kl f_l - 2 sin(beta) cos(beta) (beta . grad) f_k] / (4 sin^2 beta)

with P = ZZ' + Z'Z and S_kl = Z_kl Z'_lk + Z'_kl Z_lk. The short root t_j and the
long root 2t_j are put over the common denominator 4 sin^2 2t_j before dividing.
"""
import enum
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

import sympy
from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from .bottoms import Family, Label, MuSpec
from .errors import NonBlockDiagonal, NotInSpan
from .intertwiners import model_action
from .rootdata import RankPair
from .trigring import GaussRational, TrigPoly, cos_lin, exact_div, four_sin_sq, sin_lin, unit

log = logging.getLogger("casimir")


class RootKind(enum.Enum):
    SHORT = "short"
    MIDDLE_MINUS = "middle-"
    MIDDLE_PLUS = "middle+"
    LONG = "long"


MULTIPLICITY = {RootKind.SHORT: None, RootKind.MIDDLE_MINUS: 2, RootKind.MIDDLE_PLUS: 2, RootKind.LONG: 1}


@dataclass(frozen=True)
class RestrictedRoot:
    kind: RootKind
    g: Tuple[int, ...]  # beta = sum g_j t_j
    constituents: Tuple[Tuple[int, int], ...]  # (p, q) for eps_p - eps_q

    @property
    def family_key(self) -> Tuple:
        if self.kind in (RootKind.SHORT, RootKind.LONG):
            return ("t", self.g.index(next(x for x in self.g if x)) + 1)
        return (self.kind.value,) + tuple(j + 1 for j, x in enumerate(self.g) if x)


def theta_coord(ctx: RankPair, k: int) -> Tuple[int, ...]:
    """Restriction of eps_k to the torus, as a coefficient vector in t_1..t_n."""
    if k <= ctx.n:
        return unit(ctx.n, k)
    if k <= ctx.m:
        return (0,) * ctx.n
    return unit(ctx.n, ctx.sigma(k), -1)


def _kind(g: Tuple[int, ...]) -> RootKind:
    support = [x for x in g if x]
    if support == [1]:
        return RootKind.SHORT
    if support == [2]:
        return RootKind.LONG
    if support == [1, -1]:
        return RootKind.MIDDLE_MINUS
    if support == [1, 1]:
        return RootKind.MIDDLE_PLUS
    raise ValueError(f"unexpected restricted root {g}")


@lru_cache(maxsize=None)
def restricted_roots(ctx: RankPair) -> Tuple[RestrictedRoot, ...]:
    """Positive restricted roots with the positive roots of A_{n+m-1} lying over them."""
    grouped: Dict[Tuple[int, ...], List[Tuple[int, int]]] = {}
    for p in range(1, ctx.size + 1):
        for q in range(p + 1, ctx.size + 1):
            g = tuple(a - b for a, b in zip(theta_coord(ctx, p), theta_coord(ctx, q)))
            if any(g):
                grouped.setdefault(g, []).append((p, q))
    roots = []
    for g in sorted(grouped, reverse=True):
        kind = _kind(g)
        cons = tuple(grouped[g])
        expected = 2 * (ctx.m - ctx.n) if kind is RootKind.SHORT else MULTIPLICITY[kind]
        assert len(cons) == expected, f"multiplicity of {g} is {len(cons)}, expected {expected}"
        roots.append(RestrictedRoot(kind, g, cons))
    return tuple(roots)


# ---------- matrices ----------
def _tau(ctx: RankPair, k: int) -> int:
    """Index permutation of J': outer indices k <-> n+m+1-k, middle ones fixed."""
    return k if ctx.n < k <= ctx.m else ctx.sigma(k)


@lru_cache(maxsize=None)
def u_matrix(ctx: RankPair) -> sympy.Matrix:
    N = ctx.size
    h = 1 / sympy.sqrt(2)
    u = sympy.zeros(N, N)
    for k in range(1, N + 1):
        if k <= ctx.n:
            u[k - 1, k - 1] = h
            u[k - 1, ctx.sigma(k) - 1] = h
        elif k <= ctx.m:
            u[k - 1, k - 1] = 1
        else:
            u[k - 1, ctx.sigma(k) - 1] = -h
            u[k - 1, k - 1] = h
    return u


def j_prime(ctx: RankPair) -> sympy.Matrix:
    N = ctx.size
    J = sympy.zeros(N, N)
    for k in range(1, N + 1):
        J[k - 1, _tau(ctx, k) - 1] = 1
    return J


def _elementary(N: int, p: int, q: int) -> sympy.Matrix:
    E = sympy.zeros(N, N)
    E[p - 1, q - 1] = 1
    return E


def _check_block_diagonal(ctx: RankPair, X: sympy.Matrix, what: str):
    n, N = ctx.n, ctx.size
    for r in range(N):
        for c in range(N):
            if (r < n) != (c < n) and sympy.simplify(X[r, c]) != 0:
                raise NonBlockDiagonal(f"{what} has entry {X[r, c]} at ({r + 1}, {c + 1})")


def build_x_alpha(ctx: RankPair, alpha: Tuple[int, int]) -> Tuple[sympy.Matrix, sympy.Matrix]:
    """(Ad(u*) X_alpha, Ad(u*) X_{-alpha}) for alpha = eps_p - eps_q, X_alpha = E_pq + J' E_pq J'."""
    p, q = alpha
    N = ctx.size
    u = u_matrix(ctx)
    J = j_prime(ctx)
    out = []
    for a, b in ((p, q), (q, p)):
        E = _elementary(N, a, b)
        X = E + J * E * J
        Y = (u.T * X * u).applyfunc(sympy.nsimplify)
        _check_block_diagonal(ctx, Y, f"Ad(u*)X for ({a},{b})")
        out.append(Y)
    return out[0], out[1]


def _label_index(mu: MuSpec) -> Dict[Label, int]:
    return {label: k for k, label in enumerate(mu.labels())}


def pi_mu(mu: MuSpec, X: sympy.Matrix) -> sympy.Matrix:
    """Action of a block-diagonal element on V_mu^K; the D-block acts trivially."""
    n = mu.ctx.n
    if X.shape == (mu.ctx.size, mu.ctx.size):
        _check_block_diagonal(mu.ctx, X, "pi_mu argument")
        X = X[:n, :n]
    index = _label_index(mu)
    d = len(index)
    out = sympy.zeros(d, d)
    for label, col in index.items():
        for p in range(1, n + 1):
            for q in range(1, n + 1):
                if X[p - 1, q - 1] == 0:
                    continue
                for c, new in model_action(mu, p, q, label):
                    out[index[new], col] += X[p - 1, q - 1] * c
    return out


def _rational(x) -> Fraction:
    x = sympy.nsimplify(sympy.expand(x))
    if not x.is_Rational:
        raise ValueError(f"expected a rational entry, got {x}")
    return Fraction(int(x.p), int(x.q))


# ---------- Omega_m ----------
def omega_m_scalar(mu: MuSpec) -> Fraction:
    if mu.family is not Family.WEDGE:
        raise ValueError("the closed form of Omega_m covers Wedge K-types only")
    n, m, s, b = mu.ctx.n, mu.ctx.m, mu.s, mu.b
    num = 2 * s * s + ((2 * b - 1) * n + (-2 * b - 1) * m) * s + b * b * n * n - b * b * m * n
    return Fraction(-num, 2 * n + 2 * m)


def m_torus_character(mu: MuSpec, label: Label) -> List[int]:
    n = mu.ctx.n
    if mu.family is Family.WEDGE:
        return [(1 if j in label else 0) + mu.b for j in range(1, n + 1)]
    return [label[j - 1] + mu.b for j in range(1, n + 1)]


def omega_m_direct(mu: MuSpec) -> Dict[Label, Fraction]:
    """Casimir of the torus of M on each M-type, with the trace form as inner product.

    The torus is diag(d, e, LdL) with 2 sum(d) + sum(e) = 0; the trace form is
    x -> 2|d|^2 + |e|^2 and the constraint is orthogonality to (1, ..., 1).
    """
    n, m = mu.ctx.n, mu.ctx.m
    one_norm = 2 * n + (m - n)
    out = {}
    for label in mu.labels():
        ell = m_torus_character(mu, label)
        full = Fraction(sum(x * x for x in ell), 2)
        along_one = Fraction(sum(ell) ** 2, one_norm)
        out[label] = full - along_one
    return out


# ---------- the operator data ----------
@dataclass
class RootPart:
    g: Tuple[int, ...]
    count: int
    P: List[Fraction]
    S: List[List[Fraction]]
    short: bool
    cos_beta: TrigPoly = field(repr=False)
    sin_cos_beta: TrigPoly = field(repr=False)


@dataclass
class RootFamily:
    key: Tuple
    den: TrigPoly
    parts: List[RootPart]
    short_factor: Optional[TrigPoly] = None


@dataclass
class KRep:
    mu: MuSpec
    labels: Tuple[Label, ...]
    omega: List[Fraction]
    omega_source: str
    families: List[RootFamily]


@lru_cache(maxsize=None)
def build_krep(mu: MuSpec) -> KRep:
    ctx = mu.ctx
    n = ctx.n
    labels = mu.labels()
    d = len(labels)
    if mu.family is Family.WEDGE:
        omega = [omega_m_scalar(mu)] * d
        source = "closed-form"
    else:
        direct = omega_m_direct(mu)
        omega = [direct[label] for label in labels]
        source = "direct"
    families: Dict[Tuple, RootFamily] = {}
    for root in restricted_roots(ctx):
        P = [Fraction(0)] * d
        S = [[Fraction(0)] * d for _ in range(d)]
        for alpha in root.constituents:
            Z, Zm = build_x_alpha(ctx, alpha)
            A, Am = pi_mu(mu, Z), pi_mu(mu, Zm)
            sym = A * Am + Am * A
            for k in range(d):
                P[k] += _rational(sym[k, k])
                for l in range(d):
                    S[k][l] += _rational(A[k, l] * Am[l, k] + Am[k, l] * A[l, k])
        part = RootPart(
            g=root.g,
            count=len(root.constituents),
            P=P,
            S=S,
            short=root.kind is RootKind.SHORT,
            cos_beta=cos_lin(n, root.g),
            sin_cos_beta=sin_lin(n, root.g) * cos_lin(n, root.g),
        )
        key = root.family_key
        if key not in families:
            if key[0] == "t":
                j = key[1]
                fam = RootFamily(key, four_sin_sq(n, unit(n, j, 2)), [],
                                 short_factor=four_sin_sq(n, unit(n, j)).scale(-1) + 4)
            else:
                fam = RootFamily(key, four_sin_sq(n, root.g), [])
            families[key] = fam
        families[key].parts.append(part)
    log.info("built radial data for %s: %d M-types, %d root families", mu.tag, d, len(families))
    return KRep(mu, labels, omega, source, list(families.values()))


def krep_homomorphism_check(mu: MuSpec) -> bool:
    """pi_mu respects brackets of the conjugated root vectors."""
    for root in restricted_roots(mu.ctx):
        for alpha in root.constituents:
            Z, Zm = build_x_alpha(mu.ctx, alpha)
            lhs = pi_mu(mu, Z * Zm - Zm * Z)
            A, Am = pi_mu(mu, Z), pi_mu(mu, Zm)
            if (lhs - (A * Am - Am * A)).applyfunc(sympy.simplify) != sympy.zeros(*lhs.shape):
                log.error("bracket mismatch on %s", alpha)
                return False
    return True


# ---------- diagonal functions ----------
class DiagFunc:
    """One TrigPoly per M-type label."""

    __slots__ = ("entries",)

    def __init__(self, entries: Dict[Label, TrigPoly]):
        self.entries = dict(entries)

    @property
    def labels(self) -> Tuple[Label, ...]:
        return tuple(self.entries)

    @property
    def nvars(self) -> int:
        return next(iter(self.entries.values())).nvars

    def _zip(self, other: "DiagFunc"):
        if self.labels != other.labels:
            raise ValueError("diagonal functions over different M-type bases")
        return zip(self.labels, self.entries.values(), other.entries.values())

    def __add__(self, other: "DiagFunc") -> "DiagFunc":
        return DiagFunc({k: a + b for k, a, b in self._zip(other)})

    def __sub__(self, other: "DiagFunc") -> "DiagFunc":
        return DiagFunc({k: a - b for k, a, b in self._zip(other)})

    def scale(self, c) -> "DiagFunc":
        return DiagFunc({k: v.scale(c) for k, v in self.entries.items()})

    def times(self, p: TrigPoly) -> "DiagFunc":
        return DiagFunc({k: v * p for k, v in self.entries.items()})

    def is_zero(self) -> bool:
        return all(v.is_zero() for v in self.entries.values())

    def at_zero(self) -> List[GaussRational]:
        return [v.eval_at_zero() for v in self.entries.values()]

    def __eq__(self, other):
        if not isinstance(other, DiagFunc):
            return NotImplemented
        return self.labels == other.labels and all(a == b for _, a, b in self._zip(other))

    __hash__ = None

    def to_json(self) -> list:
        return [{"label": list(k), "entry": v.to_json()} for k, v in self.entries.items()]

    def __repr__(self):
        return f"DiagFunc({len(self.entries)} entries)"


# ---------- the radial operator ----------
def _laplacian_half(p: TrigPoly) -> TrigPoly:
    out = TrigPoly(p.nvars)
    for j in range(1, p.nvars + 1):
        out = out + p.d_dt(j).d_dt(j)
    return out.scale(Fraction(-1, 2))


def radial_without_omega(mu: MuSpec, F: DiagFunc) -> DiagFunc:
    krep = build_krep(mu)
    n = mu.ctx.n
    if F.labels != krep.labels:
        raise ValueError("function is not indexed by the M-types of mu")
    f = [F.entries[label] for label in krep.labels]
    grads = [[fk.d_dt(j) for j in range(1, n + 1)] for fk in f]
    out = [_laplacian_half(fk) for fk in f]
    for fam in krep.families:
        for k in range(len(f)):
            num = TrigPoly(n)
            for part in fam.parts:
                piece = f[k].scale(2 * part.P[k])
                mixed = TrigPoly(n)
                for l, coef in enumerate(part.S[k]):
                    if coef:
                        mixed = mixed + f[l].scale(coef)
                if not mixed.is_zero():
                    piece = piece - part.cos_beta * mixed.scale(2)
                directional = TrigPoly(n)
                for j, gj in enumerate(part.g):
                    if gj:
                        directional = directional + grads[k][j].scale(gj)
                if not directional.is_zero():
                    piece = piece - part.sin_cos_beta * directional.scale(2 * part.count)
                if part.short:
                    piece = piece * fam.short_factor
                num = num + piece
            if not num.is_zero():
                out[k] = out[k] + exact_div(num, fam.den)
    return DiagFunc(dict(zip(krep.labels, out)))


def apply_radial(mu: MuSpec, F: DiagFunc) -> DiagFunc:
    """R(F), exact; NonDivisible propagates when F is outside the stable span."""
    krep = build_krep(mu)
    base = radial_without_omega(mu, F)
    return DiagFunc({
        label: base.entries[label] + F.entries[label].scale(w)
        for label, w in zip(krep.labels, krep.omega)
    })


def omega_m_bootstrap(mu: MuSpec, q_bottom: DiagFunc, eigenvalue: Fraction) -> Fraction:
    """Scalar c with R_0(Q) + c Q = eigenvalue Q on the first M-type, R_0 the operator without Omega_m."""
    first = mu.labels()[0]
    f = q_bottom.entries[first]
    rest = radial_without_omega(mu, q_bottom).entries[first]
    c = exact_div(f.scale(eigenvalue) - rest, f)
    if set(c.terms) - {(0,) * f.nvars}:
        raise NotInSpan("Omega_m bootstrap did not produce a constant")
    value = c.eval_at_zero()
    if not value.is_real():
        raise NotInSpan("Omega_m bootstrap produced a non-real constant")
    return value.re


# ---------- expansion ----------
def _support(funcs: Sequence[DiagFunc]) -> List[Tuple[Label, Tuple[int, ...]]]:
    keys = set()
    for F in funcs:
        for label, p in F.entries.items():
            for e in p.terms:
                keys.add((label, e))
    return sorted(keys)


def _coef(F: DiagFunc, key) -> GaussRational:
    label, e = key
    return F.entries[label].terms.get(e, GaussRational())


def expand_in_basis(G: DiagFunc, basis: Sequence[DiagFunc]) -> List[GaussRational]:
    """Exact coefficients x with sum x_j basis[j] = G; NotInSpan otherwise."""
    keys = _support(list(basis) + [G])
    nb = len(basis)
    if not keys:
        return [GaussRational()] * nb
    real = all(_coef(F, key).is_real() for F in list(basis) + [G] for key in keys)
    rows = []
    if real:
        for key in keys:
            rows.append([_coef(F, key).re for F in basis] + [_coef(G, key).re])
        ncols = nb
    else:
        for key in keys:
            b = [_coef(F, key) for F in basis]
            g = _coef(G, key)
            rows.append([c.re for c in b] + [-c.im for c in b] + [g.re])
            rows.append([c.im for c in b] + [c.re for c in b] + [g.im])
        ncols = 2 * nb
    dm = DomainMatrix([[QQ(x.numerator, x.denominator) for x in row] for row in rows],
                      (len(rows), ncols + 1), QQ)
    rref, pivots = dm.rref()
    if ncols in pivots:
        raise NotInSpan("residual does not vanish")
    if len(pivots) < ncols:
        raise NotInSpan("basis functions are linearly dependent")
    R = rref.to_Matrix()
    sol = [Fraction(0)] * ncols
    for row, col in enumerate(pivots):
        x = R[row, ncols]
        sol[col] = Fraction(int(x.p), int(x.q))
    if real:
        return [GaussRational(x) for x in sol]
    return [GaussRational(sol[j], sol[nb + j]) for j in range(nb)]
