"""
Spherical functions Phi^mu_lambda restricted to A.

The F-basis F_lambda = psi^d Q_nu spans a filtration stable under the radial
operator R, and R is triangular on it with diagonal c_lambda. Phi_lambda is the
c_lambda-eigenvector of R on the span of {F_lambda' : lambda' <= lambda},
normalised to the identity at t = 0.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Dict, List, Optional, Sequence, Tuple

import sympy
from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from .bottoms import (
    Family,
    Label,
    MuSpec,
    SpectrumLabel,
    bottom_elements,
    enumerate_pg_mu,
    find_label,
    ladder,
)
from .casimir import DiagFunc, apply_radial, expand_in_basis
from .errors import DependentBasis, EigenspaceNotOneDimensional, NormalizationError, NotCosPolynomial
from .intertwiners import (
    lambda_h_vector,
    lower_orbit,
    mat_elem,
    psi_elem,
    psi_power,
    q_ladder_entry,
    q_lambdaH_entry,
    rank_one_highest_vector,
)
from .rootdata import (
    RankPair,
    casimir_eigenvalue,
    dominance_leq,
    restrict_to_A,
    weight_sum,
)
from .trigring import GaussRational, TrigPoly, to_cos_poly

log = logging.getLogger("spherical")


def rising(x, k: int) -> Fraction:
    """Pochhammer symbol (x)_k."""
    out = Fraction(1)
    for r in range(k):
        out *= x + r
    return out


def entry_json(p: TrigPoly) -> dict:
    try:
        return {"cos": to_cos_poly(p).to_json()}
    except NotCosPolynomial:
        return {"trig": p.to_json()}


# ---------- reduced Weyl group ----------
def coset_permutation(n: int, H: Sequence[int]) -> Tuple[int, ...]:
    """w with w(k) = h_k for k <= |H|, the rest sent increasingly onto the complement of H."""
    H = tuple(H)
    rest = [j for j in range(1, n + 1) if j not in H]
    return H + tuple(rest)


def inverse_permutation(w: Sequence[int]) -> Tuple[int, ...]:
    inv = [0] * len(w)
    for j, wj in enumerate(w, start=1):
        inv[wj - 1] = j
    return tuple(inv)


def weyl_fill(mu: MuSpec, first_entry: TrigPoly, H: Sequence[int]) -> TrigPoly:
    """Entry at the M-type e_H obtained from the entry at e_{1..s} by t_k -> t_{h_k}."""
    if mu.family is not Family.WEDGE:
        raise ValueError("Weyl filling is only valid for Wedge K-types")
    if len(H) != mu.s:
        raise ValueError(f"{tuple(H)} is not an {mu.s}-subset")
    return first_entry.permute_vars(coset_permutation(mu.ctx.n, H))


@dataclass(frozen=True)
class WeylGenerator:
    index: int
    matrix: sympy.ImmutableMatrix
    perm: Tuple[int, ...]  # action on t: t_j -> t_{perm[j-1]}
    flip: Optional[int] = None  # t_flip -> -t_flip

    def act_on_exponent(self, e: Tuple[int, ...]) -> Tuple[int, ...]:
        out = [0] * len(e)
        for j, a in enumerate(e):
            out[self.perm[j] - 1] = a
        if self.flip:
            out[self.flip - 1] = -out[self.flip - 1]
        return tuple(out)


@lru_cache(maxsize=None)
def weyl_generators(ctx: RankPair) -> Tuple[WeylGenerator, ...]:
    n, m, N = ctx.n, ctx.m, ctx.size
    gens = []
    for i in range(1, n):
        M = sympy.eye(N)
        for a, b in ((i, i + 1), (ctx.sigma(i), ctx.sigma(i + 1))):
            M[a - 1, a - 1] = M[b - 1, b - 1] = 0
            M[a - 1, b - 1] = M[b - 1, a - 1] = 1
        perm = list(range(1, n + 1))
        perm[i - 1], perm[i] = i + 1, i
        gens.append(WeylGenerator(i, sympy.ImmutableMatrix(M), tuple(perm)))
    M = sympy.eye(N)
    a, b = n, m + 1
    M[a - 1, a - 1] = M[b - 1, b - 1] = 0
    M[a - 1, b - 1] = M[b - 1, a - 1] = 1
    gens.append(WeylGenerator(n, sympy.ImmutableMatrix(M), tuple(range(1, n + 1)), flip=n))
    return tuple(gens)


def _torus(ctx: RankPair, z: Sequence[sympy.Expr]) -> sympy.Matrix:
    """The conjugated torus element diag(z_1, .., z_n, 1, .., 1, 1/z_n, .., 1/z_1)."""
    diag = list(z) + [1] * (ctx.m - ctx.n) + [1 / x for x in reversed(z)]
    return sympy.diag(*diag)


def braid_check(ctx: RankPair) -> bool:
    gens = weyl_generators(ctx)
    n, N = ctx.n, ctx.size
    one = sympy.eye(N)
    s = {g.index: sympy.Matrix(g.matrix) for g in gens}
    ok = True
    for i in s:
        if s[i] * s[i] != one:
            log.error("s_%d does not square to 1", i)
            ok = False
        for j in s:
            if abs(i - j) > 1 and s[i] * s[j] != s[j] * s[i]:
                log.error("s_%d and s_%d do not commute", i, j)
                ok = False
    for i in range(1, n - 1):
        if s[i + 1] * s[i] * s[i + 1] != s[i] * s[i + 1] * s[i]:
            log.error("braid relation fails for s_%d, s_%d", i, i + 1)
            ok = False
    if n >= 2:
        a, b = s[n - 1], s[n]
        if a * b * a * b != b * a * b * a:
            log.error("C-type relation fails for s_%d, s_%d", n - 1, n)
            ok = False
    z = sympy.symbols(f"z1:{n + 1}")
    D = _torus(ctx, z)
    for g in gens:
        lhs = s[g.index].inv() * D * s[g.index]
        image = [None] * n
        for j in range(1, n + 1):
            e = tuple(1 if k == j else 0 for k in range(1, n + 1))
            target = g.act_on_exponent(e)
            k = next(idx for idx, x in enumerate(target) if x)
            image[k] = z[j - 1] if target[k] > 0 else 1 / z[j - 1]
        if (lhs - _torus(ctx, image)).applyfunc(sympy.simplify) != sympy.zeros(N, N):
            log.error("s_%d does not act on the torus by the expected permutation", g.index)
            ok = False
    return ok


# ---------- zonal spherical functions ----------
def zonal_coefficients(ctx: RankPair, i: int) -> List[Fraction]:
    """Coefficients c_j of phi_i = sum_j c_j psi_j."""
    n, m = ctx.n, ctx.m
    if not 0 <= i <= n:
        raise ValueError(f"zonal index {i} outside 0..{n}")
    k = [
        (-1) ** j * rising(i + 1 - j, j) * rising(m + n + 2 - i - j, j) / rising(n + 1 - j, j) ** 2
        for j in range(i + 1)
    ]
    l = (-1) ** i * rising(-n, i) / rising(-m, i)
    return [l * kj for kj in k]


def zonal_phi(ctx: RankPair, i: int) -> Tuple[TrigPoly, List[Fraction]]:
    coefs = zonal_coefficients(ctx, i)
    out = TrigPoly(ctx.n)
    for j, c in enumerate(coefs):
        out = out + psi_elem(ctx, j).scale(c)
    return out, coefs


# ---------- approximants and the F-basis ----------
def _source_element(mu: MuSpec, source: Label):
    for e in bottom_elements(mu):
        if tuple(e.source) == tuple(source):
            return e
    raise ValueError(f"{tuple(source)} is not a bottom source of {mu.tag}")


def _normalised(entries: Dict[Label, TrigPoly]) -> DiagFunc:
    out = {}
    for label, p in entries.items():
        v = p.eval_at_zero()
        if v.is_zero():
            raise NormalizationError(f"approximant entry at {label} vanishes at t=0")
        out[label] = p.scale(1 / v)
    return DiagFunc(out)


@lru_cache(maxsize=None)
def bottom_approximant(mu: MuSpec, source: Label, engine: bool = False) -> DiagFunc:
    """Q_nu for the bottom attached to source, normalised to the identity at t=0.

    Wedge entries come from the closed form and the reduced Weyl group; RankOne
    entries, and Wedge ones when engine is set, from the intertwiner engine.
    """
    _source_element(mu, source)
    ctx = mu.ctx
    if mu.family is Family.WEDGE and not engine:
        first = q_lambdaH_entry(mu, tuple(source), (0,) * ctx.n)
        return _normalised({H: weyl_fill(mu, first, H) for H in mu.labels()})
    if mu.family is Family.WEDGE:
        top = lambda_h_vector(mu, tuple(source), (0,) * ctx.n)
    else:
        top = rank_one_highest_vector(ctx, source, mu.b, mu.a)
    images = lower_orbit(top, mu)
    return _normalised({label: mat_elem(ctx, v, v) for label, v in images.items()})


def f_func(mu: MuSpec, label: SpectrumLabel) -> DiagFunc:
    """F_lambda = psi_1^{d_1} ... psi_n^{d_n} Q_nu."""
    q = bottom_approximant(mu, tuple(label.source))
    if not any(label.degrees):
        return q
    return q.times(psi_power(mu.ctx, label.degrees))


@dataclass
class FBasisElement:
    label: SpectrumLabel
    func: DiagFunc

    @property
    def leading_exponent(self) -> Tuple[int, ...]:
        return restrict_to_A(self.label.bottom.ctx, self.label.weight).coeffs


def _qq(x: Fraction):
    return QQ(x.numerator, x.denominator)


def _check_independent(funcs: Sequence[DiagFunc]):
    keys = sorted({(label, e) for F in funcs for label, p in F.entries.items() for e in p.terms})
    if not keys:
        raise DependentBasis("empty F-basis")
    # realification: complex independence of N columns is real rank 2N
    rows = []
    for key in keys:
        cs = [F.entries[key[0]].terms.get(key[1], GaussRational()) for F in funcs]
        rows.append([_qq(c.re) for c in cs] + [_qq(-c.im) for c in cs])
        rows.append([_qq(c.im) for c in cs] + [_qq(c.re) for c in cs])
    rank = DomainMatrix(rows, (len(rows), 2 * len(funcs)), QQ).rank()
    if rank < 2 * len(funcs):
        raise DependentBasis(f"F-basis of size {len(funcs)} is linearly dependent")


def build_f_basis(mu: MuSpec, degree_bound: int,
                  labels: Optional[Sequence[SpectrumLabel]] = None) -> List[FBasisElement]:
    if labels is None:
        labels = enumerate_pg_mu(mu, degree_bound)
    basis = [FBasisElement(label, f_func(mu, label)) for label in labels]
    leading = [b.leading_exponent for b in basis]
    if len(set(leading)) != len(leading):
        # distinct labels may restrict to the same exponent on A
        log.debug("F-basis for %s has repeated restricted exponents", mu.tag)
    _check_independent([b.func for b in basis])
    log.info("F-basis for %s: %d elements", mu.tag, len(basis))
    return basis


def closure(mu: MuSpec, label: SpectrumLabel) -> List[SpectrumLabel]:
    """All lambda' <= lambda in P_G^+(mu), in a linear extension of dominance."""
    ctx = mu.ctx
    sums = [weight_sum(e.weight) for e in bottom_elements(mu)]
    # weight_sum grows by 2 per spherical generator and never decreases along <=
    bound = label.sph_degree + (max(sums) - min(sums)) // 2
    return [l for l in enumerate_pg_mu(mu, bound) if dominance_leq(ctx, l.weight, label.weight)]


def r_matrix(mu: MuSpec, basis: Sequence[FBasisElement]) -> List[List[GaussRational]]:
    """Matrix of R on the basis; column j holds the expansion of R(F_j)."""
    funcs = [b.func for b in basis]
    cols = []
    for j, b in enumerate(basis):
        cols.append(expand_in_basis(apply_radial(mu, b.func), funcs))
        log.debug("R column %d/%d done", j + 1, len(basis))
    return [[cols[j][i] for j in range(len(basis))] for i in range(len(basis))]


def _sym(c: GaussRational):
    return sympy.Rational(c.re.numerator, c.re.denominator) + sympy.I * sympy.Rational(
        c.im.numerator, c.im.denominator)


def _gauss(x) -> GaussRational:
    re, im = sympy.nsimplify(x).as_real_imag()
    return GaussRational(Fraction(int(re.p), int(re.q)), Fraction(int(im.p), int(im.q)))


@dataclass
class SphericalFunction:
    label: SpectrumLabel
    entries: DiagFunc
    eigenvalue: Fraction
    expansion: List[Tuple[SpectrumLabel, GaussRational]] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "label": self.label.to_json(),
            "weight": self.label.weight.to_json(),
            "eigenvalue": str(self.eigenvalue),
            "entries": [{"mtype": list(k), **entry_json(v)} for k, v in self.entries.entries.items()],
            "expansion": [{"label": l.to_json(), "coef": c.to_json()} for l, c in self.expansion],
        }


def solve_in_basis(mu: MuSpec, label: SpectrumLabel, basis: Sequence[FBasisElement],
                   R: Sequence[Sequence[GaussRational]]) -> SphericalFunction:
    """Eigen-solve on a basis already closed under <= and its R-matrix."""
    ctx = mu.ctx
    idx = {b.label: k for k, b in enumerate(basis)}
    if label not in idx:
        raise ValueError(f"{label} is not in the supplied basis")
    c = casimir_eigenvalue(ctx, label.weight)
    for k, b in enumerate(basis):
        if R[k][k] != GaussRational(casimir_eigenvalue(ctx, b.label.weight)):
            log.warning("diagonal of R at %s is %s, expected c_lambda", b.label.to_json(), R[k][k])
    M = sympy.Matrix([[_sym(x) for x in row] for row in R]) - sympy.Rational(
        c.numerator, c.denominator) * sympy.eye(len(basis))
    null = M.nullspace()
    if len(null) != 1:
        raise EigenspaceNotOneDimensional(
            f"eigenspace for c={c} at {label.to_json()} has dimension {len(null)}")
    x = [_gauss(v) for v in null[0]]
    if x[idx[label]].is_zero():
        raise EigenspaceNotOneDimensional("eigenvector has zero leading coefficient")
    phi = None
    for xk, b in zip(x, basis):
        if xk.is_zero():
            continue
        term = b.func.scale(xk)
        phi = term if phi is None else phi + term
    at0 = phi.at_zero()
    if at0[0].is_zero() or any(v != at0[0] for v in at0):
        raise NormalizationError(f"values at t=0 are {at0}, not a multiple of the identity")
    scale = 1 / at0[0]
    phi = phi.scale(scale)
    expansion = [(b.label, xk * scale) for xk, b in zip(x, basis) if not xk.is_zero()]
    return SphericalFunction(label, phi, c, expansion)


def solve_phi(mu: MuSpec, label: SpectrumLabel) -> SphericalFunction:
    basis = build_f_basis(mu, label.sph_degree, labels=closure(mu, label))
    R = r_matrix(mu, basis)
    phi = solve_in_basis(mu, label, basis, R)
    log.info("solved %s %s on %d basis elements", mu.tag, label.to_json(), len(basis))
    return phi


def radial_check(mu: MuSpec, phi: SphericalFunction) -> bool:
    return apply_radial(mu, phi.entries) == phi.entries.scale(phi.eigenvalue)


# ---------- ladders ----------
def _ladder_h(mu: MuSpec, label: Label) -> Tuple[int, ...]:
    if mu.family is Family.WEDGE:
        return tuple(label)
    return tuple(k for k, x in enumerate(label, start=1) if x)


def ladder_q(mu: MuSpec, i: int) -> DiagFunc:
    """Unnormalised Q_{nu_i} with entries cos t_H cos^b t_N psi_i^{(H)}."""
    ladder(mu, i)
    return DiagFunc({label: q_ladder_entry(mu, i, _ladder_h(mu, label)) for label in mu.labels()})


def ladder_recurrence_check(mu: MuSpec, i: int) -> bool:
    """R(Q_i) = c_{nu_i} Q_i - 2(n-s-i+1)(b+n-s-i+1) Q_{i-1}."""
    ctx = mu.ctx
    s = mu.s if mu.family is Family.WEDGE else 1
    q = ladder_q(mu, i)
    rhs = q.scale(casimir_eigenvalue(ctx, ladder(mu, i)))
    if i > 0:
        k = ctx.n - s - i + 1
        rhs = rhs - ladder_q(mu, i - 1).scale(2 * k * (mu.b + k))
    return apply_radial(mu, q) == rhs


def ladder_closed_form(mu: MuSpec, i: int) -> Tuple[DiagFunc, List[Fraction]]:
    """Phi_{nu_i} = l sum_{j<=i} k_j Q_{nu_j} for mu = omega_1 + b omega_n, Q normalised."""
    if mu.family is not Family.RANK_ONE or mu.a != 1:
        raise ValueError("the ladder closed form covers RankOne(1, b) only")
    n, m, b = mu.ctx.n, mu.ctx.m, mu.b
    if not 0 <= i <= n - 1:
        raise ValueError(f"ladder index {i} outside 0..{n - 1}")
    k = [
        (-1) ** (i - j) * rising(n - i, i - j) * rising(n + b - i, i - j)
        / (factorial(i - j) * rising(m + n + b - 2 * i + 1, i - j))
        for j in range(i + 1)
    ]
    l = (-1) ** i * Fraction(1, comb(n - 1, i)) * rising(m + n + b - 2 * i + 1, i) / rising(-m, i)
    coefs = [l * kj for kj in k]
    out = None
    for j, cj in enumerate(coefs):
        source = tuple(1 if r == j else 0 for r in range(n))
        term = bottom_approximant(mu, source).scale(cj)
        out = term if out is None else out + term
    return out, coefs


def ladder_label(mu: MuSpec, i: int) -> SpectrumLabel:
    ctx = mu.ctx
    source = tuple(1 if r == i else 0 for r in range(ctx.n)) if mu.family is Family.RANK_ONE \
        else tuple(range(i + 1, i + mu.s + 1))
    return find_label(mu, source, (0,) * ctx.n)


def ladder_entry_check(mu: MuSpec, i: int) -> bool:
    """Wedge ladder entries agree with Weyl filling of the first entry."""
    first = q_ladder_entry(mu, i, tuple(range(1, mu.s + 1)))
    return all(weyl_fill(mu, first, H) == q_ladder_entry(mu, i, H) for H in mu.labels())


def engine_agrees(mu: MuSpec, source: Label) -> bool:
    """Closed-form Wedge approximant equals the one from the intertwiner engine."""
    return bottom_approximant(mu, tuple(source)) == bottom_approximant(mu, tuple(source), engine=True)
