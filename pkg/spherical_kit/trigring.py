"""
Exact trigonometric polynomials in t_1..t_n.

A TrigPoly is a Laurent polynomial in z_j = exp(i t_j) with Gaussian-rational
coefficients, so cos t_j = (z_j + 1/z_j)/2 and sin t_j = (z_j - 1/z_j)/(2i).
Variable indices in the public API are 1-based (t_1..t_n); exponent tuples are
positional.
"""
from fractions import Fraction
from typing import Dict, Optional, Sequence, Tuple

import numpy as np

from .errors import NonDivisible, NotCosPolynomial

Exp = Tuple[int, ...]


def _frac_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


class GaussRational:
    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @staticmethod
    def coerce(x) -> "GaussRational":
        if isinstance(x, GaussRational):
            return x
        return GaussRational(x, 0)

    def __add__(self, other):
        o = GaussRational.coerce(other)
        return GaussRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = GaussRational.coerce(other)
        return GaussRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return GaussRational.coerce(other) - self

    def __neg__(self):
        return GaussRational(-self.re, -self.im)

    def __mul__(self, other):
        o = GaussRational.coerce(other)
        return GaussRational(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = GaussRational.coerce(other)
        norm = o.re * o.re + o.im * o.im
        if norm == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return self * GaussRational(o.re / norm, -o.im / norm)

    def __rtruediv__(self, other):
        return GaussRational.coerce(other) / self

    def conj(self) -> "GaussRational":
        return GaussRational(self.re, -self.im)

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_real(self) -> bool:
        return self.im == 0

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = GaussRational(other)
        if not isinstance(other, GaussRational):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def to_json(self) -> dict:
        return {"re": _frac_str(self.re), "im": _frac_str(self.im)}

    @classmethod
    def from_json(cls, d: dict) -> "GaussRational":
        return cls(Fraction(d["re"]), Fraction(d["im"]))

    def __repr__(self):
        if self.im == 0:
            return str(self.re)
        return f"({self.re}+{self.im}i)"


I = GaussRational(0, 1)


class TrigPoly:
    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Optional[Dict[Exp, GaussRational]] = None):
        self.nvars = nvars
        self.terms: Dict[Exp, GaussRational] = {}
        if terms:
            for e, c in terms.items():
                c = GaussRational.coerce(c)
                if not c.is_zero():
                    self.terms[tuple(e)] = c

    # ---------- constructors ----------
    @classmethod
    def constant(cls, nvars: int, c=1) -> "TrigPoly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def zero(cls, nvars: int) -> "TrigPoly":
        return cls(nvars)

    @classmethod
    def monomial(cls, nvars: int, exp: Exp, c=1) -> "TrigPoly":
        return cls(nvars, {tuple(exp): c})

    # ---------- ring structure ----------
    def _like(self, other) -> "TrigPoly":
        if isinstance(other, TrigPoly):
            if other.nvars != self.nvars:
                raise ValueError(f"variable count mismatch: {self.nvars} vs {other.nvars}")
            return other
        return TrigPoly.constant(self.nvars, other)

    def __add__(self, other):
        o = self._like(other)
        out = dict(self.terms)
        for e, c in o.terms.items():
            if e in out:
                s = out[e] + c
                if s.is_zero():
                    del out[e]
                else:
                    out[e] = s
            else:
                out[e] = c
        return _raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return _raw(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._like(other))

    def __rsub__(self, other):
        return self._like(other) - self

    def scale(self, c) -> "TrigPoly":
        c = GaussRational.coerce(c)
        if c.is_zero():
            return TrigPoly(self.nvars)
        return _raw(self.nvars, {e: v * c for e, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, TrigPoly):
            return self.scale(other)
        o = self._like(other)
        out: Dict[Exp, GaussRational] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = c1 * c2
                if e in out:
                    out[e] = out[e] + v
                else:
                    out[e] = v
        return TrigPoly(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "TrigPoly":
        if k < 0:
            raise ValueError("negative powers are not trigonometric polynomials")
        out = TrigPoly.constant(self.nvars)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, GaussRational)):
            other = TrigPoly.constant(self.nvars, other)
        if not isinstance(other, TrigPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    __hash__ = None

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    # ---------- structure ----------
    def conj(self) -> "TrigPoly":
        return _raw(self.nvars, {tuple(-a for a in e): c.conj() for e, c in self.terms.items()})

    def is_real(self) -> bool:
        return self == self.conj()

    def is_rational(self) -> bool:
        return all(c.is_real() for c in self.terms.values())

    def d_dt(self, j: int) -> "TrigPoly":
        """Partial derivative in t_j; d/dt_j multiplies z^e by i e_j."""
        if not 1 <= j <= self.nvars:
            raise ValueError(f"variable t_{j} outside t_1..t_{self.nvars}")
        out = {}
        for e, c in self.terms.items():
            v = e[j - 1]
            if v:
                out[e] = GaussRational(-c.im * v, c.re * v)
        return _raw(self.nvars, out)

    def eval_at_zero(self) -> GaussRational:
        return sum(self.terms.values(), GaussRational())

    def evaluate(self, t) -> np.ndarray:
        """Float values at points t of shape (..., nvars)."""
        t = np.asarray(t, dtype=float)
        if not self.terms:
            return np.zeros(t.shape[:-1], dtype=complex)
        exps = np.array(list(self.terms.keys()), dtype=float)
        coefs = np.array([complex(c) for c in self.terms.values()])
        return np.exp(1j * (t @ exps.T)) @ coefs

    def permute_vars(self, w: Sequence[int]) -> "TrigPoly":
        """Substitute t_j -> t_{w(j)}; w is given as a tuple with w[j-1] = w(j)."""
        out = {}
        for e, c in self.terms.items():
            new = [0] * self.nvars
            for j, a in enumerate(e):
                new[w[j] - 1] = a
            out[tuple(new)] = c
        return _raw(self.nvars, out)

    def shift(self, exp: Exp) -> "TrigPoly":
        return _raw(self.nvars, {tuple(a + b for a, b in zip(e, exp)): c for e, c in self.terms.items()})

    def min_exps(self) -> Exp:
        return tuple(min(e[j] for e in self.terms) for j in range(self.nvars))

    def max_exps(self) -> Exp:
        return tuple(max(e[j] for e in self.terms) for j in range(self.nvars))

    def leading(self) -> Tuple[Exp, GaussRational]:
        e = max(self.terms)
        return e, self.terms[e]

    # ---------- serialization ----------
    def to_json(self) -> list:
        return [dict(exp=list(e), **self.terms[e].to_json()) for e in sorted(self.terms)]

    @classmethod
    def from_json(cls, nvars: int, data: list) -> "TrigPoly":
        return cls(nvars, {tuple(d["exp"]): GaussRational.from_json(d) for d in data})

    def __repr__(self):
        if not self.terms:
            return "TrigPoly(0)"
        body = " + ".join(f"{self.terms[e]}*z^{list(e)}" for e in sorted(self.terms, reverse=True))
        return f"TrigPoly({body})"


def _raw(nvars: int, terms: Dict[Exp, GaussRational]) -> TrigPoly:
    p = TrigPoly(nvars)
    p.terms = terms
    return p


# ---------- standard functions ----------
def cos_lin(nvars: int, g: Sequence[int]) -> TrigPoly:
    """cos(g_1 t_1 + ... + g_n t_n)."""
    g = tuple(g)
    half = Fraction(1, 2)
    return TrigPoly(nvars, {g: half}) + TrigPoly(nvars, {tuple(-a for a in g): half})


def sin_lin(nvars: int, g: Sequence[int]) -> TrigPoly:
    """sin(g_1 t_1 + ... + g_n t_n)."""
    g = tuple(g)
    return TrigPoly(nvars, {g: GaussRational(0, Fraction(-1, 2))}) + TrigPoly(
        nvars, {tuple(-a for a in g): GaussRational(0, Fraction(1, 2))}
    )


def unit(nvars: int, j: int, k: int = 1) -> Exp:
    e = [0] * nvars
    e[j - 1] = k
    return tuple(e)


def cos_var(nvars: int, j: int) -> TrigPoly:
    return cos_lin(nvars, unit(nvars, j))


def sin_var(nvars: int, j: int) -> TrigPoly:
    return sin_lin(nvars, unit(nvars, j))


def four_sin_sq(nvars: int, g: Sequence[int]) -> TrigPoly:
    """4 sin^2(g.t) = 2 - z^{2g} - z^{-2g}."""
    g2 = tuple(2 * a for a in g)
    return TrigPoly(nvars, {(0,) * nvars: 2, g2: -1, tuple(-a for a in g2): -1})


def from_cos_monomial(exponents: Sequence[int]) -> TrigPoly:
    nvars = len(exponents)
    out = TrigPoly.constant(nvars)
    for j, k in enumerate(exponents, start=1):
        if k < 0:
            raise ValueError("cos monomial exponents must be non-negative")
        if k:
            out = out * cos_var(nvars, j) ** k
    return out


# ---------- exact division ----------
def exact_div(num: TrigPoly, den: TrigPoly) -> TrigPoly:
    """Exact quotient num/den in the Laurent ring; NonDivisible if there is none."""
    if den.is_zero():
        raise ZeroDivisionError("exact_div by zero TrigPoly")
    nvars = num.nvars
    if num.is_zero():
        return TrigPoly(nvars)
    lo_n, lo_d = num.min_exps(), den.min_exps()
    rem = num.shift(tuple(-a for a in lo_n))
    d = den.shift(tuple(-a for a in lo_d))
    # both are now polynomials with a non-zero constant-in-z_j slice for every j,
    # so any Laurent quotient is itself a polynomial of bounded degree
    bound = tuple(a - b for a, b in zip(rem.max_exps(), d.max_exps()))
    if any(b < 0 for b in bound):
        raise NonDivisible("degree of denominator exceeds numerator")
    d_lead, d_coef = d.leading()
    quot: Dict[Exp, GaussRational] = {}
    while not rem.is_zero():
        r_lead, r_coef = rem.leading()
        e = tuple(a - b for a, b in zip(r_lead, d_lead))
        if any(x < 0 or x > b for x, b in zip(e, bound)):
            raise NonDivisible(f"leading exponent {r_lead} not reachable from {d_lead}")
        c = r_coef / d_coef
        quot[e] = c
        rem = rem - d.shift(e).scale(c)
    return TrigPoly(nvars, quot).shift(tuple(a - b for a, b in zip(lo_n, lo_d)))


# ---------- cosine polynomials ----------
class CosPoly:
    """Polynomial in c_j = cos t_j with rational coefficients."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Optional[Dict[Exp, Fraction]] = None):
        self.nvars = nvars
        self.terms = {tuple(e): Fraction(c) for e, c in (terms or {}).items() if c}

    def to_trig(self) -> TrigPoly:
        out = TrigPoly(self.nvars)
        for e, c in self.terms.items():
            out = out + from_cos_monomial(e).scale(c)
        return out

    def __eq__(self, other):
        if not isinstance(other, CosPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    __hash__ = None

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def to_json(self) -> list:
        return [{"exp": list(e), "coef": _frac_str(self.terms[e])} for e in sorted(self.terms)]

    @classmethod
    def from_json(cls, nvars: int, data: list) -> "CosPoly":
        return cls(nvars, {tuple(d["exp"]): Fraction(d["coef"]) for d in data})

    def __repr__(self):
        body = " + ".join(f"{self.terms[e]}*c^{list(e)}" for e in sorted(self.terms, reverse=True))
        return f"CosPoly({body or 0})"


def to_cos_poly(p: TrigPoly) -> CosPoly:
    """Rewrite p as a polynomial in cos t_1..cos t_n by peeling lex-leading terms."""
    rem = p
    out: Dict[Exp, Fraction] = {}
    while not rem.is_zero():
        e, c = rem.leading()
        if any(a < 0 for a in e) or not c.is_real():
            raise NotCosPolynomial(f"term z^{list(e)} with coefficient {c} is not a cosine term")
        coef = c.re * 2 ** sum(e)
        out[e] = coef
        rem = rem - from_cos_monomial(e).scale(coef)
    return CosPoly(p.nvars, out)
