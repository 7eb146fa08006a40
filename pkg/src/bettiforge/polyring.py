"""Sparse graded multivariate polynomials, the contraction action, Macaulay matrices.

Monomials are exponent tuples.  The fixed monomial order is graded
lexicographic with x1 > x2 > ... > xn; within one degree, bases are listed in
decreasing order (x1^d first, xn^d last), and all matrix rows/columns follow
that listing so kernels and certificates are reproducible.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache

from .errors import (
    DimensionMismatchError,
    FieldMismatchError,
    NonHomogeneousError,
    PreconditionError,
)
from .exactalg import QQ, ExactMatrix, same_field


def monomial_degree(mono):
    return sum(mono)


def monomial_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def monomial_divides(a, b):
    """Does x^a divide x^b?"""
    return all(x <= y for x, y in zip(a, b))


@lru_cache(maxsize=None)
def monomials_of_degree(nvars, degree):
    """All degree-`degree` monomials in `nvars` variables, largest first (grlex)."""
    if nvars == 0:
        return ((),) if degree == 0 else ()
    if nvars == 1:
        return ((degree,),)
    out = []
    for e in range(degree, -1, -1):
        for tail in monomials_of_degree(nvars - 1, degree - e):
            out.append((e,) + tail)
    return tuple(out)


@lru_cache(maxsize=None)
def monomial_index(nvars, degree):
    """Monomial -> position in monomials_of_degree(nvars, degree)."""
    return {m: k for k, m in enumerate(monomials_of_degree(nvars, degree))}


@lru_cache(maxsize=None)
def variable_shift_map(nvars, degree, var):
    """Positions of x_var * m in degree+1, for m running over degree-`degree` monomials."""
    idx = monomial_index(nvars, degree + 1)
    out = []
    for m in monomials_of_degree(nvars, degree):
        e = list(m)
        e[var] += 1
        out.append(idx[tuple(e)])
    return tuple(out)


def monomial_key(mono):
    """Sort key: larger key = larger monomial in the fixed graded-lex order."""
    return (monomial_degree(mono), mono)


class Polynomial:
    """Sparse polynomial over an exact field; `coeffs` maps exponent tuples to nonzero values."""

    __slots__ = ("nvars", "field", "coeffs")

    def __init__(self, nvars, field, coeffs=None):
        self.nvars = nvars
        self.field = field
        clean = {}
        if coeffs:
            for mono, val in coeffs.items():
                val = field.coerce(val)
                if not field.is_zero(val):
                    if len(mono) != nvars:
                        raise DimensionMismatchError("exponent tuple length != nvars")
                    clean[tuple(mono)] = val
        self.coeffs = clean

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, nvars, field):
        return cls(nvars, field)

    @classmethod
    def constant(cls, value, nvars, field):
        return cls(nvars, field, {(0,) * nvars: value})

    @classmethod
    def variable(cls, i, nvars, field):
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, field, {tuple(e): 1})

    @classmethod
    def variable_power(cls, i, d, nvars, field):
        e = [0] * nvars
        e[i] = d
        return cls(nvars, field, {tuple(e): 1})

    @classmethod
    def monomial(cls, expo, field, coeff=1):
        return cls(len(expo), field, {tuple(expo): coeff})

    # -- structure ---------------------------------------------------------

    def is_zero(self):
        return not self.coeffs

    def degree(self):
        """Top total degree, or None for the zero polynomial."""
        if not self.coeffs:
            return None
        return max(monomial_degree(m) for m in self.coeffs)

    def is_homogeneous(self, degree=None):
        """Zero counts as homogeneous of every degree."""
        if not self.coeffs:
            return True
        degs = {monomial_degree(m) for m in self.coeffs}
        if len(degs) > 1:
            return False
        return degree is None or degs == {degree}

    def homogeneous_degree(self):
        if not self.coeffs:
            return None
        degs = {monomial_degree(m) for m in self.coeffs}
        if len(degs) > 1:
            raise NonHomogeneousError(f"not homogeneous: degrees {sorted(degs)}")
        return degs.pop()

    def leading_monomial(self):
        return max(self.coeffs, key=monomial_key)

    def _check_ring(self, other):
        if self.nvars != other.nvars:
            raise DimensionMismatchError("polynomials live in different rings")
        same_field(self.field, other.field)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        self._check_ring(other)
        fld = self.field
        out = dict(self.coeffs)
        for m, v in other.coeffs.items():
            s = fld.add(out.get(m, fld.zero), v)
            if fld.is_zero(s):
                out.pop(m, None)
            else:
                out[m] = s
        return Polynomial(self.nvars, fld, out)

    def __neg__(self):
        fld = self.field
        return Polynomial(self.nvars, fld, {m: fld.neg(v) for m, v in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check_ring(other)
        fld = self.field
        out = {}
        for m1, v1 in self.coeffs.items():
            for m2, v2 in other.coeffs.items():
                m = monomial_mul(m1, m2)
                s = fld.add(out.get(m, fld.zero), fld.mul(v1, v2))
                if fld.is_zero(s):
                    out.pop(m, None)
                else:
                    out[m] = s
        return Polynomial(self.nvars, fld, out)

    def scale(self, c):
        fld = self.field
        c = fld.coerce(c)
        if fld.is_zero(c):
            return Polynomial.zero(self.nvars, fld)
        return Polynomial(self.nvars, fld, {m: fld.mul(c, v) for m, v in self.coeffs.items()})

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return (self.nvars == other.nvars and self.field == other.field
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.nvars, self.field, frozenset(self.coeffs.items())))

    def evaluate(self, point):
        """Evaluate at a point given as a coordinate sequence."""
        if len(point) != self.nvars:
            raise DimensionMismatchError("point length != nvars")
        fld = self.field
        coords = [fld.coerce(x) for x in point]
        total = fld.zero
        for mono, coef in self.coeffs.items():
            term = coef
            for x, e in zip(coords, mono):
                for _ in range(e):
                    term = fld.mul(term, x)
            total = fld.add(total, term)
        return total

    def to_vector(self, degree=None):
        """Coefficient list over the degree-d monomial basis (requires homogeneity)."""
        d = self.homogeneous_degree() if degree is None else degree
        if d is None:
            raise PreconditionError("zero polynomial needs an explicit degree")
        if not self.is_homogeneous(d):
            raise NonHomogeneousError("polynomial is not homogeneous of the requested degree")
        idx = monomial_index(self.nvars, d)
        vec = [self.field.zero] * len(idx)
        for m, v in self.coeffs.items():
            vec[idx[m]] = v
        return vec

    @classmethod
    def from_vector(cls, vec, nvars, degree, field):
        monos = monomials_of_degree(nvars, degree)
        return cls(nvars, field, {m: v for m, v in zip(monos, vec)})

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r})"


def _falling(b, a):
    """b (b-1) ... (b-a+1) as a plain integer."""
    out = 1
    for k in range(a):
        out *= b - k
    return out


def contract(f, big):
    """Apolarity action f ∘ F: each variable acts as the matching partial derivative.

    Linear in both arguments; drops degrees by deg f; zero once deg f exceeds deg F.
    No divided-power normalization is applied.
    """
    f._check_ring(big)
    fld = f.field
    out = {}
    for mf, cf in f.coeffs.items():
        for mF, cF in big.coeffs.items():
            if not monomial_divides(mf, mF):
                continue
            scalar = 1
            for b, a in zip(mF, mf):
                if a:
                    scalar *= _falling(b, a)
            m = tuple(b - a for b, a in zip(mF, mf))
            v = fld.mul(fld.mul(cf, cF), fld.coerce(scalar))
            s = fld.add(out.get(m, fld.zero), v)
            if fld.is_zero(s):
                out.pop(m, None)
            else:
                out[m] = s
    return Polynomial(f.nvars, fld, out)


def power_of_linear(coeffs, d, field=QQ):
    """(sum_i c_i x_i)^d expanded exactly via multinomials."""
    from math import factorial

    if d < 0:
        raise PreconditionError("exponent must be >= 0")
    nvars = len(coeffs)
    coeffs = [field.coerce(c) for c in coeffs]
    fact_d = factorial(d)
    out = {}
    for mono in monomials_of_degree(nvars, d):
        denom = 1
        for e in mono:
            denom *= factorial(e)
        term = field.coerce(fact_d // denom)
        for c, e in zip(coeffs, mono):
            for _ in range(e):
                term = field.mul(term, c)
        if not field.is_zero(term):
            out[mono] = term
    return Polynomial(nvars, field, out)


def standard_linear_form(nvars, field=QQ):
    """x1 + ... + xn."""
    return Polynomial(nvars, field, {m: 1 for m in monomials_of_degree(nvars, 1)})


def macaulay_columns(generators, j):
    """Column labels (generator index, shifting monomial) of the degree-j Macaulay matrix."""
    cols = []
    for g_idx, g in enumerate(generators):
        d = g.homogeneous_degree()
        if d is None or d > j:
            continue
        for m in monomials_of_degree(g.nvars, j - d):
            cols.append((g_idx, m))
    return cols


def macaulay_matrix(generators, j, nvars=None, field=None):
    """Matrix whose column space is the degree-j slice of the generated ideal.

    Rows run over the degree-j monomials in the fixed order; one column per
    product m * g with m a monomial of degree j - deg g.
    """
    if not generators:
        if nvars is None or field is None:
            raise PreconditionError("an empty generator list needs explicit nvars and field")
        return ExactMatrix(len(monomials_of_degree(nvars, j)), 0, (), field)
    nvars = generators[0].nvars
    field = same_field(*[g.field for g in generators])
    for g in generators:
        if not g.is_homogeneous():
            raise NonHomogeneousError("Macaulay matrices need homogeneous generators")
        if g.nvars != nvars:
            raise DimensionMismatchError("generators live in different rings")
    rows_idx = monomial_index(nvars, j)
    cols = macaulay_columns(generators, j)
    entries = []
    for c, (g_idx, m) in enumerate(cols):
        for mono, val in generators[g_idx].coeffs.items():
            entries.append((rows_idx[monomial_mul(mono, m)], c, val))
    return ExactMatrix(len(rows_idx), len(cols), entries, field)


# ---------------------------------------------------------------------------
# text syntax: terms like ``3*x1^2*x3 - x2^4`` with variables x1..xn


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|x(?P<var>\d+)(?:\^(?P<pow>\d+))?|(?P<op>[+\-*]))")


def parse_polynomial(text, nvars=None, field=QQ, require_homogeneous=False):
    """Parse the CLI polynomial syntax into a Polynomial."""
    terms = []
    sign = 1
    coeff = None
    expo = {}
    pending_factor = True

    def flush():
        nonlocal sign, coeff, expo, pending_factor
        if coeff is None and not expo:
            raise PreconditionError(f"malformed polynomial: {text!r}")
        terms.append((sign, Fraction(coeff if coeff is not None else 1), dict(expo)))
        sign, coeff, expo, pending_factor = 1, None, {}, True

    pos = 0
    saw_any = False
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise PreconditionError(f"cannot parse polynomial near {text[pos:]!r}")
            break
        pos = m.end()
        if m.group("op"):
            op = m.group("op")
            if op == "*":
                pending_factor = True
                continue
            if saw_any and (coeff is not None or expo):
                flush()
            if op == "-":
                sign = -sign
            continue
        saw_any = True
        if m.group("num"):
            value = Fraction(m.group("num"))
            coeff = value if coeff is None else coeff * value
        else:
            var = int(m.group("var")) - 1
            if var < 0:
                raise PreconditionError("variables are x1, x2, ...")
            power = int(m.group("pow") or 1)
            expo[var] = expo.get(var, 0) + power
        pending_factor = False
    if coeff is not None or expo:
        flush()
    if not terms:
        raise PreconditionError(f"empty polynomial: {text!r}")
    max_var = max((max(e, default=-1) for _, _, e in terms), default=-1)
    if nvars is None:
        nvars = max_var + 1 if max_var >= 0 else 1
    elif max_var >= nvars:
        raise PreconditionError(f"variable x{max_var + 1} exceeds nvars={nvars}")
    coeffs = {}
    for sgn, c, e in terms:
        mono = tuple(e.get(i, 0) for i in range(nvars))
        prev = coeffs.get(mono, Fraction(0))
        coeffs[mono] = prev + sgn * c
    poly = Polynomial(nvars, field, coeffs)
    if require_homogeneous and not poly.is_homogeneous():
        raise NonHomogeneousError(f"non-homogeneous input: {text!r}")
    return poly


def format_polynomial(p):
    from .exactalg import PrimeField

    if p.is_zero():
        return "0"
    balanced = isinstance(p.field, PrimeField)
    parts = []
    for mono in sorted(p.coeffs, key=monomial_key, reverse=True):
        coef = p.coeffs[mono]
        if balanced and coef > p.field.p // 2:
            coef -= p.field.p
        factors = []
        for i, e in enumerate(mono):
            if e == 1:
                factors.append(f"x{i + 1}")
            elif e > 1:
                factors.append(f"x{i + 1}^{e}")
        body = "*".join(factors)
        cstr = str(coef)
        negative = cstr.startswith("-")
        if negative:
            cstr = cstr[1:]
        if body and cstr == "1":
            term = body
        elif body:
            term = f"{cstr}*{body}"
        else:
            term = cstr
        if not parts:
            parts.append(("-" if negative else "") + term)
        else:
            parts.append(("- " if negative else "+ ") + term)
    return " ".join(parts)
