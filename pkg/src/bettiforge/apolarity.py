"""Macaulay inverse systems: annihilators through catalecticant kernels, dual
generators of colon algebras, the elementary-symmetric contraction identity,
and weak/strong Lefschetz rank checks."""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial

import numpy as np

from .errors import ConsistencyError, NonArtinianError, PreconditionError, UnitIdealError
from .exactalg import PrimeField, RowBasis, rank_of_rows
from .polyring import (
    Polynomial,
    contract,
    monomial_index,
    monomials_of_degree,
    standard_linear_form,
)
from .resolver import (
    GradedIdealSlices,
    GradedQuotient,
    quotient_model,
)


def _guard_characteristic(field, degree):
    # contraction multiplies falling factorials of exponents <= degree; a prime
    # at most that size would kill them
    if isinstance(field, PrimeField) and field.p <= degree:
        raise PreconditionError(
            f"prime {field.p} must exceed the top degree {degree} for contraction")


def annihilator(dual_form):
    """Graded slices of Ann(F) = {f : f ∘ F = 0}, computed per degree as the
    kernel of the catalecticant map into the dual in complementary degree.

    The quotient is Artinian Gorenstein with socle degree deg F; slices run one
    degree past that, where the ideal is everything.
    """
    if dual_form.is_zero():
        raise PreconditionError("the zero form has no apolar algebra")
    e = dual_form.homogeneous_degree()
    nvars, field = dual_form.nvars, dual_form.field
    _guard_characteristic(field, e)
    from .resolver import _kernel_row_basis

    bases = {}
    for j in range(e + 2):
        monos = monomials_of_degree(nvars, j)
        ncols = len(monos)
        if j > e:
            bases[j] = RowBasis.full(ncols, field)
            continue
        target_idx = monomial_index(nvars, e - j)
        rows = ([[field.zero] * ncols for _ in range(len(target_idx))]
                if not isinstance(field, PrimeField)
                else np.zeros((len(target_idx), ncols), dtype=np.int64))
        for c, m in enumerate(monos):
            image = contract(Polynomial.monomial(m, field), dual_form)
            for w, val in image.coeffs.items():
                if isinstance(field, PrimeField):
                    rows[target_idx[w], c] = val
                else:
                    rows[target_idx[w]][c] = val
        bases[j] = _kernel_row_basis(rows, ncols, field)
    slices = GradedIdealSlices(nvars, field, bases)
    if slices.quotient_dim(e) != 1:
        raise ConsistencyError("apolar algebra must have a one-dimensional socle degree piece")
    return slices


def dual_generator_of_colon(dual_of_ideal, f):
    """Dual generator of (J : f) when J has dual generator G: it is f ∘ G."""
    out = contract(f, dual_of_ideal)
    if out.is_zero():
        raise UnitIdealError("f ∘ G = 0: the colon ideal is the unit ideal")
    return out


@dataclass
class EsymDual:
    form: Polynomial
    scalar: int


def elementary_symmetric(nvars, k, field):
    """e_k(x_1..x_n): all squarefree degree-k monomials."""
    coeffs = {}
    from itertools import combinations

    for S in combinations(range(nvars), k):
        e = [0] * nvars
        for v in S:
            e[v] = 1
        coeffs[tuple(e)] = 1
    return Polynomial(nvars, field, coeffs)


def elementary_symmetric_dual(nvars, d, field=None):
    """Contract the d-th power of x_1 + .. + x_n against x_1 ... x_n.

    The result must equal d! * e_{n-d}; both the symmetric form and the scalar
    are returned after the coefficientwise check.
    """
    from .exactalg import QQ

    field = QQ if field is None else field
    if not 0 <= d <= nvars - 1:
        raise PreconditionError("need 0 <= d <= n-1 for a nonconstant contraction")
    _guard_characteristic(field, nvars)
    product = Polynomial.monomial((1,) * nvars, field)
    ell = standard_linear_form(nvars, field)
    power = Polynomial.constant(1, nvars, field)
    for _ in range(d):
        power = power * ell
    contracted = contract(power, product)
    esym = elementary_symmetric(nvars, nvars - d, field)
    if contracted != esym.scale(factorial(d)):
        raise ConsistencyError("contraction of the power failed the d! e_{n-d} identity")
    return EsymDual(esym, factorial(d))


@dataclass
class LefschetzCheck:
    source_degree: int
    power: int
    dim_source: int
    dim_target: int
    rank: int

    @property
    def maximal(self):
        return self.rank == min(self.dim_source, self.dim_target)


@dataclass
class LefschetzReport:
    element: Polynomial
    mode: str
    checks: list
    verdict: str

    @property
    def holds(self):
        return self.verdict in ("SLP", "WLP")


def lefschetz_check(source, ell=None, mode="SLP", nvars=None, field=None):
    """Rank every multiplication map by powers of the candidate linear form.

    SLP mode checks all powers j >= 1 with i + j inside the socle range, WLP
    mode only j = 1.  The verdict speaks for the tested form only.
    """
    mode = mode.upper()
    if mode not in ("SLP", "WLP"):
        raise PreconditionError("mode must be SLP or WLP")
    quot = quotient_model(source, nvars, field)
    if not quot.slices.artinian_within_bound:
        raise NonArtinianError("Lefschetz checks need an Artinian quotient")
    n, fld = quot.nvars, quot.field
    s = quot.top_degree
    _guard_characteristic(fld, max(s, 1))
    if ell is None:
        ell = standard_linear_form(n, fld)
    powers = range(1, 2) if mode == "WLP" else range(1, s + 1)
    checks = []
    for jpow in powers:
        ell_pow = Polynomial.constant(1, n, fld)
        for _ in range(jpow):
            ell_pow = ell_pow * ell
        for i in range(0, s - jpow + 1):
            h0, h1 = quot.hf(i), quot.hf(i + jpow)
            if h0 == 0 and h1 == 0:
                continue
            mat = quot.mult_poly(ell_pow, i)
            rank = rank_of_rows(mat, h0, fld) if h0 else 0
            checks.append(LefschetzCheck(i, jpow, h0, h1, rank))
    all_max = all(c.maximal for c in checks)
    if mode == "WLP":
        verdict = "WLP" if all_max else "neither"
    elif all_max:
        verdict = "SLP"
    else:
        verdict = "WLP-only" if all(c.maximal for c in checks if c.power == 1) else "neither"
    return LefschetzReport(ell, mode, checks, verdict)


def semiregularity_check(gens, max_degree=None):
    """Does each form multiply with maximal rank on the quotient by its predecessors?

    Verified degree by degree up to `max_degree` (default: the top degree of
    the full Artinian quotient plus the largest generator degree).  A failure
    is always genuine; a pass certifies the range checked.
    """
    gens = list(gens)
    if not gens:
        return True
    nvars = gens[0].nvars
    field = gens[0].field
    if max_degree is None:
        max_degree = sum(g.homogeneous_degree() - 1 for g in gens) + \
            max(g.homogeneous_degree() for g in gens) + 1
    from .resolver import ideal_slices

    for k, g in enumerate(gens):
        prefix = gens[:k]
        d = g.homogeneous_degree()
        slices = ideal_slices(prefix, nvars, field, max_degree)
        quot = GradedQuotient(slices)
        for i in range(0, max_degree - d + 1):
            h0 = quot.hf(i)
            h1 = quot.hf(i + d)
            if h0 == 0:
                continue
            mat = quot.mult_poly(g, i)
            if rank_of_rows(mat, h0, field) != min(h0, h1):
                return False
    return True
