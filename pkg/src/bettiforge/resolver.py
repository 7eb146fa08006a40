"""The brute-force side: graded ideal slices, Hilbert functions, minimal
generators, colon ideals, socles, first syzygies, ideal membership, and exact
graded Betti numbers, all by degree-by-degree linear algebra over an exact field.

Betti numbers are computed as the graded dimensions of the homology of the
Koszul complex on the variables with coefficients in the quotient algebra,
which is the defining Tor description; only ranks of small matrices over the
chosen field are ever needed, and nothing here shares code with the closed
formulas it is used to check.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb

import numpy as np

from .errors import (
    ConsistencyError,
    NonArtinianError,
    NonHomogeneousError,
    PreconditionError,
)
from .exactalg import Accumulator, PrimeField, RowBasis, rank_of_rows, same_field
from .formulas import BettiTable
from .polyring import (
    Polynomial,
    monomial_index,
    monomial_mul,
    monomials_of_degree,
    variable_shift_map,
)


def _split_generators(gens):
    """Separate single-term generators (handled combinatorially) from dense ones."""
    monos, dense = [], []
    for g in gens:
        if g.is_zero():
            continue
        if not g.is_homogeneous():
            raise NonHomogeneousError("ideal generators must be homogeneous")
        if len(g.coeffs) == 1:
            monos.append(next(iter(g.coeffs)))
        else:
            dense.append(g)
    return monos, dense


def slice_at_degree(gens, j, nvars, field):
    """Reduced basis of the degree-j piece of the ideal generated by `gens`.

    Multiples of single-term generators give unit rows for free; the remaining
    generators contribute a small block living on the complementary monomials,
    which is what actually gets eliminated.
    """
    mono_gens, dense_gens = _split_generators(gens)
    monos = monomials_of_degree(nvars, j)
    pivot_flags = [any(all(e >= w for e, w in zip(m, g)) for g in mono_gens
                       if sum(g) <= j) for m in monos]
    mono_pivots = [c for c, hit in enumerate(pivot_flags) if hit]
    candidates = [c for c, hit in enumerate(pivot_flags) if not hit]
    cand_pos = {c: t for t, c in enumerate(candidates)}

    block_rows = []
    target_idx = monomial_index(nvars, j)
    for g in dense_gens:
        dg = g.homogeneous_degree()
        if dg > j:
            continue
        for m in monomials_of_degree(nvars, j - dg):
            if isinstance(field, PrimeField):
                row = np.zeros(len(candidates), dtype=np.int64)
            else:
                row = [field.zero] * len(candidates)
            nonzero = False
            for w, c in g.coeffs.items():
                col = target_idx[monomial_mul(w, m)]
                pos = cand_pos.get(col)
                if pos is None:
                    continue
                if isinstance(field, PrimeField):
                    row[pos] = (row[pos] + field.coerce(c)) % field.p
                else:
                    row[pos] = field.add(row[pos], field.coerce(c))
                nonzero = True
            if nonzero:
                block_rows.append(row)

    block = RowBasis.from_rows(block_rows, len(candidates), field)
    pivots = mono_pivots + [candidates[t] for t in block.pivots]
    support = [candidates[t] for t in block.support]
    order = sorted(range(len(pivots)), key=lambda k: pivots[k])
    if isinstance(field, PrimeField):
        tails = np.zeros((len(pivots), len(support)), dtype=np.int64)
        if block.dim:
            tails[len(mono_pivots):] = block.tails
    else:
        tails = [[field.zero] * len(support) for _ in range(len(mono_pivots))]
        tails += [list(r) for r in block.tails]
    pivots_sorted = [pivots[k] for k in order]
    if isinstance(field, PrimeField):
        tails_sorted = tails[order] if len(pivots) else tails
    else:
        tails_sorted = [tails[k] for k in order]
    return RowBasis(len(monos), field, pivots_sorted, support, tails_sorted)


class GradedIdealSlices:
    """Per-degree reduced bases of a homogeneous ideal, up to a stated bound."""

    def __init__(self, nvars, field, bases):
        self.nvars = nvars
        self.field = field
        self.bases = dict(bases)
        self.bound = max(self.bases) if self.bases else -1

    def basis(self, j):
        return self.bases[j]

    def dim(self, j):
        return self.bases[j].dim

    def quotient_dim(self, j):
        if j < 0:
            return 0
        if j > self.bound:
            base = self.bases[self.bound]
            if base.codim == 0:
                return 0
            raise PreconditionError(f"degree {j} beyond the computed bound {self.bound}")
        return self.bases[j].codim

    def hilbert_values(self):
        return [self.bases[j].codim for j in range(self.bound + 1)]

    @property
    def artinian_within_bound(self):
        return any(self.bases[j].codim == 0 for j in self.bases)

    @property
    def socle_degree(self):
        """Top degree with nonzero quotient; requires vanishing inside the bound."""
        if not self.artinian_within_bound:
            raise NonArtinianError("quotient did not vanish inside the computed bound")
        return max((j for j in self.bases if self.bases[j].codim > 0), default=0)

    def contains(self, poly):
        if poly.is_zero():
            return True
        d = poly.homogeneous_degree()
        if d > self.bound:
            if self.bases[self.bound].codim == 0:
                return True
            raise PreconditionError(f"degree {d} beyond the computed bound {self.bound}")
        return self.bases[d].contains(poly.to_vector())


def _infer_ring(gens, nvars, field):
    if gens:
        nvars = gens[0].nvars
        field = same_field(*[g.field for g in gens])
    if nvars is None or field is None:
        raise PreconditionError("empty generator list needs explicit nvars and field")
    return nvars, field


def default_artinian_bound(gens):
    """A degree by which any Artinian quotient of these generators has vanished."""
    return sum(g.homogeneous_degree() - 1 for g in gens if not g.is_zero()) + 1


def ideal_slices(gens, nvars=None, field=None, max_degree=None):
    gens = list(gens)
    nvars, field = _infer_ring(gens, nvars, field)
    if max_degree is None:
        if len(gens) < nvars:
            raise PreconditionError("non-Artinian ideal: pass max_degree explicitly")
        max_degree = default_artinian_bound(gens)
    bases = {}
    for j in range(max_degree + 1):
        bases[j] = slice_at_degree(gens, j, nvars, field)
        if bases[j].codim == 0 and j < max_degree:
            for k in range(j + 1, max_degree + 1):
                bases[k] = RowBasis.full(len(monomials_of_degree(nvars, k)), field)
            break
    return GradedIdealSlices(nvars, field, bases)


@dataclass
class QuotientHilbert:
    values: list
    artinian: bool

    def __iter__(self):
        return iter(self.values)


def quotient_hilbert(gens, nvars=None, field=None, max_degree=None):
    """Exact Hilbert function of R/(gens); reports whether the quotient vanished.

    Non-Artinian quotients (detected or structural) are returned with the
    values computed up to the bound and artinian=False.
    """
    gens = [g for g in gens if not g.is_zero()]
    nvars, field = _infer_ring(gens, nvars, field)
    if max_degree is None:
        max_degree = default_artinian_bound(gens) if len(gens) >= nvars else nvars
    slices = ideal_slices(gens, nvars, field, max_degree)
    values = slices.hilbert_values()
    if 0 in values:
        top = max(j for j, v in enumerate(values) if v)
        return QuotientHilbert(values[:top + 1], True)
    return QuotientHilbert(values, False)


def minimal_generators(slices):
    """Degreewise bases of I_j modulo R_1 * I_{j-1}; their count per degree is beta_{1,j}."""
    nvars, field = slices.nvars, slices.field
    out = []
    for j in range(slices.bound + 1):
        base = slices.bases[j]
        if base.dim == 0:
            continue
        ncols = len(monomials_of_degree(nvars, j))
        acc = Accumulator(ncols, field)
        if j > 0 and slices.bases[j - 1].dim:
            prev_rows = slices.bases[j - 1].full_rows()
            for v in range(nvars):
                shift = variable_shift_map(nvars, j - 1, v)
                for row in prev_rows:
                    if isinstance(field, PrimeField):
                        lifted = np.zeros(ncols, dtype=np.int64)
                        lifted[list(shift)] = row
                    else:
                        lifted = [field.zero] * ncols
                        for pos, val in zip(shift, row):
                            lifted[pos] = val
                    acc.absorb(lifted)
        for row in base.full_rows():
            if acc.absorb(row) is not None:
                out.append(Polynomial.from_vector(list(row), nvars, j, field))
    return out


# ---------------------------------------------------------------------------
# quotient algebra model


def _accumulate_products(field, target_class, shift_maps, coeffs):
    """sum_t coeffs[t] * target_class[shift_maps[t]] with overflow-safe reduction."""
    if isinstance(field, PrimeField):
        p = field.p
        n_rows = len(shift_maps[0])
        h = target_class.shape[1]
        acc = np.zeros((n_rows, h), dtype=np.int64)
        safe = max(1, (2**62) // ((p - 1) * (p - 1) + 1))
        for t, (shift, c) in enumerate(zip(shift_maps, coeffs)):
            acc += int(c) * target_class[list(shift)]
            if (t + 1) % safe == 0:
                acc %= p
        return acc % p
    n_rows = len(shift_maps[0])
    h = len(target_class[0]) if target_class else 0
    acc = [[field.zero] * h for _ in range(n_rows)]
    for shift, c in zip(shift_maps, coeffs):
        for r, pos in enumerate(shift):
            src = target_class[pos]
            row = acc[r]
            for k in range(h):
                if src[k]:
                    row[k] = field.add(row[k], field.mul(c, src[k]))
    return acc


class GradedQuotient:
    """Standard-monomial model of R/I built from ideal slices.

    Per degree: the standard monomials (support columns of the slice basis), a
    class matrix sending each monomial to its residue coordinates, and
    multiplication maps between graded pieces.
    """

    def __init__(self, slices):
        self.slices = slices
        self.nvars = slices.nvars
        self.field = slices.field
        self._classes = {}
        self._mult = {}

    def hf(self, j):
        return self.slices.quotient_dim(j)

    @property
    def top_degree(self):
        return self.slices.socle_degree

    def std_monomials(self, j):
        monos = monomials_of_degree(self.nvars, j)
        return [monos[c] for c in self.slices.bases[j].support]

    def class_matrix(self, j):
        if j not in self._classes:
            self._classes[j] = self.slices.bases[j].class_matrix()
        return self._classes[j]

    def mult_variable(self, v, j):
        """Matrix of multiplication by x_v from degree j to j+1, columns over std monomials."""
        key = (v, j)
        if key not in self._mult:
            base = self.slices.bases[j]
            target = self.class_matrix(j + 1)
            shift = variable_shift_map(self.nvars, j, v)
            rows = [shift[c] for c in base.support]
            if isinstance(self.field, PrimeField):
                mat = target[rows].T.copy() if rows else np.zeros(
                    (self.hf(j + 1), 0), dtype=np.int64)
            else:
                mat = [[target[r][k] for r in rows] for k in range(self.hf(j + 1))]
            self._mult[key] = mat
        return self._mult[key]

    def products_class_matrix(self, g, k):
        """Rows = class of (m * g) in degree k + deg g, m over all degree-k monomials."""
        dg = g.homogeneous_degree()
        target = self.class_matrix(k + dg)
        idx = monomial_index(self.nvars, k + dg)
        monos = monomials_of_degree(self.nvars, k)
        shift_maps, coeffs = [], []
        for w, c in g.coeffs.items():
            shift_maps.append([idx[monomial_mul(m, w)] for m in monos])
            coeffs.append(c)
        return _accumulate_products(self.field, target, shift_maps, coeffs)

    def mult_poly(self, g, j):
        """Matrix of multiplication by homogeneous g from degree j to j + deg g."""
        rows = self.products_class_matrix(g, j)
        support = self.slices.bases[j].support
        if isinstance(self.field, PrimeField):
            return rows[list(support)].T.copy() if support else np.zeros(
                (self.hf(j + g.homogeneous_degree()), 0), dtype=np.int64)
        h = self.hf(j + g.homogeneous_degree())
        return [[rows[c][k] for c in support] for k in range(h)]


def quotient_model(gens_or_slices, nvars=None, field=None, max_degree=None):
    if isinstance(gens_or_slices, GradedIdealSlices):
        return GradedQuotient(gens_or_slices)
    return GradedQuotient(ideal_slices(gens_or_slices, nvars, field, max_degree))


# ---------------------------------------------------------------------------
# Betti numbers as Koszul homology


def _koszul_differential_rank(quot, i, j):
    """Rank of the degree-j piece of the i-th Koszul differential over R/I."""
    n = quot.nvars
    if i < 1 or i > n:
        return 0
    h0 = quot.hf(j - i)
    h1 = quot.hf(j - i + 1)
    if h0 == 0 or h1 == 0:
        return 0
    subs_lo = {S: b for b, S in enumerate(combinations(range(n), i - 1))}
    subs_hi = list(combinations(range(n), i))
    ncols = len(subs_hi) * h0
    nrows = len(subs_lo) * h1
    field = quot.field
    if isinstance(field, PrimeField):
        mat = np.zeros((nrows, ncols), dtype=np.int64)
        for b, S in enumerate(subs_hi):
            for k, v in enumerate(S):
                rb = subs_lo[S[:k] + S[k + 1:]]
                block = quot.mult_variable(v, j - i)
                if k % 2:
                    block = (-block) % field.p
                mat[rb * h1:(rb + 1) * h1, b * h0:(b + 1) * h0] = block
        return rank_of_rows(mat, ncols, field)
    rows = [[field.zero] * ncols for _ in range(nrows)]
    for b, S in enumerate(subs_hi):
        for k, v in enumerate(S):
            rb = subs_lo[S[:k] + S[k + 1:]]
            block = quot.mult_variable(v, j - i)
            sign = -1 if k % 2 else 1
            for r in range(h1):
                for c in range(h0):
                    val = block[r][c]
                    if val:
                        rows[rb * h1 + r][b * h0 + c] = field.mul(field.coerce(sign), val)
    return rank_of_rows(rows, ncols, field)


def betti_from_quotient(quot):
    """Graded Betti table of the quotient, as graded Koszul homology dimensions."""
    n = quot.nvars
    s = quot.top_degree
    ranks = {}
    for i in range(1, n + 1):
        for j in range(i, i + s + 1):
            ranks[(i, j)] = _koszul_differential_rank(quot, i, j)
    table = BettiTable()
    for i in range(0, n + 1):
        for j in range(i, i + s + 1):
            h = quot.hf(j - i)
            if h == 0:
                continue
            beta = comb(n, i) * h - ranks.get((i, j), 0) - ranks.get((i + 1, j), 0)
            if beta < 0:
                raise ConsistencyError(f"negative homology dimension at ({i},{j})")
            if beta:
                table.set(i, j, beta)
    if table.column(0) != {0: 1}:
        raise ConsistencyError("resolution does not start from a cyclic module")
    return table


def minimal_betti_oracle(gens, nvars=None, field=None):
    """Full graded Betti table of R/(gens) for an Artinian quotient."""
    gens = list(gens)
    nvars, field = _infer_ring(gens, nvars, field)
    if len(gens) < nvars:
        raise NonArtinianError("fewer generators than variables can never be Artinian")
    slices = ideal_slices(gens, nvars, field)
    if not slices.artinian_within_bound:
        raise NonArtinianError("quotient did not vanish inside the safe degree bound")
    return betti_from_quotient(GradedQuotient(slices))


# ---------------------------------------------------------------------------
# colon ideals, socle, syzygies, membership


def _kernel_row_basis(matrix_rows, ncols, field):
    """RowBasis of the kernel of the map with the given rows (shape h x ncols)."""
    reducer = RowBasis.from_rows(matrix_rows, ncols, field)
    free = list(reducer.support)
    piv = list(reducer.pivots)
    if isinstance(field, PrimeField):
        tails = (-np.asarray(reducer.tails, dtype=np.int64).T) % field.p \
            if reducer.dim and reducer.codim else np.zeros((len(free), len(piv)), dtype=np.int64)
    else:
        tails = [[field.neg(reducer.tails[k][t]) for k in range(len(piv))]
                 for t in range(len(free))]
    return RowBasis(ncols, field, free, piv, tails)


def colon_ideal(source, f, max_degree=None, nvars=None, field=None):
    """Degreewise (J : f): the kernel of multiply-by-f into the quotient by J.

    `source` is a generator list or precomputed slices of J; slices must reach
    one degree past where the colon becomes the whole ring.
    """
    if f.is_zero():
        raise PreconditionError("cannot colon by the zero polynomial")
    df = f.homogeneous_degree()
    if isinstance(source, GradedIdealSlices):
        slices = source
    else:
        gens = list(source)
        nvars, field = _infer_ring(gens, nvars, field)
        if max_degree is None:
            bound = default_artinian_bound(gens) if len(gens) >= nvars else None
            if bound is None:
                raise PreconditionError("non-Artinian source needs an explicit max_degree")
        else:
            bound = max_degree + df
        slices = ideal_slices(gens, nvars, field, bound)
    nvars, field = slices.nvars, slices.field
    quot = GradedQuotient(slices)
    if max_degree is None:
        t_j = slices.socle_degree
        max_degree = max(0, t_j - df + 1)
    if max_degree + df > slices.bound:
        raise PreconditionError("source slices do not reach max_degree + deg f")
    bases = {}
    for j in range(max_degree + 1):
        ncols = len(monomials_of_degree(nvars, j))
        h = quot.hf(j + df)
        if h == 0:
            bases[j] = RowBasis.full(ncols, field)
            continue
        cols = quot.products_class_matrix(f, j)
        if isinstance(field, PrimeField):
            mat = cols.T
        else:
            mat = [[cols[c][k] for c in range(ncols)] for k in range(h)]
        bases[j] = _kernel_row_basis(mat, ncols, field)
    return GradedIdealSlices(nvars, field, bases)


@dataclass
class SocleReport:
    dims: dict
    is_level: bool

    @property
    def socle_degree(self):
        return max(self.dims)


def socle_dims(source, nvars=None, field=None):
    """Per-degree dimensions of (0 : m) in the quotient, plus the levelness verdict."""
    quot = quotient_model(source, nvars, field)
    s = quot.top_degree
    n = quot.nvars
    dims = {}
    for j in range(s + 1):
        h = quot.hf(j)
        if h == 0:
            continue
        if isinstance(quot.field, PrimeField):
            stacked = np.vstack([quot.mult_variable(v, j) for v in range(n)])
        else:
            stacked = []
            for v in range(n):
                stacked.extend(quot.mult_variable(v, j))
        dim = h - rank_of_rows(stacked, h, quot.field)
        if dim:
            dims[j] = dim
    return SocleReport(dims, len(dims) == 1)


def is_level(source, nvars=None, field=None):
    return socle_dims(source, nvars, field).is_level


@dataclass
class RelationVector:
    """A first syzygy: polynomials (a_1..a_r) with sum a_i g_i = 0."""

    components: tuple

    def check(self, gens):
        total = None
        for a, g in zip(self.components, gens):
            term = a * g
            total = term if total is None else total + term
        return total is None or total.is_zero()


def syzygies_in_degree(gens, j):
    """Basis of the degree-j first syzygies of the given generators."""
    from .exactalg import kernel_basis
    from .polyring import macaulay_columns, macaulay_matrix

    gens = list(gens)
    nvars, field = _infer_ring(gens, None, None)
    mat = macaulay_matrix(gens, j)
    cols = macaulay_columns(gens, j)
    out = []
    for vec in kernel_basis(mat):
        parts = [Polynomial.zero(nvars, field) for _ in gens]
        for (g_idx, m), c in zip(cols, vec):
            if not field.is_zero(c):
                parts[g_idx] = parts[g_idx] + Polynomial.monomial(m, field, c)
        rel = RelationVector(tuple(parts))
        if not rel.check(gens):
            raise ConsistencyError("kernel vector is not a relation")
        out.append(rel)
    return out


def membership(f, gens, nvars=None, field=None):
    """Exact degreewise ideal membership for a homogeneous polynomial."""
    if f.is_zero():
        return True
    d = f.homogeneous_degree()
    gens = [g for g in gens if not g.is_zero()]
    nvars, field = _infer_ring(gens if gens else [f], nvars, field)
    basis = slice_at_degree(gens, d, nvars, field)
    return basis.contains(f.to_vector())
