"""Exact coefficient fields and the exact linear algebra everything else rides on.

Two element representations are used, chosen by a field object: arbitrary
precision rationals (`fractions.Fraction`, always normalized) and residues in
[0, p) for a prime p < 2**31, so every product fits a 64-bit intermediate.
Prime-field elimination is vectorized with numpy; rational elimination is a
plain fraction loop (only small matrices ever travel that path).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DimensionMismatchError, FieldMismatchError, PreconditionError

DEFAULT_PRIME = 65521
PARANOIA_PRIME = 1073741789


def _is_prime(p):
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


class RationalField:
    """The rationals; elements are fractions.Fraction (gcd-reduced, q > 0)."""

    characteristic = 0
    zero = Fraction(0)
    one = Fraction(1)

    def coerce(self, x):
        return Fraction(x)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(a)

    def is_zero(self, a):
        return a == 0

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")


class PrimeField:
    """GF(p) for a prime p < 2**31; elements are plain ints in [0, p)."""

    def __init__(self, p):
        p = int(p)
        if not _is_prime(p):
            raise PreconditionError(f"{p} is not prime")
        if p >= 2**31:
            raise PreconditionError("prime moduli must be < 2**31")
        self.p = p
        self.characteristic = p
        self.zero = 0
        self.one = 1 % p

    def coerce(self, x):
        if isinstance(x, Fraction):
            num = x.numerator % self.p
            den = x.denominator % self.p
            if den == 0:
                raise ZeroDivisionError(f"denominator divisible by {self.p}")
            return num * pow(den, -1, self.p) % self.p
        return int(x) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def is_zero(self, a):
        return a % self.p == 0

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))


QQ = RationalField()
GF_DEFAULT = PrimeField(DEFAULT_PRIME)
GF_PARANOIA = PrimeField(PARANOIA_PRIME)


def field_from_spec(spec):
    """Parse a field description: 'rational', 'prime:p', or a bare prime."""
    if spec is None:
        return GF_DEFAULT
    if isinstance(spec, (RationalField, PrimeField)):
        return spec
    text = str(spec).strip().lower()
    if text in ("rational", "rationals", "qq", "q"):
        return QQ
    if text.startswith("prime:"):
        text = text[len("prime:"):]
    try:
        return PrimeField(int(text))
    except ValueError as exc:
        raise PreconditionError(f"cannot parse field spec {spec!r}") from exc


def same_field(*fields):
    first = fields[0]
    for f in fields[1:]:
        if f != first:
            raise FieldMismatchError(f"mixed fields: {first} vs {f}")
    return first


# ---------------------------------------------------------------------------
# dense elimination cores


def matmul_mod(a, b, p):
    """(a @ b) % p with the inner dimension chunked so int64 never overflows."""
    if a.shape[1] == 0:
        return np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    chunk = max(1, (2**62) // ((p - 1) * (p - 1)))
    if a.shape[1] <= chunk:
        return (a @ b) % p
    acc = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    for k in range(0, a.shape[1], chunk):
        acc = (acc + a[:, k:k + chunk] @ b[k:k + chunk]) % p
    return acc


def _rref_mod(a, p):
    """Full reduced row echelon of an int64 array mod p.

    Pivot choice is deterministic: columns left to right, lowest remaining row.
    Returns (pivot column list, reduced array of exactly rank rows).
    """
    a = np.array(a, dtype=np.int64, copy=True) % p
    nrows, ncols = a.shape
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        inv = pow(int(a[r, c]), -1, p)
        a[r] = a[r] * inv % p
        col = a[:, c].copy()
        col[r] = 0
        rows = np.flatnonzero(col)
        if rows.size:
            a[rows] = (a[rows] - np.outer(col[rows], a[r])) % p
        pivots.append(c)
        r += 1
    return pivots, a[:len(pivots)]


def _rank_mod(a, p):
    """Rank mod p by forward elimination only (no back substitution)."""
    a = np.array(a, dtype=np.int64, copy=True) % p
    nrows, ncols = a.shape
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        inv = pow(int(a[r, c]), -1, p)
        row = a[r] * inv % p
        a[r] = row
        below = a[r + 1:, c]
        rows = np.flatnonzero(below)
        if rows.size:
            a[r + 1 + rows] = (a[r + 1 + rows] - np.outer(below[rows], row)) % p
        r += 1
    return r


def _rref_frac(rows):
    """Full reduced row echelon over the rationals, same pivot rule."""
    a = [[Fraction(x) for x in row] for row in rows]
    nrows = len(a)
    ncols = len(a[0]) if a else 0
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        hit = None
        for i in range(r, nrows):
            if a[i][c]:
                hit = i
                break
        if hit is None:
            continue
        if hit != r:
            a[r], a[hit] = a[hit], a[r]
        inv = 1 / a[r][c]
        if inv != 1:
            a[r] = [x * inv for x in a[r]]
        prow = a[r]
        for i in range(nrows):
            if i == r:
                continue
            f = a[i][c]
            if f:
                arow = a[i]
                for k in range(c, ncols):
                    if prow[k]:
                        arow[k] -= f * prow[k]
        pivots.append(c)
        r += 1
    return pivots, a[:len(pivots)]


def _rank_frac(rows):
    a = [[Fraction(x) for x in row] for row in rows]
    nrows = len(a)
    ncols = len(a[0]) if a else 0
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        hit = None
        for i in range(r, nrows):
            if a[i][c]:
                hit = i
                break
        if hit is None:
            continue
        if hit != r:
            a[r], a[hit] = a[hit], a[r]
        prow = a[r]
        pinv = 1 / prow[c]
        for i in range(r + 1, nrows):
            f = a[i][c]
            if f:
                f *= pinv
                arow = a[i]
                for k in range(c, ncols):
                    if prow[k]:
                        arow[k] -= f * prow[k]
        r += 1
    return r


def rank_of_rows(rows, ncols, field):
    """Rank of a stack of coefficient rows (numpy array or Fraction lists)."""
    if isinstance(field, PrimeField):
        if len(rows) == 0:
            return 0
        return _rank_mod(np.asarray(rows, dtype=np.int64).reshape(len(rows), ncols), field.p)
    rows = [list(r) for r in rows]
    if not rows:
        return 0
    return _rank_frac(rows)


# ---------------------------------------------------------------------------
# reduced row bases


class RowBasis:
    """A subspace of k^ncols in fully reduced form.

    Every basis row equals 1 at its own pivot column, 0 at all other pivot
    columns, and is otherwise supported on the complementary ("support")
    columns; `tails` holds exactly that complementary part, one row per pivot.
    Reduction of any vector therefore leaves a residual supported on the
    support columns, which doubles as the coordinate vector in the quotient.
    """

    __slots__ = ("ncols", "field", "pivots", "support", "tails", "_pivot_pos")

    def __init__(self, ncols, field, pivots, support, tails):
        self.ncols = ncols
        self.field = field
        self.pivots = tuple(pivots)
        self.support = tuple(support)
        self.tails = tails
        self._pivot_pos = {c: k for k, c in enumerate(self.pivots)}

    @classmethod
    def from_rows(cls, rows, ncols, field):
        if isinstance(field, PrimeField):
            if len(rows) == 0:
                mat = np.zeros((0, ncols), dtype=np.int64)
            else:
                mat = np.asarray(rows, dtype=np.int64).reshape(len(rows), ncols)
            pivots, red = _rref_mod(mat, field.p)
            support = [c for c in range(ncols) if c not in set(pivots)]
            tails = red[:, support] if len(pivots) else np.zeros((0, len(support)), dtype=np.int64)
            return cls(ncols, field, pivots, support, tails)
        pivots, red = _rref_frac([list(r) for r in rows]) if rows else ([], [])
        support = [c for c in range(ncols) if c not in set(pivots)]
        tails = [[row[c] for c in support] for row in red]
        return cls(ncols, field, pivots, support, tails)

    @classmethod
    def zero(cls, ncols, field):
        return cls.from_rows([], ncols, field)

    @classmethod
    def full(cls, ncols, field):
        if isinstance(field, PrimeField):
            tails = np.zeros((ncols, 0), dtype=np.int64)
        else:
            tails = [[] for _ in range(ncols)]
        return cls(ncols, field, range(ncols), (), tails)

    @property
    def dim(self):
        return len(self.pivots)

    @property
    def codim(self):
        return len(self.support)

    def reduce(self, vec):
        """Residual of `vec` modulo the subspace, as coordinates on `support`."""
        if isinstance(self.field, PrimeField):
            p = self.field.p
            vec = np.asarray(vec, dtype=np.int64) % p
            res = vec[list(self.support)]
            if self.dim and self.codim:
                coef = vec[list(self.pivots)].reshape(1, -1)
                res = (res - matmul_mod(coef, self.tails, p)[0]) % p
            return res
        res = [Fraction(vec[c]) for c in self.support]
        for k, c in enumerate(self.pivots):
            f = vec[c]
            if f:
                tail = self.tails[k]
                for t, val in enumerate(tail):
                    if val:
                        res[t] -= f * val
        return res

    def contains(self, vec):
        res = self.reduce(vec)
        if isinstance(self.field, PrimeField):
            return not np.any(res)
        return all(x == 0 for x in res)

    def full_rows(self):
        """Reconstruct the basis as full-width coefficient rows."""
        if isinstance(self.field, PrimeField):
            out = np.zeros((self.dim, self.ncols), dtype=np.int64)
            if self.dim:
                out[np.arange(self.dim), list(self.pivots)] = 1
                if self.codim:
                    out[:, list(self.support)] = self.tails
            return out
        out = []
        for k, c in enumerate(self.pivots):
            row = [Fraction(0)] * self.ncols
            row[c] = Fraction(1)
            for t, s in enumerate(self.support):
                row[s] = Fraction(self.tails[k][t])
            out.append(row)
        return out

    def class_matrix(self):
        """Matrix (ncols x codim) sending each unit vector to its residual.

        Row c is the coordinate vector of e_c in the quotient k^ncols / span:
        a unit row for support columns, minus the tail for pivot columns.
        """
        if isinstance(self.field, PrimeField):
            p = self.field.p
            out = np.zeros((self.ncols, self.codim), dtype=np.int64)
            for t, s in enumerate(self.support):
                out[s, t] = 1
            if self.dim and self.codim:
                out[list(self.pivots)] = (-self.tails) % p
            return out
        out = [[Fraction(0)] * self.codim for _ in range(self.ncols)]
        for t, s in enumerate(self.support):
            out[s][t] = Fraction(1)
        for k, c in enumerate(self.pivots):
            out[c] = [-Fraction(x) for x in self.tails[k]]
        return out


class Accumulator:
    """Incrementally absorbs rows, tracking an rref basis of their span."""

    def __init__(self, ncols, field):
        self.ncols = ncols
        self.field = field
        self.pivots = []
        self.rows = []

    def absorb(self, row):
        """Reduce `row` against the basis; if independent, add it; return residual or None."""
        fld = self.field
        if isinstance(fld, PrimeField):
            p = fld.p
            row = np.asarray(row, dtype=np.int64) % p
            for k, c in enumerate(self.pivots):
                f = int(row[c])
                if f:
                    row = (row - f * self.rows[k]) % p
            nz = np.flatnonzero(row)
            if nz.size == 0:
                return None
            c = int(nz[0])
            row = row * pow(int(row[c]), -1, p) % p
            for k in range(len(self.rows)):
                f = int(self.rows[k][c])
                if f:
                    self.rows[k] = (self.rows[k] - f * row) % p
            self.pivots.append(c)
            self.rows.append(row)
            return row
        row = [Fraction(x) for x in row]
        for k, c in enumerate(self.pivots):
            f = row[c]
            if f:
                basis = self.rows[k]
                for t in range(self.ncols):
                    if basis[t]:
                        row[t] -= f * basis[t]
        c = next((t for t in range(self.ncols) if row[t]), None)
        if c is None:
            return None
        inv = 1 / row[c]
        row = [x * inv for x in row]
        for k in range(len(self.rows)):
            f = self.rows[k][c]
            if f:
                self.rows[k] = [a - f * b for a, b in zip(self.rows[k], row)]
        self.pivots.append(c)
        self.rows.append(row)
        return row

    @property
    def dim(self):
        return len(self.pivots)


# ---------------------------------------------------------------------------
# the public matrix surface


class ExactMatrix:
    """A matrix over one exact field, built from sparse (row, col, value) entries."""

    def __init__(self, nrows, ncols, entries, field):
        self.nrows = nrows
        self.ncols = ncols
        self.field = field
        if isinstance(field, PrimeField):
            data = np.zeros((nrows, ncols), dtype=np.int64)
        else:
            data = [[field.zero] * ncols for _ in range(nrows)]
        for i, j, v in entries:
            if not (0 <= i < nrows and 0 <= j < ncols):
                raise DimensionMismatchError(f"entry ({i},{j}) outside {nrows}x{ncols}")
            if isinstance(field, PrimeField):
                data[i, j] = field.coerce(v)
            else:
                data[i][j] = field.coerce(v)
        self._data = data

    @classmethod
    def from_rows(cls, rows, field, ncols=None):
        rows = [list(r) for r in rows]
        nrows = len(rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        entries = ((i, j, v) for i, row in enumerate(rows) for j, v in enumerate(row))
        return cls(nrows, ncols, entries, field)

    def entry(self, i, j):
        if isinstance(self.field, PrimeField):
            return int(self._data[i, j])
        return self._data[i][j]

    def entries(self):
        """Yield the nonzero entries as (row, col, value)."""
        if isinstance(self.field, PrimeField):
            for i, j in zip(*np.nonzero(self._data)):
                yield int(i), int(j), int(self._data[i, j])
        else:
            for i, row in enumerate(self._data):
                for j, v in enumerate(row):
                    if v:
                        yield i, j, v

    def rows(self):
        if isinstance(self.field, PrimeField):
            return self._data
        return self._data

    def column(self, j):
        if isinstance(self.field, PrimeField):
            return self._data[:, j]
        return [row[j] for row in self._data]

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        if (self.nrows, self.ncols) != (other.nrows, other.ncols) or self.field != other.field:
            return False
        if isinstance(self.field, PrimeField):
            return bool(np.array_equal(self._data, other._data))
        return self._data == other._data


@dataclass
class RrefResult:
    rank: int
    pivots: list
    matrix: ExactMatrix


def rref(m):
    """Reduced row echelon form with deterministic column-major pivoting."""
    if isinstance(m.field, PrimeField):
        pivots, red = _rref_mod(m._data, m.field.p)
        rows = [list(map(int, r)) for r in red]
    else:
        pivots, red = _rref_frac(m._data) if m.nrows else ([], [])
        rows = [list(r) for r in red]
    while len(rows) < m.nrows:
        rows.append([0] * m.ncols)
    return RrefResult(len(pivots), list(pivots), ExactMatrix.from_rows(rows, m.field, m.ncols))


def kernel_basis(m):
    """Basis of {v : m v = 0}, each vector scaled so its first nonzero is 1."""
    res = rref(m)
    pivset = set(res.pivots)
    free = [c for c in range(m.ncols) if c not in pivset]
    fld = m.field
    red = res.matrix
    basis = []
    for f in free:
        v = [fld.zero] * m.ncols
        v[f] = fld.one
        for k, p in enumerate(res.pivots):
            val = red.entry(k, f)
            if not fld.is_zero(val):
                v[p] = fld.neg(val)
        lead = next(x for x in v if not fld.is_zero(x))
        if lead != fld.one:
            inv = fld.inv(lead)
            v = [fld.mul(inv, x) for x in v]
        basis.append(v)
    return basis


@dataclass
class SpanResult:
    member: bool
    coefficients: list | None

    def __bool__(self):
        return self.member


def in_span(target, generators):
    """Does `target` lie in the column space of `generators`?

    On success the certificate c satisfies generators @ c == target exactly.
    """
    m = generators
    if len(target) != m.nrows:
        raise DimensionMismatchError(f"target length {len(target)} != {m.nrows} rows")
    fld = m.field
    aug_rows = []
    data = m._data
    for i in range(m.nrows):
        if isinstance(fld, PrimeField):
            row = list(map(int, data[i]))
        else:
            row = list(data[i])
        row.append(fld.coerce(target[i]))
        aug_rows.append(row)
    aug = ExactMatrix.from_rows(aug_rows, fld, m.ncols + 1)
    res = rref(aug)
    if m.ncols in res.pivots:
        return SpanResult(False, None)
    coeffs = [fld.zero] * m.ncols
    for k, p in enumerate(res.pivots):
        coeffs[p] = res.matrix.entry(k, m.ncols)
    return SpanResult(True, coeffs)
