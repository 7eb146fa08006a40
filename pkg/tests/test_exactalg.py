from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bettiforge import (
    GF_DEFAULT,
    GF_PARANOIA,
    QQ,
    ExactMatrix,
    PrimeField,
    field_from_spec,
    in_span,
    kernel_basis,
    rref,
)
from bettiforge.errors import DimensionMismatchError, PreconditionError


def test_rref_identity():
    m = ExactMatrix.from_rows([[1, 0], [0, 1]], QQ)
    res = rref(m)
    assert res.rank == 2 and res.pivots == [0, 1]


def test_rref_zero_matrix():
    m = ExactMatrix(3, 4, (), QQ)
    res = rref(m)
    assert res.rank == 0 and res.pivots == []


def test_rref_proportional_rows():
    m = ExactMatrix.from_rows([[1, 2], [2, 4]], QQ)
    assert rref(m).rank == 1


def test_kernel_identity_empty():
    assert kernel_basis(ExactMatrix.from_rows([[1, 0], [0, 1]], QQ)) == []


def test_kernel_one_one():
    (v,) = kernel_basis(ExactMatrix.from_rows([[1, 1]], QQ))
    assert v == [Fraction(1), Fraction(-1)]


def test_kernel_rank_one():
    # solve a + 2b = 0 by hand: kernel spanned by (2, -1), normalized (1, -1/2)
    (v,) = kernel_basis(ExactMatrix.from_rows([[1, 2], [2, 4]], QQ))
    assert v[0] * Fraction(-1) == v[1] * Fraction(2)
    assert v[0] == 1


def test_in_span_first_column():
    gens = ExactMatrix.from_rows([[1, 3], [0, 1]], QQ)
    res = in_span([1, 0], gens)
    assert res.member and res.coefficients == [Fraction(1), Fraction(0)]


def test_in_span_outside():
    gens = ExactMatrix.from_rows([[1], [2]], QQ)
    assert not in_span([1, 3], gens).member


def test_in_span_column_sum():
    gens = ExactMatrix.from_rows([[1, 0, 5], [0, 1, 7]], QQ)
    res = in_span([1, 1], gens)
    assert res.member and res.coefficients == [1, 1, 0]


def test_in_span_dimension_mismatch():
    gens = ExactMatrix.from_rows([[1, 0]], QQ)
    with pytest.raises(DimensionMismatchError):
        in_span([1, 0], gens)


def test_prime_field_validation():
    with pytest.raises(PreconditionError):
        PrimeField(65520)
    with pytest.raises(PreconditionError):
        PrimeField(2**31 + 11)


def test_field_from_spec():
    assert field_from_spec("rational") == QQ
    assert field_from_spec("65521") == GF_DEFAULT
    assert field_from_spec("prime:1073741789") == GF_PARANOIA
    assert field_from_spec(None) == GF_DEFAULT
    with pytest.raises(PreconditionError):
        field_from_spec("bogus")


def test_prime_coerces_fractions():
    f = GF_DEFAULT
    assert f.mul(f.coerce(Fraction(1, 2)), f.coerce(2)) == 1


small_matrices = st.integers(1, 3).flatmap(
    lambda r: st.integers(1, 4).flatmap(
        lambda c: st.lists(
            st.lists(st.integers(-9, 9), min_size=c, max_size=c),
            min_size=r, max_size=r)))


@settings(max_examples=60, deadline=None)
@given(small_matrices)
def test_rank_nullity_and_idempotence(rows):
    for field in (QQ, GF_DEFAULT):
        m = ExactMatrix.from_rows(rows, field)
        res = rref(m)
        assert res.rank + len(kernel_basis(m)) == m.ncols
        again = rref(res.matrix)
        assert again.matrix == res.matrix and again.pivots == res.pivots


@settings(max_examples=60, deadline=None)
@given(small_matrices)
def test_rank_agrees_over_fields(rows):
    # entries are small enough that no 3x3 minor can be a nonzero multiple of 65521
    ranks = {rref(ExactMatrix.from_rows(rows, f)).rank for f in (QQ, GF_DEFAULT, GF_PARANOIA)}
    assert len(ranks) == 1


@settings(max_examples=40, deadline=None)
@given(small_matrices, st.lists(st.integers(-5, 5), min_size=1, max_size=4))
def test_in_span_certificate_is_exact(rows, coeffs):
    m = ExactMatrix.from_rows(rows, QQ)
    coeffs = (coeffs + [0] * m.ncols)[:m.ncols]
    target = [sum(row[c] * coeffs[c] for c in range(m.ncols)) for row in rows]
    res = in_span(target, m)
    assert res.member
    rebuilt = [sum(row[c] * res.coefficients[c] for c in range(m.ncols)) for row in rows]
    assert rebuilt == [Fraction(t) for t in target]


@settings(max_examples=40, deadline=None)
@given(small_matrices)
def test_kernel_vectors_annihilate(rows):
    for field in (QQ, GF_DEFAULT):
        m = ExactMatrix.from_rows(rows, field)
        for v in kernel_basis(m):
            for row in rows:
                total = field.zero
                for c in range(m.ncols):
                    total = field.add(total, field.mul(field.coerce(row[c]), v[c]))
                assert field.is_zero(total)
