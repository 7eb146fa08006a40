from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bettiforge import (
    GF_DEFAULT,
    QQ,
    Polynomial,
    contract,
    format_polynomial,
    macaulay_matrix,
    parse_polynomial,
    power_of_linear,
    rref,
    standard_linear_form,
)
from bettiforge.errors import (
    DimensionMismatchError,
    NonHomogeneousError,
    PreconditionError,
)
from bettiforge.polyring import monomial_index, monomials_of_degree


def x(i, n=2, field=QQ):
    return Polynomial.variable(i, n, field)


def test_monomial_order_descending():
    monos = monomials_of_degree(3, 2)
    assert monos[0] == (2, 0, 0) and monos[-1] == (0, 0, 2)
    assert monos == tuple(sorted(monos, reverse=True))


def test_multiply_difference_of_squares():
    p = (x(0) + x(1)) * (x(0) - x(1))
    assert p == Polynomial(2, QQ, {(2, 0): 1, (0, 2): -1})


def test_multiply_by_one():
    p = x(0) * x(1) + x(1) * x(1)
    assert p * Polynomial.constant(1, 2, QQ) == p


def test_square_of_three_term_sum():
    p = power_of_linear([1, 1, 1], 2)
    for m in monomials_of_degree(3, 2):
        assert p.coeffs[m] == (1 if max(m) == 2 else 2)


def test_multiply_ring_mismatch():
    with pytest.raises(DimensionMismatchError):
        x(0, 2) * x(0, 3)


def test_contract_derivative():
    out = contract(x(0, 1), Polynomial.variable_power(0, 2, 1, QQ))
    assert out == Polynomial(1, QQ, {(1,): 2})


def test_contract_mixed_square():
    # (d1 + d2)^2 applied to X1 X2 leaves the constant 2
    f = power_of_linear([1, 1], 2)
    out = contract(f, Polynomial.monomial((1, 1), QQ))
    assert out == Polynomial.constant(2, 2, QQ)


def test_contract_annihilates():
    f = Polynomial.variable_power(0, 2, 3, QQ)
    assert contract(f, Polynomial.monomial((0, 1, 1), QQ)).is_zero()


def test_power_of_linear_examples():
    assert power_of_linear([1, 1], 2) == Polynomial(2, QQ, {(2, 0): 1, (1, 1): 2, (0, 2): 1})
    assert power_of_linear([3, -2], 0) == Polynomial.constant(1, 2, QQ)
    assert power_of_linear([1, 1, 1], 3).coeffs[(1, 1, 1)] == 6


def test_macaulay_single_generator():
    m = macaulay_matrix([Polynomial.variable_power(0, 2, 2, QQ)], 3)
    assert (m.nrows, m.ncols) == (4, 2)
    assert rref(m).rank == 2


def test_macaulay_empty():
    m = macaulay_matrix([], 5, nvars=2, field=QQ)
    assert m.ncols == 0 and m.nrows == 6


def test_macaulay_two_squares():
    gens = [Polynomial.variable_power(i, 2, 2, QQ) for i in range(2)]
    m = macaulay_matrix(gens, 2)
    assert rref(m).rank == 2  # only x1 x2 survives in the quotient


def test_macaulay_rejects_inhomogeneous():
    with pytest.raises(NonHomogeneousError):
        macaulay_matrix([x(0) + Polynomial.constant(1, 2, QQ)], 2)


small_polys = st.builds(
    lambda terms: Polynomial(2, QQ, {m: c for m, c in terms}),
    st.lists(st.tuples(
        st.tuples(st.integers(0, 2), st.integers(0, 2)),
        st.integers(-4, 4)), max_size=4))


@settings(max_examples=50, deadline=None)
@given(small_polys, small_polys, small_polys)
def test_multiply_commutative_associative(a, b, c):
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)


@settings(max_examples=50, deadline=None)
@given(small_polys, small_polys, small_polys)
def test_contract_is_bilinear_module_action(f, g, big):
    lhs = contract(f + g, big)
    rhs = contract(f, big) + contract(g, big)
    assert lhs == rhs
    assert contract(f * g, big) == contract(f, contract(g, big))


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 3), st.integers(0, 3))
def test_macaulay_rank_monotone_under_generators(d1, d2):
    gens = [Polynomial.variable_power(0, d1 + 1, 2, QQ)]
    before = rref(macaulay_matrix(gens, 4)).rank
    gens.append(power_of_linear([1, 2], d2 + 1))
    after = rref(macaulay_matrix(gens, 4)).rank
    assert after >= before


def test_parse_format_round_trip():
    p = parse_polynomial("3*x1^2*x3 - x2^4 + 1/2*x1*x2^3", nvars=3)
    assert p.coeffs[(2, 0, 1)] == 3
    assert p.coeffs[(0, 4, 0)] == -1
    assert p.coeffs[(1, 3, 0)] == Fraction(1, 2)
    assert parse_polynomial(format_polynomial(p), nvars=3) == p


def test_parse_rejects_inhomogeneous_when_required():
    with pytest.raises(NonHomogeneousError):
        parse_polynomial("x1^2 + x2", require_homogeneous=True)
    with pytest.raises(PreconditionError):
        parse_polynomial("x1 + + ^")


def test_parse_prime_field():
    p = parse_polynomial("-x1 + 1/2*x2", nvars=2, field=GF_DEFAULT)
    assert p.coeffs[(1, 0)] == GF_DEFAULT.p - 1
    assert p.coeffs[(0, 1)] == GF_DEFAULT.coerce(Fraction(1, 2))


def test_format_balanced_prime_coefficients():
    p = Polynomial(2, GF_DEFAULT, {(1, 0): GF_DEFAULT.p - 1})
    assert format_polynomial(p) == "-x1"


def test_zero_polynomial_is_every_degree():
    z = Polynomial.zero(2, QQ)
    assert z.is_homogeneous(0) and z.is_homogeneous(7)
    assert z.degree() is None


def test_standard_linear_form():
    ell = standard_linear_form(3, QQ)
    assert ell == x(0, 3) + x(1, 3) + x(2, 3)
