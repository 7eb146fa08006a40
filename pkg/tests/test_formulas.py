from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bettiforge import (
    BettiTable,
    DegreeSequence,
    betti_aci_odd,
    betti_gorenstein_odd,
    betti_sum_formula,
    froberg_series,
    gorenstein_linked_hilbert,
    koszul_betti,
    predict_level,
    series_numerator,
    syzygy_coefficient,
    syzygy_coefficients,
)
from bettiforge.errors import MinimalityError, ParityError, PreconditionError


def brute_koszul(degrees):
    # independent subset enumeration
    out = {}
    for i in range(len(degrees) + 1):
        for S in combinations(range(len(degrees)), i):
            j = sum(degrees[s] for s in S)
            out[(i, j)] = out.get((i, j), 0) + 1
    return {k: v for k, v in out.items() if v}


def test_koszul_three_squares():
    t = koszul_betti((2, 2, 2))
    assert t.entries == {(0, 0): 1, (1, 2): 3, (2, 4): 3, (3, 6): 1}


def test_koszul_five_quartics():
    t = koszul_betti((4, 4, 4, 4, 4))
    from math import comb

    assert all(t.get(i, 4 * i) == comb(5, i) for i in range(6))


def test_koszul_mixed():
    t = koszul_betti((2, 3))
    assert t.entries == {(0, 0): 1, (1, 2): 1, (1, 3): 1, (2, 5): 1}


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(1, 5), min_size=1, max_size=5))
def test_koszul_matches_enumeration(degrees):
    assert koszul_betti(tuple(degrees)).entries == brute_koszul(degrees)


# the four worked tables, frozen entrywise

LEFT_ACI = {(0, 0): 1, (1, 4): 5, (2, 8): 10, (2, 9): 20, (3, 10): 46, (4, 11): 20}
RIGHT_ACI = {(0, 0): 1, (1, 2): 1, (1, 4): 5, (2, 6): 5, (2, 8): 10, (2, 9): 20,
             (3, 10): 56, (3, 11): 20, (4, 11): 20, (4, 12): 46, (5, 13): 20}
LEFT_GOR = {(0, 0): 1, (1, 4): 4, (1, 5): 20, (2, 6): 46, (3, 7): 20, (3, 8): 4,
            (4, 12): 1}
RIGHT_GOR = {(0, 0): 1, (1, 2): 1, (1, 4): 4, (1, 5): 20, (2, 6): 50, (2, 7): 20,
             (3, 7): 20, (3, 8): 50, (4, 9): 20, (4, 10): 4, (4, 12): 1, (5, 14): 1}


def test_aci_odd_quartics_table():
    t = betti_aci_odd(DegreeSequence(4, (4, 4, 4, 4), 4))
    assert t.entries == LEFT_ACI
    assert t.totals() == [1, 5, 30, 46, 20]


def test_gorenstein_odd_quartics_table():
    t = betti_gorenstein_odd(DegreeSequence(4, (4, 4, 4, 4), 4))
    assert t.entries == LEFT_GOR
    assert t.totals() == [1, 24, 46, 24, 1]
    # duality spot check inside the same table
    assert t.get(1, 5) == t.get(3, 7) == 20
    assert t.is_self_dual(4, 8)


def test_sum_formula_tables():
    ds = DegreeSequence(5, (4, 4, 4, 4, 2), 4)
    t = betti_sum_formula(ds, "aci")
    assert t.entries == RIGHT_ACI
    assert t.totals() == [1, 6, 35, 76, 66, 20]
    g = betti_sum_formula(ds, "gorenstein")
    assert g.entries == RIGHT_GOR
    assert g.totals() == [1, 25, 70, 70, 25, 1]
    # the shifted-sum consistency the two tables satisfy
    assert t.get(3, 10) == LEFT_ACI[(3, 10)] + LEFT_ACI[(2, 8)]


def test_sum_formula_quadric_anywhere():
    a = betti_sum_formula(DegreeSequence(5, (2, 4, 4, 4, 4), 4), "aci")
    b = betti_sum_formula(DegreeSequence(5, (4, 4, 2, 4, 4), 4), "aci")
    assert a == b


def test_parity_and_minimality_errors():
    with pytest.raises(ParityError):
        betti_aci_odd(DegreeSequence(4, (4, 4, 4, 4), 3))
    with pytest.raises(MinimalityError):
        betti_aci_odd(DegreeSequence(2, (2, 2), 4))
    with pytest.raises(ParityError):
        betti_gorenstein_odd(DegreeSequence(4, (4, 4, 4, 4), 5))
    with pytest.raises(ParityError):
        betti_sum_formula(DegreeSequence(3, (2, 2, 2), 3), "aci")
    with pytest.raises(PreconditionError):
        betti_sum_formula(DegreeSequence(3, (3, 3, 3), 2), "aci")


def test_aci_degenerate_single_variable():
    # (x1^4, x1^3) collapses to the principal ideal (x1^3)
    t = betti_aci_odd(DegreeSequence(1, (4,), 3))
    assert t.entries == {(0, 0): 1, (1, 3): 1}


def test_gorenstein_socle_zero_boundary():
    # ell power at the arithmetic boundary links to the maximal ideal
    t = betti_gorenstein_odd(DegreeSequence(3, (2, 3, 4), 6))
    from math import comb

    assert t.entries == {(i, i): comb(3, i) for i in range(4)}


def test_predict_level():
    ds = DegreeSequence(5, (4, 4, 4, 4, 2), 4)
    t = betti_sum_formula(ds, "aci")
    assert predict_level(t, t.max_row)
    ci = koszul_betti((3, 3, 3))
    assert predict_level(ci, 6)
    # two socle rows: the final worked example of the cubes ideal
    cubes = BettiTable({(0, 0): 1, (1, 3): 5, (2, 6): 16, (2, 7): 1, (3, 7): 10,
                        (3, 8): 10, (4, 8): 1, (4, 9): 6})
    assert not predict_level(cubes, 5)


def test_syzygy_coefficients():
    assert syzygy_coefficient(2) == 1
    assert syzygy_coefficient(3) == 4
    assert syzygy_coefficient(4) == 10
    assert syzygy_coefficients((2, 3, 4)) == [1, 4, 10]


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 4).flatmap(
    lambda n: st.tuples(st.lists(st.integers(2, 4), min_size=n, max_size=n),
                        st.integers(2, 4))))
def test_alternating_sums_match_series(args):
    degrees, e = args
    ds = DegreeSequence(len(degrees), tuple(degrees), e)
    if ds.total_sum % 2 == 0 or not ds.is_minimal:
        return
    t = betti_aci_odd(ds)
    series = list(froberg_series(ds.nvars, ds.all_degrees()).coefficients)
    want = series_numerator(series, ds.nvars)
    got = t.alternating_numerator()
    assert got == {j: v for j, v in enumerate(want) if v}
    g = betti_gorenstein_odd(ds)
    wg = series_numerator(gorenstein_linked_hilbert(ds), ds.nvars)
    assert g.alternating_numerator() == {j: v for j, v in enumerate(wg) if v}
    assert g.is_self_dual(ds.nvars, ds.linked_socle_degree)
