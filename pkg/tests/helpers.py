"""Shared builders for the test suite: power ideals, cached oracle runs, sweeps."""

from functools import lru_cache

from bettiforge import (
    GF_DEFAULT,
    GF_PARANOIA,
    QQ,
    DegreeSequence,
    GradedQuotient,
    Polynomial,
    betti_from_quotient,
    colon_ideal,
    minimal_betti_oracle,
    power_of_linear,
)

FIELDS = {"qq": QQ, "p": GF_DEFAULT, "P": GF_PARANOIA}


def field_by_key(key):
    return FIELDS[key]


def powers_ideal(ds, field):
    """Generators (x_1^d1, .., x_n^dn) plus ell^e when the sequence carries it."""
    gens = [Polynomial.variable_power(i, d, ds.nvars, field)
            for i, d in enumerate(ds.degrees)]
    if ds.ell_power is not None:
        gens.append(power_of_linear([1] * ds.nvars, ds.ell_power, field))
    return gens


@lru_cache(maxsize=None)
def oracle_table(nvars, degrees, ell, kind, field_key="p"):
    """Resolution-oracle Betti table for the power ideal or its linked colon."""
    field = field_by_key(field_key)
    ds = DegreeSequence(nvars, degrees, ell)
    gens = powers_ideal(ds, field)
    if kind == "aci":
        return minimal_betti_oracle(gens)
    slices = colon_ideal(gens[:-1], gens[-1])
    return betti_from_quotient(GradedQuotient(slices))


def sorted_multisets(values, size):
    """All nondecreasing tuples of the given size over `values`."""
    if size == 0:
        return [()]
    out = []

    def rec(prefix, start):
        if len(prefix) == size:
            out.append(tuple(prefix))
            return
        for k in range(start, len(values)):
            rec(prefix + [values[k]], k)

    rec([], 0)
    return out


def odd_parity_sweep(nvals, degree_values=(2, 3, 4), ell_values=(2, 3, 4)):
    """Minimally generated sequences with sum over all n+1 of (d_i - 1) odd."""
    out = []
    for n in nvals:
        for degs in sorted_multisets(degree_values, n):
            for e in ell_values:
                ds = DegreeSequence(n, degs, e)
                if ds.total_sum % 2 == 1 and ds.is_minimal:
                    out.append(ds)
    return out


def quadric_sum_sweep(nvals, degree_values=(2, 3, 4), ell_values=(2, 3, 4)):
    """Sequences containing a quadric whose reduced parity is odd, minimally generated."""
    out = []
    for n in nvals:
        for degs in sorted_multisets(degree_values, n):
            if 2 not in degs:
                continue
            for e in ell_values:
                ds = DegreeSequence(n, degs, e)
                reduced_sum = ds.variable_sum - 1
                t = reduced_sum + e - 1
                if t % 2 == 1 and e <= reduced_sum:
                    out.append(ds)
    return out
