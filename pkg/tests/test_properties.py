from fractions import Fraction

from hypothesis import given, settings, strategies as st

from lubintate import distributions as dist
from lubintate.formal_group import build_formal_group
from lubintate.padic import rational_field
from lubintate.series import TruncatedSeries, power_coeffs

Q = rational_field(3, 25)
M = 10

fracs = st.builds(Fraction, st.integers(-10 ** 6, 10 ** 6), st.integers(1, 10 ** 4))
ints = st.integers(-50, 50)
coeff_lists = st.lists(ints, min_size=1, max_size=M + 1)


def elt(x):
    return Q.from_fraction(x)


def poly(cs):
    return TruncatedSeries.from_list(Q, [Q.from_int(c) for c in cs], M=M)


def same(a, b):
    return (a - b).is_zero()


@given(fracs, fracs, fracs)
def test_field_operations_match_rationals(x, y, z):
    assert same(elt(x) + elt(y), elt(x + y))
    assert same(elt(x) * elt(y), elt(x * y))
    assert same((elt(x) + elt(y)) * elt(z), elt(x) * elt(z) + elt(y) * elt(z))
    if y:
        assert same(elt(x) / elt(y), elt(x / y))


@settings(max_examples=40, deadline=None)
@given(coeff_lists, coeff_lists, coeff_lists)
def test_series_multiplication_is_associative(a, b, c):
    f, g, h = poly(a), poly(b), poly(c)
    lhs, rhs = (f * g) * h, f * (g * h)
    for i in range(M + 1):
        assert same(lhs.coeff(i), rhs.coeff(i))


@settings(max_examples=20, deadline=None)
@given(coeff_lists, coeff_lists, st.integers(1, 50), st.lists(ints, max_size=3))
def test_composition_respects_products(a, b, lead, c):
    g = poly([0, lead] + c)
    f, h = poly(a), poly(b)
    lhs = (f * h).compose(g)
    rhs = f.compose(g) * h.compose(g)
    for i in range(M + 1):
        assert same(lhs.coeff(i), rhs.coeff(i))


@given(st.integers(0, 6), st.integers(-10, 10))
def test_ell_factor_closed_form_matches_product(k, j):
    assert dist.ell_factor(k, j) == dist.ell_factor(k, j, "product")


@given(st.integers(1, 9), st.lists(fracs, min_size=8, max_size=8), st.integers(0, 12))
def test_power_coefficients_match_repeated_product(b0, rest, n):
    b = [Fraction(b0)] + rest
    imax = len(b) - 1
    want = [Fraction(1)] + [Fraction(0)] * imax
    for _ in range(n):
        want = [sum(want[k] * b[i - k] for k in range(i + 1)) for i in range(imax + 1)]
    assert power_coeffs(b, n, imax) == want


@given(st.dictionaries(st.integers(0, 8), fracs, max_size=9), st.integers(0, 6))
def test_measure_json_round_trip(values, j):
    mu = dist.FiniteMeasure(3, 2, values)
    back = dist.FiniteMeasure.from_json(mu.to_json())
    assert back.values == mu.values
    total = lambda m: sum((v * a ** j for a, v in m.values.items() if a % 3), Fraction(0))
    assert total(back) == total(mu)


@settings(deadline=None)
@given(st.integers(0, 5), st.sampled_from(dist.units(3, 2)), st.sampled_from(dist.units(3, 2)))
def test_character_values_are_multiplicative(i, a, b):
    rho = dist.characters(3, 2)[i]
    K = TABLE.field(2)
    assert same(TABLE.value(rho, a * b % 9, K), TABLE.value(rho, a, K) * TABLE.value(rho, b, K))


TABLE = dist.CharacterTable(build_formal_group(rational_field(3, 10), "gm_hat", z_order=8), 2)
