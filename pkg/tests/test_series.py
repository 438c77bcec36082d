import random
from fractions import Fraction

import pytest

from lubintate.errors import DivergentComposition
from lubintate.padic import rational_field, vp_fraction
from lubintate.series import (
    INF,
    TruncatedSeries,
    compose_small_constant,
    power_coeff_recursion,
    power_coeffs,
    reversion,
)
from lubintate.suites import power_bound_check, power_recursion_oracle


@pytest.fixture(scope="module")
def Q():
    return rational_field(3, 20)


def test_geometric_inverse(Q):
    f = TruncatedSeries.polynomial(Q, [1, 1], 20)
    g = f.inverse()
    assert all((g.coeff(i) - Q.from_int((-1) ** i)).is_zero() for i in range(21))
    one = (f * g).truncate(20)
    assert (one.coeff(0) - Q.one()).is_zero()
    assert all(one.coeff(i).is_zero() for i in range(1, 21))


def test_laurent_monomials(Q):
    z = TruncatedSeries.monomial(Q, 1, 10)
    zi = TruncatedSeries.monomial(Q, -1, 10)
    prod = z * zi
    assert (prod.coeff(0) - Q.one()).is_zero()
    assert prod.order() == 0


def test_invert_three_plus_z_loses_digits(Q):
    f = TruncatedSeries.polynomial(Q, [3, 1], 8)
    g = f.inverse()
    for i in range(9):
        want = Q.from_fraction(Fraction((-1) ** i, 3 ** (i + 1)))
        assert (g.coeff(i) - want).is_zero()
    # each term divides by 3 once more
    assert g.coeff(8).valuation() == -9


def test_compose_small_constant_examples(Q):
    h = TruncatedSeries.polynomial(Q, [3, 1], 6).relabel("t")
    z = TruncatedSeries.monomial(Q, 1, 10)
    out = compose_small_constant(z, h, 6)
    assert (out.coeff(0) - Q.from_int(3)).is_zero() and (out.coeff(1) - Q.one()).is_zero()
    zi = TruncatedSeries.monomial(Q, -1, 10)
    out = compose_small_constant(zi, h, 6)
    for i in range(7):
        assert (out.coeff(i) - Q.from_fraction(Fraction((-1) ** i, 3 ** (i + 1)))).is_zero()
    geo = TruncatedSeries(Q, 0, [Q.one()] * 40, tail=Fraction(0))
    c = TruncatedSeries.constant(Q, 3, 0, var="t")
    v = compose_small_constant(geo, c, 0).coeff(0)
    assert (v - Q.from_fraction(Fraction(-1, 2))).is_zero()
    assert v.precision() >= 10


def test_composition_needs_a_tail_bound(Q):
    f = TruncatedSeries(Q, 0, [Q.one()] * 5, tail=None)
    h = TruncatedSeries.constant(Q, 3, 2, var="t")
    with pytest.raises(DivergentComposition):
        compose_small_constant(f, h, 2)


def test_power_coefficients():
    b = [Fraction(2), Fraction(5)]
    assert power_coeff_recursion(b, 2, 1) == 2 * 2 * 5
    b = [Fraction(3), Fraction(1, 2), Fraction(-4), Fraction(7, 3)]
    assert power_coeffs(b, 1, 3) == b
    for n in range(6):
        assert power_coeffs(b, n, 0) == [b[0] ** n]


def test_power_coefficients_against_products():
    assert power_recursion_oracle(15, 15, seed=1) == []


def test_power_coefficient_bound():
    assert power_bound_check(3, 15, 30, seed=2) == []
    assert power_bound_check(5, 15, 30, seed=3) == []


def test_residues_and_derivatives(Q):
    zi = TruncatedSeries.monomial(Q, -1, 10)
    assert (zi.residue() - Q.one()).is_zero()
    f = TruncatedSeries.polynomial(Q, [1, 2, 3], 10)
    assert f.residue().is_zero()
    g = TruncatedSeries.polynomial(Q, [1, 1], 12).inverse()
    assert g.residue().is_zero()
    d = g.derivative()
    for i in range(10):
        assert (d.coeff(i) - Q.from_int((-1) ** (i + 1) * (i + 1))).is_zero()
    rng = random.Random(0)
    for _ in range(5):
        h = TruncatedSeries(Q, -4, [Q.from_int(rng.randint(-9, 9)) for _ in range(12)], tail=INF)
        assert h.derivative().residue().is_zero()


def test_reversion_of_log_is_exp(Q):
    M = 8
    log = TruncatedSeries(Q, 1, [Q.from_fraction(Fraction((-1) ** (n + 1), n)) for n in range(1, M + 1)],
                          tail=None)
    e = reversion(log)
    for n in range(1, M + 1):
        want = Fraction(1, 1)
        for k in range(2, n + 1):
            want /= k
        assert (e.coeff(n) - Q.from_fraction(want)).is_zero()
    assert e.coeff(5).valuation() == vp_fraction(Fraction(1, 120), 3)


def test_reversion_is_an_involution(Q):
    rng = random.Random(4)
    for _ in range(5):
        f = TruncatedSeries(Q, 1, [Q.one()] + [Q.from_int(rng.randint(-5, 5)) for _ in range(9)], tail=INF)
        back = reversion(reversion(f))
        assert all((back.coeff(i) - f.coeff(i)).is_zero() for i in range(1, 10))


def test_json_round_trip(Q):
    f = TruncatedSeries(Q, -2, [Q.from_int(c) for c in (1, 0, 4, -7)], tail=INF)
    g = TruncatedSeries.from_json(Q, f.to_json())
    assert g.lo == f.lo and all((a - b).is_zero() for a, b in zip(f.coeffs, g.coeffs))
