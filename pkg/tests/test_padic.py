from fractions import Fraction

import pytest
import sympy

from lubintate.errors import NotIrreducible, NotUniformizer
from lubintate.padic import (
    base_field_make,
    galois_apply,
    rational_field,
    teichmuller,
    trace_norm,
)


def test_base_fields():
    L = base_field_make(3, [-3, 1])
    assert (L.q, L.e, L.residue_degree) == (3, 1, 1)
    L = base_field_make(3, [-3, 0, 1])
    assert (L.q, L.e, L.residue_degree) == (3, 2, 1)
    assert L.pi.valuation() == Fraction(1, 2)
    L = base_field_make(3, [-1, -1, 1])
    assert (L.q, L.e, L.residue_degree) == (9, 1, 2)


def test_base_field_errors():
    with pytest.raises(NotIrreducible):
        base_field_make(3, [2, 0, 1])  # X^2 + 2 = (X - 1)(X + 1) mod 3
    with pytest.raises(NotIrreducible):
        base_field_make(3, [-3, 2])
    with pytest.raises(NotUniformizer):
        base_field_make(3, [-3, 1], pi_choice=9)


def test_rational_arithmetic_matches_fractions():
    Q = rational_field(5, 20)
    a, b = Fraction(7, 3), Fraction(-11, 25)
    x, y = Q.from_fraction(a), Q.from_fraction(b)
    for got, want in ((x * y, a * b), (x + y, a + b), (x / y, a / b), (x ** 3, a ** 3)):
        assert (got - Q.from_fraction(want)).is_zero()
        assert got.precision() >= 17
    assert y.valuation() == -2


def test_precision_is_tracked():
    Q = rational_field(3, 10)
    x = Q.from_int(1).add_bigoh(4)
    y = Q.from_int(3)
    assert (x * y).precision() == 5
    assert (x / y).precision() == 3
    assert (x - Q.from_int(1 + 81)).is_zero()


def test_teichmuller():
    Q = rational_field(3, 10)
    assert teichmuller(Q, 0).is_zero()
    assert (teichmuller(Q, 1) - Q.one()).is_zero()
    w = teichmuller(Q, 2)
    assert (w ** 3 - w).is_zero()
    # the lift of 2 in Z_3 is -1
    assert (w + Q.one()).is_zero()
    L = base_field_make(5, [2, 0, 1], digits=12)  # X^2 + 2 irreducible mod 5
    w = teichmuller(L, (1, 1))
    assert (w ** 25 - w).is_zero()


def test_tower_traces_and_norms(gm):
    L1 = gm.tower(1)
    assert L1.degree == 2
    tr, nm = trace_norm(L1.eta, 0)
    assert tr.to_fraction() == -3 and nm.to_fraction() == 3
    tr, _ = trace_norm(L1.eta + L1.one(), 0)
    assert tr.to_fraction() == -1
    assert trace_norm(L1.eta, 1)[0] is L1.eta


def test_level_two_against_sympy(gm):
    # oracle: minimal polynomial of zeta_9 - 1 over Q
    X = sympy.symbols("X")
    mp = sympy.Poly(sympy.div((1 + X) ** 9 - 1, (1 + X) ** 3 - 1, X)[0], X)
    L2 = gm.tower(2)
    assert L2.degree == 6
    coeffs = mp.all_coeffs()
    tr, nm = trace_norm(L2.eta, 0)
    assert tr.to_fraction() == -coeffs[1]
    assert nm.to_fraction() == coeffs[-1]
    L1 = gm.tower(1)
    assert (L2.embed(L1.eta) - ((L2.one() + L2.eta) ** 3 - L2.one())).is_zero()


def test_galois_action(gm):
    L1 = gm.tower(1)
    z = L1.eta + L1.one()
    assert (galois_apply(2, z) - z * z).is_zero()
    assert (galois_apply(1, z) - z).is_zero()
    L2 = gm.tower(2)
    units = [a for a in range(1, 9) if a % 3]
    for a in units:
        for b in units:
            lhs = L2.galois_apply(a, L2.galois_apply(b, L2.eta))
            assert (lhs - L2.galois_apply(a * b % 9, L2.eta)).is_zero()


def test_agreement_counts_digits():
    Q = rational_field(3, 20)
    x = Q.from_int(1)
    assert x.agreement(Q.from_int(1)) is None
    assert x.agreement(Q.from_int(1 + 3 ** 5)) == 5
