import random

import pytest

from lubintate import evaluation as ev
from lubintate.formal_group import build_formal_group
from lubintate.operators import OperatorContext
from lubintate.series import INF, TruncatedSeries


@pytest.fixture(scope="module")
def ctx(Q3):
    return OperatorContext(build_formal_group(Q3, "gm_hat", z_order=80))


@pytest.fixture(scope="module")
def bctx(Q3):
    return OperatorContext(build_formal_group(Q3, "basic", z_order=100))


def test_phi_inverse_constants_and_z(ctx):
    G = ctx.group
    Q = G.field
    c = TruncatedSeries.constant(Q, 7, 20)
    for m in (1, 2):
        s = ev.phi_inverse_m(G, c, m, 4).series
        assert (s.coeff(0) - G.tower(m).from_int(7)).is_zero()
        assert all(s.coeff(i).is_zero() for i in range(1, 5))
        z = ev.phi_inverse_m(G, TruncatedSeries.variable(Q, 40), m, 4).series
        assert (z.coeff(0) - G.tower(m).eta).is_zero()


def test_ev_of_one(ctx):
    G = ctx.group
    one = TruncatedSeries.constant(G.field, 1, 40)
    for m in (1, 2):
        pim = G.tower(m).coerce(G.pi) ** m
        assert (ev.ev_mj_def(G, one, m, 1) * pim - G.tower(m).one()).is_zero()
        for j in (2, 3):
            assert ev.ev_mj_def(G, one, m, j).is_zero()
            assert ev.ev_mj_explicit(G, one, m, j).is_zero()


def test_ev_of_dlog_z(ctx):
    G = ctx.group
    L1 = G.tower(1)
    f = TruncatedSeries.polynomial(G.field, [1, 1], 60).shift_z(-1)
    want = (L1.one() + L1.eta) / (L1.eta * 3)
    assert (ev.ev_mj_def(G, f, 1, 1) - want).is_zero()
    assert (ev.ev_mj_explicit(G, f, 1, 1) - want).is_zero()
    a = ev.ev_mj_def(G, f, 1, 3).agreement(ev.ev_mj_explicit(G, f, 1, 3))
    assert a is None or a >= 5


@pytest.mark.parametrize("which", ["ctx", "bctx"])
def test_two_routes_on_psi_one_samples(which, request):
    c = request.getfixturevalue(which)
    G = c.group
    for h in c.psi_one_samples(2, seed=7):
        for m in (1, 2):
            for j in (1, 2, 3):
                a = ev.ev_mj_def(G, h, m, j).agreement(ev.ev_mj_explicit(G, h, m, j))
                assert a is None or a >= 5, (m, j, a)


def test_commutation_with_derivative(ctx):
    G = ctx.group
    Q = G.field
    z = TruncatedSeries.variable(Q, 60)
    assert ev.invphi_commutation_check(G, z, 1, 8)["ok"]
    zi = TruncatedSeries(Q, -1, [Q.one()] + [Q.zero()] * 61, tail=INF)
    assert ev.invphi_commutation_check(G, zi, 1, 6)["ok"]


def test_descent_factorial(Q3):
    one = TruncatedSeries.constant(Q3, 1, 4, var="t")
    r = ev.descent_factorial_check(one, 3, 1, 1)
    assert r["ok"] and (r["lhs"] - Q3.from_int(2)).is_zero()
    f = TruncatedSeries(Q3, -1, [Q3.one()] * 3 + [Q3.zero()] * 3, tail=INF, var="t")
    r = ev.descent_factorial_check(f, 3, 1, 2)
    assert r["ok"] and (r["rhs"] - Q3.from_int(6)).is_zero()
    rng = random.Random(3)
    for j in (1, 2, 3):
        g = TruncatedSeries(Q3, -2, [Q3.from_int(rng.randint(-9, 9)) for _ in range(7)], tail=INF, var="t")
        assert ev.descent_factorial_check(g, 3, 2, j)["ok"]


def test_galois_equivariance(ctx):
    h = ctx.psi_one_samples(1, seed=1)[0]
    assert ev.galois_equivariance_check(ctx.group, h, 1, 2)["ok"]
