import random

import pytest

from lubintate.operators import series_check
from lubintate.series import INF, TruncatedSeries
from lubintate.suites import operator_identities, psi_one_containment, residual_checks


def _eq(a, b):
    ok, n = series_check(a, b)
    return ok and n > 0


def test_phi(gm_ctx):
    Q = gm_ctx.field
    Z = TruncatedSeries.variable(Q, 20)
    assert _eq(gm_ctx.phi_apply(Z), gm_ctx.group.frobenius_series(20))
    opz = TruncatedSeries.polynomial(Q, [1, 1], 20)
    assert _eq(gm_ctx.phi_apply(opz), TruncatedSeries.polynomial(Q, [1, 3, 3, 1], 20))


def test_trace_sum(gm_ctx, basic_ctx):
    for ctx in (gm_ctx, basic_ctx):
        one = TruncatedSeries.constant(ctx.field, 1, ctx.M)
        assert _eq(ctx.trace_sum(one), TruncatedSeries.constant(ctx.field, ctx.q, ctx.M))
    opz = TruncatedSeries.polynomial(gm_ctx.field, [1, 1], gm_ctx.M)
    tr = gm_ctx.trace_sum(opz)
    assert all(tr.coeff(k).is_zero() for k in range(tr.M + 1))


def test_unsubstitute(gm_ctx, basic_ctx):
    rng = random.Random(5)
    for ctx in (gm_ctx, basic_ctx):
        Q = ctx.field
        Z = TruncatedSeries.variable(Q, ctx.M)
        assert _eq(ctx.unsubstitute(ctx.phi_Z), Z)
        for _ in range(5):
            deg = ctx.M // ctx.q
            S = TruncatedSeries(Q, 0, [Q.from_int(rng.randint(-9, 9)) for _ in range(deg)]
                                + [Q.zero()] * (ctx.M + 1 - deg), tail=INF)
            assert _eq(ctx.unsubstitute(ctx.phi_apply(S)), S)


def test_psi_examples(gm_ctx):
    Q = gm_ctx.field
    M = gm_ctx.M
    one = TruncatedSeries.constant(Q, 1, M)
    assert _eq(gm_ctx.psi_apply(one), one)
    r = gm_ctx.psi_apply(TruncatedSeries.polynomial(Q, [1, 1], M))
    assert all(r.coeff(k).is_zero() for k in range(r.lo, r.M + 1))
    f = TruncatedSeries.polynomial(Q, [1, 1], M).shift_z(-1)
    assert _eq(gm_ctx.psi_apply(f), f)


def test_psi_routes_agree(gm_ctx, basic_ctx):
    for ctx in (gm_ctx, basic_ctx):
        h = ctx.endomorphism_dlog(2, 30)
        assert _eq(ctx.psi_apply(h), ctx.psi_direct(h))
        assert _eq(ctx.psi_apply(h), h)


def test_norm(gm_ctx):
    Q = gm_ctx.field
    M = gm_ctx.M
    Z = TruncatedSeries.variable(Q, M)
    assert _eq(gm_ctx.norm_apply(Z), Z)
    c = TruncatedSeries.constant(Q, 2, M)
    assert _eq(gm_ctx.norm_apply(c), TruncatedSeries.constant(Q, 8, M))
    assert gm_ctx.is_norm_fixed(TruncatedSeries.polynomial(Q, [1, 1], M))


def test_norm_iterate_stabilizes(gm_ctx):
    Q = gm_ctx.field
    g0 = TruncatedSeries.polynomial(Q, [1, 1, 3], gm_ctx.M)
    g = gm_ctx.norm_fixed_iterate(g0, 8, digits=8)
    ok, n = series_check(gm_ctx.norm_apply(g), g, min_digits=8)
    assert ok and n > 0


@pytest.mark.parametrize("which", ["gm_ctx", "basic_ctx"])
def test_operator_identities(which, request):
    ctx = request.getfixturevalue(which)
    rep = operator_identities(ctx, count=5, seed=11, M=30)
    for name, r in rep.items():
        assert r["violations"] == 0 and r["compared"] > 0, name


@pytest.mark.parametrize("which", ["gm_ctx", "basic_ctx"])
def test_psi_one_samples(which, request):
    ctx = request.getfixturevalue(which)
    samples = ctx.psi_one_samples(3, seed=2)
    assert psi_one_containment(ctx, samples) == []


def test_residual_psi(gm_ctx, basic_ctx):
    for ctx in (gm_ctx, basic_ctx):
        assert residual_checks(ctx, count=20, seed=9) == []
        q = ctx.q
        rep = ctx.residual_valuation_checks([1], -q)
        assert rep["valuation"]["v_psi"] >= -1 and not rep["violations"]
        rep = ctx.residual_valuation_checks([1, 2, 0, 1], 0)
        assert rep["valuation"]["v_psi"] is None or rep["valuation"]["v_psi"] >= 0
        lo, vals = ctx.psi_mod_pi([0, 0, 0], 0)
        assert not any(vals)
