"""The maps phi^{-m} into L_m[[t]] and the evaluation maps ev_{m,j}.

phi^{-m}(f) = f(h_m(t)) with h_m = eta_m +_LT exp_LT(t / pi^m).  The value
ev_{m,j}(f) is the coefficient of t^{j-1} in pi^{-m} phi^{-m}(f); the second
route evaluates the invariant derivative directly at eta_m.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import PrecisionExhausted
from .padic import TowerField
from .series import TruncatedSeries, compose_small_constant


@dataclass(frozen=True)
class TSeriesOverTower:
    level: int
    series: TruncatedSeries

    @property
    def t_precision(self):
        return self.series.M


def phi_inverse_m(G, f, m, T):
    """phi^{-m}(f) as a t-series over L_m, to t-order T."""
    if f.var != "Z":
        raise ValueError("phi^{-m} takes a Z-series")
    h = G.h_series(m, T)
    return TSeriesOverTower(m, compose_small_constant(f, h, T))


def ev_mj_def(G, f, m, j):
    """Coefficient of t^{j-1} in pi^{-m} phi^{-m}(f)."""
    s = phi_inverse_m(G, f, m, j - 1).series
    Lm = G.tower(m)
    c = s.coeff(j - 1)
    return c * Lm.coerce(G.pi).inverse() ** m


def ev_mj_explicit(G, f, m, j):
    """(partial_inv^{j-1} f)(eta_m) / ((j-1)! pi^{mj})."""
    Lm = G.tower(m)
    d = G.partial_inv(f, j - 1)
    val = d.evaluate(Lm.eta)
    scale = Lm.coerce(G.pi) ** (m * j) * math.factorial(j - 1)
    return val / scale


def ev_explicit_at(G, f, x, m, j):
    """The explicit route with eta_m replaced by another point x of L_m."""
    Lm = x.field
    d = G.partial_inv(f, j - 1)
    val = d.evaluate(x)
    return val / (Lm.coerce(G.pi) ** (m * j) * math.factorial(j - 1))


def certified_digits(x, y):
    """Certified valuation of x - y relative to v(p) = 1 (None when exactly equal)."""
    return x.agreement(y)


def invphi_commutation_check(G, f, m, T):
    """d/dt phi^{-m}(f) against pi^{-m} phi^{-m}(partial_inv f)."""
    Lm = G.tower(m)
    lhs = phi_inverse_m(G, f, m, T + 1).series.derivative().truncate(T)
    rhs = phi_inverse_m(G, G.partial_inv(f), m, T).series
    rhs = rhs.scale(Lm.coerce(G.pi).inverse() ** m)
    bad = []
    for i in range(0, min(lhs.M, rhs.M) + 1):
        if not (lhs.coeff(i) - rhs.coeff(i)).is_zero():
            bad.append(i)
    return {"m": m, "t_order": min(lhs.M, rhs.M), "violations": bad, "ok": not bad}


def phi_inverse_t(f, pi, m):
    """phi^{-m} on a t-series: t -> pi^{-m} t."""
    c = f.ring.coerce(pi).inverse() ** m
    out = []
    pw = None
    for i, a in f.items():
        pw = c ** i
        out.append(a * pw)
    return TruncatedSeries(f.ring, f.lo, out, tail=None, var="t")


def descent_factorial_check(f, pi, m, j):
    """Constant term of phi^{-m} d^{j+1}(t^{j+1} f) against (j+1)! times that of phi^{-m}(f)."""
    if f.var != "t":
        raise ValueError("expected a t-series")
    g = f.shift_z(j + 1)
    for _ in range(j + 1):
        g = g.derivative()
    lhs = phi_inverse_t(g, pi, m).coeff(0)
    rhs = phi_inverse_t(f, pi, m).coeff(0) * math.factorial(j + 1)
    return {"lhs": lhs, "rhs": rhs, "ok": (lhs - rhs).is_zero()}


def galois_equivariance_check(G, f, m, j):
    """sigma_a(ev_{m,j}(f)) against the explicit route at [a](eta_m), all a mod pi^m."""
    Lm = G.tower(m)
    if not isinstance(Lm, TowerField):
        raise PrecisionExhausted("level must be positive")
    base = ev_mj_def(G, f, m, j)
    bad = []
    for a in Lm.galois_keys():
        lhs = Lm.galois_apply(a, base)
        rhs = ev_explicit_at(G, f, Lm.galois_image_eta(a), m, j)
        if not (lhs - rhs).is_zero():
            bad.append(a)
    return {"violations": bad, "ok": not bad}
