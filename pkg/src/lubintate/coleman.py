"""Norm-compatible unit towers, Coates-Wiles values and the Kato chain.

A unit system is built from an N-fixed Laurent series g by evaluating at
the torsion points: u_n = g(eta_n).  Norm compatibility is then verified
with field norms, which share no code with the Coleman norm operator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import (
    LevelMismatch,
    NormCompatibilityViolation,
    NotAUnit,
    NotNormFixed,
    BaseLevelMismatch,
)
from .evaluation import ev_mj_def
from .padic import trace_norm
from .series import TruncatedSeries


@dataclass(frozen=True)
class UnitSystem:
    levels: dict
    coleman_series: TruncatedSeries
    provenance: str = "from_fixed_series"
    label: str = ""
    checks: dict = field(default_factory=dict)

    @property
    def n_max(self):
        return max(self.levels)


def unit_system_from_fixed_series(ctx, g, n_max, label="", check_fixed=True):
    """u_n = g(eta_n) for 1 <= n <= n_max, with both invariants verified."""
    G = ctx.group
    if n_max < 1:
        raise LevelMismatch("n_max must be at least 1")
    if check_fixed and not ctx.is_norm_fixed(g):
        raise NotNormFixed(f"{label or 'series'} is not fixed by the Coleman norm")
    levels = {}
    for n in range(1, n_max + 1):
        levels[n] = g.evaluate(G.tower(n).eta)
    checks = _verify_norms(levels)
    return UnitSystem(levels, g, "from_fixed_series", label, checks)


def unit_system_from_levels(G, levels, g, label=""):
    """Accept a user-supplied tower; only validates, never interpolates."""
    checks = _verify_norms(levels)
    for n, u in levels.items():
        if not (g.evaluate(G.tower(n).eta) - u).is_zero():
            raise NormCompatibilityViolation(f"g(eta_{n}) differs from u_{n}")
    return UnitSystem(dict(levels), g, "user_supplied", label, checks)


def _verify_norms(levels):
    out = {}
    for n in sorted(levels):
        if n + 1 not in levels:
            continue
        _, nm = trace_norm(levels[n + 1], n)
        diff = nm - levels[n]
        if not diff.is_zero():
            raise NormCompatibilityViolation(f"N(u_{n + 1}) differs from u_{n}")
        out[n] = diff.precision()
    return out


def norm_compatibility_digits(u, n):
    """Certified agreement of N_{L_{n+1}/L_n}(u_{n+1}) with u_n."""
    _, nm = trace_norm(u.levels[n + 1], n)
    return nm.agreement(u.levels[n])


def log_derivative(G, g):
    """partial_inv log g = partial_inv(g) / g."""
    return G.partial_inv(g) * g.inverse()


def coates_wiles(G, u, m, j):
    """(1/(j! pi^{mj})) (partial_inv^j log g)(eta_m)."""
    if m < 1 or j < 1:
        raise LevelMismatch("need m >= 1 and j >= 1")
    d = G.partial_inv(log_derivative(G, u.coleman_series), j - 1)
    Lm = G.tower(m)
    val = d.evaluate(Lm.eta)
    return val / (Lm.coerce(G.pi) ** (m * j) * math.factorial(j))


def kato_lhs_via_chain(G, u, m, j):
    """ev_{m,j}(partial_inv log g) through coefficient extraction of phi^{-m}."""
    return ev_mj_def(G, log_derivative(G, u.coleman_series), m, j)


def trace_relation(G, u, m, j):
    """(Tr_{L_{m+1}/L_m} of the level m+1 value, the level m value)."""
    hi = coates_wiles(G, u, m + 1, j)
    tr, _ = trace_norm(hi, m)
    return tr, coates_wiles(G, u, m, j)


def base_level_value(G, u, j):
    """Tr_{L_1/L} of the level-one value, checked against (1 - pi^{-j}) (d^j log g)(0) / j!."""
    g = u.coleman_series
    if g.order() != 0 or g.coeff(0)._vu() != 0 or not g.is_integral():
        raise NotAUnit("base-level formula needs an integral unit series")
    left, _ = trace_norm(coates_wiles(G, u, 1, j), 0)
    L = G.field
    d = G.partial_inv(log_derivative(G, g), j - 1)
    pi_inv = L.coerce(G.pi).inverse()
    right = (L.one() - pi_inv ** j) * d.coeff(0) / math.factorial(j)
    if not (left - right).is_zero():
        raise BaseLevelMismatch(f"trace {left} differs from {right}")
    return left, right


def galois_twist_check(G, u, m, j, a):
    """Value for g o [a] against a^j sigma_a of the value for g."""
    Lm = G.tower(m)
    g = u.coleman_series
    e = G.endomorphism(a, M=g.M)
    twisted = g.compose(e)
    tu = UnitSystem({}, twisted, "from_fixed_series", f"{u.label}o[{a}]")
    lhs = coates_wiles(G, tu, m, j)
    rhs = Lm.galois_apply(a, coates_wiles(G, u, m, j)) * Lm.from_int(a) ** j
    return lhs, rhs


def fixture_series(ctx, iterate_steps=None):
    """Named N-fixed series for the configured group.

    Every group gets Z and the integral unit [2](Z)/Z.  The multiplicative
    group also gets 1 + Z and the stabilized N-iterate of 1 + Z + 3Z^2
    (which is congruent to 1 + Z mod p, so it converges to 1 + Z).
    """
    G = ctx.group
    L = G.field
    M = ctx.M
    out = {"Z": TruncatedSeries.monomial(L, 1, M)}
    if G.is_cyclotomic:
        out["1+Z"] = TruncatedSeries.polynomial(L, [1, 1], M)
        g0 = TruncatedSeries.polynomial(L, [1, 1, 3], M)
        steps = L.digits + 2 if iterate_steps is None else iterate_steps
        out["iterate"] = ctx.norm_fixed_iterate(g0, steps)
    e = G.endomorphism(2, M=M + 1)
    out["[2]/Z"] = e.shift_z(-1).truncate(M)
    return out


def cw_table(ctx, g, m_max=2, j_max=3, label="g"):
    """Rows (m, j, CW value, chain value, certified agreement)."""
    G = ctx.group
    u = unit_system_from_fixed_series(ctx, g, m_max, label)
    rows = []
    for m in range(1, m_max + 1):
        for j in range(1, j_max + 1):
            cw = coates_wiles(G, u, m, j)
            lam = kato_lhs_via_chain(G, u, m, j)
            rows.append({"m": m, "j": j, "cw": cw, "lambda": lam,
                         "agreement": (lam - cw * j), "digits": lam.agreement(cw * j)})
    return rows


__all__ = [
    "UnitSystem", "unit_system_from_fixed_series", "unit_system_from_levels",
    "coates_wiles", "kato_lhs_via_chain", "base_level_value", "trace_relation",
    "galois_twist_check", "fixture_series", "cw_table", "log_derivative",
    "norm_compatibility_digits",
]
