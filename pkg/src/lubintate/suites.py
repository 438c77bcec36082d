"""Verification suites: each check reports the identity it tests and whether it held."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from . import coleman, distributions as dist, evaluation as ev, residue as res
from .errors import LubinTateError
from .formal_group import build_formal_group
from .operators import OperatorContext, series_check
from .padic import rational_field
from .series import INF, TruncatedSeries, compose_small_constant, power_coeff_bounds, power_coeffs

SUITES = ("operators", "power_series", "coleman", "eval", "distributions", "residue")
# older name kept for existing configs
ALIASES = {"appendixB": "power_series"}


@dataclass
class CheckResult:
    suite: str
    name: str
    statement: str
    ok: bool
    detail: dict = field(default_factory=dict)

    def to_json(self):
        return {"suite": self.suite, "name": self.name, "statement": self.statement,
                "ok": bool(self.ok), "detail": {k: _jsonable(v) for k, v in self.detail.items()}}


def _jsonable(v):
    if isinstance(v, (bool, int, str)) or v is None:
        return v
    if isinstance(v, float):
        return v
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    return str(v)


class Workspace:
    """Groups and operator contexts built once per (preset, Z-order)."""

    def __init__(self, prime=3, digits=30, z_order=60, seed=0, preset=None):
        self.prime = prime
        self.digits = digits
        self.z_order = z_order
        self.seed = seed
        self.preset = preset
        self.field = rational_field(prime, digits)
        self._groups = {}
        self._ctx = {}

    def presets(self):
        if self.preset is not None:
            return [self.preset]
        return ["gm_hat", "basic"]

    def group(self, preset, z_order=None):
        key = (preset, z_order or self.z_order)
        if key not in self._groups:
            self._groups[key] = build_formal_group(self.field, preset, z_order=key[1])
        return self._groups[key]

    def ctx(self, preset, z_order=None):
        key = (preset, z_order or self.z_order)
        if key not in self._ctx:
            self._ctx[key] = OperatorContext(self.group(*key))
        return self._ctx[key]


def _random_series(L, M, rng, lo=0, bound=40):
    return TruncatedSeries(L, lo, [L.from_int(rng.randint(-bound, bound)) for _ in range(M + 1 - lo)],
                           tail=Fraction(0))


# operators -----------------------------------------------------------------------


def operator_identities(ctx, count=20, seed=0, M=None):
    """Counts of violations of the four operator identities over random series."""
    rng = random.Random(seed)
    G = ctx.group
    L = G.field
    M = ctx.M if M is None else M
    pi = L.coerce(G.pi)
    q = L.from_int(G.q)
    out = {k: {"violations": 0, "compared": 0} for k in ("projection", "psi_phi", "phi_psi", "psi_dinv")}

    def record(key, pair):
        ok, n = series_check(*pair)
        out[key]["violations"] += not ok
        out[key]["compared"] += n

    for i in range(count):
        f = _random_series(L, M, rng)
        g = _random_series(L, M, rng, lo=-(i % 2))
        record("projection", (ctx.psi_apply(ctx.phi_apply(f) * g), f * ctx.psi_apply(g)))
        record("psi_phi", (ctx.psi_apply(ctx.phi_apply(f)), f.scale(q / pi)))
        record("phi_psi", (ctx.phi_apply(ctx.psi_apply(g)), ctx.trace_sum(g).scale(pi.inverse())))
        record("psi_dinv", (ctx.psi_apply(G.partial_inv(g)), G.partial_inv(ctx.psi_apply(g)).scale(pi)))
    return out


def psi_one_containment(ctx, samples):
    """Pole order at most one, integral coefficients and psi(h) = h for each sample."""
    bad = []
    for k, h in enumerate(samples):
        ok = h.pole_order() <= 1 and h.is_integral() and series_check(ctx.psi_apply(h), h)[0]
        if not ok:
            bad.append(k)
    return bad


def residual_checks(ctx, count=100, seed=0, length=12):
    """Shift congruence and valuation bound for psi on random Laurent series mod p."""
    rng = random.Random(seed)
    p = ctx.field.p
    bad = []
    for k in range(count):
        lo = rng.randint(-6, 3)
        coeffs = [rng.randrange(p) for _ in range(length)]
        rep = ctx.residual_valuation_checks(coeffs, lo)
        if rep["violations"]:
            bad.append((k, rep["violations"]))
    return bad


def suite_operators(ws):
    out = []
    for preset in ws.presets():
        ctx = ws.ctx(preset, 45)
        ids = operator_identities(ctx, count=20, seed=ws.seed)
        for name, rep in ids.items():
            out.append(CheckResult("operators", f"{name}[{preset}]", {
                "projection": "psi(phi(f) g) = f psi(g)",
                "psi_phi": "psi(phi(f)) = (q/pi) f",
                "phi_psi": "phi(psi(f)) = pi^{-1} sum_a f(a +_LT Z)",
                "psi_dinv": "psi(partial_inv f) = pi partial_inv(psi f)",
            }[name], rep["violations"] == 0 and rep["compared"] > 0, rep))
        samples = ctx.psi_one_samples(5, seed=ws.seed)
        bad = psi_one_containment(ctx, samples)
        out.append(CheckResult("operators", f"psi_one_containment[{preset}]",
                               "psi = 1 samples lie in Z^{-1} o_L[[Z]]", not bad, {"bad": bad}))
        bad = residual_checks(ctx, count=100, seed=ws.seed)
        out.append(CheckResult("operators", f"residual_psi[{preset}]",
                               "psi mod pi: shift congruence and valuation bound", not bad,
                               {"bad": bad}))
        one = TruncatedSeries.constant(ctx.field, 1, ctx.M)
        ok, n = series_check(ctx.norm_apply(TruncatedSeries.monomial(ctx.field, 1, ctx.M)),
                             TruncatedSeries.monomial(ctx.field, 1, ctx.M))
        out.append(CheckResult("operators", f"norm_of_Z[{preset}]", "N(Z) = Z", ok, {"compared": n}))
        ok, n = series_check(ctx.psi_apply(one), one)
        out.append(CheckResult("operators", f"psi_of_one[{preset}]", "psi(1) = q/pi", ok))
    return out


# formal series ------------------------------------------------------------------------


def power_recursion_oracle(imax=15, nmax=15, seed=0):
    """Mismatches between the recursion and repeated multiplication over Q."""
    rng = random.Random(seed)
    b = [Fraction(rng.randint(1, 9))] + [Fraction(rng.randint(-9, 9), rng.randint(1, 5))
                                         for _ in range(imax)]
    bad = []
    power = [Fraction(1)] + [Fraction(0)] * imax
    for n in range(0, nmax + 1):
        rec = power_coeffs(b, n, imax)
        for i in range(imax + 1):
            if rec[i] != power[i]:
                bad.append((n, i))
        power = [sum(power[k] * b[i - k] for k in range(i + 1)) for i in range(imax + 1)]
    return bad


def power_bound_check(p=3, imax=15, nmax=30, seed=0):
    """v(c_{i,n}) >= gamma_i + n v(b_0) for a random h with v(b_0) > 0, exactly over Q."""
    from .padic import vp_fraction
    rng = random.Random(seed)
    b = [Fraction(p * rng.choice([1, 2, 4, 5]))] + [Fraction(rng.randint(-20, 20) or 1, rng.choice([1, 2, 5]))
                                                  for _ in range(imax)]
    vb = [Fraction(vp_fraction(x, p)) if x else None for x in b]
    from .series import _power_bounds
    gam = _power_bounds(vb, imax, p)
    bad = []
    for n in range(1, nmax + 1):
        c = power_coeffs(b, n, imax)
        for i in range(imax + 1):
            if c[i] != 0 and vp_fraction(c[i], p) < gam[i] + n * vb[0]:
                bad.append((n, i))
    return bad


def suite_power_series(ws):
    out = []
    bad = power_recursion_oracle(seed=ws.seed)
    out.append(CheckResult("power_series", "power_coefficients",
                           "recursion for the coefficients of h^n equals repeated products over Q",
                           not bad, {"bad": bad}))
    bad = power_bound_check(ws.prime, seed=ws.seed)
    out.append(CheckResult("power_series", "power_coefficient_bound",
                           "v(c_{i,n}) >= gamma_i + n v(b_0) for n <= 30", not bad, {"bad": bad}))
    L = ws.field
    G = ws.group("gm_hat", 30)
    h = G.h_series(1, 6)
    gam = power_coeff_bounds(h, 6, L.p)
    out.append(CheckResult("power_series", "h_constant_term", "h_m(0) = eta_m", (h.coeff(0) - G.tower(1).eta).is_zero(),
                           {"gamma": gam}))
    rng = random.Random(ws.seed)
    hseries = TruncatedSeries(L, 0, [L.from_int(ws.prime)] + [L.from_int(rng.randint(-5, 5)) for _ in range(8)],
                              tail=INF, var="t")
    ok = True
    for _ in range(5):
        f = _random_series(L, 20, rng)
        g = _random_series(L, 20, rng)
        lhs = compose_small_constant(f * g, hseries, 6)
        rhs = compose_small_constant(f, hseries, 6) * compose_small_constant(g, hseries, 6)
        ok = ok and series_check(lhs, rhs)[0]
        ok = ok and series_check(compose_small_constant(f + g, hseries, 6),
                                 compose_small_constant(f, hseries, 6) + compose_small_constant(g, hseries, 6))[0]
    out.append(CheckResult("power_series", "composition_homomorphism",
                           "f -> f(h) respects sums and products when v(h(0)) > 0", ok))
    geo = TruncatedSeries(L, 0, [L.one()] * 40, tail=Fraction(0))
    c = TruncatedSeries.constant(L, ws.prime, 0, var="t")
    val = compose_small_constant(geo, c, 0).coeff(0)
    want = L.from_fraction(Fraction(1, 1 - ws.prime))
    out.append(CheckResult("power_series", "geometric_at_constant",
                           "sum Z^n at Z = p equals 1/(1 - p) to certified precision",
                           (val - want).is_zero(), {"value": val, "precision": val.precision()}))
    return out


# Coleman -------------------------------------------------------------------------------


def suite_coleman(ws):
    out = []
    for preset in ws.presets():
        ctx = ws.ctx(preset, 100)
        G = ctx.group
        for name, g in coleman.fixture_series(ctx).items():
            tag = f"{name}[{preset}]"
            try:
                u = coleman.unit_system_from_fixed_series(ctx, g, 2, name)
                d = coleman.norm_compatibility_digits(u, 1)
                out.append(CheckResult("coleman", f"norm_compatibility:{tag}",
                                       "N_{L_2/L_1}(g(eta_2)) = g(eta_1)", d is None or d >= 8,
                                       {"digits": d}))
            except LubinTateError as exc:
                out.append(CheckResult("coleman", f"norm_compatibility:{tag}",
                                       "N_{L_2/L_1}(g(eta_2)) = g(eta_1)", False, {"error": repr(exc)}))
                continue
            worst = None
            for m in (1, 2):
                for j in (1, 2, 3):
                    lam = coleman.kato_lhs_via_chain(G, u, m, j)
                    cw = coleman.coates_wiles(G, u, m, j)
                    a = lam.agreement(cw * j)
                    worst = a if worst is None or (a is not None and a < worst) else worst
            out.append(CheckResult("coleman", f"kato_chain:{tag}",
                                   "ev_{m,j}(partial_inv log g) = j psi^j_CW,m(u)",
                                   worst is None or worst >= 5, {"worst_digits": worst}))
            ok = True
            for j in (1, 2, 3):
                tr, lo = coleman.trace_relation(G, u, 1, j)
                ok = ok and (tr - lo).is_zero()
            out.append(CheckResult("coleman", f"trace_relation:{tag}",
                                   "Tr_{L_2/L_1} psi^j_CW,2 = psi^j_CW,1", ok))
            if g.order() == 0 and g.is_integral():
                try:
                    for j in (1, 2, 3):
                        coleman.base_level_value(G, u, j)
                    ok = True
                except LubinTateError:
                    ok = False
                out.append(CheckResult("coleman", f"base_level:{tag}",
                                       "Tr_{L_1/L} psi^j_CW,1 = (1 - pi^{-j}) (partial^j log g)(0)/j!", ok))
            ok = True
            for a in (2, 4):
                lhs, rhs = coleman.galois_twist_check(G, u, 1, 2, a)
                ok = ok and (lhs - rhs).is_zero()
            out.append(CheckResult("coleman", f"galois_twist:{tag}",
                                   "value for g o [a] = a^j sigma_a(value for g)", ok))
    return out


# evaluation maps -----------------------------------------------------------------------


def suite_eval(ws):
    out = []
    for preset in ws.presets():
        z = 160 if preset != "gm_hat" else 120
        ctx = ws.ctx(preset, z)
        G = ctx.group
        samples = ctx.psi_one_samples(5, seed=ws.seed)
        worst = None
        for h in samples:
            for m in (1, 2):
                for j in (1, 2, 3, 4):
                    a = ev.ev_mj_def(G, h, m, j).agreement(ev.ev_mj_explicit(G, h, m, j))
                    worst = a if worst is None or (a is not None and a < worst) else worst
        out.append(CheckResult("eval", f"two_route[{preset}]",
                               "coefficient of t^{j-1} in pi^{-m} phi^{-m}(f) = "
                               "(partial_inv^{j-1} f)(eta_m)/((j-1)! pi^{mj})",
                               worst is None or worst >= 5, {"worst_digits": worst}))
        L = G.field
        for label, f in (("Z", TruncatedSeries.monomial(L, 1, 60)),
                         ("Z^-1", TruncatedSeries(L, -1, [L.one()] + [L.zero()] * 61, tail=INF))):
            rep = ev.invphi_commutation_check(G, f, 1, 6)
            out.append(CheckResult("eval", f"invphi_commutation:{label}[{preset}]",
                                   "d/dt phi^{-m}(f) = pi^{-m} phi^{-m}(partial_inv f)", rep["ok"],
                                   {"violations": rep["violations"]}))
        rep = ev.galois_equivariance_check(G, samples[0], 1, 2)
        out.append(CheckResult("eval", f"galois_equivariance[{preset}]",
                               "sigma_a(ev_{1,j}(f)) = explicit route at [a](eta_1)", rep["ok"],
                               {"violations": rep["violations"]}))
    L = ws.field
    rng = random.Random(ws.seed)
    ok = True
    for j in (1, 2, 3):
        for _ in range(5):
            f = TruncatedSeries(L, -2, [L.from_int(rng.randint(-9, 9)) for _ in range(7)], tail=INF, var="t")
            ok = ok and ev.descent_factorial_check(f, ws.prime, 1, j)["ok"]
    out.append(CheckResult("eval", "descent_factorial",
                           "constant term of phi^{-m} d^{j+1}(t^{j+1} f) = (j+1)! constant term of phi^{-m}(f)",
                           ok))
    return out


# distributions --------------------------------------------------------------------------


def suite_distributions(ws):
    out = []
    rows = []
    for p in (3, 5):
        Q = rational_field(p, 20)
        G = build_formal_group(Q, "gm_hat", z_order=12)
        for m in (1, 2):
            T = dist.CharacterTable(G, m)
            for rho in dist.characters(p, m):
                if rho.is_trivial:
                    continue
                lhs, rhs = dist.gauss_identity(T, rho)
                a = lhs.agreement(rhs)
                rows.append((p, m, str(rho), a))
    ok = all(a is None or a >= 8 for *_, a in rows)
    out.append(CheckResult("distributions", "gauss_identity",
                           "tau(rho) tau(rho^{-1}) rho(-1) = q^{a(rho)}", ok, {"rows": rows}))
    G = ws.group("gm_hat", 60)
    ctx = ws.ctx("gm_hat", 60)
    T1 = dist.CharacterTable(G, 1)
    T2 = dist.CharacterTable(G, 2)
    rng = random.Random(ws.seed)
    bad = 0
    for _ in range(10):
        mu = dist.FiniteMeasure.random(ws.prime, 2, rng)
        for rho in dist.characters(ws.prime, 2):
            if rho.conductor == 2:
                a, b = dist.character_value_check(T2, mu, rho)
                bad += not (a - b).is_zero()
    out.append(CheckResult("distributions", "evaluate",
                           "mu(rho) = [L_n:L] tau(rho)^{-1} e_rho Mellin(mu)(eta_n)", bad == 0,
                           {"violations": bad}))
    ok = all(dist.tw_derivative_check(G, dist.FiniteMeasure.random(ws.prime, n, rng))["ok"]
             for n in (1, 2) for _ in range(5))
    out.append(CheckResult("distributions", "twist_derivative",
                           "partial_inv Mellin(mu) = Mellin(a mu(a))", ok))
    ok = True
    for alpha in (Fraction(2), Fraction(1 + ws.prime)):
        line = dist.CrisLine(alpha)
        for _ in range(3):
            mu = dist.FiniteMeasure.random(ws.prime, 2, rng)
            ok = ok and all((g - w).is_zero() for _, g, w in dist.evn_diagram_check(T2, line, mu))
            x = dist.GeometricSolution(G, mu, line)
            for n, m in ((2, 1), (1, 0)):
                a, b = dist.ev_trace_relation(G, line, x, n, m)
                ok = ok and (a - b).is_zero()
        y = G.tower(2).eta ** 3 + G.tower(2).from_int(2)
        ok = ok and all((a - b).is_zero() for _, a, b in dist.theta_compatibility(T2, T1, line, y))
    out.append(CheckResult("distributions", "ev_theta",
                           "Theta(q^{-n} Ev_n(x)) = pr(mu); trace relation; level compatibility", ok))
    ok = all(dist.ell_factor(k, j) == dist.ell_factor(k, j, "product")
             for k in range(7) for j in range(-10, 11))
    out.append(CheckResult("distributions", "ell_factor",
                           "closed case split = prod_{i<k} (j - i)", ok))
    worst = None
    fx = coleman.fixture_series(ctx)
    for name in ("Z", "iterate", "[2]/Z"):
        g = fx[name]
        for rho in dist.characters(ws.prime, 1):
            if rho.is_trivial and name == "Z":
                continue
            for j in (1, 2):
                a, b = dist.reg_twist_eval(ctx, T1, g, rho, j)
                d = a.agreement(b)
                worst = d if worst is None or (d is not None and d < worst) else worst
    out.append(CheckResult("distributions", "regulator_twist",
                           "character value of the regulator measure, both routes",
                           worst is None or worst >= 5, {"worst_digits": worst}))
    return out


# residues ---------------------------------------------------------------------------------


def suite_residue(ws):
    out = []
    W = list(range(-1, 11))
    D = list(range(-11, 1))
    r = res.rank_mod_prime_power(res.gram_matrix_mod(W, D, 3, 5), 3, 5)
    out.append(CheckResult("residue", "gram_rank", "pairing Gram matrix has full rank mod 3^5",
                           r == len(W), {"rank": r}))
    G = ws.group("gm_hat", 40)
    ctx = ws.ctx("gm_hat", 40)
    L1 = G.tower(1)
    u = coleman.unit_system_from_fixed_series(ctx, TruncatedSeries.polynomial(G.field, [1, 1], 40), 2, "eps")
    ok = True
    vals = []
    for a in (G.field.from_int(1 + ws.prime), (L1.eta + L1.one()) * (1 + ws.prime),
              L1.one() + L1.eta ** 2):
        r1, t1 = res.iwasawa_rhs(a, u, 1, 1, G)
        r2, t2 = res.iwasawa_rhs(a, u, 2, 1, G)
        ok = ok and r1 == r2 and (t1 - t2).is_zero()
        vals.append(r1)
    out.append(CheckResult("residue", "iwasawa_rhs", "integral and stable in the level", ok,
                           {"classes": vals}))
    ok = True
    for p in (3, 5):
        for m in (1, 2):
            try:
                ok = ok and res.invariant_scalar(p, m, 1 + p ** m).valuation() == 0
            except LubinTateError:
                ok = False
    out.append(CheckResult("residue", "invariant_scalar", "log(chi(gamma_m))/p^m is a unit", ok))
    return out


RUNNERS = {
    "operators": suite_operators,
    "power_series": suite_power_series,
    "coleman": suite_coleman,
    "eval": suite_eval,
    "distributions": suite_distributions,
    "residue": suite_residue,
}


def run_suite(name, ws):
    name = ALIASES.get(name, name)
    try:
        return RUNNERS[name](ws)
    except LubinTateError as exc:
        return [CheckResult(name, "suite", "suite completed", False,
                            {"error": type(exc).__name__, "message": str(exc), "exit_code": exc.exit_code})]
