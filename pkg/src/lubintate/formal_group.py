"""Lubin-Tate formal groups and their division towers.

Given a Frobenius polynomial f (f = pi Z + ... , f = Z^q mod pi) everything
is built by successive approximation against f, using the coefficient
table B[j][k] = [Z^k] f(Z)^j:

* [a](Z) from f([a]) = [a](f), solved for c_k through c_k (pi - pi^k);
* log_LT from log(f(Z)) = pi log(Z);
* u = dF/dY(Z, 0) from u(f(Z)) = f'(Z) u(Z) / pi, which only divides by the
  units pi^k - 1;
* F(X, Y) degree by degree from f(F) = F(f, f).
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from .errors import (
    ConvergenceDomain,
    LevelMismatch,
    NotAFrobeniusSeries,
    NotCyclotomic,
    PrecisionExhausted,
)
from .padic import (
    EXACT,
    PadicElement,
    TowerField,
    _build,
    rational_field,
    unit_element,
    units_mod,
)
from .series import INF, TruncatedSeries, _series_mul, reversion

PRESETS = ("gm_hat", "basic")


# --------------------------------------------------------------------------
# polynomials over a field (lists of elements, constant term first)


def poly_eval(P, x):
    K = x.field
    acc = K.zero()
    for c in reversed(P):
        acc = acc * x + K.coerce(c)
    return acc


def poly_mul(P, Q):
    out = [None] * (len(P) + len(Q) - 1)
    for i, a in enumerate(P):
        for j, b in enumerate(Q):
            t = a * b
            out[i + j] = t if out[i + j] is None else out[i + j] + t
    return out


def poly_compose(P, Q):
    """P(Q(X)) for exact polynomials."""
    acc = [P[-1]]
    for c in reversed(P[:-1]):
        acc = poly_mul(acc, Q)
        acc[0] = acc[0] + c
    return acc


def poly_divexact(P, Q):
    """Quotient of P by the monic polynomial Q; raises if the remainder is nonzero."""
    P = list(P)
    dq = len(Q) - 1
    out = [None] * (len(P) - dq)
    for k in range(len(P) - 1, dq - 1, -1):
        t = P[k]
        out[k - dq] = t
        for i in range(dq + 1):
            P[k - dq + i] = P[k - dq + i] - t * Q[i]
    if any(not P[i].is_zero() for i in range(dq)):
        raise PrecisionExhausted("division polynomial is not exact")
    return out


def poly_derivative(P):
    return [P[i].scale_int(i) for i in range(1, len(P))]


def _strip(P):
    P = list(P)
    while len(P) > 1 and P[-1].is_zero() and P[-1].prec >= EXACT:
        P.pop()
    return P


# --------------------------------------------------------------------------
# bivariate truncated polynomials as dicts {(i, j): element}


def _bmul(A, B, D):
    out = {}
    for (i, j), a in A.items():
        for (k, l), b in B.items():
            if i + j + k + l <= D:
                key = (i + k, j + l)
                t = a * b
                out[key] = out[key] + t if key in out else t
    return out


def _badd(A, B):
    out = dict(A)
    for k, v in B.items():
        out[k] = out[k] + v if k in out else v
    return out


def _bscale(A, c):
    return {k: v * c for k, v in A.items()}


# --------------------------------------------------------------------------


class FormalGroup:
    """A Lubin-Tate formal group over L attached to a Frobenius polynomial."""

    def __init__(self, L, frobenius, z_order=40, bidegree=12, digits=None, label=None):
        self.field = L
        self.q = L.q
        self.pi = L.pi
        self.digits = L.digits if digits is None else digits
        self.M = z_order
        self.M2 = min(bidegree, z_order)
        self.label = label or "custom"
        f = [L.coerce(c) if not isinstance(c, (list, tuple)) else L.element(c) for c in frobenius]
        self.frobenius = _strip(f)
        self._check_frobenius()
        self.is_cyclotomic = self._detect_cyclotomic()
        self._towers = {}
        self._endo = {}
        self._translates = {}
        self._h = {}
        self._build_tables()

    # validation -----------------------------------------------------------

    def _check_frobenius(self):
        f = self.frobenius
        L = self.field
        q = self.q
        if len(f) < 2 or not f[0].is_zero():
            raise NotAFrobeniusSeries("Frobenius series must have zero constant term")
        if not (f[1] - self.pi).is_zero():
            raise NotAFrobeniusSeries("linear coefficient must equal the uniformizer")
        for k, c in enumerate(f):
            if k == q:
                if not (c - L.one()).is_zero() and (c - L.one())._vu() < L.E // L.e:
                    raise NotAFrobeniusSeries("coefficient of Z^q must be 1 mod pi")
            elif not c.is_zero() and c._vu() < L.E // L.e:
                raise NotAFrobeniusSeries(f"coefficient of Z^{k} is not divisible by pi")
        if len(f) - 1 != q or not (f[-1] - L.one()).is_zero():
            # the division tower is built from the monic degree-q polynomial
            raise NotAFrobeniusSeries("Frobenius polynomial must be monic of degree q")

    def _detect_cyclotomic(self):
        L = self.field
        p = L.p
        if L.degree != 1 or not (self.pi - L.from_int(p)).is_zero():
            return False
        target = [math.comb(p, k) for k in range(p + 1)]
        target[0] = 0
        return len(self.frobenius) == p + 1 and all(
            (c - L.from_int(t)).is_zero() for c, t in zip(self.frobenius, target))

    # tables ---------------------------------------------------------------

    def frobenius_series(self, M=None, var="Z"):
        M = self.M if M is None else M
        return TruncatedSeries.polynomial(self.field, self.frobenius, M, var)

    def frobenius_eval(self, x):
        return poly_eval(self.frobenius, x)

    def _build_tables(self):
        L = self.field
        M = self.M
        fs = self.frobenius_series(M)
        rows = [[L.one()] + [L.zero()] * M]
        power = TruncatedSeries.constant(L, 1, M)
        for j in range(1, M + 1):
            power = _series_mul(power, fs).truncate(M)
            rows.append([power.coeff(k) for k in range(M + 1)])
        self.B = rows
        self._pi_pows = [L.one()]
        for _ in range(M + 1):
            self._pi_pows.append(self._pi_pows[-1] * self.pi)
        self.u_series = self._solve_u()
        self.g_series = self.u_series.inverse()
        self.log_series = self.g_series.integral()
        self.exp_series = reversion(self.log_series)
        self.group_law = self._solve_group_law()

    def _solve_u(self):
        L = self.field
        M = self.M
        f = self.frobenius
        # d = (f' - pi)/pi, exact
        d = [L.zero()] * (M + 1)
        for i in range(2, len(f)):
            if i - 1 <= M:
                d[i - 1] = f[i].scale_int(i) / self.pi
        u = [L.one()]
        B = self.B
        for k in range(1, M + 1):
            acc = L.zero()
            for r in range(1, k + 1):
                if not d[r].is_zero():
                    acc = acc + d[r] * u[k - r]
            for j in range(1, k):
                b = B[j][k]
                if not b.is_zero():
                    acc = acc - u[j] * b
            u.append(acc / (self._pi_pows[k] - L.one()))
        return TruncatedSeries(L, 0, u, tail=Fraction(0))

    def log_by_recursion(self):
        """log_LT from log(f(Z)) = pi log(Z), independent of u."""
        L = self.field
        B = self.B
        logc = [L.zero(), L.one()]
        for k in range(2, self.M + 1):
            acc = L.zero()
            for j in range(1, k):
                b = B[j][k]
                if not b.is_zero():
                    acc = acc + logc[j] * b
            logc.append(acc / (self.pi - self._pi_pows[k]))
        return TruncatedSeries(L, 0, logc, tail=None)

    def _solve_group_law(self):
        L = self.field
        D = self.M2
        f = self.frobenius
        B = self.B
        F = {(1, 0): L.one(), (0, 1): L.one()}
        for d in range(2, D + 1):
            # degree-d part of F_{<d}(f(X), f(Y))
            lhs = {}
            for (i, j), c in F.items():
                for a in range(i, d - j + 1):
                    b = d - a
                    if b < j or a > self.M or b > self.M:
                        continue
                    t = B[i][a] * B[j][b]
                    if not t.is_zero():
                        key = (a, b)
                        lhs[key] = lhs[key] + c * t if key in lhs else c * t
            # degree-d part of sum_{i>=2} f_i F_{<d}^i
            power = F
            for i in range(2, len(f)):
                power = _bmul(power, F, d)
                if f[i].is_zero():
                    continue
                for key, v in power.items():
                    if key[0] + key[1] == d:
                        t = v * f[i]
                        lhs[key] = lhs[key] - t if key in lhs else -t
            denom = self.pi - self._pi_pows[d]
            for key, v in lhs.items():
                if not v.is_zero() or v.prec < EXACT:
                    F[key] = v / denom
        return F

    def group_law_via_log(self):
        """exp(log X + log Y) as a bivariate polynomial, for cross-checking."""
        L = self.field
        D = self.M2
        S = {}
        for k in range(1, D + 1):
            c = self.log_series.coeff(k)
            S[(k, 0)] = c
            S[(0, k)] = c
        out = {}
        power = {(0, 0): L.one()}
        for k in range(1, D + 1):
            power = _bmul(power, S, D)
            out = _badd(out, _bscale(power, self.exp_series.coeff(k)))
        return out

    # endomorphisms --------------------------------------------------------

    def endomorphism(self, a, M=None, method="auto"):
        """[a](Z) as a truncated series over L."""
        L = self.field
        a = unit_element(L, a) if not isinstance(a, PadicElement) else L.coerce(a)
        M = self.M if M is None else min(M, self.M)
        if method == "log":
            return self._endo_by_log(a, M)
        key = (tuple(a.c), a.s, a.prec, M)
        s = self._endo.get(key)
        if s is None:
            if self.is_cyclotomic and a.prec >= EXACT and a.s >= 0 and method == "auto":
                s = self._endo_cyclotomic(a.to_fraction().numerator, M)
            else:
                s = self._endo_by_approximation(a, M)
            self._endo[key] = s
        return s

    def _endo_cyclotomic(self, a, M):
        L = self.field
        coeffs = [L.zero()] + [L.from_int(math.comb(a, k)) for k in range(1, M + 1)]
        return TruncatedSeries(L, 0, coeffs, tail=INF if a <= M else Fraction(0))

    def _endo_by_approximation(self, a, M):
        L = self.field
        f = self.frobenius
        B = self.B
        pi = self.pi
        K = L
        exact = a.prec >= EXACT and all(c.prec >= EXACT for c in f)
        if exact and L.degree == 1:
            # every step divides by pi; run at raised precision and cap once
            K = rational_field(L.p, self.digits + M + 2)
            f = [_recast(c, K) for c in f]
            B = [[_recast(b, K) for b in row] for row in B]
            a = _recast(a, K)
            pi = _recast(pi, K)
        pi_pows = [K.one()]
        for _ in range(M + 1):
            pi_pows.append(pi_pows[-1] * pi)
        deg = len(f) - 1
        c = [K.zero(), a]
        # powers[i][k] = [Z^k] [a](Z)^i for 2 <= i <= deg
        powers = {i: [K.zero()] * (M + 1) for i in range(1, deg + 1)}
        powers[1][1] = a
        for k in range(2, M + 1):
            for i in range(2, deg + 1):
                acc = K.zero()
                prev = powers[i - 1]
                for l in range(1, k - i + 2):
                    if not c[l].is_zero() and not prev[k - l].is_zero():
                        acc = acc + c[l] * prev[k - l]
                powers[i][k] = acc
            rhs = K.zero()
            for j in range(1, k):
                b = B[j][k]
                if not b.is_zero() and not c[j].is_zero():
                    rhs = rhs + c[j] * b
            for i in range(2, deg + 1):
                if not f[i].is_zero():
                    rhs = rhs - f[i] * powers[i][k]
            ck = rhs / (pi - pi_pows[k])
            c.append(ck)
            powers[1][k] = ck
        if K is not L:
            c = [_recast(x, L, self.digits) for x in c]
        return TruncatedSeries(L, 0, c, tail=Fraction(0))

    def _endo_by_log(self, a, M):
        scaled = self.log_series.truncate(M).scale(a)
        return self.exp_series.truncate(M).compose(scaled)

    def endomorphism_at(self, a, x):
        """[a](x) for a division point x of its tower field (refined to full precision)."""
        K = x.field
        if self.is_cyclotomic:
            a_int = a.to_fraction() if isinstance(a, PadicElement) else Fraction(a)
            if a_int.denominator == 1 and a_int >= 0:
                return (K.one() + x) ** int(a_int) - K.one()
        n = K.level
        order = K.E * (n + 3)
        series = self.endomorphism(a, M=min(order, self.M))
        approx = series.evaluate(x)
        return self._refine_root(self.division_polynomial(n), approx)

    def _refine_root(self, P, y):
        K = y.field
        Pk = [K.coerce(c) for c in P]
        dP = poly_derivative(Pk)
        full = K.E * self.digits
        for _ in range(12):
            y = _build(K, list(y.c), y.s, full)
            val = poly_eval(Pk, y)
            der = poly_eval(dP, y)
            if val.is_zero():
                break
            y = y - val / der
        val = poly_eval(Pk, _build(K, list(y.c), y.s, full))
        der = poly_eval(dP, y)
        vd = der._vu()
        vv = val._vu()
        if vv <= 2 * vd:
            raise PrecisionExhausted("Newton refinement of a division point did not converge")
        return _build(K, list(y.c), y.s, min(full, vv - vd))

    # towers ---------------------------------------------------------------

    @lru_cache(maxsize=None)
    def division_polynomial(self, n):
        """f_n = [pi^n](X) / [pi^{n-1}](X) over o_L, exactly."""
        if n < 1:
            raise LevelMismatch("division polynomials start at level 1")
        f = self.frobenius
        g = f[1:]  # f(Y)/Y
        if n == 1:
            return list(g)
        inner = list(f)
        for _ in range(n - 2):
            inner = poly_compose(f, inner)
        return _strip(poly_compose(g, inner))

    def tower(self, n):
        T = self._towers.get(n)
        if T is None:
            if n < 1:
                return self.field
            T = TowerField(self.field, self, n, self.division_polynomial(n), self.digits)
            self._towers[n] = T
            for m in range(1, n):
                T.register_subfield(self.tower(m))
        return T

    def torsion_level_one(self):
        """LT_1 = {0} and [omega](eta_1) for Teichmuller representatives omega."""
        L1 = self.tower(1)
        L = self.field
        pts = [L1.zero()]
        for key in _residue_units(L):
            pts.append(L1.galois_image_eta(key))
        return pts

    def tower_torsion(self, n):
        return self.division_polynomial(n), self.tower(n), self.torsion_level_one()

    # group law -------------------------------------------------------------

    def formal_add(self, x, y):
        """x +_LT y for elements of positive valuation or series of positive order."""
        if isinstance(x, TruncatedSeries) or isinstance(y, TruncatedSeries):
            return self._formal_add_series(x, y)
        K = x.field if isinstance(x, PadicElement) else y.field
        x, y = K.coerce(x), K.coerce(y)
        if x.is_zero() and x.prec >= EXACT:
            return y
        if y.is_zero() and y.prec >= EXACT:
            return x
        vx, vy = x._vu(), y._vu()
        if vx <= 0 or vy <= 0:
            raise ConvergenceDomain("formal addition needs positive valuations")
        D = self.M2
        xp = [K.one()]
        yp = [K.one()]
        for _ in range(D):
            xp.append(xp[-1] * x)
            yp.append(yp[-1] * y)
        acc = K.zero()
        for (i, j), c in self.group_law.items():
            acc = acc + K.coerce(c) * xp[i] * yp[j]
        return acc.add_bigoh((D + 1) * min(vx, vy))

    def _formal_add_series(self, x, y):
        S = x if isinstance(x, TruncatedSeries) else y
        ring = S.ring
        M = S.M

        def as_series(v):
            if isinstance(v, TruncatedSeries):
                return v
            return TruncatedSeries.constant(ring, v, M, S.var)

        xs, ys = as_series(x), as_series(y)
        if xs.order() is not None and xs.order() < 1 or ys.order() is not None and ys.order() < 1:
            raise ConvergenceDomain("formal addition of series needs positive order")
        ox = xs.order() or M + 1
        oy = ys.order() or M + 1
        K = min((self.M2 + 1) * min(ox, oy) - 1, xs.M, ys.M)
        xs, ys = xs.truncate(K), ys.truncate(K)
        xp = [TruncatedSeries.constant(ring, 1, K, S.var)]
        yp = [TruncatedSeries.constant(ring, 1, K, S.var)]
        for _ in range(self.M2):
            xp.append((xp[-1] * xs).truncate(K))
            yp.append((yp[-1] * ys).truncate(K))
        acc = TruncatedSeries(ring, 0, [ring.zero()] * (K + 1), tail=INF, var=S.var)
        for (i, j), c in self.group_law.items():
            acc = acc + (xp[i] * yp[j]).scale(ring.coerce(c)).truncate(K)
        return acc.truncate(K)

    def translate(self, a, M=None):
        """tau_a(Z) = a +_LT Z for a division point a, by Newton on f(X) = f(Z)."""
        M = self.M if M is None else M
        K = a.field
        key = (id(K), tuple(a.c), a.s, M)
        cached = self._translates.get(key)
        if cached is not None:
            return cached
        if a.is_zero():
            s = TruncatedSeries.variable(K, M)
            self._translates[key] = s
            return s
        f = [K.coerce(c) for c in self.frobenius]
        df_over_pi = [c / K.coerce(self.pi) for c in poly_derivative(f)]
        target = self.frobenius_series(M).change_ring(K)
        X = self._newton_series(K, M, a, f, df_over_pi, target, self.pi, var="Z")
        self._translates[key] = X
        return X

    def _newton_series(self, K, M, x0, f, df_scaled, target, scale, var):
        """Solve f(X) = target for X(0) = x0; f'(X)/scale must be a unit at x0."""
        full = K.E * self.digits
        scale = K.coerce(scale)
        fs = TruncatedSeries.polynomial(K, f, max(M, len(f) - 1), var)
        dfs = TruncatedSeries.polynomial(K, df_scaled, max(M, len(df_scaled) - 1), var)
        X = TruncatedSeries(K, 0, [x0] + [K.zero()] * M, tail=INF, var=var)
        k = 1
        while True:
            X = _refresh(X, full)
            resid = (_poly_compose_series(fs, X) - target).truncate(M)
            if k > M and resid.is_zero():
                break
            der = _poly_compose_series(dfs, X).truncate(M)
            corr = (resid.scale(scale.inverse()) * der.inverse()).truncate(M)
            X = (X - corr).truncate(M)
            if k > M:
                break
            k *= 2
        X = _refresh(X, full)
        resid = (_poly_compose_series(fs, X) - target).truncate(M)
        # X* - X = -resid / f'(X) (1 + ...): certify every coefficient accordingly
        der = _poly_compose_series(dfs, X).truncate(M)
        loss = scale._vu() + der.coeff(0)._vu()
        worst = min((c._vu() for c in resid.coeffs), default=full)
        prec = min(full, worst - loss)
        if prec <= 0:
            raise PrecisionExhausted("Newton iteration lost all precision")
        coeffs = [c.add_bigoh(prec) for c in X.coeffs]
        return TruncatedSeries(K, 0, coeffs, tail=Fraction(0) if var == "Z" else None, var=var)

    def h_series(self, m, T):
        """h_m(t) = eta_m +_LT exp_LT(t / pi^m) over L_m, to t-order T.

        Solved from [pi^m](h) = exp_LT(t) with h(0) = eta_m.
        """
        key = (m, T)
        h = self._h.get(key)
        if h is not None:
            return h
        Lm = self.tower(m)
        eta = Lm.eta
        fm = list(self.frobenius)
        for _ in range(m - 1):
            fm = poly_compose(self.frobenius, fm)
        fm = [Lm.coerce(c) for c in fm]
        dfm = poly_derivative(fm)
        scale = Lm.coerce(self.pi) ** m
        dfm = [c / scale for c in dfm]
        target = self.exp_series.truncate(T).relabel("t").change_ring(Lm)
        h = self._newton_series(Lm, T, eta, fm, dfm, target, scale, var="t")
        if not (h.coeff(0) - eta).is_zero():
            raise PrecisionExhausted("constant term of h differs from eta_m")
        self._h[key] = h
        return h

    # invariant derivative ---------------------------------------------------

    def partial_inv(self, f, k=1):
        """Apply the invariant derivative g_LT^{-1} d/dZ (d/dt on t-series) k times."""
        for _ in range(k):
            if f.var == "t":
                f = f.derivative()
            else:
                u = self.u_series.change_ring(f.ring) if f.ring is not self.field else self.u_series
                f = f.derivative() * u.truncate(max(f.M, 0) + 1)
        return f

    def t_lt(self, M=None):
        M = self.M if M is None else M
        return self.log_series.truncate(M)

    def log_exp_lt(self):
        return self.log_series, self.exp_series, self.g_series


def _recast(x, K, digits=None):
    """Move an element between two degree-one fields over the same prime."""
    prec = x.prec
    if digits is not None and any(x.c):
        prec = min(prec, x._vu() + K.E * digits)
    return _build(K, list(x.c), x.s, prec)


def _refresh(X, prec):
    """Same representatives, read at absolute precision ``prec``."""
    K = X.ring
    return TruncatedSeries(K, X.lo, [_build(K, list(c.c), c.s, prec) if any(c.c)
                                     else K.zero(prec) for c in X.coeffs],
                           tail=X.tail, var=X.var)


def _poly_compose_series(P, X):
    """P(X) for an exact polynomial P given as a series and any series X."""
    K = X.ring
    M = X.M
    acc = None
    for i in range(P.M, -1, -1):
        c = TruncatedSeries(K, 0, [P.coeff(i)] + [K.zero()] * M, tail=INF, var=X.var)
        acc = c if acc is None else (_series_mul(acc, X).truncate(M) + c)
    return acc


def _residue_units(L):
    """Keys of the nonzero residue classes, for level-one torsion enumeration."""
    if L.degree == 1:
        return list(range(1, L.p))
    keys = []
    for tup in units_mod(L, 1):
        keys.append(tup)
    return keys


# --------------------------------------------------------------------------
# construction front end


def frobenius_preset(L, name):
    p = L.p
    if name == "gm_hat":
        if L.degree != 1 or not (L.pi - L.from_int(p)).is_zero():
            raise NotCyclotomic("gm_hat needs L = Q_p with pi = p")
        coeffs = [math.comb(p, k) for k in range(p + 1)]
        coeffs[0] = 0
        return coeffs
    if name == "basic":
        coeffs = [L.zero()] * (L.q + 1)
        coeffs[1] = L.pi
        coeffs[L.q] = L.one()
        return coeffs
    raise NotAFrobeniusSeries(f"unknown preset {name!r}")


def build_formal_group(L, frobenius="gm_hat", z_order=40, bidegree=12, digits=None):
    """A Lubin-Tate group from a preset name or an explicit coefficient list."""
    if isinstance(frobenius, str):
        label = frobenius
        frobenius = frobenius_preset(L, frobenius)
    else:
        label = "custom"
    return FormalGroup(L, frobenius, z_order=z_order, bidegree=bidegree, digits=digits,
                       label=label)


def formal_add(G, x, y):
    return G.formal_add(x, y)


def log_exp_lt(G):
    return G.log_exp_lt()


def partial_inv(G, f, k=1):
    return G.partial_inv(f, k)


def tower_torsion(G, n):
    return G.tower_torsion(n)
