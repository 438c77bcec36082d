"""The operators phi, psi and the Coleman norm N on truncated series.

psi is computed as (1/pi) times the trace sum over level-one torsion,
followed by an inverse substitution Z -> [pi](Z).  Poles are moved out of
the way first with the projection formula
psi(Z^{-k} g) = Z^{-k} psi((phi(Z)/Z)^k g).
"""

from __future__ import annotations

import random
from fractions import Fraction

from .errors import (
    NoStabilization,
    NotAUnit,
    NotInImage,
    NotNormFixed,
    PrecisionExhausted,
    PsiOneViolation,
)
from .formal_group import poly_mul
from .padic import EXACT
from .series import INF, TruncatedSeries, _series_mul


class OperatorContext:
    """phi, psi and N for a formal group, with trace tables to Z-order M."""

    def __init__(self, group, M=None):
        self.group = group
        self.field = group.field
        self.M = group.M if M is None else min(M, group.M)
        self.level_one = group.tower(1)
        self.points = group.torsion_level_one()
        self.pi = group.pi
        self.q = group.q
        self._power_tables = None
        self._S = None
        L = self.field
        self.phi_Z = group.frobenius_series(self.M)
        self.phi_over_Z = TruncatedSeries.polynomial(L, group.frobenius[1:], self.M)
        # v(eta_1) in units of the base field
        self.v_eta1 = Fraction(1, L.e * (self.q - 1))

    # tables ---------------------------------------------------------------

    def power_tables(self):
        """tau_a(Z)^n over L_1 for every nonzero level-one point a, n <= M."""
        if self._power_tables is None:
            M = self.M
            L1 = self.level_one
            tables = []
            for a in self.points[1:]:
                tau = self.group.translate(a, M)
                pw = [TruncatedSeries.constant(L1, 1, M)]
                for _ in range(M):
                    pw.append(_series_mul(pw[-1], tau).truncate(M))
                tables.append(pw)
            self._power_tables = tables
        return self._power_tables

    def trace_table(self):
        """S_n = sum_a tau_a(Z)^n, certified to lie in L[[Z]]."""
        if self._S is None:
            M = self.M
            L1 = self.level_one
            tables = self.power_tables()
            S = []
            for n in range(M + 1):
                row = []
                for k in range(M + 1):
                    acc = L1.one() if k == n else L1.zero()
                    for pw in tables:
                        acc = acc + pw[n].coeff(k)
                    row.append(L1.downcast(acc, 0))
                S.append(row)
            self._S = S
        return self._S

    def _tail_bound(self, f, k, M_f):
        """Lower bound (v(p) = 1) for the contribution of f_n, n > M_f, to coefficient k."""
        if f.tail == INF:
            return None
        if f.tail is None or f.loglike:
            raise PrecisionExhausted("trace sum needs a tail bound on the input")
        return f.tail + (M_f + 1 - k) * self.v_eta1

    # operators -------------------------------------------------------------

    def phi_apply(self, f):
        """f([pi](Z)); the Z-order is preserved since [pi](Z) has order one."""
        if f.var != "Z":
            raise ValueError("phi acts on Z-series")
        phiZ = TruncatedSeries.polynomial(
            f.ring, [f.ring.coerce(c) for c in self.group.frobenius], max(f.M, 1))
        out = f.compose(phiZ)
        if f.tail == INF and f.lo >= 0:
            out.tail = INF
        return out

    def trace_sum(self, f):
        """sum over a in LT_1 of f(a +_LT Z) for a power series f over L."""
        if f.lo < 0:
            return self.trace_sum_laurent(f)
        L = self.field
        S = self.trace_table()
        M_f = min(f.M, self.M)
        out = []
        for k in range(M_f + 1):
            acc = L.zero()
            for n in range(M_f + 1):
                c = f.coeff(n)
                if c.is_zero() and c.prec >= EXACT:
                    continue
                s = S[n][k]
                if s.is_zero() and s.prec >= EXACT:
                    continue
                acc = acc + L.coerce(c) * s
            b = self._tail_bound(f, k, M_f)
            if b is not None:
                acc = acc.add_bigoh(int(b * L.E))
            out.append(acc)
        tail = None
        mf = f.min_valuation()
        if mf is not None:
            tail = mf
        return TruncatedSeries(L, 0, out, tail=tail)

    def trace_sum_laurent(self, f):
        """Direct trace sum for a Laurent series: the poles are expanded around each a."""
        L = self.field
        L1 = self.level_one
        M_f = min(f.M, self.M)
        tables = self.power_tables()
        total = f.truncate(M_f).change_ring(L1)
        for pw, a in zip(tables, self.points[1:]):
            tau = pw[1]
            acc = TruncatedSeries(L1, 0, [L1.zero()] * (M_f + 1), tail=INF)
            for n in range(max(f.lo, 0), M_f + 1):
                acc = acc + pw[n].scale(L1.coerce(f.coeff(n))).truncate(M_f)
            if f.lo < 0:
                inv = tau.inverse()
                ip = inv
                for n in range(-1, f.lo - 1, -1):
                    c = f.coeff(n)
                    acc = acc + ip.scale(L1.coerce(c)).truncate(M_f)
                    if n > f.lo:
                        ip = (ip * inv).truncate(M_f)
            for k, c in enumerate(acc.coeffs):
                b = self._tail_bound(f, k, M_f)
                if b is not None:
                    acc.coeffs[k] = c.add_bigoh(int(b * L1.E))
            total = total + acc
        coeffs = [L1.downcast(c, 0) for c in total.coeffs]
        return TruncatedSeries(L, total.lo, coeffs, tail=None)

    def unsubstitute(self, P):
        """S with S([pi](Z)) = P, by repeated division by the distinguished polynomial [pi]."""
        L = self.field
        if P.lo < 0:
            raise NotInImage("unsubstitution is defined on power series")
        phi = [L.coerce(c) for c in self.group.frobenius]
        q = self.q
        M = P.M
        K = (M + 1) // q - 1
        if K < 0:
            raise PrecisionExhausted("series too short to unsubstitute")
        rem = [P.coeff(i) for i in range(M + 1)]
        digits = []
        tail = P.tail
        for k in range(K + 1):
            # rem = Q * phi + R, deg R < q
            quo = [L.zero()] * max(len(rem) - q, 1)
            rem = list(rem)
            for i in range(len(rem) - 1, q - 1, -1):
                t = rem[i]
                if t.is_zero() and t.prec >= EXACT:
                    continue
                quo[i - q] = t
                for j in range(q + 1):
                    rem[i - q + j] = rem[i - q + j] - t * phi[j]
            err = None
            if tail is not None and tail != INF:
                err = tail + ((M + 1) // q - k) * Fraction(1, L.e)
            R = rem[:q]
            if err is not None:
                R = [c.add_bigoh(int(err * L.E)) for c in R]
            for j in range(1, q):
                if not R[j].is_zero():
                    raise NotInImage(f"digit {k} has a non-constant remainder")
            digits.append(R[0])
            rem = quo
        return TruncatedSeries(L, 0, digits, tail=P.min_valuation() if P.tail is not None else None)

    def psi_apply(self, f):
        """psi(f) for a series with bounded pole order."""
        L = self.field
        if f.var != "Z":
            raise ValueError("psi acts on Z-series")
        if f.ring is not L:
            f = _to_base(f, L)
        o = f.order()
        if o is not None and o < 0:
            k = -o
            g = (f.shift_z(k) * self.phi_over_Z.truncate(f.M + k) ** k)
            return self.psi_apply(g).shift_z(-k)
        if f.lo < 0:
            f = TruncatedSeries(L, 0, f.coeffs[-f.lo:], tail=f.tail, loglike=f.loglike)
        tr = self.trace_sum(f)
        return self.unsubstitute(tr.scale(L.coerce(self.pi).inverse()))

    def psi_direct(self, f):
        """psi through the direct Laurent trace sum (no pole shift)."""
        L = self.field
        tr = self.trace_sum_laurent(f) if f.lo < 0 else self.trace_sum(f)
        tr = tr.scale(L.coerce(self.pi).inverse())
        o = tr.order()
        if o is not None and o < 0:
            k = -o
            # phi(Z)^k tr is a power series in the image of phi
            g = tr.shift_z(k) * self.phi_over_Z.truncate(tr.M + k) ** k
            return self.unsubstitute(_drop_negative(g)).shift_z(-k)
        return self.unsubstitute(_drop_negative(tr))

    def psi_col(self, f):
        return self.psi_apply(f).scale(self.pi)

    # Coleman norm -----------------------------------------------------------

    def norm_apply(self, g):
        """N(g) with phi(N(g)) = prod over a in LT_1 of g(a +_LT Z)."""
        o = g.order()
        if o is None:
            raise NotAUnit("zero series has no norm")
        if o != 0:
            # N(Z^k u) = N(Z)^k N(u) and N(Z) = Z for a monic Frobenius polynomial
            u = g.shift_z(-o)
            return self.norm_apply(u).shift_z(o)
        g0 = g.coeff(0)
        if g0._vu() != 0:
            raise NotAUnit("constant term is not a unit")
        if g.tail == INF and self.group.is_cyclotomic:
            return self._norm_cyclotomic_polynomial(g)
        return self._norm_numeric(g)

    def _norm_numeric(self, g):
        L = self.field
        L1 = self.level_one
        M = min(g.M, self.M)
        prod = g.truncate(M).change_ring(L1)
        for pw in self.power_tables():
            acc = TruncatedSeries(L1, 0, [L1.zero()] * (M + 1), tail=INF)
            for n in range(M + 1):
                c = g.coeff(n)
                if not c.is_zero():
                    acc = acc + pw[n].scale(L1.coerce(c)).truncate(M)
            for k, c in enumerate(acc.coeffs):
                b = self._tail_bound(g, k, M)
                if b is not None:
                    acc.coeffs[k] = c.add_bigoh(int(b * L1.E))
            prod = (prod * acc).truncate(M)
        P = TruncatedSeries(L, 0, [L1.downcast(c, 0) for c in prod.coeffs],
                            tail=g.min_valuation())
        return self.unsubstitute(P)

    def _norm_cyclotomic_polynomial(self, g):
        """Exact norm of a polynomial for the multiplicative group."""
        L = self.field
        L1 = self.level_one
        deg = g.M
        while deg > 0 and g.coeff(deg).is_zero() and g.coeff(deg).prec >= EXACT:
            deg -= 1
        coeffs = [L1.coerce(g.coeff(i)) for i in range(deg + 1)]
        total = None
        for a in self.points:
            zeta = L1.one() + a
            # g(zeta (1 + Z) - 1) as a polynomial in Z
            inner = [zeta - L1.one(), zeta]
            acc = [coeffs[-1]]
            for c in reversed(coeffs[:-1]):
                acc = poly_mul(acc, inner)
                acc[0] = acc[0] + c
            total = acc if total is None else poly_mul(total, acc)
        P = [L1.downcast(c, 0) for c in total]
        phi = [L.coerce(c) for c in self.group.frobenius]
        digits = []
        rem = P
        while True:
            if len(rem) <= len(phi) - 1:
                if any(not c.is_zero() for c in rem[1:]):
                    raise NotInImage("polynomial norm has a non-constant remainder")
                digits.append(rem[0])
                break
            quo, r = _polydivmod(rem, phi)
            if any(not c.is_zero() for c in r[1:]):
                raise NotInImage("polynomial norm has a non-constant remainder")
            digits.append(r[0])
            rem = quo
        return TruncatedSeries.polynomial(L, digits, max(g.M, len(digits) - 1))

    def norm_fixed_iterate(self, g0, k, digits=None):
        """N^k(g0); raises NoStabilization if N^k and N^{k+1} still differ."""
        L = self.field
        prec = int((L.digits if digits is None else digits) * L.E)
        g = g0
        for _ in range(k):
            nxt = self.norm_apply(g)
            nxt = nxt.map_coeffs(lambda c: c.add_bigoh(prec))
            nxt.tail = g0.tail
            g = nxt
        check = self.norm_apply(g).map_coeffs(lambda c: c.add_bigoh(prec))
        if not _series_agree(check, g):
            raise NoStabilization(f"norm iteration has not stabilized after {k} steps")
        return g

    def is_norm_fixed(self, g):
        return _series_agree(self.norm_apply(g), g)

    # psi = 1 elements -------------------------------------------------------

    def dlog(self, g):
        """partial_inv(g) / g."""
        return self.group.partial_inv(g) * g.inverse()

    def psi_one_sample_and_check(self, g, check_norm=True):
        """h = partial_inv(g)/g for an N-fixed g, certified psi(h) = h."""
        if check_norm and not self.is_norm_fixed(g):
            raise NotNormFixed("series is not fixed by the Coleman norm")
        h = self.dlog(g)
        if h.pole_order() > 1 or not h.is_integral():
            raise PsiOneViolation("psi = 1 element outside Z^{-1} o_L[[Z]]")
        if not _series_agree(self.psi_apply(h), h):
            raise PsiOneViolation("psi(h) differs from h")
        return h

    def endomorphism_dlog(self, a, M=None):
        """partial_inv log [a](Z) = [a]'(Z) / (g_LT(Z) [a](Z)), a psi = 1 element."""
        G = self.group
        M = self.M if M is None else M
        L = self.field
        if G.is_cyclotomic and isinstance(a, int):
            one_z = TruncatedSeries.polynomial(L, [1, 1], M + 1)
            pw = one_z ** a
            num = pw.scale(L.from_int(a))
            den = pw - TruncatedSeries.constant(L, 1, pw.M)
            return (num * den.inverse()).truncate(M)
        e = G.endomorphism(a, M=min(M + 1, G.M))
        return (G.partial_inv(e) * e.inverse()).truncate(M)

    def psi_one_samples(self, count, seed=0, M=None, units=None):
        """Random integer combinations of endomorphism dlogs plus constants (q = pi only)."""
        rng = random.Random(seed)
        L = self.field
        M = self.M if M is None else M
        p = L.p
        if units is None:
            units = [a for a in range(2, 2 * p + 2) if a % p]
        basis = [self.endomorphism_dlog(a, M) for a in units]
        constant_ok = (L.coerce(self.q) - L.coerce(self.pi)).is_zero()
        out = []
        for _ in range(count):
            acc = None
            for b in basis:
                c = rng.randint(-5, 5)
                if c:
                    term = b.scale(L.from_int(c))
                    acc = term if acc is None else acc + term
            if acc is None:
                acc = basis[0]
            if constant_ok:
                acc = acc + TruncatedSeries.constant(L, rng.randint(-5, 5), acc.M)
            out.append(acc)
        return out

    # reduction mod pi --------------------------------------------------------

    def psi_mod_pi(self, coeffs, lo):
        """psi of a Laurent series over the residue field (integer lifts), reduced mod pi.

        Returns (lo', residues) with residues as integers in [0, p) (L = Q_p)
        or tuples of residue coordinates.
        """
        L = self.field
        # a Laurent polynomial: pad with exact zeros up to the working Z-order
        pad = max(0, self.M - lo - len(coeffs) + 1)
        f = TruncatedSeries(L, lo, [L.coerce(c) for c in coeffs] + [L.zero()] * pad, tail=INF)
        r = self.psi_apply(f)
        out = []
        for c in r.coeffs:
            # stop where the residue is no longer determined
            if not (c.precision() is None or c.precision() * L.e >= 1):
                break
            out.append(_residue(c))
        return r.lo, out

    def residual_valuation_checks(self, coeffs, lo, ks=(1, 2, 3)):
        """Report on the shift congruence and the valuation bound for psi mod pi."""
        L = self.field
        q = self.q
        p = L.p
        base_lo, base = self.psi_mod_pi(coeffs, lo)
        report = {"congruence": [], "valuation": None, "violations": []}
        vf = _first_nonzero(coeffs, lo, p)
        vpsi = _first_nonzero(base, base_lo, None)
        if vf is not None:
            bound = vf // q
            ok = vpsi is None or vpsi >= bound
            report["valuation"] = {"v_f": vf, "v_psi": vpsi, "bound": bound, "ok": ok}
            if not ok:
                report["violations"].append("valuation")
        for k in ks:
            shifted_lo = lo - q * k
            s_lo, s_vals = self.psi_mod_pi(coeffs, shifted_lo)
            # Z^k psi(Z^{-qk} f)
            s_lo += k
            ok = _residue_series_equal(base_lo, base, s_lo, s_vals)
            report["congruence"].append({"k": k, "ok": ok})
            if not ok:
                report["violations"].append(f"congruence k={k}")
        return report


# --------------------------------------------------------------------------
# helpers


def _to_base(f, L):
    src = f.ring
    if hasattr(src, "downcast"):
        return f.map_coeffs(lambda c: src.downcast(c, 0), L)
    return f.change_ring(L)


def _drop_negative(f):
    if f.lo >= 0:
        return f
    for c in f.coeffs[:-f.lo]:
        if not c.is_zero():
            raise NotInImage("unexpected pole")
    return TruncatedSeries(f.ring, 0, f.coeffs[-f.lo:], tail=f.tail, loglike=f.loglike)


def _series_agree(a, b):
    """Coefficientwise agreement on the common window at certified precision."""
    lo = min(a.lo, b.lo)
    hi = min(a.M, b.M)
    for i in range(lo, hi + 1):
        if not (a.coeff(i) - b.coeff(i)).is_zero():
            return False
    return True


def series_check(a, b, min_digits=1):
    """(agree, compared): compared counts coefficients known to at least ``min_digits``."""
    lo = min(a.lo, b.lo)
    hi = min(a.M, b.M)
    compared = 0
    for i in range(lo, hi + 1):
        d = a.coeff(i) - b.coeff(i)
        if not d.is_zero():
            return False, compared
        prec = d.precision()
        if prec is None or prec >= min_digits:
            compared += 1
    return True, compared


def series_agreement_digits(a, b):
    """Minimal certified valuation of a - b over the common window."""
    lo = min(a.lo, b.lo)
    hi = min(a.M, b.M)
    best = None
    for i in range(lo, hi + 1):
        d = a.coeff(i) - b.coeff(i)
        v = d.valuation_bound()
        if v is None:
            continue
        best = v if best is None else min(best, v)
    return best


def _polydivmod(P, Q):
    P = list(P)
    dq = len(Q) - 1
    quo = [None] * (len(P) - dq)
    for k in range(len(P) - 1, dq - 1, -1):
        t = P[k]
        quo[k - dq] = t
        for i in range(dq + 1):
            P[k - dq + i] = P[k - dq + i] - t * Q[i]
    return quo, P[:dq]


def _residue(c):
    if c._vu() < 0 and not c.is_zero():
        raise PrecisionExhausted("coefficient is not integral")
    r = c.residue()
    return r[0] if len(r) == 1 else r


def _first_nonzero(vals, lo, p):
    for i, v in enumerate(vals):
        if isinstance(v, tuple):
            if any(v):
                return lo + i
        elif (v % p if p else v):
            return lo + i
    return None


def _residue_series_equal(lo1, a, lo2, b):
    hi = min(lo1 + len(a), lo2 + len(b)) - 1
    lo = min(lo1, lo2)

    def get(lo_, arr, i):
        if i < lo_:
            return 0
        v = arr[i - lo_]
        return v if not isinstance(v, tuple) or any(v) else 0

    for i in range(lo, hi + 1):
        x, y = get(lo1, a, i), get(lo2, b, i)
        if (x or 0) != (y or 0):
            return False
    return True


def phi_apply(ctx, f):
    return ctx.phi_apply(f)


def trace_sum(ctx, f):
    return ctx.trace_sum(f)


def unsubstitute(ctx, P):
    return ctx.unsubstitute(P)


def psi_apply(ctx, f):
    return ctx.psi_apply(f)


def norm_apply(ctx, g):
    return ctx.norm_apply(g)


def norm_fixed_iterate(ctx, g0, k, digits=None):
    return ctx.norm_fixed_iterate(g0, k, digits)


def psi_one_sample_and_check(ctx, g):
    return ctx.psi_one_sample_and_check(g)


def residual_valuation_checks(ctx, coeffs, lo, ks=(1, 2, 3)):
    return ctx.residual_valuation_checks(coeffs, lo, ks)
