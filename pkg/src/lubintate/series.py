"""Truncated power and Laurent series over a p-adic coefficient field.

A series stores the coefficients of Z^lo, ..., Z^M; everything above M is
unknown except for an optional bound ``tail`` on the valuations of the
missing coefficients (``math.inf`` for polynomials, ``None`` when nothing
is known).  With ``loglike`` set the bound degrades like a logarithm: the
coefficient of Z^n has valuation at least ``tail - floor(log_p n)``.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction

from .errors import (
    DivergentComposition,
    LevelMismatch,
    NotInvertible,
    PrecisionExhausted,
)
from .padic import EXACT, PadicElement, _build, vp_int

INF = math.inf
VARIABLES = ("Z", "t")


def _ilog(n, p):
    k = 0
    while n >= p:
        n //= p
        k += 1
    return k


class TruncatedSeries:
    __slots__ = ("ring", "lo", "coeffs", "tail", "loglike", "var")

    def __init__(self, ring, lo, coeffs, tail=None, var="Z", loglike=False):
        if var not in VARIABLES:
            raise ValueError(f"unknown variable {var!r}")
        coeffs = list(coeffs)
        # exact zeros below the first nonzero term carry no information
        k = 0
        while k < len(coeffs) - 1 and coeffs[k].prec >= EXACT and not any(coeffs[k].c):
            k += 1
        if k:
            coeffs = coeffs[k:]
            lo += k
        self.ring = ring
        self.lo = lo
        self.coeffs = coeffs
        self.tail = tail
        self.loglike = loglike
        self.var = var

    # construction ---------------------------------------------------------

    @classmethod
    def from_list(cls, ring, values, lo=0, M=None, tail=INF, var="Z"):
        vals = [ring.coerce(v) for v in values]
        if M is not None:
            if M + 1 - lo > len(vals):
                vals += [ring.zero()] * (M + 1 - lo - len(vals))
            else:
                if M + 1 - lo < len(vals):
                    tail = _known_min(vals[M + 1 - lo:], ring, tail)
                vals = vals[:M + 1 - lo]
        return cls(ring, lo, vals, tail=tail, var=var)

    @classmethod
    def monomial(cls, ring, k, M, coeff=1, var="Z"):
        vals = [ring.zero()] * (M - k + 1) if M >= k else []
        if vals:
            vals[0] = ring.coerce(coeff)
        return cls(ring, k, vals, tail=INF, var=var)

    @classmethod
    def constant(cls, ring, c, M, var="Z"):
        return cls.monomial(ring, 0, M, c, var)

    @classmethod
    def variable(cls, ring, M, var="Z"):
        return cls.monomial(ring, 1, M, 1, var)

    @classmethod
    def polynomial(cls, ring, coeffs, M, var="Z"):
        """Exact polynomial sum c_i Z^i (coefficients from the constant up)."""
        return cls.from_list(ring, coeffs, 0, M, tail=INF, var=var)

    # accessors ------------------------------------------------------------

    @property
    def M(self):
        return self.lo + len(self.coeffs) - 1

    def coeff(self, i):
        if i < self.lo:
            return self.ring.zero()
        if i > self.M:
            raise PrecisionExhausted(f"coefficient {i} is beyond the truncation {self.M}")
        return self.coeffs[i - self.lo]

    def __getitem__(self, i):
        return self.coeff(i)

    def items(self):
        return [(self.lo + k, c) for k, c in enumerate(self.coeffs)]

    def order(self):
        """Exponent of the first coefficient nonzero at working precision."""
        for k, c in enumerate(self.coeffs):
            if any(c.c):
                return self.lo + k
        return None

    def pole_order(self):
        o = self.order()
        return 0 if o is None or o >= 0 else -o

    def min_valuation(self, include_tail=True):
        """Lower bound (v(p) = 1) over all coefficients, or None if unbounded."""
        E = self.ring.E
        best = None
        for c in self.coeffs:
            if c.prec >= EXACT and not any(c.c):
                continue
            v = Fraction(c._vu(), E)
            best = v if best is None else min(best, v)
        if include_tail:
            if self.tail is None or self.loglike:
                return None
            if self.tail != INF:
                best = self.tail if best is None else min(best, self.tail)
        return best

    def is_integral(self):
        m = self.min_valuation(include_tail=False)
        return m is None or m >= 0

    def precision(self):
        """Minimal absolute precision over the stored coefficients."""
        prec = min((c.prec for c in self.coeffs), default=EXACT)
        return None if prec >= EXACT else Fraction(prec, self.ring.E)

    def is_zero(self):
        return all(not any(c.c) for c in self.coeffs)

    def __repr__(self):
        terms = []
        for i, c in self.items():
            if any(c.c):
                terms.append(f"({c})*{self.var}^{i}")
        body = " + ".join(terms[:8]) or "0"
        if len(terms) > 8:
            body += " + ..."
        return f"{body} + O({self.var}^{self.M + 1})"

    # structural -----------------------------------------------------------

    def _like(self, lo, coeffs, tail, loglike=None):
        return TruncatedSeries(self.ring, lo, coeffs, tail=tail, var=self.var,
                               loglike=self.loglike if loglike is None else loglike)

    def truncate(self, M):
        if M >= self.M:
            return self
        dropped = self.coeffs[max(M + 1 - self.lo, 0):]
        tail = _known_min(dropped, self.ring, self.tail) if not self.loglike else None
        keep = self.coeffs[:max(M + 1 - self.lo, 0)]
        return self._like(self.lo, keep, tail)

    def relabel(self, var):
        """Same coefficients read in another variable."""
        return TruncatedSeries(self.ring, self.lo, self.coeffs, tail=self.tail,
                               var=var, loglike=self.loglike)

    def shift_z(self, k):
        """Multiply by Z^k."""
        return self._like(self.lo + k, self.coeffs, self.tail)

    def map_coeffs(self, fn, ring=None):
        ring = self.ring if ring is None else ring
        return TruncatedSeries(ring, self.lo, [fn(c) for c in self.coeffs],
                               tail=self.tail, var=self.var, loglike=self.loglike)

    def change_ring(self, ring):
        """Coerce the coefficients into a larger field."""
        if ring is self.ring:
            return self
        return self.map_coeffs(ring.coerce, ring)

    def add_bigoh(self, digits):
        """Cap every coefficient at absolute precision ``digits``."""
        u = int(digits * self.ring.E)
        return self.map_coeffs(lambda c: c.add_bigoh(u))

    # ring operations ------------------------------------------------------

    def _coerce_series(self, g):
        if isinstance(g, TruncatedSeries):
            if g.var != self.var:
                raise LevelMismatch(f"variable mismatch: {self.var} vs {g.var}")
            if g.ring is not self.ring:
                if _is_subfield(g.ring, self.ring):
                    g = g.change_ring(self.ring)
                else:
                    return None
            return g
        return None

    def __add__(self, g):
        if not isinstance(g, TruncatedSeries):
            return self + TruncatedSeries.constant(self.ring, g, self.M, self.var)
        h = self._coerce_series(g)
        if h is None:
            return g.__radd__(self)
        g = h
        lo = min(self.lo, g.lo)
        M = min(self.M, g.M)
        ring = self.ring
        out = []
        for i in range(lo, M + 1):
            a = self.coeffs[i - self.lo] if i >= self.lo else None
            b = g.coeffs[i - g.lo] if i >= g.lo else None
            if a is None:
                out.append(b)
            elif b is None:
                out.append(a)
            else:
                out.append(a + b)
        if not out:
            out = [ring.zero()]
            lo = M
        extra = []
        if self.M > M:
            extra.append(_known_min(self.coeffs[M + 1 - self.lo:], ring, self.tail))
        else:
            extra.append(self.tail)
        if g.M > M:
            extra.append(_known_min(g.coeffs[M + 1 - g.lo:], ring, g.tail))
        else:
            extra.append(g.tail)
        tail = _min_tail(extra)
        return TruncatedSeries(ring, lo, out, tail=tail, var=self.var,
                               loglike=self.loglike or g.loglike)

    def __radd__(self, g):
        return self + g

    def __neg__(self):
        return self.map_coeffs(lambda c: -c)

    def __sub__(self, g):
        if isinstance(g, TruncatedSeries):
            return self + (-g)
        return self + (-self.ring.coerce(g))

    def __rsub__(self, g):
        return (-self) + g

    def scale(self, c):
        c = self.ring.coerce(c)
        tail = self.tail
        if tail not in (None, INF) and not c.is_zero():
            tail = tail + c.valuation()
        elif tail not in (None, INF):
            tail = None
        return self.map_coeffs(lambda a: a * c)._with_tail(tail)

    def _with_tail(self, tail):
        self.tail = tail
        return self

    def __mul__(self, g):
        if not isinstance(g, TruncatedSeries):
            if isinstance(g, PadicElement) and g.field is not self.ring \
                    and _is_subfield(self.ring, g.field):
                return self.change_ring(g.field).scale(g)
            return self.scale(g)
        h = self._coerce_series(g)
        if h is None:
            return g.__rmul__(self)
        g = h
        return _series_mul(self, g)

    def __rmul__(self, g):
        return self * g

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        if n == 0:
            return TruncatedSeries.constant(self.ring, 1, self.M - self.lo, self.var)
        base = self
        result = None
        while n:
            if n & 1:
                result = base if result is None else result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def inverse(self):
        """Multiplicative inverse; the first nonzero coefficient must be invertible."""
        o = self.order()
        if o is None:
            raise NotInvertible("series is zero at working precision")
        head = self.coeffs[o - self.lo:]
        u = TruncatedSeries(self.ring, 0, head, tail=self.tail, var=self.var,
                            loglike=self.loglike)
        a0 = head[0]
        try:
            inv0 = a0.inverse()
        except PrecisionExhausted as exc:
            raise NotInvertible(str(exc)) from exc
        M = u.M
        # Newton iteration g <- g(2 - u g)
        g = TruncatedSeries(self.ring, 0, [inv0], tail=None, var=self.var)
        k = 1
        while k <= M:
            k = min(2 * k, M + 1)
            uk = u.truncate(k - 1)
            g = TruncatedSeries(self.ring, 0, g.coeffs + [self.ring.zero()] * (k - len(g.coeffs)),
                                tail=INF, var=self.var)
            e = _series_mul(uk, g).truncate(k - 1)
            two_minus = (-e) + TruncatedSeries.constant(self.ring, 2, k - 1, self.var)
            g = _series_mul(g, two_minus).truncate(k - 1)
        tail = None
        mu = u.min_valuation()
        if mu is not None and mu >= 0 and a0.valuation() == 0:
            tail = Fraction(0)
        return TruncatedSeries(self.ring, -o, g.coeffs, tail=tail, var=self.var)

    def __truediv__(self, g):
        if isinstance(g, TruncatedSeries):
            return self * g.inverse()
        return self.scale(self.ring.coerce(g).inverse())

    # calculus -------------------------------------------------------------

    def derivative(self):
        out = []
        for k, c in enumerate(self.coeffs):
            i = self.lo + k
            out.append(c.scale_int(i) if i else self.ring.zero())
        if self.lo == 0:
            out = out[1:] or [self.ring.zero()]
            lo = 0
        else:
            lo = self.lo - 1
        if not out:
            out = [self.ring.zero()]
        return TruncatedSeries(self.ring, lo, out, tail=self.tail, var=self.var,
                               loglike=self.loglike)

    def integral(self):
        """Antiderivative with zero constant term (needs a vanishing Z^-1 term)."""
        out = []
        for k, c in enumerate(self.coeffs):
            i = self.lo + k
            if i == -1:
                if any(c.c):
                    raise PrecisionExhausted("cannot integrate a nonzero residue term")
                out.append(self.ring.zero())
                continue
            out.append(c / (i + 1))
        lo = self.lo + 1
        if lo <= 0 <= lo + len(out) - 1:
            out[-lo] = self.ring.zero()
        if self.loglike:
            tail = None
        else:
            tail = self.tail
        return TruncatedSeries(self.ring, lo, out, tail=tail, var=self.var,
                               loglike=tail is not None and tail != INF)

    def residue(self):
        if self.lo > -1:
            return self.ring.zero()
        return self.coeff(-1)

    # evaluation and composition ------------------------------------------

    def _tail_error_units(self, vx_units, field):
        """Certified lower bound for v(sum_{n>M} a_n x^n) in ``field`` units."""
        if self.tail == INF:
            return EXACT
        if self.tail is None:
            raise PrecisionExhausted("series has no tail bound; cannot evaluate")
        if vx_units <= 0:
            raise PrecisionExhausted("point is outside the open unit disc")
        E = field.E
        n0 = self.M + 1
        if not self.loglike:
            return math.floor(self.tail * E) + n0 * vx_units
        best = None
        n = n0
        p = field.p
        while True:
            val = math.floor(self.tail * E) - E * _ilog(n, p) + n * vx_units
            best = val if best is None else min(best, val)
            nxt = p ** (_ilog(n, p) + 1)
            if (nxt - n) * vx_units > E * 2 and n > n0:
                break
            n = nxt
            if n > 10 ** 6:
                break
        return best

    def evaluate(self, x):
        """The value at a point x of positive valuation."""
        x = x if isinstance(x, PadicElement) else self.ring.coerce(x)
        F = x.field
        if F is not self.ring and _is_subfield(F, self.ring):
            x = self.ring.coerce(x)
            F = self.ring
        if x.is_zero():
            if self.lo < 0 and self.order() is not None and self.order() < 0:
                raise PrecisionExhausted("pole at zero")
            c0 = self.coeff(0) if self.lo <= 0 <= self.M else self.ring.zero()
            c0 = F.coerce(c0)
            return c0.add_bigoh(min(x.prec, EXACT) if x.prec < EXACT else EXACT) \
                if self.M >= 1 and x.prec < EXACT else c0
        vx = x._vu()
        err = self._tail_error_units(vx, F)
        acc = F.zero()
        for c in reversed(self.coeffs):
            acc = acc * x + F.coerce(c)
        if self.lo:
            acc = acc * (x ** self.lo)
        return acc.add_bigoh(err) if err < EXACT else acc

    __call__ = evaluate

    def compose(self, g):
        """f(g) for g with vanishing constant term (g(0) = 0)."""
        if not isinstance(g, TruncatedSeries):
            return self.evaluate(g)
        o = g.order()
        if o is None or o < 1:
            raise DivergentComposition("inner series must have positive order")
        if g.lo < 1:
            g = TruncatedSeries(g.ring, 1, g.coeffs[1 - g.lo:], tail=g.tail, var=g.var,
                                loglike=g.loglike)
        ring = g.ring if _is_subfield(self.ring, g.ring) else self.ring
        f = self.change_ring(ring)
        g = g.change_ring(ring)
        # the omitted terms n > M of f only reach Z^{o(M+1)}
        K = o * (f.M + 1) - 1
        gt = g.truncate(K)
        start = max(f.lo, 0)
        acc = None
        for i in range(f.M, start - 1, -1):
            c = TruncatedSeries(ring, 0, [f.coeff(i)] + [ring.zero()] * K, tail=INF, var=g.var)
            acc = c if acc is None else _series_mul(acc, gt).truncate(K) + c
        if acc is None:
            acc = TruncatedSeries(ring, 0, [ring.zero()] * (K + 1), tail=INF, var=g.var)
        if start > 0:
            acc = _series_mul(acc, gt ** start)
        if f.lo < 0:
            ginv = g.inverse()
            inner = None
            for i in range(f.lo, 0):
                c = TruncatedSeries(ring, 0, [f.coeff(i)] + [ring.zero()] * K, tail=INF,
                                    var=g.var)
                inner = c if inner is None else _series_mul(inner, ginv) + c
            acc = acc + _series_mul(inner, ginv)
        acc = acc.truncate(K)
        tail = None
        mf = f.min_valuation()
        mg = g.min_valuation()
        if f.lo >= 0 and mf is not None and mg is not None and mg >= 0:
            tail = mf
        return TruncatedSeries(ring, acc.lo, acc.coeffs, tail=tail, var=g.var)

    def compose_small_constant(self, h, t_order=None):
        """f(h) for a series h whose constant term has positive valuation."""
        return compose_small_constant(self, h, t_order)

    def reversion(self):
        return reversion(self)

    # serialization --------------------------------------------------------

    def to_json(self):
        data = {
            "version": 1,
            "var": self.var,
            "lo": self.lo,
            "M": self.M,
            "p": self.ring.p,
            "field": self.ring.name,
            "tail": None if self.tail is None else ("inf" if self.tail == INF else str(self.tail)),
            "loglike": self.loglike,
            "coefficients": [
                [i, {"shift": c.s, "digits": list(c.c),
                     "precision": None if c.prec >= EXACT else c.prec}]
                for i, c in self.items()
            ],
        }
        return json.dumps(data)

    @classmethod
    def from_json(cls, ring, text):
        data = json.loads(text)
        coeffs = []
        for _, c in data["coefficients"]:
            prec = EXACT if c["precision"] is None else c["precision"]
            coeffs.append(_build(ring, list(c["digits"]), c["shift"], prec))
        t = data["tail"]
        tail = None if t is None else (INF if t == "inf" else Fraction(t))
        return cls(ring, data["lo"], coeffs, tail=tail, var=data["var"],
                   loglike=data["loglike"])


# --------------------------------------------------------------------------
# helpers


def _is_subfield(small, big):
    if small is big:
        return True
    if small.degree == 1 and small.p == big.p:
        return True
    return id(small) in big._embeddings


def _known_min(coeffs, ring, tail):
    vals = [Fraction(c._vu(), ring.E) for c in coeffs if not (c.prec >= EXACT and not any(c.c))]
    if tail is None:
        return None
    m = min(vals) if vals else INF
    return min(m, tail)


def _min_tail(tails):
    if any(t is None for t in tails):
        return None
    return min(tails)


def _series_mul(f, g):
    ring = f.ring
    lo = f.lo + g.lo
    M = min(f.M + g.lo, g.M + f.lo)
    n = M - lo + 1
    if n <= 0:
        return TruncatedSeries(ring, lo, [ring.zero()], tail=None, var=f.var)
    if _exact_zero(f) or _exact_zero(g):
        return TruncatedSeries(ring, lo, [ring.zero()] * n, tail=INF, var=f.var)
    A = f.coeffs[:n]
    B = g.coeffs[:n]
    prod = _convolve(ring, A, B, n)
    tail = None
    if not (f.loglike or g.loglike):
        mf = f.min_valuation()
        mg = g.min_valuation()
        if f.tail == INF and g.tail == INF:
            tail = None if (f.M + g.M - M) > 0 else INF
            if mf is not None and mg is not None:
                tail = mf + mg if (mf != INF and mg != INF) else INF
        elif mf is not None and mg is not None:
            tail = mf + mg
    return TruncatedSeries(ring, lo, prod, tail=tail, var=f.var)


def _convolve(F, A, B, n):
    """First n coefficients of the product of coefficient lists A and B."""
    la, lb = len(A), len(B)
    PA = [a.prec for a in A]
    PB = [b.prec for b in B]
    VA = [a._vu() for a in A]
    VB = [b._vu() for b in B]
    precs = []
    for k in range(n):
        best = EXACT
        for i in range(max(0, k - lb + 1), min(k, la - 1) + 1):
            j = k - i
            t = PA[i] + VB[j]
            if t < best:
                best = t
            t = PB[j] + VA[i]
            if t < best:
                best = t
        precs.append(best)
    nzA = [a for a in A if any(a.c)]
    nzB = [b for b in B if any(b.c)]
    if not nzA or not nzB:
        return [F.zero(precs[k]) for k in range(n)]
    sA = min(a.s for a in nzA)
    sB = min(b.s for b in nzB)
    D = F.degree
    ints_A = [[ci * F.ppow(a.s - sA) for ci in a.c] if any(a.c) else None for a in A]
    ints_B = [[ci * F.ppow(b.s - sB) for ci in b.c] if any(b.c) else None for b in B]
    if D == 1 or F.int_poly is not None:
        raw = _kronecker(ints_A, ints_B, D, n)
        if D > 1:
            raw = [_reduce_int_poly(r, F.int_poly, D) for r in raw]
    else:
        raw = []
        zero = [0] * D
        for k in range(n):
            acc = list(zero)
            for i in range(max(0, k - lb + 1), min(k, la - 1) + 1):
                x, y = ints_A[i], ints_B[k - i]
                if x is None or y is None:
                    continue
                m = F._mul(x, y)
                acc = [u + v for u, v in zip(acc, m)]
            raw.append(acc)
    s = sA + sB
    return [_build(F, raw[k], s, precs[k]) for k in range(n)]


def _reduce_int_poly(r, P, D):
    r = list(r)
    red = [(i, P[i]) for i in range(D) if P[i]]
    for k in range(len(r) - 1, D - 1, -1):
        t = r[k]
        if t:
            off = k - D
            for i, a in red:
                r[off + i] -= t * a
    return r[:D]


def _kronecker(A, B, D, n):
    """Bivariate product by packing (coefficient index, basis index) into one integer."""
    S = 2 * D - 1 if D > 1 else 1
    la, lb = len(A), len(B)
    maxa = max((abs(x) for c in A if c is not None for x in c), default=0)
    maxb = max((abs(x) for c in B if c is not None for x in c), default=0)
    if maxa == 0 or maxb == 0:
        return [[0] * S for _ in range(n)]
    bits = maxa.bit_length() + maxb.bit_length() + (min(la, lb) * D).bit_length() + 1
    Wb = (bits + 7) // 8

    def split(X):
        pos, neg, any_neg = [], [], False
        for c in X:
            if c is None:
                pos.append(None)
                neg.append(None)
                continue
            pc = [x if x > 0 else 0 for x in c]
            nc = [-x if x < 0 else 0 for x in c]
            if any(nc):
                any_neg = True
            pos.append(pc)
            neg.append(nc)
        return pos, (neg if any_neg else None)

    def pack(X):
        buf = bytearray(len(X) * S * Wb)
        for i, c in enumerate(X):
            if c is None:
                continue
            base = i * S
            for d, x in enumerate(c):
                if x:
                    o = (base + d) * Wb
                    buf[o:o + Wb] = x.to_bytes(Wb, "little")
        return int.from_bytes(buf, "little")

    def unpack(v, sign, out):
        total = n * S
        raw = v.to_bytes(max((la + lb) * S * Wb, (v.bit_length() + 7) // 8), "little")
        for k in range(n):
            row = out[k]
            base = k * S
            for e in range(S):
                o = (base + e) * Wb
                x = int.from_bytes(raw[o:o + Wb], "little")
                if x:
                    row[e] += sign * x
        return total

    Ap, An = split(A)
    Bp, Bn = split(B)
    out = [[0] * S for _ in range(n)]
    pa, pb = pack(Ap), pack(Bp)
    unpack(pa * pb, 1, out)
    if An is not None:
        na = pack(An)
        unpack(na * pb, -1, out)
        if Bn is not None:
            unpack(na * pack(Bn), 1, out)
    if Bn is not None:
        unpack(pa * pack(Bn), -1, out)
    return out


# --------------------------------------------------------------------------
# named operations


def series_arith(f, g=None, op="add"):
    """Dispatch for the four ring operations: add, mul, invert, scalar."""
    if op == "add":
        return f + g
    if op == "mul":
        return f * g
    if op == "invert":
        return f.inverse()
    if op == "scalar":
        return f.scale(g)
    raise ValueError(f"unknown operation {op!r}")


def derivative_and_residue(f):
    return f.derivative(), f.residue()


def power_coeffs(b, n, imax):
    """Coefficients c_{0..imax, n} of h^n for h = sum b_k t^k with b_0 invertible.

    Works over any field-like coefficients (Fractions or p-adic elements)
    through c_{i,n} = (1/(i b_0)) sum_{k=1}^{i} (nk - i + k) b_k c_{i-k,n}.
    """
    b = list(b)
    b0 = b[0]
    c = [b0 ** n]
    for i in range(1, imax + 1):
        acc = 0 * b0
        for k in range(1, i + 1):
            if k < len(b):
                w = n * k - i + k
                if w:
                    acc = acc + b[k] * c[i - k] * w
        c.append(acc / (b0 * i))
    return c


def power_coeff_recursion(h, n, i):
    """Coefficient of t^i in h^n through the first-order recursion."""
    b = h.coeffs if isinstance(h, TruncatedSeries) else list(h)
    if isinstance(h, TruncatedSeries) and h.lo != 0:
        raise ValueError("expected a power series")
    if isinstance(h, TruncatedSeries) and i > h.M:
        raise PrecisionExhausted("index beyond truncation")
    return power_coeffs(b, n, i)[i]


def power_coeff_bounds(h, imax, p):
    """The constants gamma_i of the valuation bound for the power coefficients of h."""
    vb = []
    for k in range(imax + 1):
        c = h.coeff(k)
        vb.append(c.valuation() if any(c.c) else None)
    return _power_bounds(vb, imax, p)


def _power_bounds(vb, imax, p):
    gam = [Fraction(0)]
    for i in range(1, imax + 1):
        best = None
        for k in range(1, i + 1):
            if k < len(vb) and vb[k] is not None:
                t = vb[k] + gam[i - k]
                best = t if best is None else min(best, t)
        if best is None:
            best = Fraction(10 ** 9)
        gam.append(best - vb[0] - vp_int(i, p))
    return gam


def compose_small_constant(f, h, t_order=None):
    """f(h) = sum_n a_n h^n for h(0) of positive valuation.

    The missing terms n > M of f are bounded with the power coefficient bounds:
    v(a_n c_{i,n}) >= tail + gamma_i + n v(h(0)).
    """
    ring = h.ring
    if not _is_subfield(f.ring, ring):
        raise LevelMismatch("coefficient field of f does not embed into that of h")
    if h.lo < 0:
        raise DivergentComposition("h must be a power series")
    b0 = h.coeff(0)
    if b0.is_zero():
        raise DivergentComposition("h(0) must be nonzero")
    vb0 = b0.valuation()
    if vb0 <= 0:
        raise DivergentComposition("h(0) must have positive valuation")
    if f.tail is None:
        raise DivergentComposition("no tail bound for the outer series")
    T = h.M if t_order is None else min(t_order, h.M)
    ht = h.truncate(T)
    fr = f.change_ring(ring)
    pos_start = max(fr.lo, 0)
    pos = [fr.coeff(i) for i in range(pos_start, fr.M + 1)]
    acc = TruncatedSeries(ring, 0, [ring.zero()] * (T + 1), tail=INF, var=h.var)
    for c in reversed(pos):
        acc = _series_mul(acc, ht).truncate(T)
        acc = acc + TruncatedSeries(ring, 0, [c] + [ring.zero()] * T, tail=INF, var=h.var)
    if pos_start > 0:
        acc = _series_mul(acc, ht ** pos_start).truncate(T)
    # tail bound for n > M
    if f.tail != INF:
        gam = _power_bounds([h.coeff(k).valuation() if any(h.coeff(k).c) else None
                       for k in range(T + 1)], T, ring.p)
        E = ring.E
        out = []
        for i, c in enumerate(acc.coeffs):
            if f.loglike:
                bound = None
                n = f.M + 1
                while n < 10 ** 6:
                    val = f.tail - _ilog(n, ring.p) + gam[i] + n * vb0
                    bound = val if bound is None else min(bound, val)
                    nxt = ring.p ** (_ilog(n, ring.p) + 1)
                    if (nxt - n) * vb0 > 2:
                        break
                    n = nxt
            else:
                bound = f.tail + gam[i] + (f.M + 1) * vb0
            out.append(c.add_bigoh(math.floor(bound * E)))
        acc = TruncatedSeries(ring, 0, out, tail=None, var=h.var)
    if fr.lo < 0:
        hinv = ht.inverse()
        inner = None
        for i in range(fr.lo, 0):
            term = TruncatedSeries(ring, 0, [fr.coeff(i)] + [ring.zero()] * T, tail=INF,
                                   var=h.var)
            inner = term if inner is None else _series_mul(inner, hinv).truncate(T) + term
        acc = acc + _series_mul(inner, hinv).truncate(T)
    acc.tail = None
    return acc


def reversion(f):
    """Compositional inverse of f with f(0) = 0 and f'(0) invertible."""
    if f.lo < 0 or (f.lo == 0 and any(f.coeffs[0].c)):
        raise NotInvertible("reversion needs f(0) = 0")
    a1 = f.coeff(1)
    if a1.is_zero():
        raise NotInvertible("reversion needs f'(0) invertible")
    ring = f.ring
    M = f.M
    inv_a1 = a1.inverse()
    df = f.derivative()
    g = TruncatedSeries(ring, 1, [inv_a1], tail=None, var=f.var)
    k = 1
    Z = TruncatedSeries.variable(ring, M, f.var)
    while k < M:
        k = min(2 * k, M)
        gk = TruncatedSeries(ring, 1, g.coeffs + [ring.zero()] * (k - g.M), tail=INF, var=f.var)
        fg = f.truncate(k).compose(gk).truncate(k)
        err = fg - Z.truncate(k)
        dfg = df.truncate(k - 1).compose(gk).truncate(k - 1)
        corr = (err.truncate(k) * dfg.inverse()).truncate(k)
        g = (gk - corr).truncate(k)
        if g.lo < 1:
            g = TruncatedSeries(ring, 1, g.coeffs[1 - g.lo:], tail=None, var=f.var)
    return TruncatedSeries(ring, 1, g.coeffs, tail=None, var=f.var)


def _exact_zero(f):
    return f.tail == INF and not f.loglike and all(c.prec >= EXACT and not any(c.c) for c in f.coeffs)
