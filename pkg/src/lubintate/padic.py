"""Capped-precision arithmetic in finite extensions of Q_p.

A field K of absolute degree D is stored through an integral basis
b_0 = 1, b_1, ..., b_{D-1} of o_K whose valuations w_i are distinct modulo
the value group of Q_p inside each residue block.  For such a basis

    v(sum c_i b_i) = min_i (v_p(c_i) + w_i),

so the ideal {v >= A} is a coordinate box and an element can be stored as
integer coordinates modulo that box.  Valuations and precisions are kept as
integers in units of 1/E where E is the absolute ramification index.

Elements are immutable.  An element with precision ``EXACT`` is an exact
algebraic number (integer coordinates times a power of p).
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product as _cartesian

from .errors import (
    LevelMismatch,
    NotAUnit,
    NotGaloisInvariant,
    NotIrreducible,
    NotUniformizer,
    PrecisionExhausted,
)

EXACT = 1 << 60
DEFAULT_DIGITS = 40


def _cdiv(a, b):
    return -((-a) // b)


def vp_int(n, p):
    """p-adic valuation of a nonzero integer."""
    if n == 0:
        raise ValueError("valuation of 0")
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def vp_fraction(x, p):
    x = Fraction(x)
    if x == 0:
        raise ValueError("valuation of 0")
    return vp_int(x.numerator, p) - vp_int(x.denominator, p)


# --------------------------------------------------------------------------
# multiplication structures


def _poly_mul_mod_int(P):
    """Multiplication in Z[X]/(P) for a monic integer polynomial P."""
    r = len(P) - 1
    red = [(i, P[i]) for i in range(r) if P[i]]

    def mul(c, d):
        prod = [0] * (2 * r - 1)
        for i, ci in enumerate(c):
            if ci:
                for j, dj in enumerate(d):
                    if dj:
                        prod[i + j] += ci * dj
        for k in range(2 * r - 2, r - 1, -1):
            t = prod[k]
            if t:
                off = k - r
                for i, a in red:
                    prod[off + i] -= t * a
        return prod[:r]

    return mul


def _poly_mul_mod_over(base_mul, DB, P):
    """Multiplication in B[X]/(P), B given by its coordinate multiplication."""
    r = len(P) - 1
    red = [(i, P[i]) for i in range(r) if any(P[i])]

    def vadd(u, v):
        return [a + b for a, b in zip(u, v)]

    def mul(c, d):
        C = [c[k * DB:(k + 1) * DB] for k in range(r)]
        Dd = [d[k * DB:(k + 1) * DB] for k in range(r)]
        prod = [[0] * DB for _ in range(2 * r - 1)]
        for i, ci in enumerate(C):
            if any(ci):
                for j, dj in enumerate(Dd):
                    if any(dj):
                        prod[i + j] = vadd(prod[i + j], base_mul(ci, dj))
        for k in range(2 * r - 2, r - 1, -1):
            t = prod[k]
            if any(t):
                off = k - r
                for i, a in red:
                    m = base_mul(t, a)
                    prod[off + i] = [x - y for x, y in zip(prod[off + i], m)]
        out = []
        for k in range(r):
            out.extend(prod[k])
        return out

    return mul


# --------------------------------------------------------------------------
# fields


class PadicField:
    """Common base of :class:`LocalField` and :class:`TowerField`."""

    def __init__(self, p, degree, E, weights, mul, digits, name):
        self.p = p
        self.degree = degree
        self.E = E
        self.weights = tuple(weights)
        self._mul = mul
        self.digits = digits
        self.name = name
        self._pp = [1]
        self._embeddings = {}
        # monic integer polynomial when the basis is 1, X, ..., X^{D-1}
        self.int_poly = None

    def ppow(self, k):
        pp = self._pp
        while len(pp) <= k:
            pp.append(pp[-1] * self.p)
        return pp[k]

    def __repr__(self):
        return f"<{self.name}>"

    # construction helpers -------------------------------------------------

    def element(self, coords, shift=0, prec=EXACT):
        coords = list(coords) + [0] * (self.degree - len(coords))
        return _build(self, coords, shift, prec)

    def zero(self, prec=EXACT):
        return PadicElement(self, (0,) * self.degree, 0, prec)

    def one(self):
        return self.from_int(1)

    def from_int(self, n, prec=EXACT):
        c = [0] * self.degree
        c[0] = int(n)
        return _build(self, c, 0, prec)

    def from_fraction(self, x, prec=None):
        x = Fraction(x)
        if x == 0:
            return self.zero(EXACT if prec is None else prec)
        p = self.p
        k = vp_fraction(x, p)
        num, den = x.numerator, x.denominator
        while num % p == 0:
            num //= p
        while den % p == 0:
            den //= p
        if den == 1 and prec is None:
            return _build(self, [num] + [0] * (self.degree - 1), k, EXACT)
        if prec is None:
            prec = self.E * (k + self.digits)
        m = max(_cdiv(prec, self.E) - k, 1)
        mod = self.ppow(m)
        c = [num * pow(den, -1, mod) % mod] + [0] * (self.degree - 1)
        return _build(self, c, k, prec)

    def coerce(self, x):
        if isinstance(x, PadicElement):
            if x.field is self:
                return x
            return self.embed(x)
        if isinstance(x, int):
            return self.from_int(x)
        if isinstance(x, Fraction):
            return self.from_fraction(x)
        raise TypeError(f"cannot coerce {type(x).__name__} into {self}")

    def embed(self, x):
        """Image of an element of a registered subfield."""
        src = x.field
        if src is self:
            return x
        emb = self._embeddings.get(id(src))
        if emb is None:
            if src.degree == 1:
                return _build(self, [x.c[0]] + [0] * (self.degree - 1), x.s,
                              _convert_prec(x.prec, src.E, self.E))
            raise LevelMismatch(f"{src} is not a registered subfield of {self}")
        return emb.apply(x)

    def mul_coords(self, c, d):
        return self._mul(c, d)

    def multiplication_matrix(self, c):
        """Integer matrix (rows = output coordinate) of y -> c*y."""
        D = self.degree
        cols = []
        for j in range(D):
            e = [0] * D
            e[j] = 1
            cols.append(self._mul(c, e))
        return [[cols[j][i] for j in range(D)] for i in range(D)]

    def trace_to_Qp(self, x):
        """Absolute trace as the trace of the multiplication matrix."""
        M = self.multiplication_matrix(x.c)
        tr = sum(M[i][i] for i in range(self.degree))
        Qp = rational_field(self.p, self.digits)
        return _build(Qp, [tr], x.s, _convert_prec(x.prec, self.E, 1))

    def norm_to_Qp(self, x):
        M = self.multiplication_matrix(x.c)
        det = _det_int(M)
        Qp = rational_field(self.p, self.digits)
        v = x._vu()
        prec = EXACT if x.prec >= EXACT else (x.prec - v) // 1 + self.degree * v
        prec = _convert_prec(prec, self.E, 1) if prec < EXACT else EXACT
        return _build(Qp, [det], self.degree * x.s, prec)

    def residue_cardinality(self):
        return self.p ** self.residue_degree


class LocalField(PadicField):
    """A finite extension L of Q_p with a chosen uniformizer pi_L."""

    def __init__(self, p, degree, e, f, weights, mul, poly, digits, name,
                 base=None):
        super().__init__(p, degree, e, weights, mul, digits, name)
        self.e = e
        self.residue_degree = f
        self.q = p ** f
        self.defining_polynomial = poly
        self.base = base
        self.pi = None
        if base is None and degree > 1:
            self.int_poly = list(poly)

    @property
    def ramification(self):
        return self.e

    @property
    def residue_cardinality_q(self):
        return self.q


_QP_CACHE = {}


def rational_field(p, digits=DEFAULT_DIGITS):
    """Q_p itself (cached per (p, digits))."""
    key = (p, digits)
    F = _QP_CACHE.get(key)
    if F is None:
        F = LocalField(p, 1, 1, 1, (0,), lambda c, d: [c[0] * d[0]],
                       [-p, 1], digits, f"Q_{p}")
        F.pi = F.from_int(p)
        _QP_CACHE[key] = F
    return F


def _fp_poly_mod(a, m, p):
    a = [x % p for x in a]
    while a and a[-1] == 0:
        a.pop()
    dm = len(m) - 1
    inv = pow(m[-1], -1, p)
    while len(a) - 1 >= dm:
        t = a[-1] * inv % p
        off = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[off + i] = (a[off + i] - t * mi) % p
        while a and a[-1] == 0:
            a.pop()
    return a


def _fp_poly_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return out


def _fp_poly_gcd(a, b, p):
    a = _fp_poly_mod(a, [1], p) if False else [x % p for x in a]
    while a and a[-1] == 0:
        a.pop()
    b = [x % p for x in b]
    while b and b[-1] == 0:
        b.pop()
    while b:
        a, b = b, _fp_poly_mod(a, b, p)
    return a


def _fp_irreducible(P, p):
    """Ben-Or irreducibility test over F_p."""
    P = [x % p for x in P]
    n = len(P) - 1
    if n <= 0 or P[-1] == 0:
        return False
    x = [0, 1]
    power = x
    for _ in range(1, n // 2 + 1):
        # power <- power^p mod P
        acc = [1]
        base = power
        k = p
        while k:
            if k & 1:
                acc = _fp_poly_mod(_fp_poly_mul(acc, base, p), P, p)
            base = _fp_poly_mod(_fp_poly_mul(base, base, p), P, p)
            k >>= 1
        power = acc
        diff = list(power) + [0] * max(0, 2 - len(power))
        diff[1] = (diff[1] - 1) % p
        g = _fp_poly_gcd(P, diff, p)
        if len(g) > 1:
            return False
    return True


def base_field_make(p, defining_polynomial, pi_choice=None, over=None,
                    digits=DEFAULT_DIGITS):
    """Build a base field L from a monic integer polynomial and a uniformizer.

    ``defining_polynomial`` lists coefficients from the constant term up.
    Over Q_p a degree-one polynomial gives Q_p itself; an Eisenstein
    polynomial gives a totally ramified field (uniformizer the class of X);
    a polynomial irreducible modulo p gives an unramified field (uniformizer
    p).  With ``over`` an unramified LocalField, the coefficients are
    coordinate lists in ``over`` and the polynomial must be Eisenstein: this
    is the two-step presentation of a field with e > 1 and f > 1.
    """
    P = list(defining_polynomial)
    if over is None:
        P = [int(a) for a in P]
        if P[-1] != 1:
            raise NotIrreducible("defining polynomial must be monic")
        n = len(P) - 1
        if n == 1:
            L = rational_field(p, digits)
            pi = L.from_int(p) if pi_choice is None else L.coerce(_as_coord_input(L, pi_choice))
            if pi._vu() != 1:
                raise NotUniformizer(f"{pi_choice} is not a uniformizer of Q_{p}")
            if pi is not L.pi:
                L = LocalField(p, 1, 1, 1, (0,), L._mul, P, digits, f"Q_{p}")
                L.pi = L.coerce(pi.c[0] * p ** pi.s)
            return L
        eisen = all(a % p == 0 for a in P[:-1]) and P[0] % (p * p) != 0
        if eisen:
            L = LocalField(p, n, n, 1, range(n), _poly_mul_mod_int(P), P,
                           digits, f"Q_{p}(e={n})")
            pi = L.element([0, 1]) if pi_choice is None else _parse_element(L, pi_choice)
            if pi._vu() != 1:
                raise NotUniformizer("pi_choice must have valuation 1/e")
            L.pi = pi
            return L
        if _fp_irreducible(P, p):
            L = LocalField(p, n, 1, n, [0] * n, _poly_mul_mod_int(P), P,
                           digits, f"Q_{p}(f={n})")
            pi = L.from_int(p) if pi_choice is None else _parse_element(L, pi_choice)
            if pi._vu() != 1:
                raise NotUniformizer("pi_choice must have valuation 1")
            L.pi = pi
            return L
        raise NotIrreducible("polynomial is neither Eisenstein nor irreducible mod p")
    B = over
    if B.e != 1:
        raise NotIrreducible("two-step presentations need an unramified first step")
    coeffs = [list(a) + [0] * (B.degree - len(a)) if not isinstance(a, int)
              else [a] + [0] * (B.degree - 1) for a in P]
    if coeffs[-1] != [1] + [0] * (B.degree - 1):
        raise NotIrreducible("defining polynomial must be monic")
    r = len(coeffs) - 1
    lower = [B.element(a) for a in coeffs[:-1]]
    if not all(x.is_zero() or x._vu() >= 1 for x in lower) or lower[0].is_zero() \
            or lower[0]._vu() != 1:
        raise NotIrreducible("second step must be Eisenstein over the unramified base")
    D = B.degree * r
    weights = [k for k in range(r) for _ in range(B.degree)]
    L = LocalField(p, D, r, B.residue_degree, weights,
                   _poly_mul_mod_over(B._mul, B.degree, coeffs), coeffs,
                   digits, f"{B.name}(e={r})", base=B)
    L._embeddings[id(B)] = _LinearMap(
        B, L, [L.element(B_e + [0] * (D - B.degree)) for B_e in
               ([1 if i == j else 0 for i in range(B.degree)] for j in range(B.degree))])
    pi = L.element([0] * B.degree + [1]) if pi_choice is None else _parse_element(L, pi_choice)
    if pi._vu() != 1:
        raise NotUniformizer("pi_choice must have valuation 1/e")
    L.pi = pi
    return L


def _as_coord_input(L, x):
    return x


def _parse_element(L, x):
    if isinstance(x, PadicElement):
        return L.coerce(x)
    if isinstance(x, (int, Fraction)):
        return L.coerce(x)
    return L.element(list(x))


# --------------------------------------------------------------------------
# elements


def _convert_prec(prec, E_from, E_to):
    if prec >= EXACT:
        return EXACT
    return (prec * E_to) // E_from


def _build(F, c, s, prec):
    p = F.p
    if prec >= EXACT // 2:
        prec = EXACT
    else:
        E = F.E
        W = F.weights
        out = []
        for i, ci in enumerate(c):
            if ci:
                m = _cdiv(prec - W[i], E) - s
                if m <= 0:
                    ci = 0
                else:
                    ci %= F.ppow(m)
            out.append(ci)
        c = out
    k = None
    for ci in c:
        if ci:
            v = 0
            while ci % p == 0:
                ci //= p
                v += 1
                if k is not None and v >= k:
                    break
            if k is None or v < k:
                k = v
                if k == 0:
                    break
    if k is None:
        return PadicElement(F, (0,) * F.degree, 0, prec)
    if k:
        pk = F.ppow(k)
        c = [ci // pk for ci in c]
        s += k
    return PadicElement(F, tuple(c), s, prec)


class PadicElement:
    """An element p^s * sum(c_i b_i) of a field, known modulo {v >= prec/E}."""

    __slots__ = ("field", "c", "s", "prec", "_v")

    def __init__(self, field, c, s, prec):
        self.field = field
        self.c = c
        self.s = s
        self.prec = prec
        self._v = None

    # valuation bookkeeping --------------------------------------------------

    def _vu(self):
        v = self._v
        if v is None:
            F = self.field
            p = F.p
            best = None
            for ci, w in zip(self.c, F.weights):
                if ci:
                    t = F.E * vp_int(ci, p) + w
                    if best is None or t < best:
                        best = t
            v = self.prec if best is None else best + F.E * self.s
            self._v = v
        return v

    def is_zero(self):
        return not any(self.c)

    def is_exact(self):
        return self.prec >= EXACT

    def valuation(self):
        """Valuation with v(p) = 1 as a Fraction; zero elements raise."""
        if self.is_zero():
            raise PrecisionExhausted("element is indistinguishable from zero")
        return Fraction(self._vu(), self.field.E)

    def valuation_bound(self):
        """A certified lower bound for the valuation (exact if nonzero)."""
        if self.is_zero() and self.prec >= EXACT:
            return None
        return Fraction(self._vu(), self.field.E)

    def precision(self):
        """Absolute precision as a Fraction (None when exact)."""
        if self.prec >= EXACT:
            return None
        return Fraction(self.prec, self.field.E)

    def relative_digits(self):
        """Certified digits beyond the valuation, in units of v(p) = 1."""
        if self.prec >= EXACT:
            return None
        return Fraction(self.prec - self._vu(), self.field.E)

    def add_bigoh(self, prec_units):
        if prec_units >= self.prec:
            return self
        return _build(self.field, list(self.c), self.s, prec_units)

    def with_digits(self, digits):
        """Cap the absolute precision at ``digits`` (v(p) = 1 units)."""
        return self.add_bigoh(int(digits * self.field.E))

    # arithmetic ------------------------------------------------------------

    def _other(self, y):
        if isinstance(y, PadicElement):
            if y.field is self.field:
                return y
            return self.field.coerce(y)
        return self.field.coerce(y)

    def __add__(self, y):
        y = self._other(y)
        if not any(y.c):
            if y.prec >= self.prec:
                return self
            return _build(self.field, list(self.c), self.s, y.prec)
        if not any(self.c):
            if self.prec >= y.prec:
                return y
            return _build(self.field, list(y.c), y.s, self.prec)
        F = self.field
        s = min(self.s, y.s)
        a = F.ppow(self.s - s)
        b = F.ppow(y.s - s)
        c = [x * a + z * b for x, z in zip(self.c, y.c)]
        return _build(F, c, s, min(self.prec, y.prec))

    __radd__ = __add__

    def __neg__(self):
        return _build(self.field, [-x for x in self.c], self.s, self.prec)

    def __sub__(self, y):
        return self + (-self._other(y))

    def __rsub__(self, y):
        return self._other(y) - self

    def __mul__(self, y):
        if isinstance(y, int):
            return self.scale_int(y)
        y = self._other(y)
        F = self.field
        vx = self._vu()
        vy = y._vu()
        prec = min(self.prec + vy, y.prec + vx)
        if not any(self.c) or not any(y.c):
            if prec >= EXACT // 2:
                prec = EXACT
            return PadicElement(F, (0,) * F.degree, 0, min(prec, EXACT))
        c = F._mul(self.c, y.c)
        return _build(F, c, self.s + y.s, min(prec, EXACT))

    __rmul__ = __mul__

    def scale_int(self, k):
        F = self.field
        if k == 0:
            return F.zero()
        vk = vp_int(k, F.p)
        prec = self.prec + F.E * vk if self.prec < EXACT else EXACT
        return _build(F, [x * k for x in self.c], self.s, min(prec, EXACT))

    def inverse(self):
        F = self.field
        if not any(self.c):
            raise PrecisionExhausted("cannot invert an element indistinguishable from zero")
        v = self._vu()
        if self.prec >= EXACT:
            prec = -v + F.E * F.digits
        else:
            prec = self.prec - 2 * v
        M = F.multiplication_matrix(self.c)
        rhs = [1] + [0] * (F.degree - 1)
        sol = _solve_rational(M, rhs)
        return _from_fractions(F, sol, -self.s, prec)

    def __truediv__(self, y):
        if isinstance(y, int):
            y = self.field.from_int(y)
        y = self._other(y)
        if y.field.degree == 1 and y.prec >= EXACT and y.c[0] in (1, -1):
            return _build(self.field, [x * y.c[0] for x in self.c], self.s - y.s,
                          self.prec - self.field.E * y.s if self.prec < EXACT else EXACT)
        return self * y.inverse()

    def __rtruediv__(self, y):
        return self._other(y) * self.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def shift(self, k):
        """Multiply by p^k (exact, k may be negative)."""
        prec = self.prec + self.field.E * k if self.prec < EXACT else EXACT
        return PadicElement(self.field, self.c, self.s + k if any(self.c) else 0, prec)

    # comparisons -----------------------------------------------------------

    def agrees_with(self, y, digits=None):
        """True when x - y vanishes at the joint precision (or to ``digits``)."""
        d = self - self._other(y)
        if digits is None:
            return d.is_zero()
        return d.is_zero() or d._vu() >= int(digits * self.field.E)

    def agreement(self, y):
        """Certified valuation of x - y (a Fraction); None if both exact and equal."""
        d = self - self._other(y)
        if d.is_zero():
            if d.prec >= EXACT:
                return None
            return Fraction(d.prec, self.field.E)
        return Fraction(d._vu(), self.field.E)

    def __eq__(self, y):
        try:
            return self.agrees_with(y)
        except TypeError:
            return NotImplemented

    __hash__ = None

    # conversion ------------------------------------------------------------

    def coords_fraction(self):
        ps = Fraction(self.field.p) ** self.s
        return [Fraction(ci) * ps for ci in self.c]

    def to_fraction(self):
        """Representative in Q (requires the element to lie in Q_p)."""
        if any(self.c[1:]):
            raise LevelMismatch("element is not in Q_p")
        return Fraction(self.c[0]) * Fraction(self.field.p) ** self.s

    def residue(self):
        """Reduction modulo the maximal ideal as the tuple of weight-0 coordinates mod p."""
        if self._vu() < 0:
            raise NotAUnit("element is not integral")
        F = self.field
        out = []
        for ci, w in zip(self.c, F.weights):
            if w == 0:
                out.append(ci * F.ppow(self.s) % F.p if self.s >= 0 else 0)
        return tuple(out)

    def signed_coords(self):
        """Coordinates with symmetric residues, for display."""
        F = self.field
        out = []
        for ci, w in zip(self.c, F.weights):
            if self.prec >= EXACT or not ci:
                out.append(ci)
                continue
            m = _cdiv(self.prec - w, F.E) - self.s
            mod = F.ppow(m)
            out.append(ci - mod if ci > mod // 2 else ci)
        return out

    def __repr__(self):
        cs = self.signed_coords()
        terms = []
        for i, ci in enumerate(cs):
            if ci:
                terms.append(f"{ci}*b{i}" if i else f"{ci}")
        body = " + ".join(terms) if terms else "0"
        if self.s:
            body = f"{self.field.p}^{self.s}*({body})"
        if self.prec < EXACT:
            body += f" + O(p^{Fraction(self.prec, self.field.E)})"
        return body


# --------------------------------------------------------------------------
# linear algebra helpers


def _solve_rational(M, rhs):
    n = len(M)
    A = [[Fraction(M[i][j]) for j in range(n)] + [Fraction(rhs[i])] for i in range(n)]
    for col in range(n):
        piv = None
        for r in range(col, n):
            if A[r][col] != 0:
                piv = r
                break
        if piv is None:
            raise PrecisionExhausted("singular system")
        A[col], A[piv] = A[piv], A[col]
        inv = 1 / A[col][col]
        row = A[col]
        for j in range(col, n + 1):
            row[j] *= inv
        for r in range(n):
            if r != col and A[r][col] != 0:
                f = A[r][col]
                rr = A[r]
                for j in range(col, n + 1):
                    rr[j] -= f * row[j]
    return [A[i][n] for i in range(n)]


def _det_int(M):
    """Bareiss fraction-free determinant."""
    n = len(M)
    A = [list(r) for r in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for r in range(k + 1, n):
                if A[r][k] != 0:
                    A[k], A[r] = A[r], A[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def _from_fractions(F, fracs, shift, prec):
    """Element p^shift * sum(fracs_i b_i) truncated at precision ``prec``."""
    p = F.p
    if all(x == 0 for x in fracs):
        return F.zero(prec)
    ks = []
    for x in fracs:
        ks.append(vp_int(x.denominator, p) if x != 0 else 0)
    kmax = max(ks)
    s = shift - kmax
    c = []
    for x, w in zip(fracs, F.weights):
        if x == 0:
            c.append(0)
            continue
        num = x.numerator * F.ppow(kmax)
        den = x.denominator
        while den % p == 0:
            den //= p
            num //= p
        if prec >= EXACT:
            if den != 1:
                raise PrecisionExhausted("exact result is not p-adically finite")
            c.append(num)
            continue
        m = _cdiv(prec - w, F.E) - s
        if m <= 0:
            c.append(0)
            continue
        mod = F.ppow(m)
        c.append(num * pow(den, -1, mod) % mod)
    return _build(F, c, s, prec)


class _LinearMap:
    """A Q_p-linear isometric map given by the images of basis vectors."""

    def __init__(self, src, dst, columns):
        self.src = src
        self.dst = dst
        self.columns = columns

    def apply(self, x):
        dst = self.dst
        prec = _convert_prec(x.prec, x.field.E, dst.E)
        acc_c = [0] * dst.degree
        acc_s = None
        terms = []
        for cj, col in zip(x.c, self.columns):
            if cj:
                if col.prec < EXACT:
                    prec = min(prec, dst.E * (vp_int(cj, dst.p) + x.s) + col.prec)
                if any(col.c):
                    terms.append((cj, col))
        if not terms:
            return dst.zero(prec)
        acc_s = min(col.s for _, col in terms)
        for cj, col in terms:
            f = cj * dst.ppow(col.s - acc_s)
            for i, ci in enumerate(col.c):
                if ci:
                    acc_c[i] += f * ci
        return _build(dst, acc_c, acc_s + x.s, min(prec, EXACT))


# --------------------------------------------------------------------------
# towers of division fields


class TowerField(PadicField):
    """L_n = L(eta_n), defined by the division polynomial f_n over L.

    The integral basis is beta_i * eta_n^k (beta_i the basis of L,
    0 <= k < q^{n-1}(q-1)); it is valuation adapted because f_n is
    Eisenstein over o_L.
    """

    def __init__(self, base, group, level, fn_coeffs, digits):
        B = base
        r = len(fn_coeffs) - 1
        D = B.degree * r
        E = B.E * r
        weights = [B.weights[i] * r + k for k in range(r) for i in range(B.degree)]
        if B.degree == 1:
            P = [a.c[0] * B.ppow(a.s) if any(a.c) else 0 for a in fn_coeffs]
            mul = _poly_mul_mod_int(P)
            int_poly = P
        else:
            P = [_exact_coords(a) for a in fn_coeffs]
            mul = _poly_mul_mod_over(B._mul, B.degree, P)
            int_poly = None
        super().__init__(B.p, D, E, weights, mul, digits,
                         f"L_{level}/{B.name}")
        self.int_poly = int_poly if r > 1 else None
        self.base = B
        self.group = group
        self.level = level
        self.defining_polynomial = list(fn_coeffs)
        self.relative_degree = r
        self.q = B.q
        basis_B = []
        for j in range(B.degree):
            e = [0] * D
            e[j] = 1
            basis_B.append(self.element(e))
        self._embeddings[id(B)] = _LinearMap(B, self, basis_B)
        e1 = [0] * D
        if r > 1:
            e1[B.degree] = 1
            self.eta = self.element(e1)
        else:
            # degree-one level (q = 2): eta is minus the constant term
            self.eta = -self.coerce(fn_coeffs[0])
        self._galois_cache = {}
        self._down_cache = {}

    @property
    def degree_over_base(self):
        return self.relative_degree

    def sub(self, m):
        """The field L_m for 0 <= m <= n (L_0 = L)."""
        if m == 0:
            return self.base
        return self.group.tower(m)

    def register_subfield(self, sub):
        """Embed L_m (m < n) through eta_m = [pi^{n-m}](eta_n)."""
        m = sub.level
        eta_m = self.eta
        for _ in range(self.level - m):
            eta_m = self.group.frobenius_eval(eta_m)
        cols = []
        B = self.base
        powers = [self.one()]
        for k in range(1, sub.relative_degree):
            powers.append(powers[-1] * eta_m)
        for k in range(sub.relative_degree):
            for j in range(B.degree):
                e = [0] * B.degree
                e[j] = 1
                cols.append(self.embed(B.element(e)) * powers[k])
        self._embeddings[id(sub)] = _LinearMap(sub, self, cols)
        self._sub_eta = getattr(self, "_sub_eta", {})
        self._sub_eta[m] = eta_m

    def downcast(self, x, m):
        """The element of L_m whose image is x; raises if x is not in L_m."""
        if m == self.level:
            return x
        target = self.sub(m)
        key = m
        data = self._down_cache.get(key)
        B = self.base
        if data is None:
            if m == 0:
                rows = list(range(B.degree))
                inv = None
            else:
                step = self.relative_degree // target.relative_degree
                rows = [k * step * B.degree + j for k in range(target.relative_degree)
                        for j in range(B.degree)]
                emb = self._embeddings[id(target)]
                sq = [[Fraction(emb.columns[col].c[r]) * Fraction(self.p) ** emb.columns[col].s
                       for col in range(target.degree)] for r in rows]
                inv = _invert_rational(sq)
            data = (rows, inv)
            self._down_cache[key] = data
        rows, inv = data
        prec = _convert_prec(x.prec, self.E, target.E)
        if inv is None:
            y = _build(target, [x.c[r] for r in rows], x.s, prec)
        else:
            vec = [Fraction(x.c[r]) for r in rows]
            sol = [sum(inv[i][j] * vec[j] for j in range(len(vec))) for i in range(len(vec))]
            if prec >= EXACT:
                y = _from_fractions(target, sol, x.s, EXACT)
            else:
                y = _from_fractions(target, sol, x.s, prec)
        back = self.embed(y)
        if not (back - x).is_zero():
            raise NotGaloisInvariant(f"element does not lie in {target}")
        return y

    # Galois action ---------------------------------------------------------

    def galois_keys(self):
        """Representatives of (o_L/pi^n)^x (integers when L = Q_p)."""
        return units_mod(self.base, self.level)

    def galois_image_eta(self, a):
        a = reduce_unit_key(self.base, a, self.level)
        cached = self._galois_cache.get(a)
        if cached is None:
            cached = self.group.endomorphism_at(unit_element(self.base, a), self.eta)
            self._galois_cache[a] = cached
        return cached

    def galois_matrix(self, a):
        a = reduce_unit_key(self.base, a, self.level)
        key = ("M", a)
        cols = self._galois_cache.get(key)
        if cols is None:
            img = self.galois_image_eta(a)
            B = self.base
            cols = []
            pw = self.one()
            for k in range(self.relative_degree):
                for j in range(B.degree):
                    e = [0] * B.degree
                    e[j] = 1
                    cols.append(self.embed(B.element(e)) * pw)
                pw = pw * img
            cols = _LinearMap(self, self, cols)
            self._galois_cache[key] = cols
        return cols

    def galois_apply(self, a, x):
        if not is_unit_key(self.base, a):
            raise NotAUnit(f"{a} is not a unit modulo pi")
        return self.galois_matrix(a).apply(self.coerce(x))


def _exact_coords(a):
    p = a.field.p
    if a.s >= 0:
        return [ci * p ** a.s for ci in a.c]
    raise PrecisionExhausted("non-integral polynomial coefficient")


def _invert_rational(M):
    n = len(M)
    cols = []
    for j in range(n):
        e = [0] * n
        e[j] = 1
        cols.append(_solve_rational(M, e))
    return [[cols[j][i] for j in range(n)] for i in range(n)]


# --------------------------------------------------------------------------
# units modulo pi^n


def _unit_moduli(L, n):
    # o_L / pi^n as a product of Z/p^{m_i} in the adapted basis
    return [max(_cdiv(n * L.E // L.e - w, L.E), 0) for w in L.weights]


def units_mod(L, n):
    """Sorted representatives of (o_L/pi^n)^x."""
    if L.degree == 1:
        N = L.p ** n
        return [a for a in range(1, N) if a % L.p]
    mods = _unit_moduli(L, n)
    keys = []
    for tup in _cartesian(*[range(L.p ** m) for m in mods]):
        if is_unit_key(L, tup):
            keys.append(tuple(tup))
    return keys


def is_unit_key(L, a):
    if isinstance(a, int):
        return a % L.p != 0
    x = unit_element(L, a)
    return not x.is_zero() and x._vu() == 0


def unit_element(L, a):
    if isinstance(a, PadicElement):
        return a
    if isinstance(a, int):
        return L.from_int(a)
    return L.element(list(a))


def reduce_unit_key(L, a, n):
    if isinstance(a, int):
        return a % (L.p ** n)
    if isinstance(a, PadicElement):
        a = tuple(ci * L.p ** a.s for ci in a.c) if a.s >= 0 else None
        if a is None:
            raise NotAUnit("non-integral Galois parameter")
    mods = _unit_moduli(L, n)
    return tuple(int(ci) % (L.p ** m) for ci, m in zip(a, mods))


def unit_key_mul(L, a, b, n):
    if isinstance(a, int):
        return a * b % (L.p ** n)
    return reduce_unit_key(L, unit_element(L, a) * unit_element(L, b), n)


# --------------------------------------------------------------------------
# operations named in the interface


def teichmuller(L, c, digits=None):
    """Teichmuller lift of a residue class (int, or tuple of weight-0 coords)."""
    digits = L.digits if digits is None else digits
    if isinstance(c, int):
        lift = [c % L.p] + [0] * (L.degree - 1)
    else:
        lift = [0] * L.degree
        idx = [i for i, w in enumerate(L.weights) if w == 0]
        for i, ci in zip(idx, c):
            lift[i] = ci % L.p
    if not any(lift):
        return L.zero()
    x = L.element(lift).add_bigoh(L.E * digits)
    for _ in range(digits + 2):
        y = x ** L.q
        if (y - x).is_zero():
            return y
        x = y
    return x


def trace_norm(x, target_level):
    """(Tr_{L_n/L_m}(x), N_{L_n/L_m}(x)) over explicit Galois conjugates."""
    F = x.field
    if not isinstance(F, TowerField):
        if target_level != 0:
            raise LevelMismatch("base-field elements only have level 0")
        return x, x
    n = F.level
    m = target_level
    if m > n or m < 0:
        raise LevelMismatch(f"target level {m} exceeds level {n}")
    if m == n:
        return x, x
    L = F.base
    keys = [a for a in F.galois_keys() if _is_one_mod(L, a, m)]
    tr = F.zero()
    nm = F.one()
    for a in keys:
        y = F.galois_apply(a, x)
        tr = tr + y
        nm = nm * y
    return F.downcast(tr, m), F.downcast(nm, m)


def _is_one_mod(L, a, m):
    if m == 0:
        return True
    if isinstance(a, int):
        return a % (L.p ** m) == 1 % (L.p ** m)
    d = unit_element(L, a) - L.one()
    return d.is_zero() or d._vu() * 1 >= m * (L.E // L.e)


def galois_apply(a, x):
    F = x.field
    if not isinstance(F, TowerField):
        return x
    return F.galois_apply(a, x)


def tower_extend(L, G, n):
    """The division field L_n of the formal group G (see FormalGroup.tower)."""
    if G.field is not L:
        raise LevelMismatch("formal group is defined over a different field")
    return G.tower(n)
