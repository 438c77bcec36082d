"""Residues, the residue pairing and Iwasawa's trace formula for the multiplicative group.

A twisted series h (x) eps is identified with the differential h dZ/(1 + Z);
the pairing of h (x) eps with g is res(h g dZ/(1 + Z)).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import NotAGenerator, NotCyclotomic, NotPrincipalUnit, PrecisionExhausted
from .padic import TowerField, rational_field, trace_norm
from .series import TruncatedSeries


@dataclass(frozen=True)
class TwistedSeries:
    series: TruncatedSeries
    twist: int = 1
    level: int = 0

    def differential(self):
        """The coefficient f of f dZ: h / (1 + Z)."""
        h = self.series
        L = h.ring
        inv = TruncatedSeries(L, 0, [L.from_int((-1) ** k) for k in range(h.M + 1 - min(h.lo, 0))],
                              tail=Fraction(0))
        return (h * inv).truncate(h.M)


def residue(f):
    """Coefficient of Z^{-1} of f, the residue of f dZ."""
    return f.coeff(-1) if f.lo <= -1 else f.ring.zero()


def pairing(h, g):
    """res(h g dZ / (1 + Z)) for h (x) eps and g."""
    if not isinstance(h, TwistedSeries):
        h = TwistedSeries(h)
    return residue(h.differential() * g)


def residue_invariance(G, f, a):
    """(res(f dZ), res(f([a]Z) [a]'(Z) dZ)) for a unit a."""
    e = G.endomorphism(a, M=f.M - f.lo + 2)
    pulled = f.compose(e) * e.derivative()
    return residue(f), residue(pulled)


def gram_matrix_mod(window, dual, p, k):
    """Integer Gram matrix <Z^i (x) eps, Z^j> mod p^k for exponents in the two windows."""
    mod = p ** k
    rows = []
    for i in window:
        row = []
        for j in dual:
            # res(Z^{i+j} / (1 + Z)) = (-1)^{-1-i-j} when i + j <= -1
            n = -1 - i - j
            row.append(((-1) ** n) % mod if n >= 0 else 0)
        rows.append(row)
    return rows


def gram_matrix(L, window, dual, M=None):
    """The same Gram matrix computed through series products and residues."""
    top = max(window) + max(dual) + 2 if M is None else M
    rows = []
    for i in window:
        h = TruncatedSeries.monomial(L, i, max(top, i))
        row = []
        for j in dual:
            g = TruncatedSeries.monomial(L, j, max(top, j))
            row.append(pairing(h, g))
        rows.append(row)
    return rows


def rank_mod_prime_power(rows, p, k):
    """Rank over Z/p^k counted by unit pivots (the rank of the reduction mod p)."""
    mod = p ** k
    A = [[x % mod for x in r] for r in rows]
    rank = 0
    ncols = len(A[0]) if A else 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(A)) if A[i][col] % p), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        inv = pow(A[rank][col], -1, mod)
        A[rank] = [x * inv % mod for x in A[rank]]
        for i in range(len(A)):
            if i != rank and A[i][col]:
                f = A[i][col]
                A[i] = [(x - f * y) % mod for x, y in zip(A[i], A[rank])]
        rank += 1
    return rank


def t_trace(a, n=None):
    """T(a) = p^{-n} Tr_{L_n/Q_p}(a) for a in L_n, n >= 1."""
    F = a.field
    if n is None:
        n = F.level if isinstance(F, TowerField) else 1
    if n < 1:
        raise PrecisionExhausted("T is defined for levels n >= 1")
    G = _group_of(F)
    if G is None:
        raise NotCyclotomic("T needs an element of the cyclotomic tower")
    Ln = G.tower(n)
    x = Ln.coerce(a)
    tr, _ = trace_norm(x, 0)
    base = G.field
    return base.trace_to_Qp(tr) / base.from_int(base.p ** n) if base.degree > 1 else \
        tr / base.from_int(base.p ** n)


def _group_of(F):
    return getattr(F, "group", None)


def padic_log(x):
    """log(x) for a principal unit x of a p-adic field."""
    K = x.field
    one = K.one()
    d = x - one
    if d.is_zero():
        return K.zero(d.prec)
    if d._vu() <= 0:
        raise NotPrincipalUnit("log needs x = 1 mod the maximal ideal")
    p = K.p
    E = K.E
    # raise to p-th powers until v(x - 1) > 1/(p - 1)
    r = 0
    y = x
    while (y - one)._vu() * (p - 1) <= E:
        y = y ** p
        r += 1
    z = y - one
    vz = z._vu()
    target = (x.prec if x.prec < 10 ** 15 else E * K.digits) + E * r + E
    acc = K.zero()
    pw = z
    n = 1
    while True:
        if n * vz - E * _ilog(n, p) > target:
            break
        term = pw / K.from_int(n)
        acc = acc + term if n % 2 else acc - term
        n += 1
        pw = pw * z
    return acc / K.from_int(p ** r)


def _ilog(n, p):
    k = 0
    while p ** (k + 1) <= n:
        k += 1
    return k


def iwasawa_rhs(a, u, m, k, group):
    """p^{-m} Tr_{L_m/Q_p}(log(a) Dlog(g_u)(zeta_{p^m} - 1)), certified integral, mod p^k."""
    if not group.is_cyclotomic:
        raise NotCyclotomic("Iwasawa's formula is stated for the multiplicative group")
    if m < max(k, 1):
        raise PrecisionExhausted("need m >= max(k, 1)")
    Lm = group.tower(m)
    a = Lm.coerce(a)
    la = padic_log(a)
    g = u.coleman_series
    D = group.partial_inv(g) * g.inverse()
    val = la * D.evaluate(Lm.eta)
    t = t_trace(val, m)
    L = group.field
    p = L.p
    if not t.is_zero() and t._vu() < 0:
        raise PrecisionExhausted(f"value {t} is not integral")
    if t.precision() is not None and t.precision() < k:
        raise PrecisionExhausted("not enough precision for the requested modulus")
    fr = t.to_fraction() if not t.is_zero() else Fraction(0)
    return int(fr.numerator * pow(fr.denominator, -1, p ** k) % p ** k), t


def invariant_scalar(p, m, chi_gamma, digits=30):
    """log(chi(gamma_m)) / p^m, certified to be a unit."""
    Q = rational_field(p, digits)
    x = Q.coerce(Fraction(chi_gamma))
    d = x - Q.one()
    if d.is_zero() or d._vu() != m:
        raise NotAGenerator(f"{chi_gamma} is not 1 + p^{m} times a unit")
    val = padic_log(x) / Q.from_int(p ** m)
    if val._vu() != 0:
        raise NotAGenerator(f"log scalar has valuation {val.valuation()}")
    return val


__all__ = [
    "TwistedSeries", "gram_matrix", "gram_matrix_mod", "invariant_scalar", "iwasawa_rhs",
    "padic_log", "pairing", "rank_mod_prime_power", "residue", "residue_invariance", "t_trace",
]
