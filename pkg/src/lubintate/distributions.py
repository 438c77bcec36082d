"""Finite-level measures on Z_p^x for the multiplicative group.

Here the Mellin transform is the Amice transform sum mu(a) (1 + Z)^a, the
coefficient field at level n is L_n = Q_p(zeta_{p^n}), and every character
of (Z/p^n)^x takes values in L_n.  Crystalline objects are one-dimensional
lines on which Frobenius acts by a scalar alpha.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    ConductorMismatch,
    ConvergenceDomain,
    DegenerateFrobenius,
    LevelMismatch,
    NotAUnit,
    NotCyclotomic,
    PsiZeroViolation,
    TrivialCharacter,
)
from .padic import TowerField, teichmuller, trace_norm
from .series import INF, TruncatedSeries


# characters -----------------------------------------------------------------


def primitive_root(p):
    """Smallest generator of (Z/p^2)^x, hence of every (Z/p^n)^x for odd p."""
    if p == 2:
        raise NotCyclotomic("odd primes only")
    phi = p * (p - 1)
    factors = _prime_factors(phi)
    for r in range(2, p * p):
        if r % p and all(pow(r, phi // f, p * p) != 1 for f in factors):
            return r
    raise ValueError("no primitive root")


def _prime_factors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def discrete_logs(p, n):
    """a -> k with a = r^k mod p^n."""
    r = primitive_root(p)
    mod = p ** n
    out = {}
    x = 1
    for k in range((p - 1) * p ** (n - 1)):
        out[x] = k
        x = x * r % mod
    return out


@dataclass(frozen=True)
class CharacterData:
    """rho(r) = omega^s zeta_{p^e}^t for the primitive root r (t a unit mod p^e when e > 0)."""

    p: int
    level: int
    s: int
    e: int
    t: int
    twist_exponent: int = 0

    @property
    def conductor(self):
        if self.e > 0:
            return self.e + 1
        return 1 if self.s % (self.p - 1) else 0

    @property
    def is_trivial(self):
        return self.conductor == 0

    def inverse(self):
        return CharacterData(self.p, self.level, (-self.s) % (self.p - 1), self.e,
                             (-self.t) % (self.p ** self.e) if self.e else 0,
                             self.twist_exponent)

    def at_level(self, n):
        if n < self.conductor:
            raise LevelMismatch(f"character of conductor {self.conductor} needs level >= it")
        return CharacterData(self.p, n, self.s, self.e, self.t, self.twist_exponent)

    def key(self):
        return (self.s, self.e, self.t)

    def __str__(self):
        return f"rho[s={self.s},e={self.e},t={self.t}]"


def characters(p, n):
    """All characters of (Z/p^n)^x."""
    out = []
    for s in range(p - 1):
        out.append(CharacterData(p, n, s, 0, 0))
        for e in range(1, n):
            for t in range(1, p ** e):
                if t % p:
                    out.append(CharacterData(p, n, s, e, t))
    return out


class CharacterTable:
    """Values of characters of (Z/p^n)^x inside the tower of a multiplicative group."""

    def __init__(self, group, n):
        if not group.is_cyclotomic:
            raise NotCyclotomic("character tables need the multiplicative group")
        self.group = group
        self.p = group.field.p
        self.n = n
        self.logs = discrete_logs(self.p, n)
        L = group.field
        self.omega = teichmuller(L, primitive_root(self.p))
        self._zeta = {}

    def field(self, level):
        return self.group.field if level == 0 else self.group.tower(level)

    def zeta(self, k, K):
        """zeta_{p^k} = 1 + eta_k inside K."""
        if k == 0:
            return K.one()
        z = self.group.tower(k).eta + self.group.tower(k).one()
        return K.embed(z) if K is not z.field else z

    def value(self, rho, a, K):
        a %= self.p ** self.n
        if a % self.p == 0:
            raise NotAUnit(f"{a} is not a unit")
        k = self.logs[a % self.p ** self.n]
        val = K.coerce(self.omega) ** ((rho.s * k) % (self.p - 1))
        if rho.e:
            val = val * self.zeta(rho.e, K) ** ((rho.t * k) % self.p ** rho.e)
        return val


def units(p, n):
    return [a for a in range(1, p ** n) if a % p]


# measures --------------------------------------------------------------------


@dataclass
class FiniteMeasure:
    """mu on (Z/p^n)^x with values in Q (ints or Fractions) or in L_n."""

    p: int
    level: int
    values: dict
    label: str = ""

    def to_json(self):
        return {"level": self.level, "p": self.p, "label": self.label,
                "values": {str(a): str(v) for a, v in sorted(self.values.items())}}

    @classmethod
    def from_json(cls, data):
        vals = {int(a): Fraction(v) for a, v in data["values"].items()}
        return cls(int(data.get("p", 3)), int(data["level"]), vals, data.get("label", ""))

    @classmethod
    def dirac(cls, p, n, a):
        return cls(p, n, {a % p ** n: 1}, f"delta_{a}")

    @classmethod
    def random(cls, p, n, rng=None, bound=9):
        rng = rng or random.Random(0)
        return cls(p, n, {a: rng.randint(-bound, bound) for a in units(p, n)}, "random")

    def twist(self, j=1):
        """a -> a^j mu(a) on integer representatives in [1, p^n)."""
        return FiniteMeasure(self.p, self.level,
                             {a: v * a ** j for a, v in self.values.items()}, f"Tw({self.label})")


def _coerce_value(K, v):
    if isinstance(v, Fraction):
        return K.from_fraction(v)
    if isinstance(v, int):
        return K.from_int(v)
    return K.coerce(v)


def mellin_level_n(group, mu):
    """sum mu(a) (1 + Z)^a with a in [1, p^n), an exact polynomial of degree < p^n."""
    if not group.is_cyclotomic:
        raise NotCyclotomic("the Mellin transform is the Amice transform here")
    L = group.field
    N = mu.p ** mu.level
    coeffs = [Fraction(0)] * N
    scalar = True
    for a, v in mu.values.items():
        if not isinstance(v, (int, Fraction)):
            scalar = False
            break
        r = a % N
        for k in range(r + 1):
            coeffs[k] += Fraction(v) * math.comb(r, k)
    if scalar:
        return TruncatedSeries.polynomial(L, [L.from_fraction(c) for c in coeffs], N - 1)
    K = group.tower(mu.level)
    acc = [K.zero()] * N
    for a, v in mu.values.items():
        r = a % N
        for k in range(r + 1):
            acc[k] = acc[k] + _coerce_value(K, v) * math.comb(r, k)
    return TruncatedSeries.polynomial(K, acc, N - 1)


def eval_character(table, mu, rho, j=0):
    """sum over a of rho(a) a^j mu(a), in L_n."""
    if mu.level != table.n or rho.conductor > mu.level:
        raise LevelMismatch("measure and character must live at the table level")
    K = table.field(table.n)
    acc = K.zero()
    for a, v in mu.values.items():
        acc = acc + table.value(rho, a, K) * K.from_int(a) ** j * _coerce_value(K, v)
    return acc


def nabla_eval(table, mu, rho, j):
    """The derivation nabla evaluated at rho chi^j: j times the character value."""
    return eval_character(table, mu, rho, j) * j


def twist_nabla_check(table, mu, rho, j, k=1):
    """Tw_{chi^k} o nabla = (nabla + k) o Tw_{chi^k} at rho chi^j."""
    lhs = nabla_eval(table, mu, rho, j + k)
    tw = mu.twist(k)
    rhs = nabla_eval(table, tw, rho, j) + eval_character(table, tw, rho, j) * k
    return lhs, rhs


def gauss_sum(table, rho):
    """sum over (Z/p^c)^x of rho(a)^{-1} zeta_{p^c}^a, c the conductor."""
    c = rho.conductor
    if c == 0:
        raise TrivialCharacter("Gauss sums need a nontrivial character")
    K = table.field(c)
    zeta = table.zeta(c, K)
    inv = rho.inverse()
    acc = K.zero()
    for a in units(table.p, c):
        acc = acc + table.value(inv, a, K) * zeta ** a
    return acc


def gauss_identity(table, rho):
    """(tau(rho) tau(rho^{-1}) rho(-1), q^{a(rho)}) in L_{a(rho)}."""
    c = rho.conductor
    K = table.field(c)
    lhs = gauss_sum(table, rho) * gauss_sum(table, rho.inverse()) * table.value(rho, -1, K)
    return lhs, K.from_int(table.p ** c)


def idempotent_apply(table, rho, x):
    """e_rho x = [L_n:L]^{-1} sum_g rho(g^{-1}) sigma_g(x) for x in L_n."""
    n = table.n
    K = table.field(n)
    x = K.coerce(x)
    acc = K.zero()
    inv = rho.inverse()
    for g in units(table.p, n):
        acc = acc + table.value(inv, g, K) * K.galois_apply(g, x)
    return acc / K.from_int(len(units(table.p, n)))


# crystalline lines and the maps Theta, Theta*, Ev ------------------------------


@dataclass(frozen=True)
class CrisLine:
    """A one-dimensional line on which Frobenius acts by alpha (a rational number)."""

    frobenius_scalar: Fraction
    label: str = "d"

    def tensor(self, other):
        return CrisLine(Fraction(self.frobenius_scalar) * Fraction(other.frobenius_scalar),
                        f"{self.label}*{other.label}")


def line_e(j, pi):
    return CrisLine(Fraction(pi) ** (-j), f"e_{j}")


def line_d1(pi, q):
    return CrisLine(Fraction(pi, q), "d_1")


def _trace(x, m):
    if isinstance(x.field, TowerField) and x.field.level > m:
        return trace_norm(x, m)[0]
    return x


def _twisted_sum(table, rho, y):
    """sum over g in G_c of rho(g) sigma_g^{-1}(y) inside L_c."""
    c = rho.conductor
    K = table.field(c)
    N = table.p ** c
    acc = K.zero()
    for g in units(table.p, c):
        g_inv = pow(g, -1, N)
        acc = acc + table.value(rho, g, K) * K.galois_apply(g_inv, y)
    return acc


def _theta_components(table, x, trivial_scalar, twist_base):
    n = table.n
    K = table.field(n)
    x = K.coerce(x)
    out = {}
    for rho in characters(table.p, n):
        c = rho.conductor
        if c == 0:
            out[rho.key()] = trivial_scalar * _trace(x, 0)
        else:
            y = _trace(x, c)
            Kc = table.field(c)
            scale = Kc.from_fraction(twist_base ** c)
            out[rho.key()] = gauss_sum(table, rho).inverse() * scale * _twisted_sum(table, rho, y)
    return out


def theta(table, line, x):
    """Theta_{W,n}(x) as its table of character components."""
    L = table.group.field
    q = Fraction(table.group.q)
    alpha = Fraction(line.frobenius_scalar)
    if alpha == 1 or alpha == q:
        raise DegenerateFrobenius(f"Frobenius scalar {alpha} makes Theta singular")
    scalar = L.from_fraction((1 - alpha) / (1 - 1 / (q * alpha)))
    return _theta_components(table, x, scalar, q * alpha)


def theta_star(table, line, x):
    """Theta*_{W,n}(x); the factor 1 - (pi/q) alpha may vanish, the inverted one may not."""
    L = table.group.field
    q = Fraction(table.group.q)
    pi = Fraction(table.group.pi.to_fraction())
    alpha = Fraction(line.frobenius_scalar)
    if alpha * pi == 1:
        raise DegenerateFrobenius(f"Frobenius scalar {alpha} makes Theta* singular")
    scalar = L.from_fraction((1 - pi * alpha / q) / (1 - 1 / (pi * alpha)))
    return _theta_components(table, x, scalar, pi * alpha)


class GeometricSolution:
    """x = sum_k alpha^k phi^k(F) for F = Mellin(mu), read at the torsion points.

    The sum is formal: at eta_n only the terms k < n see a torsion point, the
    rest evaluate F at 0 and are summed as a geometric series.
    """

    def __init__(self, group, mu, line):
        alpha = Fraction(line.frobenius_scalar)
        if alpha == 1:
            raise DegenerateFrobenius("alpha = 1 has no geometric inverse of 1 - phi")
        self.group = group
        self.mu = mu
        self.alpha = alpha
        self.F = mellin_level_n(group, mu)

    def value_at_zero(self):
        L = self.group.field
        return self.F.coeff(0) * L.from_fraction(1 / (1 - self.alpha))

    def value_at(self, n):
        if n == 0:
            return self.value_at_zero()
        K = self.group.tower(n)
        acc = K.coerce(self.value_at_zero()) * K.from_fraction(self.alpha ** n)
        for k in range(n):
            pt = self.group.tower(n - k).eta
            acc = acc + K.coerce(self.F.evaluate(pt)) * K.from_fraction(self.alpha ** k)
        return acc


def ev_crystalline(group, line, n, x):
    """Ev_{W,n}: x(eta_n) alpha^{-n} for n >= 1, x(0)(1 - q^{-1} alpha^{-1}) for n = 0."""
    alpha = Fraction(line.frobenius_scalar)
    q = group.q
    if isinstance(x, TruncatedSeries):
        value = x.coeff(0) if n == 0 else x.evaluate(group.tower(n).eta)
    else:
        value = x.value_at(n)
    K = value.field
    if n == 0:
        return value * K.from_fraction(1 - 1 / (q * alpha))
    return value * K.from_fraction(alpha ** (-n))


def ev_trace_relation(group, line, x, n, m):
    """(Tr_{L_n/L_m}(q^{-n} Ev_n(x)), q^{-m} Ev_m(x))."""
    q = Fraction(group.q)
    hi = ev_crystalline(group, line, n, x)
    hi = hi * hi.field.from_fraction(q ** (-n))
    lo = ev_crystalline(group, line, m, x)
    lo = lo * lo.field.from_fraction(q ** (-m))
    return _trace(hi, m), lo


def evn_diagram_check(table, line, mu):
    """Theta(q^{-n} Ev_n(x)) against the characters of pr(mu), x the geometric solution."""
    G = table.group
    n = table.n
    x = GeometricSolution(G, mu, line)
    v = ev_crystalline(G, line, n, x)
    v = v * v.field.from_fraction(Fraction(G.q) ** (-n))
    comps = theta(table, line, v)
    rows = []
    for rho in characters(table.p, n):
        got = comps[rho.key()]
        want = eval_character(table, mu, rho, 0)
        K = table.field(n)
        rows.append((rho, K.coerce(got) if got.field is not K else got, want))
    return rows


def character_value_check(table, mu, rho):
    """(eval at rho, [L_n:L] tau(rho)^{-1} e_rho Mellin(mu)(eta_n)) for conductor-n rho."""
    n = table.n
    if rho.conductor != n:
        raise ConductorMismatch("needs a character of conductor equal to the level")
    G = table.group
    K = table.field(n)
    F = mellin_level_n(G, mu)
    val = F.evaluate(K.eta)
    tau = K.coerce(gauss_sum(table, rho))
    right = idempotent_apply(table, rho, val) * K.from_int(len(units(table.p, n))) / tau
    return eval_character(table, mu, rho, 0), right


def theta_compatibility(table_n, table_m, line, x):
    """Components of Theta_n(x) for characters through level m against Theta_m(Tr x)."""
    m = table_m.n
    hi = theta(table_n, line, x)
    lo = theta(table_m, line, _trace(x, m))
    rows = []
    for rho in characters(table_m.p, m):
        rows.append((rho, hi[rho.at_level(table_n.n).key()], lo[rho.key()]))
    return rows


# l-factors --------------------------------------------------------------------


def ell_factor(k, j, mode="analytic"):
    """prod_{i<k} (j - i), either from the closed case split or as the product."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    if mode == "product":
        out = 1
        for i in range(k):
            out *= j - i
        return Fraction(out)
    if mode != "analytic":
        raise ValueError(f"unknown mode {mode}")
    if j >= k:
        return Fraction(math.factorial(j), math.factorial(j - k))
    if j >= 0:
        return Fraction(0)
    return Fraction((-1) ** k * math.factorial(k - 1 - j), math.factorial(-j - 1))


# regulator series ---------------------------------------------------------------


def regulator_series(ctx, g):
    """F = (1 - (pi/q) phi)(partial_inv log g) with psi(F) = 0 certified.

    When log-derivative D has a pole, phi(D) has unbounded pole order and
    only a truncated expansion over L is returned; psi(F) = 0 is then
    certified through psi(D) = D and the identity psi phi = (q/pi) id.
    """
    G = ctx.group
    L = G.field
    D = G.partial_inv(g) * g.inverse()
    ratio = L.coerce(G.pi) / L.from_int(G.q)
    F = D - ctx.phi_apply(D).scale(ratio)
    if D.lo >= 0:
        chk = ctx.psi_apply(F)
        bad = [c for c in chk.coeffs if not c.is_zero()]
    else:
        chk = ctx.psi_apply(D) - D
        bad = [c for c in chk.coeffs if not c.is_zero()]
    if bad:
        raise PsiZeroViolation("psi of the regulator series is not zero")
    return F


def _one_plus_z_power(L, a, M):
    # (1 + Z)^a for any integer a, with integral coefficients
    if a >= 0:
        coeffs = [math.comb(a, k) for k in range(M + 1)]
        return TruncatedSeries(L, 0, [L.from_int(c) for c in coeffs],
                               tail=INF if a <= M else Fraction(0))
    b = -a
    coeffs = [(-1) ** k * math.comb(b + k - 1, k) for k in range(M + 1)]
    return TruncatedSeries(L, 0, [L.from_int(c) for c in coeffs], tail=Fraction(0))


def coset_masses(ctx, H, m, c=None):
    """a -> psi^m((1 + Z)^{-a} (H - c phi(H)))(0) for a in (Z/p^m)^x.

    The phi part is moved through the projection formula,
    psi^m(phi(H) h) = psi^{m-1}(H psi(h)), so phi is never applied to H.
    """
    G = ctx.group
    L = G.field
    p = L.p
    M = H.M
    out = {}
    for a in units(p, m):
        shift = _one_plus_z_power(L, -a, M - H.lo if H.lo < 0 else M)
        h = (shift * H).truncate(M)
        for _ in range(m):
            h = ctx.psi_apply(h)
        val = h.coeff(0)
        if c is not None:
            k = ctx.psi_apply(shift)
            k = (H * k).truncate(min(H.M, k.M))
            for _ in range(m - 1):
                k = ctx.psi_apply(k)
            val = val - c * k.coeff(0)
        out[a] = val
    return out


def reg_twist_eval(ctx, table, g, rho, j):
    """Both sides of the regulator twist identity; returns (left, right).

    Left: the character sum of the coset masses of G = partial_inv^{j-1} F.
    Right: [L_m:L] tau(rho)^{-1} e_rho (partial_inv^j log g)(eta_m).  For the
    trivial character: G(0) against (1 - pi^j/q) (partial_inv^j log g)(0).
    """
    G = ctx.group
    if not G.is_cyclotomic:
        raise NotCyclotomic("the regulator twist is stated for the multiplicative group")
    m = table.n
    L = G.field
    regulator_series(ctx, g)
    D = G.partial_inv(g) * g.inverse()
    H = G.partial_inv(D, j - 1)
    pi = L.coerce(G.pi)
    # partial_inv^{j-1} phi = pi^{j-1} phi partial_inv^{j-1}
    c = pi ** j / L.from_int(G.q)
    if rho.is_trivial:
        if g.order() != 0 or not g.is_integral():
            raise NotAUnit("the trivial branch needs an integral unit series")
        F = regulator_series(ctx, g)
        left = G.partial_inv(F, j - 1).coeff(0)
        return left, (L.one() - c) * H.coeff(0)
    if rho.conductor != m:
        raise ConductorMismatch(f"character conductor {rho.conductor} differs from level {m}")
    K = table.field(m)
    if g.order() != 0 or not g.is_integral():
        left = _pseudo_measure_value(ctx, table, g, rho, j)
    else:
        masses = coset_masses(ctx, H, m, c)
        left = K.zero()
        for a, v in masses.items():
            left = left + table.value(rho, a, K) * K.coerce(v)
    val = H.evaluate(K.eta)
    tau = K.coerce(gauss_sum(table, rho))
    right = idempotent_apply(table, rho, val) * K.from_int(len(units(table.p, m))) / tau
    return left, right


def _pseudo_measure_value(ctx, table, g, rho, j):
    """Left side for a g with a pole, through the unit g_c = g([c](Z)) / g.

    Both sides for g_c are (c^j rho(c) - 1) times those for g; c runs over
    small units until that factor is nonzero.
    """
    G = ctx.group
    L = G.field
    K = table.field(table.n)
    for cval in range(2, 2 * table.p + 2):
        if cval % table.p == 0:
            continue
        factor = K.from_int(cval) ** j * table.value(rho, cval, K) - K.one()
        if factor.is_zero():
            continue
        e = G.endomorphism(cval, M=g.M)
        gc = (g.compose(e) * g.inverse()).truncate(g.M)
        D = G.partial_inv(gc) * gc.inverse()
        H = G.partial_inv(D, j - 1)
        c = L.coerce(G.pi) ** j / L.from_int(G.q)
        masses = coset_masses(ctx, H, table.n, c)
        acc = K.zero()
        for a, v in masses.items():
            acc = acc + table.value(rho, a, K) * K.coerce(v)
        return acc / factor
    raise ConductorMismatch("no unit c with c^j rho(c) != 1")


def phi_part_annihilated(ctx, table, g, rho, j):
    """e_rho of (phi H)(eta_m) = H(eta_{m-1}) for H = partial_inv^{j-1} of the log-derivative."""
    G = ctx.group
    m = table.n
    D = G.partial_inv(g) * g.inverse()
    H = G.partial_inv(D, j - 1)
    K = table.field(m)
    point = G.frobenius_eval(K.eta)
    if m == 1 and H.lo < 0:
        raise ConvergenceDomain("phi of a pole is not defined at eta_1")
    return idempotent_apply(table, rho, H.evaluate(point) if m > 1 else K.coerce(H.coeff(0)))


def tw_derivative_check(group, mu):
    """(1 + Z) d/dZ of Mellin(mu) against Mellin(a mu(a)), exactly."""
    F = mellin_level_n(group, mu)
    L = F.ring
    # (1 + Z) F' coefficientwise: (k + 1) F_{k+1} + k F_k
    top = F.M
    lhs = [F.coeff(k + 1) * (k + 1) if k < top else L.zero() for k in range(top + 1)]
    lhs = [c + F.coeff(k) * k for k, c in enumerate(lhs)]
    lhs = TruncatedSeries.polynomial(L, lhs, top)
    rhs = mellin_level_n(group, mu.twist(1))
    ok = all((lhs.coeff(i) - rhs.coeff(i)).is_zero() for i in range(F.M + 1))
    return {"ok": ok, "lhs": lhs, "rhs": rhs}


def rank_over_field(rows):
    """Rank of a matrix of p-adic elements, counting only certified nonzero pivots."""
    A = [list(r) for r in rows]
    rank = 0
    ncols = len(A[0]) if A else 0
    for col in range(ncols):
        piv = None
        best = None
        for i in range(rank, len(A)):
            c = A[i][col]
            if not c.is_zero():
                v = c._vu()
                if best is None or v < best:
                    piv, best = i, v
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        inv = A[rank][col].inverse()
        for i in range(len(A)):
            if i != rank and not A[i][col].is_zero():
                f = A[i][col] * inv
                A[i] = [a - f * b for a, b in zip(A[i], A[rank])]
        rank += 1
    return rank


def theta_matrix(table, line, star=False):
    """Rows: Theta components of the basis eta_n^k of L_n over L (degree-one L only)."""
    n = table.n
    K = table.field(n)
    chars = characters(table.p, n)
    rows = []
    for k in range(K.degree):
        x = K.eta ** k
        comps = (theta_star if star else theta)(table, line, x)
        rows.append([K.coerce(comps[r.key()]) if comps[r.key()].field is not K
                     else comps[r.key()] for r in chars])
    return rows


__all__ = [
    "CharacterData", "CharacterTable", "CrisLine", "FiniteMeasure", "GeometricSolution",
    "characters", "coset_masses", "discrete_logs", "ell_factor", "eval_character",
    "ev_crystalline", "ev_trace_relation", "evn_diagram_check", "gauss_identity",
    "gauss_sum", "idempotent_apply", "character_value_check", "line_d1", "line_e",
    "mellin_level_n", "nabla_eval", "phi_part_annihilated", "primitive_root",
    "rank_over_field", "reg_twist_eval", "regulator_series", "theta", "theta_compatibility",
    "theta_matrix", "theta_star", "tw_derivative_check", "twist_nabla_check", "units",
    "INF",
]
