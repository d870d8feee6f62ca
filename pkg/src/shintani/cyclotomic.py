"""Exact arithmetic in cyclotomic fields Q(zeta_N) and their real-quadratic
composita Q(zeta_N, sqrt(D)).

Elements are stored as integer coefficient vectors over a common positive
denominator, reduced modulo the cyclotomic polynomial Phi_N.  All operations
are exact; there is no floating point anywhere in this module.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache


# ---------------------------------------------------------------------------
# integer polynomial helpers (dense lists, lowest degree first)

def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return out


def _poly_divexact(a, b):
    # exact division of integer polynomials, b monic-leading not required
    a = list(a)
    q = [0] * (len(a) - len(b) + 1)
    for i in range(len(q) - 1, -1, -1):
        c = a[i + len(b) - 1]
        if c % b[-1] != 0:
            raise ArithmeticError("inexact polynomial division")
        q[i] = c // b[-1]
        if q[i]:
            for j, bj in enumerate(b):
                a[i + j] -= q[i] * bj
    if any(a[: len(b) - 1]):
        raise ArithmeticError("nonzero remainder")
    return q


@lru_cache(maxsize=None)
def euler_phi(n: int) -> int:
    out = n
    m, p = n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            out -= out // p
        p += 1
    if m > 1:
        out -= out // m
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple:
    """Coefficients of Phi_n, lowest degree first."""
    if n == 1:
        return (-1, 1)
    num = [0] * n + [1]
    num[0] = -1  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            num = _poly_divexact(num, cyclotomic_poly(d))
    return tuple(num)


@lru_cache(maxsize=None)
def _power_table(n: int):
    """x^j mod Phi_n for 0 <= j < max(n, 2*phi-1), as int tuples of length phi."""
    phi = euler_phi(n)
    mod = cyclotomic_poly(n)
    rows = []
    cur = [0] * phi
    cur[0] = 1
    rows.append(tuple(cur))
    top = max(n, 2 * phi - 1)
    for _ in range(1, top):
        nxt = [0] + cur[:]
        if len(nxt) > phi:
            lead = nxt.pop()
            if lead:
                for i in range(phi):
                    nxt[i] -= lead * mod[i]
        cur = nxt + [0] * (phi - len(nxt))
        rows.append(tuple(cur))
    return tuple(rows)


def _vec_gcd(den, coeffs):
    g = den
    for c in coeffs:
        g = math.gcd(g, c)
        if g == 1:
            return 1
    return g


class Cyclotomic:
    """An element of Q(zeta_n), reduced mod Phi_n.

    Attributes: n (conductor), den (positive int), c (tuple of ints of
    length phi(n)); the element is sum(c[i] * zeta_n^i) / den.
    """

    __slots__ = ("n", "den", "c")

    def __init__(self, n, den, c, _normalize=True):
        if _normalize:
            if den < 0:
                den, c = -den, tuple(-x for x in c)
            g = _vec_gcd(den, c)
            if g > 1:
                den //= g
                c = tuple(x // g for x in c)
        self.n = n
        self.den = den
        self.c = tuple(c)

    # -- constructors ------------------------------------------------------

    @staticmethod
    def rational(q, n: int = 1) -> "Cyclotomic":
        q = Fraction(q)
        phi = euler_phi(n)
        c = [0] * phi
        c[0] = q.numerator
        return Cyclotomic(n, q.denominator, c)

    @staticmethod
    def zero(n: int = 1) -> "Cyclotomic":
        return Cyclotomic(n, 1, (0,) * euler_phi(n), _normalize=False)

    @staticmethod
    def one(n: int = 1) -> "Cyclotomic":
        return Cyclotomic.rational(1, n)

    @staticmethod
    def root_of_unity(n: int, k: int = 1) -> "Cyclotomic":
        """zeta_n^k as an element of Q(zeta_n)."""
        k %= n
        return Cyclotomic(n, 1, _power_table(n)[k], _normalize=False)

    # -- conductor handling ------------------------------------------------

    def lift(self, m: int) -> "Cyclotomic":
        """Image in Q(zeta_m); requires n | m."""
        if m == self.n:
            return self
        if m % self.n != 0:
            raise ValueError("conductor %d does not divide %d" % (self.n, m))
        step = m // self.n
        pt = _power_table(m)
        phi = euler_phi(m)
        out = [0] * phi
        for i, ci in enumerate(self.c):
            if ci:
                row = pt[(i * step) % m]
                for j in range(phi):
                    out[j] += ci * row[j]
        return Cyclotomic(m, self.den, out)

    def _pair(self, other):
        if not isinstance(other, Cyclotomic):
            other = Cyclotomic.rational(other)
        if self.n == other.n:
            return self, other
        m = self.n * other.n // math.gcd(self.n, other.n)
        return self.lift(m), other.lift(m)

    # -- ring operations ----------------------------------------------------

    def __add__(self, other):
        a, b = self._pair(other)
        da, db = a.den, b.den
        g = math.gcd(da, db)
        la, lb = db // g, da // g
        return Cyclotomic(a.n, da * lb, tuple(x * la + y * lb for x, y in zip(a.c, b.c)))

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.n, self.den, tuple(-x for x in self.c), _normalize=False)

    def __sub__(self, other):
        a, b = self._pair(other)
        return a + (-b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        a, b = self._pair(other)
        phi = euler_phi(a.n)
        if phi == 1:
            return Cyclotomic(a.n, a.den * b.den, (a.c[0] * b.c[0],))
        # fast path: one operand rational
        if all(x == 0 for x in a.c[1:]):
            s = a.c[0]
            return Cyclotomic(b.n, a.den * b.den, tuple(s * y for y in b.c))
        if all(y == 0 for y in b.c[1:]):
            s = b.c[0]
            return Cyclotomic(a.n, a.den * b.den, tuple(s * x for x in a.c))
        conv = [0] * (2 * phi - 1)
        ac, bc = a.c, b.c
        for i, ai in enumerate(ac):
            if ai:
                for j, bj in enumerate(bc):
                    if bj:
                        conv[i + j] += ai * bj
        pt = _power_table(a.n)
        out = list(conv[:phi])
        for j in range(phi, 2 * phi - 1):
            cj = conv[j]
            if cj:
                row = pt[j]
                for t in range(phi):
                    out[t] += cj * row[t]
        return Cyclotomic(a.n, a.den * b.den, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.inv() ** (-k)
        out = Cyclotomic.one(self.n)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def inv(self) -> "Cyclotomic":
        """Multiplicative inverse via extended gcd with Phi_n."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero cyclotomic element")
        n, phi = self.n, euler_phi(self.n)
        if phi == 1:
            return Cyclotomic(n, self.c[0], (self.den,))
        mod = [Fraction(x) for x in cyclotomic_poly(n)]
        a = [Fraction(x, 1) for x in self.c]
        # extended Euclid: s*a + t*mod = gcd (a constant)
        r0, r1 = mod, a
        s0, s1 = [Fraction(0)], [Fraction(1)]

        def deg(p):
            for i in range(len(p) - 1, -1, -1):
                if p[i]:
                    return i
            return -1

        while deg(r1) > 0:
            d0, d1 = deg(r0), deg(r1)
            q = [Fraction(0)] * (d0 - d1 + 1)
            rr = r0[:]
            for i in range(d0 - d1, -1, -1):
                c = rr[i + d1] / r1[d1]
                q[i] = c
                if c:
                    for j in range(d1 + 1):
                        rr[i + j] -= c * r1[j]
            r0, r1 = r1, rr[: max(deg(rr) + 1, 1)]
            snew = s0[:]
            snew += [Fraction(0)] * (len(q) + len(s1) - 1 - len(snew))
            for i, qi in enumerate(q):
                if qi:
                    for j, sj in enumerate(s1):
                        snew[i + j] -= qi * sj
            s0, s1 = s1, snew
        lead = r1[0]
        if lead == 0:
            raise ZeroDivisionError("element is a zero divisor (unreduced input?)")
        # s1/lead inverts the numerator polynomial; (num/den)^-1 = den * num^-1
        inv_coeffs = [sj * self.den / lead for sj in s1]
        inv_coeffs += [Fraction(0)] * (phi - len(inv_coeffs))
        den = 1
        for f in inv_coeffs:
            den = den * f.denominator // math.gcd(den, f.denominator)
        c = tuple(int(f * den) for f in inv_coeffs[:phi])
        return Cyclotomic(n, den, c)

    def __truediv__(self, other):
        a, b = self._pair(other)
        return a * b.inv()

    def galois(self, k: int) -> "Cyclotomic":
        """Apply zeta -> zeta^k (k coprime to n)."""
        n = self.n
        if math.gcd(k, n) != 1:
            raise ValueError("galois exponent must be coprime to conductor")
        pt = _power_table(n)
        phi = euler_phi(n)
        out = [0] * phi
        for i, ci in enumerate(self.c):
            if ci:
                row = pt[(i * k) % n]
                for j in range(phi):
                    out[j] += ci * row[j]
        return Cyclotomic(n, self.den, out)

    def conj(self) -> "Cyclotomic":
        """Complex conjugation zeta -> zeta^-1."""
        if self.n == 1:
            return self
        return self.galois(self.n - 1)

    # -- predicates / conversions -------------------------------------------

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.c)

    def is_rational(self) -> bool:
        return all(x == 0 for x in self.c[1:])

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("element is not rational")
        return Fraction(self.c[0], self.den)

    def reduce_conductor(self) -> "Cyclotomic":
        """Rewrite over the smallest cyclotomic subfield Q(zeta_d), d | n,
        that contains the element (d minimal among divisors)."""
        el = self
        changed = True
        while changed and el.n > 1:
            changed = False
            for q in sorted(_prime_divisors(el.n)):
                d = el.n // q
                low = _descend(el, d)
                if low is not None:
                    el = low
                    changed = True
                    break
        return el

    def __eq__(self, other):
        if not isinstance(other, Cyclotomic):
            try:
                other = Cyclotomic.rational(other)
            except (TypeError, ValueError):
                return NotImplemented
        a, b = self._pair(other)
        return a.den == b.den and a.c == b.c

    def __hash__(self):
        r = self.reduce_conductor()
        return hash((r.n, r.den, r.c))

    def __repr__(self):
        if self.is_rational():
            return str(Fraction(self.c[0], self.den))
        terms = []
        for i, ci in enumerate(self.c):
            if ci:
                terms.append("%d*z%d^%d" % (ci, self.n, i))
        s = " + ".join(terms) if terms else "0"
        return "(%s)/%d" % (s, self.den) if self.den != 1 else s

    def to_json(self):
        r = self.reduce_conductor()
        return {"conductor": r.n, "num": list(r.c), "den": r.den}

    @staticmethod
    def from_json(d):
        return Cyclotomic(int(d["conductor"]), int(d["den"]), [int(x) for x in d["num"]])


def _prime_divisors(n):
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def _descend(el: Cyclotomic, d: int):
    """Express el in Q(zeta_d) if possible (d | n), else None."""
    n = el.n
    if n % d != 0:
        return None
    # Galois invariance test: el fixed by all sigma_k with k = 1 mod d
    for k in range(1, n):
        if math.gcd(k, n) == 1 and k % d == 1 % d and k != 1:
            if el.galois(k) != el:
                return None
    # solve el = sum_j y_j zeta_d^j over Q by Gaussian elimination
    phi_n, phi_d = euler_phi(n), euler_phi(d)
    step = n // d
    cols = []
    pt = _power_table(n)
    for j in range(phi_d):
        cols.append(pt[(j * step) % n])
    # matrix phi_n x phi_d, rhs el coefficients (as Fractions)
    A = [[Fraction(cols[j][i]) for j in range(phi_d)] for i in range(phi_n)]
    rhs = [Fraction(ci, el.den) for ci in el.c]
    sol = _solve_overdetermined(A, rhs)
    if sol is None:
        return None
    den = 1
    for f in sol:
        den = den * f.denominator // math.gcd(den, f.denominator)
    return Cyclotomic(d, den, tuple(int(f * den) for f in sol))


def _solve_overdetermined(A, b):
    """Solve A x = b exactly (A: m x k list of Fractions, m >= k); None if
    inconsistent."""
    m, k = len(A), len(A[0]) if A else 0
    M = [row[:] + [b[i]] for i, row in enumerate(A)]
    piv_rows = []
    col = 0
    for col in range(k):
        piv = None
        for r in range(len(piv_rows), m):
            if M[r][col] != 0:
                piv = r
                break
        if piv is None:
            continue
        r0 = len(piv_rows)
        M[r0], M[piv] = M[piv], M[r0]
        pv = M[r0][col]
        M[r0] = [x / pv for x in M[r0]]
        for r in range(m):
            if r != r0 and M[r][col] != 0:
                f = M[r][col]
                M[r] = [x - f * y for x, y in zip(M[r], M[r0])]
        piv_rows.append(col)
    # consistency
    for r in range(len(piv_rows), m):
        if M[r][k] != 0:
            return None
    sol = [Fraction(0)] * k
    for i, col in enumerate(piv_rows):
        sol[col] = M[i][k]
    # verify (guards against missed pivot bookkeeping)
    for i in range(m):
        acc = Fraction(0)
        for j in range(k):
            acc += A[i][j] * sol[j]
        if acc != b[i]:
            return None
    return sol


class QuadCyclotomic:
    """u + v*sqrt(D) with u, v in Q(zeta_N); the exact coefficient ring for
    degree-2 base fields.  D = 1 degenerates to the cyclotomic field itself
    (v is forced to stay zero there by construction)."""

    __slots__ = ("disc", "u", "v")

    def __init__(self, disc: int, u: Cyclotomic, v: Cyclotomic):
        self.disc = disc
        self.u = u
        self.v = v

    @staticmethod
    def of(x, disc=1):
        if isinstance(x, QuadCyclotomic):
            return x
        if isinstance(x, Cyclotomic):
            return QuadCyclotomic(disc, x, Cyclotomic.zero())
        return QuadCyclotomic(disc, Cyclotomic.rational(x), Cyclotomic.zero())

    def _pair(self, other):
        if not isinstance(other, QuadCyclotomic):
            other = QuadCyclotomic.of(other, self.disc)
        if self.disc != other.disc:
            if self.v.is_zero() and self.disc == 1:
                return QuadCyclotomic(other.disc, self.u, self.v), other
            if other.v.is_zero() and other.disc == 1:
                return self, QuadCyclotomic(self.disc, other.u, other.v)
            raise ValueError("incompatible quadratic parts")
        return self, other

    def __add__(self, other):
        a, b = self._pair(other)
        return QuadCyclotomic(a.disc, a.u + b.u, a.v + b.v)

    __radd__ = __add__

    def __neg__(self):
        return QuadCyclotomic(self.disc, -self.u, -self.v)

    def __sub__(self, other):
        a, b = self._pair(other)
        return a + (-b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        a, b = self._pair(other)
        if a.v.is_zero() and b.v.is_zero():
            return QuadCyclotomic(a.disc, a.u * b.u, a.v)
        u = a.u * b.u + (a.v * b.v) * a.disc
        v = a.u * b.v + a.v * b.u
        return QuadCyclotomic(a.disc, u, v)

    __rmul__ = __mul__

    def inv(self):
        nrm = self.u * self.u - (self.v * self.v) * self.disc
        ni = nrm.inv()
        return QuadCyclotomic(self.disc, self.u * ni, -(self.v * ni))

    def __truediv__(self, other):
        a, b = self._pair(other)
        return a * b.inv()

    def conj_quad(self):
        """sqrt(D) -> -sqrt(D)."""
        return QuadCyclotomic(self.disc, self.u, -self.v)

    def is_zero(self):
        return self.u.is_zero() and self.v.is_zero()

    def __eq__(self, other):
        a, b = self._pair(other)
        return a.u == b.u and a.v == b.v

    def __hash__(self):
        return hash((self.disc, self.u, self.v))

    def __repr__(self):
        if self.v.is_zero():
            return repr(self.u)
        return "(%r) + (%r)*sqrt(%d)" % (self.u, self.v, self.disc)


# ---------------------------------------------------------------------------
# truncated multivariate power series


class TruncSeries:
    """Truncated power series in `nvars` variables up to total degree `cap`,
    with coefficients in a common exact ring (Cyclotomic or QuadCyclotomic).

    Terms are stored sparsely as {exponent tuple: coefficient}; zero
    coefficients are dropped eagerly.
    """

    __slots__ = ("nvars", "cap", "terms")

    def __init__(self, nvars: int, cap: int, terms=None):
        self.nvars = nvars
        self.cap = cap
        self.terms = dict(terms) if terms else {}

    @staticmethod
    def constant(nvars, cap, coeff):
        s = TruncSeries(nvars, cap)
        if not coeff.is_zero():
            s.terms[(0,) * nvars] = coeff
        return s

    def _check(self, other):
        if self.nvars != other.nvars or self.cap != other.cap:
            raise ValueError("series shape mismatch")

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            if e in out:
                s = out[e] + c
                if s.is_zero():
                    del out[e]
                else:
                    out[e] = s
            else:
                out[e] = c
        return TruncSeries(self.nvars, self.cap, out)

    def __neg__(self):
        return TruncSeries(self.nvars, self.cap, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, TruncSeries):
            # scalar
            if hasattr(other, "is_zero") and other.is_zero():
                return TruncSeries(self.nvars, self.cap)
            return TruncSeries(
                self.nvars, self.cap, {e: c * other for e, c in self.terms.items()}
            )
        self._check(other)
        cap = self.cap
        out = {}
        for e1, c1 in self.terms.items():
            d1 = sum(e1)
            for e2, c2 in other.terms.items():
                if d1 + sum(e2) > cap:
                    continue
                e = tuple(a + b for a, b in zip(e1, e2))
                p = c1 * c2
                if e in out:
                    out[e] = out[e] + p
                else:
                    out[e] = p
        return TruncSeries(
            self.nvars, self.cap, {e: c for e, c in out.items() if not c.is_zero()}
        )

    __rmul__ = __mul__

    def constant_term(self):
        z = (0,) * self.nvars
        if z in self.terms:
            return self.terms[z]
        return None  # caller supplies the ring zero

    def is_zero(self):
        return not self.terms

    def inverse(self):
        """Inverse of a series whose constant term is a unit."""
        z = (0,) * self.nvars
        c0 = self.terms.get(z)
        if c0 is None:
            raise ZeroDivisionError("series has no unit constant term")
        c0i = c0.inv()
        # self = c0 (1 + R);  1/self = c0i * sum (-R)^t
        rest = TruncSeries(self.nvars, self.cap, {e: c for e, c in self.terms.items() if e != z})
        r = rest * c0i
        acc = TruncSeries.constant(self.nvars, self.cap, c0i * c0)  # = 1
        # Horner: acc <- 1 - r*acc, repeated, converges in <= cap steps
        one = acc
        for _ in range(self.cap):
            acc = one - (r * acc)
        return acc * c0i

    def apply_log_derivative(self, j: int):
        """(1 + T_j) d/dT_j applied to the series."""
        out = {}
        for e, c in self.terms.items():
            k = e[j]
            if k == 0:
                continue
            ck = c * _scalar(c, k)
            # T^{e}: contributes k*T^{e} + k*T^{e - 1_j}
            for tgt in (e, e[:j] + (k - 1,) + e[j + 1 :]):
                if tgt in out:
                    out[tgt] = out[tgt] + ck
                else:
                    out[tgt] = ck
        return TruncSeries(self.nvars, self.cap, {e: c for e, c in out.items() if not c.is_zero()})

    def map_coeffs(self, f):
        out = {}
        for e, c in self.terms.items():
            fc = f(c)
            if not fc.is_zero():
                out[e] = fc
        return TruncSeries(self.nvars, self.cap, out)

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return (self - other).is_zero()

    def __repr__(self):
        items = sorted(self.terms.items(), key=lambda kv: (sum(kv[0]), kv[0]))
        return "TruncSeries(cap=%d, %s)" % (
            self.cap,
            ", ".join("%s: %r" % (e, c) for e, c in items[:8]) + ("..." if len(items) > 8 else ""),
        )


def _scalar(template, k):
    """k as an element of the coefficient ring of `template`."""
    if isinstance(template, QuadCyclotomic):
        return QuadCyclotomic.of(Cyclotomic.rational(k), template.disc)
    return Cyclotomic.rational(k)


@lru_cache(maxsize=None)
def _binom_row(m: int, cap: int):
    """binom(m, k) for k = 0..cap, m any integer (negative allowed)."""
    out = [Fraction(1)]
    cur = Fraction(1)
    for k in range(1, cap + 1):
        cur = cur * Fraction(m - k + 1, k)
        out.append(cur)
    return tuple(out)


def monomial_series(nvars: int, cap: int, exps, scalar) -> TruncSeries:
    """scalar * prod_j (1 + T_j)^{exps[j]} truncated to total degree cap.

    Exponents may be negative; binomial coefficients are exact rationals.
    The scalar must be a Cyclotomic or QuadCyclotomic element.
    """
    rows = [_binom_row(int(m), cap) for m in exps]
    out = {}

    def rec(j, e, coeff, deg):
        if j == nvars:
            c = scalar * Cyclotomic.rational(coeff)
            if not (hasattr(c, "is_zero") and c.is_zero()):
                out[tuple(e)] = c
            return
        for k in range(0, cap - deg + 1):
            b = rows[j][k]
            if b == 0:
                continue
            e.append(k)
            rec(j + 1, e, coeff * b, deg + k)
            e.pop()

    rec(0, [], Fraction(1), 0)
    return TruncSeries(nvars, cap, out)
