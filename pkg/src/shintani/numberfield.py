"""Totally real base fields of degree <= 2: Q and real quadratic Q(sqrt(D)).

Elements are exact pairs a + b*sqrt(D) of rationals; fractional ideals are
rank-g lattices in Hermite normal form over a common denominator, written in
the integral basis (1, omega).  The narrow class group and narrow ray class
groups are materialized as explicit finite groups with multiplication
tables, following the bijection

    coprod_{a in C} Delta \\ (a/ga)^x  ->  Cl^+_F(g)

over a fixed set C of narrow ideal class representatives.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product

from .lattices import (
    coset_reps,
    det2,
    hnf_rows,
    quotient_data,
    reduce_mod,
    solve_integer_2x2,
)


def _is_squarefree(n: int) -> bool:
    d = 2
    while d * d <= n:
        if n % (d * d) == 0:
            return False
        d += 1
    return True


class FieldElement:
    """a + b*sqrt(D) with exact rational a, b.  D = 1 encodes the rational
    field (b is then identically zero)."""

    __slots__ = ("disc", "a", "b")

    def __init__(self, disc: int, a, b=0):
        self.disc = disc
        self.a = Fraction(a)
        self.b = Fraction(b)
        if disc == 1 and self.b != 0:
            raise ValueError("rational field element with sqrt part")

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.disc != self.disc:
                if other.disc == 1:
                    return FieldElement(self.disc, other.a, 0)
                if self.disc == 1:
                    raise ValueError("field mismatch")
                raise ValueError("field mismatch")
            return other
        return FieldElement(self.disc, Fraction(other), 0)

    def __add__(self, other):
        o = self._coerce(other)
        return FieldElement(self.disc, self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.disc, -self.a, -self.b)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        return FieldElement(
            self.disc,
            self.a * o.a + self.b * o.b * self.disc,
            self.a * o.b + self.b * o.a,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError
        co = o.conj()
        num = self * co
        return FieldElement(self.disc, num.a / n, num.b / n)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, k: int):
        if k < 0:
            return FieldElement(self.disc, 1) / (self ** (-k))
        out = FieldElement(self.disc, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conj(self):
        return FieldElement(self.disc, self.a, -self.b)

    def norm(self) -> Fraction:
        return self.a * self.a - self.disc * self.b * self.b

    def trace(self) -> Fraction:
        return 2 * self.a

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def sign_embedding(self, i: int) -> int:
        """Exact sign of tau_i(a + b sqrt(D)); tau_1 sends sqrt(D) to the
        positive root, tau_2 to the negative one."""
        b = self.b if i == 0 else -self.b
        a = self.a
        if b == 0:
            return 0 if a == 0 else (1 if a > 0 else -1)
        if a == 0:
            return 1 if b > 0 else -1
        sa = 1 if a > 0 else -1
        sb = 1 if b > 0 else -1
        if sa == sb:
            return sa
        # |a| vs |b| sqrt(D): compare squares
        return sa if a * a > self.disc * b * b else sb

    def is_totally_positive(self) -> bool:
        if self.disc == 1:
            return self.a > 0
        return self.sign_embedding(0) > 0 and self.sign_embedding(1) > 0

    def __eq__(self, other):
        try:
            o = self._coerce(other)
        except (ValueError, TypeError):
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        return hash((self.disc, self.a, self.b))

    def __repr__(self):
        if self.b == 0:
            return str(self.a)
        return "%s + %s*sqrt(%d)" % (self.a, self.b, self.disc)

    def to_json(self):
        return [str(self.a), str(self.b)]


@dataclass(frozen=True)
class Field:
    """Description of the base field: Q (disc tag 1) or Q(sqrt(D))."""

    disc: int  # 1 for Q, squarefree D > 1 otherwise
    degree: int
    omega_trace: int
    omega_norm: int
    eps: FieldElement  # fundamental unit (1 for Q)
    eps_plus: FieldElement  # totally positive fundamental unit
    eps_norm: int  # Norm(eps) in {+1, -1}; +1 for Q

    @property
    def is_rational(self) -> bool:
        return self.degree == 1

    def omega(self) -> FieldElement:
        if self.is_rational:
            return FieldElement(1, 1)
        if self.disc % 4 == 1:
            return FieldElement(self.disc, Fraction(1, 2), Fraction(1, 2))
        return FieldElement(self.disc, 0, 1)

    def elem(self, a, b=0) -> FieldElement:
        return FieldElement(self.disc, a, b)

    def sqrt_disc(self) -> FieldElement:
        if self.is_rational:
            raise ValueError("no sqrt(D) in Q")
        return FieldElement(self.disc, 0, 1)

    # coordinates in the integral basis (1, omega)
    def to_coords(self, x: FieldElement):
        if self.is_rational:
            return (x.a,)
        if self.disc % 4 == 1:
            return (x.a - x.b, 2 * x.b)
        return (x.a, x.b)

    def from_coords(self, v) -> FieldElement:
        if self.is_rational:
            return FieldElement(1, v[0])
        x, y = Fraction(v[0]), Fraction(v[1])
        if self.disc % 4 == 1:
            return FieldElement(self.disc, x + y / 2, y / 2)
        return FieldElement(self.disc, x, y)

    def field_disc(self) -> int:
        if self.is_rational:
            return 1
        return self.disc if self.disc % 4 == 1 else 4 * self.disc

    def maximal_order(self) -> "Ideal":
        if self.is_rational:
            return Ideal(self, [[1]], 1)
        return Ideal(self, [[1, 0], [0, 1]], 1)

    def __repr__(self):
        return "Q" if self.is_rational else "Q(sqrt(%d))" % self.disc


def make_field(d) -> Field:
    """Construct the base field from a squarefree D > 1, or the tag
    "rational" (alias 1) for Q.  The fundamental unit is found by exhaustive
    Pell search."""
    if d in ("rational", 1):
        one = FieldElement(1, 1)
        return Field(1, 1, 1, 0, one, one, 1)
    d = int(d)
    if d <= 1 or not _is_squarefree(d):
        raise ValueError("discriminant tag must be squarefree and > 1")
    eps = _pell_fundamental_unit(d)
    n = eps.norm()
    assert n in (1, -1)
    eps_plus = eps if eps.is_totally_positive() else eps * eps
    assert eps_plus.is_totally_positive()
    if d % 4 == 1:
        tr, nm = 1, -(d - 1) // 4
    else:
        tr, nm = 0, -d
    return Field(d, 2, tr, nm, eps, eps_plus, int(n))


def _pell_fundamental_unit(d: int) -> FieldElement:
    """Smallest unit > 1 of the maximal order, by brute-force search over
    x^2 - d y^2 = +-4 (d = 1 mod 4, x = y mod 2) or +-1."""
    half = d % 4 == 1
    targets = (-4, 4) if half else (-1, 1)
    y = 1
    while True:
        xs = []
        for target in targets:
            x2 = d * y * y + target
            if x2 > 0:
                x = math.isqrt(x2)
                if x * x == x2 and (not half or (x - y) % 2 == 0):
                    xs.append(x)
        if xs:
            x = min(xs)  # at the minimal y, the smaller x is the smaller unit
            if half:
                return FieldElement(d, Fraction(x, 2), Fraction(y, 2))
            return FieldElement(d, x, y)
        y += 1


class Ideal:
    """Fractional ideal as a rank-g lattice: integer HNF rows over a common
    denominator, in the integral basis (1, omega)."""

    __slots__ = ("field", "rows", "den", "_norm", "_basis")

    def __init__(self, field: Field, rows, den: int):
        self.field = field
        if den < 0:
            raise ValueError("denominator must be positive")
        g = abs(den)
        for r in rows:
            for x in r:
                g = math.gcd(g, x)
        if g > 1:
            rows = [[x // g for x in r] for r in rows]
            den //= g
        self.rows = tuple(tuple(r) for r in rows)
        self.den = den
        self._norm = None
        self._basis = None

    @staticmethod
    def from_hnf(field: Field, rows, den: int) -> "Ideal":
        return Ideal(field, hnf_rows(rows), den)

    @staticmethod
    def from_generators(field: Field, gens) -> "Ideal":
        """Smallest O_F-module containing the given field elements."""
        omega = field.omega()
        rows = []
        den = 1
        coords = []
        for x in gens:
            for y in (x, x * omega) if not field.is_rational else (x,):
                c = field.to_coords(y)
                coords.append(c)
                for q in c:
                    den = den * Fraction(q).denominator // math.gcd(
                        den, Fraction(q).denominator
                    )
        for c in coords:
            rows.append([int(q * den) for q in c])
        return Ideal.from_hnf(field, rows, den)

    @staticmethod
    def principal(field: Field, x: FieldElement) -> "Ideal":
        if x.is_zero():
            raise ValueError("zero ideal")
        return Ideal.from_generators(field, [x])

    @staticmethod
    def rational_ideal(field: Field, q) -> "Ideal":
        return Ideal.principal(field, field.elem(Fraction(q)))

    # -- basic data ----------------------------------------------------------

    def basis(self):
        """The g stored lattice generators as field elements."""
        if self._basis is None:
            self._basis = tuple(
                self.field.from_coords([Fraction(x, self.den) for x in r]) for r in self.rows
            )
        return self._basis

    def norm(self) -> Fraction:
        if self._norm is None:
            self._norm = Fraction(abs(det2([list(r) for r in self.rows])), self.den ** len(self.rows))
        return self._norm

    def is_integral(self) -> bool:
        o = self.field.maximal_order()
        return all(o.contains(b) for b in self.basis())

    def contains(self, x: FieldElement) -> bool:
        if x.is_zero():
            return True
        c = self.field.to_coords(x)
        scaled = []
        for q in c:
            q = Fraction(q) * self.den
            if q.denominator != 1:
                return False
            scaled.append(int(q))
        return solve_integer_2x2([list(r) for r in self.rows], scaled) is not None

    def coords_of(self, x: FieldElement):
        """Integer coordinates of x in the stored basis; None if not a
        member."""
        c = self.field.to_coords(x)
        scaled = []
        for q in c:
            q = Fraction(q) * self.den
            if q.denominator != 1:
                return None
            scaled.append(int(q))
        return solve_integer_2x2([list(r) for r in self.rows], scaled)

    def element_from_coords(self, m):
        b = self.basis()
        out = b[0] * m[0]
        for i in range(1, len(b)):
            out = out + b[i] * m[i]
        return out

    # -- ideal algebra --------------------------------------------------------

    def __mul__(self, other):
        if isinstance(other, FieldElement):
            return self.scale(other)
        f = self.field
        rows = []
        den = self.den * other.den
        for x in self.basis():
            for y in other.basis():
                c = f.to_coords(x * y)
                rows.append([int(Fraction(q) * den) for q in c])
        return Ideal.from_hnf(f, rows, den)

    def scale(self, x: FieldElement) -> "Ideal":
        f = self.field
        gens = [b * x for b in self.basis()]
        return Ideal.from_generators(f, gens)

    def inverse(self) -> "Ideal":
        """a^-1 = conj(a) / N(a) for quadratic fields (1/q for qZ)."""
        f = self.field
        n = self.norm()
        if f.is_rational:
            q = Fraction(self.rows[0][0], self.den)
            return Ideal.rational_ideal(f, 1 / q)
        gens = [b.conj() / n for b in self.basis()]
        inv = Ideal.from_generators(f, gens)
        assert (self * inv) == f.maximal_order(), "ideal inverse failed"
        return inv

    def __add__(self, other):
        f = self.field
        den = self.den * other.den
        rows = []
        for src in (self, other):
            scale = den // src.den
            for r in src.rows:
                rows.append([x * scale for x in r])
        return Ideal.from_hnf(f, rows, den)

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.field.disc == other.field.disc and self.rows == other.rows and self.den == other.den

    def __hash__(self):
        return hash((self.field.disc, self.rows, self.den))

    def __repr__(self):
        return "Ideal(%r, rows=%s, den=%d)" % (self.field, list(map(list, self.rows)), self.den)

    def to_json(self):
        return {"rows": [list(r) for r in self.rows], "den": self.den}

    def divides(self, other) -> bool:
        """self | other, i.e. other * self^-1 is integral."""
        q = other * self.inverse()
        o = self.field.maximal_order()
        return all(o.contains(b) for b in q.basis())


# ---------------------------------------------------------------------------
# primes and factorization


def primes_above(field: Field, p: int):
    """Prime ideals of O_F above the rational prime p."""
    if field.is_rational:
        return [Ideal.rational_ideal(field, p)]
    t, n = field.omega_trace, field.omega_norm
    # omega satisfies x^2 - t x + n
    roots = [r for r in range(p) if (r * r - t * r + n) % p == 0]
    omega = field.omega()
    if not roots:
        return [Ideal.rational_ideal(field, p)]
    out = []
    seen = set()
    for r in roots:
        pr = Ideal.from_generators(field, [field.elem(p), omega - field.elem(r)])
        if pr not in seen:
            seen.add(pr)
            out.append(pr)
    return out


def factor_integral_ideal(field: Field, a: Ideal):
    """Prime factorization [(prime ideal, exponent)] of an integral ideal."""
    o = field.maximal_order()
    n = a.norm()
    assert n.denominator == 1, "ideal is not integral"
    n = n.numerator
    out = []
    p = 2
    rest = n
    while rest > 1:
        if rest % p == 0:
            for pr in primes_above(field, p):
                e = 0
                cur = a
                while True:
                    nxt = cur * pr.inverse()
                    if all(o.contains(b) for b in nxt.basis()):
                        e += 1
                        cur = nxt
                    else:
                        break
                if e:
                    out.append((pr, e))
            while rest % p == 0:
                rest //= p
        p += 1 if p == 2 else 2
    # verification
    check = o
    for pr, e in out:
        for _ in range(e):
            check = check * pr
    assert check == a, "factorization failed"
    return out


def is_coprime(a: Ideal, b: Ideal) -> bool:
    return (a + b) == a.field.maximal_order()


# ---------------------------------------------------------------------------
# narrow classes


def _embedding_float(x: FieldElement, i: int) -> float:
    s = math.sqrt(x.disc) if x.disc > 1 else 1.0
    return float(x.a) + (1 if i == 0 else -1) * float(x.b) * s


def _generator_search_bounds(c: Ideal):
    """Coefficient box sizes guaranteed to contain a unit-reduced generator.

    If (x) = c then some associate satisfies |tau_i(x)| <= sqrt(N(c)) *
    sqrt(tau_1(eps_plus)); Cramer's rule on the embedding matrix bounds the
    coefficients, padded by a factor 2 against rounding.
    """
    f = c.field
    b1, b2 = c.basis()
    emb_bound = math.sqrt(float(c.norm())) * math.sqrt(_embedding_float(f.eps_plus, 0)) + 1e-9
    A = [[_embedding_float(b1, 0), _embedding_float(b2, 0)],
         [_embedding_float(b1, 1), _embedding_float(b2, 1)]]
    det = abs(A[0][0] * A[1][1] - A[0][1] * A[1][0])
    m1 = (abs(A[1][1]) + abs(A[0][1])) * emb_bound / det
    m2 = (abs(A[1][0]) + abs(A[0][0])) * emb_bound / det
    return int(2 * m1) + 2, int(2 * m2) + 2


def principal_generator(c: Ideal):
    """A field element x with (x) = c, or None.  Deterministic bounded
    search over lattice points with |Norm(x)| <= 4 N(c)."""
    f = c.field
    if f.is_rational:
        return f.elem(Fraction(c.rows[0][0], c.den))
    n = c.norm()
    b1, b2 = c.basis()
    bound1, bound2 = _generator_search_bounds(c)
    for m1 in range(-bound1, bound1 + 1):
        for m2 in range(0, bound2 + 1):
            if m1 == 0 and m2 == 0:
                continue
            x = b1 * m1 + b2 * m2
            nx = x.norm()
            if nx == 0 or abs(nx) > 4 * n:
                continue
            if abs(nx) == n and Ideal.principal(f, x) == c:
                return x
    return None


def is_narrowly_principal(c: Ideal):
    """Return a totally positive generator of c if one exists (narrow
    triviality), else None; c must be principal-testable at desk scale."""
    f = c.field
    x = principal_generator(c)
    if x is None:
        return None
    if f.is_rational:
        return x if x.a > 0 else -x
    # sign-adjust by units eps^n, n in [-8, 8], and by -1
    for nexp in range(0, 9):
        for base in (f.eps**nexp, f.eps ** (-nexp) if nexp else None):
            if base is None:
                continue
            for s in (1, -1):
                cand = x * base * s
                if cand.is_totally_positive():
                    return cand
    return None


def narrowly_equivalent(a: Ideal, b: Ideal):
    """Totally positive x with a = x * b, or None."""
    return is_narrowly_principal(a * b.inverse())


def _integral_ideals_of_norm_at_most(field: Field, bound: int):
    """All integral ideals with norm <= bound (O_F-stable HNF lattices)."""
    out = []
    if field.is_rational:
        for n in range(1, bound + 1):
            out.append(Ideal.rational_ideal(field, n))
        return out
    t, nm = field.omega_trace, field.omega_norm
    for a in range(1, bound + 1):
        for c in range(1, bound // a + 1):
            for b in range(0, c):
                # rows (a, b), (0, c); O_F-stability:
                # omega*(0,c) = (-nm*c, t*c + ?) etc.
                rows = [[a, b], [0, c]]
                # omega * (a + b omega) = -nm b + (a + t b) omega
                r1 = [-nm * b, a + t * b]
                # omega * (c omega) = -nm c + t c omega
                r2 = [-nm * c, t * c]
                ok = True
                for r in (r1, r2):
                    if solve_integer_2x2(rows, r) is None:
                        ok = False
                        break
                if ok:
                    out.append(Ideal(field, rows, 1))
    return out


@lru_cache(maxsize=None)
def _field_cache_key(disc):
    return make_field(disc if disc != 1 else "rational")


def narrow_class_reps(field: Field):
    """Pairwise narrowly inequivalent integral ideals covering Cl^+_F(1).

    Wide classes come from Minkowski-bounded enumeration; when Norm(eps) =
    +1 each wide class splits into two narrow classes, separated by the
    principal ideal (sqrt(D)) whose generator has mixed signs.
    """
    if field.is_rational:
        return [field.maximal_order()]
    mink = math.isqrt(field.field_disc()) // 2 + 1
    cands = _integral_ideals_of_norm_at_most(field, max(mink, 3))
    wide = []
    for c in cands:
        if not any(principal_generator(c * w.inverse()) is not None for w in wide):
            wide.append(c)
    reps = []
    if field.eps_norm == -1:
        reps = wide
    else:
        twist = Ideal.principal(field, field.sqrt_disc())
        for w in wide:
            reps.append(w)
            reps.append(Ideal.from_hnf(field, [list(r) for r in (w * twist).rows], (w * twist).den))
    # sanity: pairwise narrowly inequivalent
    for i in range(len(reps)):
        for j in range(i + 1, len(reps)):
            assert narrowly_equivalent(reps[i], reps[j]) is None, "duplicate narrow classes"
    return reps


# ---------------------------------------------------------------------------
# residue rings a/ga and the narrow ray class group


class ResidueRing:
    """The finite O_F-module a/ga with explicit coset representatives."""

    __slots__ = ("field", "ideal", "modulus", "prod_rows", "qdata", "divisors", "reps")

    def __init__(self, field: Field, ideal: Ideal, modulus: Ideal):
        self.field = field
        self.ideal = ideal
        self.modulus = modulus
        ga = modulus * ideal
        # rows of g*a in the basis of a
        rows = []
        for b in ga.basis():
            m = ideal.coords_of(b)
            assert m is not None
            rows.append(list(m))
        self.prod_rows = rows
        self.qdata = quotient_data(rows)
        self.divisors = self.qdata[0]
        self.reps = coset_reps(rows)

    def size(self) -> int:
        out = 1
        for d in self.divisors:
            out *= d
        return out

    def exponent(self) -> int:
        return max(self.divisors)

    def reduce(self, m):
        """Canonical representative (coords in the ideal basis) of m."""
        return reduce_mod(self.qdata, m)

    def reduce_element(self, x: FieldElement):
        m = self.ideal.coords_of(x)
        if m is None:
            raise ValueError("element not in the ideal")
        return self.reduce(m)

    def mul_element(self, m, x: FieldElement):
        """Residue of x * (element with coords m)."""
        y = self.ideal.element_from_coords(m) * x
        return self.reduce_element(y)

    def is_unit(self, m) -> bool:
        """Does the residue generate a/ga as an O_F/g-module?  Tested as
        (x) a^-1 + g = O_F."""
        x = self.ideal.element_from_coords(m)
        if x.is_zero():
            return False
        d = Ideal.principal(self.field, x) * self.ideal.inverse() + self.modulus
        return d == self.field.maximal_order()

    def units(self):
        return [m for m in self.reps if self.is_unit(m)]


class RayClassGroup:
    """Narrow ray class group modulo an integral ideal g != (1)."""

    def __init__(self, field: Field, modulus: Ideal):
        if modulus == field.maximal_order():
            raise ValueError("modulus (1) is not allowed")
        o = field.maximal_order()
        assert all(o.contains(b) for b in modulus.basis()), "modulus must be integral"
        self.field = field
        self.modulus = modulus
        self.class_reps = narrow_class_reps(field)
        self.residue_rings = [ResidueRing(field, a, modulus) for a in self.class_reps]
        self.elements = []  # list of (rep_index, canonical orbit residue)
        self._orbit_lookup = {}  # (rep_index, residue) -> class index
        for ai, ring in enumerate(self.residue_rings):
            seen = set()
            for m in ring.units():
                if (ai, m) in seen:
                    continue
                orbit = self._delta_orbit(ring, m)
                canon = min(orbit)
                for r in orbit:
                    seen.add((ai, r))
                    self._orbit_lookup[(ai, r)] = len(self.elements)
                self.elements.append((ai, canon))
        self._table = None
        self._identity = None
        self._decomp = None

    def _delta_orbit(self, ring: ResidueRing, m):
        eps = self.field.eps_plus
        orbit = [m]
        cur = ring.mul_element(m, eps)
        while cur != m:
            orbit.append(cur)
            cur = ring.mul_element(cur, eps)
        return orbit

    def order(self) -> int:
        return len(self.elements)

    def class_of_residue(self, rep_index: int, residue) -> int:
        ring = self.residue_rings[rep_index]
        key = (rep_index, ring.reduce(residue))
        return self._orbit_lookup[key]

    def class_of_ideal(self, b: Ideal) -> int:
        """Class index of an integral ideal prime to the modulus."""
        assert b.is_integral(), "class_of_ideal needs an integral ideal"
        for ai, a in enumerate(self.class_reps):
            y = is_narrowly_principal(b * a)  # b a = (y), y >> 0, y in a
            if y is not None:
                ring = self.residue_rings[ai]
                m = ring.reduce_element(y)
                if not ring.is_unit(m):
                    raise ValueError("ideal is not prime to the modulus")
                return self.class_of_residue(ai, m)
        raise RuntimeError("no narrow class representative matched")

    def identity(self) -> int:
        if self._identity is None:
            self._identity = self.class_of_ideal(self.field.maximal_order())
        return self._identity

    def multiply(self, i: int, j: int) -> int:
        if self._table is None:
            self._table = {}
        key = (min(i, j), max(i, j))
        if key in self._table:
            return self._table[key]
        ai, mi = self.elements[i]
        aj, mj = self.elements[j]
        a, b = self.class_reps[ai], self.class_reps[aj]
        xi = self.residue_rings[ai].ideal.element_from_coords(mi)
        xj = self.residue_rings[aj].ideal.element_from_coords(mj)
        # product class: (a^-1 xi)(b^-1 xj) = ((xi) a^-1)((xj) b^-1), integral
        prod = (Ideal.principal(self.field, xi) * a.inverse()) * (
            Ideal.principal(self.field, xj) * b.inverse()
        )
        val = self.class_of_ideal(prod)
        self._table[key] = val
        return val

    def full_table(self):
        n = self.order()
        return [[self.multiply(i, j) for j in range(n)] for i in range(n)]

    def inverse_of(self, i: int) -> int:
        e = self.identity()
        for j in range(self.order()):
            if self.multiply(i, j) == e:
                return j
        raise RuntimeError("no inverse found")

    def element_order(self, i: int) -> int:
        e = self.identity()
        cur = i
        n = 1
        while cur != e:
            cur = self.multiply(cur, i)
            n += 1
        return n

    def cyclic_decomposition(self):
        """Generators [(class index, order)] with the group equal to the
        direct product of the cyclic subgroups they generate."""
        if self._decomp is not None:
            return self._decomp
        n = self.order()
        e = self.identity()
        gens = []
        # subgroup elements generated so far, as a set of indices
        sub = {e}
        remaining = set(range(n)) - sub
        while sub != set(range(n)):
            # pick element of maximal order in the quotient (greedy)
            best, best_ord = None, 0
            for i in sorted(remaining):
                # order of i modulo current subgroup
                cur, o = i, 1
                while cur not in sub:
                    cur = self.multiply(cur, i)
                    o += 1
                if o > best_ord:
                    best, best_ord = i, o
            gens.append((best, best_ord))
            new_sub = set()
            for s in sub:
                cur = s
                for _ in range(best_ord):
                    new_sub.add(cur)
                    cur = self.multiply(cur, best)
            sub = new_sub
            remaining = set(range(n)) - sub
        # verify direct-product sizes
        total = 1
        for _, o in gens:
            total *= o
        assert total == n, "cyclic decomposition is not direct"
        self._decomp = gens
        return gens

    def ideal_representative(self, i: int) -> Ideal:
        """An integral ideal prime to the modulus lying in class i."""
        ai, m = self.elements[i]
        a = self.class_reps[ai]
        x = self.residue_rings[ai].ideal.element_from_coords(m)
        return Ideal.principal(self.field, x) * a.inverse()

    def totally_positive_in(self, ideal: Ideal, residue) -> FieldElement:
        """A totally positive element of the given residue class of
        ideal/(modulus*ideal)."""
        x = ideal.element_from_coords(residue)
        ga = self.modulus * ideal
        nrm = ga.norm()
        q = self.field.elem(nrm.numerator * nrm.denominator)  # N(ga) lies in ga
        assert ga.contains(q)
        k = 0
        while True:
            cand = x + q * k
            if cand.is_totally_positive():
                return cand
            k += 1
            if k > 10_000:
                raise RuntimeError("no totally positive lift found")

    def all_discrete_logs(self):
        """Map class index -> exponent tuple w.r.t. cyclic_decomposition()."""
        gens = self.cyclic_decomposition()
        table = {}
        for exps in product(*(range(o) for _, o in gens)):
            cur = self.identity()
            for (gidx, _), ee in zip(gens, exps):
                for _ in range(ee):
                    cur = self.multiply(cur, gidx)
            if cur not in table:
                table[cur] = exps
        assert len(table) == self.order(), "group is not the direct product"
        return table

    def discrete_log(self, i: int):
        return self.all_discrete_logs()[i]
