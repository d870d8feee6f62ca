"""Torsion points of the tori Hom(a, G_m) (additive characters of a/ga),
their unit/element/ideal actions, Hecke characters of narrow ray class
groups, finite Fourier coefficients and Gauss sums.

A torsion point is stored as an exponent vector against the owner ideal's
HNF basis: xi(m1*g1 + m2*g2) = zeta_N^(m1*e1 + m2*e2) where N is the
exponent of a/ga.  All values are exact roots of unity.
"""

from __future__ import annotations

import math
from itertools import product

from .cyclotomic import Cyclotomic
from .numberfield import (
    Field,
    FieldElement,
    Ideal,
    RayClassGroup,
    ResidueRing,
    factor_integral_ideal,
)


def ideal_lcm(a: Ideal, b: Ideal) -> Ideal:
    return (a * b) * (a + b).inverse()


class TorsionPoint:
    """Additive character of a/ga with exact root-of-unity values."""

    __slots__ = ("owner", "modulus", "root_order", "exps")

    def __init__(self, owner: Ideal, modulus: Ideal, root_order: int, exps, check=True):
        self.owner = owner
        self.modulus = modulus
        self.root_order = root_order
        self.exps = tuple(e % root_order for e in exps)
        if check:
            ga = modulus * owner
            for b in ga.basis():
                m = owner.coords_of(b)
                assert m is not None
                if sum(mi * ei for mi, ei in zip(m, self.exps)) % root_order != 0:
                    raise ValueError("character does not kill g*a")

    # -- evaluation ----------------------------------------------------------

    def exponent_at_coords(self, m) -> int:
        return sum(mi * ei for mi, ei in zip(m, self.exps)) % self.root_order

    def exponent_at(self, x: FieldElement) -> int:
        m = self.owner.coords_of(x)
        if m is None:
            raise ValueError("element not in the owner ideal")
        return self.exponent_at_coords(m)

    def value(self, x: FieldElement) -> Cyclotomic:
        return Cyclotomic.root_of_unity(self.root_order, self.exponent_at(x))

    def order(self) -> int:
        g = self.root_order
        for e in self.exps:
            g = math.gcd(g, e)
        return self.root_order // g

    def is_trivial(self) -> bool:
        return all(e % self.root_order == 0 for e in self.exps)

    # -- structure -----------------------------------------------------------

    def is_primitive(self) -> bool:
        """True iff xi does not factor through a/g'a for any g' strictly
        containing g (checked prime by prime on g)."""
        f = self.owner.field
        for pr, _ in factor_integral_ideal(f, self.modulus):
            smaller = self.modulus * pr.inverse()
            ga = smaller * self.owner
            kills = True
            for b in ga.basis():
                if self.exponent_at(b) != 0:
                    kills = False
                    break
            if kills:
                return False
        return True

    # -- actions -------------------------------------------------------------

    def act_element(self, x: FieldElement) -> "TorsionPoint":
        """<x>: torsion of T^{xa} -> torsion of T^a, xi^x(alpha) = xi(x
        alpha).  The owner of the result is (1/x) * owner."""
        if not x.is_totally_positive():
            raise ValueError("the element action needs a totally positive x")
        target = self.owner.scale(FieldElement(x.disc, 1) / x)
        exps = []
        for g in target.basis():
            exps.append(self.exponent_at(g * x))
        return TorsionPoint(target, self.modulus, self.root_order, exps, check=False)

    def act_unit(self, eps: FieldElement) -> "TorsionPoint":
        out = self.act_element(eps)
        assert out.owner == self.owner
        return out

    def act_ideal(self, b: Ideal) -> "TorsionPoint":
        """xi^b on a*b, defined by restriction along a*b subset a; b must be
        integral and prime to the modulus."""
        f = self.owner.field
        if not b.is_integral():
            raise ValueError("ideal action needs an integral ideal")
        if (b + self.modulus) != f.maximal_order():
            raise ValueError("ideal action needs b prime to the modulus")
        target = self.owner * b
        new_ring = ResidueRing(f, target, self.modulus)
        new_order = new_ring.exponent()
        exps = []
        for g in target.basis():
            e = self.exponent_at(g)
            # rescale from zeta_{root_order} to zeta_{new_order}
            assert (e * new_order) % self.root_order == 0
            exps.append(e * new_order // self.root_order)
        return TorsionPoint(target, self.modulus, new_order, exps, check=False)

    def mul(self, other: "TorsionPoint") -> "TorsionPoint":
        """Pointwise product of characters on the same owner ideal; the
        modulus of the product is the lcm of the two moduli."""
        assert self.owner == other.owner
        mod = ideal_lcm(self.modulus, other.modulus)
        ring = ResidueRing(self.owner.field, self.owner, mod)
        n = ring.exponent()
        exps = []
        for g in self.owner.basis():
            e1, e2 = self.exponent_at(g), other.exponent_at(g)
            assert (e1 * n) % self.root_order == 0 and (e2 * n) % other.root_order == 0
            exps.append(e1 * n // self.root_order + e2 * n // other.root_order)
        return TorsionPoint(self.owner, mod, n, exps, check=False)

    def delta_orbit(self):
        """Representatives xi^(eps_+^i), i = 0..h-1, h = stabilizer index."""
        f = self.owner.field
        orbit = [self]
        cur = self.act_unit(f.eps_plus)
        while cur != self:
            orbit.append(cur)
            cur = cur.act_unit(f.eps_plus)
        return orbit

    def stabilizer_index(self) -> int:
        return len(self.delta_orbit())

    def __eq__(self, other):
        if not isinstance(other, TorsionPoint):
            return NotImplemented
        return (
            self.owner == other.owner
            and self.root_order == other.root_order
            and self.exps == other.exps
        )

    def __hash__(self):
        return hash((self.owner, self.root_order, self.exps))

    def __repr__(self):
        return "TorsionPoint(N=%d, exps=%s)" % (self.root_order, list(self.exps))

    def sort_key(self):
        return (self.root_order, self.exps)

    def to_json(self):
        return {
            "owner": self.owner.to_json(),
            "modulus": self.modulus.to_json(),
            "root_order": self.root_order,
            "exps": list(self.exps),
            "primitive": self.is_primitive(),
        }


def enumerate_torsion(owner: Ideal, modulus: Ideal, primitive_only=False):
    """All characters of a/ga via the Smith normal form of the inclusion
    ga in a; #characters = Ng."""
    f = owner.field
    ring = ResidueRing(f, owner, modulus)
    divisors, V, _ = ring.qdata
    n = ring.exponent()
    g = len(divisors)
    out = []
    for cs in product(*(range(d) for d in divisors)):
        # exponent at coords z:  sum_j (n/d_j) c_j (z V)_j
        exps = []
        for i in range(g):
            e = sum((n // divisors[j]) * cs[j] * V[i][j] for j in range(g))
            exps.append(e % n)
        xi = TorsionPoint(owner, modulus, n, exps, check=False)
        if primitive_only and not xi.is_primitive():
            continue
        out.append(xi)
    out.sort(key=lambda t: t.sort_key())
    return out


def fold_torsion_classes(field: Field, modulus: Ideal, primitive_only=True, class_reps=None):
    """Representatives of T[g] = (coprod_a T^a[g]) / F_+^x, computed as the
    disjoint union over narrow class representatives of Delta-orbits.

    Returns a list of (rep_ideal_index, TorsionPoint, stabilizer_index).
    """
    from .numberfield import narrow_class_reps

    reps = class_reps if class_reps is not None else narrow_class_reps(field)
    out = []
    for ai, a in enumerate(reps):
        seen = set()
        for xi in enumerate_torsion(a, modulus, primitive_only=primitive_only):
            if xi in seen:
                continue
            orbit = xi.delta_orbit()
            canon = min(orbit, key=lambda t: t.sort_key())
            for o in orbit:
                seen.add(o)
            out.append((ai, canon, len(orbit)))
    return out


# ---------------------------------------------------------------------------
# Hecke characters


class HeckeCharacter:
    """Finite Hecke character of Cl^+_F(g), with values stored as exponents
    of a fixed primitive root of unity of order h (the character order)."""

    __slots__ = ("group", "order", "exp_table", "_primitive", "_cond")

    def __init__(self, group: RayClassGroup, order: int, exp_table):
        self.group = group
        self.order = order
        self.exp_table = tuple(e % order for e in exp_table)  # per class index
        self._primitive = None
        self._cond = None

    @staticmethod
    def from_decomposition_exponents(group: RayClassGroup, ks):
        """Character sending the i-th decomposition generator g_i (of order
        o_i) to zeta_{o_i}^{k_i}."""
        gens = group.cyclic_decomposition()
        logs = group.all_discrete_logs()
        h = 1
        for (_, o), k in zip(gens, ks):
            ordk = o // math.gcd(o, k)
            h = h * ordk // math.gcd(h, ordk)
        table = []
        for i in range(group.order()):
            exps = logs[i]
            e = 0
            for (gi, o), k, ee in zip(gens, ks, exps):
                e = (e + (h // o) * k * ee) % h
            table.append(e)
        return HeckeCharacter(group, h, table)

    def exponent_on_class(self, i: int) -> int:
        return self.exp_table[i]

    def value_on_class(self, i: int) -> Cyclotomic:
        return Cyclotomic.root_of_unity(self.order, self.exp_table[i])

    def value_on_ideal(self, b: Ideal) -> Cyclotomic:
        """Extension by zero: 0 when b is not prime to the modulus."""
        if (b + self.group.modulus) != self.group.field.maximal_order():
            return Cyclotomic.zero()
        return self.value_on_class(self.group.class_of_ideal(b))

    def residue_value_exponent(self, rep_index: int, residue):
        """chi_a on a/ga: exponent of zeta_order, or None off the units."""
        ring = self.group.residue_rings[rep_index]
        m = ring.reduce(residue)
        if not ring.is_unit(m):
            return None
        return self.exp_table[self.group.class_of_residue(rep_index, m)]

    def is_trivial(self) -> bool:
        return all(e == 0 for e in self.exp_table)

    def _kernel_classes_towards(self, pr: Ideal):
        """Classes of ideals (x), x totally positive, x = 1 mod g/pr,
        prime to g: the kernel of Cl^+(g) -> Cl^+(g/pr)."""
        grp = self.group
        f = grp.field
        modulus = grp.modulus
        smaller = modulus * pr.inverse()
        o_index = next(
            i for i, a in enumerate(grp.class_reps) if a == f.maximal_order()
        )
        ring = grp.residue_rings[o_index]
        small_ga = smaller  # modulus ideal of O_F is the ideal itself
        out = set()
        one = f.elem(1)
        for m in ring.units():
            x = ring.ideal.element_from_coords(m)
            if not smaller.contains(x - one):
                continue
            out.add(grp.class_of_residue(o_index, m))
        return out

    def is_primitive(self) -> bool:
        """Conductor equals the modulus: chi is nontrivial on every kernel
        Cl^+(g) -> Cl^+(g/pr)."""
        if self._primitive is not None:
            return self._primitive
        ok = True
        f = self.group.field
        for pr, _ in factor_integral_ideal(f, self.group.modulus):
            kern = self._kernel_classes_towards(pr)
            if all(self.exp_table[c] == 0 for c in kern):
                ok = False
                break
        self._primitive = ok
        return ok

    def conductor(self) -> Ideal:
        """The smallest modulus through which chi factors.  Raises if the
        conductor is (1) (such characters are outside the L-value engine)."""
        if self._cond is not None:
            return self._cond
        f = self.group.field
        cur = self
        while not cur.is_primitive():
            grp = cur.group
            for pr, _ in factor_integral_ideal(f, grp.modulus):
                kern = cur._kernel_classes_towards(pr)
                if all(cur.exp_table[c] == 0 for c in kern):
                    smaller = grp.modulus * pr.inverse()
                    if smaller == f.maximal_order():
                        raise ValueError("character has conductor (1)")
                    cur = cur.restrict_to(RayClassGroup(f, smaller))
                    break
        self._cond = cur.group.modulus
        return self._cond

    def restrict_to(self, smaller_group: RayClassGroup) -> "HeckeCharacter":
        """The character of a smaller-modulus group inducing chi (requires
        that chi factors through it)."""
        grp = self.group
        table = [None] * smaller_group.order()
        for i in range(grp.order()):
            b = self.ideal_representative(i)
            j = smaller_group.class_of_ideal(b)
            e = self.exp_table[i]
            if table[j] is None:
                table[j] = e
            else:
                assert table[j] == e, "character does not factor"
        assert all(t is not None for t in table)
        h = self.order
        g = h
        for t in table:
            g = math.gcd(g, t)
        hh = h // g if g else 1
        return HeckeCharacter(smaller_group, hh, [t // g if g else 0 for t in table])

    def primitive_part(self) -> "HeckeCharacter":
        f = self.group.field
        cur = self
        while not cur.is_primitive():
            grp = cur.group
            moved = False
            for pr, _ in factor_integral_ideal(f, grp.modulus):
                kern = cur._kernel_classes_towards(pr)
                if all(cur.exp_table[c] == 0 for c in kern):
                    smaller = grp.modulus * pr.inverse()
                    if smaller == f.maximal_order():
                        raise ValueError("character has conductor (1)")
                    cur = cur.restrict_to(RayClassGroup(f, smaller))
                    moved = True
                    break
            assert moved
        return cur

    def ideal_representative(self, i: int) -> Ideal:
        """An integral ideal prime to the modulus in class i."""
        grp = self.group
        ai, m = grp.elements[i]
        a = grp.class_reps[ai]
        x = grp.residue_rings[ai].ideal.element_from_coords(m)
        return Ideal.principal(grp.field, x) * a.inverse()

    def __repr__(self):
        return "HeckeCharacter(order=%d, exps=%s)" % (self.order, list(self.exp_table))

    def to_json(self):
        return {
            "modulus": self.group.modulus.to_json(),
            "order": self.order,
            "exp_table": list(self.exp_table),
            "primitive": self.is_primitive(),
        }


def enumerate_hecke_characters(group: RayClassGroup, primitive_only=False):
    gens = group.cyclic_decomposition()
    out = []
    for ks in product(*(range(o) for _, o in gens)):
        chi = HeckeCharacter.from_decomposition_exponents(group, ks)
        if primitive_only and not chi.is_primitive():
            continue
        out.append(chi)
    out.sort(key=lambda c: (c.order, c.exp_table))
    return out


def character_product(chi1: HeckeCharacter, chi2: HeckeCharacter) -> HeckeCharacter:
    """Product character on the lcm modulus (not primitivized)."""
    f = chi1.group.field
    mod = ideal_lcm(chi1.group.modulus, chi2.group.modulus)
    if mod == chi1.group.modulus:
        big = chi1.group
    elif mod == chi2.group.modulus:
        big = chi2.group
    else:
        big = RayClassGroup(f, mod)
    h = chi1.order * chi2.order // math.gcd(chi1.order, chi2.order)
    table = []
    for i in range(big.order()):
        b = HeckeCharacter(big, 1, [0] * big.order()).ideal_representative(i)
        e1 = chi1.exp_table[chi1.group.class_of_ideal(b)]
        e2 = chi2.exp_table[chi2.group.class_of_ideal(b)]
        table.append(((h // chi1.order) * e1 + (h // chi2.order) * e2) % h)
    g = h
    for t in table:
        g = math.gcd(g, t)
    if g > 1:
        h //= g
        table = [t // g for t in table]
    return HeckeCharacter(big, max(h, 1), table)


# ---------------------------------------------------------------------------
# Fourier coefficients and Gauss sums


def fourier_coefficient(chi: HeckeCharacter, xi: TorsionPoint) -> Cyclotomic:
    """c_chi(xi) = Ng^{-1} sum_{beta in a/ga} chi_a(beta) xi(-beta), exact
    in Q(zeta_lcm(N, h))."""
    grp = chi.group
    if xi.modulus != grp.modulus:
        raise ValueError("modulus mismatch between character and torsion point")
    rep_index = next(i for i, a in enumerate(grp.class_reps) if a == xi.owner)
    ring = grp.residue_rings[rep_index]
    ng = int(grp.modulus.norm())
    lcm = chi.order * xi.root_order // math.gcd(chi.order, xi.root_order)
    total = Cyclotomic.zero(lcm)
    for m in ring.reps:
        ce = chi.residue_value_exponent(rep_index, m)
        if ce is None:
            continue
        xe = xi.exponent_at_coords(m)
        e = (ce * (lcm // chi.order) - xe * (lcm // xi.root_order)) % lcm
        total = total + Cyclotomic.root_of_unity(lcm, e)
    return total * Cyclotomic.rational(1) / Cyclotomic.rational(ng)


def gauss_sum(chi: HeckeCharacter, xi: TorsionPoint) -> Cyclotomic:
    ng = int(chi.group.modulus.norm())
    return fourier_coefficient(chi, xi) * Cyclotomic.rational(ng)
