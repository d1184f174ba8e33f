"""Artin-Schreier-Witt tower descriptions and their per-level numerology.

A tower over P^1 is given by a truncated Witt vector of rational functions
with poles in the branch locus.  Reduced data (all pole orders prime to p,
a pole of the first component at every branch place) makes every branch place
totally ramified at every level; upper ramification breaks then follow the
conductor recursion u_{i+1} = max(p u_i, d_i) on the componentwise pole
orders, and lower breaks come from the Herbrand function.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (AswError, DegenerateLeadingTerm, LevelExceedsDepth, NotNormalizable,
                     UnsupportedLength)
from .field import Fq
from .funcfield import Chain, FFElem
from .polyrat import INF, Place, PolyRing, QuotientField, Rat, RatField
from .witt import MAX_LENGTH, RingOps, WittVector, eval_int_poly, sum_carries, witt_add, witt_wp


def _rat_ops(Q: RatField) -> RingOps:
    return RingOps(zero=Q.zero, add=Q.add, mul=Q.mul, from_int=Q.from_int,
                   pth_power=Q.pth_power)


@dataclass(frozen=True)
class TowerSpec:
    """Defining data of a Z/p^m tower of covers of P^1."""

    field: Fq
    branch: tuple[Place, ...]
    witt: tuple[Rat, ...]

    @property
    def depth(self) -> int:
        return len(self.witt)

    def rings(self):
        R = PolyRing(self.field)
        return R, RatField(R)

    def validate(self) -> None:
        if not self.branch:
            raise AswError("branch locus must be nonempty")
        if self.depth == 0 or self.depth > MAX_LENGTH:
            raise UnsupportedLength(f"depth must be in 1..{MAX_LENGTH}")
        if len(set(self.branch)) != len(self.branch):
            raise AswError("duplicate branch places")
        R, Q = self.rings()
        for pl in self.branch:
            if not pl.is_infinite() and not R.is_irreducible(pl.poly):
                raise AswError("branch places must be irreducible")
        branch = set(self.branch)
        for f in self.witt:
            if f.is_zero():
                continue
            for pole in Q.poles(f):
                if pole not in branch:
                    raise AswError(f"pole outside the branch locus: {pole}")

    def pole_order(self, i: int, pl: Place) -> int:
        """Pole order of component i at the place (0 if regular there)."""
        _, Q = self.rings()
        f = self.witt[i]
        if f.is_zero():
            return 0
        v = Q.valuation(f, pl)
        return max(0, -v)


def tower_make(field: Fq, branch, witt) -> TowerSpec:
    spec = TowerSpec(field, tuple(branch), tuple(witt))
    spec.validate()
    return spec


def normalize_asw(spec: TowerSpec) -> TowerSpec:
    """Reduced form: kill every pole order divisible by p by Witt-level shifts.

    Component i is adjusted by the additive operator applied to a vector
    supported in slot i; slots below i are untouched, so one increasing pass
    suffices.  The returned spec defines the same extension.
    """
    spec.validate()
    R, Q = spec.rings()
    F = spec.field
    p = F.p
    ops = _rat_ops(Q)
    m = spec.depth
    comps = list(spec.witt)

    def wvec(values):
        return WittVector(tuple(values), p, ops)

    for i in range(m):
        guard = 0
        while True:
            f = comps[i]
            if f.is_zero():
                break
            target = None
            for pole in Q.poles(f):
                order = -Q.valuation(f, pole)
                if order > 0 and order % p == 0:
                    target = (pole, order)
                    break
            if target is None:
                break
            pole, order = target
            e = order // p
            if pole.is_infinite():
                lead = F.mul(f.num[-1], F.inv(f.den[-1]))
                c = F.pth_root(lead)
                w = Q.smul(c, Q.pow(Q.x, e))
            else:
                K = QuotientField(R, pole.poly)
                qr = Q.from_poly(pole.poly)
                unit = Q.mul(f, Q.pow(qr, order))
                lead = K.eval_rat(unit)
                c = K.pth_root(lead)
                w = Q.div(Q.from_poly(R.mod(c, pole.poly) if c else ()), Q.pow(qr, e))
            shift = [Q.zero] * m
            shift[i] = Q.neg(w)
            adjusted = witt_add(wvec(comps), witt_wp(wvec(shift)))
            comps = list(adjusted.components)
            guard += 1
            if guard > 10000:
                raise NotNormalizable("reduction did not terminate")

    out = TowerSpec(spec.field, spec.branch, tuple(comps))
    # reduced data must keep every branch place totally ramified
    for pl in out.branch:
        if out.pole_order(0, pl) == 0:
            raise NotNormalizable(f"branch place not totally ramified after reduction: {pl}")
        for i in range(m):
            d = out.pole_order(i, pl)
            if d and d % p == 0:
                raise NotNormalizable("pole order still divisible by p")
    return out


@dataclass(frozen=True)
class RamificationData:
    """Break structure of one branch place up to a fixed level."""

    place: Place
    upper: tuple[int, ...]
    lower: tuple[int, ...]
    p: int

    def psi(self, x: Fraction) -> Fraction:
        """Herbrand psi: slope p^i between consecutive upper breaks."""
        x = Fraction(x)
        if x <= self.upper[0]:
            return x
        val = Fraction(self.lower[0])
        for i in range(1, len(self.upper)):
            u_prev, u_next = self.upper[i - 1], self.upper[i]
            if x <= u_next:
                return val + (x - u_prev) * self.p**i
            val = Fraction(self.lower[i])
        return val + (x - self.upper[-1]) * self.p ** len(self.upper)

    def phi(self, y: Fraction) -> Fraction:
        y = Fraction(y)
        if y <= self.lower[0]:
            return y
        for i in range(1, len(self.lower)):
            if y <= self.lower[i]:
                return self.upper[i - 1] + (y - self.lower[i - 1]) / self.p**i
        return self.upper[-1] + (y - self.lower[-1]) / self.p ** len(self.lower)

    def different_exponent(self) -> int:
        """sum (|G_j| - 1) over the lower-numbered filtration steps."""
        n = len(self.lower)
        p = self.p
        total = (self.lower[0] + 1) * (p**n - 1)
        for j in range(1, n):
            total += (self.lower[j] - self.lower[j - 1]) * (p ** (n - j) - 1)
        return total


def breaks(spec: TowerSpec, n: int, place: Place) -> RamificationData:
    """Upper and lower ramification breaks of the level-n quotient at a place."""
    if n < 1 or n > spec.depth:
        raise LevelExceedsDepth(f"level {n} outside 1..{spec.depth}")
    if place not in spec.branch:
        raise AswError(f"{place} is not a branch place")
    p = spec.field.p
    d = [spec.pole_order(i, place) for i in range(n)]
    upper = [d[0]]
    for i in range(1, n):
        upper.append(max(p * upper[-1], d[i]))
    lower = [upper[0]]
    for i in range(1, n):
        lower.append(lower[-1] + p**i * (upper[i] - upper[i - 1]))
    return RamificationData(place, tuple(upper), tuple(lower), p)


def genus_rh(spec: TowerSpec, n: int) -> int:
    """Genus of the level-n curve from the different of the breaks."""
    if n == 0:
        return 0
    p = spec.field.p
    total = p**n * (-2)
    for pl in spec.branch:
        total += pl.degree() * breaks(spec, n, pl).different_exponent()
    assert total % 2 == 0
    g = (total + 2) // 2
    if g < 0:
        raise AswError("negative genus; malformed tower")
    return g


def prank_ds(spec: TowerSpec, n: int) -> int:
    """p-rank of the level-n curve: (p^n - 1)(deg S - 1) over a rational base."""
    if n == 0:
        return 0
    if n > spec.depth:
        raise LevelExceedsDepth(f"level {n} outside 0..{spec.depth}")
    D = sum(pl.degree() for pl in spec.branch)
    p = spec.field.p
    return (p**n - 1) * (D - 1)


@dataclass(frozen=True)
class LevelInvariants:
    level: int
    degree: int
    lower_breaks: dict
    genus: int
    p_rank: int
    different_exponents: dict


def level_invariants(spec: TowerSpec, n: int) -> LevelInvariants:
    if n == 0:
        return LevelInvariants(0, 1, {}, 0, 0, {})
    br = {pl: breaks(spec, n, pl) for pl in spec.branch}
    return LevelInvariants(
        level=n,
        degree=spec.field.p**n,
        lower_breaks={pl: br[pl].lower for pl in spec.branch},
        genus=genus_rh(spec, n),
        p_rank=prank_ds(spec, n),
        different_exponents={pl: br[pl].different_exponent() for pl in spec.branch},
    )


class RamPoint:
    """The unique point of the level-n curve above a totally ramified place.

    Carries exact valuations of the chain variables and their leading values
    (angular components normalized so the branch polynomial, or 1/x, has
    leading value 1); sums of monomials are then certified to first order.
    """

    def __init__(self, curve: "Curve", place: Place, ram: RamificationData):
        self.place = place
        self.ram = ram
        self.curve = curve
        R = curve.chain.R
        self.K = QuotientField(R, place.poly if not place.is_infinite() else R.x)
        self.e = curve.field.p ** curve.level
        self.v_y: list[int] = []
        self.ac_y: list = []

    def rat_val_ac(self, c: Rat):
        """(valuation at the point, leading value) of a rational function."""
        Q = self.curve.chain.Q
        K = self.K
        if c.is_zero():
            raise AswError("valuation of zero")
        if self.place.is_infinite():
            R = self.curve.chain.R
            m = R.deg(c.den) - R.deg(c.num)
            lead = self.curve.field.mul(c.num[-1], self.curve.field.inv(c.den[-1]))
            return self.e * m, K.from_base(lead)
        m = Q.valuation(c, self.place)
        qr = Q.from_poly(self.place.poly)
        unit = Q.mul(c, Q.pow(qr, -m))
        return self.e * m, K.eval_rat(unit)

    def monomial_val_ac(self, J, c: Rat):
        v, ac = self.rat_val_ac(c)
        K = self.K
        for i, e in enumerate(J):
            if e:
                v += e * self.v_y[i]
                ac = K.mul(ac, K.pow(self.ac_y[i], e))
        return v, ac

    def elem_val_ac(self, u: FFElem):
        """Valuation and leading value of a chain element; exact, first order."""
        if not u:
            raise AswError("valuation of zero")
        terms = [self.monomial_val_ac(J, c) for J, c in sorted(u.items())]
        vmin = min(v for v, _ in terms)
        K = self.K
        ac = K.zero
        for v, a in terms:
            if v == vmin:
                ac = K.add(ac, a)
        if ac == K.zero:
            raise DegenerateLeadingTerm(
                f"leading cancellation at {self.place}; deeper expansion unsupported")
        return vmin, ac

    def elem_valuation(self, u: FFElem) -> int:
        return self.elem_val_ac(u)[0]

    def v_dx(self) -> int:
        base = -2 * self.e if self.place.is_infinite() else 0
        return base + self.ram.different_exponent()


class Curve:
    """A level-n curve of a tower: chain relations plus ramified-point data."""

    def __init__(self, spec: TowerSpec, n: int):
        if n < 0 or n > spec.depth:
            raise LevelExceedsDepth(f"level {n} outside 0..{spec.depth}")
        self.spec = spec
        self.level = n
        self.field = spec.field
        self.chain = Chain(spec.field)
        self.genus = genus_rh(spec, n)
        self.gamma = prank_ds(spec, n)
        self.ram_points: list[RamPoint] = []
        self._build()

    def _build(self):
        n = self.level
        chain = self.chain
        Q = chain.Q
        p = self.field.p
        if n > 0:
            carries = sum_carries(p, n) if n > 1 else [dict()]
        rams = [RamPoint(self, pl, breaks(self.spec, n, pl)) for pl in self.spec.branch] \
            if n > 0 else []

        for i in range(n):
            # carry polynomial evaluated on (y_0..y_{i-1}, f_0..f_{i-1})
            level_ops = RingOps(zero=chain.zero(), add=chain.add, mul=chain.mul,
                                from_int=lambda k: chain.scale(Q.from_int(k), chain.one()),
                                pth_power=chain.frob_p)
            g = chain.from_rat(self.spec.witt[i])
            if i > 0:
                values = [chain.var(t) for t in range(i)] + [chain.zero()] * (n - i)
                values += [chain.from_rat(self.spec.witt[t]) for t in range(i)] \
                    + [chain.zero()] * (n - i)
                carry = eval_int_poly(carries[i], values, level_ops)
                g = chain.add(g, carry)
            for rp in rams:
                v, ac = rp.elem_val_ac(g)
                if v >= 0 or v % p != 0:
                    raise NotNormalizable(
                        f"chain relation at level {i} not totally ramified over {rp.place}")
                rp.v_y.append(v // p)
                rp.ac_y.append(rp.K.pth_root(ac))
            chain.push_level(g)
        self.ram_points = rams

    def equations(self):
        """The chain as (variable index, right-hand side) pairs."""
        return list(enumerate(self.chain.gs))

    def ram_point(self, place: Place) -> RamPoint:
        for rp in self.ram_points:
            if rp.place == place:
                return rp
        raise AswError(f"{place} is not ramified on this curve")


def curve_model(spec: TowerSpec, n: int) -> Curve:
    return Curve(spec, n)
