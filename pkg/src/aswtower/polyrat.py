"""Univariate polynomials and rational functions over F_q, places of P^1,
residue fields, and truncated Laurent series expansions at unramified places.

Polynomials are tuples of Fq coefficient tuples, low degree first, trimmed.
A place of P^1 is either INF or a monic irreducible polynomial; its residue
field is the quotient ring F_q[x]/q(x).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import AswError
from .field import Fq

PolyT = tuple  # tuple of Fq coefficient tuples


class PolyRing:
    """F_q[x] with dense tuple representation."""

    def __init__(self, F: Fq):
        self.F = F
        self.zero: PolyT = ()
        self.one: PolyT = (F.one,)
        self.x: PolyT = (F.zero, F.one)

    def trim(self, c: list) -> PolyT:
        while c and c[-1] == self.F.zero:
            c.pop()
        return tuple(c)

    def const(self, a) -> PolyT:
        return (a,) if a != self.F.zero else ()

    def from_int(self, n: int) -> PolyT:
        return self.const(self.F.from_int(n))

    def deg(self, a: PolyT) -> int:
        return len(a) - 1  # -1 for the zero polynomial

    def add(self, a: PolyT, b: PolyT) -> PolyT:
        F = self.F
        n = max(len(a), len(b))
        out = [(F.add(a[i], b[i]) if i < len(a) and i < len(b)
                else a[i] if i < len(a) else b[i]) for i in range(n)]
        return self.trim(out)

    def neg(self, a: PolyT) -> PolyT:
        return tuple(self.F.neg(c) for c in a)

    def sub(self, a: PolyT, b: PolyT) -> PolyT:
        return self.add(a, self.neg(b))

    def mul(self, a: PolyT, b: PolyT) -> PolyT:
        F = self.F
        if not a or not b:
            return ()
        out = [F.zero] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai != F.zero:
                for j, bj in enumerate(b):
                    if bj != F.zero:
                        out[i + j] = F.add(out[i + j], F.mul(ai, bj))
        return self.trim(out)

    def smul(self, c, a: PolyT) -> PolyT:
        F = self.F
        if c == F.zero:
            return ()
        return self.trim([F.mul(c, x) for x in a])

    def pow(self, a: PolyT, e: int) -> PolyT:
        out = self.one
        base = a
        while e:
            if e & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            e >>= 1
        return out

    def divmod(self, a: PolyT, b: PolyT):
        F = self.F
        if not b:
            raise ZeroDivisionError("polynomial division by zero")
        r = list(a)
        q = [F.zero] * max(0, len(a) - len(b) + 1)
        inv = F.inv(b[-1])
        while len(r) >= len(b) and r:
            if r[-1] == F.zero:
                r.pop()
                continue
            c = F.mul(r[-1], inv)
            off = len(r) - len(b)
            q[off] = c
            for j in range(len(b)):
                r[off + j] = F.sub(r[off + j], F.mul(c, b[j]))
            while r and r[-1] == F.zero:
                r.pop()
        return self.trim(q), self.trim(r)

    def mod(self, a: PolyT, b: PolyT) -> PolyT:
        return self.divmod(a, b)[1]

    def gcd(self, a: PolyT, b: PolyT) -> PolyT:
        while b:
            a, b = b, self.mod(a, b)
        return self.monic(a)

    def monic(self, a: PolyT) -> PolyT:
        if not a:
            return a
        return self.smul(self.F.inv(a[-1]), a)

    def deriv(self, a: PolyT) -> PolyT:
        F = self.F
        return self.trim([F.smul(i, a[i]) for i in range(1, len(a))])

    def eval(self, a: PolyT, v):
        F = self.F
        acc = F.zero
        for c in reversed(a):
            acc = F.add(F.mul(acc, v), c)
        return acc

    def pth_coeff_power(self, a: PolyT, s: int = 1) -> PolyT:
        """Apply the field Frobenius^s to every coefficient."""
        F = self.F
        return tuple(F.frob(c, s) for c in a)

    def pth_power(self, a: PolyT) -> PolyT:
        """a(x)^p computed by freshman's dream."""
        F = self.F
        p = F.p
        if not a:
            return ()
        out = [F.zero] * ((len(a) - 1) * p + 1)
        for i, c in enumerate(a):
            if c != F.zero:
                out[i * p] = F.frob(c, 1)
        return self.trim(out)

    def valuation(self, a: PolyT, q: PolyT) -> int:
        """Multiplicity of the irreducible q in a (a != 0)."""
        v = 0
        while True:
            quo, rem = self.divmod(a, q)
            if rem:
                return v
            a = quo
            v += 1

    def is_irreducible(self, m: PolyT) -> bool:
        d = self.deg(m)
        if d < 1:
            return False
        F = self.F
        mm = self.monic(m)
        x = self.x
        xq = x
        for _ in range(1, d):
            xq = self._powmod_q(xq, mm)
            g = self.gcd(mm, self.sub(xq, x))
            if self.deg(g) > 0:
                return False
        xq = self._powmod_q(xq, mm)
        return xq == self.mod(x, mm)

    def _powmod_q(self, a: PolyT, m: PolyT) -> PolyT:
        """a^q mod m."""
        e = self.F.q
        out = self.mod(self.one, m)
        base = a
        while e:
            if e & 1:
                out = self.mod(self.mul(out, base), m)
            base = self.mod(self.mul(base, base), m)
            e >>= 1
        return out

    def monic_polys(self, d: int):
        """All monic polynomials of degree d, coefficient string from top down."""
        F = self.F
        q = F.q
        elems = list(F.elements())
        for code in range(q**d):
            c = code
            digits = []
            for _ in range(d):
                digits.append(elems[c % q])
                c //= q
            digits = digits[::-1]  # top degree first
            yield self.trim(list(reversed(digits)) + [F.one])

    def irreducibles(self, d: int):
        for m in self.monic_polys(d):
            if self.is_irreducible(m):
                yield m

    def to_string(self, a: PolyT, var: str = "x") -> str:
        if not a:
            return "0"
        parts = []
        for i in range(len(a) - 1, -1, -1):
            c = a[i]
            if c == self.F.zero:
                continue
            if self.F.r == 1:
                cs = str(c[0])
            else:
                cs = "(" + ",".join(str(t) for t in c) + ")"
            if i == 0:
                parts.append(cs)
            elif i == 1:
                parts.append(f"{var}" if cs == "1" else f"{cs}*{var}")
            else:
                parts.append(f"{var}^{i}" if cs == "1" else f"{cs}*{var}^{i}")
        return " + ".join(parts)


INF = "inf"  # the place at infinity on P^1


@dataclass(frozen=True)
class Place:
    """A closed point of P^1: INF or a monic irreducible polynomial."""

    poly: object  # PolyT or INF

    def is_infinite(self) -> bool:
        return self.poly == INF

    def degree(self) -> int:
        return 1 if self.is_infinite() else len(self.poly) - 1


@dataclass(frozen=True)
class Rat:
    """Reduced fraction num/den; den monic, gcd(num, den) = 1."""

    num: PolyT
    den: PolyT

    @staticmethod
    def make(R: PolyRing, num: PolyT, den: PolyT) -> "Rat":
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            return Rat((), R.one)
        g = R.gcd(num, den)
        if R.deg(g) > 0:
            num = R.divmod(num, g)[0]
            den = R.divmod(den, g)[0]
        lead = den[-1]
        if lead != R.F.one:
            inv = R.F.inv(lead)
            num = R.smul(inv, num)
            den = R.smul(inv, den)
        return Rat(num, den)

    def is_zero(self) -> bool:
        return not self.num


class RatField:
    """Operations on Rat values over a fixed PolyRing."""

    def __init__(self, R: PolyRing):
        self.R = R
        self.zero = Rat((), R.one)
        self.one = Rat(R.one, R.one)
        self.x = Rat(R.x, R.one)

    def from_poly(self, a: PolyT) -> Rat:
        return Rat(a, self.R.one)

    def from_int(self, n: int) -> Rat:
        return Rat(self.R.from_int(n), self.R.one)

    def const(self, c) -> Rat:
        return Rat(self.R.const(c), self.R.one)

    def add(self, a: Rat, b: Rat) -> Rat:
        R = self.R
        num = R.add(R.mul(a.num, b.den), R.mul(b.num, a.den))
        return Rat.make(R, num, R.mul(a.den, b.den))

    def sub(self, a: Rat, b: Rat) -> Rat:
        return self.add(a, self.neg(b))

    def neg(self, a: Rat) -> Rat:
        return Rat(self.R.neg(a.num), a.den)

    def mul(self, a: Rat, b: Rat) -> Rat:
        R = self.R
        return Rat.make(R, R.mul(a.num, b.num), R.mul(a.den, b.den))

    def div(self, a: Rat, b: Rat) -> Rat:
        R = self.R
        if b.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return Rat.make(R, R.mul(a.num, b.den), R.mul(a.den, b.num))

    def smul(self, c, a: Rat) -> Rat:
        return Rat.make(self.R, self.R.smul(c, a.num), a.den)

    def pow(self, a: Rat, e: int) -> Rat:
        if e < 0:
            return self.pow(self.div(self.one, a), -e)
        out = self.one
        base = a
        while e:
            if e & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            e >>= 1
        return out

    def deriv(self, a: Rat) -> Rat:
        R = self.R
        num = R.sub(R.mul(R.deriv(a.num), a.den), R.mul(a.num, R.deriv(a.den)))
        return Rat.make(R, num, R.mul(a.den, a.den))

    def pth_power(self, a: Rat) -> Rat:
        R = self.R
        return Rat(R.pth_power(a.num), R.pth_power(a.den))

    def valuation(self, a: Rat, place: Place) -> int:
        """Order of vanishing at the place; raises on the zero function."""
        if a.is_zero():
            raise AswError("valuation of zero")
        R = self.R
        if place.is_infinite():
            return R.deg(a.den) - R.deg(a.num)
        q = place.poly
        return R.valuation(a.num, q) - R.valuation(a.den, q)

    def poles(self, a: Rat) -> list[Place]:
        """Places where a has a pole, finite ones by irreducible factors."""
        R = self.R
        out = []
        den = a.den
        d = 1
        while R.deg(den) > 0 and d <= R.deg(den):
            found = None
            for m in R.irreducibles(d):
                if not R.mod(den, m):
                    found = m
                    break
            if found is None:
                d += 1
                continue
            out.append(Place(found))
            while True:
                quo, rem = R.divmod(den, found)
                if rem:
                    break
                den = quo
        if R.deg(a.num) > R.deg(a.den):
            out.append(Place(INF))
        return out


class QuotientField:
    """Residue field F_q[x]/(q) of a finite place; elements are reduced PolyT."""

    def __init__(self, R: PolyRing, modulus: PolyT):
        self.R = R
        self.F = R.F
        self.modulus = modulus
        self.deg = R.deg(modulus)
        self.zero: PolyT = ()
        self.one: PolyT = R.one
        self.xbar: PolyT = R.mod(R.x, modulus)
        self.order = self.F.q ** self.deg

    def reduce(self, a: PolyT) -> PolyT:
        return self.R.mod(a, self.modulus)

    def add(self, a, b):
        return self.R.add(a, b)

    def sub(self, a, b):
        return self.R.sub(a, b)

    def neg(self, a):
        return self.R.neg(a)

    def mul(self, a, b):
        return self.reduce(self.R.mul(a, b))

    def smul(self, c, a):
        return self.R.smul(c, a)

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero in residue field")
        return self.pow(a, self.order - 2)

    def pow(self, a, e: int):
        if e < 0:
            return self.pow(self.inv(a), -e)
        out = self.one
        base = a
        while e:
            if e & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            e >>= 1
        return out

    def from_base(self, c) -> PolyT:
        return self.R.const(c)

    def eval_poly(self, a: PolyT) -> PolyT:
        """Image of a(x) in the residue field."""
        return self.reduce(a)

    def eval_rat(self, a: Rat) -> PolyT:
        den = self.reduce(a.den)
        return self.mul(self.reduce(a.num), self.inv(den))

    def pth_power(self, a):
        return self.pow(a, self.F.p)

    def pth_root(self, a):
        return self.pow(a, self.order // self.F.p)

    def trace_to_Fq(self, a) -> tuple:
        """Trace of the extension k(Q)/F_q, landing in F_q."""
        acc = self.zero
        cur = a
        for _ in range(self.deg):
            acc = self.add(acc, cur)
            cur = self.pow(cur, self.F.q)
        acc = self.reduce(acc)
        assert len(acc) <= 1
        return acc[0] if acc else self.F.zero

    def absolute_trace(self, a) -> int:
        """Trace all the way to F_p, as an integer."""
        t = self.trace_to_Fq(a)
        return self.F.absolute_trace(t)

    def elements(self):
        F = self.F
        elems = list(F.elements())
        for code in range(self.order):
            c = code
            coeffs = []
            for _ in range(self.deg):
                coeffs.append(elems[c % F.q])
                c //= F.q
            yield self.R.trim(list(coeffs))

    def _fp_basis(self):
        # basis x^i t^j of k(Q) over F_p, deterministic order
        F = self.F
        basis = []
        for i in range(self.deg):
            for j in range(F.r):
                coeffs = [F.zero] * self.deg
                coeffs[i] = tuple(1 if t == j else 0 for t in range(F.r))
                basis.append(self.R.trim(list(coeffs)))
        return basis

    def _to_fp_vec(self, a) -> list[int]:
        F = self.F
        out = []
        for i in range(self.deg):
            c = a[i] if i < len(a) else F.zero
            out.extend(c)
        return out

    def _from_fp_vec(self, v: list[int]):
        F = self.F
        coeffs = []
        for i in range(self.deg):
            coeffs.append(tuple(v[i * F.r: (i + 1) * F.r]))
        return self.R.trim(list(coeffs))

    @lru_cache(maxsize=None)
    def _as_operator_echelon(self):
        """Row echelon data for z -> z^p - z as an F_p-linear map."""
        p = self.F.p
        n = self.deg * self.F.r
        cols = []
        for b in self._fp_basis():
            img = self.sub(self.pow(b, p), b)
            cols.append(self._to_fp_vec(img))
        # augmented Gauss over F_p on [A | I]
        A = [[cols[j][i] for j in range(n)] for i in range(n)]
        return A

    def as_root(self, c):
        """One solution z of z^p - z = c, or None when the trace obstruction is nonzero."""
        p = self.F.p
        n = self.deg * self.F.r
        A = [row[:] for row in self._as_operator_echelon()]
        b = self._to_fp_vec(self.reduce(c))
        # Gaussian elimination over F_p
        aug = [A[i] + [b[i]] for i in range(n)]
        piv = []
        row = 0
        for col in range(n):
            sel = None
            for i in range(row, n):
                if aug[i][col] % p:
                    sel = i
                    break
            if sel is None:
                continue
            aug[row], aug[sel] = aug[sel], aug[row]
            inv = pow(aug[row][col], p - 2, p)
            aug[row] = [(v * inv) % p for v in aug[row]]
            for i in range(n):
                if i != row and aug[i][col] % p:
                    f = aug[i][col]
                    aug[i] = [(u - f * w) % p for u, w in zip(aug[i], aug[row])]
            piv.append(col)
            row += 1
        for i in range(row, n):
            if aug[i][n] % p:
                return None
        x = [0] * n
        for i, pc in enumerate(piv):
            x[pc] = aug[i][n]
        return self._from_fp_vec(x)


@dataclass
class LSeries:
    """Truncated Laurent series sum coeffs[i] * s^(start+i) + O(s^(start+n)).

    Coefficients live in a QuotientField.  Precision is explicit; extracting a
    coefficient beyond the known range raises, so truncation can never silently
    corrupt a residue.
    """

    K: QuotientField
    start: int
    coeffs: list

    def known_upto(self) -> int:
        return self.start + len(self.coeffs)

    def normalized(self) -> "LSeries":
        i = 0
        c = self.coeffs
        while i < len(c) and c[i] == self.K.zero:
            i += 1
        return LSeries(self.K, self.start + i, c[i:]) if i else self

    def coefficient(self, k: int):
        if k >= self.known_upto():
            raise AswError(f"series precision exhausted at order {k}")
        if k < self.start:
            return self.K.zero
        return self.coeffs[k - self.start]

    def valuation(self):
        s = self.normalized()
        if not s.coeffs:
            return None  # indistinguishable from zero at this precision
        return s.start


def ls_zero(K: QuotientField, upto: int) -> LSeries:
    return LSeries(K, upto, [])


def ls_const(K: QuotientField, c, prec: int) -> LSeries:
    return LSeries(K, 0, [c] + [K.zero] * (prec - 1))


def ls_add(a: LSeries, b: LSeries) -> LSeries:
    K = a.K
    start = min(a.start, b.start)
    end = min(a.known_upto(), b.known_upto())
    coeffs = []
    for k in range(start, end):
        av = a.coeffs[k - a.start] if a.start <= k < a.known_upto() else K.zero
        bv = b.coeffs[k - b.start] if b.start <= k < b.known_upto() else K.zero
        coeffs.append(K.add(av, bv))
    return LSeries(K, start, coeffs)


def ls_neg(a: LSeries) -> LSeries:
    return LSeries(a.K, a.start, [a.K.neg(c) for c in a.coeffs])


def ls_sub(a: LSeries, b: LSeries) -> LSeries:
    return ls_add(a, ls_neg(b))


def ls_smul(c, a: LSeries) -> LSeries:
    return LSeries(a.K, a.start, [a.K.mul(c, x) for x in a.coeffs])


def ls_mul(a: LSeries, b: LSeries) -> LSeries:
    K = a.K
    an = a.normalized()
    bn = b.normalized()
    if not an.coeffs or not bn.coeffs:
        # product known to vanish to combined precision
        return ls_zero(K, min(an.known_upto() + bn.start, bn.known_upto() + an.start))
    start = an.start + bn.start
    n = min(len(an.coeffs), len(bn.coeffs))
    out = [K.zero] * n
    for i, ai in enumerate(an.coeffs[:n]):
        if ai == K.zero:
            continue
        for j in range(min(len(bn.coeffs), n - i)):
            bj = bn.coeffs[j]
            if bj != K.zero:
                out[i + j] = K.add(out[i + j], K.mul(ai, bj))
    return LSeries(K, start, out)


def ls_inv(a: LSeries) -> LSeries:
    K = a.K
    an = a.normalized()
    if not an.coeffs or an.coeffs[0] == K.zero:
        raise ZeroDivisionError("series inverse needs a unit leading coefficient")
    n = len(an.coeffs)
    lead_inv = K.inv(an.coeffs[0])
    out = [K.zero] * n
    out[0] = lead_inv
    for k in range(1, n):
        acc = K.zero
        for i in range(1, k + 1):
            if i < len(an.coeffs) and an.coeffs[i] != K.zero:
                acc = K.add(acc, K.mul(an.coeffs[i], out[k - i]))
        out[k] = K.neg(K.mul(lead_inv, acc))
    return LSeries(K, -an.start, out)


def ls_pow(a: LSeries, e: int) -> LSeries:
    if e < 0:
        return ls_pow(ls_inv(a), -e)
    prec_budget = a.known_upto() - a.start
    out = ls_const(a.K, a.K.one, prec_budget)
    base = a
    first = True
    while e:
        if e & 1:
            out = base if first else ls_mul(out, base)
            first = False
        e >>= 1
        if e:
            base = ls_mul(base, base)
    if first:
        return ls_const(a.K, a.K.one, prec_budget)
    return out


def ls_deriv(a: LSeries) -> LSeries:
    """Derivative with respect to the series variable."""
    K = a.K
    coeffs = []
    for i, c in enumerate(a.coeffs):
        k = a.start + i
        coeffs.append(K.smul(K.F.from_int(k), c))
    return LSeries(K, a.start - 1, coeffs)


def ls_eval_poly(R: PolyRing, poly: PolyT, xs: LSeries, K: QuotientField, prec: int) -> LSeries:
    """Evaluate poly(x) on a series value of x (Horner)."""
    if not poly:
        return ls_zero(K, prec)
    acc = ls_const(K, K.from_base(poly[-1]), prec)
    for c in reversed(poly[:-1]):
        acc = ls_mul(acc, xs)
        acc = ls_add(acc, ls_const(K, K.from_base(c), prec))
    return acc


def ls_eval_rat(R: PolyRing, a: Rat, xs: LSeries, K: QuotientField, prec: int) -> LSeries:
    num = ls_eval_poly(R, a.num, xs, K, prec) if a.num else ls_zero(K, prec)
    den = ls_eval_poly(R, a.den, xs, K, prec)
    return ls_mul(num, ls_inv(den))


def x_series_at(place: Place, K: QuotientField, prec: int) -> LSeries:
    """Expansion of the coordinate x in the completion at a finite place.

    The uniformizer is s = q(x); Newton iteration solves q(X) = s from the
    residue X = xbar.  Precision `prec` counts known coefficients from s^0.
    """
    R = K.R
    q = place.poly
    qd = R.deriv(q)
    X = ls_const(K, K.xbar, prec)
    s_var = LSeries(K, 1, [K.one] + [K.zero] * (prec - 1))
    # Newton doubles the accuracy each round: X <- X - (q(X) - s)/q'(X)
    for _ in range(max(1, prec.bit_length()) + 1):
        qX = ls_eval_poly(R, q, X, K, prec)
        err = ls_sub(qX, s_var)
        qdX = ls_eval_poly(R, qd, X, K, prec)
        X = ls_sub(X, ls_mul(err, ls_inv(qdX)))
    return X
