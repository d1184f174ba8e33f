"""Exact arithmetic in F_{p^r}.

Elements are coefficient tuples of length r over the prime field, relative to a
monic irreducible modulus of degree r.  All operations are pure; a field object
is immutable and safe to share between threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import NotPrime, ReducibleModulus

Coeffs = tuple[int, ...]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _poly_trim(c: list[int]) -> tuple[int, ...]:
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _poly_mulmod(a, b, mod, p):
    # dense schoolbook product followed by reduction by the monic `mod`
    res = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                res[i + j] = (res[i + j] + ai * bj) % p
    r = len(mod) - 1
    for i in range(len(res) - 1, r - 1, -1):
        c = res[i]
        if c:
            res[i] = 0
            for j in range(r):
                res[i - r + j] = (res[i - r + j] - c * mod[j]) % p
    return _poly_trim(res[:r] if len(res) > r else res)


def _poly_powmod(a, e, mod, p):
    result = (1,)
    base = a
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, mod, p)
        base = _poly_mulmod(base, base, mod, p)
        e >>= 1
    return result


def _poly_sub(a, b, p):
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p
           for i in range(n)]
    return _poly_trim(out)


def _poly_gcd(a, b, p):
    a, b = list(a), list(b)
    while b:
        # a mod b, with b made monic on the fly
        inv = pow(b[-1], p - 2, p)
        bm = [(c * inv) % p for c in b]
        r = list(a)
        while len(r) >= len(bm) and r:
            if r[-1]:
                c = r[-1]
                off = len(r) - len(bm)
                for j in range(len(bm)):
                    r[off + j] = (r[off + j] - c * bm[j]) % p
            while r and r[-1] == 0:
                r.pop()
        a, b = b, r
    return _poly_trim(list(a))


def is_irreducible(modulus: Coeffs, p: int) -> bool:
    """Rabin-style test: gcd(x^{p^i} - x, m) = 1 for 0 < i < r and x^{p^r} = x mod m."""
    r = len(modulus) - 1
    if r < 1 or modulus[-1] != 1:
        return False
    x = (0, 1)
    xq = x
    for _ in range(1, r):
        xq = _poly_powmod(xq, p, modulus, p)
        diff = _poly_sub(xq, x, p)
        g = _poly_gcd(modulus, diff, p) if diff else modulus
        if len(g) > 1:
            return False
    xq = _poly_powmod(xq, p, modulus, p)
    return xq == x


@lru_cache(maxsize=None)
def canonical_modulus(p: int, r: int) -> Coeffs:
    """Lexicographically least monic irreducible of degree r over F_p.

    Candidates are ordered by the coefficient string read from the top degree
    down, so the result is reproducible across runs.
    """
    if r == 1:
        return (0, 1)  # the polynomial x; quotient is F_p itself
    count = p ** r
    for code in range(count):
        coeffs = []
        c = code
        for _ in range(r):  # code digits give (c_{r-1}, ..., c_0)
            coeffs.append(c % p)
            c //= p
        coeffs = coeffs[::-1]
        candidate = tuple(reversed(coeffs)) + (1,)
        if is_irreducible(candidate, p):
            return candidate
    raise ReducibleModulus(f"no irreducible of degree {r} over F_{p}")  # unreachable


class Fq:
    """The finite field F_{p^r} with fixed modulus; element = coefficient tuple."""

    def __init__(self, p: int, r: int, modulus: Coeffs | None = None):
        if not _is_prime(p):
            raise NotPrime(f"{p} is not prime")
        if r < 1:
            raise ValueError("extension degree must be >= 1")
        if modulus is None:
            modulus = canonical_modulus(p, r)
        else:
            modulus = tuple(c % p for c in modulus)
            if len(modulus) != r + 1 or modulus[-1] != 1:
                raise ReducibleModulus("modulus must be monic of degree r")
            if not is_irreducible(modulus, p):
                raise ReducibleModulus(f"{modulus} is reducible over F_{p}")
        self.p = p
        self.r = r
        self.q = p ** r
        self.modulus = modulus
        self.zero: Coeffs = (0,) * r
        self.one: Coeffs = (1,) + (0,) * (r - 1)
        self.gen: Coeffs = ((0, 1) + (0,) * (r - 2)) if r > 1 else (1,)
        # t^k mod modulus for k < 2r-1, used by mul
        self._red = self._reduction_table()
        self._frob_tables: dict[int, list[Coeffs]] = {}

    def _reduction_table(self):
        p, r, m = self.p, self.r, self.modulus
        table = []
        cur = [0] * r
        if r > 0:
            cur[0] = 1
        for _ in range(2 * r - 1):
            table.append(tuple(cur))
            top = cur[r - 1]
            cur = [0] + cur[:-1]
            if top:
                for j in range(r):
                    cur[j] = (cur[j] - top * m[j]) % p
        return table

    # -- basic operations on coefficient tuples ------------------------------

    def add(self, a: Coeffs, b: Coeffs) -> Coeffs:
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a: Coeffs, b: Coeffs) -> Coeffs:
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def neg(self, a: Coeffs) -> Coeffs:
        p = self.p
        return tuple((-x) % p for x in a)

    def mul(self, a: Coeffs, b: Coeffs) -> Coeffs:
        p, r = self.p, self.r
        if r == 1:
            return ((a[0] * b[0]) % p,)
        prod = [0] * (2 * r - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    prod[i + j] = (prod[i + j] + ai * bj) % p
        out = [0] * r
        red = self._red
        for k, c in enumerate(prod):
            if c:
                basis = red[k]
                for j in range(r):
                    out[j] = (out[j] + c * basis[j]) % p
        return tuple(out)

    def smul(self, c: int, a: Coeffs) -> Coeffs:
        p = self.p
        c %= p
        return tuple((c * x) % p for x in a)

    def inv(self, a: Coeffs) -> Coeffs:
        if a == self.zero:
            raise ZeroDivisionError("inverse of zero")
        return self.pow(a, self.q - 2)

    def pow(self, a: Coeffs, e: int) -> Coeffs:
        if e < 0:
            return self.pow(self.inv(a), -e)
        result = self.one
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def from_int(self, n: int) -> Coeffs:
        return ((n % self.p),) + (0,) * (self.r - 1)

    def elements(self):
        """All q elements in deterministic (low-coefficient-first) order."""
        p, r = self.p, self.r
        for code in range(self.q):
            c = code
            coeffs = []
            for _ in range(r):
                coeffs.append(c % p)
                c //= p
            yield tuple(coeffs)

    # -- Frobenius ------------------------------------------------------------

    def _frob_table(self, s: int) -> list[Coeffs]:
        s %= self.r
        if s not in self._frob_tables:
            # image of each basis monomial t^i under x -> x^{p^s}
            ps = self.p ** s
            table = []
            for i in range(self.r):
                ti = tuple(1 if j == i else 0 for j in range(self.r))
                table.append(self.pow(ti, ps))
            self._frob_tables[s] = table
        return self._frob_tables[s]

    def frob(self, a: Coeffs, s: int = 1) -> Coeffs:
        """a^{p^s}; s may be negative since Frobenius has order r."""
        s %= self.r
        if s == 0 or self.r == 1:
            return a
        table = self._frob_table(s)
        out = self.zero
        for i, c in enumerate(a):
            if c:
                out = self.add(out, self.smul(c, table[i]))
        return out

    def pth_root(self, a: Coeffs) -> Coeffs:
        return self.frob(a, self.r - 1)

    def absolute_trace(self, a: Coeffs) -> int:
        """Trace to F_p, returned as an integer in [0, p)."""
        acc = self.zero
        cur = a
        for _ in range(self.r):
            acc = self.add(acc, cur)
            cur = self.frob(cur, 1)
        return acc[0]

    def __eq__(self, other):
        return (isinstance(other, Fq) and self.p == other.p and self.r == other.r
                and self.modulus == other.modulus)

    def __hash__(self):
        return hash((self.p, self.r, self.modulus))

    def __repr__(self):
        return f"Fq(p={self.p}, r={self.r})"


@dataclass(frozen=True)
class FieldElement:
    """Coefficient vector bound to its field; convenience wrapper over Fq tuples."""

    coeffs: Coeffs
    field: Fq

    def _check(self, other: "FieldElement"):
        if other.field != self.field:
            raise ValueError("elements from different fields")

    def __add__(self, other):
        self._check(other)
        return FieldElement(self.field.add(self.coeffs, other.coeffs), self.field)

    def __sub__(self, other):
        self._check(other)
        return FieldElement(self.field.sub(self.coeffs, other.coeffs), self.field)

    def __mul__(self, other):
        self._check(other)
        return FieldElement(self.field.mul(self.coeffs, other.coeffs), self.field)

    def __truediv__(self, other):
        self._check(other)
        return FieldElement(self.field.mul(self.coeffs, self.field.inv(other.coeffs)), self.field)

    def __neg__(self):
        return FieldElement(self.field.neg(self.coeffs), self.field)

    def __pow__(self, e: int):
        return FieldElement(self.field.pow(self.coeffs, e), self.field)

    def frobenius(self, s: int = 1) -> "FieldElement":
        return FieldElement(self.field.frob(self.coeffs, s), self.field)


def field_make(p: int, r: int, modulus=None) -> Fq:
    """Validated field description; canonical modulus when none is given."""
    return Fq(p, r, tuple(modulus) if modulus is not None else None)


def frobenius(x: FieldElement, s: int) -> FieldElement:
    return x.frobenius(s)
