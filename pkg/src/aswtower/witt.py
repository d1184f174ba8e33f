"""Truncated Witt vectors of length <= 3.

The universal addition/multiplication/negation polynomials are derived once
per (p, m) from the ghost components over the integers (sympy does the exact
division) and then evaluated in an arbitrary commutative ring through a small
adapter, so the same polynomials serve field elements, rational functions and
function-field elements.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

from .errors import UnsupportedLength

MAX_LENGTH = 3

# polynomial in dict form: {(e_0, ..., e_{k-1}): integer coefficient}
IntPoly = dict[tuple, int]


def _to_dict(expr, gens) -> IntPoly:
    import sympy

    poly = sympy.Poly(sympy.expand(expr), *gens)
    out: IntPoly = {}
    for monom, coeff in poly.terms():
        c = int(coeff)
        if c:
            out[tuple(int(e) for e in monom)] = c
    return out


@lru_cache(maxsize=None)
def _universal_polys(p: int, m: int):
    """Witt sum/product/negation component polynomials for W_m over Z."""
    if m > MAX_LENGTH:
        raise UnsupportedLength(f"Witt length {m} > {MAX_LENGTH}")
    import sympy

    xs = sympy.symbols(f"x0:{m}")
    ys = sympy.symbols(f"y0:{m}")

    def ghost(vs, i):
        return sum(p**j * vs[j] ** (p ** (i - j)) for j in range(i + 1))

    def solve_components(target):
        # target(i) is the wanted ghost value of component i
        comps = []
        for i in range(m):
            acc = target(i)
            for j in range(i):
                acc -= p**j * comps[j] ** (p ** (i - j))
            comp = sympy.expand(acc) / p**i
            comp = sympy.expand(comp)
            assert all(sympy.Integer(c) == c for c in sympy.Poly(comp, *(xs + ys)).coeffs())
            comps.append(comp)
        return comps

    sums = solve_components(lambda i: ghost(xs, i) + ghost(ys, i))
    prods = solve_components(lambda i: ghost(xs, i) * ghost(ys, i))
    negs_expr = solve_components(lambda i: -ghost(xs, i))

    gens = xs + ys
    return (
        [_to_dict(s, gens) for s in sums],
        [_to_dict(s, gens) for s in prods],
        [_to_dict(s, xs) for s in negs_expr],
    )


@lru_cache(maxsize=None)
def sum_carries(p: int, m: int):
    """Carry polynomials c_i with (x + y)_i = x_i + y_i + c_i(x_{<i}, y_{<i})."""
    sums, _, _ = _universal_polys(p, m)
    carries = []
    for i, s in enumerate(sums):
        c = dict(s)
        for var in (i, m + i):
            key = tuple(1 if t == var else 0 for t in range(2 * m))
            coeff = c.pop(key, 0) - 1
            if coeff:
                c[key] = coeff
        carries.append(c)
    return carries


@lru_cache(maxsize=None)
def generator_translation(p: int, m: int):
    """Components of x + (1, 0, ..., 0) as integer polynomials in x_0..x_{m-1}.

    This is the curve automorphism of an Artin-Schreier-Witt chain: the level-i
    variable moves by a polynomial in the lower-level variables.
    """
    sums, _, _ = _universal_polys(p, m)
    out = []
    for s in sums:
        collapsed: IntPoly = {}
        for monom, coeff in s.items():
            xpart, ypart = monom[:m], monom[m:]
            if any(e and j > 0 for j, e in enumerate(ypart)):
                continue  # y_j = 0 for j > 0
            collapsed[xpart] = collapsed.get(xpart, 0) + coeff  # y_0 = 1
        out.append({k: v for k, v in collapsed.items() if v})
    return out


@dataclass(frozen=True)
class RingOps:
    """Minimal commutative-ring interface used by the Witt evaluators."""

    zero: object
    add: Callable
    mul: Callable
    from_int: Callable
    pth_power: Callable  # x -> x^p in the ring


def eval_int_poly(poly: IntPoly, values: list, ops: RingOps):
    acc = ops.zero
    for monom, coeff in sorted(poly.items()):
        term = ops.from_int(coeff)
        for var, e in enumerate(monom):
            for _ in range(e):
                term = ops.mul(term, values[var])
        acc = ops.add(acc, term)
    return acc


@dataclass(frozen=True)
class WittVector:
    """Length-m Witt vector over a ring described by `ops`."""

    components: tuple
    p: int
    ops: RingOps

    def __post_init__(self):
        if len(self.components) > MAX_LENGTH:
            raise UnsupportedLength(f"Witt length {len(self.components)} > {MAX_LENGTH}")

    @property
    def length(self) -> int:
        return len(self.components)

    def _check(self, other: "WittVector"):
        if self.length != other.length or self.p != other.p:
            raise UnsupportedLength("length/prime mismatch")


def witt_add(a: WittVector, b: WittVector) -> WittVector:
    a._check(b)
    m = a.length
    sums, _, _ = _universal_polys(a.p, m)
    values = list(a.components) + list(b.components)
    comps = tuple(eval_int_poly(s, values, a.ops) for s in sums)
    return WittVector(comps, a.p, a.ops)


def witt_mul(a: WittVector, b: WittVector) -> WittVector:
    a._check(b)
    m = a.length
    _, prods, _ = _universal_polys(a.p, m)
    values = list(a.components) + list(b.components)
    comps = tuple(eval_int_poly(s, values, a.ops) for s in prods)
    return WittVector(comps, a.p, a.ops)


def witt_neg(a: WittVector) -> WittVector:
    _, _, negs = _universal_polys(a.p, a.length)
    values = list(a.components)
    comps = tuple(eval_int_poly(s, values, a.ops) for s in negs)
    return WittVector(comps, a.p, a.ops)


def witt_sub(a: WittVector, b: WittVector) -> WittVector:
    return witt_add(a, witt_neg(b))


def witt_frobenius_power(a: WittVector) -> WittVector:
    """Componentwise p-th power (the Witt Frobenius over perfect coefficients)."""
    return WittVector(tuple(a.ops.pth_power(c) for c in a.components), a.p, a.ops)


def witt_wp(a: WittVector) -> WittVector:
    """F(a) - a, the additive Artin-Schreier-Witt operator."""
    return witt_sub(witt_frobenius_power(a), a)
