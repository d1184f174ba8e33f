import random

import pytest

from aswtower.errors import UnsupportedLength
from aswtower.field import Fq
from aswtower.witt import (RingOps, WittVector, generator_translation, sum_carries,
                           witt_add, witt_frobenius_power, witt_mul, witt_neg, witt_sub,
                           witt_wp)


def field_ops(F: Fq) -> RingOps:
    return RingOps(zero=F.zero, add=F.add, mul=F.mul, from_int=F.from_int,
                   pth_power=lambda a: F.pow(a, F.p))


def wv(F, comps):
    return WittVector(tuple(comps), F.p, field_ops(F))


def teich_digits_to_padic(p, m, comps):
    """Brute-force oracle: Teichmueller-digit evaluation in Z/p^m for prime-field digits."""
    mod = p**m
    total = 0
    for i, c in enumerate(comps):
        a = c[0] % p
        # Teichmueller lift: iterate a^p until stable mod p^m
        t = a
        for _ in range(m + 2):
            t = pow(t, p, mod)
        total = (total + t * p**i) % mod
    return total


def test_length_one_is_the_ring():
    F = Fq(5, 1)
    a = wv(F, [F.from_int(2)])
    b = wv(F, [F.from_int(4)])
    assert witt_add(a, b).components == (F.from_int(6),)
    assert witt_mul(a, b).components == (F.from_int(8),)


def test_p2_length2_addition_formula():
    F = Fq(2, 1)
    carries = sum_carries(2, 2)
    # carry in the second component is exactly x0*y0 once reduced mod 2
    assert carries[0] == {}
    assert {k: v % 2 for k, v in carries[1].items()} == {(1, 0, 1, 0): 1}
    a = wv(F, [F.one, F.zero])
    b = wv(F, [F.one, F.zero])
    s = witt_add(a, b)
    assert s.components == (F.zero, F.one)  # (1,0)+(1,0) = (0,1) since a0*b0 = 1


def test_additive_identity_and_neg():
    F = Fq(3, 1)
    z = wv(F, [F.zero, F.zero, F.zero])
    a = wv(F, [F.from_int(2), F.one, F.from_int(2)])
    assert witt_add(a, z).components == a.components
    assert witt_add(a, witt_neg(a)).components == z.components
    assert witt_sub(a, a).components == z.components


@pytest.mark.parametrize("p,m", [(2, 2), (2, 3), (3, 2), (3, 3), (5, 2)])
def test_against_padic_oracle(p, m):
    rng = random.Random(1234 + p + m)
    F = Fq(p, 1)
    elems = list(F.elements())
    for _ in range(60):
        ac = [rng.choice(elems) for _ in range(m)]
        bc = [rng.choice(elems) for _ in range(m)]
        a, b = wv(F, ac), wv(F, bc)
        s = witt_add(a, b)
        pr = witt_mul(a, b)
        oa, ob = teich_digits_to_padic(p, m, ac), teich_digits_to_padic(p, m, bc)
        assert teich_digits_to_padic(p, m, s.components) == (oa + ob) % p**m
        assert teich_digits_to_padic(p, m, pr.components) == (oa * ob) % p**m


def test_commutative_associative():
    rng = random.Random(5)
    F = Fq(2, 2)
    elems = list(F.elements())
    for _ in range(25):
        a = wv(F, [rng.choice(elems) for _ in range(3)])
        b = wv(F, [rng.choice(elems) for _ in range(3)])
        c = wv(F, [rng.choice(elems) for _ in range(3)])
        assert witt_add(a, b).components == witt_add(b, a).components
        lhs = witt_add(witt_add(a, b), c).components
        rhs = witt_add(a, witt_add(b, c)).components
        assert lhs == rhs


def test_length_cap():
    F = Fq(2, 1)
    with pytest.raises(UnsupportedLength):
        wv(F, [F.zero] * 4)


def test_wp_kills_prime_field_vectors_componentwise_frobenius():
    # over F_p the componentwise Frobenius is the identity, so wp = F - id = 0
    F = Fq(2, 1)
    a = wv(F, [F.one, F.one])
    assert witt_wp(a).components == (F.zero, F.zero)
    # over F_4 it is not
    F4 = Fq(2, 2)
    g = wv(F4, [F4.gen, F4.zero])
    fr = witt_frobenius_power(g)
    assert fr.components[0] == F4.pow(F4.gen, 2)


def test_generator_translation_p2():
    # adding (1, 0) to (x0, x1) gives (x0 + 1, x1 + x0) when p = 2
    polys = generator_translation(2, 2)
    assert {k: v % 2 for k, v in polys[0].items()} == {(0, 0): 1, (1, 0): 1}
    assert {k: v % 2 for k, v in polys[1].items()} == {(0, 1): 1, (1, 0): 1}
