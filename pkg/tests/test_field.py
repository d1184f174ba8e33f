import random

import pytest

from aswtower.errors import NotPrime, ReducibleModulus
from aswtower.field import FieldElement, Fq, canonical_modulus, field_make


def test_prime_field_trivial():
    F = field_make(2, 1, None)
    assert F.q == 2
    assert F.add(F.one, F.one) == F.zero


def test_canonical_modulus_f9():
    # oracle: enumerate all monic quadratics over F_3 and root-search
    def has_root(c1, c0):
        return any((a * a + c1 * a + c0) % 3 == 0 for a in range(3))

    least = None
    for c1 in range(3):
        for c0 in range(3):
            if not has_root(c1, c0):
                least = (c0, c1, 1)
                break
        if least:
            break
    # enumeration above is ordered by the top-down coefficient string
    assert canonical_modulus(3, 2) == least == (1, 0, 1)  # x^2 + 1


def test_not_prime():
    with pytest.raises(NotPrime):
        field_make(4, 1, None)


def test_reducible_modulus_rejected():
    with pytest.raises(ReducibleModulus):
        field_make(2, 2, (1, 0, 1))  # x^2 + 1 = (x+1)^2 over F_2


def test_field_axioms_randomized():
    rng = random.Random(20240817)
    for (p, r) in [(2, 1), (3, 2), (2, 3), (5, 1)]:
        F = Fq(p, r)
        elems = list(F.elements())
        for _ in range(1000 // 4):
            a, b, c = (rng.choice(elems) for _ in range(3))
            assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
            assert F.add(a, b) == F.add(b, a)
            assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
            if a != F.zero:
                assert F.mul(a, F.inv(a)) == F.one
            # Frobenius is a ring homomorphism of order r
            assert F.frob(F.add(a, b), 1) == F.add(F.frob(a, 1), F.frob(b, 1))
            assert F.frob(F.mul(a, b), 1) == F.mul(F.frob(a, 1), F.frob(b, 1))
            assert F.frob(a, r) == a
            assert F.frob(F.frob(a, 1), -1) == a


def test_frobenius_examples():
    F2 = Fq(2, 1)
    for x in F2.elements():
        assert F2.frob(x, 5) == x  # prime field fixed by Frobenius

    F9 = Fq(3, 2)
    g = F9.gen
    assert F9.frob(g, 1) == F9.pow(g, 3)
    for x in F9.elements():
        assert F9.frob(x, 2) == x


def test_pth_root():
    F8 = Fq(2, 3)
    for x in F8.elements():
        assert F8.mul(F8.pth_root(x), F8.pth_root(x)) == x


def test_field_element_wrapper():
    F9 = Fq(3, 2)
    g = FieldElement(F9.gen, F9)
    h = g * g + g
    assert h.coeffs == F9.add(F9.mul(F9.gen, F9.gen), F9.gen)
    assert (g / g).coeffs == F9.one
    assert g.frobenius(1).coeffs == F9.pow(F9.gen, 3)
