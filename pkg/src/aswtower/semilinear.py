"""Frobenius-twisted matrices.

A SemilinearMap with matrix M and twist s sends a coordinate vector x to
M . sigma^s(x), sigma the p-power Frobenius applied entrywise.  Composition
multiplies matrices with a twist on the right factor and adds twists, so words
in Frobenius-like (twist +1) and Verschiebung-like (twist -1) maps are formed
by semilinear_compose alone.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import linalg
from .errors import DimensionMismatch, TwistNotLinearizable
from .field import Fq


@dataclass(frozen=True)
class SemilinearMap:
    field: Fq
    mat: list  # n x n, entries are Fq tuples
    twist: int

    @property
    def dim(self) -> int:
        return len(self.mat)

    def apply(self, v):
        F = self.field
        tv = [F.frob(x, self.twist) for x in v]
        return linalg.mat_vec(F, self.mat, tv)

    def is_zero(self) -> bool:
        F = self.field
        return all(a == F.zero for row in self.mat for a in row)


def semilinear_compose(A: SemilinearMap, B: SemilinearMap) -> SemilinearMap:
    """A after B: matrix A.M . sigma^{A.twist}(B.M), twist A.twist + B.twist."""
    if A.field != B.field:
        raise DimensionMismatch("maps over different fields")
    if A.dim != B.dim:
        raise DimensionMismatch(f"{A.dim} vs {B.dim}")
    F = A.field
    tw = linalg.mat_apply(F, B.mat, lambda a: F.frob(a, A.twist))
    return SemilinearMap(F, linalg.mat_mul(F, A.mat, tw), A.twist + B.twist)


def self_compose(A: SemilinearMap, k: int) -> SemilinearMap:
    """k-fold composite A o ... o A (k >= 1)."""
    out = A
    for _ in range(k - 1):
        out = semilinear_compose(out, A)
    return out


def identity_map(F: Fq, n: int) -> SemilinearMap:
    return SemilinearMap(F, linalg.identity(F, n), 0)


def linearize(A: SemilinearMap, prime_field: bool = False):
    """F_q-matrix of A when twist = 0 mod r, or the rn x rn F_p model.

    The prime-field model acts on coordinates of vectors expanded in the basis
    e_i tensor t^l of F_q^n over F_p and agrees with A under that embedding.
    """
    F = A.field
    if not prime_field:
        if A.twist % F.r != 0:
            raise TwistNotLinearizable(f"twist {A.twist} not 0 mod {F.r}")
        return linalg.mat_copy(A.mat)
    n = A.dim
    r = F.r
    Fp = Fq(F.p, 1)
    big = [[Fp.zero] * (n * r) for _ in range(n * r)]
    for i in range(n):
        for l in range(r):
            v = [F.zero] * n
            v[i] = tuple(1 if j == l else 0 for j in range(r))
            w = A.apply(v)
            col = i * r + l
            for j in range(n):
                for m in range(r):
                    big[j * r + m][col] = (w[j][m],)
    return big


def stable_rank(A: SemilinearMap) -> int:
    """Rank of the n-fold self-composite; the dimension where A is bijective."""
    n = A.dim
    if n == 0:
        return 0
    B = self_compose(A, n)
    return linalg.rank(A.field, B.mat)


def stable_image(A: SemilinearMap):
    """Basis of the subspace on which A is bijective (image of A^n)."""
    n = A.dim
    if n == 0:
        return []
    B = self_compose(A, n)
    return linalg.column_space_basis(A.field, B.mat)


def stable_kernel(A: SemilinearMap):
    """Basis of the subspace on which A is nilpotent (kernel of A^n).

    The kernel of M . sigma^s is sigma^{-s} of the nullspace of M, an F_q
    subspace of the same dimension, so ranks need no prime-field blowup.
    """
    n = A.dim
    if n == 0:
        return []
    F = A.field
    B = self_compose(A, n)
    ker = linalg.nullspace(F, B.mat)
    t = (-B.twist) % F.r
    return [[F.frob(x, t) for x in v] for v in ker]


def semilinear_coker_dim(A: SemilinearMap, shift: str | None = None) -> int:
    """dim over F_q of coker(L) or coker(I - L), L the r-fold composite of A."""
    F = A.field
    n = A.dim
    if n == 0:
        return 0
    B = self_compose(A, F.r)
    if B.twist % F.r != 0:
        raise TwistNotLinearizable(f"r-fold composite has twist {B.twist}")
    L = B.mat
    if shift == "one_minus":
        L = linalg.mat_sub(F, linalg.identity(F, n), L)
    elif shift is not None:
        raise ValueError(f"unknown shift {shift!r}")
    return n - linalg.rank(F, L)


def serialize_map(A: SemilinearMap) -> dict:
    F = A.field
    return {
        "p": F.p,
        "r": F.r,
        "modulus": list(F.modulus),
        "twist": A.twist,
        "matrix": [[list(entry) for entry in row] for row in A.mat],
    }


def deserialize_map(data: dict) -> SemilinearMap:
    F = Fq(data["p"], data["r"], tuple(data["modulus"]))
    mat = [[tuple(entry) for entry in row] for row in data["matrix"]]
    return SemilinearMap(F, mat, data["twist"])
