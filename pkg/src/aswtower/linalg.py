"""Dense exact linear algebra over F_{p^r}.

Matrices are lists of rows; entries are Fq coefficient tuples.  Pivoting is
first-nonzero so every reduction is deterministic.
"""

from __future__ import annotations

from .field import Fq

Mat = list[list[tuple]]
Vec = list[tuple]


def zeros(F: Fq, n: int, m: int) -> Mat:
    return [[F.zero] * m for _ in range(n)]


def identity(F: Fq, n: int) -> Mat:
    return [[F.one if i == j else F.zero for j in range(n)] for i in range(n)]


def mat_copy(A: Mat) -> Mat:
    return [row[:] for row in A]


def mat_add(F: Fq, A: Mat, B: Mat) -> Mat:
    return [[F.add(a, b) for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_sub(F: Fq, A: Mat, B: Mat) -> Mat:
    return [[F.sub(a, b) for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_neg(F: Fq, A: Mat) -> Mat:
    return [[F.neg(a) for a in row] for row in A]


def mat_mul(F: Fq, A: Mat, B: Mat) -> Mat:
    n = len(A)
    k = len(B)
    m = len(B[0]) if k else 0
    out = zeros(F, n, m)
    for i in range(n):
        Ai = A[i]
        Oi = out[i]
        for t in range(k):
            a = Ai[t]
            if a != F.zero:
                Bt = B[t]
                for j in range(m):
                    b = Bt[j]
                    if b != F.zero:
                        Oi[j] = F.add(Oi[j], F.mul(a, b))
    return out


def mat_vec(F: Fq, A: Mat, v: Vec) -> Vec:
    return [vec_dot(F, row, v) for row in A]


def vec_dot(F: Fq, a: Vec, b: Vec) -> tuple:
    acc = F.zero
    for x, y in zip(a, b):
        if x != F.zero and y != F.zero:
            acc = F.add(acc, F.mul(x, y))
    return acc


def transpose(A: Mat) -> Mat:
    return [list(col) for col in zip(*A)] if A and A[0] else ([[] for _ in A[0]] if A else [])


def mat_apply(F: Fq, A: Mat, fn) -> Mat:
    return [[fn(a) for a in row] for row in A]


def row_echelon(F: Fq, A: Mat):
    """Return (R, pivot_cols) with R the reduced row echelon form of A."""
    R = mat_copy(A)
    n = len(R)
    m = len(R[0]) if n else 0
    pivots = []
    row = 0
    for col in range(m):
        sel = None
        for i in range(row, n):
            if R[i][col] != F.zero:
                sel = i
                break
        if sel is None:
            continue
        R[row], R[sel] = R[sel], R[row]
        inv = F.inv(R[row][col])
        R[row] = [F.mul(inv, a) for a in R[row]]
        for i in range(n):
            if i != row and R[i][col] != F.zero:
                c = R[i][col]
                R[i] = [F.sub(a, F.mul(c, b)) for a, b in zip(R[i], R[row])]
        pivots.append(col)
        row += 1
        if row == n:
            break
    return R, pivots


def rank(F: Fq, A: Mat) -> int:
    if not A or not A[0]:
        return 0
    _, pivots = row_echelon(F, A)
    return len(pivots)


def nullspace(F: Fq, A: Mat) -> list[Vec]:
    """Basis of the right kernel of A, deterministic order."""
    if not A:
        return []
    m = len(A[0])
    if m == 0:
        return []
    R, pivots = row_echelon(F, A)
    free = [j for j in range(m) if j not in pivots]
    basis = []
    for f in free:
        v = [F.zero] * m
        v[f] = F.one
        for i, pc in enumerate(pivots):
            v[pc] = F.neg(R[i][f])
        basis.append(v)
    return basis


def solve(F: Fq, A: Mat, b: Vec) -> Vec | None:
    """One solution x of A x = b, or None if inconsistent."""
    if not A:
        return [] if all(x == F.zero for x in b) else None
    m = len(A[0])
    aug = [row[:] + [bv] for row, bv in zip(A, b)]
    R, pivots = row_echelon(F, aug)
    for i in range(len(R)):
        if all(R[i][j] == F.zero for j in range(m)) and R[i][m] != F.zero:
            return None
    x = [F.zero] * m
    for i, pc in enumerate(pivots):
        if pc == m:
            return None
        x[pc] = R[i][m]
    return x


def inverse(F: Fq, A: Mat) -> Mat:
    n = len(A)
    aug = [A[i][:] + identity(F, n)[i] for i in range(n)]
    R, pivots = row_echelon(F, aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix not invertible")
    return [row[n:] for row in R[:n]]


def column_space_basis(F: Fq, A: Mat) -> list[Vec]:
    """Basis of the column span, as column vectors, deterministic."""
    if not A or not A[0]:
        return []
    At = transpose(A)
    R, pivots = row_echelon(F, At)
    # rows of R spanning the same space as the columns of A
    return [R[i] for i in range(len(pivots))]


def stack_columns(cols: list[Vec]) -> Mat:
    """Matrix whose columns are the given vectors."""
    if not cols:
        return []
    return [list(row) for row in zip(*cols)]


def intersect_spaces(F: Fq, basis1: list[Vec], basis2: list[Vec]) -> list[Vec]:
    """Basis of span(basis1) & span(basis2)."""
    if not basis1 or not basis2:
        return []
    n = len(basis1[0])
    A = [[basis1[j][i] for j in range(len(basis1))] +
         [F.neg(basis2[j][i]) for j in range(len(basis2))] for i in range(n)]
    out = []
    for ker in nullspace(F, A):
        v = [F.zero] * n
        for j, c in enumerate(ker[: len(basis1)]):
            if c != F.zero:
                for i in range(n):
                    v[i] = F.add(v[i], F.mul(c, basis1[j][i]))
        out.append(v)
    # deduplicate to an actual basis
    return independent_subset(F, out)


def independent_subset(F: Fq, vecs: list[Vec]) -> list[Vec]:
    """Greedy maximal independent subset, preserving order."""
    picked: list[Vec] = []
    rows: Mat = []
    r = 0
    for v in vecs:
        cand = rows + [list(v)]
        if rank(F, cand) > r:
            rows = cand
            picked.append(v)
            r += 1
    return picked


def in_span(F: Fq, basis: list[Vec], v: Vec):
    """Coordinates of v in span(basis) or None."""
    if not basis:
        return [] if all(x == F.zero for x in v) else None
    A = stack_columns(basis)
    return solve(F, A, list(v))
