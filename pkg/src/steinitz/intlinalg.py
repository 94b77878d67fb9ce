"""Exact integer and rational linear algebra on plain lists of lists.

Lattices are stored as lists of row vectors.  Matrices that act on vectors
(sigma, S, ...) act on column vectors, i.e. ``matvec(A, v) = A v``.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

Matrix = list[list[int]]
Vector = list[int]


class NotSublattice(ValueError):
    pass


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with g = gcd(a, b) >= 0 and a*x + b*y = g."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(A: Sequence[Sequence]) -> list[list]:
    return [list(r) for r in zip(*A)]


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> list[list]:
    Bt = transpose(B)
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def matvec(A: Sequence[Sequence], v: Sequence) -> list:
    return [sum(a * x for a, x in zip(row, v)) for row in A]


def scale(c, A: Sequence[Sequence]) -> list[list]:
    return [[c * x for x in row] for row in A]


def add(A: Sequence[Sequence], B: Sequence[Sequence]) -> list[list]:
    return [[x + y for x, y in zip(r, s)] for r, s in zip(A, B)]


def is_integral(A: Sequence[Sequence]) -> bool:
    return all(Fraction(x).denominator == 1 for row in A for x in row)


def to_int(A: Sequence[Sequence]) -> Matrix:
    out = []
    for row in A:
        r = []
        for x in row:
            x = Fraction(x)
            if x.denominator != 1:
                raise ValueError(f"non-integral entry {x}")
            r.append(int(x))
        out.append(r)
    return out


def hnf(rows: Sequence[Sequence[int]]) -> Matrix:
    """Row Hermite normal form of the Z-span of ``rows``.

    Zero rows are dropped.  Pivots are positive and every entry above a
    pivot lies in ``[0, pivot)``.
    """
    A = [list(map(int, r)) for r in rows if any(r)]
    if not A:
        return []
    ncols = len(A[0])
    out: Matrix = []
    for j in range(ncols):
        active = [r for r in A if r[j] != 0]
        if not active:
            continue
        rest = [r for r in A if r[j] == 0]
        piv = active[0]
        for r in active[1:]:
            g, x, y = xgcd(piv[j], r[j])
            a, b = piv[j] // g, r[j] // g
            new_piv = [x * p + y * q for p, q in zip(piv, r)]
            other = [b * p - a * q for p, q in zip(piv, r)]
            piv = new_piv
            if any(other):
                rest.append(other)
        if piv[j] < 0:
            piv = [-x for x in piv]
        out.append(piv)
        A = rest
        if not A:
            break
    # reduce entries above pivots
    for i in range(len(out)):
        j = next(k for k, x in enumerate(out[i]) if x)
        p = out[i][j]
        for k in range(i):
            q = out[k][j] // p
            if q:
                out[k] = [x - q * y for x, y in zip(out[k], out[i])]
    return out


def rational_hnf(rows: Sequence[Sequence]) -> tuple[Matrix, int]:
    """HNF of a lattice with rational generators, as (integer HNF, denominator)."""
    den = 1
    for r in rows:
        for x in r:
            den = den * Fraction(x).denominator // gcd(den, Fraction(x).denominator)
    return hnf([[int(Fraction(x) * den) for x in r] for r in rows]), den


def det(A: Sequence[Sequence]) -> Fraction:
    n = len(A)
    M = [[Fraction(x) for x in row] for row in A]
    d = Fraction(1)
    for j in range(n):
        p = next((i for i in range(j, n) if M[i][j] != 0), None)
        if p is None:
            return Fraction(0)
        if p != j:
            M[j], M[p] = M[p], M[j]
            d = -d
        d *= M[j][j]
        for i in range(j + 1, n):
            f = M[i][j] / M[j][j]
            if f:
                M[i] = [a - f * b for a, b in zip(M[i], M[j])]
    return d


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[0])


def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q (nonzero rows, pivot columns)."""
    M = [[Fraction(x) for x in r] for r in rows]
    if not M:
        return [], []
    ncols = len(M[0])
    pivots: list[int] = []
    r = 0
    for j in range(ncols):
        p = next((i for i in range(r, len(M)) if M[i][j] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = 1 / M[r][j]
        M[r] = [x * inv for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][j] != 0:
                f = M[i][j]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(j)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


def solve_rational(basis: Sequence[Sequence], v: Sequence) -> list[Fraction] | None:
    """Coefficients c with sum c_i basis_i = v, or None if v is outside the span.

    ``basis`` must be linearly independent.
    """
    k = len(basis)
    if k == 0:
        return [] if not any(v) else None
    # columns = basis vectors; augmented with v
    aug = [[Fraction(basis[i][j]) for i in range(k)] + [Fraction(v[j])] for j in range(len(v))]
    R, piv = rref(aug)
    if k in piv:
        return None
    if len(piv) != k:
        raise ValueError("basis is not linearly independent")
    return [R[i][k] for i in range(k)]


def coordinates(basis: Sequence[Sequence], vectors: Sequence[Sequence]) -> list[list[Fraction]]:
    out = []
    for v in vectors:
        c = solve_rational(basis, v)
        if c is None:
            raise NotSublattice(f"vector {list(v)} not in the span of the basis")
        out.append(c)
    return out


def integer_kernel(A: Sequence[Sequence[int]]) -> Matrix:
    """Z-basis (rows) of {x in Z^m : A x = 0}; the result is saturated."""
    if not A:
        raise ValueError("empty matrix")
    r, m = len(A), len(A[0])
    aug = [[A[i][j] for i in range(r)] + [int(j == k) for k in range(m)] for j in range(m)]
    H = hnf(aug)
    return [row[r:] for row in H if not any(row[:r])]


def saturate(rows: Sequence[Sequence[int]]) -> Matrix:
    """Z-basis of (Q-span of rows) intersected with Z^m."""
    if not rows:
        return []
    perp = integer_kernel(rows)
    if not perp:
        return identity(len(rows[0]))
    return hnf(integer_kernel(perp))


def integer_solve(gens: Sequence[Sequence[int]], target: Sequence[int]) -> list[int] | None:
    """Integer coefficients c with sum c_i gens_i = target, or None."""
    k = len(gens)
    n = len(target)
    aug = [list(g) + [int(i == j) for j in range(k)] for i, g in enumerate(gens)]
    H = hnf(aug)
    t = list(target) + [0] * k
    for row in H:
        j = next(jj for jj, x in enumerate(row) if x)
        if j >= n:
            break
        q, rem = divmod(t[j], row[j])
        if rem:
            return None
        t = [a - q * b for a, b in zip(t, row)]
    if any(t[:n]):
        return None
    return [-x for x in t[n:]]


def lattice_index(big: Sequence[Sequence], small: Sequence[Sequence]) -> int:
    """(big : small) for two lattices of equal rank given by Z-bases (rows)."""
    if len(big) != len(small):
        raise NotSublattice("lattices of different rank")
    C = coordinates(big, small)
    if not is_integral(C):
        raise NotSublattice("coordinates are not integral")
    return abs(int(det(C)))


def smith_invariants(A: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero invariant factors d_1 | d_2 | ... of an integer matrix."""
    M = [list(map(int, r)) for r in A if any(r)]
    out: list[int] = []
    while M and any(any(r) for r in M):
        M = [r for r in M if any(r)]
        ncols = len(M[0])
        # move a smallest nonzero entry to (0, 0)
        while True:
            i, j = min(
                ((i, j) for i in range(len(M)) for j in range(ncols) if M[i][j]),
                key=lambda ij: abs(M[ij[0]][ij[1]]),
            )
            M[0], M[i] = M[i], M[0]
            for r in M:
                r[0], r[j] = r[j], r[0]
            p = M[0][0]
            clean = True
            for i in range(1, len(M)):
                q = M[i][0] // p
                M[i] = [a - q * b for a, b in zip(M[i], M[0])]
                clean &= M[i][0] == 0
            for j in range(1, ncols):
                q = M[0][j] // p
                for r in M:
                    r[j] -= q * r[0]
                clean &= M[0][j] == 0
            if not clean:
                continue
            bad = next(
                ((i, j) for i in range(1, len(M)) for j in range(1, ncols) if M[i][j] % p),
                None,
            )
            if bad is None:
                break
            M[0] = [a + b for a, b in zip(M[0], M[bad[0]])]
        out.append(abs(M[0][0]))
        M = [r[1:] for r in M[1:]]
        if M and not M[0]:
            break
    return out


def is_unimodular(A: Sequence[Sequence[int]]) -> bool:
    return abs(det(A)) == 1


def inverse(A: Sequence[Sequence]) -> list[list[Fraction]]:
    n = len(A)
    aug = [[Fraction(x) for x in A[i]] + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    R, piv = rref(aug)
    if piv[:n] != list(range(n)) or len(R) < n:
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in R]


def random_unimodular(n: int, rng, steps: int | None = None, bound: int = 2) -> Matrix:
    """Random element of GL_n(Z) as a product of elementary matrices."""
    U = identity(n)
    if n == 1:
        return [[rng.choice((1, -1))]]
    for _ in range(steps if steps is not None else 3 * n):
        i, j = rng.sample(range(n), 2)
        c = rng.randint(-bound, bound)
        U[i] = [a + c * b for a, b in zip(U[i], U[j])]
        if rng.random() < 0.2:
            U[i] = [-a for a in U[i]]
    perm = list(range(n))
    rng.shuffle(perm)
    return [U[p] for p in perm]
