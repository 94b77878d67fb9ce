"""Lattices with an involution: eigenlattices, H^1 of the order-2 group, index identity."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .intlinalg import (
    Matrix,
    NotSublattice,
    add,
    coordinates,
    det,
    hnf,
    identity,
    integer_kernel,
    inverse,
    is_integral,
    lattice_index,
    matmul,
    random_unimodular,
    scale,
    smith_invariants,
    to_int,
    transpose,
)

__all__ = [
    "InfiniteIndex",
    "InvolutionLattice",
    "NotSublattice",
    "Theorem1Report",
    "anti_fixed_sublattice",
    "decomposition_index",
    "fixed_sublattice",
    "h1_invariants",
    "h1_order",
    "random_involution_lattice",
    "sublattice_index",
    "verify_theorem1",
]


class InfiniteIndex(ValueError):
    pass


@dataclass(frozen=True)
class InvolutionLattice:
    sigma: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        s = [list(r) for r in self.sigma]
        if any(len(r) != len(s) for r in s):
            raise ValueError("sigma must be square")
        if matmul(s, s) != identity(len(s)):
            raise ValueError("sigma is not an involution")

    @classmethod
    def from_matrix(cls, sigma: Sequence[Sequence[int]]) -> "InvolutionLattice":
        return cls(tuple(tuple(int(x) for x in r) for r in sigma))

    @property
    def m(self) -> int:
        return len(self.sigma)

    @property
    def matrix(self) -> Matrix:
        return [list(r) for r in self.sigma]

    def conjugate(self, U: Matrix) -> "InvolutionLattice":
        """The same action written in the basis given by the columns of U."""
        Uinv = to_int(inverse(U))
        return InvolutionLattice.from_matrix(matmul(matmul(Uinv, self.matrix), U))


def _eigenlattice(M: InvolutionLattice, sign: int) -> Matrix:
    A = add(M.matrix, scale(-sign, identity(M.m)))
    return integer_kernel(A)


def fixed_sublattice(M: InvolutionLattice) -> Matrix:
    """Z-basis (rows) of ker(sigma - 1)."""
    return _eigenlattice(M, 1)


def anti_fixed_sublattice(M: InvolutionLattice) -> Matrix:
    """Z-basis (rows) of ker(sigma + 1)."""
    return _eigenlattice(M, -1)


def coboundaries(M: InvolutionLattice) -> Matrix:
    """Z-basis of im(1 - sigma), i.e. of T = {P - sigma P}."""
    one_minus = add(identity(M.m), scale(-1, M.matrix))
    return hnf(transpose(one_minus))


def h1_invariants(M: InvolutionLattice) -> list[int]:
    """Invariant factors > 1 of H^1 = ker(1 + sigma) / im(1 - sigma)."""
    Z1 = anti_fixed_sublattice(M)
    B1 = coboundaries(M)
    if not Z1:
        return []
    C = to_int(coordinates(Z1, B1))
    inv = smith_invariants(C)
    if len(inv) != len(Z1):
        raise AssertionError("coboundaries do not have full rank in the cocycles")
    return [d for d in inv if d > 1]


def h1_order(M: InvolutionLattice) -> int:
    out = 1
    for d in h1_invariants(M):
        out *= d
    return out


def decomposition_index(M: InvolutionLattice) -> int:
    """(Z^m : M+ + M-)."""
    plus, minus = fixed_sublattice(M), anti_fixed_sublattice(M)
    if len(plus) + len(minus) != M.m:
        raise InfiniteIndex(f"ranks {len(plus)} + {len(minus)} != {M.m}")
    return abs(int(det(plus + minus)))


def sublattice_index(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> int:
    """(A : B) for Z-bases of equal rank with B inside A."""
    return lattice_index(A, B)


@dataclass(frozen=True)
class Theorem1Report:
    index: int
    h1: int
    rank_minus: int
    holds: bool


def verify_theorem1(M: InvolutionLattice) -> Theorem1Report:
    idx = decomposition_index(M)
    h1 = h1_order(M)
    r = len(anti_fixed_sublattice(M))
    return Theorem1Report(idx, h1, r, idx * h1 == 2**r)


def doubled_in_decomposition(M: InvolutionLattice) -> bool:
    """2 Z^m lies in M+ + M- (every 2 e_i has integral coordinates)."""
    basis = fixed_sublattice(M) + anti_fixed_sublattice(M)
    twos = scale(2, identity(M.m))
    return is_integral(coordinates(basis, twos))


def block_involution(blocks: Sequence[str]) -> Matrix:
    """Block-diagonal involution from blocks '+' = [1], '-' = [-1], 's' = swap."""
    size = sum(2 if b == "s" else 1 for b in blocks)
    S = [[0] * size for _ in range(size)]
    i = 0
    for b in blocks:
        if b == "+":
            S[i][i] = 1
            i += 1
        elif b == "-":
            S[i][i] = -1
            i += 1
        elif b == "s":
            S[i][i + 1] = S[i + 1][i] = 1
            i += 2
        else:
            raise ValueError(f"unknown block {b!r}")
    return S


def random_involution_lattice(rng, max_rank: int = 8) -> tuple[InvolutionLattice, list[str]]:
    """Unimodular conjugate of a random block-diagonal involution of rank <= max_rank."""
    blocks: list[str] = []
    size = 0
    target = rng.randint(1, max_rank)
    while size < target:
        b = rng.choice("+-s" if target - size >= 2 else "+-")
        blocks.append(b)
        size += 2 if b == "s" else 1
    base = InvolutionLattice.from_matrix(block_involution(blocks))
    return base.conjugate(random_unimodular(size, rng)), blocks


def expected_theorem1(blocks: Sequence[str]) -> tuple[int, int, int]:
    """(index, h1, rank_minus) of a block involution, read off block by block.

    [1]: index 1, H^1 = 0.  [-1]: index 1, H^1 = Z/2.  swap: index 2, H^1 = 0.
    """
    index = 2 ** blocks.count("s")
    h1 = 2 ** blocks.count("-")
    return index, h1, blocks.count("-") + blocks.count("s")
