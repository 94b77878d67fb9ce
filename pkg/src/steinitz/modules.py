"""Torsion-free O_K-modules inside K^n and their Steinitz classes.

A module is presented as a pseudo-module: a list of pairs (coefficient
ideal, vector) whose represented module is the sum of coeff_i * vec_i.
Everything that needs an actual lattice flattens to Z^(2n) over the
coordinates (1, w) of each component.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Sequence

from .ideals import (
    ClassGroup,
    IdealHNF,
    class_group,
    ideal_class_of,
    ideal_from_generators,
    unit_ideal,
)
from .intlinalg import (
    coordinates,
    hnf,
    integer_kernel,
    integer_solve,
    is_integral,
    rank,
    rational_hnf,
)
from .quadfield import KNum, QuadField


class NotFiniteIndex(ValueError):
    pass


class NotSubmodule(ValueError):
    pass


class NotIntegral(ValueError):
    pass


KVec = tuple[KNum, ...]


@dataclass(frozen=True)
class FracIdeal:
    """Fractional ideal num/den with num integral and den a positive integer."""

    num: IdealHNF
    den: int = 1

    def __post_init__(self):
        if self.den <= 0:
            raise ValueError("denominator must be positive")

    @property
    def field(self) -> QuadField:
        return self.num.field

    @property
    def basis(self) -> tuple[KNum, KNum]:
        return tuple(x / self.den for x in self.num.basis)

    def normalized(self) -> "FracIdeal":
        A = self.num
        g = gcd(gcd(A.a, A.b), A.c)
        g = gcd(g, self.den)
        if g == 1:
            return self
        return FracIdeal(IdealHNF(A.field, A.a // g, A.b // g, A.c // g), self.den // g)

    def __mul__(self, other: "FracIdeal") -> "FracIdeal":
        return FracIdeal(self.num * other.num, self.den * other.den).normalized()

    def inverse(self) -> "FracIdeal":
        # A * conj(A) = (N(A)), so (A/d)^-1 = d * conj(A) / N(A)
        F = self.field
        num = self.num.conj() * ideal_from_generators([F(self.den)], F)
        return FracIdeal(num, self.num.norm()).normalized()

    def scaled(self, x: KNum) -> "FracIdeal":
        return frac_ideal_from_generators([x * b for b in self.basis], self.field)

    def is_integral(self) -> bool:
        return self.den == 1

    @classmethod
    def unit(cls, field: QuadField) -> "FracIdeal":
        return cls(unit_ideal(field), 1)

    def __repr__(self):
        return f"FracIdeal({self.num.matrix}/{self.den})"


def frac_ideal_from_generators(gens: Sequence[KNum], field: QuadField) -> FracIdeal:
    den = 1
    for g in gens:
        for q in (g.a, g.b):
            den = den * q.denominator // gcd(den, q.denominator)
    num = ideal_from_generators([g * den for g in gens], field)
    return FracIdeal(num, den).normalized()


def flatten(vec: Sequence[KNum]) -> list[Fraction]:
    return [c for x in vec for c in (x.a, x.b)]


def unflatten(field: QuadField, row: Sequence) -> KVec:
    return tuple(field(row[2 * i], row[2 * i + 1]) for i in range(len(row) // 2))


@dataclass(frozen=True)
class PseudoModule:
    field: QuadField
    n: int
    elems: tuple[tuple[FracIdeal, KVec], ...]

    def __post_init__(self):
        for coeff, vec in self.elems:
            if len(vec) != self.n:
                raise ValueError(f"vector of length {len(vec)} in ambient rank {self.n}")
            if not any(vec):
                raise ValueError("zero vector in pseudo-module")

    def zgens(self) -> list[list[Fraction]]:
        return [flatten([b * x for x in vec]) for coeff, vec in self.elems for b in coeff.basis]

    def lattice(self) -> tuple[list[list[int]], int]:
        """Z-basis of the represented module as (integer HNF rows, denominator)."""
        return rational_hnf(self.zgens())

    def zrank(self) -> int:
        return rank(self.zgens()) if self.elems else 0

    def scaled(self, x: KNum) -> "PseudoModule":
        return PseudoModule(self.field, self.n, tuple((c, tuple(x * v for v in vec)) for c, vec in self.elems))

    def __add__(self, other: "PseudoModule") -> "PseudoModule":
        """External direct sum."""
        z = self.field.zero
        left = tuple((c, vec + (z,) * other.n) for c, vec in self.elems)
        right = tuple((c, (z,) * self.n + vec) for c, vec in other.elems)
        return PseudoModule(self.field, self.n + other.n, left + right)

    def same_lattice(self, other: "PseudoModule") -> bool:
        return self.n == other.n and self.lattice() == other.lattice()


def free_module(field: QuadField, n: int) -> PseudoModule:
    return from_ideals([unit_ideal(field)] * n)


def from_ideals(ideals: Sequence[IdealHNF | FracIdeal]) -> PseudoModule:
    """The module A_1 e_1 + ... + A_n e_n."""
    F = ideals[0].field
    n = len(ideals)
    elems = []
    for i, A in enumerate(ideals):
        if isinstance(A, IdealHNF):
            A = FracIdeal(A)
        elems.append((A, tuple(F.one if j == i else F.zero for j in range(n))))
    return PseudoModule(F, n, tuple(elems))


def from_generators(field: QuadField, gens: Sequence[Sequence], n: int | None = None) -> PseudoModule:
    """O_K-span of vectors (entries KNum, int or (a, b) pairs)."""

    def conv(x):
        if isinstance(x, KNum):
            return x
        if isinstance(x, (tuple, list)):
            return field(*x)
        return field(x)

    vecs = [tuple(conv(x) for x in g) for g in gens]
    if n is None:
        n = len(vecs[0])
    unit = FracIdeal.unit(field)
    return PseudoModule(field, n, tuple((unit, v) for v in vecs if any(v)))


def from_zlattice(field: QuadField, rows: Sequence[Sequence], n: int) -> PseudoModule:
    """Pseudo-module with O_K-span equal to the Z-span of ``rows`` (which must be O_K-stable)."""
    unit = FracIdeal.unit(field)
    elems = [(unit, unflatten(field, r)) for r in rows if any(r)]
    return PseudoModule(field, n, tuple(elems))


# ---------------------------------------------------------------------------
# Theorem 2 decomposition


def _is_ok_stable(field: QuadField, rows: Sequence[Sequence[int]]) -> bool:
    w = field.w
    basis = [list(r) for r in rows]
    images = [flatten([w * x for x in unflatten(field, r)]) for r in rows]
    try:
        return is_integral(coordinates(basis, images))
    except ValueError:
        return False


def _split_off_last(field: QuadField, rows: list[list[int]], n: int):
    """One induction step: M = N + C with C = B*e, B = rho(M), rho(e) = 1."""
    proj = [r[-2:] for r in rows]
    Bn = ideal_from_generators([field(a, b) for a, b in proj], field)

    # N = ker(rho) on M, dropped into Z^(2n-2)
    ker = integer_kernel([[p[0] for p in proj], [p[1] for p in proj]])
    N = hnf([[sum(x * r[j] for x, r in zip(kv, rows)) for j in range(2 * n - 2)] for kv in ker])

    # Bezout: N(B) = sum_j gamma_j * alpha_j with gamma_j in conj(B)
    alphas = Bn.basis
    deltas = Bn.conj().basis
    prods = [(i, j) for i in range(2) for j in range(2)]
    vecs = [[int((deltas[i] * alphas[j]).a), int((deltas[i] * alphas[j]).b)] for i, j in prods]
    x = integer_solve(vecs, [Bn.norm(), 0])
    if x is None:
        raise AssertionError("norm of B not in B*conj(B)")
    gammas = [field.zero, field.zero]
    for (i, j), c in zip(prods, x):
        gammas[j] = gammas[j] + deltas[i] * c

    # lift alpha_j to m_j in M and form e = sum (gamma_j/N(B)) m_j
    e = [field.zero] * n
    for alpha, gamma in zip(alphas, gammas):
        c = integer_solve(proj, [int(alpha.a), int(alpha.b)])
        if c is None:
            raise AssertionError("generator of rho(M) has no preimage")
        m = unflatten(field, [sum(ci * r[j] for ci, r in zip(c, rows)) for j in range(2 * n)])
        beta = gamma / Bn.norm()
        e = [ei + beta * mi for ei, mi in zip(e, m)]
    if e[-1] != field.one:
        raise AssertionError("splitting element does not project to 1")
    return Bn, tuple(e), N


def theorem2_decompose(M: PseudoModule) -> list[tuple[IdealHNF, KVec]]:
    """Pseudo-basis [(B_1, e_1), ..., (B_n, e_n)] of M with integral B_i.

    Peels off the last coordinate: B_n = rho(M), then splits M = N + B_n e_n
    with rho(e_n) = 1 and recurses on N = ker(rho) inside O_K^(n-1).
    """
    field, n = M.field, M.n
    rows, den = M.lattice()
    if den != 1:
        raise NotIntegral("module is not contained in O_K^n")
    if len(rows) < 2 * n:
        raise NotFiniteIndex(f"Z-rank {len(rows)} < {2 * n}")
    if not _is_ok_stable(field, rows):
        raise ValueError("generating set does not span an O_K-module")
    out: list[tuple[IdealHNF, KVec]] = []
    k = n
    z = field.zero
    while k > 0:
        Bk, ek, rows = _split_off_last(field, rows, k)
        out.append((Bk, ek + (z,) * (n - k)))
        k -= 1
    out.reverse()
    return out


def decomposition_module(parts: Sequence[tuple[IdealHNF, KVec]]) -> PseudoModule:
    F = parts[0][0].field
    return PseudoModule(F, len(parts[0][1]), tuple((FracIdeal(B), e) for B, e in parts))


@dataclass(frozen=True)
class SteinitzResult:
    ideal: IdealHNF
    class_index: int
    norm: int
    label: str
    parts: tuple[IdealHNF, ...]

    @property
    def principal(self) -> bool:
        return self.label.endswith(" principal")


def steinitz_class(M: PseudoModule, cg: ClassGroup | None = None) -> SteinitzResult:
    if cg is None:
        cg = class_group(M.field)
    parts = theorem2_decompose(M)
    A = reduce(lambda x, y: x * y, (B for B, _ in parts))
    i = ideal_class_of(A, cg)
    return SteinitzResult(A, i, A.norm(), cg.label(i), tuple(B for B, _ in parts))


def module_index_oracle(L: PseudoModule, M: PseudoModule) -> int:
    """(L : M) from Z-HNF determinants, independent of the decomposition."""
    if L.n != M.n:
        raise ValueError("modules in different ambient spaces")
    HL, dL = L.lattice()
    HM, dM = M.lattice()
    if len(HL) != 2 * L.n or len(HM) != 2 * M.n:
        raise NotFiniteIndex("modules are not of full rank")
    try:
        C = coordinates([[Fraction(x, dL) for x in r] for r in HL], [[Fraction(x, dM) for x in r] for r in HM])
    except ValueError as exc:
        raise NotSubmodule(str(exc)) from None
    if not is_integral(C):
        raise NotSubmodule("M is not contained in L")
    detL = Fraction(1)
    for i, r in enumerate(HL):
        detL *= Fraction(r[i], dL)
    detM = Fraction(1)
    for i, r in enumerate(HM):
        detM *= Fraction(r[i], dM)
    idx = detM / detL
    assert idx.denominator == 1
    return int(idx)


# ---------------------------------------------------------------------------
# A1 + A2 = O_K + A1*A2


@dataclass(frozen=True)
class Lemma5Witness:
    source: PseudoModule  # A1 e1 + A2 e2
    target: PseudoModule  # O_K f1 + A1A2 f2
    matrix: tuple[KVec, KVec]  # rows f1, f2 in e-coordinates

    def verify(self) -> bool:
        return self.source.same_lattice(self.target)


def _small_elements(basis: Sequence[KNum]):
    for R in itertools.count(1):
        for x, y in itertools.product(range(-R, R + 1), repeat=2):
            if max(abs(x), abs(y)) == R:
                yield basis[0] * x + basis[1] * y


def lemma5_witness(A1: IdealHNF, A2: IdealHNF) -> Lemma5Witness:
    """Explicit isomorphism A1 + A2 = O_K + A1 A2 of pseudo-modules in K^2.

    Finds v in A2^-1 with v*A2 coprime to A1, then s in A1, t in A2 with
    s + v t = 1; the new pseudo-basis is f1 = (s, t) with coefficient O_K and
    f2 = (v, -1) with coefficient A1 A2.
    """
    F = A1.field
    source = from_ideals([A1, A2])
    if A1.is_unit():
        f1 = (F.one, F.zero)
        f2 = (F.zero, F.one)
    else:
        A2inv = FracIdeal(A2).inverse()
        for v in _small_elements(A2inv.basis):
            if not v:
                continue
            J = ideal_from_generators([v * b for b in A2.basis], F)
            if (J + A1).is_unit():
                break
        gens = [[int(x.a), int(x.b)] for x in A1.basis] + [[int(x.a), int(x.b)] for x in J.basis]
        c = integer_solve(gens, [1, 0])
        s = A1.basis[0] * c[0] + A1.basis[1] * c[1]
        vt = J.basis[0] * c[2] + J.basis[1] * c[3]
        t = vt / v
        f1 = (s, t)
        f2 = (v, -F.one)
    target = PseudoModule(F, 2, ((FracIdeal.unit(F), f1), (FracIdeal(A1 * A2), f2)))
    return Lemma5Witness(source, target, (f1, f2))


# ---------------------------------------------------------------------------
# random instances


def random_algint(field: QuadField, rng, bound: int = 4) -> KNum:
    return field(rng.randint(-bound, bound), rng.randint(-bound, bound))


def random_ideal(field: QuadField, rng, bound: int = 4) -> IdealHNF:
    while True:
        gens = [random_algint(field, rng, bound) for _ in range(2)]
        if any(gens):
            return ideal_from_generators(gens, field)


def random_submodule(field: QuadField, n: int, rng, bound: int = 3, extra: int = 1) -> PseudoModule:
    """Random full-rank O_K-submodule of O_K^n given by a generating set."""
    while True:
        gens = [tuple(random_algint(field, rng, bound) for _ in range(n)) for _ in range(n + extra)]
        M = from_generators(field, [g for g in gens if any(g)], n)
        if M.elems and M.zrank() == 2 * n:
            return M


def regenerate(M: PseudoModule, rng) -> PseudoModule:
    """Same module, new generating set: a random unimodular mix of the old one."""
    from .intlinalg import random_unimodular

    if any(not c.is_integral() or not c.num.is_unit() for c, _ in M.elems):
        raise ValueError("regenerate expects O_K coefficients")
    vecs = [v for _, v in M.elems]
    U = random_unimodular(len(vecs), rng)
    z = M.field.zero
    new = []
    for row in U:
        v = [z] * M.n
        for c, vec in zip(row, vecs):
            if c:
                v = [a + c * b for a, b in zip(v, vec)]
        new.append(tuple(v))
    return from_generators(M.field, [v for v in new if any(v)], M.n)
