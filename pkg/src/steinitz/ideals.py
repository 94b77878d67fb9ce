"""Integral ideals of O_K, prime splitting and the class group via reduced forms."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, isqrt
from typing import Iterable, Sequence

from .intlinalg import hnf, xgcd
from .quadfield import KNum, QuadField, is_prime


class ZeroIdeal(ValueError):
    pass


class NotIntegral(ValueError):
    pass


@dataclass(frozen=True)
class IdealHNF:
    """Integral ideal Z*a + Z*(b + c*w), stored as the matrix [[a, b], [0, c]]."""

    field: QuadField
    a: int
    b: int
    c: int

    def __post_init__(self):
        if not (self.a > 0 and self.c > 0 and 0 <= self.b < self.a):
            raise ValueError(f"not in Hermite normal form: {self.matrix}")
        # O_K-stability: w times each generator must stay in the lattice
        for g in self.basis:
            if not self.contains(g * self.field.w):
                raise ValueError(f"{self.matrix} is not an O_K-module")

    @property
    def matrix(self) -> list[list[int]]:
        return [[self.a, self.b], [0, self.c]]

    @property
    def basis(self) -> tuple[KNum, KNum]:
        return self.field(self.a, 0), self.field(self.b, self.c)

    def norm(self) -> int:
        return self.a * self.c

    def contains(self, x: KNum) -> bool:
        if not x.is_integral():
            return False
        y, r = divmod(int(x.b), self.c)
        if r:
            return False
        return (int(x.a) - y * self.b) % self.a == 0

    def conj(self) -> "IdealHNF":
        return ideal_from_generators([g.conj() for g in self.basis], self.field)

    def is_unit(self) -> bool:
        return self.a == 1 and self.c == 1

    def __mul__(self, other: "IdealHNF") -> "IdealHNF":
        return ideal_mul(self, other)

    def __pow__(self, t: int) -> "IdealHNF":
        out = unit_ideal(self.field)
        base = self
        while t:
            if t & 1:
                out = out * base
            base = base * base
            t >>= 1
        return out

    def __add__(self, other: "IdealHNF") -> "IdealHNF":
        return ideal_from_generators(list(self.basis) + list(other.basis), self.field)

    def __repr__(self):
        return f"IdealHNF(D={self.field.D}, [[{self.a}, {self.b}], [0, {self.c}]])"


def _hnf_from_zgens(F: QuadField, zgens: Iterable[KNum]) -> IdealHNF:
    rows = []
    for g in zgens:
        if not g.is_integral():
            raise NotIntegral(f"{g} is not an algebraic integer")
        rows.append([int(g.b), int(g.a)])  # (w-coordinate, 1-coordinate)
    H = hnf(rows)
    if not H:
        raise ZeroIdeal("all generators are zero")
    if len(H) != 2 or H[0][0] == 0:
        raise ValueError("generators do not span a rank-2 lattice")
    c, b = H[0]
    a = H[1][1]
    return IdealHNF(F, a, b % a, c)


def ideal_from_generators(gens: Sequence[KNum], field: QuadField) -> IdealHNF:
    """HNF of the O_K-ideal generated by ``gens``."""
    w = field.w
    return _hnf_from_zgens(field, [x for g in gens for x in (g, g * w)])


def principal_ideal(x: KNum) -> IdealHNF:
    return ideal_from_generators([x], x.field)


def unit_ideal(field: QuadField) -> IdealHNF:
    return IdealHNF(field, 1, 0, 1)


def ideal_mul(A: IdealHNF, B: IdealHNF) -> IdealHNF:
    if A.field != B.field:
        raise ValueError("ideals of different fields")
    return _hnf_from_zgens(A.field, [x * y for x in A.basis for y in B.basis])


def ideal_norm(A: IdealHNF) -> int:
    return A.norm()


# ---------------------------------------------------------------------------
# prime splitting


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a | n) for n > 0."""
    if n <= 0:
        raise ValueError("n must be positive")
    result = 1
    while n % 2 == 0:
        n //= 2
        if a % 2 == 0:
            return 0
        if a % 8 in (3, 5):
            result = -result
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


@dataclass(frozen=True)
class PrimeDecomposition:
    kind: str  # "split", "inert" or "ramified"
    q: int
    ideals: tuple[IdealHNF, ...]

    @property
    def P(self) -> IdealHNF:
        return self.ideals[0]


def prime_above(q: int, field: QuadField) -> PrimeDecomposition:
    if not is_prime(q):
        raise ValueError(f"{q} is not prime")
    kr = kronecker(field.disc, q)
    if kr == -1:
        return PrimeDecomposition("inert", q, (principal_ideal(field(q)),))
    # root r of the minimal polynomial x^2 - t x + k of w modulo q
    t, k = field.trace_w, field.k
    r = next(x for x in range(q) if (x * x - t * x + k) % q == 0)
    P = ideal_from_generators([field(q), field(-r, 1)], field)
    if kr == 0:
        return PrimeDecomposition("ramified", q, (P,))
    return PrimeDecomposition("split", q, (P, P.conj()))


# ---------------------------------------------------------------------------
# binary quadratic forms


@dataclass(frozen=True, order=True)
class QForm:
    a: int
    b: int
    c: int

    @property
    def disc(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def is_reduced(self) -> bool:
        a, b, c = self.a, self.b, self.c
        if not (abs(b) <= a <= c):
            return False
        if (abs(b) == a or a == c) and b < 0:
            return False
        return True

    def reduce(self) -> "QForm":
        a, b, c = self.a, self.b, self.c
        if a <= 0 or self.disc >= 0:
            raise ValueError(f"{self} is not positive definite")
        while True:
            # normalize: -a < b <= a
            if not (-a < b <= a):
                r = (a - b) // (2 * a)
                b, c = b + 2 * r * a, a * r * r + b * r + c
            if a > c:
                a, b, c = c, -b, a
                continue
            if a == c and b < 0:
                b = -b
            return QForm(a, b, c)

    def __str__(self):
        return f"({self.a},{self.b},{self.c})"


def principal_form(disc: int) -> QForm:
    k = disc % 2
    return QForm(1, k, (k - disc) // 4)


def compose_forms(f: QForm, g: QForm) -> QForm:
    """Dirichlet composition of two primitive forms of equal discriminant, reduced."""
    if f.disc != g.disc:
        raise ValueError("forms of different discriminants")
    disc = f.disc
    beta = (f.b + g.b) // 2
    e1, x1, y1 = xgcd(f.a, g.a)
    e, x2, w = xgcd(e1, beta)
    u, v = x1 * x2, y1 * x2
    A = f.a * g.a // (e * e)
    B = (f.a * g.b * u + g.a * f.b * v + w * (f.b * g.b + disc) // 2) // e
    B %= 2 * A
    C = (B * B - disc) // (4 * A)
    return QForm(A, B, C).reduce()


def reduced_forms(disc: int) -> list[QForm]:
    """All primitive reduced positive definite forms of discriminant ``disc``."""
    if disc >= 0 or disc % 4 not in (0, 1):
        raise ValueError(f"bad discriminant {disc}")
    out = []
    amax = isqrt(-disc // 3)
    for a in range(1, amax + 1):
        for b in range(-a + 1, a + 1):
            if (b - disc) % 2:
                continue
            num = b * b - disc
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a or gcd(gcd(a, b), c) != 1:
                continue
            f = QForm(a, b, c)
            if f.is_reduced():
                out.append(f)
    return sorted(out)


def ideal_to_form(A: IdealHNF) -> QForm:
    """Reduced form N(x*a - y*beta)/N(A) attached to the oriented basis (a, beta)."""
    alpha, beta = A.basis
    n = A.norm()
    fa = alpha.norm() / n
    fb = -(alpha * beta.conj()).trace() / n
    fc = beta.norm() / n
    if any(Fraction(x).denominator != 1 for x in (fa, fb, fc)):
        raise AssertionError("norm form is not integral")
    return QForm(int(fa), int(fb), int(fc)).reduce()


def form_to_ideal(f: QForm, field: QuadField) -> IdealHNF:
    """The ideal Z*a + Z*(-b + sqrt(disc))/2 of norm a."""
    if f.disc != field.disc:
        raise ValueError("form discriminant does not match the field")
    # (-b + sqrt(disc))/2 in the basis (1, w)
    shift = -(f.b + 1) // 2 if field.half else -f.b // 2
    return IdealHNF(field, f.a, shift % f.a, 1)


@dataclass(frozen=True)
class ClassGroup:
    field: QuadField
    reps: tuple[QForm, ...]
    _index: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        self._index.update({f: i for i, f in enumerate(self.reps)})

    @property
    def h(self) -> int:
        return len(self.reps)

    @property
    def principal(self) -> int:
        return self._index[principal_form(self.field.disc)]

    def index_of(self, f: QForm) -> int:
        try:
            return self._index[f.reduce()]
        except KeyError:
            raise AssertionError(f"{f} reduces outside the class group") from None

    def label(self, i: int) -> str:
        f = self.reps[i]
        kind = "principal" if i == self.principal else "non-principal"
        return f"{f} {kind}"

    def ideal(self, i: int) -> IdealHNF:
        return form_to_ideal(self.reps[i], self.field)


def class_group(field: QuadField) -> ClassGroup:
    return ClassGroup(field, tuple(reduced_forms(field.disc)))


def ideal_class_of(A: IdealHNF, cg: ClassGroup) -> int:
    return cg.index_of(ideal_to_form(A))


def is_principal(A: IdealHNF) -> bool:
    return ideal_to_form(A) == principal_form(A.field.disc)


def class_pow(A: IdealHNF, t: int, cg: ClassGroup) -> int:
    """Class of A^t, reducing to a small representative after every product."""
    if t < 0:
        raise ValueError("t must be nonnegative")
    result = unit_ideal(A.field)
    base = cg.ideal(ideal_class_of(A, cg))
    while t:
        if t & 1:
            result = cg.ideal(ideal_class_of(result * base, cg))
        base = cg.ideal(ideal_class_of(base * base, cg))
        t >>= 1
    return ideal_class_of(result, cg)
