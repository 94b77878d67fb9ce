"""The imaginary quadratic field K = Q(sqrt(-D)) and its ring of integers.

Elements are written a + b*w in the fixed integral basis (1, w), where
w = (1 + sqrt(-D))/2 when D = 3 (mod 4) and w = sqrt(-D) otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import isqrt


class NotSquarefree(ValueError):
    pass


class BasisMode(Enum):
    PLAIN = "Plain"
    HALF_INTEGRAL = "HalfIntegral"


def is_squarefree(n: int) -> bool:
    if n < 1:
        return False
    p = 2
    while p * p <= n:
        if n % (p * p) == 0:
            return False
        p += 1
    return True


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % p for p in range(2, isqrt(n) + 1))


@dataclass(frozen=True)
class QuadField:
    D: int

    def __post_init__(self):
        if self.D < 1:
            raise ValueError(f"D must be a positive integer, got {self.D}")
        if not is_squarefree(self.D):
            raise NotSquarefree(f"D = {self.D} is not squarefree")

    @property
    def half(self) -> bool:
        return self.D % 4 == 3

    @property
    def basis_mode(self) -> BasisMode:
        return BasisMode.HALF_INTEGRAL if self.half else BasisMode.PLAIN

    @property
    def disc(self) -> int:
        return -self.D if self.half else -4 * self.D

    @property
    def k(self) -> int:
        """Constant term of the minimal polynomial of w: w^2 = t*w - k."""
        return (1 + self.D) // 4 if self.half else self.D

    @property
    def trace_w(self) -> int:
        return 1 if self.half else 0

    def __call__(self, a=0, b=0) -> "KNum":
        return KNum(self, Fraction(a), Fraction(b))

    @property
    def one(self) -> "KNum":
        return self(1, 0)

    @property
    def zero(self) -> "KNum":
        return self(0, 0)

    @property
    def w(self) -> "KNum":
        return self(0, 1)

    @property
    def sqrt_minus_d(self) -> "KNum":
        return self(-1, 2) if self.half else self(0, 1)

    def omega_matrix(self) -> list[list[int]]:
        """Matrix of multiplication by w on coordinates (a, b)."""
        # w*1 = w, w*w = t*w - k
        return [[0, -self.k], [1, self.trace_w]]

    def __str__(self):
        return f"Q(sqrt(-{self.D}))"


def make_field(D: int) -> QuadField:
    return QuadField(D)


@dataclass(frozen=True)
class KNum:
    """Element a + b*w of K with rational coordinates."""

    field: QuadField
    a: Fraction
    b: Fraction

    def _coerce(self, other) -> "KNum":
        if isinstance(other, KNum):
            if other.field != self.field:
                raise ValueError("elements of different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return KNum(self.field, Fraction(other), Fraction(0))
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return KNum(self.field, self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return KNum(self.field, -self.a, -self.b)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return KNum(self.field, self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        F = self.field
        bd = self.b * o.b
        return KNum(F, self.a * o.a - F.k * bd, self.a * o.b + self.b * o.a + F.trace_w * bd)

    __rmul__ = __mul__

    def conj(self) -> "KNum":
        if self.field.half:
            return KNum(self.field, self.a + self.b, -self.b)
        return KNum(self.field, self.a, -self.b)

    def norm(self) -> Fraction:
        F = self.field
        return self.a * self.a + F.trace_w * self.a * self.b + F.k * self.b * self.b

    def trace(self) -> Fraction:
        return 2 * self.a + self.field.trace_w * self.b

    def inv(self) -> "KNum":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero in K")
        c = self.conj()
        return KNum(self.field, c.a / n, c.b / n)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inv()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inv()

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return False
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        return hash((self.field.D, self.a, self.b))

    def is_integral(self) -> bool:
        return self.a.denominator == 1 and self.b.denominator == 1

    def coords(self) -> tuple[Fraction, Fraction]:
        return (self.a, self.b)

    def __repr__(self):
        name = "w" if self.field.half else f"sqrt(-{self.field.D})"
        return f"({self.a} + {self.b}*{name})"


# AlgInt is a KNum with integral coordinates; the class is shared.
AlgInt = KNum


def norm(x: KNum) -> Fraction:
    return x.norm()


def conj(x: KNum) -> KNum:
    return x.conj()


def _is_rational_square(q: Fraction) -> bool:
    if q < 0:
        return False
    return isqrt(q.numerator) ** 2 == q.numerator and isqrt(q.denominator) ** 2 == q.denominator


def degree_check(F_disc: int, D: int) -> bool:
    """True iff sqrt(-D) is not in F = Q(sqrt(F_disc)), i.e. [F(sqrt(-D)) : F] = 2.

    (u + v sqrt(d))^2 = u^2 + d v^2 + 2uv sqrt(d); for this to equal -D one
    of u, v vanishes, leaving -D = u^2 or -D = d v^2.  Both sides of each
    are of opposite sign for a real field, so the answer is always True.
    """
    if F_disc < 1 or D < 1:
        raise ValueError("F_disc and D must be positive")
    target = Fraction(-D)
    if _is_rational_square(target):
        return False
    if F_disc > 1 and _is_rational_square(target / F_disc):
        return False
    return True
