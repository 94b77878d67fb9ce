"""Weierstrass curves y^2 = x^3 + a2 x^2 + a4 x + a6 over the tower H = F(sqrt(-D)),
F = Q(sqrt(d)) real quadratic (or Q when d = 1).

Points are ``Point`` instances; the point at infinity is ``None``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Iterable, Sequence

from .cm import CMLattice, validate_cm
from .quadfield import QuadField, is_squarefree


class DivisionByZero(ZeroDivisionError):
    pass


class NotOnCurve(ValueError):
    pass


class NotOnTwist(ValueError):
    pass


class PoleEncountered(ZeroDivisionError):
    pass


class ValidationFailed(ValueError):
    def __init__(self, identity: str, detail: str = "", identities: Sequence[str] = ()):
        self.identity = identity
        self.identities = list(identities) or [identity]
        super().__init__(f"{', '.join(self.identities)} failed {detail}".strip())


class SearchExhausted(LookupError):
    def __init__(self, bound: int, what: str = ""):
        super().__init__(f"no combination with |coefficients| <= {bound} {what}".strip())
        self.bound = bound


@dataclass(frozen=True)
class Tower:
    d: int
    D: int

    def __post_init__(self):
        if not (is_squarefree(self.d) and is_squarefree(self.D)):
            raise ValueError("d and D must be squarefree positive integers")

    def __call__(self, c0=0, c1=0, c2=0, c3=0) -> "TowerElem":
        c = [Fraction(x) for x in (c0, c1, c2, c3)]
        if self.d == 1:
            # sqrt(d) = 1 collapses the basis
            c = [c[0] + c[1], Fraction(0), c[2] + c[3], Fraction(0)]
        return TowerElem(self, tuple(c))

    @property
    def zero(self) -> "TowerElem":
        return self()

    @property
    def one(self) -> "TowerElem":
        return self(1)

    @property
    def sqrt_d(self) -> "TowerElem":
        return self(0, 1)

    @property
    def sqrt_minus_D(self) -> "TowerElem":
        return self(0, 0, 1)


@dataclass(frozen=True)
class TowerElem:
    """c0 + c1 sqrt(d) + c2 sqrt(-D) + c3 sqrt(-dD)."""

    tower: Tower
    c: tuple[Fraction, Fraction, Fraction, Fraction]

    def _co(self, other) -> "TowerElem":
        if isinstance(other, TowerElem):
            return other
        return self.tower(other)

    def __add__(self, other):
        o = self._co(other)
        return TowerElem(self.tower, tuple(a + b for a, b in zip(self.c, o.c)))

    __radd__ = __add__

    def __neg__(self):
        return TowerElem(self.tower, tuple(-a for a in self.c))

    def __sub__(self, other):
        return self + (-self._co(other))

    def __rsub__(self, other):
        return self._co(other) - self

    def __mul__(self, other):
        o = self._co(other)
        d, D = self.tower.d, self.tower.D
        a0, a1, a2, a3 = self.c
        b0, b1, b2, b3 = o.c
        return TowerElem(self.tower, (
            a0 * b0 + d * a1 * b1 - D * a2 * b2 - d * D * a3 * b3,
            a0 * b1 + a1 * b0 - D * (a2 * b3 + a3 * b2),
            a0 * b2 + a2 * b0 + d * (a1 * b3 + a3 * b1),
            a0 * b3 + a3 * b0 + a1 * b2 + a2 * b1,
        ))

    __rmul__ = __mul__

    def sigma(self) -> "TowerElem":
        """Generator of Gal(H/F): sqrt(-D) -> -sqrt(-D)."""
        c0, c1, c2, c3 = self.c
        return TowerElem(self.tower, (c0, c1, -c2, -c3))

    def inv(self) -> "TowerElem":
        if not self:
            raise DivisionByZero("inverse of zero in H")
        # x * sigma(x) lies in F; invert there
        n = self * self.sigma()
        g0, g1 = n.c[0], n.c[1]
        fn = g0 * g0 - self.tower.d * g1 * g1
        return self.sigma() * self.tower(g0 / fn, -g1 / fn)

    def __truediv__(self, other):
        return self * self._co(other).inv()

    def __rtruediv__(self, other):
        return self._co(other) * self.inv()

    def __pow__(self, n: int):
        out = self.tower.one
        for _ in range(n):
            out = out * self
        return out

    def __bool__(self):
        return any(self.c)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.tower(other)
        if not isinstance(other, TowerElem):
            return NotImplemented
        return self.tower == other.tower and self.c == other.c

    def __hash__(self):
        return hash((self.tower, self.c))

    def in_F(self) -> bool:
        return self.c[2] == 0 and self.c[3] == 0

    def in_sqrt_minus_D_F(self) -> bool:
        return self.c[0] == 0 and self.c[1] == 0

    def height(self) -> int:
        return max(max(abs(x.numerator), x.denominator) for x in self.c)

    def __repr__(self):
        d, D = self.tower.d, self.tower.D
        names = ["", f"√{d}", f"√-{D}", f"√-{d * D}"]
        parts = [f"{x}{n}" if n else f"{x}" for x, n in zip(self.c, names) if x]
        return "(" + " + ".join(parts) + ")" if parts else "0"


@dataclass(frozen=True)
class Point:
    x: TowerElem
    y: TowerElem

    def __repr__(self):
        return f"Point({self.x!r}, {self.y!r})"


@dataclass(frozen=True)
class Curve:
    tower: Tower
    a2: TowerElem
    a4: TowerElem
    a6: TowerElem

    def __post_init__(self):
        if not all(a.in_F() for a in (self.a2, self.a4, self.a6)):
            raise ValueError("coefficients must lie in F")
        if not self.discriminant():
            raise ValueError("singular curve")

    def discriminant(self) -> TowerElem:
        a, b, c = self.a2, self.a4, self.a6
        return a * a * b * b - 4 * b**3 - 4 * a**3 * c - 27 * c * c + 18 * a * b * c

    def f(self, x: TowerElem) -> TowerElem:
        return ((x + self.a2) * x + self.a4) * x + self.a6

    def __repr__(self):
        return f"y^2 = x^3 + {self.a2!r} x^2 + {self.a4!r} x + {self.a6!r}"


def on_curve(E: Curve, P: Point | None) -> bool:
    return P is None or P.y * P.y == E.f(P.x)


def _check(E: Curve, *pts):
    for P in pts:
        if not on_curve(E, P):
            raise NotOnCurve(f"{P} is not on {E}")


def neg(P: Point | None) -> Point | None:
    return None if P is None else Point(P.x, -P.y)


def point_add(E: Curve, P: Point | None, Q: Point | None) -> Point | None:
    if P is None:
        return Q
    if Q is None:
        return P
    if P.x == Q.x:
        if P.y == -Q.y:
            return None
        lam = (3 * P.x * P.x + 2 * E.a2 * P.x + E.a4) / (2 * P.y)
    else:
        lam = (Q.y - P.y) / (Q.x - P.x)
    x3 = lam * lam - E.a2 - P.x - Q.x
    y3 = -(P.y + lam * (x3 - P.x))
    return Point(x3, y3)


def point_sub(E: Curve, P, Q):
    return point_add(E, P, neg(Q))


def scalar_mul(E: Curve, n: int, P: Point | None) -> Point | None:
    if n < 0:
        return scalar_mul(E, -n, neg(P))
    out = None
    while n:
        if n & 1:
            out = point_add(E, out, P)
        P = point_add(E, P, P)
        n >>= 1
    return out


def galois_sigma(P: Point | None) -> Point | None:
    return None if P is None else Point(P.x.sigma(), P.y.sigma())


def is_torsion(E: Curve, P: Point | None, max_order: int = 24) -> bool:
    Q = P
    for _ in range(max_order):
        if Q is None:
            return True
        Q = point_add(E, Q, P)
    return Q is None


# ---------------------------------------------------------------------------
# quadratic twist and I


def twist_iso(E: Curve, x: TowerElem, y: TowerElem) -> Point:
    """(x, y) on E_D: -D y^2 = f(x), x, y in F  ->  (x, sqrt(-D) y) on E."""
    if not (x.in_F() and y.in_F()):
        raise NotOnTwist("twist point must have coordinates in F")
    if -E.tower.D * y * y != E.f(x):
        raise NotOnTwist(f"({x}, {y}) does not satisfy -D y^2 = f(x)")
    return Point(x, E.tower.sqrt_minus_D * y)


def in_I(P: Point | None) -> bool:
    return P is None or (P.x.in_F() and P.y.in_sqrt_minus_D_F())


def is_F_rational(P: Point | None) -> bool:
    return P is None or (P.x.in_F() and P.y.in_F())


# ---------------------------------------------------------------------------
# CM maps [sqrt(-D)](x, y) = (a(x), y sqrt(-D) b(x))


Poly = tuple[TowerElem, ...]  # coefficients, constant term first


def poly_eval(p: Poly, x: TowerElem) -> TowerElem:
    out = x.tower.zero
    for c in reversed(p):
        out = out * x + c
    return out


@dataclass(frozen=True)
class CMMaps:
    a_num: Poly
    a_den: Poly
    b_num: Poly
    b_den: Poly

    def __post_init__(self):
        for p in (self.a_den, self.b_den):
            if not any(p):
                raise ValueError("zero denominator polynomial")
        for p in (self.a_num, self.a_den, self.b_num, self.b_den):
            if not all(c.in_F() for c in p):
                raise ValueError("CM map coefficients must lie in F")


def apply_cm(E: Curve, maps: CMMaps, P: Point | None) -> Point | None:
    if P is None:
        return None
    ad = poly_eval(maps.a_den, P.x)
    bd = poly_eval(maps.b_den, P.x)
    if not ad or not bd:
        raise PoleEncountered(f"pole of the CM map at x = {P.x}")
    x = poly_eval(maps.a_num, P.x) / ad
    y = P.y * E.tower.sqrt_minus_D * poly_eval(maps.b_num, P.x) / bd
    return Point(x, y)


@dataclass
class CMMapsReport:
    samples: int
    failures: list[tuple[int, str]]

    @property
    def valid(self) -> bool:
        return not self.failures


def validate_cm_maps(E: Curve, maps: CMMaps, samples: Iterable[Point | None], raise_on_failure: bool = True) -> CMMapsReport:
    """Check on each sample: image on E, [sqrt(-D)]^2 = [-D], sigma-semilinearity.

    All three identities are evaluated even when an earlier one fails.
    """
    D = E.tower.D
    failures = []
    n = 0
    for i, P in enumerate(samples):
        n += 1
        _check(E, P)
        Q = apply_cm(E, maps, P)
        if not on_curve(E, Q):
            failures.append((i, "image_on_curve"))
        try:
            if apply_cm(E, maps, Q) != scalar_mul(E, D, neg(P)):
                failures.append((i, "square_is_minus_D"))
        except PoleEncountered:
            failures.append((i, "square_is_minus_D"))
        if galois_sigma(Q) != neg(apply_cm(E, maps, galois_sigma(P))):
            failures.append((i, "semilinearity"))
    report = CMMapsReport(n, failures)
    if failures and raise_on_failure:
        i, name = failures[0]
        names = sorted({f for _, f in failures}, key=["image_on_curve", "square_is_minus_D", "semilinearity"].index)
        raise ValidationFailed(name, f"at sample {i}", names)
    return report


# ---------------------------------------------------------------------------
# point search


def sqrt_in_Q(q: Fraction) -> Fraction | None:
    if q < 0:
        return None
    n, d = isqrt(q.numerator), isqrt(q.denominator)
    if n * n == q.numerator and d * d == q.denominator:
        return Fraction(n, d)
    return None


def sqrt_in_F(g: TowerElem) -> TowerElem | None:
    """Square root of g in F = Q(sqrt(d)), or None."""
    T = g.tower
    g0, g1 = g.c[0], g.c[1]
    if not g.in_F():
        return None
    if g1 == 0:
        r = sqrt_in_Q(g0)
        if r is not None:
            return T(r)
        if T.d > 1:
            r = sqrt_in_Q(g0 / T.d)
            if r is not None:
                return T(0, r)
        return None
    # (u + v sqrt d)^2 = u^2 + d v^2 + 2uv sqrt d
    n = sqrt_in_Q(g0 * g0 - T.d * g1 * g1)
    if n is None:
        return None
    for s in (n, -n):
        u = sqrt_in_Q((g0 + s) / 2)
        if u:
            return T(u, g1 / (2 * u))
    return None


def sqrt_in_H(g: TowerElem) -> TowerElem | None:
    """Square root of g in H = F(sqrt(-D)), or None."""
    T = g.tower
    t = T.sqrt_minus_D
    g0 = T(g.c[0], g.c[1])
    g1 = T(g.c[2], g.c[3])
    if not g1:
        r = sqrt_in_F(g0)
        if r is not None:
            return r
        r = sqrt_in_F(g0 / (-T.D))
        return None if r is None else r * t
    # (a + b t)^2 = a^2 - D b^2 + 2ab t with a, b in F
    n = sqrt_in_F(g0 * g0 + T.D * g1 * g1)
    if n is None:
        return None
    for s in (n, -n):
        a = sqrt_in_F((g0 + s) / 2)
        if a:
            return a + g1 / (2 * a) * t
    return None


def find_points(E: Curve, height: int = 6, denominators: Sequence[int] = (1, 2), limit: int | None = None):
    """F-rational points and points of I with x = (u + v sqrt d)/den, |u|, |v| <= height.

    Yields (kind, point) with kind 'F' or 'I'.
    """
    T = E.tower
    seen = set()
    count = 0
    vs = range(-height, height + 1) if T.d > 1 else [0]
    for den in denominators:
        for u, v in itertools.product(range(-height, height + 1), vs):
            x = T(Fraction(u, den), Fraction(v, den))
            if x in seen:
                continue
            seen.add(x)
            fx = E.f(x)
            if not fx:
                continue
            y = sqrt_in_F(fx)
            if y is not None:
                yield "F", Point(x, y)
            else:
                y = sqrt_in_F(fx / (-T.D))
                if y is None:
                    continue
                yield "I", Point(x, T.sqrt_minus_D * y)
            count += 1
            if limit is not None and count >= limit:
                return


# ---------------------------------------------------------------------------
# CM lattice extraction


def _combinations(E: Curve, basis: Sequence[Point], bound: int):
    """Yield (coefficients, point) for all |c_i| <= bound in order of max |c_i|."""
    mult = [{k: scalar_mul(E, k, B) for k in range(-bound, bound + 1)} for B in basis]
    for coeffs in sorted(itertools.product(range(-bound, bound + 1), repeat=len(basis)),
                         key=lambda c: (max(map(abs, c)) if c else 0, c)):
        P = None
        for k, m in zip(coeffs, mult):
            P = point_add(E, P, m[k])
        yield coeffs, P


def express(E: Curve, basis: Sequence[Point], target: Point | None, bound: int) -> tuple[int, ...]:
    for coeffs, P in _combinations(E, basis, bound):
        if P == target:
            return coeffs
    raise SearchExhausted(bound, f"for {target}")


def lattice_extract(
    E: Curve,
    field: QuadField,
    basis_plus: Sequence[Point],
    basis_minus: Sequence[Point],
    maps: CMMaps,
    bound: int = 10,
    torsion_bound: int = 24,
) -> CMLattice:
    """sigma and S matrices on the basis basis_plus + basis_minus, by bounded search."""
    if field.D != E.tower.D:
        raise ValueError("field and tower disagree on D")
    for P in basis_plus:
        _check(E, P)
        if not is_F_rational(P):
            raise ValueError(f"{P} is not F-rational")
    for P in basis_minus:
        _check(E, P)
        if not in_I(P):
            raise ValueError(f"{P} is not in I")
    basis = list(basis_plus) + list(basis_minus)
    for P in basis:
        if is_torsion(E, P, torsion_bound):
            raise ValueError(f"{P} is torsion")
    n = len(basis)
    table = {P: c for c, P in _combinations(E, basis, bound)}
    sigma = [[0] * n for _ in range(n)]
    S = [[0] * n for _ in range(n)]
    for j, B in enumerate(basis):
        for M, img in ((sigma, galois_sigma(B)), (S, apply_cm(E, maps, B))):
            if img not in table:
                raise SearchExhausted(bound, f"for image of basis point {j}")
            for i, c in enumerate(table[img]):
                M[i][j] = c
    out = CMLattice.from_matrices(field, sigma, S)
    v = validate_cm(out)
    if not v.valid:
        raise ValidationFailed("validate_cm", ", ".join(v.failures))
    return out
