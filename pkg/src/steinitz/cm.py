"""CM lattices: an integer lattice of rank 2l with a Galois involution sigma and
the action S of multiplication by sqrt(-D), and the Steinitz pipelines built on them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .ideals import (
    ClassGroup,
    IdealHNF,
    class_group,
    class_pow,
    ideal_class_of,
    prime_above,
    principal_ideal,
    unit_ideal,
)
from .intlinalg import (
    Matrix,
    add,
    coordinates,
    det,
    hnf,
    identity,
    inverse,
    is_integral,
    matmul,
    matvec,
    random_unimodular,
    rank,
    scale,
    to_int,
    transpose,
)
from .involution import (
    InvolutionLattice,
    anti_fixed_sublattice,
    doubled_in_decomposition,
    fixed_sublattice,
    h1_order,
    sublattice_index,
    verify_theorem1,
)
from .modules import from_zlattice, steinitz_class
from .quadfield import KNum, QuadField, is_prime


class CMValidationError(ValueError):
    def __init__(self, failures: Sequence[str]):
        super().__init__("invalid CM lattice: " + ", ".join(failures))
        self.failures = list(failures)


class RankDefect(ValueError):
    pass


class ModeMismatch(ValueError):
    pass


class NotPrime(ModeMismatch):
    pass


class FactorResidue(ValueError):
    pass


class NotSubmodule(ValueError):
    pass


@dataclass(frozen=True)
class CMLattice:
    field: QuadField
    sigma: tuple[tuple[int, ...], ...]
    S: tuple[tuple[int, ...], ...]

    @classmethod
    def from_matrices(cls, field: QuadField, sigma, S) -> "CMLattice":
        return cls(field, tuple(tuple(int(x) for x in r) for r in sigma), tuple(tuple(int(x) for x in r) for r in S))

    @property
    def rank(self) -> int:
        return len(self.sigma)

    @property
    def l(self) -> int:
        return self.rank // 2

    @property
    def sigma_m(self) -> Matrix:
        return [list(r) for r in self.sigma]

    @property
    def S_m(self) -> Matrix:
        return [list(r) for r in self.S]

    def involution(self) -> InvolutionLattice:
        return InvolutionLattice(self.sigma)

    def omega_action(self) -> Matrix:
        """Matrix of the endomorphism [w]."""
        if self.field.half:
            return to_int(scale(Fraction(1, 2), add(identity(self.rank), self.S_m)))
        return self.S_m

    def conjugate(self, U: Matrix) -> "CMLattice":
        Uinv = to_int(inverse(U))
        return CMLattice.from_matrices(
            self.field, matmul(matmul(Uinv, self.sigma_m), U), matmul(matmul(Uinv, self.S_m), U)
        )


@dataclass
class Validation:
    failures: list[str] = field(default_factory=list)
    l: int | None = None

    @property
    def valid(self) -> bool:
        return not self.failures


def validate_cm(M: CMLattice) -> Validation:
    """Check every CMLattice invariant; collect failures instead of raising."""
    out = Validation()
    n = len(M.sigma)
    if n == 0 or any(len(r) != n for r in M.sigma) or len(M.S) != n or any(len(r) != n for r in M.S):
        out.failures.append("Shape")
        return out
    I = identity(n)
    sig, S = M.sigma_m, M.S_m
    if matmul(sig, sig) != I:
        out.failures.append("Involution")
    if matmul(S, S) != scale(-M.field.D, I):
        out.failures.append("CMSquare")
    if matmul(sig, S) != scale(-1, matmul(S, sig)):
        out.failures.append("Semilinearity")
    if M.field.half and not is_integral(scale(Fraction(1, 2), add(I, S))):
        out.failures.append("OmegaIntegrality")
    if "Involution" not in out.failures:
        inv = M.involution()
        r_plus, r_minus = len(fixed_sublattice(inv)), len(anti_fixed_sublattice(inv))
        if n % 2 or r_plus != n // 2 or r_minus != n // 2:
            out.failures.append("RankBalance")
        else:
            out.l = n // 2
    return out


def _require_valid(M: CMLattice) -> None:
    v = validate_cm(M)
    if not v.valid:
        raise CMValidationError(v.failures)


def ok_span_fixed(M: CMLattice) -> Matrix:
    """Z-basis [P_1, wP_1, ..., P_l, wP_l] of L = O_K * M+.

    Full Z-rank 2l certifies that P_1, ..., P_l is an O_K-basis of L.
    """
    plus = fixed_sublattice(M.involution())
    W = M.omega_action()
    basis = []
    for p in plus:
        basis += [p, matvec(W, p)]
    if rank(basis) != 2 * len(plus) or len(plus) != M.l:
        raise RankDefect(f"O_K * M+ has Z-rank {rank(basis)} < {2 * M.l}")
    return basis


@dataclass(frozen=True)
class Lemma3Report:
    idx1: int
    idx2: int
    holds: bool


def lemma3_check(M: CMLattice) -> Lemma3Report:
    """idx1 = (M- : S M+), idx2 = (M+ : S M-); their product must be D^l."""
    inv = M.involution()
    plus, minus = fixed_sublattice(inv), anti_fixed_sublattice(inv)
    S = M.S_m
    idx1 = sublattice_index(minus, [matvec(S, p) for p in plus])
    idx2 = sublattice_index(plus, [matvec(S, q) for q in minus])
    return Lemma3Report(idx1, idx2, idx1 * idx2 == M.field.D ** M.l)


def lemma4_check(M: CMLattice) -> bool:
    """2M inside M+ + M- inside M with ranks l + l = 2l."""
    inv = M.involution()
    return (
        doubled_in_decomposition(inv)
        and len(fixed_sublattice(inv)) == len(anti_fixed_sublattice(inv)) == M.l
    )


@dataclass(frozen=True)
class Theorem3Report:
    h1: int
    sum_index: int

    @property
    def sum_equals_whole(self) -> bool:
        return self.sum_index == 1

    @property
    def holds(self) -> bool:
        return self.h1 == 1 and self.sum_index == 1


def theorem3_check(M: CMLattice) -> Theorem3Report:
    if not M.field.half:
        raise ModeMismatch(f"D = {M.field.D} is not 3 mod 4")
    _require_valid(M)
    h1 = h1_order(M.involution())
    span = hnf(ok_span_fixed(M) + anti_fixed_sublattice(M.involution()))
    return Theorem3Report(h1, abs(int(det(span))))


@dataclass
class PipelineReport:
    l: int
    h1: int
    idx_anti: int
    index_LM: int
    t: int
    r: int
    steinitz: int
    label: str
    cross_checked: bool
    checks: dict[str, bool] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    @property
    def principal(self) -> bool:
        return self.label.endswith(" principal")

    def as_dict(self) -> dict:
        return {
            "l": self.l,
            "h1": self.h1,
            "idx_anti": self.idx_anti,
            "index_LM": self.index_LM,
            "t": self.t,
            "r": self.r,
            "steinitz": self.label,
            "cross_checked": self.cross_checked,
            "checks": dict(self.checks),
            "notes": list(self.notes),
        }


def valuation(n: int, p: int) -> tuple[int, int]:
    """(v, n / p^v) for n > 0."""
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v, n


def submodule_steinitz(M: CMLattice, L_basis: Matrix, sub_gens: Matrix, cg: ClassGroup):
    """Index (L : Msub) and the decomposition-based Steinitz class of Msub.

    L_basis must be [P_1, wP_1, ...] so that coordinates in it are
    O_K-coordinates in the free basis P_1, ..., P_l.
    """
    sub = hnf(sub_gens)
    C = coordinates(L_basis, sub)
    if not is_integral(C):
        raise NotSubmodule("M_sub is not contained in L")
    index = abs(int(det(C)))
    res = steinitz_class(from_zlattice(M.field, to_int(C), M.l), cg)
    return index, res


def _columns(A: Matrix) -> Matrix:
    return transpose(A)


def theorem4_pipeline(M: CMLattice, cg: ClassGroup | None = None) -> PipelineReport:
    """St for D = p prime, p = 3 (mod 4): L = O_K M+, Msub = S M, (L : Msub) = p^t."""
    p = M.field.D
    if not is_prime(p):
        raise NotPrime(f"D = {p} is not prime")
    if p % 4 != 3:
        raise ModeMismatch(f"D = {p} is not 3 mod 4")
    _require_valid(M)
    cg = cg or class_group(M.field)
    inv = M.involution()
    h1 = h1_order(inv)
    idx1 = lemma3_check(M).idx1
    L = ok_span_fixed(M)
    index, res = submodule_steinitz(M, L, _columns(M.S_m), cg)
    t, rest = valuation(index, p)
    checks = {
        "index_is_power_of_p": rest == 1,
        "norm_equals_index": res.norm == index,
        "decomposition_principal": res.principal,
    }
    return PipelineReport(
        l=M.l, h1=h1, idx_anti=idx1, index_LM=index, t=t, r=0,
        steinitz=cg.principal, label=cg.label(cg.principal),
        cross_checked=all(checks.values()), checks=checks,
    )


def theorem5_pipeline(M: CMLattice, cg: ClassGroup | None = None) -> PipelineReport:
    """St = [P]^t for D = p prime, p = 1 (mod 4): Msub = 2 S M, (L : Msub) = 2^t p^r."""
    p = M.field.D
    if not is_prime(p):
        raise NotPrime(f"D = {p} is not prime")
    if p % 4 != 1:
        raise ModeMismatch(f"D = {p} is not 1 mod 4")
    _require_valid(M)
    cg = cg or class_group(M.field)
    inv = M.involution()
    h1 = h1_order(inv)
    idx1 = lemma3_check(M).idx1
    l = M.l
    L = ok_span_fixed(M)
    index, res = submodule_steinitz(M, L, _columns(scale(2, M.S_m)), cg)
    t, rest = valuation(index, 2)
    r, rest = valuation(rest, p)
    if rest != 1:
        raise FactorResidue(f"(L : M) = {index} has a prime factor other than 2 and {p}")
    P = prime_above(2, M.field).P
    st = class_pow(P, t, cg)
    checks = {
        "2^t == 2^l * h1": 2**t == 2**l * h1,
        "decomposition_class_agrees": res.class_index == st,
        "norm_equals_index": res.norm == index,
        "index_formula": index * idx1 == 2**l * h1 * p**l,
    }
    return PipelineReport(
        l=l, h1=h1, idx_anti=idx1, index_LM=index, t=t, r=r,
        steinitz=st, label=cg.label(st), cross_checked=all(checks.values()), checks=checks,
        notes=["hypothesis p = 1 (mod 4), where 2 ramifies; p = 3 (mod 4) is covered by theorem4"],
    )


@dataclass(frozen=True)
class DMReport:
    l: int
    h1: int
    idx_anti: int
    quantity: int
    e: int
    label: str

    @property
    def principal(self) -> bool:
        return self.e % 2 == 0


def _dm_field_data():
    from .quadfield import make_field

    F = make_field(10)
    cg = class_group(F)
    return F, cg, prime_above(2, F).P


def dm_from_invariants(l: int, h1: int, idx_anti: int) -> DMReport:
    """Class for D = 10 from the parity of the 2-exponent of 2^l * h1 * idx_anti."""
    if min(l, h1, idx_anti) < 1:
        raise ValueError("invariants must be positive integers")
    q = 2**l * h1 * idx_anti
    e, _ = valuation(q, 2)
    F, cg, P = _dm_field_data()
    return DMReport(l, h1, idx_anti, q, e, cg.label(class_pow(P, e, cg)))


def dm_pipeline(M: CMLattice) -> PipelineReport:
    if M.field.D != 10:
        raise ModeMismatch(f"D = {M.field.D}, expected 10")
    _require_valid(M)
    F, cg, P = _dm_field_data()
    inv = M.involution()
    h1 = h1_order(inv)
    idx1 = lemma3_check(M).idx1
    l = M.l
    rule = dm_from_invariants(l, h1, idx1)
    L = ok_span_fixed(M)
    index, res = submodule_steinitz(M, L, _columns(scale(2, M.S_m)), cg)
    t, rest = valuation(index, 2)
    r, rest = valuation(rest, 5)
    if rest != 1:
        raise FactorResidue(f"(L : M) = {index} has a prime factor other than 2 and 5")
    rule_class = class_pow(P, rule.e, cg)
    checks = {
        "decomposition_class_agrees": res.class_index == rule_class,
        "norm_equals_index": res.norm == index,
        "index_formula": index * idx1 == 2**l * h1 * 10**l,
    }
    notes = []
    if not checks["decomposition_class_agrees"]:
        notes.append(
            f"parity rule gives {rule.label} but the decomposition gives {res.label}; "
            f"(L : M) = 2^{t} 5^{r} and the prime over 5 is also non-principal"
        )
    return PipelineReport(
        l=l, h1=h1, idx_anti=idx1, index_LM=index, t=t, r=r,
        steinitz=res.class_index, label=res.label,
        cross_checked=all(checks.values()), checks=checks, notes=notes,
    )


# ---------------------------------------------------------------------------
# synthetic CM lattices


def _ideal_coords(A: IdealHNF, x: KNum) -> list[int]:
    y, r = divmod(int(x.b), A.c)
    assert r == 0 and x.is_integral()
    xa, r = divmod(int(x.a) - y * A.b, A.a)
    assert r == 0
    return [xa, y]


def sigma_stable_ideals(field: QuadField, max_norm: int = 60) -> list[IdealHNF]:
    """Ideals equal to their conjugate: ramified primes, their products, times small integers."""
    ram = [prime_above(q, field).P for q in range(2, -field.disc + 1)
           if is_prime(q) and field.disc % q == 0]
    out = {unit_ideal(field)}
    for P in ram:
        out |= {A * P for A in out}
    for m in (2, 3):
        out |= {A * principal_ideal(field(m)) for A in out}
    return sorted((A for A in out if A.norm() <= max_norm), key=lambda A: (A.norm(), A.a, A.b, A.c))


def synthetic_cm_lattice(field: QuadField, ideals: Sequence[IdealHNF], twists: Sequence[str]) -> CMLattice:
    """CM lattice of A_1 + ... + A_n with sigma = (twisted) conjugation, S = sqrt(-D).

    twists: 'c' conjugation, 'n' minus conjugation on one component, 's' swap-conjugation
    (x, y) -> (conj y, conj x) on two consecutive components with equal ideals.
    """
    for A in ideals:
        if A.conj() != A:
            raise ValueError(f"{A} is not sigma-stable")
    n = len(ideals)
    size = 2 * n
    sig = [[0] * size for _ in range(size)]
    S = [[0] * size for _ in range(size)]
    rt = field.sqrt_minus_d
    i = 0
    for tw in twists:
        if tw in "cn":
            A = ideals[i]
            sign = 1 if tw == "c" else -1
            for j, b in enumerate(A.basis):
                cs = _ideal_coords(A, b.conj() * sign)
                ss = _ideal_coords(A, b * rt)
                for k in range(2):
                    sig[2 * i + k][2 * i + j] = cs[k]
                    S[2 * i + k][2 * i + j] = ss[k]
            i += 1
        elif tw == "s":
            A, B = ideals[i], ideals[i + 1]
            if A != B:
                raise ValueError("swap twist needs equal ideals")
            for j, b in enumerate(A.basis):
                cs = _ideal_coords(A, b.conj())
                ss = _ideal_coords(A, b * rt)
                for k in range(2):
                    sig[2 * (i + 1) + k][2 * i + j] = cs[k]
                    sig[2 * i + k][2 * (i + 1) + j] = cs[k]
                    S[2 * i + k][2 * i + j] = ss[k]
                    S[2 * (i + 1) + k][2 * (i + 1) + j] = ss[k]
            i += 2
        else:
            raise ValueError(f"unknown twist {tw!r}")
    if i != n:
        raise ValueError("twists do not cover all components")
    return CMLattice.from_matrices(field, sig, S)


@dataclass(frozen=True)
class SyntheticCM:
    lattice: CMLattice
    ideals: tuple[IdealHNF, ...]
    twists: tuple[str, ...]

    def steinitz_ideal(self) -> IdealHNF:
        out = unit_ideal(self.lattice.field)
        for A in self.ideals:
            out = out * A
        return out


def random_synthetic_cm(field: QuadField, rng, max_l: int = 3, conjugate: bool = True) -> SyntheticCM:
    """Random O_K^a + (sigma-stable ideals) with random twists, conjugated by a unimodular matrix."""
    stable = sigma_stable_ideals(field)
    n = rng.randint(1, max_l)
    ideals: list[IdealHNF] = []
    twists: list[str] = []
    while len(ideals) < n:
        if n - len(ideals) >= 2 and rng.random() < 0.3:
            A = rng.choice(stable)
            ideals += [A, A]
            twists.append("s")
        else:
            ideals.append(rng.choice(stable) if rng.random() < 0.5 else unit_ideal(field))
            twists.append(rng.choice("cn"))
    M = synthetic_cm_lattice(field, ideals, twists)
    if conjugate:
        M = M.conjugate(random_unimodular(M.rank, rng))
    return SyntheticCM(M, tuple(ideals), tuple(twists))


def ok_lattice(field: QuadField, A: IdealHNF | None = None) -> CMLattice:
    """The rank-2 lattice of A (default O_K) with sigma = conjugation."""
    return synthetic_cm_lattice(field, [A or unit_ideal(field)], "c")
