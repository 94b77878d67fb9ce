import random

import pytest
from hypothesis import given, strategies as st

from steinitz.ideals import (
    IdealHNF,
    QForm,
    ZeroIdeal,
    class_group,
    class_pow,
    compose_forms,
    form_to_ideal,
    ideal_class_of,
    ideal_from_generators,
    ideal_to_form,
    is_principal,
    kronecker,
    prime_above,
    principal_form,
    principal_ideal,
    reduced_forms,
    unit_ideal,
)
from steinitz.modules import random_algint, random_ideal
from steinitz.quadfield import QuadField

# class numbers of imaginary quadratic fields, from the standard tables
KNOWN_H = {1: 1, 2: 1, 3: 1, 5: 2, 6: 2, 7: 1, 10: 2, 11: 1, 13: 2, 14: 4, 15: 2, 17: 4,
           21: 4, 23: 3, 26: 6, 30: 4, 31: 3, 47: 5, 71: 7, 163: 1}


@pytest.mark.parametrize("D, h", sorted(KNOWN_H.items()))
def test_class_numbers(D, h):
    assert class_group(QuadField(D)).h == h


def test_reduced_forms_disc_minus_40():
    assert [str(f) for f in reduced_forms(-40)] == ["(1,0,10)", "(2,0,5)"]
    assert [str(f) for f in reduced_forms(-20)] == ["(1,0,5)", "(2,2,3)"]
    assert reduced_forms(-3) == [QForm(1, 1, 1)]


def test_ideal_from_generators_examples():
    F = QuadField(10)
    P = ideal_from_generators([F(2), F(0, 1)], F)
    assert P.matrix == [[2, 0], [0, 1]] and P.norm() == 2
    assert ideal_from_generators([F(1)], F).matrix == [[1, 0], [0, 1]]
    assert principal_ideal(F(2)).matrix == [[2, 0], [0, 2]]
    with pytest.raises(ZeroIdeal):
        ideal_from_generators([F.zero], F)


def test_hnf_validation():
    F = QuadField(10)
    with pytest.raises(ValueError):
        IdealHNF(F, 2, 2, 1)
    with pytest.raises(ValueError):
        IdealHNF(F, 3, 1, 1)  # not closed under w


@pytest.mark.parametrize("D, kind, matrix", [(10, "ramified", [[2, 0], [0, 1]]), (5, "ramified", [[2, 1], [0, 1]]),
                                             (3, "inert", [[2, 0], [0, 2]]), (23, "split", None), (7, "split", None)])
def test_prime_above_two(D, kind, matrix):
    F = QuadField(D)
    dec = prime_above(2, F)
    assert dec.kind == kind
    if matrix:
        assert dec.P.matrix == matrix
    if kind == "ramified":
        assert dec.P * dec.P == principal_ideal(F(2))
    if kind == "split":
        P, Q = dec.ideals
        assert P != Q and P * Q == principal_ideal(F(2))


@pytest.mark.parametrize("D", [5, 10])
def test_ramified_two_is_non_principal(D):
    F = QuadField(D)
    cg = class_group(F)
    P = prime_above(2, F).P
    assert not is_principal(P)
    assert ideal_class_of(P, cg) != cg.principal
    assert class_pow(P, 2, cg) == cg.principal
    assert class_pow(P, 3, cg) == ideal_class_of(P, cg)
    assert class_pow(P, 0, cg) == cg.principal


def test_labels():
    F = QuadField(10)
    cg = class_group(F)
    assert cg.label(ideal_class_of(prime_above(2, F).P, cg)) == "(2,0,5) non-principal"
    assert cg.label(cg.principal) == "(1,0,10) principal"


@pytest.mark.parametrize("q", [2, 3, 5, 7, 11, 13, 17])
@pytest.mark.parametrize("D", [1, 2, 3, 5, 10, 23])
def test_prime_norms(D, q):
    F = QuadField(D)
    dec = prime_above(q, F)
    expect = {"inert": q * q, "split": q, "ramified": q}[dec.kind]
    assert dec.P.norm() == expect
    assert dec.kind == {-1: "inert", 1: "split", 0: "ramified"}[kronecker(F.disc, q)]


@given(st.sampled_from([2, 5, 10, 14, 23, 47]), st.integers(0, 10**6))
def test_form_class_map_is_a_homomorphism(D, seed):
    F = QuadField(D)
    rng = random.Random(seed)
    A, B = random_ideal(F, rng), random_ideal(F, rng)
    cg = class_group(F)
    lhs = ideal_to_form(A * B)
    rhs = compose_forms(ideal_to_form(A), ideal_to_form(B))
    assert lhs == rhs
    assert cg.index_of(lhs) == ideal_class_of(A * B, cg)


@given(st.sampled_from([1, 3, 5, 10, 23]), st.integers(0, 10**6))
def test_principal_ideals_are_principal(D, seed):
    F = QuadField(D)
    x = random_algint(F, random.Random(seed))
    if x:
        A = principal_ideal(x)
        assert is_principal(A)
        assert A.norm() == x.norm()
        assert A.conj() == principal_ideal(x.conj())


@given(st.sampled_from([2, 5, 10, 23]), st.integers(0, 10**6))
def test_ideal_laws(D, seed):
    F = QuadField(D)
    rng = random.Random(seed)
    A, B = random_ideal(F, rng), random_ideal(F, rng)
    assert A * unit_ideal(F) == A
    assert A * B == B * A
    assert (A * B).norm() == A.norm() * B.norm()
    assert A * A.conj() == principal_ideal(F(A.norm()))
    for g in A.basis:
        assert A.contains(g * F.w)


@pytest.mark.parametrize("D", [5, 10, 14, 23, 47])
def test_form_ideal_roundtrip(D):
    F = QuadField(D)
    cg = class_group(F)
    for i, f in enumerate(cg.reps):
        A = form_to_ideal(f, F)
        assert A.norm() == f.a
        assert ideal_class_of(A, cg) == i


def test_composition_identity_and_inverse():
    for f in reduced_forms(-56):
        e = principal_form(-56)
        assert compose_forms(f, e) == f
        assert compose_forms(f, QForm(f.a, -f.b, f.c)) == e
