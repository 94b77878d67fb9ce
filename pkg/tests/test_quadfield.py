from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

from steinitz.quadfield import BasisMode, NotSquarefree, QuadField, conj, degree_check, is_squarefree, make_field, norm

Ds = st.sampled_from([1, 2, 3, 5, 7, 10, 11, 13, 23, 163])
rats = st.builds(Fraction, st.integers(-50, 50), st.integers(1, 12))


@pytest.mark.parametrize("D, disc, mode", [(10, -40, BasisMode.PLAIN), (3, -3, BasisMode.HALF_INTEGRAL), (1, -4, BasisMode.PLAIN),
                                           (7, -7, BasisMode.HALF_INTEGRAL), (5, -20, BasisMode.PLAIN)])
def test_make_field(D, disc, mode):
    F = make_field(D)
    assert F.disc == disc and F.basis_mode is mode


@pytest.mark.parametrize("D", [4, 12, 18, 50])
def test_rejects_non_squarefree(D):
    assert not is_squarefree(D)
    with pytest.raises(NotSquarefree):
        make_field(D)


def test_rejects_nonpositive():
    with pytest.raises(ValueError):
        QuadField(0)


def test_norm_examples():
    F10, F3 = make_field(10), make_field(3)
    assert norm(F10(0, 1)) == 10
    assert norm(F3(0, 1)) == 1
    assert norm(F10(3, 1)) == 19
    assert conj(F3.w) == F3(1, -1)


def test_sqrt_minus_d_squares_to_minus_d():
    for D in (1, 2, 3, 7, 10):
        F = make_field(D)
        assert F.sqrt_minus_d * F.sqrt_minus_d == F(-D)


@given(Ds, rats, rats)
def test_conj_is_involution_and_norm_multiplicative(D, a, b):
    F = QuadField(D)
    x = F(a, b)
    assert x.conj().conj() == x
    assert x * x.conj() == F(x.norm())
    assert x.trace() == (x + x.conj()).a


@given(Ds, rats, rats)
def test_inverse(D, a, b):
    F = QuadField(D)
    x = F(a, b)
    assume(x)
    assert x * x.inv() == F.one
    assert x / x == F.one


def test_inverse_of_zero():
    with pytest.raises(ZeroDivisionError):
        make_field(5).zero.inv()


@given(Ds, rats, rats, rats, rats)
def test_ring_laws(D, a, b, c, d):
    F = QuadField(D)
    x, y = F(a, b), F(c, d)
    assert x * y == y * x
    assert (x + y) * x == x * x + y * x
    assert (x * y).norm() == x.norm() * y.norm()


def test_integrality():
    F = make_field(3)
    assert F(Fraction(1, 2), 0).is_integral() is False
    assert F.w.is_integral()


@pytest.mark.parametrize("args", [(5, 10), (1, 3), (5, 5), (13, 7)])
def test_degree_check(args):
    assert degree_check(*args)
