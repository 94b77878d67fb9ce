import random

import pytest
from hypothesis import given, strategies as st

from steinitz.intlinalg import NotSublattice, hnf, identity, random_unimodular, scale
from steinitz.involution import (
    InfiniteIndex,
    InvolutionLattice,
    anti_fixed_sublattice,
    block_involution,
    coboundaries,
    decomposition_index,
    doubled_in_decomposition,
    expected_theorem1,
    fixed_sublattice,
    h1_invariants,
    h1_order,
    random_involution_lattice,
    sublattice_index,
    verify_theorem1,
)

I2 = InvolutionLattice.from_matrix(identity(2))
NEG2 = InvolutionLattice.from_matrix(scale(-1, identity(2)))
SWAP = InvolutionLattice.from_matrix([[0, 1], [1, 0]])
NEG1 = InvolutionLattice.from_matrix([[-1]])


def test_rejects_non_involution():
    with pytest.raises(ValueError):
        InvolutionLattice.from_matrix([[1, 1], [0, 1]])


def test_eigenlattices():
    assert hnf(fixed_sublattice(I2)) == identity(2) and anti_fixed_sublattice(I2) == []
    assert fixed_sublattice(NEG2) == [] and hnf(anti_fixed_sublattice(NEG2)) == identity(2)
    assert hnf(fixed_sublattice(SWAP)) == [[1, 1]]
    assert hnf(anti_fixed_sublattice(SWAP)) == [[1, -1]]


def test_h1_examples():
    assert h1_order(I2) == 1
    assert h1_order(NEG1) == 2
    assert h1_order(SWAP) == 1
    assert h1_invariants(NEG2) == [2, 2]


def test_decomposition_index_examples():
    assert decomposition_index(SWAP) == 2
    assert decomposition_index(I2) == 1
    assert decomposition_index(NEG2) == 1


def test_theorem1_examples():
    assert verify_theorem1(SWAP).holds
    r = verify_theorem1(NEG1)
    assert (r.index, r.h1, r.rank_minus, r.holds) == (1, 2, 1, True)
    ok10 = InvolutionLattice.from_matrix([[1, 0], [0, -1]])
    r = verify_theorem1(ok10)
    assert (r.index, r.h1, r.rank_minus) == (1, 2, 1)


def test_sublattice_index_examples():
    assert sublattice_index(identity(2), scale(2, identity(2))) == 4
    assert sublattice_index([[0, 1]], [[0, 2]]) == 2
    assert sublattice_index([[1, 1]], [[3, 3]]) == 3
    with pytest.raises(NotSublattice):
        sublattice_index([[2, 2]], [[1, 1]])


def test_infinite_index_is_unreachable_for_involutions():
    # ranks of M+ and M- always add up for sigma^2 = 1; the guard is still typed
    assert issubclass(InfiniteIndex, ValueError)


@given(st.lists(st.sampled_from("+-s"), min_size=1, max_size=5), st.integers(0, 10**6))
def test_theorem1_on_conjugated_blocks(blocks, seed):
    base = InvolutionLattice.from_matrix(block_involution(blocks))
    M = base.conjugate(random_unimodular(base.m, random.Random(seed)))
    r = verify_theorem1(M)
    assert r.holds
    assert (r.index, r.h1, r.rank_minus) == expected_theorem1(blocks)
    assert doubled_in_decomposition(M)
    assert len(fixed_sublattice(M)) + len(anti_fixed_sublattice(M)) == M.m


@given(st.integers(0, 10**6))
def test_coboundaries_lie_in_cocycles(seed):
    M, _ = random_involution_lattice(random.Random(seed), 6)
    Z1 = anti_fixed_sublattice(M)
    B1 = coboundaries(M)
    if Z1:
        assert len(B1) == len(Z1)
        sublattice_index(Z1, B1)  # raises if B1 is not inside Z1


def test_random_generator_is_seeded():
    a = random_involution_lattice(random.Random(7))
    b = random_involution_lattice(random.Random(7))
    assert a == b
