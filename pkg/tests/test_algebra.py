import hypothesis.strategies as st
import pytest
from hypothesis import given

from evolia.algebra import build_algebra, build_algebra_from_rows, direct_sum
from evolia.analysis import NilAlgebra, Nilpotent, is_nil_algebra, is_nilpotent
from evolia.errors import (
    AlgebraMismatchError,
    DimensionError,
    NotAnIdealError,
    PowerCapExceeded,
    PowerError,
)
from evolia.infinite import window
from evolia.rings import RingDescriptor, make_ring


def elements_of(algebra):
    ring = algebra.ring
    return st.lists(
        st.integers(0, ring.modulus - 1), min_size=algebra.dimension, max_size=algebra.dimension
    ).map(algebra.element)


def test_build_algebra(z36_nilpotent, z36_cyclic, z36):
    assert build_algebra(z36, [[6, 2], [3, 12]]) == z36_nilpotent
    assert build_algebra(z36, [[6, 2], [2, 12]]) == z36_cyclic
    assert z36_nilpotent.coefficient(2, 1) == 2
    assert z36_nilpotent.coefficient(1, 2) == 3
    zero = build_algebra(make_ring(RingDescriptor.integers()), [[0]])
    assert zero.dimension == 1 and zero.matrix.is_zero()


@pytest.mark.parametrize('columns', [[[1, 2], [3]], [[1, 2, 3], [1, 2, 3]], []])
def test_build_algebra_rejects_bad_shapes(z36, columns):
    with pytest.raises(DimensionError):
        build_algebra(z36, columns)


def test_multiply(z36_nilpotent, z36_cyclic):
    x1, x2 = z36_nilpotent.basis(1), z36_nilpotent.basis(2)
    assert (x1 * x2).is_zero
    assert x1 * x1 == z36_nilpotent.element([6, 2])
    assert str(x1 * x1) == '6*x1+2*x2'
    a = z36_cyclic.basis(1) + z36_cyclic.basis(2)
    assert a * a == z36_cyclic.element([8, 14])
    assert str(a) == 'x1+x2'


def test_multiply_checks_membership(z36_nilpotent, z36_cyclic, z4):
    other = build_algebra_from_rows(z4, [[1, 0], [0, 1]])
    with pytest.raises(AlgebraMismatchError):
        z36_nilpotent.multiply(z36_nilpotent.basis(1), other.basis(1))


def test_c_alpha(z36_cyclic):
    ones = z36_cyclic.element([1, 1])
    assert z36_cyclic.c_alpha(ones).rows == ((6, 2), (2, 12))
    assert z36_cyclic.c_alpha(ones) == z36_cyclic.matrix
    assert z36_cyclic.c_alpha(z36_cyclic.zero()).is_zero()


def test_principal_power(z4_rule):
    algebra = window(z4_rule, 3)
    x1 = algebra.basis(1)
    assert algebra.principal_power(x1, 1) == x1
    assert algebra.principal_power(x1, 3) == algebra.element([0, 2, 0])
    assert algebra.principal_power(x1, 4).is_zero
    with pytest.raises(PowerError):
        algebra.principal_power(x1, 0)


def test_plenary_power(z4_rule):
    algebra = window(z4_rule, 8)
    x1 = algebra.basis(1)
    assert algebra.plenary_power(x1, 2) == algebra.element([0, 2, 1, 0, 0, 0, 0, 0])
    for n in range(1, 8):
        expected = [0] * 8
        expected[n - 1], expected[n] = 2, 1
        assert algebra.plenary_power(x1, n) == algebra.element(expected)
    assert algebra.plenary_power(algebra.zero(), 5).is_zero
    with pytest.raises(PowerError):
        algebra.plenary_power(x1, 0)
    with pytest.raises(PowerCapExceeded) as info:
        algebra.plenary_power(x1, 10, cap=4)
    assert info.value.partial_size == 2


def test_power_associativity_fails(z4_rule):
    algebra = window(z4_rule, 4)
    x1 = algebra.basis(1)
    square = x1 * x1
    assert square * square == algebra.element([0, 2, 1, 0])
    assert algebra.principal_power(x1, 4).is_zero


def test_left_mult_matrix():
    z2 = make_ring(RingDescriptor.mod(2))
    algebra = build_algebra_from_rows(z2, [[0, 1], [0, 0]])
    assert algebra.left_mult_matrix(algebra.basis(2)).rows == ((0, 1), (0, 0))
    assert algebra.left_mult_matrix(algebra.zero()).is_zero()
    assert algebra.generator_matrix(2) == algebra.left_mult_matrix(algebra.basis(2))


@given(data=st.data())
def test_commutative_and_bilinear(z36_cyclic, data):
    a = data.draw(elements_of(z36_cyclic))
    b = data.draw(elements_of(z36_cyclic))
    c = data.draw(elements_of(z36_cyclic))
    assert a * b == b * a
    assert (a + b) * c == a * c + b * c
    assert z36_cyclic.left_mult_matrix(a).matvec(b.coeffs) == (a * b).coeffs


@given(data=st.data())
def test_left_mult_composition(z36_nilpotent, data):
    a = data.draw(elements_of(z36_nilpotent))
    b = data.draw(elements_of(z36_nilpotent))
    x = data.draw(elements_of(z36_nilpotent))
    composed = z36_nilpotent.left_mult_matrix(a).matmul(z36_nilpotent.left_mult_matrix(b))
    assert composed.matvec(x.coeffs) == (a * (b * x)).coeffs


@given(data=st.data(), n=st.integers(1, 12))
def test_principal_power_matches_repeated_products(z36_cyclic, data, n):
    a = data.draw(elements_of(z36_cyclic))
    expected = a
    for _ in range(n - 1):
        expected = expected * a
    assert z36_cyclic.principal_power(a, n) == expected


@given(data=st.data(), k=st.integers(3, 10))
def test_generator_powers_scale_the_square(z36_cyclic, data, k):
    i = data.draw(st.sampled_from([1, 2]))
    ring = z36_cyclic.ring
    x = z36_cyclic.basis(i)
    c = z36_cyclic.coefficient(i, i)
    assert z36_cyclic.principal_power(x, k) == (x * x).scale(ring.power(c, k - 2))


def test_quotient_by_basis_ideal(z36_nilpotent):
    assert z36_nilpotent.quotient_by_basis_ideal([]) == z36_nilpotent
    integers = make_ring(RingDescriptor.integers())
    algebra = build_algebra_from_rows(integers, [[0, 1], [0, 0]])
    quotient = algebra.quotient_by_basis_ideal({1})
    assert quotient.dimension == 1 and quotient.matrix.is_zero()
    assert quotient.labels[1] == 'x2'
    empty = algebra.quotient_by_basis_ideal({1, 2})
    assert empty.dimension == 0
    assert is_nilpotent(empty) == Nilpotent(1)


def test_quotient_rejects_non_ideal():
    integers = make_ring(RingDescriptor.integers())
    algebra = build_algebra_from_rows(integers, [[0, 1], [0, 0]])
    with pytest.raises(NotAnIdealError) as info:
        algebra.quotient_by_basis_ideal({2})
    assert info.value.generator == 2


def test_direct_sum(z4, z36, z36_nilpotent):
    a = build_algebra_from_rows(z4, [[0, 1], [0, 0]])
    b = build_algebra_from_rows(z4, [[0, 1, 0], [0, 0, 1], [0, 0, 0]])
    total = direct_sum(a, b)
    assert total.dimension == 5
    assert total.coefficient(1, 2) == 1 and total.coefficient(3, 4) == 1
    assert total.coefficient(1, 4) == 0
    assert (total.basis(2) * total.basis(4)).is_zero
    assert is_nilpotent(total).exponent == max(is_nilpotent(a).exponent, is_nilpotent(b).exponent)
    assert isinstance(is_nil_algebra(total), NilAlgebra)
    with pytest.raises(AlgebraMismatchError):
        direct_sum(a, z36_nilpotent)


def test_labels(z36):
    algebra = build_algebra_from_rows(z36, [[6, 3], [2, 12]], labels=['a', 'b'])
    assert str(algebra.basis(1) * algebra.basis(1)) == '6*a+2*b'
    assert algebra.decode_element({'b': 1}) == algebra.basis(2)
    assert algebra.decode_element({'1': 5}) == algebra.element([5, 0])
    with pytest.raises(DimensionError):
        algebra.decode_element({'c': 1})


def test_digest_is_stable(z36_nilpotent, z36):
    assert z36_nilpotent.digest == build_algebra_from_rows(z36, [[6, 3], [2, 12]]).digest
    assert z36_nilpotent.digest != build_algebra_from_rows(z36, [[6, 2], [3, 12]]).digest
