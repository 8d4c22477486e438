import itertools

import pytest

from evolia.algebra import Element, build_algebra_from_rows
from evolia.analysis import (
    DiagFail,
    DiagPass,
    Nil,
    NilAlgebra,
    NotNil,
    NotNilAlgebra,
    Skipped,
    Unknown,
    diag_nil_precheck,
    is_nil_algebra,
    is_nil_element,
    naive_nil_element,
    vector_prepass,
)
from evolia.errors import BoundRequiredError, EnumerationError
from evolia.rings import RingDescriptor, make_ring


def naive_nil_algebra(algebra):
    elements = list(algebra.ring.elements())
    max_exponent, checked = 1, 0
    for coeffs in itertools.product(elements, repeat=algebra.dimension):
        alpha = Element(algebra, coeffs)
        verdict = naive_nil_element(alpha)
        checked += 1
        if isinstance(verdict, NotNil):
            return NotNilAlgebra(alpha, verdict)
        max_exponent = max(max_exponent, verdict.exponent)
    return NilAlgebra(max_exponent, checked)


def test_diag_precheck(z36_nilpotent, z36_cyclic, z36):
    assert diag_nil_precheck(z36_nilpotent) == DiagPass()
    assert diag_nil_precheck(z36_cyclic) == DiagPass()
    algebra = build_algebra_from_rows(z36, [[6, 0], [0, 2]])
    assert diag_nil_precheck(algebra) == DiagFail(2, 2)
    assert isinstance(is_nil_algebra(algebra), NotNilAlgebra)


def test_nil_element(z36_nilpotent, z36_cyclic):
    assert is_nil_element(z36_nilpotent.basis(1)) == Nil(4)
    assert is_nil_element(z36_nilpotent.zero()) == Nil(1)
    a = z36_cyclic.basis(1) + z36_cyclic.basis(2)
    verdict = is_nil_element(a)
    assert verdict == NotNil(2, 8)
    assert verdict.period == 6
    assert naive_nil_element(a) == verdict


def test_nil_element_over_infinite_rings():
    integers = make_ring(RingDescriptor.integers())
    algebra = build_algebra_from_rows(integers, [[0, 1], [0, 0]])
    with pytest.raises(BoundRequiredError):
        is_nil_element(algebra.basis(2))
    assert is_nil_element(algebra.basis(2), bound=10) == Nil(3)
    idempotent = build_algebra_from_rows(integers, [[1]])
    assert is_nil_element(idempotent.basis(1), bound=10) == NotNil(0, 1)
    doubling = build_algebra_from_rows(integers, [[2]])
    assert is_nil_element(doubling.basis(1), bound=10) == Unknown(10)


def test_nil_algebra(z36_nilpotent, z36_cyclic):
    verdict = is_nil_algebra(z36_nilpotent)
    assert isinstance(verdict, NilAlgebra)
    assert verdict.checked == 36**2
    assert verdict.max_exponent <= 5
    assert verdict == naive_nil_algebra(z36_nilpotent)

    verdict = is_nil_algebra(z36_cyclic)
    assert verdict == NotNilAlgebra(z36_cyclic.element([1, 1]), NotNil(2, 8))
    assert str(verdict.witness) == 'x1+x2'


def test_nil_algebra_cap(z36_nilpotent):
    verdict = is_nil_algebra(z36_nilpotent, cap=100)
    assert isinstance(verdict, Skipped)
    assert verdict.size == 1296


def test_nil_algebra_requires_finite_ring():
    algebra = build_algebra_from_rows(make_ring(RingDescriptor.integers()), [[0]])
    with pytest.raises(EnumerationError, match='enumeration requires finite ring'):
        is_nil_algebra(algebra)


@pytest.mark.parametrize('workers', [2, 3, 7])
def test_parallel_scan_matches_serial(z36_nilpotent, z36_cyclic, workers):
    for algebra in (z36_nilpotent, z36_cyclic):
        serial = is_nil_algebra(algebra, prepass_steps=0)
        assert is_nil_algebra(algebra, parallel=True, workers=workers) == serial
        assert is_nil_algebra(algebra, parallel=True, workers=workers, prepass_steps=0) == serial


def test_vector_prepass_agrees(z36_cyclic):
    resolved = vector_prepass(z36_cyclic, 16)
    elements = list(z36_cyclic.ring.elements())
    for position, coeffs in enumerate(itertools.product(elements, repeat=2)):
        verdict = is_nil_element(Element(z36_cyclic, coeffs))
        if resolved[position]:
            assert verdict == Nil(int(resolved[position]))
        else:
            assert isinstance(verdict, NotNil) or verdict.exponent > 17


def test_polyquot_nil_scan():
    ring = make_ring(RingDescriptor.polyquot(RingDescriptor.mod(2), 2))
    t = ring.t
    algebra = build_algebra_from_rows(ring, [[t, ring.one], [ring.zero, t]])
    verdict = is_nil_algebra(algebra)
    assert verdict == naive_nil_algebra(algebra)
    assert isinstance(verdict, NilAlgebra) and verdict.checked == 16


def test_every_z4_algebra_of_dimension_two(z4, all_algebras):
    for algebra in all_algebras(z4, 2):
        assert is_nil_algebra(algebra) == naive_nil_algebra(algebra)
