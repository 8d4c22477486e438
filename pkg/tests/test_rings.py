from fractions import Fraction

import hypothesis.strategies as st
import numpy as np
import pytest
from hypothesis import given

from evolia import rings
from evolia.errors import EnumerationError, RingError
from evolia.rings import Index, NeverNilpotent, RingDescriptor, make_ring

DESCRIPTORS = [
    RingDescriptor.integers(),
    RingDescriptor.rationals(),
    RingDescriptor.mod(36),
    RingDescriptor.mod(7),
    RingDescriptor.polyquot(RingDescriptor.rationals(), 2),
    RingDescriptor.polyquot(RingDescriptor.mod(4), 3),
]


def values(ring):
    kind = ring.descriptor.kind
    if kind == 'int':
        return st.integers(-(10**12), 10**12)
    if kind == 'rat':
        return st.fractions(max_denominator=10**6)
    if kind == 'mod':
        return st.integers(0, ring.modulus - 1)
    return st.tuples(*[values(ring.base)] * ring.exponent)


def sample(ring, rng):
    kind = ring.descriptor.kind
    if kind == 'int':
        return int(rng.integers(-1000, 1000))
    if kind == 'rat':
        return Fraction(int(rng.integers(-50, 50)), int(rng.integers(1, 50)))
    if kind == 'mod':
        return int(rng.integers(0, ring.modulus))
    return tuple(sample(ring.base, rng) for _ in range(ring.exponent))


def test_make_ring_is_idempotent():
    assert make_ring(RingDescriptor.mod(36)) is make_ring(RingDescriptor.mod(36))
    assert make_ring(RingDescriptor.mod(36)).cardinality == 36


@pytest.mark.parametrize(
    'payload, field',
    [
        ({'kind': 'mod', 'modulus': 1}, 'modulus'),
        ({'kind': 'polyquot', 'base': {'kind': 'rat'}, 'exponent': 0}, 'exponent'),
        ({'kind': 'gf'}, 'kind'),
    ],
)
def test_invalid_descriptor(payload, field):
    with pytest.raises(RingError, match=field):
        RingDescriptor.from_json(payload)


def test_descriptor_nesting_is_bounded():
    descriptor = RingDescriptor.mod(2)
    with pytest.raises(RingError, match='nesting'):
        for _ in range(rings.MAX_NESTING + 1):
            descriptor = RingDescriptor.polyquot(descriptor, 2)


@pytest.mark.parametrize('descriptor', DESCRIPTORS, ids=str)
def test_descriptor_json(descriptor):
    assert RingDescriptor.from_json(descriptor.to_json()) == descriptor


def test_basic_arithmetic():
    z36 = make_ring(RingDescriptor.mod(36))
    assert rings.mul(z36, 6, 6) == 0
    z4 = make_ring(RingDescriptor.mod(4))
    assert rings.mul(z4, 2, 3) == 2
    tq = make_ring(RingDescriptor.polyquot(RingDescriptor.rationals(), 2))
    assert rings.is_zero(tq, rings.mul(tq, tq.t, tq.t))
    assert rings.neg(z36, 6) == 30
    assert rings.add(z36, 30, 7) == 1


def test_mixed_or_non_canonical_operands():
    z36 = make_ring(RingDescriptor.mod(36))
    tq = make_ring(RingDescriptor.polyquot(RingDescriptor.rationals(), 2))
    with pytest.raises(RingError):
        rings.add(z36, 40, 1)
    with pytest.raises(RingError):
        rings.mul(z36, tq.t, 1)


@pytest.mark.parametrize('descriptor', DESCRIPTORS, ids=str)
def test_ring_axioms_sampled(descriptor):
    ring = make_ring(descriptor)
    rng = np.random.default_rng(7)
    for _ in range(10**4):
        a, b, c = sample(ring, rng), sample(ring, rng), sample(ring, rng)
        a, b, c = ring.canon(a), ring.canon(b), ring.canon(c)
        assert ring.add(a, b) == ring.add(b, a)
        assert ring.mul(a, b) == ring.mul(b, a)
        assert ring.mul(ring.mul(a, b), c) == ring.mul(a, ring.mul(b, c))
        assert ring.add(ring.add(a, b), c) == ring.add(a, ring.add(b, c))
        assert ring.mul(a, ring.add(b, c)) == ring.add(ring.mul(a, b), ring.mul(a, c))
        assert ring.mul(a, ring.one) == a
        assert ring.add(a, ring.zero) == a
        assert ring.is_zero(ring.add(a, ring.neg(a)))


@pytest.mark.parametrize('descriptor', DESCRIPTORS, ids=str)
@given(data=st.data())
def test_canon_is_idempotent(descriptor, data):
    ring = make_ring(descriptor)
    v = ring.canon(data.draw(values(ring)))
    assert ring.canon(v) == v
    assert ring.contains(v)
    assert ring.decode(ring.encode(v)) == v


@pytest.mark.parametrize('descriptor', DESCRIPTORS, ids=str)
@given(data=st.data())
def test_nilpotency_index_is_exact(descriptor, data):
    ring = make_ring(descriptor)
    a = ring.canon(data.draw(values(ring)))
    index = ring.nilpotency_index(a, 64)
    if isinstance(index, Index):
        assert ring.is_zero(ring.power(a, index.k))
        if index.k > 1:
            assert not ring.is_zero(ring.power(a, index.k - 1))
        if ring.is_domain:
            assert index.k == 1 and ring.is_zero(a)


@pytest.mark.parametrize(
    'descriptor, a, expected',
    [
        (RingDescriptor.mod(36), 6, Index(2)),
        (RingDescriptor.mod(36), 12, Index(2)),
        (RingDescriptor.mod(36), 2, NeverNilpotent()),
        (RingDescriptor.mod(36), 0, Index(1)),
        (RingDescriptor.integers(), 5, NeverNilpotent()),
        (RingDescriptor.polyquot(RingDescriptor.rationals(), 2), (0, 1), Index(2)),
        (RingDescriptor.polyquot(RingDescriptor.rationals(), 2), (1, 1), NeverNilpotent()),
        (RingDescriptor.polyquot(RingDescriptor.mod(4), 3), (2, 1, 0), Index(4)),
    ],
)
def test_nilpotency_index(descriptor, a, expected):
    ring = make_ring(descriptor)
    assert rings.nilpotency_index(ring, ring.canon(a), 100) == expected


def test_nilpotency_index_bound():
    with pytest.raises(RingError):
        make_ring(RingDescriptor.mod(4)).nilpotency_index(2, 0)


def test_enumerate_elements():
    assert rings.enumerate_elements(make_ring(RingDescriptor.mod(4))) == [0, 1, 2, 3]
    ring = make_ring(RingDescriptor.polyquot(RingDescriptor.mod(2), 2))
    assert rings.enumerate_elements(ring) == [(0, 0), (1, 0), (0, 1), (1, 1)]
    assert [ring.format(v) for v in ring.elements()] == ['0', '1', 't', '1+t']
    with pytest.raises(EnumerationError, match='enumeration requires finite ring'):
        rings.enumerate_elements(make_ring(RingDescriptor.integers()))


@pytest.mark.parametrize(
    'descriptor',
    [RingDescriptor.mod(12), RingDescriptor.polyquot(RingDescriptor.mod(3), 2)],
    ids=str,
)
def test_enumeration_is_distinct(descriptor):
    ring = make_ring(descriptor)
    elements = list(ring.elements())
    assert len(set(elements)) == len(elements) == ring.cardinality


@pytest.mark.parametrize(
    'descriptor, field, domain',
    [
        (RingDescriptor.mod(36), False, False),
        (RingDescriptor.integers(), False, True),
        (RingDescriptor.mod(2), True, True),
        (RingDescriptor.rationals(), True, True),
        (RingDescriptor.polyquot(RingDescriptor.rationals(), 2), False, False),
        (RingDescriptor.polyquot(RingDescriptor.mod(5), 1), True, True),
    ],
    ids=str,
)
def test_field_and_domain(descriptor, field, domain):
    ring = make_ring(descriptor)
    assert rings.is_field(ring) is field
    assert rings.is_domain(ring) is domain


def test_inverse():
    z7 = make_ring(RingDescriptor.mod(7))
    assert z7.mul(3, z7.inverse(3)) == 1
    with pytest.raises(RingError):
        make_ring(RingDescriptor.mod(36)).inverse(6)
    tq = make_ring(RingDescriptor.polyquot(RingDescriptor.rationals(), 2))
    a = (Fraction(2), Fraction(3))
    assert tq.mul(a, tq.inverse(a)) == tq.one
