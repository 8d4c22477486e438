"""Exact arithmetic over the supported commutative coefficient rings.

Ring values are plain, hashable Python objects in canonical form:

- ``Integers``: ``int``
- ``Rationals``: ``fractions.Fraction``
- ``ModN``: ``int`` residue in ``[0, modulus)``
- ``PolyQuot``: ``tuple`` of ``exponent`` base values, constant term first

Arithmetic lives on the ring handle (``ring.add(a, b)``), the module-level
functions of the same name validate their operands first.
"""
import abc
import functools
import itertools
import numbers
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterator, Optional, Sequence, Union

from .errors import EnumerationError, RingError

MAX_NESTING = 4

KINDS = ('int', 'rat', 'mod', 'polyquot')


@dataclass(frozen=True)
class RingDescriptor:
    kind: str
    modulus: Optional[int] = None
    base: Optional['RingDescriptor'] = None
    exponent: Optional[int] = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise RingError(f'unknown ring kind `{self.kind}`')
        if self.kind == 'mod':
            if type(self.modulus) is not int or self.modulus < 2:
                raise RingError(f'modulus must be an integer >= 2, got {self.modulus!r}')
        if self.kind == 'polyquot':
            if not isinstance(self.base, RingDescriptor):
                raise RingError(f'base must be a ring descriptor, got {self.base!r}')
            if type(self.exponent) is not int or self.exponent < 1:
                raise RingError(f'exponent must be an integer >= 1, got {self.exponent!r}')
            if self.depth > MAX_NESTING:
                raise RingError(f'base nesting depth {self.depth} exceeds {MAX_NESTING}')

    @classmethod
    def integers(cls) -> 'RingDescriptor':
        return cls('int')

    @classmethod
    def rationals(cls) -> 'RingDescriptor':
        return cls('rat')

    @classmethod
    def mod(cls, modulus: int) -> 'RingDescriptor':
        return cls('mod', modulus=modulus)

    @classmethod
    def polyquot(cls, base: 'RingDescriptor', exponent: int) -> 'RingDescriptor':
        return cls('polyquot', base=base, exponent=exponent)

    @property
    def depth(self) -> int:
        if self.kind != 'polyquot':
            return 0
        return 1 + self.base.depth

    def to_json(self) -> dict:
        if self.kind == 'mod':
            return {'kind': 'mod', 'modulus': self.modulus}
        if self.kind == 'polyquot':
            return {
                'kind': 'polyquot',
                'base': self.base.to_json(),
                'exponent': self.exponent,
            }
        return {'kind': self.kind}

    @classmethod
    def from_json(cls, obj: Any) -> 'RingDescriptor':
        if not isinstance(obj, dict) or 'kind' not in obj:
            raise RingError(f'ring descriptor must be an object with a `kind`, got {obj!r}')
        kind = obj['kind']
        if kind == 'mod':
            return cls.mod(obj.get('modulus'))
        if kind == 'polyquot':
            if 'base' not in obj:
                raise RingError('polyquot descriptor is missing `base`')
            return cls.polyquot(cls.from_json(obj['base']), obj.get('exponent'))
        return cls(kind)

    def __str__(self):
        if self.kind == 'int':
            return 'Z'
        if self.kind == 'rat':
            return 'Q'
        if self.kind == 'mod':
            return f'Z/{self.modulus}'
        return f'({self.base})[t]/(t^{self.exponent})'


@dataclass(frozen=True)
class Index:
    """``a^k = 0`` and ``a^(k-1) != 0``."""

    k: int


@dataclass(frozen=True)
class NotNilpotentWithin:
    bound: int


@dataclass(frozen=True)
class NeverNilpotent:
    pass


NilpotencyIndex = Union[Index, NotNilpotentWithin, NeverNilpotent]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class Ring(abc.ABC):
    def __init__(self, descriptor: RingDescriptor):
        self.descriptor = descriptor

    def __repr__(self):
        return f'Ring({self.descriptor})'

    @property
    @abc.abstractmethod
    def zero(self):
        ...

    @property
    @abc.abstractmethod
    def one(self):
        ...

    @abc.abstractmethod
    def add(self, a, b):
        ...

    @abc.abstractmethod
    def mul(self, a, b):
        ...

    @abc.abstractmethod
    def neg(self, a):
        ...

    @abc.abstractmethod
    def contains(self, a) -> bool:
        """True iff ``a`` is a canonical value of this ring."""

    @abc.abstractmethod
    def canon(self, a):
        """Bring a loosely typed value (e.g. an unreduced int) to canonical form."""

    @abc.abstractmethod
    def inverse(self, a):
        ...

    @abc.abstractmethod
    def encode(self, a):
        ...

    @abc.abstractmethod
    def decode(self, obj):
        ...

    @abc.abstractmethod
    def format(self, a) -> str:
        ...

    @property
    def is_finite(self) -> bool:
        return self.cardinality is not None

    @property
    def cardinality(self) -> Optional[int]:
        return None

    @property
    @abc.abstractmethod
    def is_field(self) -> bool:
        ...

    @property
    @abc.abstractmethod
    def is_domain(self) -> bool:
        ...

    def is_zero(self, a) -> bool:
        return a == self.zero

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def power(self, a, k: int):
        if k < 1:
            raise RingError(f'power exponent must be >= 1, got {k}')
        result = a
        for _ in range(k - 1):
            result = self.mul(result, a)
        return result

    def elements(self) -> Iterator:
        raise EnumerationError(f'enumeration requires finite ring, {self.descriptor} is infinite')

    def check(self, a):
        if not self.contains(a):
            raise RingError(f'{a!r} is not a canonical value of {self.descriptor}')
        return a

    def nilpotency_index(self, a, bound: int) -> NilpotencyIndex:
        """Smallest ``k`` with ``a^k = 0``.

        Definitive for finite rings (the power sequence is eventually periodic)
        and for domains; other rings fall back to ``bound`` iterations.
        """
        if bound < 1:
            raise RingError(f'bound must be a positive integer, got {bound}')
        if self.is_zero(a):
            return Index(1)
        if self.is_domain:
            return NeverNilpotent()
        if self.is_finite:
            return self._cycle_search(a)
        return self._bounded_search(a, bound)

    def _cycle_search(self, a) -> NilpotencyIndex:
        seen = set()
        p, k = a, 1
        while not self.is_zero(p):
            if p in seen:
                return NeverNilpotent()
            seen.add(p)
            p = self.mul(p, a)
            k += 1
        return Index(k)

    def _bounded_search(self, a, bound: int) -> NilpotencyIndex:
        p = a
        for k in range(1, bound + 1):
            if self.is_zero(p):
                return Index(k)
            p = self.mul(p, a)
        return NotNilpotentWithin(bound)


class IntegerRing(Ring):
    zero = 0
    one = 1
    is_field = False
    is_domain = True

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def contains(self, a) -> bool:
        return type(a) is int

    def canon(self, a):
        if isinstance(a, bool) or not isinstance(a, numbers.Integral):
            if isinstance(a, Fraction) and a.denominator == 1:
                return int(a)
            raise RingError(f'{a!r} is not an integer')
        return int(a)

    def inverse(self, a):
        if a in (1, -1):
            return a
        raise RingError(f'{a} is not a unit of {self.descriptor}')

    def encode(self, a):
        return a

    def decode(self, obj):
        if isinstance(obj, str):
            try:
                return int(obj.strip())
            except ValueError:
                raise RingError(f'`{obj}` is not a decimal integer') from None
        return self.canon(obj)

    def format(self, a) -> str:
        return str(a)


class RationalField(Ring):
    zero = Fraction(0)
    one = Fraction(1)
    is_field = True
    is_domain = True

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def contains(self, a) -> bool:
        return type(a) is Fraction

    def canon(self, a):
        if isinstance(a, bool) or not isinstance(a, (numbers.Integral, Fraction)):
            raise RingError(f'{a!r} is not a rational number')
        return Fraction(a)

    def inverse(self, a):
        if a == 0:
            raise RingError('0 is not invertible')
        return 1 / a

    def encode(self, a):
        return str(a)

    def decode(self, obj):
        if isinstance(obj, str):
            try:
                return Fraction(obj.strip())
            except (ValueError, ZeroDivisionError):
                raise RingError(f'`{obj}` is not a fraction `p/q`') from None
        return self.canon(obj)

    def format(self, a) -> str:
        return str(a)


class ModularRing(Ring):
    zero = 0
    one = 1

    def __init__(self, descriptor: RingDescriptor):
        super().__init__(descriptor)
        self.modulus = descriptor.modulus
        self._prime = _is_prime(self.modulus)

    @property
    def is_field(self) -> bool:
        return self._prime

    @property
    def is_domain(self) -> bool:
        return self._prime

    @property
    def cardinality(self) -> int:
        return self.modulus

    def add(self, a, b):
        return (a + b) % self.modulus

    def mul(self, a, b):
        return (a * b) % self.modulus

    def neg(self, a):
        return (-a) % self.modulus

    def contains(self, a) -> bool:
        return type(a) is int and 0 <= a < self.modulus

    def canon(self, a):
        if isinstance(a, bool) or not isinstance(a, numbers.Integral):
            raise RingError(f'{a!r} is not a residue of {self.descriptor}')
        return int(a) % self.modulus

    def inverse(self, a):
        try:
            return pow(a, -1, self.modulus)
        except ValueError:
            raise RingError(f'{a} is not a unit of {self.descriptor}') from None

    def elements(self) -> Iterator[int]:
        return iter(range(self.modulus))

    def encode(self, a):
        return a

    def decode(self, obj):
        if isinstance(obj, str):
            try:
                obj = int(obj.strip())
            except ValueError:
                raise RingError(f'`{obj}` is not a decimal integer') from None
        return self.canon(obj)

    def format(self, a) -> str:
        return str(a)


class PolyQuotRing(Ring):
    """``base[t] / (t^exponent)``; values are coefficient tuples, constant term first."""

    def __init__(self, descriptor: RingDescriptor):
        super().__init__(descriptor)
        self.base = make_ring(descriptor.base)
        self.exponent = descriptor.exponent
        self._zero = (self.base.zero,) * self.exponent
        self._one = (self.base.one,) + (self.base.zero,) * (self.exponent - 1)

    @property
    def zero(self):
        return self._zero

    @property
    def one(self):
        return self._one

    @property
    def t(self):
        if self.exponent < 2:
            return self._zero
        return (self.base.zero, self.base.one) + (self.base.zero,) * (self.exponent - 2)

    @property
    def is_field(self) -> bool:
        return self.exponent == 1 and self.base.is_field

    @property
    def is_domain(self) -> bool:
        return self.exponent == 1 and self.base.is_domain

    @property
    def cardinality(self) -> Optional[int]:
        if self.base.cardinality is None:
            return None
        return self.base.cardinality**self.exponent

    def add(self, a, b):
        return tuple(self.base.add(x, y) for x, y in zip(a, b))

    def mul(self, a, b):
        base = self.base
        res = list(self._zero)
        for i, ai in enumerate(a):
            if base.is_zero(ai):
                continue
            for j in range(self.exponent - i):
                if not base.is_zero(b[j]):
                    res[i + j] = base.add(res[i + j], base.mul(ai, b[j]))
        return tuple(res)

    def neg(self, a):
        return tuple(self.base.neg(x) for x in a)

    def contains(self, a) -> bool:
        return (
            type(a) is tuple
            and len(a) == self.exponent
            and all(self.base.contains(x) for x in a)
        )

    def canon(self, a):
        if not isinstance(a, (tuple, list)):
            return (self.base.canon(a),) + self._zero[1:]
        if len(a) > self.exponent:
            raise RingError(
                f'{a!r} has {len(a)} coefficients, {self.descriptor} keeps {self.exponent}'
            )
        coeffs = tuple(self.base.canon(x) for x in a)
        return coeffs + self._zero[len(coeffs):]

    def inverse(self, a):
        inv0 = self.base.inverse(a[0])
        coeffs = [inv0]
        for k in range(1, self.exponent):
            acc = self.base.zero
            for i in range(1, k + 1):
                acc = self.base.add(acc, self.base.mul(a[i], coeffs[k - i]))
            coeffs.append(self.base.neg(self.base.mul(inv0, acc)))
        return tuple(coeffs)

    def elements(self) -> Iterator[tuple]:
        if not self.is_finite:
            return super().elements()
        # highest-degree coefficient most significant: 0, 1, t, 1+t, ...
        base_elements = list(self.base.elements())
        return (
            tuple(reversed(combo))
            for combo in itertools.product(base_elements, repeat=self.exponent)
        )

    def nilpotency_index(self, a, bound: int) -> NilpotencyIndex:
        if bound < 1:
            raise RingError(f'bound must be a positive integer, got {bound}')
        if self.is_zero(a):
            return Index(1)
        if self.is_finite or self.is_domain:
            return super().nilpotency_index(a, bound)
        # t is nilpotent, so a is nilpotent exactly when its constant term is
        head = self.base.nilpotency_index(a[0], bound)
        if isinstance(head, NeverNilpotent):
            return head
        if isinstance(head, Index):
            return self._bounded_search(a, head.k + self.exponent - 1)
        return self._bounded_search(a, bound)

    def encode(self, a):
        return [self.base.encode(x) for x in a]

    def decode(self, obj):
        if isinstance(obj, (list, tuple)):
            if len(obj) > self.exponent:
                raise RingError(
                    f'{obj!r} has {len(obj)} coefficients, {self.descriptor} keeps {self.exponent}'
                )
            coeffs = tuple(self.base.decode(x) for x in obj)
            return coeffs + self._zero[len(coeffs):]
        return (self.base.decode(obj),) + self._zero[1:]

    def format(self, a) -> str:
        terms = []
        for d, c in enumerate(a):
            if self.base.is_zero(c):
                continue
            text = self.base.format(c)
            if d == 0:
                terms.append(text)
                continue
            monomial = 't' if d == 1 else f't^{d}'
            if c == self.base.one:
                terms.append(monomial)
            elif "+" in text or "-" in text[1:]:
                terms.append(f'({text})*{monomial}')
            else:
                terms.append(f'{text}*{monomial}')
        return '+'.join(terms).replace('+-', '-') if terms else '0'


@functools.lru_cache(maxsize=None)
def make_ring(descriptor: RingDescriptor) -> Ring:
    """Return the ring handle for ``descriptor``; equal descriptors share one handle."""
    if descriptor.kind == 'int':
        return IntegerRing(descriptor)
    if descriptor.kind == 'rat':
        return RationalField(descriptor)
    if descriptor.kind == 'mod':
        return ModularRing(descriptor)
    return PolyQuotRing(descriptor)


def add(ring: Ring, a, b):
    return ring.add(ring.check(a), ring.check(b))


def mul(ring: Ring, a, b):
    return ring.mul(ring.check(a), ring.check(b))


def neg(ring: Ring, a):
    return ring.neg(ring.check(a))


def is_zero(ring: Ring, a) -> bool:
    return ring.is_zero(ring.check(a))


def nilpotency_index(ring: Ring, a, bound: int) -> NilpotencyIndex:
    return ring.nilpotency_index(ring.check(a), bound)


def enumerate_elements(ring: Ring) -> Sequence:
    return list(ring.elements())


def is_field(ring: Ring) -> bool:
    return ring.is_field


def is_domain(ring: Ring) -> bool:
    return ring.is_domain
