"""Countably infinite evolution algebras given by a rule for ``x_i^2``.

Only elements with finite support are represented. The built-in rule is the
shift rule ``x_i^2 = nu x_i + x_(i+1)`` with ``nu`` nilpotent in the ring.
"""
import abc
from dataclasses import dataclass, field
from typing import Dict, Iterable, Mapping, Optional, Tuple, Union

from .algebra import DEFAULT_PLENARY_CAP, EvolutionAlgebra, RingMatrix
from .errors import (
    AlgebraMismatchError,
    DimensionError,
    InvariantViolation,
    PowerCapExceeded,
    PowerError,
    RingError,
    UnsupportedBoundError,
)
from .rings import Index, Ring


class StructureRule(abc.ABC):
    """``i -> coefficients of x_i^2`` for every basis index ``i >= 1``."""

    def __init__(self, ring: Ring):
        self.ring = ring

    @abc.abstractmethod
    def square(self, i: int) -> Dict[int, object]:
        ...

    @abc.abstractmethod
    def to_json(self) -> dict:
        ...

    def element(self, support: Union[Mapping, Iterable[Tuple[int, object]]]) -> 'SparseElement':
        return SparseElement.build(self, support)

    def decode_element(self, payload: Mapping) -> 'SparseElement':
        """Element from ``{"index": encoding}``."""
        items = []
        for key, value in payload.items():
            try:
                index = int(key)
            except (TypeError, ValueError):
                raise DimensionError(f'basis index `{key}` is not an integer') from None
            items.append((index, self.ring.decode(value)))
        return SparseElement.build(self, items)

    def basis(self, i: int) -> 'SparseElement':
        return SparseElement.build(self, [(i, self.ring.one)])

    def zero(self) -> 'SparseElement':
        return SparseElement(self, ())


class ShiftRule(StructureRule):
    def __init__(self, ring: Ring, nu, bound: int = 4096):
        super().__init__(ring)
        self.nu = ring.check(nu)
        index = ring.nilpotency_index(self.nu, bound)
        if not isinstance(index, Index):
            raise RingError(f'nu = {ring.format(self.nu)} is not nilpotent in {ring.descriptor}')
        self.nu_index = index.k

    def __repr__(self):
        return f'ShiftRule({self.ring.descriptor}, nu={self.ring.format(self.nu)})'

    def __eq__(self, other):
        if not isinstance(other, ShiftRule):
            return NotImplemented
        return self.ring.descriptor == other.ring.descriptor and self.nu == other.nu

    def __hash__(self):
        return hash((self.ring.descriptor, self.nu))

    @property
    def square_zero(self) -> bool:
        return self.nu_index <= 2

    def square(self, i: int) -> Dict[int, object]:
        out = {i + 1: self.ring.one}
        if not self.ring.is_zero(self.nu):
            out[i] = self.nu
        return out

    def to_json(self) -> dict:
        return {
            'kind': 'shift',
            'ring': self.ring.descriptor.to_json(),
            'nu': self.ring.encode(self.nu),
        }


@dataclass(frozen=True)
class SparseElement:
    """Finitely supported element; ``support`` is sorted and holds no zeros."""

    rule: StructureRule = field(compare=False)
    support: Tuple[Tuple[int, object], ...]

    @classmethod
    def build(cls, rule: StructureRule, items) -> 'SparseElement':
        ring = rule.ring
        if isinstance(items, Mapping):
            items = items.items()
        acc: Dict[int, object] = {}
        for index, value in items:
            if index < 1:
                raise DimensionError(f'basis indices start at 1, got {index}')
            value = ring.check(value)
            acc[index] = ring.add(acc.get(index, ring.zero), value)
        return cls(rule, tuple(sorted((i, v) for i, v in acc.items() if not ring.is_zero(v))))

    def __repr__(self):
        return f'SparseElement({self})'

    def __str__(self):
        ring = self.rule.ring
        terms = []
        for i, c in self.support:
            if c == ring.one:
                terms.append(f'x{i}')
                continue
            text = ring.format(c)
            if '+' in text or '-' in text[1:]:
                text = f'({text})'
            terms.append(f'{text}*x{i}')
        return '+'.join(terms).replace('+-', '-') if terms else '0'

    def __getitem__(self, index: int):
        return dict(self.support).get(index, self.rule.ring.zero)

    @property
    def is_zero(self) -> bool:
        return not self.support

    @property
    def min_support(self) -> Optional[int]:
        return self.support[0][0] if self.support else None

    @property
    def max_support(self) -> Optional[int]:
        return self.support[-1][0] if self.support else None

    def encode(self) -> Dict[str, object]:
        return {str(i): self.rule.ring.encode(c) for i, c in self.support}

    def __add__(self, other: 'SparseElement') -> 'SparseElement':
        _same_rule(self, other)
        return SparseElement.build(self.rule, self.support + other.support)

    def __mul__(self, other: 'SparseElement') -> 'SparseElement':
        return multiply_sparse(self, other)

    def scale(self, r) -> 'SparseElement':
        mul = self.rule.ring.mul
        return SparseElement.build(self.rule, [(i, mul(r, c)) for i, c in self.support])


def _same_rule(a: SparseElement, b: SparseElement):
    if a.rule is not b.rule and a.rule != b.rule:
        raise AlgebraMismatchError(f'{a.rule!r} and {b.rule!r} differ')


def multiply_sparse(a: SparseElement, b: SparseElement) -> SparseElement:
    """``sum over common support i of (a_i b_i) x_i^2``."""
    _same_rule(a, b)
    rule, ring = a.rule, a.rule.ring
    right = dict(b.support)
    acc: Dict[int, object] = {}
    for i, ai in a.support:
        bi = right.get(i)
        if bi is None:
            continue
        w = ring.mul(ai, bi)
        if ring.is_zero(w):
            continue
        for k, c in rule.square(i).items():
            acc[k] = ring.add(acc.get(k, ring.zero), ring.mul(w, c))
    return SparseElement(
        rule, tuple(sorted((k, v) for k, v in acc.items() if not ring.is_zero(v)))
    )


def principal_power_sparse(a: SparseElement, n: int) -> SparseElement:
    """``a^n = a^(n-1) a``."""
    if n < 1:
        raise PowerError(f'principal power exponent must be >= 1, got {n}')
    current = a
    for _ in range(n - 1):
        if current.is_zero:
            break
        current = multiply_sparse(current, a)
    return current


def plenary_power_sparse(
    a: SparseElement, n: int, cap: int = DEFAULT_PLENARY_CAP
) -> SparseElement:
    """``a^[n] = a^[n-1] a^[n-1]``; refuses ``n`` beyond ``cap``."""
    if n < 1:
        raise PowerError(f'plenary power exponent must be >= 1, got {n}')
    current = a
    for _ in range(min(n, cap)):
        current = multiply_sparse(current, current)
    if n > cap:
        raise PowerCapExceeded(n, cap, len(current.support))
    return current


def nil_exponent_shift(a: SparseElement) -> int:
    """Smallest ``k`` with ``a^k = 0`` for a shift rule with ``nu^2 = 0``.

    With ``t = max_support(a)`` the power ``a^(2t+2)`` always vanishes, so the
    search below is bounded.
    """
    rule = a.rule
    if not isinstance(rule, ShiftRule) or not rule.square_zero:
        raise UnsupportedBoundError('bound only proven for square-zero nu')
    if a.is_zero:
        return 1
    bound = 2 * a.max_support + 2
    current = a
    for k in range(1, bound + 1):
        if current.is_zero:
            return k
        current = multiply_sparse(current, a)
    raise InvariantViolation(f'{a} has no vanishing power up to {bound}')


def plenary_certificate(rule: StructureRule, stages: int, cap: int = DEFAULT_PLENARY_CAP):
    """Return ``(x1^[stages], top index)`` for a shift rule.

    ``x1^[n]`` has coefficient 1 at ``x_(n+1)`` for every ``n``, so none of
    these stages vanish and the algebra is not nilpotent.
    """
    if not isinstance(rule, ShiftRule):
        raise UnsupportedBoundError('plenary certificates are defined for shift rules')
    stage = plenary_power_sparse(rule.basis(1), stages, cap)
    top = stage.max_support
    if top != stages + 1 or stage[top] != rule.ring.one:
        raise InvariantViolation(f'x1^[{stages}] = {stage} lost its leading term')
    return stage, top


def window(rule: StructureRule, n: int) -> EvolutionAlgebra:
    """Finite projection on ``x_1..x_n``: terms beyond ``x_n`` are dropped.

    The window is not a subalgebra of the infinite algebra; analyses on it are
    window results.
    """
    if n < 1:
        raise DimensionError(f'window size must be >= 1, got {n}')
    ring = rule.ring
    columns = []
    for j in range(1, n + 1):
        col = [ring.zero] * n
        for k, c in rule.square(j).items():
            if k <= n:
                col[k - 1] = c
        columns.append(col)
    return EvolutionAlgebra(ring, RingMatrix.from_columns(ring, columns))
