"""Finite-dimensional evolution algebras over the rings of :mod:`evolia.rings`.

The structure matrix follows the column convention: column ``j`` of ``C``
holds the coefficients of ``x_j^2``, i.e. ``x_j^2 = sum_k c_kj x_k``.
Basis indices are 1-based in the public API and 0-based in storage.
"""
import hashlib
import json
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Set, Tuple, Union

from bidict import bidict

from .errors import (
    AlgebraMismatchError,
    DimensionError,
    NotAnIdealError,
    PowerCapExceeded,
    PowerError,
)
from .rings import Ring

DEFAULT_PLENARY_CAP = 64


@dataclass(frozen=True)
class RingMatrix:
    """Square matrix of canonical ring values, stored row by row."""

    ring: Ring
    rows: Tuple[tuple, ...]

    @property
    def size(self) -> int:
        return len(self.rows)

    @classmethod
    def from_columns(cls, ring: Ring, columns: Sequence[Sequence]) -> 'RingMatrix':
        n = len(columns)
        return cls(ring, tuple(tuple(columns[j][k] for j in range(n)) for k in range(n)))

    def column(self, j: int) -> tuple:
        return tuple(row[j] for row in self.rows)

    def is_zero(self) -> bool:
        return all(self.ring.is_zero(x) for row in self.rows for x in row)

    def _check_size(self, other_size: int):
        if other_size != self.size:
            raise DimensionError(f'size mismatch: {self.size} vs {other_size}')

    def matvec(self, vec: Sequence) -> tuple:
        self._check_size(len(vec))
        ring = self.ring
        out = []
        for row in self.rows:
            acc = ring.zero
            for c, v in zip(row, vec):
                if not ring.is_zero(c) and not ring.is_zero(v):
                    acc = ring.add(acc, ring.mul(c, v))
            out.append(acc)
        return tuple(out)

    def matmul(self, other: 'RingMatrix') -> 'RingMatrix':
        self._check_size(other.size)
        ring = self.ring
        n = self.size
        out = []
        for row in self.rows:
            acc = [ring.zero] * n
            for m, c in enumerate(row):
                if ring.is_zero(c):
                    continue
                for j, d in enumerate(other.rows[m]):
                    if not ring.is_zero(d):
                        acc[j] = ring.add(acc[j], ring.mul(c, d))
            out.append(tuple(acc))
        return RingMatrix(ring, tuple(out))

    def scale_columns(self, factors: Sequence) -> 'RingMatrix':
        self._check_size(len(factors))
        mul = self.ring.mul
        return RingMatrix(
            self.ring, tuple(tuple(mul(c, a) for c, a in zip(row, factors)) for row in self.rows)
        )

    def flatten(self) -> tuple:
        return tuple(x for row in self.rows for x in row)

    def encode(self) -> List[list]:
        return [[self.ring.encode(x) for x in row] for row in self.rows]


def _default_labels(n: int) -> bidict:
    return bidict({i: f'x{i}' for i in range(1, n + 1)})


class EvolutionAlgebra:
    """Free module over ``ring`` with basis ``x_1..x_N`` and ``x_i x_j = 0`` for ``i != j``."""

    def __init__(
        self,
        ring: Ring,
        matrix: RingMatrix,
        labels: Optional[Union[Sequence[str], Mapping[int, str]]] = None,
    ):
        if matrix.ring is not ring:
            raise AlgebraMismatchError(f'matrix over {matrix.ring.descriptor}, algebra over {ring.descriptor}')
        self.ring = ring
        self.matrix = matrix
        if labels is None:
            self.labels = _default_labels(matrix.size)
        elif isinstance(labels, Mapping):
            self.labels = bidict(labels)
        else:
            self.labels = bidict({i: name for i, name in enumerate(labels, start=1)})
        if sorted(self.labels) != list(range(1, matrix.size + 1)):
            raise DimensionError(f'{len(self.labels)} labels for dimension {matrix.size}')

    @property
    def dimension(self) -> int:
        """Number of generators; a rank rather than a dimension over a general ring."""
        return self.matrix.size

    def __repr__(self):
        return f'EvolutionAlgebra({self.ring.descriptor}, dimension={self.dimension})'

    def __eq__(self, other):
        if not isinstance(other, EvolutionAlgebra):
            return NotImplemented
        return (
            self.ring.descriptor == other.ring.descriptor
            and self.matrix.rows == other.matrix.rows
            and dict(self.labels) == dict(other.labels)
        )

    def __hash__(self):
        return hash((self.ring.descriptor, self.matrix.rows))

    def coefficient(self, k: int, j: int):
        """``c_kj``: coefficient of ``x_k`` in ``x_j^2`` (1-based)."""
        return self.matrix.rows[k - 1][j - 1]

    def square_of(self, j: int) -> 'Element':
        return Element(self, self.matrix.column(j - 1))

    def to_json(self) -> dict:
        enc = self.ring.encode
        return {
            'ring': self.ring.descriptor.to_json(),
            'dimension': self.dimension,
            'columns': [[enc(x) for x in self.matrix.column(j)] for j in range(self.dimension)],
        }

    @property
    def digest(self) -> str:
        text = json.dumps(self.to_json(), sort_keys=True, separators=(',', ':'))
        return hashlib.sha256(text.encode('utf-8')).hexdigest()

    # -- elements ---------------------------------------------------------

    def element(self, coeffs: Sequence) -> 'Element':
        if len(coeffs) != self.dimension:
            raise DimensionError(f'{len(coeffs)} coefficients for dimension {self.dimension}')
        return Element(self, tuple(self.ring.check(c) for c in coeffs))

    def decode_element(self, payload: Union[Sequence, Mapping]) -> 'Element':
        """Element from its textual form: a list of encodings or ``{label|index: value}``."""
        if isinstance(payload, Mapping):
            coeffs = [self.ring.zero] * self.dimension
            for key, value in payload.items():
                coeffs[self._resolve_index(key) - 1] = self.ring.decode(value)
            return Element(self, tuple(coeffs))
        if len(payload) != self.dimension:
            raise DimensionError(f'{len(payload)} coefficients for dimension {self.dimension}')
        return Element(self, tuple(self.ring.decode(v) for v in payload))

    def _resolve_index(self, key) -> int:
        if key in self.labels.inverse:
            return self.labels.inverse[key]
        try:
            index = int(key)
        except (TypeError, ValueError):
            raise DimensionError(f'unknown basis label `{key}`') from None
        if not 1 <= index <= self.dimension:
            raise DimensionError(f'basis index {index} out of range 1..{self.dimension}')
        return index

    def encode_element(self, a: 'Element') -> list:
        return [self.ring.encode(c) for c in a.coeffs]

    def zero(self) -> 'Element':
        return Element(self, (self.ring.zero,) * self.dimension)

    def basis(self, i: int) -> 'Element':
        if not 1 <= i <= self.dimension:
            raise DimensionError(f'basis index {i} out of range 1..{self.dimension}')
        ring = self.ring
        return Element(
            self, tuple(ring.one if k == i else ring.zero for k in range(1, self.dimension + 1))
        )

    def format_element(self, a: 'Element') -> str:
        ring = self.ring
        terms = []
        for i, c in enumerate(a.coeffs, start=1):
            if ring.is_zero(c):
                continue
            label = self.labels[i]
            if c == ring.one:
                terms.append(label)
                continue
            text = ring.format(c)
            if '+' in text or '-' in text[1:]:
                text = f'({text})'
            terms.append(f'{text}*{label}')
        return '+'.join(terms).replace('+-', '-') if terms else '0'

    def _own(self, *elements: 'Element'):
        for a in elements:
            if a.algebra is not self and a.algebra != self:
                raise AlgebraMismatchError(f'{a!r} does not belong to {self!r}')

    # -- products -----------------------------------------------------------

    def multiply(self, a: 'Element', b: 'Element') -> 'Element':
        """``a b = sum_i a_i b_i x_i^2``, i.e. ``C (a * b)`` entrywise."""
        self._own(a, b)
        ring = self.ring
        weights = [ring.mul(x, y) for x, y in zip(a.coeffs, b.coeffs)]
        return Element(self, self.matrix.matvec(weights))

    def c_alpha(self, alpha: 'Element') -> RingMatrix:
        """``C_alpha = (a_j c_kj)``: column ``j`` of ``C`` scaled by ``a_j``."""
        self._own(alpha)
        return self.matrix.scale_columns(alpha.coeffs)

    def left_mult_matrix(self, a: 'Element') -> RingMatrix:
        """Matrix of ``x -> a x``; equal to ``C_a`` entry by entry."""
        self._own(a)
        return self.matrix.scale_columns(a.coeffs)

    def generator_matrix(self, i: int) -> RingMatrix:
        """``L_i``, the left multiplication by ``x_i``."""
        return self.left_mult_matrix(self.basis(i))

    def principal_power(self, a: 'Element', n: int) -> 'Element':
        """``a^n = C_alpha^(n-1) alpha`` for ``n >= 2``; ``a^1 = a``."""
        self._own(a)
        if n < 1:
            raise PowerError(f'principal power exponent must be >= 1, got {n}')
        beta = a.coeffs
        if n > 1:
            c = self.c_alpha(a)
            for _ in range(n - 1):
                beta = c.matvec(beta)
        return Element(self, beta)

    def plenary_power(self, a: 'Element', n: int, cap: int = DEFAULT_PLENARY_CAP) -> 'Element':
        """``a^[1] = a a`` and ``a^[n] = a^[n-1] a^[n-1]``."""
        self._own(a)
        if n < 1:
            raise PowerError(f'plenary power exponent must be >= 1, got {n}')
        current = a
        for _ in range(min(n, cap)):
            current = self.multiply(current, current)
        if n > cap:
            raise PowerCapExceeded(n, cap, current.support_size)
        return current

    # -- derived algebras -----------------------------------------------------

    def check_ideal(self, drop: Iterable[int]) -> Set[int]:
        """Validate that ``span{x_k : k in drop}`` absorbs products with ``A``."""
        drop = set(drop)
        for i in drop:
            if not 1 <= i <= self.dimension:
                raise DimensionError(f'basis index {i} out of range 1..{self.dimension}')
        for i in sorted(drop):
            square = self.square_of(i)
            for k, c in enumerate(square.coeffs, start=1):
                if k not in drop and not self.ring.is_zero(c):
                    raise NotAnIdealError(i, self.format_element(square))
        return drop

    def quotient_by_basis_ideal(self, drop: Iterable[int]) -> 'EvolutionAlgebra':
        drop = self.check_ideal(drop)
        keep = [i for i in range(1, self.dimension + 1) if i not in drop]
        rows = tuple(
            tuple(self.matrix.rows[k - 1][j - 1] for j in keep) for k in keep
        )
        labels = {pos: self.labels[i] for pos, i in enumerate(keep, start=1)}
        return EvolutionAlgebra(self.ring, RingMatrix(self.ring, rows), labels)

    def reordered(self, order: Sequence[int]) -> 'EvolutionAlgebra':
        """The same algebra with generators listed as ``order`` (1-based original indices)."""
        if sorted(order) != list(range(1, self.dimension + 1)):
            raise DimensionError(f'{list(order)} is not a permutation of 1..{self.dimension}')
        rows = tuple(tuple(self.matrix.rows[k - 1][j - 1] for j in order) for k in order)
        labels = {pos: self.labels[i] for pos, i in enumerate(order, start=1)}
        return EvolutionAlgebra(self.ring, RingMatrix(self.ring, rows), labels)


@dataclass(frozen=True)
class Element:
    algebra: EvolutionAlgebra = field(compare=False)
    coeffs: tuple

    def __repr__(self):
        return f'Element({self.algebra.format_element(self)})'

    def __str__(self):
        return self.algebra.format_element(self)

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self.coeffs == other.coeffs and (
            self.algebra is other.algebra or self.algebra == other.algebra
        )

    def __hash__(self):
        return hash(self.coeffs)

    @property
    def is_zero(self) -> bool:
        return all(self.algebra.ring.is_zero(c) for c in self.coeffs)

    @property
    def support_size(self) -> int:
        return sum(1 for c in self.coeffs if not self.algebra.ring.is_zero(c))

    def __add__(self, other: 'Element') -> 'Element':
        self.algebra._own(other)
        add = self.algebra.ring.add
        return Element(self.algebra, tuple(add(x, y) for x, y in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> 'Element':
        neg = self.algebra.ring.neg
        return Element(self.algebra, tuple(neg(x) for x in self.coeffs))

    def __sub__(self, other: 'Element') -> 'Element':
        return self + (-other)

    def __mul__(self, other: 'Element') -> 'Element':
        return self.algebra.multiply(self, other)

    def scale(self, r) -> 'Element':
        mul = self.algebra.ring.mul
        return Element(self.algebra, tuple(mul(r, x) for x in self.coeffs))


def build_algebra(
    ring: Ring, columns: Sequence[Sequence], labels: Optional[Sequence[str]] = None
) -> EvolutionAlgebra:
    """Algebra with ``x_j^2 = sum_k columns[j][k] x_k``; entries are ring encodings."""
    n = len(columns)
    if n < 1:
        raise DimensionError('an algebra needs at least one generator')
    for j, col in enumerate(columns, start=1):
        if len(col) != n:
            raise DimensionError(f'column {j} has {len(col)} entries, expected {n}')
    decoded = [[ring.decode(x) for x in col] for col in columns]
    return EvolutionAlgebra(ring, RingMatrix.from_columns(ring, decoded), labels)


def build_algebra_from_rows(
    ring: Ring, rows: Sequence[Sequence], labels: Optional[Sequence[str]] = None
) -> EvolutionAlgebra:
    """Same as :func:`build_algebra` for a matrix displayed row by row."""
    n = len(rows)
    for k, row in enumerate(rows, start=1):
        if len(row) != n:
            raise DimensionError(f'row {k} has {len(row)} entries, expected {n}')
    return build_algebra(ring, [[rows[k][j] for k in range(n)] for j in range(n)], labels)


def direct_sum(a: EvolutionAlgebra, b: EvolutionAlgebra) -> EvolutionAlgebra:
    """Block-diagonal sum; generators of different summands multiply to zero."""
    if a.ring.descriptor != b.ring.descriptor:
        raise AlgebraMismatchError(
            f'cannot sum algebras over {a.ring.descriptor} and {b.ring.descriptor}'
        )
    ring = a.ring
    n, m = a.dimension, b.dimension
    zero = ring.zero
    rows = tuple(row + (zero,) * m for row in a.matrix.rows) + tuple(
        (zero,) * n + row for row in b.matrix.rows
    )
    names = list(a.labels.values()) + list(b.labels.values())
    labels: Optional[Dict[int, str]] = None
    if len(set(names)) == len(names):
        labels = {i: name for i, name in enumerate(names, start=1)}
    return EvolutionAlgebra(ring, RingMatrix(ring, rows), labels)
