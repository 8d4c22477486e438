"""Strong nilpotency through the associated algebra ``L(A)``.

Over a field, ``A`` is strongly nilpotent iff the associative matrix algebra
generated by the left multiplications ``L_1..L_N`` is nilpotent.
"""
from typing import List, Optional, Sequence, Tuple

from jina.logging.logger import JinaLogger

from ..algebra import Element, EvolutionAlgebra, RingMatrix
from ..errors import InvariantViolation
from ..rings import Ring
from .verdicts import (
    NotStronglyNilpotent,
    StronglyNilpotent,
    StrongNilpotencyVerdict,
    Unsupported,
)

logger = JinaLogger('evolia.analysis.strong')


class _Echelon:
    """Row echelon basis of a subspace of ``F^d``, filled one vector at a time."""

    def __init__(self, ring: Ring, width: int):
        self.ring = ring
        self.width = width
        self._rows: List[Tuple[int, list]] = []

    def __len__(self):
        return len(self._rows)

    def reduce(self, vec: Sequence) -> list:
        ring = self.ring
        vec = list(vec)
        for pivot, row in self._rows:
            factor = vec[pivot]
            if ring.is_zero(factor):
                continue
            vec = [ring.sub(x, ring.mul(factor, y)) for x, y in zip(vec, row)]
        return vec

    def add(self, vec: Sequence) -> bool:
        """Insert ``vec``; False when it already lies in the span."""
        ring = self.ring
        vec = self.reduce(vec)
        pivot = next((p for p, x in enumerate(vec) if not ring.is_zero(x)), None)
        if pivot is None:
            return False
        inv = ring.inverse(vec[pivot])
        vec = [ring.mul(inv, x) for x in vec]
        # keep earlier rows reduced against the new pivot
        for k, (p, row) in enumerate(self._rows):
            factor = row[pivot]
            if not ring.is_zero(factor):
                self._rows[k] = (p, [ring.sub(x, ring.mul(factor, y)) for x, y in zip(row, vec)])
        self._rows.append((pivot, vec))
        return True


def _span(ring: Ring, n: int, matrices) -> List[RingMatrix]:
    echelon = _Echelon(ring, n * n)
    return [m for m in matrices if echelon.add(m.flatten())]


def associated_algebra_basis(algebra: EvolutionAlgebra) -> List[RingMatrix]:
    """A linear basis of ``L(A)``: span of all nonempty words in ``L_1..L_N``."""
    ring = algebra.ring
    n = algebra.dimension
    generators = [algebra.generator_matrix(i) for i in range(1, n + 1)]
    echelon = _Echelon(ring, n * n)
    basis = [g for g in generators if echelon.add(g.flatten())]
    frontier = list(basis)
    while frontier:
        fresh = []
        for word in frontier:
            for g in generators:
                product = word.matmul(g)
                if echelon.add(product.flatten()):
                    fresh.append(product)
        basis.extend(fresh)
        frontier = fresh
    return basis


def associated_power_chain(
    algebra: EvolutionAlgebra, basis: Optional[List[RingMatrix]] = None
) -> Tuple[Tuple[int, ...], bool]:
    """Dimensions of ``L(A) >= L(A)^2 >= ...`` until zero or stable.

    Returns the chain and whether it reached the zero subspace.
    """
    ring = algebra.ring
    n = algebra.dimension
    if basis is None:
        basis = associated_algebra_basis(algebra)
    chain = [len(basis)]
    power = basis
    while power:
        power = _span(ring, n, (p.matmul(q) for p in power for q in basis))
        if len(power) == chain[-1]:
            return tuple(chain), False
        chain.append(len(power))
    return tuple(chain), True


def _subspace_product(algebra: EvolutionAlgebra, left, right) -> list:
    return [
        algebra.multiply(Element(algebra, u), Element(algebra, v)).coeffs
        for u in left
        for v in right
    ]


def strong_exponent(algebra: EvolutionAlgebra, guard: int) -> int:
    """Smallest ``n`` with every ``n``-fold product zero however associated.

    ``P_1 = A`` and ``P_n`` is the span of ``P_i P_(n-i)`` over ``0 < i < n``.
    """
    ring = algebra.ring
    n = algebra.dimension
    spans = {1: [algebra.basis(i).coeffs for i in range(1, n + 1)]}
    k = 1
    while spans[k]:
        k += 1
        if k > guard:
            raise InvariantViolation(f'products of {guard} factors do not vanish')
        echelon = _Echelon(ring, n)
        spans[k] = [
            vec
            for i in range(1, k)
            for vec in _subspace_product(algebra, spans[i], spans[k - i])
            if echelon.add(vec)
        ]
    return k


def is_strongly_nilpotent(algebra: EvolutionAlgebra) -> StrongNilpotencyVerdict:
    ring = algebra.ring
    if not ring.is_field:
        return Unsupported(f'{ring.descriptor} is not a field')
    if algebra.dimension == 0:
        return StronglyNilpotent(1, 1, ())
    basis = associated_algebra_basis(algebra)
    logger.debug(f'L(A) has dimension {len(basis)}')
    chain, vanishes = associated_power_chain(algebra, basis)
    if not vanishes:
        return NotStronglyNilpotent(chain, len(chain))
    # L(A)^m = 0 kills every product whose tree has depth >= m
    associated_index = len(chain)
    exponent = strong_exponent(algebra, 2**associated_index + 1)
    return StronglyNilpotent(exponent, associated_index, chain)
