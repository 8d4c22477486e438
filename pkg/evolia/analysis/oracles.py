"""Brute-force oracles.

They recompute what the decision procedures abstract away, by direct
enumeration and repeated multiplication, and back the test suite and the
certificate verifier.
"""
from math import comb
from typing import Dict, FrozenSet, Iterable, List, Tuple

from ..algebra import Element, EvolutionAlgebra
from ..errors import GuardExceeded
from .verdicts import Nil, NilElementVerdict, NotNil

DEFAULT_PATH_GUARD = 10**7
DEFAULT_MAX_PRODUCT_LENGTH = 6


def path_product(algebra: EvolutionAlgebra, path: Iterable[int]):
    """``c_(i_m i_(m-1)) ... c_(i_2 i_1)`` for ``path = (i_1, ..., i_m)``."""
    ring = algebra.ring
    path = list(path)
    value = ring.one
    for prev, nxt in zip(path, path[1:]):
        value = ring.mul(algebra.coefficient(nxt, prev), value)
    return value


def brute_force_path_products(
    algebra: EvolutionAlgebra, length: int, guard: int = DEFAULT_PATH_GUARD
) -> Dict[Tuple[int, ...], object]:
    """Every index sequence of ``length + 1`` generators with a nonzero coefficient product."""
    n = algebra.dimension
    if length < 0:
        raise ValueError(f'path length must be >= 0, got {length}')
    if n ** (length + 1) > guard:
        raise GuardExceeded(f'{n}^{length + 1} paths exceed the guard {guard}')
    ring = algebra.ring
    rows = algebra.matrix.rows
    layer: List[Tuple[Tuple[int, ...], object]] = [((i,), ring.one) for i in range(1, n + 1)]
    for _ in range(length):
        layer = [
            (path + (k,), ring.mul(rows[k - 1][path[-1] - 1], value))
            for path, value in layer
            for k in range(1, n + 1)
        ]
    return {path: value for path, value in layer if not ring.is_zero(value)}


def path_product_states(algebra: EvolutionAlgebra, upto: int) -> List[FrozenSet]:
    """``states[l-1]`` is the set of ``((start, end), product)`` over nonzero paths of ``l`` coefficients."""
    ring = algebra.ring
    rows = algebra.matrix.rows
    n = algebra.dimension
    current = frozenset(
        ((i, k), rows[k - 1][i - 1])
        for i in range(1, n + 1)
        for k in range(1, n + 1)
        if not ring.is_zero(rows[k - 1][i - 1])
    )
    states = [current]
    for _ in range(upto - 1):
        nxt = set()
        for (i, j), value in current:
            for k in range(1, n + 1):
                v = ring.mul(rows[k - 1][j - 1], value)
                if not ring.is_zero(v):
                    nxt.add(((i, k), v))
        current = frozenset(nxt)
        states.append(current)
    return states


def brute_force_parenthesized_products(
    algebra: EvolutionAlgebra,
    n: int,
    sample: Iterable[Element],
    max_length: int = DEFAULT_MAX_PRODUCT_LENGTH,
    guard: int = DEFAULT_PATH_GUARD,
) -> bool:
    """True iff every full parenthesization of every ``n``-tuple from ``sample`` is zero."""
    sample = list(sample)
    if n < 1:
        raise ValueError(f'product length must be >= 1, got {n}')
    catalan = comb(2 * (n - 1), n - 1) // n
    if n > max_length or catalan * len(sample) ** n > guard:
        raise GuardExceeded(
            f'{catalan} parenthesizations of {len(sample)}^{n} tuples exceed the guard'
        )
    # products[m]: values of every m-factor product, however associated
    products = {1: {a.coeffs for a in sample}}
    for m in range(2, n + 1):
        values = set()
        for i in range(1, m):
            for u in products[i]:
                left = Element(algebra, u)
                for v in products[m - i]:
                    values.add(algebra.multiply(left, Element(algebra, v)).coeffs)
        products[m] = values
    ring = algebra.ring
    return all(all(ring.is_zero(c) for c in value) for value in products[n])


def naive_nil_element(a: Element) -> NilElementVerdict:
    """Repeated left multiplication ``a^k = a^(k-1) a`` with cycle detection (finite rings)."""
    if a.is_zero:
        return Nil(1)
    seen = {a.coeffs: 0}
    power, j = a, 0
    while True:
        power = power * a
        j += 1
        if power.is_zero:
            return Nil(j + 1)
        if power.coeffs in seen:
            return NotNil(seen[power.coeffs], j)
        seen[power.coeffs] = j
