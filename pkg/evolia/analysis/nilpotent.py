"""Nilpotency of finite-dimensional evolution algebras.

``A^n = (0)`` exactly when every product ``c_(i_n i_(n-1)) ... c_(i_2 i_1)`` of
``n - 1`` structure coefficients along an index path vanishes. Sums of such
products are irrelevant, so matrix powers of ``C`` cannot decide this over
rings with zero divisors; the dynamic program below tracks the set of nonzero
products per (start, end) pair instead.
"""
from typing import Dict, Optional, Tuple

from jina.logging.logger import JinaLogger

from ..algebra import EvolutionAlgebra
from ..errors import BoundRequiredError, InvariantViolation
from .oracles import path_product
from .verdicts import (
    Filtration,
    Nilpotent,
    NilpotencyVerdict,
    NotNilpotent,
    Permutation,
    Unknown,
)

logger = JinaLogger('evolia.analysis.nilpotent')

DEFAULT_STEP_GUARD = 100000

# (start, end), 0-based -> {nonzero product: first path reaching it (1-based)}
State = Dict[Tuple[int, int], Dict[object, Tuple[int, ...]]]


def _initial_state(algebra: EvolutionAlgebra) -> State:
    ring = algebra.ring
    rows = algebra.matrix.rows
    n = algebra.dimension
    state: State = {}
    for i in range(n):
        for k in range(n):
            c = rows[k][i]
            if not ring.is_zero(c):
                state[(i, k)] = {c: (i + 1, k + 1)}
    return state


def _extend(algebra: EvolutionAlgebra, state: State) -> State:
    ring = algebra.ring
    rows = algebra.matrix.rows
    n = algebra.dimension
    out: State = {}
    for (i, j) in sorted(state):
        for value, path in state[(i, j)].items():
            for k in range(n):
                c = rows[k][j]
                if ring.is_zero(c):
                    continue
                v = ring.mul(c, value)
                if ring.is_zero(v):
                    continue
                bucket = out.setdefault((i, k), {})
                if v not in bucket:
                    bucket[v] = path + (k + 1,)
    return out


def _freeze(state: State) -> frozenset:
    return frozenset((key, v) for key, bucket in state.items() for v in bucket)


def _first_entry(state: State) -> Tuple[Tuple[int, ...], object]:
    bucket = state[min(state)]
    value = next(iter(bucket))
    return bucket[value], value


def path_product_dp(algebra: EvolutionAlgebra, max_steps: Optional[int] = None) -> NilpotencyVerdict:
    """Decide nilpotency from the sequence of path-product states.

    The state at length ``l + 1`` depends only on the state at length ``l``,
    so an all-empty state gives ``Nilpotent(l + 1)`` and a repeated nonempty
    state proves the algebra is not nilpotent.
    """
    if algebra.dimension == 0:
        return Nilpotent(1)
    state = _initial_state(algebra)
    previous: Optional[State] = None
    seen: Dict[frozenset, int] = {}
    length = 1
    while True:
        if not state:
            if previous is None:
                return Nilpotent(length + 1)
            path, value = _first_entry(previous)
            return Nilpotent(length + 1, path, value)
        key = _freeze(state)
        if key in seen:
            path, value = _first_entry(state)
            return NotNilpotent(path, value, seen[key], length)
        if max_steps is not None and length >= max_steps:
            logger.warning(f'path-product states undecided after {max_steps} steps')
            return Unknown(max_steps)
        seen[key] = length
        previous = state
        state = _extend(algebra, state)
        length += 1
        if length % 1000 == 0:
            logger.debug(f'path-product DP reached length {length}')


def compute_filtration(algebra: EvolutionAlgebra) -> Filtration:
    """Layer ``s + 1`` holds the generators whose squares lie in the span of layers ``1..s``."""
    ring = algebra.ring
    n = algebra.dimension
    captured = set()
    layers = []
    while True:
        layer = tuple(
            i
            for i in range(1, n + 1)
            if i not in captured
            and all(
                k in captured
                for k in range(1, n + 1)
                if not ring.is_zero(algebra.coefficient(k, i))
            )
        )
        if not layer:
            break
        layers.append(layer)
        captured.update(layer)
    residue = tuple(i for i in range(1, n + 1) if i not in captured)
    return Filtration(tuple(layers), residue)


def strict_upper_permutation(algebra: EvolutionAlgebra) -> Optional[Permutation]:
    """An ordering of the generators making ``C`` strictly upper triangular, if any."""
    order = compute_filtration(algebra).order
    if order is None:
        return None
    return Permutation.from_order(order)


def _domain_verdict(algebra: EvolutionAlgebra) -> NilpotencyVerdict:
    ring = algebra.ring
    n = algebra.dimension
    filtration = compute_filtration(algebra)

    def successors(i):
        return [k for k in range(1, n + 1) if not ring.is_zero(algebra.coefficient(k, i))]

    if filtration.complete:
        # successors always sit in earlier layers, so layer order is a topological order
        longest: Dict[int, int] = {}
        step: Dict[int, int] = {}
        for i in filtration.order:
            best, via = 0, None
            for k in successors(i):
                if longest[k] + 1 > best:
                    best, via = longest[k] + 1, k
            longest[i] = best
            if via is not None:
                step[i] = via
        start = max(range(1, n + 1), key=lambda i: (longest[i], -i))
        if longest[start] == 0:
            return Nilpotent(2, method='domain')
        path = [start]
        while path[-1] in step:
            path.append(step[path[-1]])
        path = tuple(path)
        return Nilpotent(longest[start] + 2, path, path_product(algebra, path), method='domain')

    # every residue generator squares onto some residue generator: follow until a repeat
    residue = set(filtration.residue)
    walk = []
    position = {}
    current = min(residue)
    while current not in position:
        position[current] = len(walk)
        walk.append(current)
        nxt = [k for k in successors(current) if k in residue]
        if not nxt:
            raise InvariantViolation(f'x{current}^2 does not reach the residue {sorted(residue)}')
        current = nxt[0]
    cycle = tuple(walk[position[current]:]) + (current,)
    return NotNilpotent(cycle, path_product(algebra, cycle), method='domain')


def is_nilpotent(
    algebra: EvolutionAlgebra,
    bound: Optional[int] = None,
    step_guard: int = DEFAULT_STEP_GUARD,
) -> NilpotencyVerdict:
    """Finite rings run the path-product DP, domains the ordering criterion,
    any other ring the DP for at most ``bound`` lengths."""
    ring = algebra.ring
    if algebra.dimension == 0:
        return Nilpotent(1)
    if ring.is_finite:
        return path_product_dp(algebra, step_guard)
    if ring.is_domain:
        return _domain_verdict(algebra)
    if bound is None:
        raise BoundRequiredError(
            f'{ring.descriptor} is neither finite nor a domain, a bound is required'
        )
    return path_product_dp(algebra, bound)


def quotient_reduction_check(algebra: EvolutionAlgebra, bound: Optional[int] = None) -> bool:
    """``A`` is nilpotent iff ``A / I_1`` is, with ``I_1`` spanned by the generators squaring to 0."""
    ring = algebra.ring
    zero_squares = [
        i
        for i in range(1, algebra.dimension + 1)
        if all(ring.is_zero(c) for c in algebra.matrix.column(i - 1))
    ]
    quotient = algebra.quotient_by_basis_ideal(zero_squares)
    whole = is_nilpotent(algebra, bound)
    reduced = is_nilpotent(quotient, bound)
    if isinstance(whole, Unknown) or isinstance(reduced, Unknown):
        raise BoundRequiredError('quotient check needs decidable verdicts on both sides')
    if isinstance(whole, Nilpotent) != isinstance(reduced, Nilpotent):
        raise InvariantViolation(
            f'A is {type(whole).__name__} but A/I_1 is {type(reduced).__name__}'
        )
    return isinstance(whole, Nilpotent)
