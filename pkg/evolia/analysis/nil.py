import itertools
from concurrent.futures import ThreadPoolExecutor
from typing import Optional, Tuple

import numpy as np
from jina.logging.logger import JinaLogger

from ..algebra import Element, EvolutionAlgebra
from ..errors import BoundRequiredError, EnumerationError
from ..rings import Index, ModularRing, NeverNilpotent
from .verdicts import (
    DiagFail,
    DiagPass,
    Nil,
    NilAlgebra,
    NilAlgebraVerdict,
    NilElementVerdict,
    NotNil,
    NotNilAlgebra,
    Skipped,
    Unknown,
)

logger = JinaLogger('evolia.analysis.nil')

DEFAULT_NIL_CAP = 10**6


def diag_nil_precheck(algebra: EvolutionAlgebra, bound: int = 4096):
    """Fails on the first generator whose ``c_ii`` is not nilpotent (then ``A`` is not nil)."""
    ring = algebra.ring
    for i in range(1, algebra.dimension + 1):
        c = algebra.coefficient(i, i)
        index = ring.nilpotency_index(c, bound)
        if isinstance(index, NeverNilpotent):
            return DiagFail(i, c)
        if not isinstance(index, Index):
            logger.warning(f'c_{i}{i} = {ring.format(c)} undecided within {bound} powers')
    return DiagPass()


def is_nil_element(a: Element, bound: Optional[int] = None) -> NilElementVerdict:
    """Iterate ``beta_(k+1) = C_alpha beta_k`` from ``beta_0 = alpha``.

    ``beta_k`` is the coefficient vector of ``a^(k+1)``. Over finite rings the
    sequence is eventually periodic, so a repeated state proves ``a`` is not nil.
    """
    algebra = a.algebra
    ring = algebra.ring
    if not ring.is_finite and bound is None:
        raise BoundRequiredError(f'{ring.descriptor} is infinite, a bound is required')
    if a.is_zero:
        return Nil(1)
    c = algebra.c_alpha(a)
    beta = a.coeffs
    seen = {beta: 0}
    k = 0
    while True:
        beta = c.matvec(beta)
        k += 1
        if all(ring.is_zero(x) for x in beta):
            return Nil(k + 1)
        if beta in seen:
            return NotNil(seen[beta], k)
        if bound is not None and not ring.is_finite and k >= bound:
            return Unknown(bound)
        seen[beta] = k


def _vectorizable(algebra: EvolutionAlgebra) -> bool:
    ring = algebra.ring
    return isinstance(ring, ModularRing) and algebra.dimension * ring.modulus**2 < 2**62


def vector_prepass(algebra: EvolutionAlgebra, steps: int) -> np.ndarray:
    """Exponents of every ``alpha`` in ``(Z/m)^N`` that reaches zero within ``steps`` iterations.

    Entry ``r`` follows the lexicographic enumeration order; ``0`` means unresolved.
    """
    m = algebra.ring.modulus
    n = algebra.dimension
    total = m**n
    alphas = np.stack(np.unravel_index(np.arange(total, dtype=np.int64), (m,) * n), axis=1)
    c_t = np.array(algebra.matrix.rows, dtype=np.int64).T
    exponents = np.zeros(total, dtype=np.int64)
    exponents[~alphas.any(axis=1)] = 1
    beta = alphas.copy()
    for k in range(1, steps + 1):
        beta = (((alphas * beta) % m) @ c_t) % m
        hit = (exponents == 0) & ~beta.any(axis=1)
        exponents[hit] = k + 1
    return exponents


def _scan(
    algebra: EvolutionAlgebra,
    start: int,
    stop: int,
    resolved: Optional[np.ndarray],
) -> Tuple[int, Optional[Tuple[int, Element, NotNil]]]:
    elements = list(algebra.ring.elements())
    candidates = itertools.islice(
        itertools.product(elements, repeat=algebra.dimension), start, stop
    )
    max_exponent = 1
    for offset, coeffs in enumerate(candidates):
        position = start + offset
        if resolved is not None and resolved[position]:
            max_exponent = max(max_exponent, int(resolved[position]))
            continue
        alpha = Element(algebra, coeffs)
        verdict = is_nil_element(alpha)
        if isinstance(verdict, NotNil):
            return max_exponent, (position, alpha, verdict)
        max_exponent = max(max_exponent, verdict.exponent)
    return max_exponent, None


def is_nil_algebra(
    algebra: EvolutionAlgebra,
    cap: int = DEFAULT_NIL_CAP,
    parallel: bool = False,
    workers: int = 4,
    prepass_steps: int = 64,
) -> NilAlgebraVerdict:
    """Run :func:`is_nil_element` on every ``alpha`` in ``R^N``.

    The first witness in enumeration order is reported, also when the scan is
    split across threads.
    """
    ring = algebra.ring
    if not ring.is_finite:
        raise EnumerationError(f'enumeration requires finite ring, {ring.descriptor} is infinite')
    total = ring.cardinality**algebra.dimension
    if total > cap:
        logger.warning(f'nil scan skipped: |R|^N = {total} exceeds the cap {cap}')
        return Skipped(f'|R|^N = {total} exceeds the cap {cap}', total)
    if algebra.dimension == 0:
        return NilAlgebra(1, 1)

    resolved = None
    if prepass_steps > 0 and _vectorizable(algebra):
        resolved = vector_prepass(algebra, prepass_steps)
        logger.debug(
            f'pre-pass resolved {int(np.count_nonzero(resolved))} of {total} elements'
        )

    if parallel and workers > 1 and total > workers:
        chunk = -(-total // workers)
        bounds = [(lo, min(lo + chunk, total)) for lo in range(0, total, chunk)]
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda b: _scan(algebra, b[0], b[1], resolved), bounds))
    else:
        parts = [_scan(algebra, 0, total, resolved)]

    witnesses = [w for _, w in parts if w is not None]
    if witnesses:
        _, alpha, verdict = min(witnesses, key=lambda w: w[0])
        return NotNilAlgebra(alpha, verdict)
    return NilAlgebra(max(m for m, _ in parts), total)
