"""Verdicts returned by the analyses; every negative verdict carries its evidence."""
from dataclasses import dataclass, field
from typing import Optional, Tuple, Union

from bidict import bidict

from ..algebra import Element


@dataclass(frozen=True)
class DiagPass:
    pass


@dataclass(frozen=True)
class DiagFail:
    index: int
    value: object


@dataclass(frozen=True)
class Unknown:
    bound: int


# -- elements ---------------------------------------------------------------


@dataclass(frozen=True)
class Nil:
    """Smallest ``k`` with ``a^k = 0``."""

    exponent: int


@dataclass(frozen=True)
class NotNil:
    """``beta_start == beta_end`` where ``beta_j`` is the coefficient vector of ``a^(j+1)``.

    ``end`` is the first index whose state was seen before, so the pair is
    unique for a given element.
    """

    start: int
    end: int

    @property
    def period(self) -> int:
        return self.end - self.start


NilElementVerdict = Union[Nil, NotNil, Unknown]


# -- algebras ---------------------------------------------------------------


@dataclass(frozen=True)
class NilAlgebra:
    max_exponent: int
    checked: int


@dataclass(frozen=True)
class NotNilAlgebra:
    witness: Element
    verdict: NotNil


@dataclass(frozen=True)
class Skipped:
    reason: str
    size: int


NilAlgebraVerdict = Union[NilAlgebra, NotNilAlgebra, Skipped]


@dataclass(frozen=True)
class Nilpotent:
    """``A^exponent = (0)``; ``path``/``product`` show ``A^(exponent-1) != (0)``."""

    exponent: int
    path: Optional[Tuple[int, ...]] = None
    product: object = None
    method: str = 'dp'


@dataclass(frozen=True)
class NotNilpotent:
    """Nonzero coefficient product along ``path``.

    For ``method == 'dp'`` the path-product states at lengths ``cycle_start``
    and ``cycle_end`` coincide; for ``method == 'domain'`` the path is a closed
    walk whose powers never vanish over a domain.
    """

    path: Tuple[int, ...]
    product: object
    cycle_start: Optional[int] = None
    cycle_end: Optional[int] = None
    method: str = 'dp'


NilpotencyVerdict = Union[Nilpotent, NotNilpotent, Unknown]


@dataclass(frozen=True)
class Filtration:
    layers: Tuple[Tuple[int, ...], ...]
    residue: Tuple[int, ...]

    @property
    def complete(self) -> bool:
        return not self.residue

    @property
    def order(self) -> Optional[Tuple[int, ...]]:
        if not self.complete:
            return None
        return tuple(i for layer in self.layers for i in layer)


@dataclass(frozen=True)
class Permutation:
    """``order[p-1]`` is the original index placed at position ``p``."""

    order: Tuple[int, ...]
    positions: bidict = field(compare=False, hash=False)

    @classmethod
    def from_order(cls, order) -> 'Permutation':
        order = tuple(order)
        return cls(order, bidict({i: p for p, i in enumerate(order, start=1)}))


@dataclass(frozen=True)
class StronglyNilpotent:
    """Every ``exponent``-fold product vanishes however it is associated.

    ``associated_index`` is the smallest ``m`` with ``L(A)^m = 0``.
    """

    exponent: int
    associated_index: int
    chain: Tuple[int, ...]


@dataclass(frozen=True)
class NotStronglyNilpotent:
    """``L(A)^k`` stops shrinking at a nonzero dimension at ``stable_step``."""

    chain: Tuple[int, ...]
    stable_step: int


@dataclass(frozen=True)
class Unsupported:
    reason: str


StrongNilpotencyVerdict = Union[StronglyNilpotent, NotStronglyNilpotent, Unsupported]
