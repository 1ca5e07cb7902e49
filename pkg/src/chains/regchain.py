"""
Regular chains, regular systems and their predicates.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Tuple, Union

from src.algebra.division import sprem, sres_support
from src.algebra.polynomial import Polynomial
from src.chains.triset import TriangularSet
from src.errors import ChainError, ContextMismatchError


Scalar = Union[int, Fraction]


def is_regular_chain(chain: TriangularSet) -> bool:
    """sres(I(T_i), T_{<i}) != 0 for every member."""
    for i, member in enumerate(chain):
        if sres_support(member.initial, chain.lower(i)).is_zero:
            return False
    return True


def is_zero_dimensional(chain: TriangularSet, variables: Optional[Iterable[str]] = None) -> bool:
    """Regular with a main variable for every variable of `variables` (default: all)."""
    wanted = set(variables if variables is not None else chain.context.vars)
    return set(chain.mvars) == wanted and len(chain) == len(wanted) and is_regular_chain(chain)


def is_regular_system(chain: TriangularSet, inequation: Polynomial) -> bool:
    return is_regular_chain(chain) and not sres_support(inequation, chain).is_zero


def in_saturation(poly: Polynomial, chain: TriangularSet) -> bool:
    """Membership in sat(T) through sprem(F, T) = 0."""
    return sprem(poly, chain).is_zero


@dataclass(frozen=True)
class RegularChain:
    """A triangular set validated as a regular chain."""

    chain: TriangularSet

    def __post_init__(self):
        if not len(self.chain):
            raise ChainError("a regular chain needs at least one member")
        if not is_regular_chain(self.chain):
            raise ChainError(f"not a regular chain: {self.chain}")

    def __iter__(self):
        return iter(self.chain)

    def __len__(self) -> int:
        return len(self.chain)


@dataclass(frozen=True)
class RegularSystem:
    """A pair [T, H]; its zero set is the zeros of T where H does not vanish.

    Construction does not validate; `is_regular` runs the sres checks.
    """

    chain: TriangularSet
    inequation: Polynomial

    @property
    def context(self):
        return self.chain.context

    @property
    def is_regular(self) -> bool:
        return is_regular_system(self.chain, self.inequation)

    def sort_key(self) -> Tuple:
        return (self.chain.sort_key(), self.inequation.to_str())

    def to_text(self) -> str:
        members = ", ".join(self.chain.to_lines())
        return f"[{{{members}}}, {self.inequation.to_str()}]"


def _specialize_params(poly: Polynomial, point: Mapping[str, Scalar]) -> Polynomial:
    params = poly.context.params
    if set(point) != set(params):
        raise ContextMismatchError(f"point assigns {sorted(point)} but parameters are {list(params)}")
    return poly.specialize(point)


def specializes_well(system: RegularSystem, point: Mapping[str, Scalar]) -> bool:
    """T(a) keeps every rank, is a regular chain, and sres(H(a), T(a)) != 0."""
    chain = system.chain
    specialized = tuple(_specialize_params(p, point) for p in chain)
    for before, after in zip(chain, specialized):
        if after.cls == 0 or after.rank != before.rank:
            return False
    special_chain = TriangularSet(chain.context, specialized)
    if not is_regular_chain(special_chain):
        return False
    h = _specialize_params(system.inequation, point)
    return not sres_support(h, special_chain).is_zero
