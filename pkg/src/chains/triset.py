"""
Triangular sets, ascending chains and structural predicates.
"""

from dataclasses import dataclass
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

from src.algebra.context import Context
from src.algebra.polynomial import Polynomial, common_context
from src.errors import ChainError, ContextMismatchError


def is_triangular(polys: Sequence[Polynomial]) -> bool:
    """Non-empty, no class-0 member, strictly increasing classes."""
    if not polys:
        return False
    classes = [p.cls for p in polys]
    if classes[0] == 0:
        return False
    return all(a < b for a, b in zip(classes, classes[1:]))


def is_reduced(poly: Polynomial, chain: Sequence[Polynomial]) -> bool:
    """deg(poly, mvar(T_i)) < deg(T_i) for every member; false when a member has class 0."""
    if any(t.cls == 0 for t in chain):
        return False
    return all(poly.degree(t.mvar) < t.main_degree for t in chain)


def is_ascending_chain(polys: Sequence[Polynomial]) -> bool:
    """A single class-0 polynomial, or a triangular set whose members are reduced w.r.t. their predecessors."""
    if len(polys) == 1 and polys[0].cls == 0:
        return not polys[0].is_zero
    if not is_triangular(polys):
        return False
    return all(is_reduced(p, polys[:i]) for i, p in enumerate(polys))


@dataclass(frozen=True)
class TriangularSet:
    """Polynomials with strictly increasing classes T_1 < ... < T_r.

    The empty set is allowed internally as the start of incremental
    constructions; it has no members and no main variables.
    """

    context: Context
    polys: Tuple[Polynomial, ...] = ()

    def __post_init__(self):
        polys = tuple(self.polys)
        object.__setattr__(self, "polys", polys)
        for p in polys:
            if p.context != self.context:
                raise ContextMismatchError(f"{p} is not in {self.context}")
        if polys and not is_triangular(polys):
            raise ChainError(f"not a triangular set: {[str(p) for p in polys]}")

    @classmethod
    def of(cls, polys: Iterable[Polynomial], context: Optional[Context] = None) -> "TriangularSet":
        polys = tuple(polys)
        context = common_context(polys) or context
        if context is None:
            raise ChainError("cannot infer the context of an empty triangular set")
        return cls(context, polys)

    def __iter__(self) -> Iterator[Polynomial]:
        return iter(self.polys)

    def __len__(self) -> int:
        return len(self.polys)

    def __getitem__(self, i: int) -> Polynomial:
        return self.polys[i]

    @property
    def mvars(self) -> Tuple[str, ...]:
        return tuple(p.mvar for p in self.polys)

    @property
    def classes(self) -> Tuple[int, ...]:
        return tuple(p.cls for p in self.polys)

    @property
    def ranks(self) -> Tuple[Tuple[str, int], ...]:
        return tuple(p.rank for p in self.polys)

    @property
    def free_vars(self) -> Tuple[str, ...]:
        """Variables that are not main variables of the set."""
        mv = set(self.mvars)
        return tuple(v for v in self.context.vars if v not in mv)

    @property
    def dim_defect(self) -> int:
        return self.context.nvars - len(self.polys)

    def initials(self) -> Tuple[Polynomial, ...]:
        return tuple(p.initial for p in self.polys)

    def initial_product(self) -> Polynomial:
        product = Polynomial.one(self.context)
        for init in self.initials():
            product = product * init
        return product

    def lower(self, i: int) -> "TriangularSet":
        """The first i members, T_{<i+1}."""
        return TriangularSet(self.context, self.polys[:i])

    def member_for(self, name: str) -> int:
        """Index of the member whose main variable is `name`."""
        for i, p in enumerate(self.polys):
            if p.mvar == name:
                return i
        raise ChainError(f"no member with main variable {name}")

    def top_var(self, poly: Polynomial) -> Optional[str]:
        """Highest main variable of the set occurring in `poly`, None if none occurs."""
        occurring = set(poly.indeterminates())
        for p in reversed(self.polys):
            if p.mvar in occurring:
                return p.mvar
        return None

    def append(self, poly: Polynomial) -> "TriangularSet":
        return TriangularSet(self.context, self.polys + (poly,))

    def merge(self, other: "TriangularSet") -> "TriangularSet":
        """Union of two sets with disjoint main variables, re-sorted by class."""
        if set(self.mvars) & set(other.mvars):
            raise ChainError(f"main variables collide: {self.mvars} and {other.mvars}")
        merged = sorted(self.polys + other.polys, key=lambda p: p.cls)
        return TriangularSet(self.context, tuple(merged))

    def sort_key(self) -> Tuple:
        return tuple((p.cls, p.main_degree, len(p), p.to_str()) for p in self.polys)

    def to_lines(self) -> List[str]:
        return [p.to_str() for p in self.polys]

    def __str__(self) -> str:
        return "{" + ", ".join(self.to_lines()) + "}"


@dataclass(frozen=True)
class AscendingChain:
    """A Wu chain: either triangular and reduced, or a single contradictory K[U] polynomial."""

    context: Context
    polys: Tuple[Polynomial, ...]
    contradictory: bool = False

    @classmethod
    def contradiction(cls, poly: Polynomial) -> "AscendingChain":
        if poly.is_zero:
            raise ChainError("a contradictory chain needs a nonzero polynomial")
        if poly.cls != 0:
            raise ChainError(f"contradictory chain member {poly} involves variables")
        return cls(poly.context, (poly,), True)

    @classmethod
    def from_polys(cls, polys: Sequence[Polynomial]) -> "AscendingChain":
        polys = tuple(polys)
        if not is_ascending_chain(polys):
            raise ChainError(f"not an ascending chain: {[str(p) for p in polys]}")
        if polys[0].cls == 0:
            return cls.contradiction(polys[0])
        return cls(polys[0].context, polys, False)

    @property
    def triangular(self) -> TriangularSet:
        if self.contradictory:
            raise ChainError("a contradictory chain is not a triangular set")
        return TriangularSet(self.context, self.polys)

    @property
    def poly(self) -> Polynomial:
        """The K[U] polynomial of a contradictory chain."""
        if not self.contradictory:
            raise ChainError("only contradictory chains carry a single K[U] polynomial")
        return self.polys[0]

    def sort_key(self) -> Tuple:
        ranks = tuple((p.cls, p.main_degree if p.cls else 0, len(p), p.to_str()) for p in self.polys)
        return (self.contradictory, ranks)

    def __iter__(self) -> Iterator[Polynomial]:
        return iter(self.polys)

    def __len__(self) -> int:
        return len(self.polys)

    def __str__(self) -> str:
        return "{" + ", ".join(p.to_str() for p in self.polys) + "}"
