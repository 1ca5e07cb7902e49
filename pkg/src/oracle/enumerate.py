"""
Brute-force enumeration of F_p-rational points.
"""

from typing import Dict, Iterable, List, Optional, Set, Tuple

import numpy as np

from src.algebra.context import Context
from src.algebra.normalize import mod_p
from src.algebra.polynomial import Polynomial
from src.errors import BudgetExceededError, ContextMismatchError


ENUMERATION_BUDGET = 10**7


class FiniteFieldGrid:
    """All points of F_p^n for the variables of a context, as numpy columns.

    Polynomials are evaluated on every point at once; parameters must have
    been specialized away before evaluation.
    """

    def __init__(self, context: Context, p: int, budget: int = ENUMERATION_BUDGET):
        n = context.nvars
        size = p ** n
        if size > budget:
            raise BudgetExceededError(size, budget)
        self.context = context
        self.p = p
        self.size = size
        self.points = np.indices((p,) * n, dtype=np.int64).reshape(n, -1)
        self._powers: Dict[Tuple[int, int], np.ndarray] = {}

    def _power(self, k: int, e: int) -> np.ndarray:
        key = (k, e)
        if key not in self._powers:
            if e == 1:
                self._powers[key] = self.points[k]
            else:
                self._powers[key] = (self._power(k, e - 1) * self.points[k]) % self.p
        return self._powers[key]

    def evaluate(self, poly: Polynomial) -> np.ndarray:
        """Residues of `poly` at every grid point."""
        if poly.context != self.context:
            raise ContextMismatchError(f"{poly.context} vs {self.context}")
        d = self.context.nparams
        values = np.zeros(self.size, dtype=np.int64)
        for monom, coeff in mod_p(poly, self.p).items():
            if any(monom[:d]):
                raise ContextMismatchError(f"{poly} still involves parameters")
            term = np.full(self.size, int(coeff) % self.p, dtype=np.int64)
            for k, e in enumerate(monom[d:]):
                if e:
                    term = (term * self._power(k, e)) % self.p
            values = (values + term) % self.p
        return values

    def zero_mask(self, polys: Iterable[Polynomial]) -> np.ndarray:
        mask = np.ones(self.size, dtype=bool)
        for poly in polys:
            mask &= self.evaluate(poly) == 0
        return mask

    def nonzero_mask(self, poly: Polynomial) -> np.ndarray:
        return self.evaluate(poly) != 0

    def point(self, index: int) -> Tuple[int, ...]:
        return tuple(int(v) for v in self.points[:, index])

    def points_of(self, mask: np.ndarray) -> Set[Tuple[int, ...]]:
        return {self.point(int(i)) for i in np.flatnonzero(mask)}


def enumerate_variety_mod_p(polys: Iterable[Polynomial], p: int,
                            inequation: Optional[Polynomial] = None,
                            context: Optional[Context] = None,
                            budget: int = ENUMERATION_BUDGET) -> Set[Tuple[int, ...]]:
    """Points of F_p^n where every polynomial vanishes (and `inequation` does not)."""
    polys: List[Polynomial] = list(polys)
    context = context or (polys[0].context if polys else None)
    if context is None:
        raise ContextMismatchError("cannot infer the context of an empty system")
    grid = FiniteFieldGrid(context, p, budget)
    mask = grid.zero_mask(polys)
    if inequation is not None:
        mask &= grid.nonzero_mask(inequation)
    return grid.points_of(mask)
