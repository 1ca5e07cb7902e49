"""
Indeterminate context: parameters u_1..u_d followed by variables x_1..x_n.
"""

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Tuple

from sympy.polys.domains import QQ
from sympy.polys.orderings import lex
from sympy.polys.rings import PolyRing

from src.errors import ContextMismatchError


IDENTIFIER = re.compile(r"^[A-Za-z][A-Za-z0-9_]*$")


@dataclass(frozen=True)
class Context:
    """Ordered parameters and variables shared by every polynomial of a system.

    The ring generators are ordered params first, then variables, so that
    `x_1 < x_2 < ... < x_n` and every parameter sits below every variable.
    """

    params: Tuple[str, ...]
    vars: Tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "params", tuple(self.params))
        object.__setattr__(self, "vars", tuple(self.vars))
        names = self.params + self.vars
        for name in names:
            if not IDENTIFIER.match(name):
                raise ContextMismatchError(f"invalid identifier '{name}'")
        if len(set(names)) != len(names):
            raise ContextMismatchError(f"duplicate indeterminate in {list(names)}")

    @cached_property
    def ring(self) -> PolyRing:
        return PolyRing(list(self.names), QQ, lex)

    @property
    def names(self) -> Tuple[str, ...]:
        return self.params + self.vars

    @property
    def nparams(self) -> int:
        return len(self.params)

    @property
    def nvars(self) -> int:
        return len(self.vars)

    def index(self, name: str) -> int:
        """Ring generator index of an indeterminate."""
        try:
            return self.names.index(name)
        except ValueError:
            raise ContextMismatchError(f"unknown indeterminate '{name}'") from None

    def var_class(self, name: str) -> int:
        """1-based position of a variable in the variable order."""
        if name not in self.vars:
            raise ContextMismatchError(f"'{name}' is not a variable of this context")
        return self.vars.index(name) + 1

    def var_name(self, cls: int) -> str:
        return self.vars[cls - 1]

    def with_vars(self, order: Iterable[str]) -> "Context":
        """Same indeterminates with the variables listed in a new order."""
        order = tuple(order)
        if sorted(order) != sorted(self.vars):
            raise ContextMismatchError(
                f"ordering {list(order)} is not a permutation of {list(self.vars)}"
            )
        return Context(self.params, order)

    def __str__(self) -> str:
        return f"params=[{', '.join(self.params)}] vars=[{', '.join(self.vars)}]"
