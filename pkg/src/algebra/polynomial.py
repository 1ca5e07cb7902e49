"""
Multivariate polynomials over Q in a fixed Context.

The representation is a sympy PolyElement over QQ in the context ring; the
recursive view with respect to one indeterminate is built on demand.
"""

from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Tuple, Union

from sympy.polys.domains import QQ
from sympy.polys.rings import PolyElement

from src.algebra.context import Context
from src.errors import ConstantClassError, ContextMismatchError


Scalar = Union[int, Fraction]


def _monomial_key(monom: Tuple[int, ...]) -> Tuple[int, ...]:
    # x_n is the most significant position, the first parameter the least
    return monom[::-1]


def _coerce(value: Scalar):
    if isinstance(value, Fraction):
        return QQ(value.numerator, value.denominator)
    return QQ(int(value))


class Polynomial:
    """Immutable polynomial bound to a Context."""

    __slots__ = ("context", "rep")

    def __init__(self, context: Context, rep: PolyElement):
        self.context = context
        self.rep = rep

    # construction

    @classmethod
    def zero(cls, context: Context) -> "Polynomial":
        return cls(context, context.ring.zero)

    @classmethod
    def one(cls, context: Context) -> "Polynomial":
        return cls(context, context.ring.one)

    @classmethod
    def constant(cls, context: Context, value: Scalar) -> "Polynomial":
        return cls(context, context.ring.ground_new(_coerce(value)))

    @classmethod
    def gen(cls, context: Context, name: str) -> "Polynomial":
        return cls(context, context.ring.gens[context.index(name)])

    @classmethod
    def from_terms(cls, context: Context, terms: Mapping[Tuple[int, ...], Scalar]) -> "Polynomial":
        return cls(context, context.ring.from_dict({m: _coerce(c) for m, c in terms.items()}))

    def _wrap(self, rep: PolyElement) -> "Polynomial":
        return Polynomial(self.context, rep)

    def _lift(self, other) -> PolyElement:
        if isinstance(other, Polynomial):
            if other.context != self.context:
                raise ContextMismatchError(f"{self.context} vs {other.context}")
            return other.rep
        if isinstance(other, (int, Fraction)):
            return self.context.ring.ground_new(_coerce(other))
        return NotImplemented

    def to_context(self, context: Context) -> "Polynomial":
        """Re-embed into a context with the same indeterminates in another order."""
        if context == self.context:
            return self
        if set(context.names) != set(self.context.names) or context.params != self.context.params:
            raise ContextMismatchError(f"cannot move {self.context} to {context}")
        return Polynomial(context, self.rep.set_ring(context.ring))

    # arithmetic

    def __add__(self, other):
        rep = self._lift(other)
        return NotImplemented if rep is NotImplemented else self._wrap(self.rep + rep)

    __radd__ = __add__

    def __sub__(self, other):
        rep = self._lift(other)
        return NotImplemented if rep is NotImplemented else self._wrap(self.rep - rep)

    def __rsub__(self, other):
        rep = self._lift(other)
        return NotImplemented if rep is NotImplemented else self._wrap(rep - self.rep)

    def __mul__(self, other):
        rep = self._lift(other)
        return NotImplemented if rep is NotImplemented else self._wrap(self.rep * rep)

    __rmul__ = __mul__

    def __neg__(self) -> "Polynomial":
        return self._wrap(-self.rep)

    def __pow__(self, exponent: int) -> "Polynomial":
        if exponent < 0:
            raise ValueError("negative exponent")
        return self._wrap(self.rep ** exponent)

    def exquo(self, other: "Polynomial") -> "Polynomial":
        """Exact quotient; raises if `other` does not divide self."""
        return self._wrap(self.rep.exquo(self._lift(other)))

    def divides(self, other: "Polynomial") -> bool:
        """True when self divides `other` exactly."""
        if self.is_zero:
            return other.is_zero
        _, r = other.rep.div(self.rep)
        return not r

    # comparison

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.context == other.context and self.rep == other.rep
        if isinstance(other, (int, Fraction)):
            return self.rep == self._lift(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.context, frozenset(self.rep.items())))

    def __bool__(self) -> bool:
        return bool(self.rep)

    # structure

    @property
    def is_zero(self) -> bool:
        return not self.rep

    @property
    def is_constant(self) -> bool:
        """True for rational constants (no indeterminate occurs)."""
        return all(not any(m) for m in self.rep.keys())

    def constant_value(self) -> Fraction:
        if not self.is_constant:
            raise ValueError(f"{self} is not a constant")
        c = self.rep.get(self.context.ring.zero_monom, QQ.zero)
        return Fraction(int(c.numerator), int(c.denominator))

    def __len__(self) -> int:
        return len(self.rep)

    def terms(self) -> List[Tuple[Tuple[int, ...], Fraction]]:
        """Terms in canonical order (descending lex with x_n most significant)."""
        items = sorted(self.rep.items(), key=lambda t: _monomial_key(t[0]), reverse=True)
        return [(m, Fraction(int(c.numerator), int(c.denominator))) for m, c in items]

    def leading_term_coefficient(self) -> Fraction:
        """Coefficient of the first term in canonical order."""
        if self.is_zero:
            return Fraction(0)
        return self.terms()[0][1]

    def indeterminates(self) -> Tuple[str, ...]:
        """Names occurring in the polynomial, in context order."""
        names = self.context.names
        used = set()
        for m in self.rep.keys():
            used.update(i for i, e in enumerate(m) if e)
        return tuple(names[i] for i in sorted(used))

    def degree(self, name: str) -> int:
        """Degree in one indeterminate; the zero polynomial has degree -1."""
        if self.is_zero:
            return -1
        i = self.context.index(name)
        return max(m[i] for m in self.rep.keys())

    @property
    def cls(self) -> int:
        """Largest k such that x_k occurs, 0 when only parameters occur."""
        d = self.context.nparams
        best = 0
        for m in self.rep.keys():
            for k in range(len(m) - 1, d - 1, -1):
                if m[k]:
                    best = max(best, k - d + 1)
                    break
        return best

    @property
    def mvar(self) -> str:
        cls = self.cls
        if cls == 0:
            raise ConstantClassError("mvar")
        return self.context.var_name(cls)

    @property
    def main_degree(self) -> int:
        return self.degree(self.mvar)

    @property
    def rank(self) -> Tuple[str, int]:
        return (self.mvar, self.main_degree)

    @property
    def initial(self) -> "Polynomial":
        if self.cls == 0:
            raise ConstantClassError("initial")
        return self.leading_coefficient(self.mvar)

    def coefficients(self, name: str) -> Dict[int, "Polynomial"]:
        """Recursive view: exponent of `name` -> coefficient polynomial free of `name`."""
        i = self.context.index(name)
        parts: Dict[int, dict] = {}
        for m, c in self.rep.items():
            parts.setdefault(m[i], {})[m[:i] + (0,) + m[i + 1:]] = c
        ring = self.context.ring
        return {e: self._wrap(ring.from_dict(p)) for e, p in sorted(parts.items())}

    def leading_coefficient(self, name: str) -> "Polynomial":
        if self.is_zero:
            return self
        coeffs = self.coefficients(name)
        return coeffs[max(coeffs)]

    def reductum(self, name: str) -> "Polynomial":
        """Self minus its leading part in `name`."""
        if self.is_zero:
            return self
        i = self.context.index(name)
        top = self.degree(name)
        ring = self.context.ring
        return self._wrap(ring.from_dict({m: c for m, c in self.rep.items() if m[i] != top}))

    def derivative(self, name: str) -> "Polynomial":
        return self._wrap(self.rep.diff(self.context.ring.gens[self.context.index(name)]))

    def times_power(self, name: str, exponent: int) -> "Polynomial":
        """Self multiplied by name^exponent."""
        return self._wrap(self.rep * self.context.ring.gens[self.context.index(name)] ** exponent)

    # evaluation

    def specialize(self, point: Mapping[str, Scalar]) -> "Polynomial":
        """Substitute values for some indeterminates; the context is unchanged."""
        if not point:
            return self
        ring = self.context.ring
        subs = [(ring.gens[self.context.index(name)], _coerce(value)) for name, value in point.items()]
        return self._wrap(self.rep.subs(subs))

    # printing

    def to_str(self) -> str:
        return format_polynomial(self)

    def __str__(self) -> str:
        return self.to_str()

    def __repr__(self) -> str:
        return f"Polynomial({self.to_str()!r})"


def _format_monomial(names: Tuple[str, ...], monom: Tuple[int, ...]) -> str:
    factors = []
    for name, e in zip(names, monom):
        if e == 1:
            factors.append(name)
        elif e > 1:
            factors.append(f"{name}^{e}")
    return "*".join(factors)


def format_polynomial(poly: Polynomial) -> str:
    """Canonical text form; the output parses back to the same polynomial."""
    if poly.is_zero:
        return "0"
    names = poly.context.names
    pieces: List[str] = []
    for monom, coeff in poly.terms():
        negative = coeff < 0
        magnitude = -coeff if negative else coeff
        mono = _format_monomial(names, monom)
        if not mono:
            body = str(magnitude)
        elif magnitude == 1:
            body = mono
        else:
            body = f"{magnitude}*{mono}"
        if not pieces:
            pieces.append(f"-{body}" if negative else body)
        else:
            pieces.append(f"- {body}" if negative else f"+ {body}")
    return " ".join(pieces)


def common_context(polys) -> Optional[Context]:
    """Shared context of a collection, None when empty."""
    context = None
    for p in polys:
        if context is None:
            context = p.context
        elif p.context != context:
            raise ContextMismatchError(f"{context} vs {p.context}")
    return context
