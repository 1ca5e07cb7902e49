"""
Canonical forms: integer-primitive, sign-normalized, squarefree parts and
contents, plus reduction modulo a prime.
"""

from functools import reduce
from math import gcd, lcm
from typing import Iterable, List, Tuple

from sympy import isprime
from sympy.polys.domains import GF, QQ
from sympy.polys.orderings import lex
from sympy.polys.rings import PolyElement, PolyRing

from src.algebra.context import Context
from src.algebra.polynomial import Polynomial
from src.errors import BadPrimeError, RegulusError


def integer_primitive(poly: Polynomial) -> Polynomial:
    """Scale to integer coefficients with gcd 1 and a positive leading term."""
    if poly.is_zero:
        return poly
    coeffs = list(poly.rep.values())
    den = reduce(lcm, (int(c.denominator) for c in coeffs), 1)
    num = reduce(gcd, (int(c.numerator) * (den // int(c.denominator)) for c in coeffs), 0)
    scale = QQ(den, num)
    if poly.leading_term_coefficient() < 0:
        scale = -scale
    return Polynomial(poly.context, poly.rep * scale)


def squarefree_primitive(poly: Polynomial) -> Polynomial:
    """Squarefree part, integer-primitive with positive leading term.

    Nonzero constants map to 1.
    """
    if poly.is_zero:
        raise RegulusError("squarefree part of the zero polynomial")
    if poly.is_constant:
        return Polynomial.one(poly.context)
    rep = poly.rep
    g = rep
    for name in poly.indeterminates():
        g = g.gcd(poly.derivative(name).rep)
        if g.is_ground:
            break
    if not g.is_ground:
        rep = rep.exquo(g)
    return integer_primitive(Polynomial(poly.context, rep))


def content(poly: Polynomial, name: str) -> Polynomial:
    """Gcd of the coefficients with respect to `name`."""
    if poly.is_zero:
        return poly
    coeffs = [c.rep for c in poly.coefficients(name).values()]
    g = reduce(lambda a, b: a.gcd(b), coeffs)
    return integer_primitive(Polynomial(poly.context, g))


def primitive_part(poly: Polynomial, name: str) -> Polynomial:
    if poly.is_zero:
        return poly
    return integer_primitive(poly.exquo(content(poly, name)))


def parametric_content(poly: Polynomial) -> Polynomial:
    """Gcd of the coefficients of `poly` seen as a polynomial in the variables.

    The result lies in K[U]; it is 1 when the polynomial has no parameter factor.
    """
    context = poly.context
    if poly.is_zero or poly.cls == 0:
        return Polynomial.one(context)
    d = context.nparams
    groups: dict = {}
    for m, c in poly.rep.items():
        groups.setdefault(m[d:], {})[m[:d] + (0,) * context.nvars] = c
    ring = context.ring
    g = reduce(lambda a, b: a.gcd(b), (ring.from_dict(t) for t in groups.values()))
    result = integer_primitive(Polynomial(context, g))
    return Polynomial.one(context) if result.is_constant else result


def _strip_monomial(poly: Polynomial) -> Tuple[List[Polynomial], Polynomial]:
    lowest = [min(e) for e in zip(*poly.rep.keys())]
    if not any(lowest):
        return [], poly
    context = poly.context
    gens = [Polynomial.gen(context, context.names[i]) for i, e in enumerate(lowest) if e]
    shift = tuple(lowest)
    rep = context.ring.from_dict({tuple(a - b for a, b in zip(m, shift)): c for m, c in poly.rep.items()})
    return gens, Polynomial(context, rep)


def split_factors(poly: Polynomial) -> List[Polynomial]:
    """Squarefree pieces of `poly` from monomial and content splitting.

    Monomial factors come off first, then the content with respect to each
    occurring indeterminate, highest first, recursively. Each remaining
    piece is primitive in every indeterminate and is returned as its
    squarefree primitive part. Constants give [].
    """
    if poly.is_zero:
        raise RegulusError("split of the zero polynomial")
    if poly.is_constant:
        return []
    pieces, rest = _strip_monomial(poly)
    for name in reversed(rest.indeterminates()):
        c = content(rest, name)
        if not c.is_constant:
            return list(dict.fromkeys(pieces + split_factors(c) + split_factors(rest.exquo(c))))
    if not rest.is_constant:
        pieces.append(squarefree_primitive(rest))
    return list(dict.fromkeys(pieces))


def refine_coprime(base: List[Polynomial], poly: Polynomial) -> None:
    """Add the pieces of `poly` to `base`, keeping its members pairwise coprime.

    Members of `base` are squarefree and integer-primitive; their product is
    squarefree and vanishes exactly where the absorbed polynomials do.
    """
    pending = split_factors(poly)
    while pending:
        f = pending.pop()
        if f.is_constant or f in base:
            continue
        for i, e in enumerate(base):
            g = e.rep.gcd(f.rep)
            if g.is_ground:
                continue
            common = integer_primitive(Polynomial(poly.context, g))
            del base[i]
            pending.extend(p for p in (e.exquo(common), f.exquo(common)) if not p.is_constant)
            pending.append(common)
            break
        else:
            base.append(integer_primitive(f))


def coprime_factors(polys: Iterable[Polynomial]) -> List[Polynomial]:
    base: List[Polynomial] = []
    for p in polys:
        refine_coprime(base, p)
    return base


def squarefree_product(context: Context, factors: Iterable[Polynomial]) -> Polynomial:
    """Integer-primitive product of pairwise coprime squarefree factors; 1 when empty."""
    product = Polynomial.one(context)
    for f in factors:
        product = product * f
    return integer_primitive(product)


def _prime_ring(poly: Polynomial, p: int) -> PolyRing:
    return PolyRing(list(poly.context.names), GF(p), lex)


def mod_p(poly: Polynomial, p: int) -> PolyElement:
    """Coefficient-wise reduction into F_p[U, X] as a sympy element."""
    if not isprime(p):
        raise BadPrimeError(p, "not a prime")
    ring = _prime_ring(poly, p)
    field = ring.domain
    terms = {}
    for m, c in poly.rep.items():
        den = int(c.denominator)
        if den % p == 0:
            raise BadPrimeError(p)
        terms[m] = field(int(c.numerator)) / field(den)
    return ring.from_dict(terms)
