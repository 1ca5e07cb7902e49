"""
Pseudo-division, successive pseudo-remainders and (iterated) resultants.
"""

from typing import List, Optional, Sequence, Tuple

from src.algebra.normalize import coprime_factors, split_factors, squarefree_product
from src.algebra.polynomial import Polynomial
from src.errors import ContextMismatchError, DegreeError, RegulusError


def _check_same(f: Polynomial, g: Polynomial):
    if f.context != g.context:
        raise ContextMismatchError(f"{f.context} vs {g.context}")


def pseudo_divide(f: Polynomial, g: Polynomial, name: Optional[str] = None) -> Tuple[Polynomial, Polynomial, int]:
    """Pseudo-divide f by g in `name` (default mvar(g)).

    Returns (Q, R, k) with lc(g)^k * f = Q*g + R, deg(R) < deg(g) and
    k <= max(deg f - deg g + 1, 0) the number of reduction steps taken.
    """
    _check_same(f, g)
    name = name or g.mvar
    dg = g.degree(name)
    if dg <= 0:
        raise DegreeError(f"divisor has degree {dg} in {name}")
    lc = g.leading_coefficient(name)
    q = Polynomial.zero(f.context)
    r = f
    k = 0
    while not r.is_zero and r.degree(name) >= dg:
        t = r.leading_coefficient(name).times_power(name, r.degree(name) - dg)
        q = q * lc + t
        r = r * lc - t * g
        k += 1
    return q, r, k


def prem(f: Polynomial, g: Polynomial, name: Optional[str] = None) -> Polynomial:
    return pseudo_divide(f, g, name)[1]


def pquo(f: Polynomial, g: Polynomial, name: Optional[str] = None) -> Polynomial:
    return pseudo_divide(f, g, name)[0]


def _prem_exact(f: Polynomial, g: Polynomial, name: str, exponent: int) -> Polynomial:
    # remainder for lc(g)^exponent * f
    _, r, k = pseudo_divide(f, g, name)
    if k < exponent:
        r = r * g.leading_coefficient(name) ** (exponent - k)
    return r


def sprem(f: Polynomial, chain: Sequence[Polynomial]) -> Polynomial:
    """Successive pseudo-remainder by the chain members, highest first."""
    r = f
    for member in reversed(list(chain)):
        if r.is_zero:
            break
        _check_same(r, member)
        r = prem(r, member, member.mvar)
    return r


def resultant(f: Polynomial, g: Polynomial, name: Optional[str] = None) -> Polynomial:
    """Sylvester resultant in `name` (default mvar(g)) by subresultant PRS.

    A side of degree 0 in `name` contributes c^deg(other); two nonzero
    constants give 1. Both inputs zero is an error.
    """
    _check_same(f, g)
    if f.is_zero and g.is_zero:
        raise RegulusError("resultant of two zero polynomials")
    name = name or g.mvar
    zero = Polynomial.zero(f.context)
    if f.is_zero or g.is_zero:
        return zero
    a, b = f.degree(name), g.degree(name)
    if a == 0:
        return f ** b
    if b == 0:
        return g ** a

    A, B = f, g
    sign = 1
    if a < b:
        A, B = B, A
        if a % 2 == 1 and b % 2 == 1:
            sign = -1
    lead = Polynomial.one(f.context)
    h = Polynomial.one(f.context)
    while True:
        da, db = A.degree(name), B.degree(name)
        delta = da - db
        if da % 2 == 1 and db % 2 == 1:
            sign = -sign
        r = _prem_exact(A, B, name, delta + 1)
        A = B
        if r.is_zero:
            return zero
        B = r.exquo(lead * h ** delta)
        lead = A.leading_coefficient(name)
        if delta:
            h = (lead ** delta).exquo(h ** (delta - 1))
        if B.degree(name) == 0:
            break
    da = A.degree(name)
    h = (B ** da).exquo(h ** (da - 1))
    return h if sign == 1 else -h


def sres(f: Polynomial, chain: Sequence[Polynomial]) -> Polynomial:
    """Iterated resultant: res(...res(f, T_r, y_r)..., T_1, y_1)."""
    r = f
    for member in reversed(list(chain)):
        r = resultant(r, member, member.mvar)
        if r.is_zero:
            break
    return r


def sres_support(f: Polynomial, chain: Sequence[Polynomial]) -> Polynomial:
    """Squarefree polynomial with the same zero set as sres(f, chain).

    The resultant is multiplicative, so f is split into pieces first and each
    piece is eliminated on its own; pieces of degree 0 in a member's main
    variable skip that step. The pieces are kept pairwise coprime and their
    product is returned, so this is the cheap way to test sres(f, chain) != 0
    and to build certificates.
    """
    if f.is_zero:
        return f
    pieces = split_factors(f)
    for member in reversed(list(chain)):
        _check_same(f, member)
        name = member.mvar
        step: List[Polynomial] = []
        for p in pieces:
            if p.degree(name) == 0:
                step.append(p)
                continue
            r = resultant(p, member, name)
            if r.is_zero:
                return r
            step.extend(split_factors(r))
        pieces = list(dict.fromkeys(step))
    return squarefree_product(f.context, coprime_factors(pieces))
