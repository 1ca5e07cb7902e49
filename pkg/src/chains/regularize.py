"""
Splitting zero-dimensional regular chains against a polynomial.

`regularize(F, T)` returns chains on which F is identically zero or
invertible. Decisions are made by sprem reduction and a Euclidean gcd over
the chain whose leading coefficients are themselves regularized. Every
decision that could change under specialization leaves a factor in a
StabilityCertificate; off its zero set the same splitting holds pointwise.

Indeterminates that are not main variables of the chain behave as
parameters throughout. A gcd may pick up such an indeterminate ranked above
its main variable; it is then replaced by a slice along the monomials in
those indeterminates, which generates the same factor on every component
where its leading coefficient is invertible.
"""

import logging
import time
from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Sequence, Tuple

from src.algebra.division import pquo, prem, sprem, sres_support
from src.algebra.normalize import coprime_factors, integer_primitive, refine_coprime, squarefree_product
from src.algebra.context import Context
from src.algebra.polynomial import Polynomial
from src.chains.regchain import is_regular_chain
from src.chains.triset import TriangularSet
from src.errors import ChainError


log = logging.getLogger("regularize")

Split = Tuple[TriangularSet, bool]


@dataclass
class StabilityCertificate:
    """Accumulates pairwise coprime squarefree factors whose product is the polynomial B."""

    context: Context
    factors: List[Polynomial] = field(default_factory=list)
    _certified: set = field(default_factory=set)

    def absorb(self, poly: Polynomial) -> None:
        if poly.is_zero:
            raise ChainError("a zero polynomial cannot certify a decision")
        refine_coprime(self.factors, poly)

    def trust(self, chain: TriangularSet) -> None:
        """Mark a caller-supplied chain and its prefixes as already certified."""
        for i in range(len(chain) + 1):
            self._certified.add(chain.lower(i).polys)

    def absorb_chain(self, chain: TriangularSet) -> None:
        """Add sres(I(T_i), T_{<i}) for every member, once per chain."""
        if chain.polys in self._certified:
            return
        self._certified.add(chain.polys)
        self.absorb(initials_certificate(chain))

    def polynomial(self) -> Polynomial:
        return squarefree_product(self.context, self.factors)


def initials_certificate(chain: TriangularSet) -> Polynomial:
    """Squarefree product of sres(I(T_i), {T_{i-1}, ..., T_1})."""
    supports = []
    for i, member in enumerate(chain):
        s = sres_support(member.initial, chain.lower(i))
        if s.is_zero:
            raise ChainError(f"not a regular chain: initial of {member} vanishes on the lower chain")
        supports.append(s)
    return squarefree_product(chain.context, coprime_factors(supports))


def _join(lower: TriangularSet, middle: Sequence[Polynomial], upper: Sequence[Polynomial]) -> TriangularSet:
    return TriangularSet(lower.context, lower.polys + tuple(middle) + tuple(upper))


def _reduce(poly: Polynomial, chain: TriangularSet) -> Polynomial:
    return integer_primitive(sprem(poly, chain))


def _higher(poly: Polynomial, x: str) -> List[str]:
    # indeterminates of poly ranked above x
    context = poly.context
    k = context.var_class(x)
    return [v for v in poly.indeterminates() if v in context.vars and context.var_class(v) > k]


def _slices(poly: Polynomial, names: Sequence[str]) -> List[Polynomial]:
    """Coefficients of `poly` seen as a polynomial in `names`."""
    context = poly.context
    positions = [context.index(n) for n in names]
    groups: dict = {}
    for m, c in poly.rep.items():
        key = tuple(m[i] for i in positions)
        rest = tuple(0 if i in positions else e for i, e in enumerate(m))
        groups.setdefault(key, {})[rest] = c
    slices = [Polynomial(context, context.ring.from_dict(t)) for t in groups.values()]
    return sorted(slices, key=lambda s: (len(s), s.to_str()))


def _first_invertible(candidates: List[Polynomial], x: str, chain: TriangularSet,
                      cert: StabilityCertificate) -> List[Tuple[TriangularSet, Polynomial]]:
    if not candidates:
        raise ChainError(f"no slice with invertible leading coefficient in {x} over {chain}")
    head = candidates[0]
    out = []
    for sub, zero in _regularize(head.leading_coefficient(x), chain, cert):
        if zero:
            out.extend(_first_invertible(candidates[1:], x, sub, cert))
        else:
            out.append((sub, integer_primitive(head)))
    return out


def _in_place(g: Polynomial, x: str, chain: TriangularSet,
              cert: StabilityCertificate) -> List[Tuple[TriangularSet, Polynomial]]:
    """Stand-ins for a factor g of a chain member that keep main variable x.

    The leading coefficient of g in x is invertible on `chain`.
    """
    higher = _higher(g, x)
    if not higher:
        return [(chain, g)]
    d = g.degree(x)
    candidates = [s for s in _slices(g, higher) if s.degree(x) == d]
    return _first_invertible(candidates, x, chain, cert)


def _member(poly: Polynomial, x: str) -> Polynomial:
    if poly.cls == 0 or poly.mvar != x:
        raise ChainError(f"{poly} cannot replace the member with main variable {x}")
    return poly


def _regularize(poly: Polynomial, chain: TriangularSet, cert: StabilityCertificate) -> List[Split]:
    r = _reduce(poly, chain)
    if r.is_zero:
        return [(chain, True)]
    x = chain.top_var(r)
    if x is None:
        cert.absorb(r)
        return [(chain, False)]

    j = chain.member_for(x)
    member = chain[j]
    upper = chain.polys[j + 1:]
    out: List[Split] = []
    for lower, lc_zero in _regularize(r.leading_coefficient(x), chain.lower(j), cert):
        if lc_zero:
            out.extend(_regularize(r.reductum(x), _join(lower, [member], upper), cert))
            continue
        for found, gcd in _gcd(member, r, x, lower, cert):
            if gcd.degree(x) <= 0:
                split = _join(found, [member], upper)
                cert.absorb_chain(split)
                cert.absorb(sres_support(r, split))
                out.append((split, False))
                continue
            for sub, g in _in_place(gcd, x, found, cert):
                zero_part = _join(sub, [_member(g, x)], upper)
                cert.absorb_chain(zero_part)
                out.append((zero_part, True))
                if g.degree(x) < member.degree(x):
                    q = _reduce(pquo(member, g, x), sub)
                    rest = _join(sub, [_member(q, x)], upper)
                    cert.absorb_chain(rest)
                    out.extend(_regularize(r, rest, cert))
    return out


def _gcd(a: Polynomial, b: Polynomial, x: str, chain: TriangularSet,
         cert: StabilityCertificate) -> List[Tuple[TriangularSet, Polynomial]]:
    """Gcd of a and b in x over the points of `chain`, splitting where needed.

    The leading coefficient of b in x must be invertible on `chain`.
    """
    rem = _reduce(prem(a, b, x), chain)
    if rem.is_zero:
        return [(chain, b)]
    out = []
    for sub, tail in _leading_invertible(rem, x, chain, cert):
        if tail is None:
            out.append((sub, b))
        elif tail.degree(x) == 0:
            out.append((sub, Polynomial.one(chain.context)))
        else:
            out.extend(_gcd(b, tail, x, sub, cert))
    return out


def _leading_invertible(poly: Polynomial, x: str, chain: TriangularSet,
                        cert: StabilityCertificate) -> List[Tuple[TriangularSet, Optional[Polynomial]]]:
    """Drop leading terms in x that vanish on the chain; None when all of them do."""
    if poly.is_zero:
        return [(chain, None)]
    if poly.degree(x) == 0:
        return [(sub, None if zero else poly) for sub, zero in _regularize(poly, chain, cert)]
    out = []
    for sub, zero in _regularize(poly.leading_coefficient(x), chain, cert):
        if zero:
            out.extend(_leading_invertible(poly.reductum(x), x, sub, cert))
        else:
            out.append((sub, poly))
    return out


def _dedupe(chains: Iterable[TriangularSet]) -> Tuple[TriangularSet, ...]:
    unique = dict.fromkeys(chains)
    return tuple(sorted(unique, key=lambda c: c.sort_key()))


def regularize(poly: Polynomial, chain: TriangularSet,
               certificate: Optional[StabilityCertificate] = None) -> List[Split]:
    """Split a zero-dimensional regular chain by the status of `poly` on it.

    Returns pairs (chain, is_zero): `poly` vanishes on every point of a
    chain with is_zero True and nowhere on one with is_zero False. The
    quasi-components of the chains cover that of the input.
    """
    cert = certificate or StabilityCertificate(chain.context)
    if poly.context != chain.context:
        raise ChainError("polynomial and chain live in different contexts")
    return _regularize(poly, chain, cert)


@dataclass(frozen=True)
class WrsdResult:
    zero_chains: Tuple[TriangularSet, ...]
    nonzero_chains: Tuple[TriangularSet, ...]
    B: Polynomial


@dataclass(frozen=True)
class ZdtorcResult:
    chains: Tuple[TriangularSet, ...]
    B: Polynomial


def _check_zero_dimensional(chain: TriangularSet, variables: Sequence[str]) -> None:
    if sorted(chain.mvars) != sorted(variables) or not len(chain):
        raise ChainError(f"main variables {list(chain.mvars)} do not match {list(variables)}")


def wrsd(chain: TriangularSet, poly: Polynomial, variables: Optional[Sequence[str]] = None) -> WrsdResult:
    """Split `chain` into chains where `poly` vanishes and chains where it does not.

    Args:
        chain: zero-dimensional regular chain over `variables`
        poly: the splitting polynomial
        variables: main variables of the chain; other indeterminates are parameters

    Returns:
        WrsdResult with the zero chains, the nonzero chains and the certificate B
    """
    variables = list(variables) if variables is not None else list(chain.mvars)
    _check_zero_dimensional(chain, variables)
    if not is_regular_chain(chain):
        raise ChainError(f"not a regular chain: {chain}")
    one = Polynomial.one(chain.context)
    if poly.is_zero:
        return WrsdResult((chain,), (), one)

    start = time.monotonic()
    cert = StabilityCertificate(chain.context)
    cert.trust(chain)
    parts = regularize(poly, chain, cert)
    zero = _dedupe(c for c, z in parts if z)
    nonzero = _dedupe(c for c, z in parts if not z)
    log.debug(
        "wrsd",
        extra={
            "stage": "wrsd",
            "zero": len(zero),
            "nonzero": len(nonzero),
            "duration_ms": int((time.monotonic() - start) * 1000),
        },
    )
    return WrsdResult(zero, nonzero, cert.polynomial())


def zdtorc(chain: TriangularSet, variables: Optional[Sequence[str]] = None) -> ZdtorcResult:
    """Zero-dimensional regular chains covering the quasi-component of `chain`.

    Chains are built bottom-up: the initial of each next member is
    regularized over every partial chain; parts where it vanishes are
    dropped and the others are extended with the member. B certifies
    every decision and every emitted chain, so sres(I(G), G) divides it
    up to squarefree part.
    """
    variables = list(variables) if variables is not None else list(chain.mvars)
    _check_zero_dimensional(chain, variables)
    start = time.monotonic()
    context = chain.context
    cert = StabilityCertificate(context)
    partial = [TriangularSet(context)]
    for member in chain:
        extended = []
        for sub in partial:
            for split, vanishes in regularize(member.initial, sub, cert):
                if not vanishes:
                    extended.append(split.append(member))
        partial = extended
        if not partial:
            break

    chains = _dedupe(partial)
    for g in chains:
        cert.absorb_chain(g)
    b = cert.polynomial()
    log.debug(
        "zdtorc",
        extra={
            "stage": "zdtorc",
            "members": len(chain),
            "chains": len(chains),
            "duration_ms": int((time.monotonic() - start) * 1000),
        },
    )
    return ZdtorcResult(chains, b)
