"""
Basic sets, characteristic sets and Wu's zero decomposition.
"""

import logging
import time
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from src.algebra.division import sprem
from src.algebra.normalize import split_factors, squarefree_primitive
from src.algebra.polynomial import Polynomial, common_context
from src.chains.triset import AscendingChain, is_reduced
from src.errors import EmptySystemError


log = logging.getLogger("wu")


def _rank_key(poly: Polynomial) -> Tuple:
    cls = poly.cls
    return (cls, poly.main_degree if cls else 0, len(poly), poly.to_str())


def _prepare(polys: Sequence[Polynomial]) -> List[Polynomial]:
    """Drop zeros and duplicates; fail on an empty result."""
    common_context(polys)
    unique: Dict[Polynomial, None] = {}
    for p in polys:
        if not p.is_zero:
            unique.setdefault(p, None)
    if not unique:
        raise EmptySystemError()
    return list(unique)


def basic_set(polys: Sequence[Polynomial]) -> AscendingChain:
    """Ascending chain of minimal rank contained in `polys`."""
    ordered = sorted(_prepare(polys), key=_rank_key)
    first = ordered[0]
    if first.cls == 0:
        return AscendingChain.contradiction(first)
    chain = [first]
    for p in ordered[1:]:
        if p.cls > chain[-1].cls and is_reduced(p, chain):
            chain.append(p)
    return AscendingChain(first.context, tuple(chain), False)


def _remainders(current: List[Polynomial], chain: AscendingChain) -> List[Polynomial]:
    members = set(chain.polys)
    triangular = chain.polys
    out = []
    for p in current:
        if p in members:
            continue
        r = sprem(p, triangular)
        if not r.is_zero:
            out.append(squarefree_primitive(r))
    return out


def char_set(polys: Sequence[Polynomial]) -> AscendingChain:
    """Characteristic set: an ascending chain C with sprem(P, C) = {0}.

    Zero(P) equals Zero(C / I_C) united with the zeros of P and each initial.
    """
    current = _prepare(polys)
    while True:
        chain = basic_set(current)
        if chain.contradictory:
            return chain
        fresh = [r for r in _remainders(current, chain) if r not in current]
        if not fresh:
            return chain
        current = current + list(dict.fromkeys(fresh))


class _Pieces:
    """Memoized split_factors for one decomposition run."""

    def __init__(self):
        self._memo: Dict[Polynomial, List[Polynomial]] = {}

    def __call__(self, poly: Polynomial) -> List[Polynomial]:
        if poly not in self._memo:
            self._memo[poly] = split_factors(poly)
        return self._memo[poly]

    def splits(self, poly: Polynomial) -> bool:
        return self(poly) != [poly]


def _branch_char_set(polys: Sequence[Polynomial], pieces: _Pieces) -> Tuple[AscendingChain, List[Polynomial], Optional[Tuple[Polynomial, ...]]]:
    """Characteristic-set steps until a remainder splits.

    Returns the chain, the final working set and, when a fresh remainder has
    a monomial or content factor, the enlarged system to branch on instead.
    """
    current = list(polys)
    while True:
        chain = basic_set(current)
        if chain.contradictory:
            return chain, current, None
        fresh = []
        for r in _remainders(current, chain):
            if r not in current and r not in fresh:
                fresh.append(r)
        if not fresh:
            return chain, current, None
        if any(pieces.splits(r) for r in fresh):
            return chain, current, tuple(current + fresh)
        current = current + fresh


@dataclass(frozen=True)
class WuDecomposition:
    """Chains C_1..C_m with Zero(P) = union of Zero(C_i / I_{C_i})."""

    chains: Tuple[AscendingChain, ...]

    @property
    def regular(self) -> Tuple[AscendingChain, ...]:
        return tuple(c for c in self.chains if not c.contradictory)

    @property
    def contradictory(self) -> Tuple[AscendingChain, ...]:
        return tuple(c for c in self.chains if c.contradictory)

    def to_text(self) -> str:
        blocks = []
        for i, chain in enumerate(self.chains, 1):
            tag = " (contradictory)" if chain.contradictory else ""
            lines = [f"C{i}{tag}:"] + [f"  {p.to_str()}" for p in chain]
            blocks.append("\n".join(lines))
        return "\n\n".join(blocks)


def wu_decompose(polys: Sequence[Polynomial]) -> WuDecomposition:
    """Wu's decomposition by repeated characteristic sets.

    A polynomial with a monomial or content factor is replaced by each of
    its pieces in turn, one branch per piece; pieces in K[U] become
    contradictory chains. Then the branch runs to its characteristic set
    and branches again on every non-constant initial.
    """
    start = time.monotonic()
    pieces = _Pieces()
    found: Dict[AscendingChain, None] = {}
    stack: List[Tuple[Polynomial, ...]] = [tuple(_prepare(polys))]
    seen = set()
    branches = 0

    def branch(rest: List[Polynomial], poly: Polynomial) -> None:
        for piece in pieces(poly):
            if piece.cls == 0:
                found.setdefault(AscendingChain.contradiction(piece), None)
            else:
                stack.append(tuple(dict.fromkeys(rest + [piece])))

    while stack:
        system = stack.pop()
        key = frozenset(system)
        if key in seen:
            continue
        seen.add(key)
        branches += 1
        splitting = next((p for p in system if pieces.splits(p)), None)
        if splitting is not None:
            branch([p for p in system if p != splitting], splitting)
            continue
        chain, final, enlarged = _branch_char_set(system, pieces)
        if enlarged is not None:
            stack.append(enlarged)
            continue
        if chain.contradictory:
            branch([], chain.poly)
            continue
        found.setdefault(chain, None)
        for member in chain.polys:
            init = member.initial
            if init.is_constant:
                continue
            branch(list(dict.fromkeys(final + list(chain.polys))), init)

    chains = tuple(sorted(found, key=lambda c: c.sort_key()))
    log.info(
        "wu_decompose",
        extra={
            "stage": "wu",
            "branches": branches,
            "chains": len(chains),
            "contradictory": sum(c.contradictory for c in chains),
            "duration_ms": int((time.monotonic() - start) * 1000),
        },
    )
    return WuDecomposition(chains)


def is_generic_zero_dimensional(polys: Sequence[Polynomial]) -> bool:
    """True when every non-contradictory Wu chain has a main variable for each variable."""
    decomposition = wu_decompose(polys)
    return all(len(c) == c.context.nvars for c in decomposition.regular)
