"""
Generic regular decomposition of parametric systems and its RDU polynomial.
"""

import logging
import time
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from src.algebra.normalize import coprime_factors, squarefree_product
from src.algebra.polynomial import Polynomial, common_context
from src.chains.regchain import RegularSystem
from src.chains.regularize import zdtorc
from src.chains.triset import TriangularSet
from src.chains.wu import wu_decompose
from src.errors import ChainError, EmptySystemError


log = logging.getLogger("grd")


@dataclass(frozen=True)
class GrdResult:
    """Regular systems TH with the RDU polynomial B in K[U].

    `raw_B` is the product as accumulated, `B` its squarefree primitive part.
    """

    systems: Tuple[RegularSystem, ...]
    B: Polynomial
    raw_B: Polynomial
    wu_ms: int = 0
    tstors_ms: int = 0

    @property
    def total_ms(self) -> int:
        return self.wu_ms + self.tstors_ms

    def to_text(self) -> str:
        lines = [s.to_text() for s in self.systems]
        lines.append(f"B = {self.B.to_str()}")
        lines.append(f"B (raw) = {self.raw_B.to_str()}")
        return "\n".join(lines)


def _fail(message: str):
    log.error("grd_error", extra={"stage": "tstors", "error": message})
    raise ChainError(message)


def tstors(chain: TriangularSet) -> Tuple[List[RegularSystem], Polynomial]:
    """Regular systems covering the quasi-component of `chain`, plus raw B in K[U].

    Free variables of the chain act as parameters for zdtorc; the inequation
    it returns is split by Wu's method until it lies in K[U].
    """
    result = zdtorc(chain, chain.mvars)
    h = result.B
    systems = [RegularSystem(g, h) for g in result.chains]
    for s in systems:
        if not s.is_regular:
            _fail(f"emitted system is not regular: {s.to_text()}")
    if h.cls == 0:
        return systems, h

    b = Polynomial.one(chain.context)
    for c in wu_decompose([h]).chains:
        if c.contradictory:
            if c.poly.cls != 0:
                _fail(f"contradictory chain {c} is not in K[U]")
            b = b * c.poly
            continue
        addition = c.triangular
        if set(addition.mvars) & set(chain.mvars):
            _fail(f"chain {addition} reuses main variables of {chain}")
        extended = chain.merge(addition)
        if extended.dim_defect >= chain.dim_defect:
            _fail(f"dimension defect did not decrease: {chain} -> {extended}")
        sub_systems, sub_b = tstors(extended)
        systems.extend(sub_systems)
        b = b * sub_b
    return systems, b


def _order(polys: Sequence[Polynomial], variables: Optional[Sequence[str]]) -> List[Polynomial]:
    context = common_context(polys)
    if context is None:
        raise EmptySystemError()
    if variables is None or tuple(variables) == context.vars:
        return list(polys)
    reordered = context.with_vars(variables)
    return [p.to_context(reordered) for p in polys]


def rdu(polys: Sequence[Polynomial], variables: Optional[Sequence[str]] = None) -> GrdResult:
    """Generic regular decomposition of `polys` with its RDU polynomial.

    Args:
        polys: the parametric system
        variables: variable order, ascending; defaults to the context order

    Returns:
        GrdResult whose systems describe V(P) over the closure of K(U) and
        stay valid at every parameter point where B does not vanish
    """
    polys = _order(polys, variables)
    context = polys[0].context
    log.info("rdu_start", extra={"stage": "rdu", "polys": len(polys), "vars": list(context.vars)})

    start = time.monotonic()
    decomposition = wu_decompose(polys)
    wu_ms = int((time.monotonic() - start) * 1000)

    start = time.monotonic()
    raw_b = Polynomial.one(context)
    parts: List[Polynomial] = []
    found: Dict[RegularSystem, None] = {}
    for c in decomposition.chains:
        if c.contradictory:
            if c.poly.cls != 0:
                _fail(f"contradictory chain {c} is not in K[U]")
            raw_b = raw_b * c.poly
            parts.append(c.poly)
            continue
        systems, b = tstors(c.triangular)
        for s in systems:
            found.setdefault(s, None)
        raw_b = raw_b * b
        parts.append(b)
    tstors_ms = int((time.monotonic() - start) * 1000)

    if raw_b.is_zero:
        _fail("RDU polynomial vanished")
    result = GrdResult(
        systems=tuple(sorted(found, key=lambda s: s.sort_key())),
        B=squarefree_product(context, coprime_factors(parts)),
        raw_B=raw_b,
        wu_ms=wu_ms,
        tstors_ms=tstors_ms,
    )
    log.info(
        "rdu_end",
        extra={
            "stage": "rdu",
            "systems": len(result.systems),
            "b": result.B.to_str(),
            "wu_ms": wu_ms,
            "tstors_ms": tstors_ms,
        },
    )
    return result
