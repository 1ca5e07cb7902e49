"""
Finite-field verification of decompositions and their stability.
"""

import logging
import time
from fractions import Fraction
from typing import Dict, List, Literal, Optional, Sequence

import numpy as np
from pydantic import BaseModel, Field, field_validator
from sympy import isprime

from src.algebra.normalize import mod_p
from src.algebra.polynomial import Polynomial
from src.chains.regchain import RegularSystem, specializes_well
from src.chains.wu import WuDecomposition
from src.errors import BadPrimeError, SamplingError
from src.oracle.enumerate import ENUMERATION_BUDGET, FiniteFieldGrid


log = logging.getLogger("oracle")


class OracleConfig(BaseModel):
    """Sampling and enumeration settings for the oracle."""
    prime: int = Field(default=101, description="Prime used for enumeration")
    alternate_prime: int = Field(default=211, description="Prime used when the first one hits p-divisible data")
    trials: int = Field(default=50, ge=1, description="Number of parameter points to test")
    bound: int = Field(default=1000, ge=1, description="Sampled parameters lie in [-bound, bound]")
    seed: Optional[int] = Field(default=None, description="RNG seed")
    budget: int = Field(default=ENUMERATION_BUDGET, ge=1, description="Maximum number of enumerated points")

    @field_validator("prime", "alternate_prime")
    @classmethod
    def _must_be_prime(cls, value: int) -> int:
        if not isprime(value):
            raise ValueError(f"{value} is not prime")
        return value


class TrialRecord(BaseModel):
    """Outcome of one parameter point."""
    point: Dict[str, int]
    prime: Optional[int] = None
    b_value: str = Field(default="", description="B(a) over Q")
    status: Literal["pass", "fail", "skipped"]
    decomposition: Optional[bool] = Field(default=None, description="V(P(a)) equals the union of the specialized systems")
    specializes_well: Optional[bool] = None
    regular: Optional[bool] = Field(default=None, description="Every system satisfies the regular-system invariant")
    witness: Optional[List[int]] = Field(default=None, description="A point of F_p^n where the two sides differ")
    note: str = ""

    def to_line(self) -> str:
        point = ",".join(f"{k}={v}" for k, v in self.point.items())
        parts = [f"[{self.status}]", f"a=({point})", f"p={self.prime}", f"B(a)={self.b_value}"]
        if self.witness is not None:
            parts.append(f"witness={tuple(self.witness)}")
        if self.note:
            parts.append(self.note)
        return " ".join(parts)


class VerifyReport(BaseModel):
    trials: List[TrialRecord] = Field(default_factory=list)

    @property
    def passed(self) -> int:
        return sum(t.status == "pass" for t in self.trials)

    @property
    def failed(self) -> int:
        return sum(t.status == "fail" for t in self.trials)

    @property
    def verdict(self) -> str:
        """pass when nothing failed and at least one trial was checked."""
        return "pass" if self.failed == 0 and self.passed > 0 else "fail"

    def to_text(self) -> str:
        lines = [t.to_line() for t in self.trials]
        lines.append(f"verdict: {self.verdict} ({self.passed}/{len(self.trials)} passed)")
        return "\n".join(lines)


def _params(poly: Polynomial, point: Dict[str, int]) -> Polynomial:
    return poly.specialize({name: point[name] for name in poly.context.params})


def _b_value(b: Optional[Polynomial], point: Dict[str, int]) -> Optional[Fraction]:
    if b is None:
        return None
    return _params(b, point).constant_value()


def _clean_for(prime: int, polys: Sequence[Polynomial]) -> bool:
    try:
        for poly in polys:
            mod_p(poly, prime)
    except BadPrimeError:
        return False
    return True


def _mismatch(grid: FiniteFieldGrid, lhs: np.ndarray, rhs: np.ndarray) -> Optional[List[int]]:
    diff = np.flatnonzero(lhs != rhs)
    if diff.size == 0:
        return None
    return list(grid.point(int(diff[0])))


def check_decomposition_at(polys: Sequence[Polynomial], systems: Sequence[RegularSystem],
                           point: Dict[str, int], prime: int,
                           b: Optional[Polynomial] = None,
                           budget: int = ENUMERATION_BUDGET) -> TrialRecord:
    """Compare V(P(a)) with the union of V(T(a) \\ H(a)) over F_p.

    Points on V(B) are skipped. Also evaluates specializes_well for every system.
    """
    b_value = _b_value(b, point)
    if b_value is not None and b_value == 0:
        return TrialRecord(point=point, prime=prime, b_value="0", status="skipped", note="on RDU variety, skipped")

    special_p = [_params(p, point) for p in polys]
    special_systems = [([_params(t, point) for t in s.chain], _params(s.inequation, point)) for s in systems]
    everything = special_p + [q for chain, h in special_systems for q in chain + [h]]
    if not _clean_for(prime, everything):
        raise BadPrimeError(prime)

    context = polys[0].context
    grid = FiniteFieldGrid(context, prime, budget)
    lhs = grid.zero_mask(special_p)
    rhs = np.zeros(grid.size, dtype=bool)
    for chain, h in special_systems:
        rhs |= grid.zero_mask(chain) & grid.nonzero_mask(h)
    witness = _mismatch(grid, lhs, rhs)
    well = all(specializes_well(s, point) for s in systems)
    ok = witness is None and well
    note = "" if ok else ("decomposition mismatch" if witness is not None else "a system does not specialize well")
    return TrialRecord(
        point=point,
        prime=prime,
        b_value=str(b_value) if b_value is not None else "",
        status="pass" if ok else "fail",
        decomposition=witness is None,
        specializes_well=well,
        witness=witness,
        note=note,
    )


def _prime_is_clean(prime: int, polys: Sequence[Polynomial], systems: Sequence[RegularSystem],
                    b_value: Fraction, point: Dict[str, int]) -> bool:
    """False when the specialized instance has p-divisible leading data."""
    if b_value.numerator % prime == 0:
        return False
    special = [_params(p, point) for p in polys]
    for s in systems:
        special += [_params(t, point) for t in s.chain] + [_params(s.inequation, point)]
    if not _clean_for(prime, special):
        return False
    for s in systems:
        for member in s.chain:
            init = _params(member.initial, point)
            if not init.is_zero and not mod_p(init, prime):
                return False
        h = _params(s.inequation, point)
        if not h.is_zero and not mod_p(h, prime):
            return False
    return True


def check_stability(polys: Sequence[Polynomial], systems: Sequence[RegularSystem],
                    b: Polynomial, config: Optional[OracleConfig] = None) -> VerifyReport:
    """Sample parameter points off V(B) and check the decomposition at each.

    Args:
        polys: the parametric system P
        systems: the regular systems TH
        b: the RDU polynomial
        config: oracle settings

    Returns:
        VerifyReport with one record per sampled point
    """
    config = config or OracleConfig()
    start = time.monotonic()
    max_attempts = 1000 * config.trials
    if b.is_zero:
        raise SamplingError(max_attempts)
    params = polys[0].context.params
    regular = all(s.is_regular for s in systems)
    rng = np.random.default_rng(config.seed)

    records: List[TrialRecord] = []
    attempts = 0
    while len(records) < config.trials:
        attempts += 1
        if attempts > max_attempts:
            raise SamplingError(max_attempts)
        point = {name: int(v) for name, v in zip(params, rng.integers(-config.bound, config.bound + 1, size=len(params)))}
        b_value = _b_value(b, point)
        if b_value == 0:
            continue
        prime = next(
            (q for q in (config.prime, config.alternate_prime) if _prime_is_clean(q, polys, systems, b_value, point)),
            None,
        )
        if prime is None:
            continue
        record = check_decomposition_at(polys, systems, point, prime, b, config.budget)
        record.regular = regular
        if not regular:
            record.status = "fail"
            record.note = "a system violates sres(H, T) != 0"
        records.append(record)

    report = VerifyReport(trials=records)
    log.info(
        "check_stability",
        extra={
            "stage": "oracle",
            "trials": len(records),
            "attempts": attempts,
            "verdict": report.verdict,
            "duration_ms": int((time.monotonic() - start) * 1000),
        },
    )
    return report


def check_wu_at(polys: Sequence[Polynomial], decomposition: WuDecomposition,
                point: Dict[str, int], prime: int, budget: int = ENUMERATION_BUDGET) -> TrialRecord:
    """Compare V(P(a)) with the union of V(C(a) \\ I(C)(a)) over the regular chains."""
    for chain in decomposition.contradictory:
        if not mod_p(_params(chain.poly, point), prime):
            return TrialRecord(point=point, prime=prime, status="skipped", note="contradictory chain vanishes at a")
    context = polys[0].context
    grid = FiniteFieldGrid(context, prime, budget)
    lhs = grid.zero_mask([_params(p, point) for p in polys])
    rhs = np.zeros(grid.size, dtype=bool)
    for chain in decomposition.regular:
        members = [_params(m, point) for m in chain]
        initial = _params(chain.triangular.initial_product(), point)
        rhs |= grid.zero_mask(members) & grid.nonzero_mask(initial)
    witness = _mismatch(grid, lhs, rhs)
    return TrialRecord(
        point=point,
        prime=prime,
        status="pass" if witness is None else "fail",
        decomposition=witness is None,
        witness=witness,
    )
