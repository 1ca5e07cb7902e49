"""
Benchmark harness: time decompositions over a corpus or over every variable
ordering of one system, verify them, and render the table.
"""

import glob
import itertools
import logging
import os
import time
from typing import List, Optional, Sequence

import pandas as pd
from pydantic import BaseModel, Field

from src.algebra.grammar import parse_polynomial
from src.algebra.normalize import squarefree_primitive
from src.chains.grd import rdu
from src.errors import ParseError, RegulusError, UsageError
from src.logging_setup import run_scope
from src.oracle.verify import OracleConfig, check_stability
from src.tools.systemfile import SystemFile, default_name, load_system


log = logging.getLogger("bench")

COLUMNS = ["system", "ordering", "wu_ms", "tstors_ms", "total_ms", "verdict", "b", "reference", "error"]


class BenchRecord(BaseModel):
    """One decomposition run."""
    system: str
    ordering: str
    wu_ms: int = Field(default=0, ge=0)
    tstors_ms: int = Field(default=0, ge=0)
    total_ms: int = Field(default=0, ge=0)
    verdict: str = Field(description="pass, fail, parse-error or error")
    b: str = ""
    reference: str = Field(default="-", description="match / mismatch against a published B, '-' when none")
    error: str = ""


def _reference_status(system: SystemFile, order: Sequence[str], b) -> str:
    published = system.reference_for(order)
    if published is None:
        return "-"
    expected = squarefree_primitive(parse_polynomial(b.context, published))
    return "match" if expected == b else "mismatch"


def run_system(system: SystemFile, name: str, order: Optional[Sequence[str]] = None,
               config: Optional[OracleConfig] = None) -> BenchRecord:
    """Decompose and verify one system under one ordering; failures become rows."""
    order = list(order or system.vars)
    ordering = ",".join(order)
    with run_scope(system=name, ordering=ordering):
        start = time.monotonic()
        try:
            context, polys = system.parse(order)
            result = rdu(polys)
            report = check_stability(polys, list(result.systems), result.B, config)
            record = BenchRecord(
                system=name,
                ordering=ordering,
                wu_ms=result.wu_ms,
                tstors_ms=result.tstors_ms,
                total_ms=int((time.monotonic() - start) * 1000),
                verdict=report.verdict,
                b=result.B.to_str(),
                reference=_reference_status(system, order, result.B),
            )
        except ParseError as exc:
            record = BenchRecord(system=name, ordering=ordering, verdict="parse-error", error=str(exc))
        except RegulusError as exc:
            log.error("bench_error", extra={"stage": "bench", "error": str(exc)})
            record = BenchRecord(system=name, ordering=ordering, verdict="error", error=str(exc))
        log.info("bench_row", extra={"stage": "bench", "verdict": record.verdict, "duration_ms": record.total_ms})
    return record


def run_orderings(system: SystemFile, name: str, config: Optional[OracleConfig] = None,
                  cap: int = 5) -> List[BenchRecord]:
    """One row per permutation of the variables, sorted by ordering."""
    if len(system.vars) > cap:
        raise UsageError(
            f"{len(system.vars)} variables give {len(system.vars)}! orderings, above the cap of {cap}; "
            f"pass an explicit --order instead"
        )
    orders = sorted(itertools.permutations(system.vars), key=lambda o: ",".join(o))
    return [run_system(system, name, order, config) for order in orders]


def run_bench(directory: str, config: Optional[OracleConfig] = None) -> List[BenchRecord]:
    """One row per system file in `directory`, in file-name order."""
    paths = sorted(
        p for p in glob.glob(os.path.join(directory, "*"))
        if os.path.isfile(p) and p.endswith((".txt", ".json"))
    )
    records = []
    for path in paths:
        name = default_name(path)
        try:
            system = load_system(path)
        except (ParseError, OSError, UnicodeDecodeError) as exc:
            records.append(BenchRecord(system=name, ordering="", verdict="parse-error", error=str(exc)))
            continue
        records.append(run_system(system, system.name or name, config=config))
    return records


def records_frame(records: List[BenchRecord]) -> pd.DataFrame:
    return pd.DataFrame([r.model_dump() for r in records], columns=COLUMNS)


def render(records: List[BenchRecord], fmt: str = "text") -> str:
    """Render rows as text, csv or md (markdown)."""
    df = records_frame(records)
    if fmt == "csv":
        return df.to_csv(index=False)
    if fmt == "md":
        return df.to_markdown(index=False)
    if df.empty:
        return "(no systems)"
    return df.to_string(index=False)
