"""
System files and decomposition documents.

Text format:

    # comment
    name: example1
    params: u, v, w
    vars: x, y, z
    reference x,y,z: u*v*w
    polys:
    (u*x+1)*z^3 + (v*y+1)*z^2 + w*x*z + 1
    u*x + 1

The structured format is the JSON form of SystemFile.
"""

import os
from typing import Dict, List, Optional, Sequence, Tuple

from pydantic import BaseModel, Field, PrivateAttr, ValidationError, field_validator

from src.algebra.context import Context
from src.algebra.grammar import parse_polynomial
from src.algebra.polynomial import Polynomial
from src.chains.grd import GrdResult
from src.chains.regchain import RegularSystem
from src.chains.triset import TriangularSet
from src.errors import ChainError, ContextMismatchError, ParseError


def _names(text: str) -> List[str]:
    return [n.strip() for n in text.split(",") if n.strip()]


class SystemFile(BaseModel):
    """A parametric polynomial system."""
    name: Optional[str] = Field(default=None, description="Display name")
    params: List[str] = Field(default_factory=list, description="Parameters, ascending")
    vars: List[str] = Field(description="Variables, ascending")
    polys: List[str] = Field(description="Expressions in the polynomial grammar")
    references: Dict[str, str] = Field(default_factory=dict, description="Ordering 'x,y,z' -> published B")

    _lines: List[int] = PrivateAttr(default_factory=list)

    @field_validator("vars")
    @classmethod
    def _vars_present(cls, value: List[str]) -> List[str]:
        if not value:
            raise ValueError("at least one variable is required")
        return value

    @field_validator("polys")
    @classmethod
    def _polys_present(cls, value: List[str]) -> List[str]:
        if not value:
            raise ValueError("at least one polynomial is required")
        return value

    def context(self, order: Optional[Sequence[str]] = None) -> Context:
        context = Context(tuple(self.params), tuple(self.vars))
        return context.with_vars(order) if order else context

    def parse(self, order: Optional[Sequence[str]] = None) -> Tuple[Context, List[Polynomial]]:
        """Parse every expression; ParseError carries the source line."""
        context = self.context(order)
        lines = self._lines or list(range(1, len(self.polys) + 1))
        return context, [parse_polynomial(context, text, line) for text, line in zip(self.polys, lines)]

    def reference_for(self, order: Sequence[str]) -> Optional[str]:
        return self.references.get(",".join(order))


def parse_system_text(text: str) -> SystemFile:
    fields: Dict[str, object] = {"references": {}}
    polys: List[str] = []
    lines: List[int] = []
    in_polys = False
    for number, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if in_polys:
            polys.append(line)
            lines.append(number)
            continue
        key, sep, value = line.partition(":")
        if not sep:
            raise ParseError(f"expected 'key: value', found '{line}'", number, 1)
        key = key.strip()
        if key == "polys":
            in_polys = True
            if value.strip():
                polys.append(value.strip())
                lines.append(number)
        elif key in ("params", "vars"):
            fields[key] = _names(value)
        elif key == "name":
            fields["name"] = value.strip()
        elif key.startswith("reference"):
            order = ",".join(_names(key[len("reference"):]))
            fields["references"][order] = value.strip()
        else:
            raise ParseError(f"unknown section '{key}'", number, 1, key)
    fields["polys"] = polys
    fields.setdefault("vars", [])
    try:
        system = SystemFile(**fields)
    except ValidationError as exc:
        raise ParseError(exc.errors()[0]["msg"], 1, 1) from exc
    system._lines = lines
    return system


def load_system(path: str) -> SystemFile:
    """Read a system file in text or JSON form."""
    with open(path, encoding="utf-8") as handle:
        text = handle.read()
    if path.endswith(".json"):
        try:
            return SystemFile.model_validate_json(text)
        except ValidationError as exc:
            raise ParseError(exc.errors()[0]["msg"], 1, 1) from exc
    return parse_system_text(text)


def default_name(path: str) -> str:
    return os.path.splitext(os.path.basename(path))[0]


class SystemDocument(BaseModel):
    """One regular system [T, H]."""
    chain: List[str]
    inequation: str


class DecompositionDocument(BaseModel):
    """A generic regular decomposition with its RDU polynomial."""
    name: Optional[str] = None
    params: List[str]
    vars: List[str]
    systems: List[SystemDocument]
    b: str = Field(description="Squarefree RDU polynomial")
    b_raw: str = Field(default="", description="RDU polynomial as accumulated")
    wu_ms: int = 0
    tstors_ms: int = 0

    @classmethod
    def from_result(cls, result: GrdResult, context: Context, name: Optional[str] = None) -> "DecompositionDocument":
        return cls(
            name=name,
            params=list(context.params),
            vars=list(context.vars),
            systems=[SystemDocument(chain=s.chain.to_lines(), inequation=s.inequation.to_str()) for s in result.systems],
            b=result.B.to_str(),
            b_raw=result.raw_B.to_str(),
            wu_ms=result.wu_ms,
            tstors_ms=result.tstors_ms,
        )

    def context(self) -> Context:
        return Context(tuple(self.params), tuple(self.vars))

    def check_against(self, system: SystemFile) -> Context:
        """Context for verifying this document against `system`."""
        if sorted(self.params) != sorted(system.params) or sorted(self.vars) != sorted(system.vars):
            raise ContextMismatchError(
                f"decomposition over params={self.params} vars={self.vars} "
                f"does not match system params={system.params} vars={system.vars}"
            )
        if self.params != system.params:
            raise ContextMismatchError(f"parameter order {self.params} differs from {system.params}")
        return self.context()

    def to_systems(self, context: Optional[Context] = None) -> Tuple[List[RegularSystem], Polynomial]:
        context = context or self.context()
        systems = []
        for i, doc in enumerate(self.systems, 1):
            try:
                chain = TriangularSet(context, tuple(parse_polynomial(context, text) for text in doc.chain))
            except ChainError as exc:
                raise ParseError(f"system {i}: {exc}") from exc
            systems.append(RegularSystem(chain, parse_polynomial(context, doc.inequation)))
        b = parse_polynomial(context, self.b)
        return systems, b


def load_decomposition(path: str) -> DecompositionDocument:
    with open(path, encoding="utf-8") as handle:
        try:
            return DecompositionDocument.model_validate_json(handle.read())
        except ValidationError as exc:
            raise ParseError(exc.errors()[0]["msg"], 1, 1) from exc
