"""
Command-line entry point for regulus.
Decomposes parametric polynomial systems, verifies decompositions and runs benchmarks.
"""

import argparse
import logging
import os
import sys
import time
from typing import List, Optional

from dotenv import load_dotenv

from src.chains.grd import rdu
from src.chains.wu import wu_decompose
from src.errors import (
    BudgetExceededError,
    ChainError,
    ContextMismatchError,
    EmptySystemError,
    ParseError,
    RegulusError,
    UsageError,
)
from src.logging_setup import configure_logging, run_scope, set_command, start_run
from src.oracle.verify import OracleConfig, check_stability
from src.tools.bench import render, run_bench, run_orderings
from src.tools.systemfile import DecompositionDocument, default_name, load_decomposition, load_system


log = logging.getLogger("cli")

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3
EXIT_INTERNAL = 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _env_int(name: str, default: Optional[int]) -> Optional[int]:
    value = os.getenv(name)
    if value is None or value == "":
        return default
    try:
        return int(value)
    except ValueError:
        raise UsageError(f"{name} must be an integer, got '{value}'") from None


def _order(text: Optional[str]) -> Optional[List[str]]:
    if not text:
        return None
    return [v.strip() for v in text.split(",") if v.strip()]


def _oracle_config(args) -> OracleConfig:
    trials = args.trials if args.trials is not None else _env_int("REGULUS_TRIALS", 50)
    if trials < 1:
        raise UsageError("no trials")
    try:
        return OracleConfig(
            prime=args.prime if args.prime is not None else _env_int("REGULUS_PRIME", 101),
            trials=trials,
            seed=args.seed if args.seed is not None else _env_int("REGULUS_SEED", None),
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as handle:
            handle.write(text if text.endswith("\n") else text + "\n")
    else:
        print(text)


def cmd_decompose(args) -> int:
    system = load_system(args.input)
    name = system.name or default_name(args.input)
    context, polys = system.parse(_order(args.order))
    with run_scope(system=name, ordering=",".join(context.vars)):
        result = rdu(polys)
    if args.format == "text":
        _emit(result.to_text(), args.out)
    else:
        doc = DecompositionDocument.from_result(result, context, name)
        _emit(doc.model_dump_json(indent=2), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    if not args.decomposition:
        raise UsageError("verify needs --decomposition")
    config = _oracle_config(args)
    system = load_system(args.input)
    doc = load_decomposition(args.decomposition)
    context = doc.check_against(system)
    _, polys = system.parse(list(context.vars))
    systems, b = doc.to_systems(context)
    with run_scope(system=system.name or default_name(args.input), ordering=",".join(context.vars)):
        report = check_stability(polys, systems, b, config)
    if args.format == "json":
        _emit(report.model_dump_json(indent=2), args.out)
    else:
        _emit(report.to_text(), args.out)
    return EXIT_OK if report.verdict == "pass" else EXIT_FAIL


def cmd_orderings(args) -> int:
    config = _oracle_config(args)
    system = load_system(args.input)
    cap = _env_int("REGULUS_ORDERINGS_CAP", 5)
    records = run_orderings(system, system.name or default_name(args.input), config, cap)
    _emit(render(records, args.format), args.out)
    return EXIT_OK if all(r.verdict == "pass" for r in records) else EXIT_FAIL


def cmd_bench(args) -> int:
    config = _oracle_config(args)
    if not os.path.isdir(args.input):
        raise UsageError(f"{args.input} is not a directory")
    records = run_bench(args.input, config)
    _emit(render(records, args.format), args.out)
    return EXIT_OK


def cmd_char_set(args) -> int:
    system = load_system(args.input)
    _, polys = system.parse(_order(args.order))
    _emit(wu_decompose(polys).to_text(), args.out)
    return EXIT_OK


COMMANDS = {
    "decompose": cmd_decompose,
    "verify": cmd_verify,
    "orderings": cmd_orderings,
    "bench": cmd_bench,
    "char-set": cmd_char_set,
}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="regulus", description="Generic regular decomposition of parametric polynomial systems")
    parser.add_argument("--verbose", action="store_true", help="debug logging")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, formats, default_format):
        p.add_argument("--input", required=True, help="system file (text or .json); a directory for bench")
        p.add_argument("--out", help="write output here instead of stdout")
        p.add_argument("--format", choices=formats, default=default_format)

    def oracle(p):
        p.add_argument("--trials", type=int)
        p.add_argument("--prime", type=int)
        p.add_argument("--seed", type=int)

    p = sub.add_parser("decompose", help="run RDU and write the decomposition")
    common(p, ["json", "text"], "json")
    p.add_argument("--order", help="variables ascending, e.g. r,t,Z")

    p = sub.add_parser("verify", help="check a decomposition against a system by enumeration")
    common(p, ["text", "json"], "text")
    p.add_argument("--decomposition", help="decomposition document (JSON)")
    oracle(p)

    p = sub.add_parser("orderings", help="decompose under every variable ordering")
    common(p, ["text", "csv", "md"], "text")
    oracle(p)

    p = sub.add_parser("bench", help="decompose every system of a corpus directory")
    common(p, ["text", "csv", "md"], "text")
    oracle(p)

    p = sub.add_parser("char-set", help="print Wu's decomposition")
    common(p, ["text"], "text")
    p.add_argument("--order", help="variables ascending")
    return parser


def _fail(command: Optional[str], error: Exception, code: int) -> int:
    log.error("command_error", extra={"stage": "command_error", "command": command, "error": str(error), "exit_code": code})
    print(f"error: {error}", file=sys.stderr)
    return code


def main(argv: Optional[List[str]] = None) -> int:
    """Run one command; returns the exit code.

    0 success, 1 verification failure, 2 usage or parse error, 3 enumeration
    budget exceeded, 4 internal invariant violated.
    """
    load_dotenv()
    start_run()
    start = time.monotonic()
    command = None
    try:
        args = build_parser().parse_args(argv)
        command = args.command
        set_command(command)
        level = logging.DEBUG if args.verbose else getattr(logging, os.getenv("REGULUS_LOG_LEVEL", "INFO").upper(), logging.INFO)
        configure_logging(level)
        log.info("command_start", extra={"stage": "command_start"})
        code = COMMANDS[command](args)
        log.info("command_done", extra={
            "stage": "command_done",
            "exit_code": code,
            "duration_ms": int((time.monotonic() - start) * 1000),
        })
        return code
    except (UsageError, ParseError, ContextMismatchError, EmptySystemError, OSError) as e:
        return _fail(command, e, EXIT_USAGE)
    except BudgetExceededError as e:
        return _fail(command, e, EXIT_BUDGET)
    except ChainError as e:
        return _fail(command, e, EXIT_INTERNAL)
    except RegulusError as e:
        return _fail(command, e, EXIT_FAIL)


if __name__ == "__main__":
    sys.exit(main())
