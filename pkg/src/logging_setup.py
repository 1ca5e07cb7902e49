"""
JSON log lines on stderr, stamped with the fields of the current CLI run.

A run carries an id, the command, and while a system is being processed its
name and variable ordering. `run_scope` narrows those fields for nested work
(bench rows, orderings); `RunFieldsFilter` copies them onto every record so
engine code logs only its own stage fields.
"""

import contextvars
import json
import logging
import sys
import uuid
from contextlib import contextmanager
from dataclasses import asdict, dataclass, replace
from typing import Iterator, Optional


@dataclass(frozen=True)
class RunFields:
    run_id: Optional[str] = None
    command: Optional[str] = None
    system: Optional[str] = None
    ordering: Optional[str] = None


run_fields_var: contextvars.ContextVar[RunFields] = contextvars.ContextVar("run_fields", default=RunFields())

# LogRecord attributes that are not ours to emit
_RECORD_ATTRS = frozenset(vars(logging.LogRecord("", 0, "", 0, "", None, None))) | {"message", "asctime"}


class RunFieldsFilter(logging.Filter):
    """Copy the non-empty run fields onto each record unless already set."""

    def filter(self, record: logging.LogRecord) -> bool:
        for key, value in asdict(run_fields_var.get()).items():
            if value is not None and not hasattr(record, key):
                setattr(record, key, value)
        return True


class JsonFormatter(logging.Formatter):
    """One JSON object per record: level, event, logger, time, then run and stage fields."""

    def format(self, record: logging.LogRecord) -> str:
        data = {
            "level": record.levelname,
            "event": record.getMessage(),
            "logger": record.name,
            "time": self.formatTime(record, self.datefmt),
        }
        for key, value in record.__dict__.items():
            if key not in _RECORD_ATTRS:
                data[key] = value
        if record.exc_info:
            data["exc"] = self.formatException(record.exc_info)
        return json.dumps(data, ensure_ascii=False, default=str)


def configure_logging(level: int = logging.INFO, stream=None) -> None:
    """Root logger emits JSON to stderr; stdout carries command output."""
    root = logging.getLogger()
    root.setLevel(level)
    if not root.handlers:
        handler = logging.StreamHandler(stream or sys.stderr)
        handler.setFormatter(JsonFormatter())
        handler.addFilter(RunFieldsFilter())
        root.addHandler(handler)


def start_run(command: Optional[str] = None) -> str:
    """Begin a CLI run with a fresh id; returns the id."""
    run_id = str(uuid.uuid4())
    run_fields_var.set(RunFields(run_id=run_id, command=command))
    return run_id


def set_command(command: str) -> None:
    run_fields_var.set(replace(run_fields_var.get(), command=command))


@contextmanager
def run_scope(system: Optional[str] = None, ordering: Optional[str] = None) -> Iterator[RunFields]:
    """Set the system name and ordering for the duration of the block."""
    current = run_fields_var.get()
    fields = replace(
        current,
        system=system if system is not None else current.system,
        ordering=ordering if ordering is not None else current.ordering,
    )
    token = run_fields_var.set(fields)
    try:
        yield fields
    finally:
        run_fields_var.reset(token)
