"""JSON / CSV input and output shared by the command modules."""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path
from typing import Any, Iterable, TypeVar

from pydantic import ValidationError
from sqlmodel import SQLModel

from mixedsimplex import config
from mixedsimplex.errors import InvalidArgument
from mixedsimplex.services.figure_service import FigureTable

SchemaT = TypeVar("SchemaT", bound=SQLModel)


def common_parent() -> argparse.ArgumentParser:
    """Flags accepted by every subcommand."""
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--seed", type=int, default=config.DEFAULT_SEED, help="random seed (default 0)")
    parent.add_argument("--tol", type=float, default=config.DEFAULT_FACE_TOL, help="face tolerance")
    parent.add_argument("--bits", action="store_true", help="report information in bits")
    parent.add_argument("--format", choices=("json", "csv"), default="json", dest="output_format")
    return parent


def read_json(path: str | None) -> Any:
    """Parse a JSON document from ``path``; ``None`` or ``-`` reads stdin."""
    try:
        if path is None or path == "-":
            return json.load(sys.stdin)
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise InvalidArgument(f"invalid JSON in {path or 'stdin'}: {exc.msg}") from exc
    except OSError as exc:
        raise InvalidArgument(f"cannot read {path}: {exc.strerror}") from exc


def load(schema: type[SchemaT], data: Any) -> SchemaT:
    try:
        return schema.model_validate(data)
    except ValidationError as exc:
        first = exc.errors()[0]
        where = ".".join(str(p) for p in first["loc"])
        raise InvalidArgument(f"{schema.__name__}: {where}: {first['msg']}") from exc


def read_vector(path: str | None) -> list[float]:
    data = read_json(path)
    if not isinstance(data, list) or not all(isinstance(v, (int, float)) for v in data):
        raise InvalidArgument("expected a JSON array of numbers")
    return [float(v) for v in data]


def dumps(obj: Any) -> str:
    if isinstance(obj, SQLModel):
        obj = obj.model_dump()
    return json.dumps(obj, sort_keys=True)


def emit(obj: Any, out: str | None = None) -> None:
    """Write one JSON document to ``out`` or stdout."""
    text = dumps(obj)
    if out is None or out == "-":
        sys.stdout.write(text + "\n")
    else:
        Path(out).write_text(text + "\n")


def emit_lines(rows: Iterable[Any]) -> None:
    for row in rows:
        sys.stdout.write(dumps(row) + "\n")


def emit_table(table: FigureTable, output_format: str = "csv") -> None:
    if output_format == "json":
        emit({"header": list(table.header), "rows": [list(r) for r in table.rows]})
        return
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(table.header)
    for row in table.rows:
        writer.writerow([repr(float(v)) for v in row])
