"""Tabular output: CSV, JSON and msgpack encodings written atomically."""

import csv
import io
import json
import os
import tempfile
from collections.abc import Sequence
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Final

import msgpack

from schurpress.cli.config import OutputFormat
from schurpress.errors import SchurpressError
from schurpress.serialization.abc import JSONSerializable
from schurpress.serialization.json import SchurpressJSONEncoder
from schurpress.serialization.msgpack import msgpack_encode

CHECK_HEADER: Final[tuple[str, ...]] = (
    "experiment",
    "parameters",
    "analytic",
    "sampled",
    "tolerance",
    "passed",
)

type Cell = str | int | float | bool | None


class ReportWriteError(SchurpressError):
    def __init__(self, path: Path, reason: str):
        super().__init__(f"Cannot write {path}: {reason}")


@dataclass(frozen=True, slots=True)
class ReportRow(JSONSerializable):
    """One acceptance check; it passes when ``|sampled - analytic| <= tolerance``."""

    experiment: str
    parameters: str
    analytic: float
    sampled: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return abs(self.sampled - self.analytic) <= self.tolerance

    def cells(self) -> tuple[Cell, ...]:
        return (
            self.experiment,
            self.parameters,
            self.analytic,
            self.sampled,
            self.tolerance,
            self.passed,
        )

    def __json__(self) -> dict[str, Any]:
        return dict(zip(CHECK_HEADER, self.cells()))


def format_cell(value: Cell) -> str:
    """CSV text of one cell; floats keep 17 significant digits.

    Examples:
        >>> format_cell(1 / 3)
        '0.33333333333333331'
        >>> format_cell(True), format_cell(None)
        ('true', '')
    """
    match value:
        case None:
            return ""
        case bool():
            return "true" if value else "false"
        case float():
            return format(value, ".17g")
        case _:
            return str(value)


class TableCodec:
    def encode(self, header: Sequence[str], rows: Sequence[Sequence[Cell]]) -> bytes: ...


class CSVCodec(TableCodec):
    def encode(self, header: Sequence[str], rows: Sequence[Sequence[Cell]]) -> bytes:
        buffer = io.StringIO(newline="")
        writer = csv.writer(buffer, lineterminator="\r\n")
        writer.writerow(header)
        writer.writerows([format_cell(cell) for cell in row] for row in rows)
        return buffer.getvalue().encode("utf-8")


class JSONCodec(TableCodec):
    def encode(self, header: Sequence[str], rows: Sequence[Sequence[Cell]]) -> bytes:
        records = [dict(zip(header, row)) for row in rows]
        text = json.dumps(records, cls=SchurpressJSONEncoder, ensure_ascii=False, indent=2)
        return (text + "\n").encode("utf-8")


class MsgPackCodec(TableCodec):
    def encode(self, header: Sequence[str], rows: Sequence[Sequence[Cell]]) -> bytes:
        records = [dict(zip(header, row)) for row in rows]
        return msgpack.packb(msgpack_encode(records))  # type: ignore


def codec_for(format: OutputFormat | str) -> TableCodec:
    match OutputFormat(format):
        case OutputFormat.CSV:
            return CSVCodec()
        case OutputFormat.JSON:
            return JSONCodec()
        case OutputFormat.MSGPACK:
            return MsgPackCodec()


def atomic_write(path: Path, data: bytes) -> None:
    """Write ``data`` to a sibling temp file, then rename it over ``path``."""
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with tempfile.NamedTemporaryFile(
            dir=path.parent, prefix=f".{path.name}.", delete=False
        ) as handle:
            handle.write(data)
            temp = Path(handle.name)
    except OSError as e:
        raise ReportWriteError(path, e.strerror or str(e)) from e
    try:
        os.replace(temp, path)
    except OSError as e:
        temp.unlink(missing_ok=True)
        raise ReportWriteError(path, e.strerror or str(e)) from e


def write_table(
    header: Sequence[str],
    rows: Sequence[Sequence[Cell]],
    format: OutputFormat | str,
    path: Path,
) -> None:
    atomic_write(path, codec_for(format).encode(header, rows))


def emit_report(rows: Sequence[ReportRow], format: OutputFormat | str, path: Path) -> None:
    write_table(CHECK_HEADER, [row.cells() for row in rows], format, path)
