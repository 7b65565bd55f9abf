"""Atomic report writers and terminal tables."""

import csv
import io
from collections.abc import Iterable, Sequence
from pathlib import Path

from rich.console import Console
from rich.table import Table

from app.models.schemas import CommandReport
from app.utils.helpers import now_iso

console = Console()


def _atomic_write(path: Path, text: str) -> None:
    tmp_path = path.with_name(path.name + ".tmp")
    tmp_path.parent.mkdir(parents=True, exist_ok=True)
    tmp_path.write_text(text, encoding="utf-8", newline="\n")
    tmp_path.replace(path)


def dump_json_report(path: Path, report: CommandReport) -> None:
    """Write the JSON report via a temporary file and an atomic rename."""
    _atomic_write(path, report.to_json() + "\n")


def dump_csv(path: Path, header: Sequence[str], rows: Iterable[Sequence[str]]) -> None:
    """
    Write a CSV whose first line is a '# generated <ISO>' comment.

    Rows must already be rendered as strings (17 significant digits for reals).
    """
    buffer = io.StringIO()
    buffer.write(f"# generated {now_iso()}\n")
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    _atomic_write(path, buffer.getvalue())


def render_table(title: str, columns: Sequence[str], rows: Iterable[Sequence[object]]) -> None:
    table = Table(title=title)
    for column in columns:
        table.add_column(column, justify="right")
    for row in rows:
        table.add_row(*(f"{v:.6g}" if isinstance(v, float) else str(v) for v in row))
    console.print(table)
