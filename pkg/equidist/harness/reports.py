"""CSV and JSON report emission.

Reports carry no timestamps or host details, so identical inputs produce
byte-identical files.
"""

import csv
import json
import logging
from pathlib import Path
from typing import Any, Iterable, Mapping, Optional

from pydantic import BaseModel

from ..errors import ArgumentError

logger = logging.getLogger(__name__)


def _cell(value: Any) -> Any:
    if value is None:
        return ""
    if isinstance(value, (list, tuple, dict)):
        return json.dumps(value, sort_keys=True)
    return value


def write_csv(path: Path, rows: Iterable[Mapping[str, Any]]) -> Path:
    """Write rows with the union of their keys as header, in first-seen order."""
    rows = list(rows)
    fields: list[str] = []
    for row in rows:
        fields.extend(key for key in row if key not in fields)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.DictWriter(f, fieldnames=fields, lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({key: _cell(row.get(key)) for key in fields})
    return path


def write_json(path: Path, payload: BaseModel) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(payload.model_dump_json(indent=2) + "\n", encoding="utf-8")
    return path


def write_report(
    name: str,
    payload: BaseModel,
    rows: Iterable[Mapping[str, Any]],
    out_dir: Optional[str] = None,
    formats: tuple[str, ...] = ("csv", "json"),
) -> list[str]:
    """Write <name>.csv and/or <name>.json into out_dir.

    Args:
        name: File stem
        payload: Report model serialized to JSON
        rows: Flat rows for the CSV file
        out_dir: Target directory (current directory if not provided)
        formats: Subset of ("csv", "json")

    Returns:
        Paths written, in format order
    """
    base = Path(out_dir or ".")
    written = []
    for fmt in formats:
        if fmt == "csv":
            written.append(str(write_csv(base / f"{name}.csv", rows)))
        elif fmt == "json":
            written.append(str(write_json(base / f"{name}.json", payload)))
        else:
            raise ArgumentError(f"unknown report format {fmt!r}")
    logger.info("Wrote report %s: %s", name, ", ".join(written))
    return written
