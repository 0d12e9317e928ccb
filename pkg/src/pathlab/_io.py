"""Flat-file output: CSV data and JSON run records.

CSV serialization is pinned down hard (comma separators, \\n line
endings, UTF-8, header row, floats at 17 significant digits) so that
identical runs produce byte-identical files on any platform.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Mapping, Sequence


def format_value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return "%.17g" % v
    return str(v)


def write_csv(path: Path | str, header: Sequence[str],
              rows: Sequence[Sequence]) -> None:
    lines = [",".join(header)]
    for row in rows:
        if len(row) != len(header):
            raise ValueError("row width does not match header")
        lines.append(",".join(format_value(v) for v in row))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8",
                          newline="\n")


def write_run_record(path: Path | str, record: Mapping) -> None:
    Path(path).write_text(json.dumps(record, indent=2, sort_keys=True) + "\n",
                          encoding="utf-8")


def read_run_record(path: Path) -> dict:
    return json.loads(Path(path).read_text(encoding="utf-8"))
