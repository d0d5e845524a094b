"""CSV and JSON emission with a reproduction-metadata header."""
from __future__ import annotations

import csv
import io
import json
from importlib import resources

SCHEMA_VERSION = "1"


def _cell(value):
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def to_csv(command: str, metadata: dict, columns: list, rows: list) -> str:
    """RFC 4180 table preceded by ``# key: value`` lines (values JSON-encoded)."""
    buf = io.StringIO()
    header = {"schema_version": SCHEMA_VERSION, "command": command, **metadata}
    for key, value in header.items():
        buf.write(f"# {key}: {json.dumps(value)}\r\n")
    writer = csv.writer(buf, lineterminator="\r\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_cell(row[c]) for c in columns])
    return buf.getvalue()


def to_json(command: str, metadata: dict, columns: list, rows: list) -> str:
    doc = {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "metadata": metadata,
        "columns": list(columns),
        "rows": [{c: row[c] for c in columns} for row in rows],
    }
    return json.dumps(doc, indent=2, allow_nan=False) + "\n"


def render(fmt: str, command: str, metadata: dict, columns: list, rows: list) -> str:
    if fmt == "json":
        return to_json(command, metadata, columns, rows)
    return to_csv(command, metadata, columns, rows)


def read_csv(text: str):
    """Split an emission back into (metadata, rows); used by tests and plotting scripts."""
    meta, body = {}, []
    for line in text.splitlines(keepends=True):
        if line.startswith("#"):
            key, _, value = line[1:].strip().partition(": ")
            meta[key] = json.loads(value)
        else:
            body.append(line)
    rows = list(csv.DictReader(io.StringIO("".join(body))))
    return meta, rows


def output_schema() -> dict:
    text = resources.files("polbench").joinpath("output.schema.json").read_text()
    return json.loads(text)
