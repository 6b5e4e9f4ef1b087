"""Deterministic JSON/CSV/graph6 artifacts, written atomically.

JSON payloads carry no timing so that identical configurations produce
byte-identical files; wall-clock figures go to the CSV header and columns.
"""
from __future__ import annotations

import csv
import hashlib
import io
import json
import os
import tempfile
from pathlib import Path
from typing import Iterable, Sequence

from rt_lab import __version__
from rt_lab.graph import Graph

OUT_ENV = "RT_LAB_OUT"
DEFAULT_OUT = "rt_lab_out"


def output_dir(explicit: str | None = None) -> Path:
    if explicit:
        return Path(explicit)
    return Path(os.environ.get(OUT_ENV, DEFAULT_OUT))


def config_hash(config: dict) -> str:
    blob = json.dumps(config, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


def atomic_write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def dumps(payload) -> str:
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def emit_json(path: Path, command: str, config: dict, result) -> dict:
    doc = {
        "tool": "rt_lab",
        "version": __version__,
        "command": command,
        "config": config,
        "config_hash": config_hash(config),
        "result": result,
    }
    atomic_write(path, dumps(doc))
    return doc


def emit_csv(path: Path, config: dict, columns: Sequence[str], rows: Iterable[dict], wall_ms: int) -> None:
    buf = io.StringIO()
    buf.write(f"# tool=rt_lab version={__version__} config_hash={config_hash(config)} wall_ms={wall_ms}\n")
    writer = csv.DictWriter(buf, fieldnames=list(columns), extrasaction="ignore", lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: "" if row.get(k) is None else row.get(k) for k in columns})
    atomic_write(path, buf.getvalue())


def emit_graph6(path: Path, graphs: Iterable[Graph]) -> None:
    atomic_write(path, "".join(g.to_graph6() + "\n" for g in graphs))


def read_csv_rows(path: Path) -> list[dict]:
    with open(path, newline="") as fh:
        lines = [line for line in fh if not line.startswith("#")]
    return list(csv.DictReader(lines))
