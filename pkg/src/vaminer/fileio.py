"""Small file helpers: gzip-transparent opening, deterministic JSON lines."""

from __future__ import annotations

import gzip
import json
from pathlib import Path
from typing import IO, Any


def open_text(path: str | Path, mode: str = "rt") -> IO[str]:
    """Open a text file, transparently decompressing ``*.gz`` paths."""
    path = Path(path)
    if path.suffix == ".gz":
        return gzip.open(path, mode, encoding="utf-8")  # type: ignore[return-value]
    return open(path, mode, encoding="utf-8")


def dump_json_line(obj: Any) -> str:
    """Serialize deterministically: sorted keys, compact, no ASCII escape."""
    return json.dumps(obj, sort_keys=True, ensure_ascii=False, separators=(",", ":"))
