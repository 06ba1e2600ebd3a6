"""Canonical JSON serialization shared by the CLI, the API and the store.

One encoding — compact separators, sorted keys, UTF-8 — so the same
document always produces the same bytes no matter which surface emitted it.
"""

from __future__ import annotations

import json
import os
import tempfile
from pathlib import Path
from typing import Union


def canonical_json(data) -> str:
    return json.dumps(data, ensure_ascii=False, sort_keys=True, separators=(",", ":"))


def canonical_json_bytes(data) -> bytes:
    return canonical_json(data).encode("utf-8")


def write_json_atomic(path: Union[str, Path], data) -> None:
    """Write a JSON document via a temporary file and atomic rename, so a
    concurrent reader never observes a torn document."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(canonical_json(data))
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def read_json(path: Union[str, Path]):
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)
