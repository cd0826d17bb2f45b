"""Small helpers: JSON-safe records, record readers, atomic file output."""

import csv
import json
import math
import numbers
import os
import tempfile
from typing import Iterable, List

import numpy as np
import pandas as pd


def scrub_value_for_json(v):
    """Turn numpy scalars / NaN / Inf into plain JSON-encodable values."""
    if v is None:
        return None
    if isinstance(v, np.generic):
        v = v.item()
    if isinstance(v, numbers.Real) and not isinstance(v, (bool, int)) and not math.isfinite(v):
        return None
    if isinstance(v, dict):
        return {str(k): scrub_value_for_json(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [scrub_value_for_json(x) for x in v]
    return v


# ---------- Input helpers ----------

def read_json_records(path: str) -> List[object]:
    """Read a file holding either one JSON array/object or JSON lines.

    Raises ``ValueError`` naming the offending line when a JSON-lines
    record does not parse. An empty file gives an empty list.
    """
    with open(path, "r", encoding="utf-8") as f:
        text = f.read()
    if not text.strip():
        return []
    try:
        data = json.loads(text)
    except json.JSONDecodeError:
        records = []
        for lineno, line in enumerate(text.splitlines()):
            if not line.strip():
                continue
            try:
                records.append(json.loads(line))
            except json.JSONDecodeError as e:
                raise ValueError(f"{path}: record on line {lineno + 1} is not valid JSON: {e}")
        return records
    if isinstance(data, list):
        return data
    return [data]


# ---------- Output helpers ----------

def _atomic_open(path: str):
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=".tmp-", dir=directory)
    return fd, tmp


def write_text_atomic(path: str, text: str):
    fd, tmp = _atomic_open(path)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as f:
            f.write(text)
        os.replace(tmp, path)
    except Exception:
        if os.path.exists(tmp):
            os.remove(tmp)
        raise


def write_json_atomic(path: str, data):
    write_text_atomic(path, json.dumps(scrub_value_for_json(data), ensure_ascii=False, indent=2) + "\n")


def write_jsonl_atomic(path: str, rows: Iterable[dict]):
    lines = [json.dumps(scrub_value_for_json(r), ensure_ascii=False, separators=(",", ":")) for r in rows]
    write_text_atomic(path, "".join(line + "\n" for line in lines))


def write_csv_atomic(df: pd.DataFrame, path: str, header: bool = True):
    fd, tmp = _atomic_open(path)
    os.close(fd)
    try:
        df.to_csv(tmp, index=False, header=header, encoding="utf-8", quoting=csv.QUOTE_MINIMAL, lineterminator="\n")
        os.replace(tmp, path)
    except Exception:
        if os.path.exists(tmp):
            os.remove(tmp)
        raise
